#include "stokes_atlas/flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stokes_atlas/errors.hpp"

namespace stokes_atlas {

std::vector<cplx> Trajectory::polyline() const {
  std::vector<cplx> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back(s.x);
  return pts;
}

bool SeparatrixSet::any_homoclinic() const {
  for (const auto& s : separatrices)
    if (s.homoclinic) return true;
  return false;
}

bool SeparatrixSet::all_resolved() const {
  for (const auto& s : separatrices)
    if (!s.resolved) return false;
  return true;
}

std::vector<double> separatrix_directions(int k, double slant) {
  if (k < 1) throw usage_error("separatrix_directions: k must be >= 1");
  // Outgoing rays solve k*theta = slant (mod 2pi), incoming k*theta = slant + pi.
  std::vector<double> dirs(2 * k);
  for (int m = 0; m < 2 * k; ++m) dirs[m] = (slant + m * M_PI) / k;
  return dirs;
}

double escape_radius(const Parameter& param, const Tolerances& tol) {
  return tol.escape_factor * std::max(1.0, eps_norm(param));
}

double capture_radius(const std::vector<SingularPoint>& pts, const Tolerances& tol) {
  if (pts.size() < 2) return 1e-3;
  double gap = min_root_gap(pts);
  if (!std::isfinite(gap)) return 1e-3;
  return tol.capture_factor * gap;
}

namespace {

int nearest_root(const std::vector<SingularPoint>& pts, cplx x, double* dist) {
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts.size(); ++i) {
    double d = std::abs(x - pts[i].position);
    if (d < bd) {
      bd = d;
      best = static_cast<int>(i);
    }
  }
  if (dist) *dist = bd;
  return best;
}

}  // namespace

Trajectory integrate(const Parameter& param, cplx x0, double slant, double horizon,
                     Orientation orientation, const Tolerances& tol) {
  if (std::abs(slant) >= M_PI / 2 - 1e-9)
    throw usage_error("integrate: slant magnitude must stay below pi/2");

  std::vector<SingularPoint> points = roots(param, tol);
  double r_escape = escape_radius(param, tol);
  double r_capture = capture_radius(points, tol);
  double sign = orientation == Orientation::Forward ? 1.0 : -1.0;
  cplx phase = sign * std::exp(cplx(0.0, -slant));

  Trajectory traj;
  traj.slant = slant;

  double d0 = 0.0;
  int near0 = nearest_root(points, x0, &d0);
  if (d0 == 0.0) {  // stationary start
    traj.samples.push_back({0.0, 0.0, x0});
    traj.termination = Termination::ConvergedToRoot;
    traj.root_index = near0;
    traj.final_x = x0;
    return traj;
  }

  // State: [x, tau] with tau the real slanted time; unit arc-length speed.
  DormandPrince rk([&](double, const std::vector<cplx>& y, std::vector<cplx>& dy) {
    cplx pv = param.p(y[0]);
    double ap = std::abs(pv);
    if (ap < 1e-300) ap = 1e-300;
    dy[0] = phase * pv / ap;
    dy[1] = 1.0 / ap;
  });

  std::vector<cplx> y{x0, 0.0};
  double s = 0.0;
  traj.samples.push_back({0.0, 0.0, x0});
  cplx t_phase = phase;  // dt = sign * e^{-i slant} dtau

  Termination term = Termination::HorizonReached;
  int root_idx = -1;
  auto on_step = [&](double u, const std::vector<cplx>& yy) -> bool {
    traj.samples.push_back({u, t_phase * yy[1].real(), yy[0]});
    if (std::abs(yy[0]) > r_escape) {
      term = Termination::EscapedToInfinity;
      return false;
    }
    double dist = 0.0;
    int idx = nearest_root(points, yy[0], &dist);
    if (idx >= 0 && dist < r_capture && points[idx].multiplicity == 1) {
      // Declare convergence once inside the capture radius with the
      // linearized slanted rate contracting for this orientation.
      double rate = (phase * points[idx].eigenvalue).real();
      if (rate < 0.0) {
        term = Termination::ConvergedToRoot;
        root_idx = idx;
        return false;
      }
    }
    return true;
  };
  // Cap steps near roots so captures cannot tunnel through.
  auto h_cap = [&](double, const std::vector<cplx>& yy) -> double {
    double dist = 0.0;
    nearest_root(points, yy[0], &dist);
    return std::max(0.45 * dist, 1e-9 * r_escape);
  };

  RkControl ctl;
  ctl.rel = tol.ode_rel;
  ctl.abs = tol.ode_abs;
  ctl.h_init = 1e-3 * r_escape;
  ctl.h_max = 0.1 * r_escape;
  ctl.max_steps = tol.max_steps;
  bool limit = false;
  bool reached = rk.integrate(y, s, horizon, ctl, on_step, &limit, h_cap);
  if (limit)
    term = Termination::StepLimit;
  else if (reached)
    term = Termination::HorizonReached;

  traj.termination = term;
  traj.root_index = root_idx;
  traj.final_x = traj.samples.back().x;
  traj.elapsed_t = traj.samples.back().t;
  return traj;
}

SeparatrixSet trace_separatrices(const Parameter& param, double slant, const Tolerances& tol) {
  if (std::abs(slant) > tol.slant_margin + 1e-12)
    throw usage_error("trace_separatrices: slant outside configured margin");
  std::vector<SingularPoint> pts = roots(param, tol);
  for (const auto& p : pts)
    if (p.multiplicity > 1)
      throw boundary_error("trace_separatrices: multiple root present (discriminant = 0)");

  SeparatrixSet set;
  set.slant = slant;
  set.points = pts;
  set.escape_radius = escape_radius(param, tol);
  set.capture_radius = capture_radius(pts, tol);
  if (set.capture_radius < 1e-12 * set.escape_radius) {
    std::ostringstream os;
    os << "trace_separatrices: roots nearly collide (capture radius "
       << set.capture_radius << "); rescale epsilon or loosen tolerances";
    throw boundary_error(os.str());
  }

  std::vector<double> dirs = separatrix_directions(param.k, slant);
  double horizon = 60.0 * set.escape_radius;
  for (int m = 0; m < 2 * param.k; ++m) {
    Separatrix sep;
    sep.direction = dirs[m];
    sep.outgoing = (m % 2 == 0);
    cplx x0 = (set.escape_radius * 0.999) * std::polar(1.0, dirs[m]);
    Orientation o = sep.outgoing ? Orientation::Backward : Orientation::Forward;
    sep.trajectory = integrate(param, x0, slant, horizon, o, tol);
    switch (sep.trajectory.termination) {
      case Termination::ConvergedToRoot:
        sep.attached_root = sep.trajectory.root_index;
        sep.resolved = true;
        break;
      case Termination::EscapedToInfinity:
        sep.homoclinic = true;
        sep.resolved = true;
        break;
      default:
        sep.resolved = false;
        break;
    }
    set.separatrices.push_back(std::move(sep));
  }
  return set;
}

TransversalResult integrate_transversal(const Parameter& param, cplx x0, double slant,
                                        bool upward, double r_stop, double height_budget,
                                        const Tolerances& tol) {
  std::vector<SingularPoint> points = roots(param, tol);
  cplx phase = (upward ? cplx(0, 1) : cplx(0, -1)) * std::exp(cplx(0.0, -slant));
  DormandPrince rk([&](double, const std::vector<cplx>& y, std::vector<cplx>& dy) {
    cplx pv = param.p(y[0]);
    double ap = std::abs(pv);
    if (ap < 1e-300) ap = 1e-300;
    dy[0] = phase * pv / ap;
    dy[1] = 1.0 / ap;  // height progress
  });

  TransversalResult res;
  std::vector<cplx> y{x0, 0.0};
  double s = 0.0;
  res.points.push_back(x0);
  auto on_step = [&](double, const std::vector<cplx>& yy) -> bool {
    res.points.push_back(yy[0]);
    res.height = yy[1].real();
    if (std::abs(yy[0]) >= r_stop) {
      res.exited = true;
      return false;
    }
    if (height_budget > 0.0 && res.height >= height_budget) return false;
    return true;
  };
  auto h_cap = [&](double, const std::vector<cplx>& yy) -> double {
    double dist = 0.0;
    nearest_root(points, yy[0], &dist);
    double cap = std::max(0.45 * dist, 1e-9 * r_stop);
    if (height_budget > 0.0) {
      // do not wildly overshoot the height budget in one step
      double ap = std::abs(param.p(yy[0]));
      double remaining = height_budget - yy[1].real();
      if (remaining > 0) cap = std::min(cap, std::max(1e-9 * r_stop, 1.5 * remaining * ap));
    }
    return cap;
  };
  RkControl ctl;
  ctl.rel = tol.ode_rel;
  ctl.abs = tol.ode_abs;
  ctl.h_init = 1e-3 * r_stop;
  ctl.h_max = 0.1 * r_stop;
  ctl.max_steps = tol.max_steps;
  bool limit = false;
  rk.integrate(y, s, 1e9 * r_stop, ctl, on_step, &limit, h_cap);
  if (limit) throw numerical_error("integrate_transversal: step limit exhausted");
  res.final_x = res.points.back();
  return res;
}

}  // namespace stokes_atlas
