#include "stokes_atlas/polyfield.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <sstream>

#include "stokes_atlas/errors.hpp"

namespace stokes_atlas {

Parameter::Parameter(int k_, std::vector<cplx> c) : k(k_), coeffs(std::move(c)) {
  if (k < 1) throw usage_error("Parameter: k must be >= 1");
  if (static_cast<int>(coeffs.size()) != k)
    throw usage_error("Parameter: expected k coefficients (e_0..e_{k-1})");
}

cplx Parameter::p(cplx x) const {
  // x^(k+1) + sum_{j<k} e_j x^j, evaluated without the absent x^k term.
  cplx acc = 1.0;  // top: coefficient of x^(k+1)
  acc = acc * x;   // now represents x^(k+1-k) chain start; handle x^k term = 0
  for (int j = k - 1; j >= 0; --j) acc = acc * x + coeffs[j];
  return acc;
}

cplx Parameter::dp(cplx x) const {
  // (k+1) x^k + sum_{j>=1} j e_j x^(j-1)
  cplx acc = static_cast<double>(k + 1);
  acc = acc * x;  // handles the zero coefficient of x^(k-1) in p'
  for (int j = k - 1; j >= 1; --j) acc = acc * x + static_cast<double>(j) * coeffs[j];
  return acc;
}

double eps_norm(const Parameter& param) {
  double best = 0.0;
  for (int j = 0; j < param.k; ++j) {
    double a = std::abs(param.coeffs[j]);
    if (a == 0.0) continue;
    best = std::max(best, std::pow(a, 1.0 / (param.k + 1 - j)));
  }
  return best;
}

Parameter rescale(const Parameter& param, double r) {
  if (!(r > 0.0)) throw usage_error("rescale: r must be positive");
  std::vector<cplx> c(param.coeffs);
  for (int j = 0; j < param.k; ++j) c[j] *= std::pow(r, param.k + 1 - j);
  return Parameter(param.k, std::move(c));
}

namespace {

std::vector<cplx> dense_coeffs(const Parameter& param) {
  // c[0..k+1], c[i] = coefficient of x^i.
  std::vector<cplx> c(param.k + 2, 0.0);
  for (int j = 0; j < param.k; ++j) c[j] = param.coeffs[j];
  c[param.k + 1] = 1.0;
  return c;
}

// Aberth-Ehrlich simultaneous iteration with Newton polish.
std::vector<cplx> solve_roots(const Parameter& param, const Tolerances& tol) {
  const int m = param.degree();
  const double scale = std::max(1.0, eps_norm(param));
  std::vector<cplx> z(m);
  for (int i = 0; i < m; ++i) {
    double ang = 2 * M_PI * i / m + 0.35 + 0.5 / m;
    z[i] = 1.3 * scale * std::polar(1.0, ang);
  }
  double step_tol = 1e-15 * scale;
  bool converged = false;
  for (int it = 0; it < tol.root_max_iter && !converged; ++it) {
    double max_step = 0.0;
    for (int i = 0; i < m; ++i) {
      cplx pv = param.p(z[i]);
      cplx dv = param.dp(z[i]);
      if (pv == 0.0) continue;
      cplx newton = (dv != 0.0) ? pv / dv : cplx(step_tol, 0);
      cplx rep = 0.0;
      for (int j = 0; j < m; ++j)
        if (j != i) rep += 1.0 / (z[i] - z[j]);
      cplx denom = 1.0 - newton * rep;
      cplx delta = (std::abs(denom) > 1e-300) ? newton / denom : newton;
      z[i] -= delta;
      max_step = std::max(max_step, std::abs(delta));
    }
    converged = max_step <= step_tol;
  }
  // Polish simple roots; multiple roots are handled by clustering below.
  for (int i = 0; i < m; ++i) {
    for (int it = 0; it < 3; ++it) {
      cplx dv = param.dp(z[i]);
      if (std::abs(dv) < 1e-14 * std::pow(scale, param.k)) break;
      z[i] -= param.p(z[i]) / dv;
    }
  }
  double residual_cap = tol.root_residual_rel * std::max(1.0, std::pow(eps_norm(param), param.k + 1));
  for (int i = 0; i < m; ++i) {
    if (std::abs(param.p(z[i])) > residual_cap) {
      std::ostringstream os;
      os << "root solver did not converge: residual " << std::abs(param.p(z[i]))
         << " at x = " << z[i].real() << (z[i].imag() < 0 ? "-" : "+")
         << std::abs(z[i].imag()) << "i after " << tol.root_max_iter << " iterations";
      throw numerical_error(os.str());
    }
  }
  return z;
}

}  // namespace

std::vector<SingularPoint> roots(const Parameter& param, const Tolerances& tol) {
  std::vector<cplx> z = solve_roots(param, tol);
  const int m = param.degree();
  const double cluster_tol = tol.root_cluster_rel * std::max(1.0, eps_norm(param));

  // Union points that sit within the clustering distance.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(z[i] - z[j]) <= cluster_tol) parent[find(i)] = find(j);

  std::vector<std::vector<int>> groups(m);
  for (int i = 0; i < m; ++i) groups[find(i)].push_back(i);

  std::vector<SingularPoint> out;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    cplx centroid = 0.0;
    for (int i : g) centroid += z[i];
    centroid /= static_cast<double>(g.size());
    SingularPoint pt;
    pt.position = centroid;
    pt.multiplicity = static_cast<int>(g.size());
    if (g.size() > 1) {
      pt.kind = PointKind::Multiple;
      pt.stability = Stability::None;
    } else {
      cplx lam = param.dp(centroid);
      pt.eigenvalue = lam;
      pt.residue = 1.0 / lam;
      double band = tol.center_band_rel * std::abs(lam);
      pt.near_boundary = std::abs(lam.real()) <= band;
      if (pt.near_boundary && std::abs(lam.imag()) > band) {
        pt.kind = PointKind::Center;
        pt.stability = Stability::None;
      } else if (std::abs(lam.imag()) <= band) {
        pt.kind = PointKind::RadialNode;
        pt.stability = lam.real() < 0 ? Stability::Attracting : Stability::Repelling;
      } else {
        pt.kind = PointKind::Focus;
        pt.stability = lam.real() < 0 ? Stability::Attracting : Stability::Repelling;
      }
    }
    for (int c = 0; c < static_cast<int>(g.size()); ++c) out.push_back(pt);
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& a, const SingularPoint& b) {
    if (a.position.real() != b.position.real()) return a.position.real() < b.position.real();
    return a.position.imag() < b.position.imag();
  });
  return out;
}

cplx discriminant(const Parameter& param) {
  // Sylvester resultant of (p, p'); p monic of degree m.
  const int m = param.degree();
  std::vector<cplx> p = dense_coeffs(param);
  std::vector<cplx> dp(m, 0.0);
  for (int i = 1; i <= m; ++i) dp[i - 1] = static_cast<double>(i) * p[i];
  const int n = 2 * m - 1;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < m - 1; ++r)
    for (int i = 0; i <= m; ++i) s(r, r + m - i) = p[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= m - 1; ++i) s(m - 1 + r, r + m - 1 - i) = dp[i];
  cplx res = s.partialPivLu().determinant();
  double sign = ((static_cast<int64_t>(m) * (m - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * res;
}

double min_root_gap(const std::vector<SingularPoint>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double d = std::abs(pts[i].position - pts[j].position);
      if (d > 0.0) best = std::min(best, d);
    }
  return best;
}

cplx time_integral(const Parameter& param, const std::vector<cplx>& path,
                   double clearance, const Tolerances& tol) {
  if (path.size() < 2) return 0.0;
  if (!(clearance > 0.0)) throw usage_error("time_integral: clearance must be positive");
  std::vector<SingularPoint> pts = roots(param, tol);
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    for (const auto& pt : pts) {
      double d = dist_point_segment(pt.position, path[s], path[s + 1]);
      if (d < clearance) {
        std::ostringstream os;
        os << "time_integral: segment " << s << " passes within " << d
           << " of a root (clearance " << clearance << ")";
        throw numerical_error(os.str());
      }
    }
  }
  // Integrate dx/p as an ODE in the segment parameter; DP5(4) supplies the
  // adaptive error control.
  cplx total = 0.0;
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    cplx a = path[s], b = path[s + 1];
    if (a == b) continue;
    DormandPrince rk([&](double u, const std::vector<cplx>&, std::vector<cplx>& dy) {
      cplx x = a + u * (b - a);
      dy[0] = (b - a) / param.p(x);
    });
    std::vector<cplx> y{0.0};
    double u = 0.0;
    RkControl ctl;
    ctl.rel = tol.quad_rel * 0.1;
    ctl.abs = 1e-16;
    ctl.h_init = 0.1;
    ctl.h_max = 1.0;
    ctl.max_steps = tol.max_steps;
    rk.integrate(y, u, 1.0, ctl, nullptr);
    total += y[0];
  }
  return total;
}

}  // namespace stokes_atlas
