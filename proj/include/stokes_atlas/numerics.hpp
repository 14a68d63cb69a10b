#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "stokes_atlas/errors.hpp"

namespace stokes_atlas {

using cplx = std::complex<double>;

inline double sq(double x) { return x * x; }

// ---------------------------------------------------------------------------
// Embedded Dormand-Prince 5(4) on a flat complex state vector.
// ---------------------------------------------------------------------------

struct RkControl {
  double rel = 1e-10;
  double abs = 1e-13;
  double h_init = 1e-3;
  double h_min = 1e-15;
  double h_max = 1.0;
  int max_steps = 400000;
};

// One adaptive step attempt. Returns accepted flag; on acceptance `y` and `u`
// advance and `err` holds the scaled error estimate.
class DormandPrince {
 public:
  using Rhs = std::function<void(double, const std::vector<cplx>&, std::vector<cplx>&)>;

  explicit DormandPrince(Rhs rhs) : rhs_(std::move(rhs)) {}

  // Advances y from u to u_end. step_cb (optional) is called after every
  // accepted step; returning false stops the integration early.
  // Returns true if u_end was reached, false if stopped by the callback.
  // Throws Error(Numerical) on step-size collapse; step-count exhaustion is
  // reported through the out-parameter so callers can treat it as a value.
  bool integrate(std::vector<cplx>& y, double& u, double u_end, const RkControl& ctl,
                 const std::function<bool(double, const std::vector<cplx>&)>& step_cb,
                 bool* step_limit_hit = nullptr,
                 const std::function<double(double, const std::vector<cplx>&)>& h_cap = nullptr) {
    const int n = static_cast<int>(y.size());
    if (step_limit_hit) *step_limit_hit = false;
    std::vector<std::vector<cplx>> k(7, std::vector<cplx>(n));
    std::vector<cplx> ytmp(n), y5(n), y4(n);
    double dir = (u_end >= u) ? 1.0 : -1.0;
    double h = std::min(ctl.h_init, std::abs(u_end - u)) * dir;
    if (h == 0.0) return true;
    int steps = 0;
    rhs_(u, y, k[0]);
    while (dir * (u_end - u) > 0) {
      if (++steps > ctl.max_steps) {
        if (step_limit_hit) {
          *step_limit_hit = true;
          return false;
        }
        throw numerical_error("ODE step limit exhausted");
      }
      if (std::abs(h) > ctl.h_max) h = ctl.h_max * dir;
      if (h_cap) {
        double cap = h_cap(u, y);
        if (std::abs(h) > cap) h = cap * dir;
      }
      if (dir * (u + h - u_end) > 0) h = u_end - u;

      for (int s = 1; s < 7; ++s) {
        for (int i = 0; i < n; ++i) {
          cplx acc = 0.0;
          for (int j = 0; j < s; ++j) acc += A_[s][j] * k[j][i];
          ytmp[i] = y[i] + h * acc;
        }
        rhs_(u + C_[s] * h, ytmp, k[s]);
      }
      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        cplx acc5 = 0.0, acc4 = 0.0;
        for (int j = 0; j < 7; ++j) {
          acc5 += B5_[j] * k[j][i];
          acc4 += B4_[j] * k[j][i];
        }
        y5[i] = y[i] + h * acc5;
        y4[i] = y[i] + h * acc4;
        double sc = ctl.abs + ctl.rel * std::max(std::abs(y[i]), std::abs(y5[i]));
        err += sq(std::abs(y5[i] - y4[i]) / sc);
      }
      err = std::sqrt(err / n);
      if (err <= 1.0) {
        u += h;
        y.swap(y5);
        k[0] = k[6];  // FSAL
        if (step_cb && !step_cb(u, y)) return false;
      }
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      h *= fac;
      if (std::abs(h) < ctl.h_min) throw numerical_error("ODE step size collapsed");
      if (err > 1.0) rhs_(u, y, k[0]);  // k[6] belongs to the rejected point
    }
    return true;
  }

 private:
  Rhs rhs_;
  static constexpr double C_[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr double A_[7][6] = {
      {0, 0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
      {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static constexpr double B5_[7] = {35.0 / 384,      0, 500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0};
  static constexpr double B4_[7] = {5179.0 / 57600,    0,           7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
};

// ---------------------------------------------------------------------------
// Small geometry helpers on the complex plane.
// ---------------------------------------------------------------------------

inline double dist_point_segment(cplx z, cplx a, cplx b) {
  cplx ab = b - a;
  double l2 = std::norm(ab);
  if (l2 == 0.0) return std::abs(z - a);
  double t = std::clamp(((z - a) * std::conj(ab)).real() / l2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

// Winding number of a closed polyline around z (points need not repeat the
// first point at the end; closure is implicit).
inline int winding_number(const std::vector<cplx>& poly, cplx z) {
  double total = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    cplx a = poly[i] - z;
    cplx b = poly[(i + 1) % n] - z;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2 * M_PI)));
}

}  // namespace stokes_atlas
