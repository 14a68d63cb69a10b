#pragma once

#include <complex>
#include <vector>

#include "stokes_atlas/numerics.hpp"
#include "stokes_atlas/tolerances.hpp"

namespace stokes_atlas {

// The unfolding polynomial p(x) = x^(k+1) + e_{k-1} x^(k-1) + ... + e_1 x + e_0.
// Note the missing x^k term; coeffs holds (e_0, ..., e_{k-1}).
struct Parameter {
  int k = 1;
  std::vector<cplx> coeffs;

  Parameter() = default;
  Parameter(int k_, std::vector<cplx> c);

  cplx p(cplx x) const;
  cplx dp(cplx x) const;
  int degree() const { return k + 1; }
};

enum class PointKind { RadialNode, Center, Focus, Multiple };
enum class Stability { Attracting, Repelling, None };

struct SingularPoint {
  cplx position{};
  cplx eigenvalue{};  // p'(x)
  cplx residue{};     // 1 / p'(x)
  PointKind kind = PointKind::RadialNode;
  Stability stability = Stability::None;
  int multiplicity = 1;
  bool near_boundary = false;  // |Re eigenvalue| within the center band
};

// All k+1 zeros of p, counted with multiplicity, classified.
std::vector<SingularPoint> roots(const Parameter& param, const Tolerances& tol = {});

// Resultant-based discriminant of p; zero iff a multiple root exists.
cplx discriminant(const Parameter& param);

// max_j |e_j|^(1/(k+1-j)); comparable to the largest root modulus.
double eps_norm(const Parameter& param);

// e_j -> r^(k+1-j) e_j. Roots scale by r, eps_norm scales linearly.
Parameter rescale(const Parameter& param, double r);

// Integral of dx/p(x) along the polyline `path`. Refuses if the path comes
// closer than `clearance` to any root.
cplx time_integral(const Parameter& param, const std::vector<cplx>& path,
                   double clearance, const Tolerances& tol = {});

double min_root_gap(const std::vector<SingularPoint>& pts);

}  // namespace stokes_atlas
