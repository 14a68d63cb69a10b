#pragma once

#include <cmath>
#include <cstdint>

namespace stokes_atlas {

// Single knob object threaded through the numerical layers. Defaults are the
// values the test suites pin; override via a JSON file on the CLI.
struct Tolerances {
  // root finding
  int root_max_iter = 200;
  double root_cluster_rel = 1e-8;    // x max(1, |eps|) multiplicity clustering
  double root_residual_rel = 1e-12;  // x max(1, |eps|^(k+1))

  // classification of singular points
  double center_band_rel = 1e-9;  // |Re lambda| <= band * |lambda| is a center

  // quadrature / path integrals
  double quad_rel = 1e-9;

  // trajectory integration
  double ode_rel = 1e-10;
  double ode_abs = 1e-13;
  int max_steps = 400000;
  double escape_factor = 10.0;    // escape radius = factor * max(1, |eps|)
  double capture_factor = 1e-4;   // capture radius = factor * min root gap
  double slant_margin = M_PI / 8;

  // linear ODE transport / monodromy
  double transport_rel = 1e-12;
  double transport_abs = 1e-14;

  // flags and adapted bases
  double flag_tail_tol = 1e-9;     // subspace motion per tail doubling
  double growth_floor = 1e-3;      // min slanted rate separation at a root
  double transversality_floor = 1e-6;  // min principal angle (radians)

  // Stokes data
  double triangular_tol = 1e-7;    // relative off-triangle residual
  double gate_consistency = 1e-10;
  double nonzero_entry_rel = 1e-12;
  double factor_eigen_gap = 1e-4;  // relative eigenvalue gap for factors
  int factor_max_retries = 64;

  // monodromy comparisons
  double conjugacy_residual = 1e-9;
  double cocycle_tol = 1e-8;

  uint64_t seed = 0x5eed5a71a5ULL;
};

}  // namespace stokes_atlas
