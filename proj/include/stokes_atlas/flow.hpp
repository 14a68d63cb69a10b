#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stokes_atlas/polyfield.hpp"

namespace stokes_atlas {

enum class Termination { ConvergedToRoot, EscapedToInfinity, StepLimit, HorizonReached };
enum class Orientation { Forward, Backward };

struct TrajectorySample {
  double s = 0.0;  // arc-length parameter
  cplx t{};        // accumulated complex time
  cplx x{};
};

// A real flow line of dx/dt = p(x) along Im(e^{i slant} t) = const.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  double slant = 0.0;
  Termination termination = Termination::HorizonReached;
  int root_index = -1;  // index into roots() when converged
  cplx final_x{};
  cplx elapsed_t{};

  std::vector<cplx> polyline() const;
};

struct Separatrix {
  double direction = 0.0;  // asymptotic argument at infinity
  bool outgoing = false;   // escapes to infinity in forward time
  Trajectory trajectory;
  int attached_root = -1;
  bool homoclinic = false;
  bool resolved = false;  // false when the trace hit the step limit
};

struct SeparatrixSet {
  double slant = 0.0;
  double escape_radius = 0.0;
  double capture_radius = 0.0;
  std::vector<Separatrix> separatrices;  // 2k in cyclic order, alternating
  std::vector<SingularPoint> points;

  bool any_homoclinic() const;
  bool all_resolved() const;
};

// Asymptotic arguments at infinity of the 2k separatrices of the leading
// flow x' = e^{-i slant} x^{k+1}, sorted increasing. Even positions are
// outgoing directions, odd positions incoming. The open wedge between
// directions m and m+1 is sector m; even sectors carry the '+' sign.
std::vector<double> separatrix_directions(int k, double slant = 0.0);

// Integrates the slanted flow from x0 in unit arc-length speed.
// `horizon` bounds the arc length travelled.
Trajectory integrate(const Parameter& param, cplx x0, double slant, double horizon,
                     Orientation orientation, const Tolerances& tol = {});

// Traces all 2k separatrices inward from the escape radius and records their
// attachments. Requires simple roots.
SeparatrixSet trace_separatrices(const Parameter& param, double slant,
                                 const Tolerances& tol = {});

// Curve transversal to the flow: dx/ds = (+/- i) e^{-i slant} p/|p|.
// Moving upward raises Im(e^{i slant} t) at rate 1/|p| per unit arc.
// Stops when |x| >= r_stop (exited = true) or when the accumulated height
// reaches height_budget (> 0 enables the budget).
struct TransversalResult {
  std::vector<cplx> points;
  bool exited = false;
  cplx final_x{};
  double height = 0.0;  // integral of ds/|p|
};
TransversalResult integrate_transversal(const Parameter& param, cplx x0, double slant,
                                        bool upward, double r_stop, double height_budget,
                                        const Tolerances& tol = {});

double escape_radius(const Parameter& param, const Tolerances& tol);
double capture_radius(const std::vector<SingularPoint>& pts, const Tolerances& tol);

}  // namespace stokes_atlas
