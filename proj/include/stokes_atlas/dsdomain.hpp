#pragma once

#include <string>
#include <vector>

#include "stokes_atlas/flow.hpp"
#include "stokes_atlas/polyfield.hpp"

namespace stokes_atlas {

// Combinatorial invariant of a sector decomposition: 2k boundary sectors in
// counterclockwise order O_1^+, O_1^-, ..., O_k^+, O_k^- (sector 2j is the
// plus sector of pair j, sector 2j+1 the minus sector of pair j; 0-based).
// `sigma` pairs plus sector j with minus sector sigma[j]; drawn as chords in
// the disk the pairs are non-crossing. Faces of the chord system correspond
// to the k+1 singular points; `tree_*` is the dual tree whose k edges are the
// sector pairs.
struct DSDiagram {
  int k = 1;
  std::vector<int> sigma;  // pair j -> paired minus index, a permutation of 0..k-1

  // Derived structure (filled by make_diagram):
  std::vector<int> sigma_inv;
  std::vector<int> alpha_face;  // per pair: face of the shared repelling point
  std::vector<int> omega_face;  // per pair: face of the shared attracting point
  std::vector<int> alpha_of_sector, omega_of_sector;  // per sector (2k), face ids
  std::vector<std::vector<int>> face_arcs;  // face id -> boundary arc ids
  std::vector<bool> face_is_alpha;          // type per face

  // Concrete attachment: face id -> index into roots(param). Empty when the
  // diagram is abstract.
  std::vector<int> root_of_face;

  int num_faces() const { return k + 1; }
  int base_sector() const { return 2 * k - 1; }  // O_k^-
  std::string id() const;

  // Tree helpers (vertices = faces, edge j = pair j).
  int edge_end(int pair, bool alpha_side) const {
    return alpha_side ? alpha_face[pair] : omega_face[pair];
  }
  std::vector<std::vector<std::pair<int, int>>> tree_adjacency() const;  // face -> (edge, other)
  // Faces on the alpha side of the chord of `pair` (component of tree minus
  // that edge containing alpha_face[pair]).
  std::vector<int> alpha_side_faces(int pair) const;
};

// Validates sigma, computes faces/attachments. Throws on crossing chords or
// inconsistent structure.
DSDiagram make_diagram(int k, const std::vector<int>& sigma);

// All C_k distinct diagrams for 1 <= k <= 12, in a deterministic order.
std::vector<DSDiagram> enumerate_diagrams(int k);

// Reads the diagram off a traced separatrix set; fills root_of_face and
// verifies the interior probe of every pair lands on its two endpoints.
DSDiagram build_diagram(const SeparatrixSet& sep, const Parameter& param,
                        const Tolerances& tol = {});

struct TauCoordinates {
  std::vector<cplx> taus;                 // k periods, one per pair
  std::vector<std::vector<int>> enclosed;  // root indices enclosed by each chord
};

// Periods tau_j = 2 pi i * sum of residues over the enclosed roots, with a
// quadrature cross-check along a transversal realization of each chord.
TauCoordinates tau_coordinates(const DSDiagram& diagram, const Parameter& param,
                               const Tolerances& tol = {});

// All proper nonempty root subsets I with |Re sum_{l in I} nu_l| <= band,
// up to complementation (each subset contains root 0's complement rule:
// the representative excludes... see implementation note).
std::vector<std::vector<int>> detect_bifurcation(const Parameter& param, double band,
                                                 const Tolerances& tol = {});

// Smallest band at which detect_bifurcation fires.
double bifurcation_distance(const Parameter& param, const Tolerances& tol = {});

struct Classification {
  int diagram_index = -1;  // into enumerate_diagrams(k)
  std::string diagram_id;
  DSDiagram diagram;
  double slant_used = 0.0;
  double bifurcation_distance = 0.0;
  SeparatrixSet separatrices;
};

std::vector<double> default_slant_grid();

// Runs trace_separatrices over the slant grid until a non-homoclinic
// configuration appears; throws Boundary when every slant fails.
Classification classify_epsilon(const Parameter& param,
                                const std::vector<double>& slant_grid = default_slant_grid(),
                                const Tolerances& tol = {});

// The canonical interior trajectory of a pair: descends from the far field
// into the middle of the strip, then flows to both endpoints.
struct PairProbe {
  cplx anchor{};          // mid-strip reference point
  Trajectory forward;     // anchor -> attracting endpoint
  Trajectory backward;    // anchor -> repelling endpoint
  TransversalResult up;   // anchor -> far field (raising slanted time height)
  TransversalResult down; // anchor -> far field (lowering)
};
PairProbe pair_probe(const DSDiagram& diagram, const Parameter& param, int pair,
                     double slant, const Tolerances& tol = {});

}  // namespace stokes_atlas
