#ifndef KREINTOPO_EDGE_HPP
#define KREINTOPO_EDGE_HPP

#include <string>
#include <vector>

#include "kreintopo/krein.hpp"
#include "kreintopo/tight_binding.hpp"

namespace kreintopo {

// The p-wave fiber transfer matrix in the boundary-normal direction at one
// lattice site, and the ordered product over one periodicity cell.
Matrix vertical_site_transfer(const HoppingModel& model, double E, double k1, int site);
Matrix vertical_cell_transfer(const HoppingModel& model, double E, double k1);

// Orthonormal basis of the contracting generalized eigenspace (all |lambda|
// < 1) of the cell transfer matrix; an I-Lagrangian plane of dimension L when
// E lies in a gap.
struct ContractingFrame {
  Matrix phi;  // 2L x L
};
ContractingFrame contracting_frame(const HoppingModel& model, double E, double k1);

// U = (1, i)* Phi ((1, -i)* Phi)^{-1}; unitary for Lagrangian frames.
Matrix edge_unitary(const HoppingModel& model, double E, double k1);

std::vector<double> edge_eigenphases(const HoppingModel& model, double E, double k1);

// A refined k1 with 1 in spec U^E(k1); equivalently a unit eigenvalue e^{i k1}
// of the half-space transfer operator.
struct EdgeCrossing {
  double k1 = 0.0;
  int slope_sign = 1;                 // net sign over the branches
  int multiplicity = 1;
  double theta_slope = 0.0;           // d theta / d k1 of the first branch
  std::vector<double> branch_slopes;  // one entry per phase branch through zero
};

struct CrossingScanOptions {
  int grid_size = 629;
  double refine_tol = 1e-10;
  int max_grid_refinements = 3;
};

std::vector<EdgeCrossing> edge_crossings(const HoppingModel& model, double E,
                                         const CrossingScanOptions& opts = {});

// Maps crossings to unit-circle Krein eigenvalues via the eigenphase slope
// rule: each simple branch carries inertia (1,0) or (0,1) by its slope sign.
std::vector<KreinEigenvalue> crossings_to_inertia(const std::vector<EdgeCrossing>& crossings);

struct EdgeInvariantReport {
  SymmetryKind kind;
  std::vector<EdgeCrossing> crossings;
  InvariantSet invariants;
  int sig_at_one = 0;        // diagnostics: Sig(1)
  int sig_at_minus_one = 0;  // diagnostics: Sig(-1)
};

// Verifies metadata, computes crossings and dispatches the invariant set of
// the model's symmetry class.
EdgeInvariantReport edge_invariants(const HoppingModel& model, double E,
                                    const CrossingScanOptions& opts = {});

// Chern number of the Fermi projection below E by plaquette Berry-flux
// summation over the magnetic Brillouin zone.
int chern_number(const HoppingModel& model, double E, int grid_size = 60);

struct EdgeBandSlice {
  double energy = 0.0;
  std::string status;  // "gap", "band" or an error tag
  std::vector<EdgeCrossing> crossings;
};

std::vector<EdgeBandSlice> edge_bands(const HoppingModel& model, double e_min,
                                      double e_max, int n_energies,
                                      const CrossingScanOptions& opts = {});

}  // namespace kreintopo

#endif
