#ifndef KREINTOPO_KREIN_HPP
#define KREINTOPO_KREIN_HPP

#include <optional>
#include <vector>

#include "kreintopo/spectral.hpp"
#include "kreintopo/symmetry.hpp"

namespace kreintopo {

// A unit-circle eigenvalue cluster of a J-unitary with its Krein inertia.
struct KreinEigenvalue {
  Complex lambda{1, 0};
  int nu_plus = 0;
  int nu_minus = 0;
  int multiplicity = 0;

  int signature() const { return nu_plus - nu_minus; }
};

// Inertia of the form sqrt(eta_F) J_F restricted to the generalized
// eigenspace of an isolated unit-circle cluster, via the Riesz frame.
KreinEigenvalue inertia_of_cluster(const Matrix& t, const Symmetry& jf,
                                   const std::vector<Complex>& cluster,
                                   double cluster_gap = tol::cluster_gap);

// Inertia of a cluster already held in a decomposition of t.
KreinEigenvalue inertia_of_cluster(const SpectralDecomposition& dec, const Symmetry& jf,
                                   int cluster_index);

struct UnitCircleInertia {
  std::vector<KreinEigenvalue> eigenvalues;
  double used_cluster_gap = tol::cluster_gap;
  bool widened = false;
};

// All unit-circle clusters of t with their inertia.  If the default cluster
// gap produces a degenerate form, the gap is widened by factors of 10 up to
// 1e-3 and the widening is reported.
UnitCircleInertia unit_circle_inertia(const Matrix& t, const Symmetry& jf,
                                      double cluster_gap = tol::cluster_gap);

int global_signature(const std::vector<KreinEigenvalue>& eigs);

// Signature of the cluster at a given unit-circle point (0 when absent).
int signature_at(const std::vector<KreinEigenvalue>& eigs, const Complex& lambda,
                 double match_tol = 10 * tol::circle);

// Sec = Sig(1) mod 2; requires the inertia reflection nu_pm(l) = nu_pm(conj l).
int secondary_invariant(const std::vector<KreinEigenvalue>& eigs);

// Half-signature: sum over Im(lambda) >= 0 of (nu+ - nu-) (1 - delta_{+-1}/2);
// requires nu_pm(l) = nu_pm(conj l) and even Sig(+-1) (Kramers).
int half_signature(const std::vector<KreinEigenvalue>& eigs);

// Z2-signature: half the total unit-circle multiplicity, mod 2; requires even
// total multiplicity (Kramers).
int z2_signature(const std::vector<KreinEigenvalue>& eigs);

struct InvariantSet {
  SymmetryKind kind;
  std::optional<int> sig, sec, half_sig, sig2;
};

// Populates exactly the invariants of the kind's symmetry class:
// (eta_F eta_FR, eta_R) = (+,+): Sig and Sec; (+,-): half-Sig; (-,+): none;
// (-,-): Sig2; without Real symmetry: Sig only.
InvariantSet invariants_for_kind(const std::vector<KreinEigenvalue>& eigs,
                                 const SymmetryKind& kind);

// Checks the Table-1 inertia reflection rule for the kind on a computed list;
// throws SymmetryViolated on failure.
void check_inertia_reflection(const std::vector<KreinEigenvalue>& eigs, int eta_f_eta_fr);

}  // namespace kreintopo

#endif
