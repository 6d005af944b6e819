#ifndef KREINTOPO_SPECTRAL_HPP
#define KREINTOPO_SPECTRAL_HPP

#include <functional>
#include <vector>

#include "kreintopo/symmetry.hpp"
#include "kreintopo/types.hpp"

namespace kreintopo {

// One transitively-gapped group of eigenvalues with an orthonormal basis of
// the associated invariant (generalized eigen-) subspace.
struct SpectralCluster {
  std::vector<Complex> eigenvalues;  // with algebraic multiplicity
  Complex mean{0, 0};
  int multiplicity = 0;
  Matrix frame;  // n x multiplicity, orthonormal columns, T-invariant range
};

struct SpectralDecomposition {
  Matrix op;
  std::vector<SpectralCluster> clusters;
  double cluster_gap = tol::cluster_gap;

  int dim() const { return static_cast<int>(op.rows()); }
  std::vector<Complex> all_eigenvalues() const;
};

// Dense non-Hermitian eigendecomposition with Schur-based invariant frames.
// Eigenvalues whose pairwise distance is below cluster_gap are grouped
// transitively.
SpectralDecomposition decompose(const Matrix& t, double cluster_gap = tol::cluster_gap);

// Riesz spectral projection onto one cluster, assembled as F (G*F)^{-1} G*
// from the right and left invariant frames.  Throws IllConditioned when
// cond(G*F) exceeds tol::cond_limit.
Matrix riesz_projection(const SpectralDecomposition& dec, int cluster_index);

// Orthonormal frame of the left (adjoint-side) invariant subspace of a cluster.
Matrix left_frame(const SpectralDecomposition& dec, int cluster_index);

// Indices of clusters on the unit circle.  A cluster mixing on- and
// off-circle eigenvalues within tol_circle signals failed isolation.
std::vector<int> unit_circle_clusters(const SpectralDecomposition& dec,
                                      double tol_circle = tol::circle);

// Orthonormal frame of the invariant subspace spanned by the generalized
// eigenspaces of all eigenvalues accepted by the predicate.
Matrix invariant_frame(const Matrix& t, const std::function<bool(const Complex&)>& select);

enum class CollisionScenario { krein_2x2, o11_block, quadruple, mediated };

struct CollisionParams {
  Complex lambda{1.0, 0.0};  // unit-circle anchor of the collision
  double a = 0.0;            // Jordan coupling of the Krein collision block
  int sigma = 1;
  int kappa = 1;
};

// Matrix family T_t realizing the generic instability scenarios; see
// collision_symmetries for the conserved structure of each scenario.
Matrix collision_path(CollisionScenario scenario, const CollisionParams& params, double t);

struct CollisionSymmetries {
  Symmetry jf;
  std::optional<Symmetry> jr;
};
CollisionSymmetries collision_symmetries(CollisionScenario scenario,
                                         const CollisionParams& params);

}  // namespace kreintopo

#endif
