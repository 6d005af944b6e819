#include "kreintopo/krein.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace kreintopo {
namespace {

// Inertia of the Hermitian form S restricted to the range of an orthonormal
// frame.  Degenerate directions contradict non-degeneracy of the Krein form
// on an isolated cluster and signal mis-clustering.
std::pair<int, int> frame_inertia(const Matrix& frame, const Matrix& s) {
  const Matrix form = frame.adjoint() * s * frame;
  Eigen::SelfAdjointEigenSolver<Matrix> es(form);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("Hermitian eigensolver failed on Krein form");
  int plus = 0, minus = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (std::abs(v) < tol::form)
      throw DegenerateForm("Krein form is numerically degenerate on the cluster");
    (v > 0 ? plus : minus)++;
  }
  return {plus, minus};
}

}  // namespace

KreinEigenvalue inertia_of_cluster(const SpectralDecomposition& dec, const Symmetry& jf,
                                   int cluster_index) {
  const auto& cluster = dec.clusters.at(cluster_index);
  for (const auto& ev : cluster.eigenvalues)
    if (std::abs(std::abs(ev) - 1.0) > tol::circle)
      throw NotIsolated("cluster contains an off-circle eigenvalue");
  KreinEigenvalue out;
  out.lambda = cluster.mean;
  out.multiplicity = cluster.multiplicity;
  auto [plus, minus] = frame_inertia(cluster.frame, jf.hermitian_form());
  out.nu_plus = plus;
  out.nu_minus = minus;
  return out;
}

KreinEigenvalue inertia_of_cluster(const Matrix& t, const Symmetry& jf,
                                   const std::vector<Complex>& cluster,
                                   double cluster_gap) {
  if (jf.dim() != t.rows()) throw DimensionMismatch("symmetry does not match operator");
  if (cluster.empty()) throw BadParams("empty cluster");
  SpectralDecomposition dec = decompose(t, cluster_gap);
  // The requested eigenvalues must exhaust whole clusters of the
  // decomposition, otherwise they are not isolated from the rest.
  std::vector<int> hit;
  for (const auto& req : cluster) {
    int best = -1;
    double dist = std::numeric_limits<double>::max();
    for (int i = 0; i < static_cast<int>(dec.clusters.size()); ++i)
      for (const auto& ev : dec.clusters[i].eigenvalues) {
        const double d = std::abs(ev - req);
        if (d < dist) {
          dist = d;
          best = i;
        }
      }
    if (best < 0 || dist > cluster_gap)
      throw NotIsolated("requested eigenvalue not present in the spectrum");
    if (std::find(hit.begin(), hit.end(), best) == hit.end()) hit.push_back(best);
  }
  int covered = 0;
  for (int i : hit) covered += dec.clusters[i].multiplicity;
  if (covered != static_cast<int>(cluster.size()))
    throw NotIsolated("requested cluster is not separated from remaining spectrum");

  KreinEigenvalue out;
  out.multiplicity = covered;
  Complex sum(0, 0);
  int plus = 0, minus = 0;
  for (int i : hit) {
    auto part = inertia_of_cluster(dec, jf, i);
    plus += part.nu_plus;
    minus += part.nu_minus;
    sum += dec.clusters[i].mean * static_cast<double>(dec.clusters[i].multiplicity);
  }
  out.lambda = sum / static_cast<double>(covered);
  out.nu_plus = plus;
  out.nu_minus = minus;
  return out;
}

UnitCircleInertia unit_circle_inertia(const Matrix& t, const Symmetry& jf,
                                      double cluster_gap) {
  UnitCircleInertia result;
  double gap = cluster_gap;
  while (true) {
    try {
      SpectralDecomposition dec = decompose(t, gap);
      result.eigenvalues.clear();
      for (int ci : unit_circle_clusters(dec))
        result.eigenvalues.push_back(inertia_of_cluster(dec, jf, ci));
      result.used_cluster_gap = gap;
      result.widened = gap != cluster_gap;
      return result;
    } catch (const DegenerateForm&) {
      gap *= 10.0;
      if (gap > 1e-3) throw;
    }
  }
}

int global_signature(const std::vector<KreinEigenvalue>& eigs) {
  int sig = 0;
  for (const auto& e : eigs) sig += e.signature();
  return sig;
}

int signature_at(const std::vector<KreinEigenvalue>& eigs, const Complex& lambda,
                 double match_tol) {
  int sig = 0;
  for (const auto& e : eigs)
    if (std::abs(e.lambda - lambda) <= match_tol) sig += e.signature();
  return sig;
}

namespace {

// Pairs each cluster with its complex-conjugate partner and applies check;
// clusters on the real axis are self-paired.
template <typename Check>
void for_conjugate_pairs(const std::vector<KreinEigenvalue>& eigs, Check&& check) {
  const double match = 10 * tol::circle;
  std::vector<bool> used(eigs.size(), false);
  for (size_t i = 0; i < eigs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (std::abs(eigs[i].lambda.imag()) <= match) {
      check(eigs[i], eigs[i]);
      continue;
    }
    bool found = false;
    for (size_t j = 0; j < eigs.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(eigs[j].lambda - std::conj(eigs[i].lambda)) <= match) {
        used[j] = true;
        check(eigs[i], eigs[j]);
        found = true;
        break;
      }
    }
    if (!found)
      throw SymmetryViolated("unit eigenvalue lacks its complex-conjugate partner");
  }
}

void require_equal_reflection(const std::vector<KreinEigenvalue>& eigs) {
  for_conjugate_pairs(eigs, [](const KreinEigenvalue& a, const KreinEigenvalue& b) {
    if (a.nu_plus != b.nu_plus || a.nu_minus != b.nu_minus)
      throw SymmetryViolated("inertia reflection nu_pm(l) = nu_pm(conj l) fails");
  });
}

void require_flipped_reflection(const std::vector<KreinEigenvalue>& eigs) {
  for_conjugate_pairs(eigs, [](const KreinEigenvalue& a, const KreinEigenvalue& b) {
    if (a.nu_plus != b.nu_minus || a.nu_minus != b.nu_plus)
      throw SymmetryViolated("inertia reflection nu_pm(l) = nu_mp(conj l) fails");
  });
}

int mod2(int v) { return ((v % 2) + 2) % 2; }

}  // namespace

void check_inertia_reflection(const std::vector<KreinEigenvalue>& eigs, int eta_f_eta_fr) {
  if (eta_f_eta_fr > 0)
    require_equal_reflection(eigs);
  else
    require_flipped_reflection(eigs);
}

int secondary_invariant(const std::vector<KreinEigenvalue>& eigs) {
  require_equal_reflection(eigs);
  return mod2(signature_at(eigs, Complex(1, 0)));
}

int half_signature(const std::vector<KreinEigenvalue>& eigs) {
  require_equal_reflection(eigs);
  const int sig_one = signature_at(eigs, Complex(1, 0));
  const int sig_minus_one = signature_at(eigs, Complex(-1, 0));
  if (mod2(sig_one) != 0 || mod2(sig_minus_one) != 0)
    throw SymmetryViolated("Kramers degeneracy fails: odd signature at +-1");
  int twice = 0;  // accumulate 2 * half-signature to stay in integers
  const double match = 10 * tol::circle;
  for (const auto& e : eigs) {
    if (std::abs(e.lambda.imag()) <= match)
      twice += e.signature();
    else if (e.lambda.imag() > 0)
      twice += 2 * e.signature();
  }
  if (mod2(twice) != 0) throw SymmetryViolated("half-signature is not an integer");
  return twice / 2;
}

int z2_signature(const std::vector<KreinEigenvalue>& eigs) {
  int total = 0;
  for (const auto& e : eigs) total += e.multiplicity;
  if (mod2(total) != 0)
    throw SymmetryViolated("Kramers degeneracy fails: odd total unit multiplicity");
  return mod2(total / 2);
}

InvariantSet invariants_for_kind(const std::vector<KreinEigenvalue>& eigs,
                                 const SymmetryKind& kind) {
  InvariantSet set;
  set.kind = kind;
  if (!kind.has_real()) {
    set.sig = global_signature(eigs);
    return set;
  }
  const int ff = kind.eta_f * kind.eta_fr.value();
  const int r = kind.eta_r.value();
  if (ff > 0 && r > 0) {
    set.sig = global_signature(eigs);
    set.sec = secondary_invariant(eigs);
  } else if (ff > 0 && r < 0) {
    set.half_sig = half_signature(eigs);
  } else if (ff < 0 && r < 0) {
    check_inertia_reflection(eigs, ff);
    set.sig2 = z2_signature(eigs);
  } else {
    // (eta_F eta_FR, eta_R) = (-, +): the class is connected, no invariant.
    check_inertia_reflection(eigs, ff);
  }
  return set;
}

}  // namespace kreintopo
