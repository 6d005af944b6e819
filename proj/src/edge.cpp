#include "kreintopo/edge.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "kreintopo/parallel.hpp"
#include "kreintopo/spectral.hpp"

namespace kreintopo {
namespace {

// Entrywise magnetic phase, as in the horizontal fibers.
Matrix phased(const Matrix& w, const IntMatrix& sign, double phase) {
  Matrix out = w;
  for (int r = 0; r < w.rows(); ++r)
    for (int s = 0; s < w.cols(); ++s)
      out(r, s) *= std::exp(Complex(0, sign(r, s) * phase));
  return out;
}

// a_n(k1) = W4* e^{i(phi n - k1)} + W2 + W3* e^{-i(phi n - k1)}; the flux part
// of the phase conjugates entrywise per flux_sign, the k1 part does not.
// The boundary momentum enters through e^{i(phi n - k1)}; the realization
// reflects the 1-direction (k1 -> -k1 relative to the raw displays) so that
// the eigenphase slope rule carries the positive orientation: at a simple
// crossing, sign(d theta / d k1) = sign(d k1 / d E) = nu_+ - nu_-.
Matrix vertical_a(const HoppingModel& model, double k1, int site) {
  const double phi = model.flux();
  const Complex e1(std::cos(k1), std::sin(k1));
  return phased(model.w4.adjoint(), model.flux_sign, phi * site) * e1 + model.w2 +
         phased(model.w3.adjoint(), model.flux_sign, -phi * site) * std::conj(e1);
}

Matrix vertical_b(const HoppingModel& model, double k1, int site) {
  const double phi = model.flux();
  const Complex e1(std::cos(k1), std::sin(k1));
  return phased(model.w1, model.flux_sign, phi * site) * e1 + model.v +
         phased(model.w1.adjoint(), model.flux_sign, -phi * site) * std::conj(e1);
}

double circ_dist(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace

Matrix vertical_site_transfer(const HoppingModel& model, double E, double k1, int site) {
  const int L = model.fiber;
  const Matrix a = vertical_a(model, k1, site);
  Eigen::JacobiSVD<Matrix> svd(a);
  const double sv = svd.singularValues()(L - 1);
  if (sv < tol::sv_min)
    throw VerticalHypothesisFailed("a_n(k1) violates the vertical hypothesis", site, k1, sv);
  const Matrix ainv = Eigen::PartialPivLU<Matrix>(a).solve(Matrix::Identity(L, L));
  const Matrix b = vertical_b(model, k1, site);
  Matrix t = Matrix::Zero(2 * L, 2 * L);
  t.topLeftCorner(L, L) = (E * Matrix::Identity(L, L) - b) * ainv;
  t.topRightCorner(L, L) = -a.adjoint();
  t.bottomLeftCorner(L, L) = ainv;
  return t;
}

Matrix vertical_cell_transfer(const HoppingModel& model, double E, double k1) {
  Matrix t = Matrix::Identity(2 * model.fiber, 2 * model.fiber);
  for (int site = 1; site <= model.flux_den; ++site)
    t = vertical_site_transfer(model, E, k1, site) * t;
  return t;
}

ContractingFrame contracting_frame(const HoppingModel& model, double E, double k1) {
  const int L = model.fiber;
  const Matrix t = vertical_cell_transfer(model, E, k1);
  Eigen::ComplexEigenSolver<Matrix> es(t, false);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("cell transfer eigensolver failed");
  int contracting = 0;
  for (int i = 0; i < 2 * L; ++i) {
    const double r = std::abs(es.eigenvalues()(i));
    if (std::abs(r - 1.0) <= tol::circle)
      throw NotInGap("cell transfer matrix has a unit-modulus eigenvalue");
    if (r < 1.0) ++contracting;
  }
  if (contracting != L)
    throw WrongDimension("contracting space does not have fiber dimension", contracting);
  ContractingFrame frame;
  frame.phi = invariant_frame(t, [](const Complex& ev) { return std::abs(ev) < 1.0; });
  return frame;
}

Matrix edge_unitary(const HoppingModel& model, double E, double k1) {
  const int L = model.fiber;
  const ContractingFrame frame = contracting_frame(model, E, k1);
  const Matrix upper = frame.phi.topRows(L), lower = frame.phi.bottomRows(L);
  const Matrix num = upper - Complex(0, 1) * lower;
  const Matrix den = upper + Complex(0, 1) * lower;
  Eigen::JacobiSVD<Matrix> svd(den);
  if (svd.singularValues()(L - 1) < tol::sv_min)
    throw NotLagrangian("frame pairing is singular");
  const Matrix u = num * Eigen::PartialPivLU<Matrix>(den).solve(Matrix::Identity(L, L));
  if (!is_unitary(u, 1e-9))
    throw NotLagrangian("edge matrix is not unitary; contracting frame is not Lagrangian");
  return u;
}

std::vector<double> edge_eigenphases(const HoppingModel& model, double E, double k1) {
  const Matrix u = edge_unitary(model, E, k1);
  Eigen::ComplexEigenSolver<Matrix> es(u, false);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("edge unitary eigensolver failed");
  std::vector<double> phases(model.fiber);
  for (int i = 0; i < model.fiber; ++i) phases[i] = std::arg(es.eigenvalues()(i));
  std::sort(phases.begin(), phases.end());
  return phases;
}

namespace {

// Best cyclic-shift matching between sorted phase lists of adjacent grid
// points; throws when the matched movement is too large for the grid.
std::vector<double> match_phases(const std::vector<double>& from,
                                 const std::vector<double>& to) {
  const int L = static_cast<int>(from.size());
  int best_shift = 0;
  double best_cost = std::numeric_limits<double>::max();
  for (int shift = 0; shift < L; ++shift) {
    double cost = 0;
    for (int j = 0; j < L; ++j) cost += circ_dist(to[(j + shift) % L], from[j]);
    if (cost < best_cost) {
      best_cost = cost;
      best_shift = shift;
    }
  }
  std::vector<double> matched(L);
  for (int j = 0; j < L; ++j) {
    const double target = to[(j + best_shift) % L];
    const double delta = wrap_angle(target - from[j]);
    if (std::abs(delta) > pi / 4.0)
      throw PhaseTrackingAmbiguous("eigenphase moved beyond pi/4 between grid points");
    matched[j] = from[j] + delta;  // unwrapped relative to `from`
  }
  return matched;
}

struct Candidate {
  double k_lo, k_hi;
  double th_lo, th_hi;  // unwrapped, straddling zero
};

// Phase at k closest (circularly) to a predicted value, unwrapped near it.
double phase_near(const HoppingModel& model, double E, double k, double predicted) {
  const auto phases = edge_eigenphases(model, E, k);
  double best = phases[0];
  for (double ph : phases)
    if (circ_dist(ph, predicted) < circ_dist(best, predicted)) best = ph;
  return predicted + wrap_angle(best - predicted);
}

double refine_crossing(const HoppingModel& model, double E, Candidate c, double tol_k) {
  while (c.k_hi - c.k_lo > tol_k) {
    const double mid = 0.5 * (c.k_lo + c.k_hi);
    const double th = phase_near(model, E, mid, 0.5 * (c.th_lo + c.th_hi));
    if ((th >= 0) == (c.th_hi >= 0)) {
      c.k_hi = mid;
      c.th_hi = th;
    } else {
      c.k_lo = mid;
      c.th_lo = th;
    }
  }
  return 0.5 * (c.k_lo + c.k_hi);
}

std::vector<EdgeCrossing> scan_crossings(const HoppingModel& model, double E,
                                         int grid_size, double refine_tol) {
  const std::vector<double> ks = circle_grid(grid_size);
  const int n = static_cast<int>(ks.size());
  std::vector<std::vector<double>> phases(n);
  parallel_for(n, [&](int i) { phases[i] = edge_eigenphases(model, E, ks[i]); });

  // Flat-band guard: a phase branch pinned at zero across the grid.
  int near_zero = 0;
  for (const auto& ph : phases)
    for (double th : ph)
      if (std::abs(th) < 1e-9) {
        ++near_zero;
        break;
      }
  if (near_zero > n / 2)
    throw FlatBandDetected("an eigenphase branch is pinned at zero across the grid");

  std::vector<Candidate> candidates;
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    const double k_lo = ks[i];
    const double k_hi = i + 1 < n ? ks[next] : ks[next] + 2.0 * pi;
    const auto matched = match_phases(phases[i], phases[next]);
    for (size_t j = 0; j < matched.size(); ++j) {
      const double th0 = phases[i][j], th1 = matched[j];
      const bool crosses = (th0 <= 0 && th1 > 0) || (th0 >= 0 && th1 < 0);
      if (!crosses || th0 == th1) continue;
      candidates.push_back({k_lo, k_hi, th0, th1});
    }
  }

  std::vector<EdgeCrossing> raw(candidates.size());
  parallel_for(static_cast<int>(candidates.size()), [&](int idx) {
    const double k_star = refine_crossing(model, E, candidates[idx], refine_tol);
    const double h = refine_tol * 10.0;
    const double th_p = phase_near(model, E, k_star + h, 0.0);
    const double th_m = phase_near(model, E, k_star - h, 0.0);
    EdgeCrossing crossing;
    crossing.k1 = wrap_angle(k_star);
    crossing.theta_slope = (th_p - th_m) / (2.0 * h);
    if (std::abs(crossing.theta_slope) < 1e-6)
      throw DegenerateForm("eigenphase slope vanishes at a crossing");
    crossing.slope_sign = crossing.theta_slope > 0 ? 1 : -1;
    crossing.branch_slopes = {crossing.theta_slope};
    raw[idx] = crossing;
  });

  // Merge branches meeting at the same k1 into one crossing with multiplicity.
  std::sort(raw.begin(), raw.end(),
            [](const EdgeCrossing& a, const EdgeCrossing& b) { return a.k1 < b.k1; });
  const double merge_tol = 1e3 * refine_tol;
  std::vector<EdgeCrossing> merged;
  for (const auto& c : raw) {
    if (!merged.empty() && circ_dist(merged.back().k1, c.k1) <= merge_tol) {
      auto& m = merged.back();
      m.multiplicity += 1;
      m.branch_slopes.push_back(c.theta_slope);
      int net = 0;
      for (double s : m.branch_slopes) net += s > 0 ? 1 : -1;
      m.slope_sign = net >= 0 ? 1 : -1;
    } else {
      merged.push_back(c);
    }
  }
  // The circle wraps: merge the first and last crossings if they touch.
  if (merged.size() > 1 && circ_dist(merged.front().k1, merged.back().k1) <= merge_tol) {
    auto& m = merged.front();
    const auto& last = merged.back();
    m.multiplicity += last.multiplicity;
    m.branch_slopes.insert(m.branch_slopes.end(), last.branch_slopes.begin(),
                           last.branch_slopes.end());
    merged.pop_back();
  }
  return merged;
}

}  // namespace

std::vector<EdgeCrossing> edge_crossings(const HoppingModel& model, double E,
                                         const CrossingScanOptions& opts) {
  int grid = opts.grid_size;
  for (int attempt = 0;; ++attempt) {
    try {
      return scan_crossings(model, E, grid, opts.refine_tol);
    } catch (const PhaseTrackingAmbiguous&) {
      if (attempt >= opts.max_grid_refinements) throw;
      grid = grid * 2 + 1;
    }
  }
}

std::vector<KreinEigenvalue> crossings_to_inertia(const std::vector<EdgeCrossing>& crossings) {
  std::vector<KreinEigenvalue> eigs;
  eigs.reserve(crossings.size());
  for (const auto& c : crossings) {
    KreinEigenvalue ev;
    ev.lambda = Complex(std::cos(c.k1), std::sin(c.k1));
    ev.multiplicity = c.multiplicity;
    for (double s : c.branch_slopes) (s > 0 ? ev.nu_plus : ev.nu_minus)++;
    eigs.push_back(ev);
  }
  return eigs;
}

EdgeInvariantReport edge_invariants(const HoppingModel& model, double E,
                                    const CrossingScanOptions& opts) {
  verify_metadata(model);
  EdgeInvariantReport report;
  report.kind = transfer_kind(model);
  report.crossings = edge_crossings(model, E, opts);
  const auto eigs = crossings_to_inertia(report.crossings);
  report.invariants = invariants_for_kind(eigs, report.kind);
  report.sig_at_one = signature_at(eigs, Complex(1, 0));
  report.sig_at_minus_one = signature_at(eigs, Complex(-1, 0));
  return report;
}

namespace {

Matrix occupied_frame(const HoppingModel& model, double E, double k1, double k2,
                      int expected) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(bloch_hamiltonian(model, k1, k2));
  if (es.info() != Eigen::Success) throw ConvergenceFailure("Bloch eigensolver failed");
  int occ = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - E) < tol::band_hit)
      throw NotInGap("a Bloch band attains the Fermi energy on the Chern grid");
    if (es.eigenvalues()(i) < E) ++occ;
  }
  if (expected >= 0 && occ != expected)
    throw NotInGap("occupied band count varies across the Brillouin zone");
  return es.eigenvectors().leftCols(occ);
}

}  // namespace

int chern_number(const HoppingModel& model, double E, int grid_size) {
  const int n = grid_size;
  const auto k1s = circle_grid(n);
  auto k2s = circle_grid(n, 1.0 / model.flux_den);
  k2s.push_back(k2s.front() + 2.0 * pi / model.flux_den);  // direct wrap row

  // Occupied count from one reference point.
  const int occ = static_cast<int>(occupied_frame(model, E, k1s[0], k2s[0], -1).cols());
  if (occ == 0) return 0;

  std::vector<std::vector<Matrix>> frames(n + 1, std::vector<Matrix>(n));
  parallel_for(n + 1, [&](int j2) {
    for (int j1 = 0; j1 < n; ++j1)
      frames[j2][j1] = occupied_frame(model, E, k1s[j1], k2s[j2], occ);
  });

  double total = 0.0;
  for (int j2 = 0; j2 < n; ++j2) {
    for (int j1 = 0; j1 < n; ++j1) {
      const int j1n = (j1 + 1) % n;
      const Complex l1 = (frames[j2][j1].adjoint() * frames[j2][j1n]).determinant();
      const Complex l2 = (frames[j2][j1n].adjoint() * frames[j2 + 1][j1n]).determinant();
      const Complex l3 = (frames[j2 + 1][j1n].adjoint() * frames[j2 + 1][j1]).determinant();
      const Complex l4 = (frames[j2 + 1][j1].adjoint() * frames[j2][j1]).determinant();
      total += std::arg(l1 * l2 * l3 * l4);
    }
  }
  const double chern = total / (2.0 * pi);
  const double rounded = std::round(chern);
  if (std::abs(chern - rounded) > 0.01)
    throw NonIntegral("plaquette flux sum is not integral");
  return static_cast<int>(rounded);
}

std::vector<EdgeBandSlice> edge_bands(const HoppingModel& model, double e_min,
                                      double e_max, int n_energies,
                                      const CrossingScanOptions& opts) {
  if (n_energies < 1) throw BadParams("need at least one energy");
  std::vector<EdgeBandSlice> slices;
  for (int i = 0; i < n_energies; ++i) {
    EdgeBandSlice slice;
    slice.energy = n_energies == 1
                       ? e_min
                       : e_min + (e_max - e_min) * i / double(n_energies - 1);
    try {
      slice.crossings = edge_crossings(model, slice.energy, opts);
      slice.status = "gap";
    } catch (const NotInGap&) {
      slice.status = "band";
    } catch (const FlatBandDetected&) {
      slice.status = "flat_band";
    } catch (const VerticalHypothesisFailed&) {
      slice.status = "vertical_hypothesis_failed";
    }
    slices.push_back(std::move(slice));
  }
  return slices;
}

}  // namespace kreintopo
