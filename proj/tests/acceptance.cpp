// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Optional argv[1] points at the CLI binary for the determinism
// criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kreintopo/edge.hpp"
#include "kreintopo/krein.hpp"
#include "kreintopo/models.hpp"
#include "kreintopo/normal_forms.hpp"
#include "kreintopo/spectral.hpp"
#include "kreintopo/tight_binding.hpp"
#include "support.hpp"

using namespace kreintopo;
using namespace kreintopo::testing;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::vector<std::pair<HoppingModel, double>> anchor_runs;  // for criterion 7

struct Reporter {
  std::string name;
  bool ok = true;
  std::string detail;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Reporter(std::string n) : name(std::move(n)) {}

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }

  void finish() {
    const double dt = seconds();
    std::printf("[%s] %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), dt,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt_int(int v) { return std::to_string(v); }

void criterion1_harper() {
  Reporter r("criterion 1: Harper flux 3/7");
  const auto model = models::harper(3, 7);
  const auto report = edge_invariants(model, -1.9);
  r.expect(report.crossings.size() == 3,
           "expected 3 crossings, got " + fmt_int(int(report.crossings.size())));
  for (const auto& c : report.crossings)
    r.expect(c.slope_sign == 1 && c.multiplicity == 1, "crossing not simple positive");
  r.expect(report.invariants.sig.value_or(99) == 3,
           "Sig = " + fmt_int(report.invariants.sig.value_or(99)) + ", want 3");
  const int chern = chern_number(model, -1.9);
  r.expect(chern == 3, "Chern = " + fmt_int(chern) + ", want 3");
  const auto gap_spectrum = bulk_transfer_spectrum(model, -1.9);
  r.expect(gap_spectrum.min_distance_to_circle() > 1e-3,
           "gap spectrum touches the unit circle");
  const auto band_spectrum = bulk_transfer_spectrum(model, -2.2);
  r.expect(band_spectrum.min_distance_to_circle() <= 1e-3,
           "band spectrum misses the unit circle");
  r.expect(r.seconds() < 10.0, "runtime budget 10 s exceeded");
  anchor_runs.push_back({model, -1.9});
  r.finish();
}

void criterion2_kane_mele() {
  Reporter r("criterion 2: Kane-Mele");
  const auto model = models::kane_mele(1.0, 0.45, 0.3);
  const auto report = edge_invariants(model, 0.0);
  r.expect(report.invariants.sig2.value_or(99) == 1,
           "Sig2 = " + fmt_int(report.invariants.sig2.value_or(99)) + ", want 1");
  for (const auto& c : report.crossings) {
    bool paired = false;
    for (const auto& other : report.crossings)
      if (std::abs(wrap_angle(other.k1 + c.k1)) < 1e-6 &&
          other.multiplicity == c.multiplicity)
        paired = true;
    r.expect(paired, "crossing lacks its Kramers partner");
  }
  r.expect(!energy_gap_status(model, 0.6).in_gap, "E = 0.6 not reported in-band");
  r.expect(r.seconds() < 60.0, "runtime budget 60 s exceeded");
  anchor_runs.push_back({model, 0.0});
  r.finish();
}

void criterion3_p_ip() {
  Reporter r("criterion 3: p+-ip BdG");
  struct Want {
    double mu;
    int sig, sec;
  };
  const Want wants[] = {{0.2, 1, 0}, {1.9, 2, 0}, {2.5, -1, 1}};
  for (const auto& w : wants) {
    const auto model = models::p_ip(0.2, w.mu, 1, 3, 1);
    const auto report = edge_invariants(model, 0.0);
    r.expect(report.invariants.sig.value_or(99) == w.sig,
             "mu=" + std::to_string(w.mu) + ": Sig = " +
                 fmt_int(report.invariants.sig.value_or(99)) + ", want " +
                 fmt_int(w.sig));
    r.expect(report.invariants.sec.value_or(99) == w.sec,
             "mu=" + std::to_string(w.mu) + ": Sec = " +
                 fmt_int(report.invariants.sec.value_or(99)) + ", want " +
                 fmt_int(w.sec));
    const int chern = chern_number(model, 0.0);
    r.expect(chern == w.sig, "mu=" + std::to_string(w.mu) + ": Chern " +
                                 fmt_int(chern) + " disagrees with Sig");
    anchor_runs.push_back({model, 0.0});
  }
  r.expect(r.seconds() < 60.0, "runtime budget 60 s exceeded");
  r.finish();
}

void criterion4_d_id() {
  Reporter r("criterion 4: d+-id BdG");
  const auto model = models::d_id(0.2, 0.0, 0, 1, 1);
  const auto kind = transfer_kind(model);
  r.expect(kind.eta_f == -1 && kind.eta_r.value_or(99) == -1 &&
               kind.eta_fr.value_or(99) == -1,
           "kind is not (-1,-1,-1)");
  const auto report = edge_invariants(model, 0.0);
  r.expect(report.invariants.half_sig.value_or(99) == 1,
           "half-Sig = " + fmt_int(report.invariants.half_sig.value_or(99)) +
               ", want 1");
  r.finish();
}

void criterion5_properties() {
  Reporter r("criterion 5: property suite");
  Rng rng(20260809);

  // (a) transfer fibers I-unitary to 1e-10; 200 random (model, E, k2) cases.
  {
    int cases = 0, inertia_checks = 0;
    while (cases < 200) {
      const int fiber = 1 + int(rng() % 3);
      const int p = 1 + int(rng() % 4);
      const int q = int(rng() % p);
      Matrix w1 = random_complex(rng, fiber, fiber);
      Matrix w2 = random_complex(rng, fiber, fiber);
      Matrix w3 = random_complex(rng, fiber, fiber);
      Matrix w4 = random_complex(rng, fiber, fiber);
      Matrix v = random_hermitian(rng, fiber);
      const auto model = make_model(fiber, q, p, w1, w2, w3, w4, v);
      std::uniform_real_distribution<double> kdist(-pi / model.flux_den,
                                                   pi / model.flux_den);
      std::uniform_real_distribution<double> edist(-2, 2);
      const double k2 = kdist(rng), e = edist(rng);
      // keep the inverse well conditioned so the absolute tolerance is fair
      if (fiber_min_sv(model, k2) < 0.3) continue;
      const Matrix t = bulk_transfer_fiber(model, e, k2);
      const Matrix i2n = canon_I(model.fiber * model.flux_den);
      r.expect((t.adjoint() * i2n * t - i2n).norm() <= 1e-10,
               "(a) transfer fiber not I-unitary to 1e-10");
      ++cases;
      (void)inertia_checks;
    }
  }

  // (b) spectrum reflection to 1e-7, 200 random J-unitaries; (d) counted too.
  {
    int multiplicity_checks = 0;
    for (int rep = 0; rep < 200; ++rep) {
      const int np = 1 + int(rng() % 3), nm = 1 + int(rng() % 3);
      const auto jf = make_symmetry(canon_J(np, nm), SymmetryFlavor::fundamental);
      const Matrix g = random_group_element(rng, jf, nullptr, 0.6);
      const auto evs = decompose(g).all_eigenvalues();
      for (const auto& ev : evs) {
        bool found = false;
        for (const auto& other : evs)
          if (std::abs(other - 1.0 / std::conj(ev)) < 1e-7) found = true;
        r.expect(found, "(b) spectrum reflection fails");
      }
      const auto inertia = unit_circle_inertia(g, jf);
      for (const auto& ev : inertia.eigenvalues) {
        r.expect(ev.nu_plus + ev.nu_minus == ev.multiplicity,
                 "(d) inertia does not sum to multiplicity");
        ++multiplicity_checks;
      }
    }
    r.expect(multiplicity_checks >= 200, "(d) fewer than 200 cluster checks");
  }

  // (c) inertia reflection rules for the four kinds, 50 cases each, with the
  // planted values as exact oracles.
  {
    auto run = [&](auto sampler, int eta_f_eta_fr, const char* tag) {
      for (int rep = 0; rep < 50; ++rep) {
        const KindSample s = sampler(rng);
        const auto inertia = unit_circle_inertia(s.op, s.jf);
        try {
          check_inertia_reflection(inertia.eigenvalues, eta_f_eta_fr);
        } catch (const SymmetryViolated&) {
          r.expect(false, std::string("(c) reflection rule fails for ") + tag);
        }
        for (const auto& want : s.planted) {
          bool matched = false;
          for (const auto& got : inertia.eigenvalues)
            if (std::abs(got.lambda - want.lambda) < 1e-6 &&
                got.nu_plus == want.nu_plus && got.nu_minus == want.nu_minus)
              matched = true;
          r.expect(matched, std::string("(c) planted inertia missing for ") + tag);
        }
      }
    };
    run(sample_kind_opq, 1, "(1,1,1)");
    run(sample_kind_sp, -1, "(-1,1,1)");
    run(sample_kind_so_star, -1, "(-1,-1,1)");
    run(sample_kind_sp22, 1, "(1,-1,1)");
  }

  // (e) Riesz projections against the 256-point contour oracle, 200 cases.
  {
    for (int rep = 0; rep < 200; ++rep) {
      const int n = 4 + int(rng() % 3);
      Matrix d = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        const double radius = (i % 2 == 0) ? 0.6 : 1.6;
        const double angle = 2.0 * pi * i / n + 0.1;
        d(i, i) = radius * Complex(std::cos(angle), std::sin(angle));
      }
      const Matrix s = random_complex(rng, n, n) + 3.0 * Matrix::Identity(n, n);
      const Matrix t = s * d * s.inverse();
      const auto dec = decompose(t);
      for (int ci = 0; ci < int(dec.clusters.size()); ++ci) {
        double isolation = std::numeric_limits<double>::max();
        for (int cj = 0; cj < int(dec.clusters.size()); ++cj) {
          if (cj == ci) continue;
          for (const auto& other : dec.clusters[cj].eigenvalues)
            isolation =
                std::min(isolation, std::abs(other - dec.clusters[ci].mean));
        }
        const Matrix p = riesz_projection(dec, ci);
        const Matrix oracle = contour_projection(t, dec.clusters[ci].mean,
                                                 isolation / 2.0);
        r.expect((p - oracle).norm() < 1e-6, "(e) Riesz vs contour mismatch");
      }
    }
  }

  // (f) normal-form round-trips, 15 repetitions over all 14 listed cases.
  {
    auto check_round = [&](const Symmetry& jf, const Symmetry* jr, const Symmetry* jc,
                           const NormalFormResult& res) {
      const Matrix u = res.u.cast<Complex>();
      bool ok = (u * res.target_f * u.adjoint() - jf.matrix).norm() < 2e-10;
      if (jr) ok = ok && (u * res.target_r * u.adjoint() - jr->matrix).norm() < 2e-10;
      if (jc) ok = ok && (u * res.target_c * u.adjoint() - jc->matrix).norm() < 2e-10;
      r.expect(ok, "(f) normal-form round-trip exceeds 2e-10");
    };
    auto conj_sym = [&](const Matrix& canonical, const RealMatrix& q,
                        SymmetryFlavor flavor) {
      return make_symmetry(
          q.cast<Complex>() * canonical * q.transpose().cast<Complex>(), flavor);
    };
    for (int rep = 0; rep < 15; ++rep) {
      // fundamental: eta_F = +1 and -1
      {
        const RealMatrix q = random_orthogonal(rng, 5);
        const auto jf = conj_sym(canon_J(3, 2), q, SymmetryFlavor::fundamental);
        check_round(jf, nullptr, nullptr, normalize_fundamental(jf));
      }
      {
        const RealMatrix q = random_orthogonal(rng, 6);
        const auto jf = conj_sym(canon_I(3), q, SymmetryFlavor::fundamental);
        check_round(jf, nullptr, nullptr, normalize_fundamental(jf));
      }
      // the eight pair kinds
      struct PairSpec {
        Matrix jf, jr;
      };
      std::vector<PairSpec> pairs;
      {
        Matrix jr1 = Matrix::Zero(4, 4);
        jr1(0, 0) = 1;
        jr1(1, 1) = -1;
        jr1(2, 2) = 1;
        jr1(3, 3) = -1;
        pairs.push_back({canon_J(2, 2), jr1});
        Matrix jr2 = Matrix::Zero(4, 4);
        jr2.topLeftCorner(2, 2) = canon_I(1);
        jr2.bottomRightCorner(2, 2) = canon_I(1);
        pairs.push_back({canon_J(2, 2), jr2});
        Matrix jf3 = jr2;
        pairs.push_back({jf3, canon_J(2, 2)});
        Matrix jf4 = Matrix::Zero(4, 4);
        jf4.topRightCorner(2, 2) = -Matrix::Identity(2, 2);
        jf4.bottomLeftCorner(2, 2) = Matrix::Identity(2, 2);
        pairs.push_back({jf4, jr2});
        pairs.push_back({canon_J(2, 2), canon_K(2)});
        pairs.push_back({canon_J(2, 2), canon_I(2)});
        pairs.push_back({canon_I(2), canon_J(2, 2)});
        Matrix jr8 = Matrix::Zero(4, 4);
        jr8.topLeftCorner(2, 2) = canon_I(1);
        jr8.bottomRightCorner(2, 2) = -canon_I(1);
        pairs.push_back({canon_I(2), jr8});
      }
      for (const auto& ps : pairs) {
        const RealMatrix q = random_orthogonal(rng, 4);
        const auto jf = conj_sym(ps.jf, q, SymmetryFlavor::fundamental);
        const auto jr = conj_sym(ps.jr, q, SymmetryFlavor::real);
        check_round(jf, &jr, nullptr, normalize_pair(jf, jr));
      }
      // the four triple cases
      struct TripleSpec {
        Matrix jf, jr, jc;
      };
      auto kron2 = [](const Matrix& a, const Matrix& b) {
        Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (int rr = 0; rr < a.rows(); ++rr)
          for (int cc = 0; cc < a.cols(); ++cc)
            out.block(rr * b.rows(), cc * b.cols(), b.rows(), b.cols()) = a(rr, cc) * b;
        return out;
      };
      const Matrix I1 = canon_I(1), K1 = canon_K(1), J1 = canon_J(1, 1);
      const Matrix one2 = Matrix::Identity(2, 2);
      std::vector<TripleSpec> triples = {
          {kron2(I1, J1), kron2(one2, I1), kron2(I1, K1)},
          {kron2(J1, one2), kron2(K1, I1), kron2(I1, one2)},
          {J1, K1, I1},
          {kron2(J1, one2), kron2(K1, one2), kron2(I1, I1)},
      };
      for (const auto& ts : triples) {
        const RealMatrix q = random_orthogonal(rng, int(ts.jf.rows()));
        const auto jf = conj_sym(ts.jf, q, SymmetryFlavor::fundamental);
        const auto jr = conj_sym(ts.jr, q, SymmetryFlavor::real);
        const auto jc = conj_sym(ts.jc, q, SymmetryFlavor::chiral);
        check_round(jf, &jr, &jc, normalize_triple(jf, jr, jc));
      }
    }
  }

  // (g) chiral reduction round-trip to 1e-9 plus symmetric inertia, 200 cases.
  {
    const auto jf = make_symmetry(canon_J(2, 2), SymmetryFlavor::fundamental);
    const auto jc = make_symmetry(canon_K(2), SymmetryFlavor::chiral);
    for (int rep = 0; rep < 200; ++rep) {
      const bool unitary_block = rep % 2 == 0;
      Matrix block;
      if (unitary_block) {
        const Matrix h = random_hermitian(rng, 2);
        block = Matrix::Identity(2, 2);
        Matrix term = Matrix::Identity(2, 2);
        const Matrix x = Complex(0, 1) * h;
        for (int k = 1; k <= 20; ++k) {
          term = term * x / double(k);
          block += term;
        }
      } else {
        block = random_complex(rng, 2, 2) + 3.0 * Matrix::Identity(2, 2);
      }
      const auto basis = chiral_basis(jf, jc);
      Matrix w = Matrix::Zero(4, 4);
      w.topLeftCorner(2, 2) = block;
      w.bottomRightCorner(2, 2) =
          basis.v.adjoint() * block.adjoint().inverse() * basis.v;
      const Matrix t = basis.v_basis * w * basis.v_basis.adjoint();
      const auto red = chiral_reduce(t, jf, jc);
      r.expect((red.block_first - block).norm() < 1e-9,
               "(g) chiral reduction round-trip exceeds 1e-9");
      if (unitary_block) {
        const auto inertia = unit_circle_inertia(t, jf);
        for (const auto& ev : inertia.eigenvalues)
          r.expect(ev.nu_plus == ev.nu_minus,
                   "(g) anti-commuting chiral inertia asymmetric");
      }
    }
  }

  r.finish();
}

void criterion6_collisions() {
  Reporter r("criterion 6: collision-path invariance");
  CollisionParams kp;
  kp.lambda = Complex(std::cos(1.1), std::sin(1.1));
  kp.a = 0.8;
  const auto ksym = collision_symmetries(CollisionScenario::krein_2x2, kp);
  for (double t = -2.0; t <= 2.001; t += 0.1) {
    const Matrix m = collision_path(CollisionScenario::krein_2x2, kp, t);
    const auto inertia = unit_circle_inertia(m, ksym.jf);
    r.expect(global_signature(inertia.eigenvalues) == 0, "krein_2x2 Sig != 0");
    const auto evs = decompose(m).all_eigenvalues();
    double max_off = 0;
    for (const auto& ev : evs) max_off = std::max(max_off, std::abs(std::abs(ev) - 1.0));
    if (std::abs(t) < 1e-12)
      r.expect(max_off <= 1e-8, "collision point not on the circle");
    else
      r.expect(max_off > 1e-8, "eigenvalues failed to leave the circle");
  }
  for (int sigma : {1, -1}) {
    CollisionParams op;
    op.sigma = sigma;
    op.kappa = -sigma;
    const auto osym = collision_symmetries(CollisionScenario::o11_block, op);
    for (double t = -2.0; t <= 2.001; t += 0.25) {
      const Matrix m = collision_path(CollisionScenario::o11_block, op, t);
      const auto inertia = unit_circle_inertia(m, osym.jf);
      r.expect(signature_at(inertia.eigenvalues, Complex(1, 0)) == sigma,
               "o11 Sig(1) drifted");
      r.expect(signature_at(inertia.eigenvalues, Complex(-1, 0)) == -sigma,
               "o11 Sig(-1) drifted");
    }
  }
  r.finish();
}

void criterion7_cross_derivative() {
  Reporter r("criterion 7: slope vs energy motion");
  const double de = 1e-4;
  int checked = 0;
  for (const auto& [model, energy] : anchor_runs) {
    const auto base = edge_crossings(model, energy);
    const auto up = edge_crossings(model, energy + de);
    const auto down = edge_crossings(model, energy - de);
    for (const auto& c : base) {
      auto nearest = [&](const std::vector<EdgeCrossing>& list) {
        double best = 1e9;
        for (const auto& cand : list)
          if (std::abs(wrap_angle(cand.k1 - c.k1)) < std::abs(wrap_angle(best - c.k1)))
            best = cand.k1;
        return best;
      };
      const double dk = wrap_angle(nearest(up) - nearest(down)) / (2 * de);
      r.expect(dk * c.slope_sign > 0, "sign(dk1/dE) disagrees with the slope");
      ++checked;
    }
  }
  r.expect(checked >= 11, "fewer crossings checked than expected");
  r.finish();
}

void criterion8_determinism(const char* cli_path) {
  Reporter r("criterion 8: byte-identical reruns");
  if (!cli_path) {
    r.expect(false, "CLI path not supplied");
    r.finish();
    return;
  }
  const std::vector<std::string> commands = {
      "spectrum --model harper --q 3 --p 7 --energy -1.9 --formats csv,json",
      "invariants --model harper --q 3 --p 7 --energy -1.9 --formats json",
      "invariants --model kanemele --energy 0 --formats json",
      "invariants --model pip --delta 0.2 --mu 2.5 --q 1 --p 3 --energy 0 --formats json",
      "invariants --model did --delta 0.2 --mu 0 --q 0 --p 1 --energy 0 --formats json",
      "edge-bands --model harper --q 3 --p 7 --energy -1.9 --formats csv",
  };
  const fs::path base = fs::temp_directory_path() / "kreintopo_accept";
  fs::remove_all(base);
  auto read_all = [](const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      std::ifstream in(entry.path(), std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      files.push_back({entry.path().filename().string(), ss.str()});
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  for (size_t i = 0; i < commands.size(); ++i) {
    const fs::path dir_a = base / ("run_a_" + std::to_string(i));
    const fs::path dir_b = base / ("run_b_" + std::to_string(i));
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);
    for (const auto& dir : {dir_a, dir_b}) {
      const std::string cmd = std::string(cli_path) + " " + commands[i] +
                              " --out-dir " + dir.string() + " >/dev/null 2>&1";
      const int rc = std::system(cmd.c_str());
      r.expect(rc == 0, "command failed: " + commands[i]);
    }
    const auto files_a = read_all(dir_a), files_b = read_all(dir_b);
    r.expect(!files_a.empty(), "no output produced: " + commands[i]);
    r.expect(files_a == files_b, "outputs differ between runs: " + commands[i]);
  }
  r.finish();
}

}  // namespace

int main(int argc, char** argv) {
  criterion1_harper();
  criterion2_kane_mele();
  criterion3_p_ip();
  criterion4_d_id();
  criterion5_properties();
  criterion6_collisions();
  criterion7_cross_derivative();
  criterion8_determinism(argc > 1 ? argv[1] : nullptr);
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
