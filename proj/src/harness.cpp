#include "tetra/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "tetra/decomposition.hpp"
#include "tetra/fundamental.hpp"
#include "tetra/models.hpp"
#include "tetra/rng.hpp"

namespace tetra::harness {

using geometry::TetraPoint;
using numkit::op_norm;
using triples::OperatorTriple;

triples::OperatorTriple gen_e_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw ValidationError("gen_e_unitary: d must be >= 1");
  rng::Engine eng(seed);
  CMatrix A = CMatrix::Zero(d, d), B = CMatrix::Zero(d, d), P = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const Complex p = rng::unimodular(eng);
    const Complex b = rng::unit_disc(eng);
    P(i, i) = p;
    B(i, i) = b;
    A(i, i) = std::conj(b) * p;
  }
  const CMatrix U = rng::haar_unitary(d, eng);
  return OperatorTriple::make(U * A * U.adjoint(), U * B * U.adjoint(),
                              U * P * U.adjoint());
}

namespace {

// Diagonal commuting-normal symbol pair with |a1_i| + |a2_i| <= budget.
std::pair<CMatrix, CMatrix> diagonal_symbols(int k, rng::Engine& eng,
                                             double budget = 0.85) {
  CMatrix A1 = CMatrix::Zero(k, k), A2 = CMatrix::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    const double r1 = budget * rng::uniform01(eng);
    const double r2 = (budget - r1) * rng::uniform01(eng);
    A1(i, i) = r1 * rng::unimodular(eng);
    A2(i, i) = r2 * rng::unimodular(eng);
  }
  return {A1, A2};
}

std::pair<OperatorTriple, GroundTruth> gen_toeplitz_compression(
    const GeneratorSpec& spec) {
  rng::Engine eng(spec.seed);
  const int k = std::max(1, spec.defect_dim);
  const int N = std::max(2, spec.levels);
  auto [A1, A2] = diagonal_symbols(k, eng);
  const auto model = models::build_toeplitz_pure_isometry(A1, A2, N, spec.tol);
  GroundTruth gt;
  gt.is_e_contraction = true;
  gt.pure = true;
  gt.unitary_dim = 0;
  gt.symbols = {A1, A2};
  gt.description = "toeplitz_compression k=" + std::to_string(k) +
                   " N=" + std::to_string(N);
  return {OperatorTriple::make(model.toeplitz_triple.T1, model.toeplitz_triple.T2,
                               model.toeplitz_triple.T3, spec.tol),
          std::move(gt)};
}

std::pair<OperatorTriple, GroundTruth> gen_direct_sum(const GeneratorSpec& spec) {
  const int du = std::max(1, spec.dim);
  const OperatorTriple u = gen_e_unitary(du, spec.seed * 2 + 1);
  GeneratorSpec inner = spec;
  inner.seed = spec.seed * 2 + 2;
  auto [c, cgt] = gen_toeplitz_compression(inner);
  const Eigen::Index dc = c.dim();
  auto blk = [&](const CMatrix& x, const CMatrix& y) {
    CMatrix m = CMatrix::Zero(du + dc, du + dc);
    m.topLeftCorner(du, du) = x;
    m.bottomRightCorner(dc, dc) = y;
    return m;
  };
  GroundTruth gt;
  gt.is_e_contraction = true;
  gt.unitary_dim = du;
  gt.pure = false;
  gt.symbols = cgt.symbols;
  gt.description = "direct_sum du=" + std::to_string(du) + " + " + cgt.description;
  return {OperatorTriple::make(blk(u.A(), c.A()), blk(u.B(), c.B()),
                               blk(u.P(), c.P()), spec.tol),
          std::move(gt)};
}

std::pair<OperatorTriple, GroundTruth> gen_near_miss(const GeneratorSpec& spec) {
  rng::Engine eng(spec.seed ^ 0xabcdef12345ull);
  GroundTruth gt;
  gt.is_e_contraction = false;
  const int flavor = static_cast<int>(spec.seed % 4);
  if (flavor == 0) {
    // Scalar point outside closed E: certificate sum 1 + excess.
    const double excess = 0.05 + 0.45 * rng::uniform01(eng);
    const double t = rng::uniform01(eng);
    const Complex c1 = (1.0 + excess) * t * rng::unimodular(eng);
    const Complex c2 = (1.0 + excess) * (1.0 - t) * rng::unimodular(eng);
    const Complex x3 = 0.9 * rng::unit_disc(eng);
    const TetraPoint p{c1 + std::conj(c2) * x3, c2 + std::conj(c1) * x3, x3};
    gt.near_miss_kind = "outside_point";
    gt.point = p;
    gt.description = "near_miss outside_point";
    auto scalar = [](Complex v) { return CMatrix::Constant(1, 1, v); };
    return {OperatorTriple::make(scalar(p.x1), scalar(p.x2), scalar(p.x3), spec.tol),
            std::move(gt)};
  }

  const int k = std::max(2, spec.defect_dim);
  const int N = std::max(2, spec.levels);
  CMatrix A1, A2;
  if (flavor == 1) {
    // Non-commuting symbols; conditions (2) and (3) irrelevant, (1) fails.
    do {
      A1 = rng::gaussian_matrix(k, k, eng);
      A2 = rng::gaussian_matrix(k, k, eng);
      A1 *= 0.35 / std::max(1e-12, op_norm(A1));
      A2 *= 0.35 / std::max(1e-12, op_norm(A2));
    } while (op_norm(A1 * A2 - A2 * A1) < 1e-2);
    gt.near_miss_kind = "symbol_condition_1";
  } else if (flavor == 2) {
    // A2 scalar so (1) holds; A1 non-normal so the self-commutator gap is
    // macroscopic; norms small enough that (3) holds.
    A1 = CMatrix::Zero(k, k);
    A1(0, 1) = 0.5;
    A2 = 0.3 * CMatrix::Identity(k, k);
    gt.near_miss_kind = "symbol_condition_2";
  } else {
    auto [B1, B2] = diagonal_symbols(k, eng, 0.5);
    A1 = B1;
    A2 = B2;
    const double excess = 1.1 + 0.4 * rng::uniform01(eng);
    A1(0, 0) = 0.6 * excess * rng::unimodular(eng);
    A2(0, 0) = 0.6 * excess * rng::unimodular(eng);
    gt.near_miss_kind = "symbol_condition_3";
  }
  gt.symbols = {A1, A2};
  gt.description = "near_miss " + gt.near_miss_kind;
  const CMatrix T1 = models::toeplitz_truncation(A1.adjoint(), A2, N);
  const CMatrix T2 = models::toeplitz_truncation(A2.adjoint(), A1, N);
  const CMatrix T3 = models::toeplitz_truncation(CMatrix::Zero(k, k),
                                                 CMatrix::Identity(k, k), N);
  return {OperatorTriple::make_unchecked(T1, T2, T3, spec.tol), std::move(gt)};
}

}  // namespace

std::pair<OperatorTriple, GroundTruth> gen_e_contraction(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GenKind::e_unitary: {
      GroundTruth gt;
      gt.is_e_contraction = true;
      gt.unitary_dim = std::max(1, spec.dim);
      gt.description = "e_unitary d=" + std::to_string(spec.dim);
      return {gen_e_unitary(std::max(1, spec.dim), spec.seed), std::move(gt)};
    }
    case GenKind::toeplitz_compression:
      return gen_toeplitz_compression(spec);
    case GenKind::direct_sum:
      return gen_direct_sum(spec);
    case GenKind::conjugated: {
      GeneratorSpec inner = spec;
      inner.kind = (spec.inner == GenKind::conjugated ||
                    spec.inner == GenKind::near_miss)
                       ? GenKind::direct_sum
                       : spec.inner;
      auto [t, gt] = gen_e_contraction(inner);
      rng::Engine eng(spec.seed ^ 0x5deece66dull);
      const CMatrix W = rng::haar_unitary(t.dim(), eng);
      gt.description = "conjugated " + gt.description;
      return {OperatorTriple::make(W * t.A() * W.adjoint(), W * t.B() * W.adjoint(),
                                   W * t.P() * W.adjoint(), spec.tol),
              std::move(gt)};
    }
    case GenKind::near_miss:
      return gen_near_miss(spec);
  }
  throw ValidationError("gen_e_contraction: unknown kind");
}

// ---------------------------------------------------------------------------
// Theorem-keyed property checks.
// ---------------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  std::function<void(const SuiteConfig&, CheckResult&)> run;
};

void require(CheckResult& r, bool ok, const std::string& what) {
  if (!ok) {
    r.passed = false;
    if (!r.details.empty()) r.details += "; ";
    r.details += what;
  }
}

void track_max(CheckResult& r, const std::string& key, double v) {
  auto [it, inserted] = r.stats.try_emplace(key, v);
  if (!inserted) it->second = std::max(it->second, v);
}

int scaled(const SuiteConfig& cfg, int cap) { return std::min(cfg.seeds, cap); }

// Scalar closed-E triples with |x3| bounded away from 1.
std::vector<TetraPoint> interior_points(int n, std::uint64_t seed) {
  std::vector<TetraPoint> pts;
  auto raw = geometry::sample_closed_E(4 * n + 16, seed);
  for (const auto& p : raw) {
    if (std::abs(p.x3) <= 0.9) pts.push_back(p);
    if (static_cast<int>(pts.size()) == n) break;
  }
  return pts;
}

OperatorTriple scalar_triple(const TetraPoint& p) {
  auto c = [](Complex v) { return CMatrix::Constant(1, 1, v); };
  return OperatorTriple::make(c(p.x1), c(p.x2), c(p.x3));
}

OperatorTriple diagonal_normal_triple(int d, std::uint64_t seed) {
  const auto pts = interior_points(d, seed);
  CMatrix A = CMatrix::Zero(d, d), B = CMatrix::Zero(d, d), P = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    A(i, i) = pts[i].x1;
    B(i, i) = pts[i].x2;
    P(i, i) = pts[i].x3;
  }
  return OperatorTriple::make(A, B, P);
}

// A representative batch of genuine tetrablock contractions.
std::vector<std::pair<OperatorTriple, GroundTruth>> ground_truth_batch(
    const SuiteConfig& cfg, int n) {
  std::vector<std::pair<OperatorTriple, GroundTruth>> out;
  for (int i = 0; i < n; ++i) {
    GeneratorSpec spec;
    spec.seed = cfg.base_seed + i;
    spec.dim = 1 + static_cast<int>(spec.seed % 3);
    spec.defect_dim = 1 + static_cast<int>((spec.seed / 3) % 2);
    spec.levels = 2 + static_cast<int>(spec.seed % std::max(1, cfg.max_levels - 1));
    switch (i % 4) {
      case 0: spec.kind = GenKind::toeplitz_compression; break;
      case 1: spec.kind = GenKind::direct_sum; break;
      case 2: spec.kind = GenKind::conjugated; spec.inner = GenKind::direct_sum; break;
      default: spec.kind = GenKind::e_unitary; break;
    }
    while (spec.dim + spec.defect_dim * spec.levels > cfg.max_dim) {
      if (spec.levels > 2) --spec.levels;
      else if (spec.defect_dim > 1) --spec.defect_dim;
      else break;
    }
    out.push_back(gen_e_contraction(spec));
  }
  return out;
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"geometry.certificate_roundtrip",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed);
         for (int i = 0; i < scaled(cfg, 200); ++i) {
           Complex c1, c2;
           do {
             c1 = rng::unit_disc(eng);
             c2 = rng::unit_disc(eng);
           } while (std::abs(c1) + std::abs(c2) > 1.0);
           const Complex x3 = 0.99 * rng::unit_disc(eng);
           const TetraPoint p{c1 + std::conj(c2) * x3, c2 + std::conj(c1) * x3, x3};
           const auto cert = geometry::solve_certificate(p, {});
           const double dev = std::max(std::abs(cert.c1 - c1), std::abs(cert.c2 - c2));
           track_max(r, "max_dev", dev);
           require(r, dev <= 1e-8, "certificate round trip drifted");
         }
       }},
      {"geometry.oracle_agreement",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed + 17);
         int checked = 0, skipped = 0;
         for (int i = 0; i < scaled(cfg, 100) * 20; ++i) {
           TetraPoint p{{rng::uniform(eng, -1.5, 1.5), rng::uniform(eng, -1.5, 1.5)},
                        {rng::uniform(eng, -1.5, 1.5), rng::uniform(eng, -1.5, 1.5)},
                        {rng::uniform(eng, -1.5, 1.5), rng::uniform(eng, -1.5, 1.5)}};
           const auto member = geometry::in_closed_E(p, {});
           const auto oracle = geometry::bidisc_zero_oracle(p, 64);
           const bool oracle_outside = oracle.min_modulus <= 1e-6;
           const bool oracle_inside = oracle.min_modulus > geometry::kBoundaryBand;
           if (member.indeterminate || (!oracle_outside && !oracle_inside)) {
             ++skipped;
             continue;
           }
           ++checked;
           require(r, member.member == oracle_inside,
                   "membership disagrees with the bidisc oracle");
         }
         r.stats["checked"] = checked;
         r.stats["skipped"] = skipped;
       }},
      {"geometry.rotation_invariance",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed + 29);
         const auto pts = geometry::sample_closed_E(scaled(cfg, 100), cfg.base_seed);
         for (const auto& p : pts) {
           const auto m0 = geometry::in_closed_E(p, {});
           for (int k = 0; k < 16; ++k) {
             const auto q = geometry::rotate(p, rng::unimodular(eng));
             const auto m1 = geometry::in_closed_E(q, {});
             require(r, m0.member == m1.member, "rotation changed membership");
             if (m0.certificate && m1.certificate) {
               const double drift =
                   std::abs(m0.certificate->slack - m1.certificate->slack);
               track_max(r, "max_slack_drift", drift);
               require(r, drift <= 1e-9, "rotation changed certificate slack");
             }
           }
         }
         // Outside points stay outside (the converse direction).
         for (int i = 0; i < scaled(cfg, 50); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::near_miss;
           spec.seed = 4 * (cfg.base_seed + i);  // flavor 0
           auto [t, gt] = gen_e_contraction(spec);
           const auto q = geometry::rotate(*gt.point, rng::unimodular(eng));
           require(r, !geometry::in_closed_E(q, {}).member,
                   "rotation moved an outside point inside");
         }
       }},
      {"geometry.bE_subset",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed + 31);
         for (int i = 0; i < scaled(cfg, 200); ++i) {
           const Complex x2 = rng::unit_disc(eng);
           const Complex x3 = rng::unimodular(eng);
           const TetraPoint p{std::conj(x2) * x3, x2, x3};
           require(r, geometry::in_bE(p, {}), "constructed point missed bE");
           require(r, geometry::in_closed_E(p, {}).member,
                   "bE point failed closed-E membership");
         }
       }},
      {"geometry.supnorm_monotone",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed + 37);
         const auto poly = Polynomial3::random(3, eng);
         const auto samples =
             geometry::sample_closed_E(512, cfg.base_seed,
                                       geometry::SampleMode::boundary_heavy);
         double prev = 0;
         for (std::size_t n = 64; n <= samples.size(); n *= 2) {
           const double est = geometry::sup_norm_estimate(
               poly, std::span(samples.data(), n));
           require(r, est >= prev, "estimate decreased when samples were added");
           prev = est;
         }
       }},
      {"triples.rho_rotation_stability",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed + 41);
         for (auto& [t, gt] : ground_truth_batch(cfg, scaled(cfg, 20))) {
           for (int k = 0; k < 16; ++k) {
             const Complex w = rng::unimodular(eng);
             const auto rot = OperatorTriple::make_unchecked(
                 w * t.A(), w * t.B(), w * w * t.P(), t.tol());
             const auto rho = triples::rho_check(rot, 24, cfg.base_seed + k);
             const double floor = std::min(rho.min_eig_rho1, rho.min_eig_rho2);
             track_max(r, "worst_rho", -floor);
             require(r, floor >= -t.tol().psd_slack,
                     "rho positivity lost under rotation");
           }
         }
       }},
      {"triples.unitary_implies_vn_clean",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 20); ++i) {
           const auto t = gen_e_unitary(1 + i % std::max(1, cfg.max_dim / 2),
                                        cfg.base_seed + i);
           require(r, triples::classify_E_unitary(t), "generator output not E-unitary");
           require(r, triples::classify_E_isometry(t), "E-unitary failed isometry test");
           const auto v = triples::vn_falsifier(t, 3, 12, 2048, cfg.base_seed + i);
           require(r, v.empty(), "vn violation reported for an E-unitary");
         }
       }},
      {"triples.normal_joint_spectrum",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 20); ++i) {
           const auto t = gen_e_unitary(2 + i % 4, cfg.base_seed + i);
           const auto eigs = triples::joint_eigenvalues(t);
           require(r, eigs.has_value(), "joint spectrum unavailable for normal triple");
           if (eigs)
             for (const auto& p : *eigs)
               require(r, geometry::in_bE(p, ToleranceProfile::uniform(1e-8)),
                       "E-unitary joint eigenvalue off the distinguished boundary");
           // Normal triple with interior spectrum must not classify E-unitary.
           const auto diag = diagonal_normal_triple(3, cfg.base_seed + 100 + i);
           require(r, !triples::classify_E_unitary(diag),
                   "interior normal triple classified E-unitary");
         }
       }},
      {"triples.adjoint_closure",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 25); ++i) {
           GeneratorSpec spec;
           spec.seed = cfg.base_seed + i;
           spec.kind = (i % 2) ? GenKind::toeplitz_compression : GenKind::near_miss;
           if (i % 2 == 0) spec.seed *= 4;  // near-miss flavor 0: scalar points
           auto [t, gt] = gen_e_contraction(spec);
           const auto fwd = triples::rho_check(t, 32, cfg.base_seed);
           const auto bwd = triples::rho_check(t.adjoint(), 32, cfg.base_seed);
           const double slack = t.tol().psd_slack;
           const bool fwd_ok = std::min(fwd.min_eig_rho1, fwd.min_eig_rho2) >= -slack;
           const bool bwd_ok = std::min(bwd.min_eig_rho1, bwd.min_eig_rho2) >= -slack;
           require(r, fwd_ok == bwd_ok, "rho verdict differs between triple and adjoint");
         }
       }},
      {"triples.unitary_purity_upgrade",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 20); ++i) {
           const auto t = gen_e_unitary(1 + i % 5, cfg.base_seed + 3 * i);
           const auto pur = triples::purity(t.P(), t.tol());
           require(r, pur.label == triples::PurityClass::unitary,
                   "generated unitary P misclassified");
           require(r, triples::classify_E_unitary(t),
                   "unitary P with contraction evidence failed E-unitary test");
         }
       }},
      {"fundamental.reconstruction",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (auto& [t, gt] : ground_truth_batch(cfg, scaled(cfg, 40))) {
           const auto fp = fundamental::fundamental_operators(t);
           track_max(r, "max_residual", std::max(fp.residual1, fp.residual2));
           require(r, std::max(fp.residual1, fp.residual2) <= 1e-8,
                   "fundamental equation residual too large");
         }
       }},
      {"fundamental.uniqueness",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed + 53);
         for (const auto& p : interior_points(scaled(cfg, 20), cfg.base_seed)) {
           const auto t = scalar_triple(p);
           const auto defect = numkit::defect_operator(t.P(), t.tol());
           const auto fp = fundamental::fundamental_operators(t);
           const Eigen::Index k = fp.defect_dim;
           CMatrix H = rng::gaussian_matrix(k, k, eng);
           H /= op_norm(H);
           const CMatrix perturbed =
               defect.basis * (fp.F1 + H) * defect.basis.adjoint();
           const double res = op_norm(defect.D * perturbed * defect.D -
                                      (t.A() - t.B().adjoint() * t.P()));
           Eigen::SelfAdjointEigenSolver<CMatrix> es(
               numkit::hermitian_part(defect.basis.adjoint() * defect.D * defect.basis),
               Eigen::EigenvaluesOnly);
           const double smin = es.eigenvalues().minCoeff();
           require(r, res > t.tol().eq_atol * smin * smin,
                   "perturbed solution kept a small residual");
         }
       }},
      {"fundamental.scalar_coherence",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (const auto& p : interior_points(scaled(cfg, 50), cfg.base_seed + 7)) {
           const auto t = scalar_triple(p);
           const auto fp = fundamental::fundamental_operators(t);
           const auto cert = geometry::solve_certificate(p, t.tol());
           const double dev = std::max(std::abs(fp.F1(0, 0) - cert.c1),
                                       std::abs(fp.F2(0, 0) - cert.c2));
           track_max(r, "max_dev", dev);
           require(r, dev <= 1e-10, "scalar fundamental pair != certificate");
         }
       }},
      {"fundamental.norm_evidence",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (auto& [t, gt] : ground_truth_batch(cfg, scaled(cfg, 30))) {
           const auto fp = fundamental::fundamental_operators(t);
           track_max(r, "max_norm", std::max(op_norm(fp.F1), op_norm(fp.F2)));
           require(r, op_norm(fp.F1) <= 1.0 + 1e-8 && op_norm(fp.F2) <= 1.0 + 1e-8,
                   "fundamental operator norm above 1");
         }
       }},
      {"decomposition.direct_sum_recovery",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 30); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::conjugated;
           spec.inner = GenKind::direct_sum;
           spec.seed = cfg.base_seed + i;
           spec.dim = 1 + i % 3;
           spec.defect_dim = 1 + i % 2;
           spec.levels = 2 + i % 3;
           auto [t, gt] = gen_e_contraction(spec);
           const auto dec = decomp::canonical_decompose(t);
           require(r, dec.H1_basis.cols() == gt.unitary_dim,
                   "unitary dimension not recovered exactly");
           for (double v : dec.offdiag_12) track_max(r, "max_offdiag", v);
           for (double v : dec.offdiag_21) track_max(r, "max_offdiag", v);
           require(r, r.stats["max_offdiag"] <= 1e-8, "off-diagonal residual too large");
           require(r, dec.unitary_check, "unitary part failed classify_E_unitary");
           require(r, dec.cnu_check, "cnu part kept a unitary subspace");
         }
       }},
      {"decomposition.projector_commutes",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 20); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::conjugated;
           spec.seed = cfg.base_seed + 100 + i;
           auto [t, gt] = gen_e_contraction(spec);
           const auto dec = decomp::canonical_decompose(t);
           const CMatrix Q = dec.H1_basis * dec.H1_basis.adjoint();
           const CMatrix* ops[3] = {&t.A(), &t.B(), &t.P()};
           for (const CMatrix* x : ops) {
             const double c = op_norm(Q * *x - *x * Q);
             track_max(r, "max_proj_comm", c);
             require(r, c <= 1e-8, "H1 projector fails to commute");
           }
         }
       }},
      {"decomposition.block_identities",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 20); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::conjugated;
           spec.seed = cfg.base_seed + 200 + i;
           auto [t, gt] = gen_e_contraction(spec);
           const auto dec = decomp::canonical_decompose(t);
           track_max(r, "max_block_identity",
                     std::max(dec.block_identity_A, dec.block_identity_B));
           require(r, dec.block_identity_A <= 1e-8 && dec.block_identity_B <= 1e-8,
                   "unitary-block identities violated");
         }
       }},
      {"decomposition.idempotence",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 15); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::direct_sum;
           spec.seed = cfg.base_seed + i;
           auto [t, gt] = gen_e_contraction(spec);
           const auto dec = decomp::canonical_decompose(t);
           const auto cnu = OperatorTriple::make_unchecked(dec.A2, dec.B2, dec.P2, t.tol());
           const auto again = decomp::canonical_decompose(cnu);
           require(r, again.H1_basis.cols() == 0,
                   "cnu part decomposed with nontrivial unitary subspace");
         }
       }},
      {"decomposition.wold_split",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 10); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::direct_sum;
           spec.seed = cfg.base_seed + i;
           spec.dim = 1 + i % 2;
           auto [t, gt] = gen_e_contraction(spec);
           const auto fp = fundamental::fundamental_operators(t);
           const auto g = models::build_dilation(t, fp, 4);
           const auto w = decomp::wold_split(g);
           require(r, w.stabilized, "wold iteration failed to stabilize");
           require(r, w.unitary_basis.cols() == gt.unitary_dim,
                   "wold unitary dimension inconsistent with construction");
           if (w.unitary_basis.cols() > 0) {
             auto comp = [&](const CMatrix& m) {
               return CMatrix(w.unitary_basis.adjoint() * m * w.unitary_basis);
             };
             const auto part = OperatorTriple::make_unchecked(
                 comp(g.T1), comp(g.T2), comp(g.T3),
                 ToleranceProfile::uniform(1e-6));
             require(r, triples::classify_E_unitary(part),
                     "wold unitary part failed classify_E_unitary");
           }
           if (w.shift_basis.cols() > 0) {
             const CMatrix s =
                 w.shift_basis.adjoint() * g.T3 * w.shift_basis;
             require(r, numkit::spectral_radius(s) < 1.0 - 1e-6,
                     "shift part kept a unimodular eigenvalue");
           }
         }
       }},
      {"dilation.compression",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (const auto& p : interior_points(scaled(cfg, 10), cfg.base_seed + 11)) {
           const auto t = scalar_triple(p);
           const auto fp = fundamental::fundamental_operators(t);
           const auto g = models::build_dilation(t, fp, cfg.max_levels);
           const auto v = models::verify_dilation(t, g, 5, 40, cfg.base_seed);
           track_max(r, "max_compression_dev", v.max_compression_dev);
           require(r, v.max_compression_dev <= 1e-10, "compression identity failed");
         }
         for (int i = 0; i < scaled(cfg, 10); ++i) {
           const auto t = diagonal_normal_triple(3, cfg.base_seed + 500 + i);
           const auto fp = fundamental::fundamental_operators(t);
           const auto g = models::build_dilation(t, fp, cfg.max_levels);
           const auto v = models::verify_dilation(t, g, 5, 40, cfg.base_seed + i);
           track_max(r, "max_compression_dev", v.max_compression_dev);
           require(r, v.max_compression_dev <= 1e-10, "compression identity failed");
         }
       }},
      {"dilation.interior_isometry",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 15); ++i) {
           const auto t = diagonal_normal_triple(2 + i % 3, cfg.base_seed + 600 + i);
           const auto fp = fundamental::fundamental_operators(t);
           const auto g = models::build_dilation(t, fp, cfg.max_levels);
           const auto v = models::verify_dilation(t, g, 4, 20, cfg.base_seed + i);
           track_max(r, "isometry_defect", v.isometry_defect);
           track_max(r, "e_isometry_defect", v.e_isometry_defect);
           track_max(r, "max_comm", std::max({v.comm_12, v.comm_13, v.comm_23}));
           require(r, v.isometry_defect <= 1e-10, "V3 not isometric on interior");
           require(r, v.e_isometry_defect <= 1e-10, "V1 != V2*V3 on interior");
           require(r, std::max({v.comm_12, v.comm_13, v.comm_23}) <= 1e-10,
                   "dilation operators fail to commute on interior");
         }
       }},
      {"models.toeplitz_exact_contraction",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 15); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::toeplitz_compression;
           spec.seed = cfg.base_seed + i;
           spec.defect_dim = 1 + i % 3;
           spec.levels = 2 + i % std::max(1, cfg.max_levels - 1);
           auto [t, gt] = gen_e_contraction(spec);
           const auto rho = triples::rho_check(t, 32, cfg.base_seed + i);
           const double floor = std::min(rho.min_eig_rho1, rho.min_eig_rho2);
           track_max(r, "worst_rho", -floor);
           require(r, floor >= -t.tol().psd_slack, "Toeplitz compression failed rho");
           const auto v = triples::vn_falsifier(t, 3, 12, 2048, cfg.base_seed + i);
           require(r, v.empty(), "Toeplitz compression triggered vn violation");
           const auto pur = triples::purity(t.P(), t.tol());
           require(r, pur.is_pure && pur.is_cnu, "truncated shift not pure+cnu");
         }
       }},
      {"models.boundary_max_analytic",
       [](const SuiteConfig& cfg, CheckResult& r) {
         rng::Engine eng(cfg.base_seed + 71);
         for (int i = 0; i < scaled(cfg, 25); ++i) {
           auto [A1, A2] = diagonal_symbols(2 + i % 3, eng);
           double expect = 0;
           for (Eigen::Index j = 0; j < A1.rows(); ++j)
             expect = std::max(expect, std::abs(A1(j, j)) + std::abs(A2(j, j)));
           const double got = models::boundary_symbol_max(A1, A2, 256);
           track_max(r, "max_dev", std::abs(got - expect));
           require(r, std::abs(got - expect) <= 1e-6,
                   "circle maximum differs from the analytic value");
         }
       }},
      {"models.coisometry_assembly",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 10); ++i) {
           GeneratorSpec spec;
           spec.kind = (i % 2) ? GenKind::toeplitz_compression : GenKind::direct_sum;
           spec.seed = cfg.base_seed + i;
           spec.levels = 3;
           auto [t, gt] = gen_e_contraction(spec);
           const auto m = models::build_coisometry_model(t, 6);
           require(r, m.residuals.at("invariance") <= 1e-14, "H not invariant");
           const double restr = std::max({m.residuals.at("restriction_A"),
                                          m.residuals.at("restriction_B"),
                                          m.residuals.at("restriction_P")});
           track_max(r, "max_restriction", restr);
           require(r, restr <= 1e-8, "model restriction drifted from the input");
           require(r, m.defect_dim_T3 == m.defect_dim_P,
                   "defect dimensions of T3 and P differ");
           require(r, m.wold.unitary_basis.cols() == gt.unitary_dim,
                   "wold dimensions inconsistent with construction");
           if (m.residuals.count("intertwine_1")) {
             const double tw = std::max({m.residuals.at("intertwine_1"),
                                         m.residuals.at("intertwine_2"),
                                         m.residuals.at("intertwine_3")});
             track_max(r, "max_intertwine", tw);
             require(r, tw <= 1e-8, "Hardy-model identification failed");
           }
         }
       }},
      {"harness.near_miss_falsified",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 40); ++i) {
           GeneratorSpec spec;
           spec.kind = GenKind::near_miss;
           spec.seed = cfg.base_seed + i;
           auto [t, gt] = gen_e_contraction(spec);
           bool caught = false;
           if (gt.point) {
             caught = !geometry::in_closed_E(*gt.point, {}).member;
           } else if (gt.symbols) {
             try {
               models::build_toeplitz_pure_isometry(gt.symbols->first,
                                                    gt.symbols->second, 3);
             } catch (const SymbolConditionsViolated& e) {
               caught = ("symbol_condition_" + std::to_string(e.condition)) ==
                        gt.near_miss_kind;
             }
           }
           if (!caught) {
             // Fall back to the operator checkers.
             const auto rho = triples::rho_check(t, 32, cfg.base_seed);
             caught = std::min(rho.min_eig_rho1, rho.min_eig_rho2) <
                      -t.tol().psd_slack;
           }
           require(r, caught, "near-miss instance slipped through (" +
                                  gt.near_miss_kind + ")");
         }
       }},
      {"harness.generator_determinism",
       [](const SuiteConfig& cfg, CheckResult& r) {
         for (int i = 0; i < scaled(cfg, 10); ++i) {
           GeneratorSpec spec;
           spec.kind = (i % 2) ? GenKind::direct_sum : GenKind::conjugated;
           spec.seed = cfg.base_seed + i;
           auto [t1, g1] = gen_e_contraction(spec);
           auto [t2, g2] = gen_e_contraction(spec);
           require(r, t1.A() == t2.A() && t1.B() == t2.B() && t1.P() == t2.P(),
                   "identical spec produced different instances");
         }
       }},
  };
  return checks;
}

}  // namespace

std::vector<std::string> suite_check_names() {
  std::vector<std::string> names;
  for (const auto& c : registry()) names.push_back(c.name);
  return names;
}

SuiteConfig SuiteConfig::standard() {
  SuiteConfig cfg;
  cfg.checks = suite_check_names();
  return cfg;
}

SuiteReport run_suite(const SuiteConfig& config) {
  SuiteReport report;
  for (const std::string& name : config.checks) {
    CheckResult result;
    result.name = name;
    result.passed = true;
    const auto it =
        std::find_if(registry().begin(), registry().end(),
                     [&](const Check& c) { return c.name == name; });
    const auto start = std::chrono::steady_clock::now();
    if (it == registry().end()) {
      result.passed = false;
      result.details = "unknown check";
    } else {
      try {
        it->run(config, result);
      } catch (const std::exception& e) {
        result.passed = false;
        result.details = std::string("exception: ") + e.what();
      }
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report.all_passed = report.all_passed && result.passed;
    report.checks.push_back(std::move(result));
  }
  return report;
}

}  // namespace tetra::harness
