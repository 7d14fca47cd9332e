#include <doctest.h>

#include "tetra/fundamental.hpp"
#include "tetra/harness.hpp"
#include "tetra/models.hpp"
#include "tetra/rng.hpp"

using namespace tetra;
using triples::OperatorTriple;

namespace {

CMatrix scalar(double v) { return CMatrix::Constant(1, 1, Complex{v, 0}); }

OperatorTriple scalar_triple(double a, double b, double p) {
  return OperatorTriple::make(scalar(a), scalar(b), scalar(p));
}

}  // namespace

TEST_CASE("toeplitz_truncation layout") {
  CMatrix d = CMatrix::Constant(1, 1, Complex{0.3, 0});
  CMatrix s = CMatrix::Constant(1, 1, Complex{0.2, 0});
  const CMatrix m = models::toeplitz_truncation(d, s, 3);
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 0) = want(1, 1) = want(2, 2) = 0.3;
  want(1, 0) = want(2, 1) = 0.2;
  CHECK(numkit::op_norm(m - want) <= 1e-15);
}

TEST_CASE("boundary_symbol_max matches the analytic scalar value") {
  // |0.3 + 0.2 z| peaks at z = 1.
  const double got = models::boundary_symbol_max(scalar(0.3), scalar(0.2), 256);
  CHECK(std::abs(got - 0.5) <= 1e-9);
  // Complex phases move the argmax off the sample grid; refinement finds it.
  rng::Engine eng(3);
  for (int i = 0; i < 10; ++i) {
    const Complex a1 = 0.5 * rng::unit_disc(eng);
    const Complex a2 = 0.4 * rng::unit_disc(eng);
    const double expect = std::abs(a1) + std::abs(a2);
    const double v = models::boundary_symbol_max(CMatrix::Constant(1, 1, a1),
                                                 CMatrix::Constant(1, 1, a2), 256);
    CHECK(std::abs(v - expect) <= 1e-9);
  }
}

TEST_CASE("build_toeplitz_pure_isometry reference model") {
  const auto m = models::build_toeplitz_pure_isometry(scalar(0.3), scalar(0.2), 3);
  CHECK(m.boundary_max == doctest::Approx(0.5));
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 0) = want(1, 1) = want(2, 2) = 0.3;
  want(1, 0) = want(2, 1) = 0.2;
  CHECK(numkit::op_norm(m.toeplitz_triple.T1 - want) <= 1e-15);
  // T_z truncation is the pure lower shift.
  CMatrix shift = CMatrix::Zero(3, 3);
  shift(1, 0) = shift(2, 1) = 1.0;
  CHECK(numkit::op_norm(m.toeplitz_triple.T3 - shift) <= 1e-15);

  const auto z = models::build_toeplitz_pure_isometry(scalar(0), scalar(0), 2);
  CHECK(numkit::op_norm(z.toeplitz_triple.T1) <= 1e-15);
  CHECK(numkit::op_norm(z.toeplitz_triple.T2) <= 1e-15);

  CMatrix A1 = CMatrix::Zero(2, 2), A2 = CMatrix::Zero(2, 2);
  A1(0, 0) = 0.5;
  A1(1, 1) = 0.1;
  A2(0, 0) = 0.3;
  A2(1, 1) = 0.8;
  CHECK_NOTHROW(models::build_toeplitz_pure_isometry(A1, A2, 3));  // max 0.9
}

TEST_CASE("build_toeplitz_pure_isometry rejects each violated condition") {
  // (1) non-commuting symbols
  CMatrix N = CMatrix::Zero(2, 2);
  N(0, 1) = 0.4;
  CMatrix M = CMatrix::Zero(2, 2);
  M(1, 0) = 0.4;
  try {
    models::build_toeplitz_pure_isometry(N, M, 3);
    FAIL("condition 1 not detected");
  } catch (const SymbolConditionsViolated& e) {
    CHECK(e.condition == 1);
    CHECK(e.magnitude > 0.1);
  }
  // (2) commuting but unequal self-commutators
  try {
    models::build_toeplitz_pure_isometry(N, 0.3 * CMatrix::Identity(2, 2), 3);
    FAIL("condition 2 not detected");
  } catch (const SymbolConditionsViolated& e) {
    CHECK(e.condition == 2);
  }
  // (3) circle norm above 1
  try {
    models::build_toeplitz_pure_isometry(scalar(0.7), scalar(0.7), 3);
    FAIL("condition 3 not detected");
  } catch (const SymbolConditionsViolated& e) {
    CHECK(e.condition == 3);
    CHECK(e.magnitude == doctest::Approx(0.4));
  }
  CHECK_THROWS_AS(models::build_toeplitz_pure_isometry(scalar(0), scalar(0), 1),
                  ValidationError);
}

TEST_CASE("build_dilation block layout for (0.3, 0.4, 0)") {
  const auto t = scalar_triple(0.3, 0.4, 0);
  const auto fp = fundamental::fundamental_operators(t);
  CHECK(std::abs(fp.F1(0, 0) - Complex{0.3, 0}) <= 1e-14);
  CHECK(std::abs(fp.F2(0, 0) - Complex{0.4, 0}) <= 1e-14);
  const auto g = models::build_dilation(t, fp, 3);
  REQUIRE(g.total_dim() == 4);

  CMatrix v3 = CMatrix::Zero(4, 4);
  v3(1, 0) = v3(2, 1) = v3(3, 2) = 1.0;  // first column (0, 1, 0, 0)
  CHECK(numkit::op_norm(g.T3 - v3) <= 1e-14);

  CMatrix v1 = CMatrix::Zero(4, 4);
  v1.diagonal().setConstant(0.3);
  v1(1, 0) = v1(2, 1) = v1(3, 2) = 0.4;
  CHECK(numkit::op_norm(g.T1 - v1) <= 1e-14);

  const CMatrix inner = g.interior_embed(2);
  CHECK(numkit::op_norm((g.T1 - g.T2.adjoint() * g.T3) * inner) <= 1e-12);
}

TEST_CASE("build_dilation collapses on trivial defect") {
  const auto t = harness::gen_e_unitary(3, 5);
  const auto fp = fundamental::fundamental_operators(t);
  const auto g = models::build_dilation(t, fp, 4);
  CHECK(g.levels == 0);
  CHECK(g.total_dim() == 3);
  CHECK(numkit::op_norm(g.T1 - t.A()) <= 1e-15);
}

TEST_CASE("build_dilation interior isometry for (0.4, 0.35, 0.5)") {
  const auto t = scalar_triple(0.4, 0.35, 0.5);
  const auto fp = fundamental::fundamental_operators(t);
  const auto g = models::build_dilation(t, fp, 4);
  const CMatrix inner = g.interior_embed(3);
  const Eigen::Index n = g.total_dim();
  CHECK(numkit::op_norm((g.T3.adjoint() * g.T3 - CMatrix::Identity(n, n)) * inner) <=
        1e-12);
  CHECK(numkit::op_norm((g.T1 - g.T2.adjoint() * g.T3) * inner) <= 1e-12);
  // The warning path stays silent when the commutator conditions hold.
  CHECK(g.edge_note.find("warning") == std::string::npos);
}

TEST_CASE("build_dilation records a warning when the commutator gate fails") {
  // With P = 0 the fundamental operators equal (A, B); a non-normal A gives
  // a macroscopic self-commutator gap.
  CMatrix A = CMatrix::Zero(2, 2), B = CMatrix::Zero(2, 2), P = CMatrix::Zero(2, 2);
  A(0, 1) = 0.3;  // commutes with B (scalar) and P (zero)
  B(0, 0) = 0.2;
  B(1, 1) = 0.2;
  const auto t2 = OperatorTriple::make(A, B, P);
  const auto fp2 = fundamental::fundamental_operators(t2);
  const auto cr = fundamental::commutator_report(fp2);
  CHECK(cr.self_comm_gap > 0.05);
  const auto g = models::build_dilation(t2, fp2, 3);
  CHECK(g.edge_note.find("warning") != std::string::npos);
}

TEST_CASE("verify_dilation: monomial compressions are exact at any depth") {
  const auto t = scalar_triple(0.4, 0.35, 0.5);
  const auto fp = fundamental::fundamental_operators(t);
  const auto g = models::build_dilation(t, fp, 3);
  CMatrix power = CMatrix::Identity(4, 4);
  Complex want{1, 0};
  for (int k = 1; k <= 6; ++k) {  // beyond the truncation depth
    power = g.T3 * power;
    want *= Complex{0.5, 0};
    CHECK(std::abs(power(0, 0) - want) <= 1e-14);
  }
}

TEST_CASE("verify_dilation on scalar and diagonal instances") {
  const auto t = scalar_triple(0.4, 0.35, 0.5);
  const auto fp = fundamental::fundamental_operators(t);
  const auto g = models::build_dilation(t, fp, 8);
  const auto v = models::verify_dilation(t, g, 5, 50, 13);
  CHECK(v.words_checked == 50);
  CHECK(v.max_compression_dev <= 1e-12);
  CHECK(v.e_isometry_defect <= 1e-12);
  CHECK(v.isometry_defect <= 1e-12);
  CHECK(std::max({v.comm_12, v.comm_13, v.comm_23}) <= 1e-12);
  // Scalar pure case: every level is reachable from H.
  CHECK(v.minimality_span_dim == g.total_dim());
}

TEST_CASE("build_coisometry_model on the scalar reference") {
  const auto t = scalar_triple(0.4, 0.35, 0.5);
  const auto m = models::build_coisometry_model(t, 8);
  CHECK(m.residuals.at("invariance") <= 1e-14);
  CHECK(m.residuals.at("restriction_A") <= 1e-14);
  CHECK(m.residuals.at("restriction_P") <= 1e-14);
  CHECK(std::abs(m.model.T3(0, 0) - Complex{0.5, 0}) <= 1e-14);
  CHECK(m.defect_dim_P == 1);
  CHECK(m.defect_dim_T3 == 1);
  CHECK(m.wold.stabilized);
  CHECK(m.wold.unitary_basis.cols() == 0);  // pure input
  CHECK(m.residuals.at("wandering_in_K2") <= 1e-8);
  CHECK(m.residuals.at("identification_orthonormality") <= 1e-10);
  CHECK(m.residuals.at("intertwine_1") <= 1e-10);
  CHECK(m.residuals.at("intertwine_2") <= 1e-10);
  CHECK(m.residuals.at("intertwine_3") <= 1e-10);
  CHECK(m.residuals.at("g_comm_12") <= 1e-12);
  CHECK(m.residuals.at("g_self_comm_gap") <= 1e-12);
  REQUIRE(m.k2_model.has_value());
  CHECK(m.k2_model->boundary_max <= 1.0 + 1e-10);

  // T1 upper-left 2x2 block agrees with the displayed model: A and
  // D_{P*} F_{2*} in the first row.
  CHECK(std::abs(m.model.T1(0, 0) - Complex{0.4, 0}) <= 1e-14);
  CHECK(std::abs(m.model.T1(0, 1) - std::sqrt(0.75) * Complex{0.2, 0}) <= 1e-12);
  CHECK(std::abs(m.model.T1(1, 0)) <= 1e-15);  // H invariant
}

TEST_CASE("build_coisometry_model on an E-unitary collapses to the input") {
  const auto t = harness::gen_e_unitary(2, 9);
  const auto m = models::build_coisometry_model(t, 4);
  CHECK(m.model.total_dim() == 2);
  CHECK(numkit::op_norm(m.model.T1 - t.A()) <= 1e-14);
  CHECK(m.wold.unitary_basis.cols() == 2);
  CHECK(m.wold.shift_basis.cols() == 0);
  CHECK_FALSE(m.k2_model.has_value());
  CHECK(m.defect_dim_T3 == 0);
  CHECK(m.defect_dim_P == 0);
}

TEST_CASE("build_coisometry_model enforces the commutator hypotheses") {
  // With P = 0 the adjoint fundamentals are (A*, B*); a non-normal A that
  // commutes with a scalar B gives a macroscopic self-commutator gap, so
  // the triple is a valid commuting triple that fails the model gate.
  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 1) = 0.3;
  const CMatrix B = 0.2 * CMatrix::Identity(2, 2);
  const auto t = OperatorTriple::make(A, B, CMatrix::Zero(2, 2));
  CHECK_THROWS_AS(models::build_coisometry_model(t, 4), HypothesisViolated);
}

TEST_CASE("toeplitz compression of a diagonal model is an exact contraction") {
  harness::GeneratorSpec spec;
  spec.kind = harness::GenKind::toeplitz_compression;
  spec.seed = 21;
  spec.defect_dim = 2;
  spec.levels = 4;
  auto [t, gt] = harness::gen_e_contraction(spec);
  const auto rho = triples::rho_check(t, 48, 3);
  CHECK(std::min(rho.min_eig_rho1, rho.min_eig_rho2) >= -1e-10);
  CHECK(triples::vn_falsifier(t, 3, 16, 2048, 3).empty());
  // Interior levels satisfy the isometry identity for the shift.
  const auto pur = triples::purity(t.P(), t.tol());
  CHECK(pur.is_pure);
  CHECK(pur.is_cnu);
}

TEST_CASE("coisometry model of a toeplitz compression matches the input") {
  harness::GeneratorSpec spec;
  spec.kind = harness::GenKind::toeplitz_compression;
  spec.seed = 33;
  spec.defect_dim = 1;
  spec.levels = 3;
  auto [t, gt] = harness::gen_e_contraction(spec);
  const auto m = models::build_coisometry_model(t, 5);
  CHECK(m.residuals.at("invariance") <= 1e-14);
  CHECK(m.residuals.at("restriction_A") <= 1e-12);
  CHECK(m.defect_dim_T3 == m.defect_dim_P);
  CHECK(m.wold.unitary_basis.cols() == 0);
  if (m.residuals.count("intertwine_1")) {
    CHECK(m.residuals.at("intertwine_1") <= 1e-8);
    CHECK(m.residuals.at("intertwine_2") <= 1e-8);
    CHECK(m.residuals.at("intertwine_3") <= 1e-8);
  }
}
