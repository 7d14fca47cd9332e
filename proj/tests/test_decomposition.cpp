#include <doctest.h>

#include "tetra/decomposition.hpp"
#include "tetra/harness.hpp"
#include "tetra/models.hpp"
#include "tetra/rng.hpp"
#include "tetra/triples.hpp"

using namespace tetra;
using triples::OperatorTriple;

namespace {

CMatrix diag2(Complex a, Complex b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("unitary_subspace on reference contractions") {
  rng::Engine eng(3);
  const CMatrix u = rng::haar_unitary(4, eng);
  CHECK(decomp::unitary_subspace(u, {}).cols() == 4);

  const CMatrix p = diag2({1, 0}, {0.5, 0});
  const CMatrix basis = decomp::unitary_subspace(p, {});
  REQUIRE(basis.cols() == 1);
  CHECK(std::abs(basis(0, 0)) == doctest::Approx(1.0));  // span{e1}

  CMatrix nil = CMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(decomp::unitary_subspace(nil, {}).cols() == 0);
  CHECK_THROWS_AS(decomp::unitary_subspace(2.0 * CMatrix::Identity(2, 2), {}),
                  NotAContraction);
}

TEST_CASE("unitary_subspace needs the kernel chain, not just the first kernel") {
  // Truncated shift on 3 levels: e2 survives the n = 0 kernels (D_P e2 = 0,
  // D_{P*} e2 = 0) but P e2 = e3 hits the defect, so the chain removes it.
  CMatrix p = CMatrix::Zero(3, 3);
  p(1, 0) = 1.0;
  p(2, 1) = 1.0;
  const ToleranceProfile tol;
  const CMatrix d0 = numkit::defect_operator(p, tol).D;
  const CMatrix ds = numkit::defect_operator(CMatrix(p.adjoint()), tol).D;
  CHECK(numkit::kernel_intersection({d0, ds}, tol).cols() == 1);  // chain input
  CHECK(decomp::unitary_subspace(p, tol).cols() == 0);            // chain output
}

TEST_CASE("canonical_decompose splits the diagonal reference triple") {
  const auto t = OperatorTriple::make(diag2({0.6, 0}, {0.4, 0}),
                                      diag2({0.6, 0}, {0.35, 0}),
                                      diag2({1, 0}, {0.5, 0}));
  const auto d = decomp::canonical_decompose(t);
  REQUIRE(d.H1_basis.cols() == 1);
  REQUIRE(d.H2_basis.cols() == 1);
  CHECK(std::abs(d.A1(0, 0) - Complex{0.6, 0}) <= 1e-12);
  CHECK(std::abs(d.B1(0, 0) - Complex{0.6, 0}) <= 1e-12);
  CHECK(std::abs(d.P1(0, 0) - Complex{1, 0}) <= 1e-12);
  CHECK(std::abs(d.A2(0, 0) - Complex{0.4, 0}) <= 1e-12);
  CHECK(std::abs(d.B2(0, 0) - Complex{0.35, 0}) <= 1e-12);
  CHECK(std::abs(d.P2(0, 0) - Complex{0.5, 0}) <= 1e-12);
  CHECK(d.unitary_check);
  CHECK(d.cnu_check);
  CHECK(d.block_identity_A <= 1e-12);  // 0.6 = conj(0.6) * 1
  CHECK(d.block_identity_B <= 1e-12);
  for (double v : d.offdiag_12) CHECK(v <= 1e-12);
  for (double v : d.offdiag_21) CHECK(v <= 1e-12);
}

TEST_CASE("canonical_decompose is conjugation invariant") {
  const auto base = OperatorTriple::make(diag2({0.6, 0}, {0.4, 0}),
                                         diag2({0.6, 0}, {0.35, 0}),
                                         diag2({1, 0}, {0.5, 0}));
  rng::Engine eng(7);
  const CMatrix W = rng::haar_unitary(2, eng);
  const auto t = OperatorTriple::make(W * base.A() * W.adjoint(),
                                      W * base.B() * W.adjoint(),
                                      W * base.P() * W.adjoint());
  const auto d = decomp::canonical_decompose(t);
  CHECK(d.H1_basis.cols() == 1);
  CHECK(d.H2_basis.cols() == 1);
  for (double v : d.offdiag_12) CHECK(v <= 1e-8);
  for (double v : d.offdiag_21) CHECK(v <= 1e-8);
  // Restricted parts are unitarily equivalent to the diagonal ones: compare
  // singular values.
  CHECK(numkit::op_norm(d.A2) == doctest::Approx(0.4).epsilon(1e-8));
  CHECK(numkit::op_norm(d.B2) == doctest::Approx(0.35).epsilon(1e-8));
  CHECK(numkit::op_norm(d.P2) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("canonical_decompose on an E-unitary keeps everything unitary") {
  const auto t = harness::gen_e_unitary(3, 5);
  const auto d = decomp::canonical_decompose(t);
  CHECK(d.H1_basis.cols() == 3);
  CHECK(d.H2_basis.cols() == 0);
  CHECK(d.unitary_check);
}

TEST_CASE("canonical_decompose is idempotent on the cnu part") {
  harness::GeneratorSpec spec;
  spec.kind = harness::GenKind::direct_sum;
  spec.seed = 31;
  auto [t, gt] = harness::gen_e_contraction(spec);
  const auto d = decomp::canonical_decompose(t);
  const auto cnu = OperatorTriple::make_unchecked(d.A2, d.B2, d.P2, t.tol());
  CHECK(decomp::canonical_decompose(cnu).H1_basis.cols() == 0);
}

TEST_CASE("wold_split reference splits") {
  // Truncated pure shift: trivial unitary part.
  GradedTriple shift;
  shift.level_dims = {1, 1, 1, 1};
  shift.levels = 4;
  shift.T3 = models::toeplitz_truncation(CMatrix::Zero(1, 1), CMatrix::Identity(1, 1), 4);
  shift.T1 = CMatrix::Zero(4, 4);
  shift.T2 = CMatrix::Zero(4, 4);
  const auto ws = decomp::wold_split(shift);
  CHECK(ws.stabilized);
  CHECK(ws.unitary_basis.cols() == 0);
  CHECK(ws.shift_basis.cols() == 4);

  // Unitary block plus truncated shift: recovers the unitary dimension.
  rng::Engine eng(11);
  const CMatrix u = rng::haar_unitary(2, eng);
  GradedTriple both;
  both.level_dims = {2 + 1, 1, 1, 1};
  both.levels = 3;
  const Eigen::Index n = 6;
  both.T3 = CMatrix::Zero(n, n);
  both.T3.topLeftCorner(2, 2) = u;
  both.T3.bottomRightCorner(4, 4) =
      models::toeplitz_truncation(CMatrix::Zero(1, 1), CMatrix::Identity(1, 1), 4);
  both.T1 = CMatrix::Zero(n, n);
  both.T2 = CMatrix::Zero(n, n);
  const auto wb = decomp::wold_split(both);
  CHECK(wb.stabilized);
  CHECK(wb.unitary_basis.cols() == 2);

  // No grading at all: an E-unitary is all unitary part.
  const auto eu = harness::gen_e_unitary(3, 13);
  GradedTriple flat;
  flat.level_dims = {3};
  flat.levels = 0;
  flat.T1 = eu.A();
  flat.T2 = eu.B();
  flat.T3 = eu.P();
  const auto wf = decomp::wold_split(flat);
  CHECK(wf.unitary_basis.cols() == 3);
}

TEST_CASE("wold_split rejects a non-isometric interior") {
  GradedTriple g;
  g.level_dims = {2, 2};
  g.levels = 1;
  g.T1 = CMatrix::Zero(4, 4);
  g.T2 = CMatrix::Zero(4, 4);
  g.T3 = 0.5 * CMatrix::Identity(4, 4);
  CHECK_THROWS_AS(decomp::wold_split(g), NotIsometricInterior);
}

TEST_CASE("wold_split of a dilation matches the constructed unitary dimension") {
  harness::GeneratorSpec spec;
  spec.kind = harness::GenKind::direct_sum;
  spec.seed = 77;
  spec.dim = 2;
  auto [t, gt] = harness::gen_e_contraction(spec);
  const auto fp = fundamental::fundamental_operators(t);
  const auto g = models::build_dilation(t, fp, 4);
  const auto w = decomp::wold_split(g);
  CHECK(w.stabilized);
  CHECK(w.unitary_basis.cols() == gt.unitary_dim);
  if (w.shift_basis.cols() > 0) {
    const CMatrix s = w.shift_basis.adjoint() * g.T3 * w.shift_basis;
    CHECK(numkit::spectral_radius(s) < 1.0 - 1e-6);
  }
}
