#include <doctest.h>

#include "tetra/numkit.hpp"
#include "tetra/rng.hpp"

using namespace tetra;
using numkit::op_norm;

namespace {

CMatrix random_contraction(Eigen::Index d, rng::Engine& eng, double radius = 0.95) {
  CMatrix g = rng::gaussian_matrix(d, d, eng);
  return g * (radius / std::max(1e-12, op_norm(g)));
}

}  // namespace

TEST_CASE("op_norm on known matrices") {
  CHECK(op_norm(CMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.5;
  CHECK(op_norm(d) == doctest::Approx(0.5));
  CMatrix shift = CMatrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  CHECK(op_norm(shift) == doctest::Approx(1.0));
  CHECK(op_norm(CMatrix(0, 0)) == 0.0);
  CHECK(op_norm(CMatrix::Zero(3, 2)) == 0.0);
}

TEST_CASE("op_norm is adjoint-invariant") {
  rng::Engine eng(11);
  for (int i = 0; i < 20; ++i) {
    const CMatrix m = rng::gaussian_matrix(2 + i % 5, 3 + i % 4, eng);
    CHECK(op_norm(m) == doctest::Approx(op_norm(m.adjoint())).epsilon(1e-10));
  }
}

TEST_CASE("defect_operator identity case P = 0") {
  const ToleranceProfile tol;
  const auto r = numkit::defect_operator(CMatrix::Zero(4, 4), tol);
  CHECK(op_norm(r.D - CMatrix::Identity(4, 4)) <= tol.eq_atol);
  REQUIRE(r.basis.cols() == 4);
  CHECK(op_norm(r.basis * r.basis.adjoint() - CMatrix::Identity(4, 4)) <= tol.eq_atol);
}

TEST_CASE("defect_operator vanishes for unitaries") {
  rng::Engine eng(3);
  const CMatrix u = rng::haar_unitary(5, eng);
  const auto r = numkit::defect_operator(u, {});
  CHECK(op_norm(r.D) <= 1e-7);
  CHECK(r.basis.cols() == 0);
}

TEST_CASE("defect_operator scalar arithmetic") {
  // 1 - 0.25 = 0.75 under the square root.
  const auto r = numkit::defect_operator(CMatrix::Constant(1, 1, 0.5), {});
  CHECK(std::abs(r.D(0, 0) - std::sqrt(0.75)) <= 1e-14);
  CHECK(std::abs(r.D(0, 0).real() - 0.8660254) <= 1e-7);
  CHECK(r.basis.cols() == 1);
}

TEST_CASE("defect_operator rejects non-contractions and non-square input") {
  CHECK_THROWS_AS(numkit::defect_operator(1.5 * CMatrix::Identity(2, 2), {}),
                  NotAContraction);
  CHECK_THROWS_AS(numkit::defect_operator(CMatrix::Zero(2, 3), {}), NonSquare);
}

TEST_CASE("defect_operator properties on random contractions") {
  rng::Engine eng(17);
  const ToleranceProfile tol;
  for (int i = 0; i < 25; ++i) {
    const Eigen::Index d = 1 + i % 7;
    const CMatrix p = random_contraction(d, eng);
    const auto r = numkit::defect_operator(p, tol);
    const CMatrix want = CMatrix::Identity(d, d) - p.adjoint() * p;
    CHECK(op_norm(r.D * r.D - want) <= 10 * tol.eq_atol);
    CHECK(op_norm(r.basis.adjoint() * r.basis -
                  CMatrix::Identity(r.basis.cols(), r.basis.cols())) <= tol.eq_atol);
    CHECK(numkit::min_hermitian_eig(r.D) >= -tol.psd_slack);
  }
}

TEST_CASE("kernel_intersection known kernels") {
  const ToleranceProfile tol;
  CHECK(numkit::kernel_intersection({CMatrix::Identity(3, 3)}, tol).cols() == 0);
  const CMatrix full = numkit::kernel_intersection({CMatrix::Zero(2, 3)}, tol);
  CHECK(full.cols() == 3);
  CHECK(op_norm(full * full.adjoint() - CMatrix::Identity(3, 3)) <= tol.eq_atol);

  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  const CMatrix k = numkit::kernel_intersection({m, CMatrix::Zero(2, 2)}, tol);
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(k(1, 0)) == doctest::Approx(1.0));  // span{e2} up to phase
}

TEST_CASE("kernel_intersection columns really lie in every kernel") {
  rng::Engine eng(23);
  const ToleranceProfile tol;
  for (int i = 0; i < 20; ++i) {
    // Two random matrices with a common engineered kernel direction.
    const Eigen::Index d = 4;
    CMatrix m1 = rng::gaussian_matrix(3, d, eng);
    CMatrix m2 = rng::gaussian_matrix(2, d, eng);
    m1.col(2).setZero();
    m2.col(2).setZero();
    const CMatrix k = numkit::kernel_intersection({m1, m2}, tol);
    REQUIRE(k.cols() >= 1);
    CHECK(op_norm(m1 * k) <= 10 * tol.rank_rtol * op_norm(m1));
    CHECK(op_norm(m2 * k) <= 10 * tol.rank_rtol * op_norm(m2));
  }
}

TEST_CASE("kernel_intersection rejects mismatched dimensions") {
  CHECK_THROWS_AS(
      numkit::kernel_intersection({CMatrix::Zero(2, 2), CMatrix::Zero(2, 3)}, {}),
      DimensionMismatch);
  CHECK_THROWS_AS(numkit::kernel_intersection({}, {}), DimensionMismatch);
}

TEST_CASE("orthonormal_complement pads a basis") {
  rng::Engine eng(29);
  const CMatrix u = rng::haar_unitary(5, eng).leftCols(2);
  const CMatrix c = numkit::orthonormal_complement(u, 5);
  REQUIRE(c.cols() == 3);
  CHECK(op_norm(u.adjoint() * c) <= 1e-12);
  CHECK(op_norm(c.adjoint() * c - CMatrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("zero-dimensional matrices are first-class") {
  const auto r = numkit::defect_operator(CMatrix(0, 0), {});
  CHECK(r.D.rows() == 0);
  CHECK(r.basis.cols() == 0);
  CHECK(numkit::spectral_radius(CMatrix(0, 0)) == 0.0);
}

TEST_CASE("tolerance profile validation") {
  CHECK_THROWS_AS(ToleranceProfile::uniform(-1.0), ValidationError);
  ToleranceProfile bad;
  bad.rank_rtol = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
