#include "tetra/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tetra {

void ToleranceProfile::validate() const {
  if (!(eq_atol > 0 && psd_slack > 0 && rank_rtol > 0 && contraction_slack > 0))
    throw ValidationError("ToleranceProfile: all fields must be positive");
}

ToleranceProfile ToleranceProfile::uniform(double t) {
  ToleranceProfile p{t, t, t, t};
  p.validate();
  return p;
}

namespace numkit {

bool entries_finite(const CMatrix& m) {
  return m.array().isFinite().all();
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // sqrt of the top eigenvalue of the Hermitian Gram matrix; cheaper than a
  // full SVD and accurate to roundoff in the norm itself.
  const CMatrix gram = (m.rows() <= m.cols()) ? CMatrix(m * m.adjoint())
                                              : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double spectral_radius(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() != m.cols()) throw NonSquare("spectral_radius: matrix not square");
  Eigen::ComplexEigenSolver<CMatrix> es(m, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

double min_hermitian_eig(const CMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DefectResult defect_operator(const CMatrix& P, const ToleranceProfile& tol) {
  if (P.rows() != P.cols()) throw NonSquare("defect_operator: P not square");
  if (!entries_finite(P)) throw ValidationError("defect_operator: non-finite entries");
  const double nrm = op_norm(P);
  if (nrm > 1.0 + tol.contraction_slack)
    throw NotAContraction("defect_operator: ‖P‖ = " + std::to_string(nrm));

  const Eigen::Index d = P.rows();
  if (d == 0) return {CMatrix(0, 0), CMatrix(0, 0)};

  const CMatrix M = hermitian_part(CMatrix::Identity(d, d) - P.adjoint() * P);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(M);
  Eigen::VectorXd lam = es.eigenvalues();  // ascending
  if (lam(0) < -tol.psd_slack)
    throw NotAContraction("defect_operator: I - P*P has eigenvalue " +
                          std::to_string(lam(0)));

  // Range decision on the eigenvalues of I - P*P, not their square roots:
  // unitary-P roundoff ~1e-16 would otherwise inflate to ~1e-8 under sqrt.
  // Eigenvalues at or below the cutoff are zeroed in D as well, so D
  // vanishes exactly where the defect space does; this moves D^2 away from
  // I - P*P by at most the cutoff.
  const double cutoff = tol.rank_rtol * std::max(1.0, lam.maxCoeff());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (lam(i) > cutoff)
      ++k;
    else
      lam(i) = 0.0;
  }
  const CMatrix& V = es.eigenvectors();
  CMatrix D = V * lam.cwiseSqrt().asDiagonal() * V.adjoint();
  D = hermitian_part(D);

  CMatrix basis(d, k);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (lam(i) > 0.0) basis.col(col++) = V.col(i);
  return {std::move(D), std::move(basis)};
}

CMatrix kernel_intersection(const std::vector<CMatrix>& ms,
                            const ToleranceProfile& tol) {
  if (ms.empty())
    throw DimensionMismatch("kernel_intersection: empty input list");
  const Eigen::Index d = ms.front().cols();
  Eigen::Index rows = 0;
  for (const auto& m : ms) {
    if (m.cols() != d)
      throw DimensionMismatch("kernel_intersection: column counts differ");
    rows += m.rows();
  }
  if (d == 0) return CMatrix(0, 0);

  CMatrix stacked(std::max<Eigen::Index>(rows, 1), d);
  stacked.setZero();
  Eigen::Index at = 0;
  for (const auto& m : ms) {
    if (m.rows() == 0) continue;
    // Blocks below the rank tolerance impose no constraint; normalizing them
    // would amplify roundoff into full-rank garbage.
    const double nrm = op_norm(m);
    stacked.middleRows(at, m.rows()) = (nrm > tol.rank_rtol) ? CMatrix(m / nrm) : m;
    at += m.rows();
  }

  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = tol.rank_rtol * std::max(1.0, smax);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

CMatrix orthonormal_range(const CMatrix& m, const ToleranceProfile& tol) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rtol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

CMatrix orthonormal_complement(const CMatrix& basis, Eigen::Index dim) {
  if (basis.rows() != dim && basis.size() != 0)
    throw DimensionMismatch("orthonormal_complement: basis rows != dim");
  const Eigen::Index k = basis.cols();
  if (k == 0) return CMatrix::Identity(dim, dim);
  // Columns of (I - QQ*) span the complement; orthonormalize by SVD and keep
  // the dim-k dominant directions (their singular values are exactly 1 up to
  // roundoff because the projector is idempotent).
  CMatrix proj = CMatrix::Identity(dim, dim) - basis * basis.adjoint();
  Eigen::JacobiSVD<CMatrix> svd(proj, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(dim - k);
}

}  // namespace numkit
}  // namespace tetra
