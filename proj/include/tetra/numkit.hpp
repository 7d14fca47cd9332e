#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "tetra/errors.hpp"

namespace tetra {

using Complex = std::complex<double>;

/// Dense complex matrix. 0x0 matrices are first-class and represent
/// operators on the trivial space {0}.
using CMatrix = Eigen::MatrixXcd;

/// Numerical tolerances shared by every operation.
///
/// eq_atol           absolute tolerance for operator-norm equality of matrices
/// psd_slack         permitted magnitude of negative eigenvalues before a
///                   Hermitian matrix stops counting as PSD
/// rank_rtol         relative eigenvalue/singular-value cutoff for range and
///                   kernel decisions
/// contraction_slack permitted excess over 1 in contraction norm checks
struct ToleranceProfile {
  double eq_atol = 1e-10;
  double psd_slack = 1e-10;
  double rank_rtol = 1e-10;
  double contraction_slack = 1e-10;

  /// Throws ValidationError unless all fields are positive.
  void validate() const;

  /// Profile with all four fields set to t.
  static ToleranceProfile uniform(double t);
};

namespace numkit {

/// True when every entry is finite (no NaN/Inf).
bool entries_finite(const CMatrix& m);

/// Largest singular value; 0 for empty matrices.
double op_norm(const CMatrix& m);

/// Spectral radius (largest |eigenvalue|); 0 for empty matrices.
double spectral_radius(const CMatrix& m);

/// (m + m*)/2.
CMatrix hermitian_part(const CMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix (input is hermitized first).
/// Returns +inf for empty matrices.
double min_hermitian_eig(const CMatrix& m);

struct DefectResult {
  CMatrix D;      // (I - P*P)^{1/2}, Hermitian PSD, same size as P
  CMatrix basis;  // orthonormal columns spanning Ran D (the defect space)
};

/// Defect operator D_P = (I - P*P)^{1/2} and an orthonormal basis of the
/// defect space D_P = Ran D_P. Eigenvalues of I - P*P in [-psd_slack, 0)
/// are clamped to 0 before the square root; anything more negative raises
/// NotAContraction, as does ‖P‖ > 1 + contraction_slack.
DefectResult defect_operator(const CMatrix& P, const ToleranceProfile& tol);

/// Orthonormal basis (d x k) of the intersection of the kernels of the
/// given matrices, all of which must have d columns. Each block is
/// normalized by its operator norm before stacking so that the rank cutoff
/// is relative to every input. k may be 0; an empty list is rejected.
CMatrix kernel_intersection(const std::vector<CMatrix>& ms,
                            const ToleranceProfile& tol);

/// Orthonormal basis of the column space of m, keeping singular values
/// above rank_rtol * max(1, sigma_max).
CMatrix orthonormal_range(const CMatrix& m, const ToleranceProfile& tol);

/// Orthonormal basis of the orthogonal complement of the (assumed
/// orthonormal) columns of basis inside C^dim.
CMatrix orthonormal_complement(const CMatrix& basis, Eigen::Index dim);

}  // namespace numkit
}  // namespace tetra
