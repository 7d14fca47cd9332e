#pragma once

#include <map>
#include <optional>
#include <string>

#include "tetra/decomposition.hpp"
#include "tetra/fundamental.hpp"
#include "tetra/graded.hpp"
#include "tetra/triples.hpp"

namespace tetra::models {

/// Block lower bidiagonal Toeplitz truncation on N fiber copies: diagonal
/// blocks diag, subdiagonal blocks sub (k x k each).
CMatrix toeplitz_truncation(const CMatrix& diag, const CMatrix& sub, int N);

/// max over the unit circle of ‖A1* + A2 z‖: coarse scan with the given
/// sample count, then golden-section refinement inside the best bracket.
/// The supremum over the closed disc is attained on the circle.
double boundary_symbol_max(const CMatrix& A1, const CMatrix& A2, int samples = 256);

/// Explicit tetrablock-isometric dilation truncated to N defect levels:
///   V1 = diag(A, F1, F1, ...) + subdiag(F2* D_P, F2*, ...)
///   V2 = diag(B, F2, F2, ...) + subdiag(F1* D_P, F1*, ...)
///   V3 = diag(P, 0,  0,  ...) + subdiag(D_P, I, I, ...)
/// on H + D_P^N in defect coordinates. All three are block lower triangular,
/// so compressions to H of arbitrary words are exact for every N. When the
/// defect space is trivial the grading collapses to the triple itself.
/// A commutator report above eq_atol on fp is recorded as a warning in
/// edge_note, not an error.
GradedTriple build_dilation(const triples::OperatorTriple& t,
                            const fundamental::FundamentalPair& fp, int N);

struct DilationVerification {
  double max_compression_dev = 0;  // over sampled words
  int words_checked = 0;
  double comm_12 = 0, comm_13 = 0, comm_23 = 0;  // interior-restricted
  double e_isometry_defect = 0;  // ‖(V1 - V2*V3) restricted below the edge‖
  double isometry_defect = 0;    // ‖(V3*V3 - I) restricted below the edge‖
  Eigen::Index minimality_span_dim = 0;
};

/// Checks the dilation identity P_H W(V1,V2,V3)|_H = W(A,B,P) on random
/// words, the interior tetrablock-isometry identities, interior commutators
/// and the dimension of the span of {W(V) h}.
DilationVerification verify_dilation(const triples::OperatorTriple& t,
                                     const GradedTriple& g, int max_degree,
                                     int n_words, std::uint64_t seed);

/// Truncated vector Hardy-space model (T_phi, T_psi, T_z) with
/// phi(z) = A1* + A2 z and psi(z) = A2* + A1 z on N fiber levels.
struct TruncatedHardyModel {
  CMatrix symbol_const;  // A1*
  CMatrix symbol_lin;    // A2
  int levels = 0;
  GradedTriple toeplitz_triple;
  double boundary_max = 0;  // computed circle max of ‖A1* + A2 z‖
};

/// Validates the three symbol conditions — [A1, A2] = 0,
/// [A1*, A1] = [A2*, A2], and circle max of ‖A1* + A2 z‖ at most 1 — then
/// builds the truncations. Throws SymbolConditionsViolated naming the failed
/// condition and by how much. Requires square equal-size symbols and N >= 2.
TruncatedHardyModel build_toeplitz_pure_isometry(const CMatrix& A1,
                                                 const CMatrix& A2, int N,
                                                 const ToleranceProfile& tol = {},
                                                 int boundary_samples = 256);

struct ModelAssembly {
  GradedTriple model;  // (T1, T2, T3), block upper triangular
  CMatrix embedding;   // inclusion of H at level 0
  decomp::WoldResult wold;
  CMatrix G1, G2;      // fundamental operators of (T1, T2, T3), recomputed
  std::optional<TruncatedHardyModel> k2_model;
  fundamental::CommutatorReport adjoint_commutators{0, 0};
  Eigen::Index defect_dim_T3 = 0;
  Eigen::Index defect_dim_P = 0;
  /// Residual table: restriction_A/B/P, invariance, wandering_in_K2,
  /// identification_orthonormality, intertwine_1/2/3, g_comm_12,
  /// g_self_comm_gap.
  std::map<std::string, double> residuals;
};

/// Co-isometry model: adjoint of the dilation of (A*, B*, P*), i.e. exactly
/// the displayed block matrices of the model theorem on H + D_{P*}^N.
/// Verifies H-invariance and the restrictions, Wold-splits the adjoint
/// triple, recomputes the fundamental operators (G1, G2) of the model and
/// identifies the shift part with the truncated Hardy model through the
/// wandering basis (the defect basis of T3), reporting intertwining
/// residuals on interior levels. Throws HypothesisViolated when the adjoint
/// fundamental operators fail the commutator conditions.
ModelAssembly build_coisometry_model(const triples::OperatorTriple& t, int N);

}  // namespace tetra::models
