#pragma once

#include "tetra/graded.hpp"
#include "tetra/numkit.hpp"

namespace tetra::triples {
class OperatorTriple;
}

namespace tetra::decomp {

/// Orthonormal basis of the maximal reducing subspace of P on which P is
/// unitary: the stabilized intersection of ker(D_P P^n) and ker(D_{P*} P*^n)
/// over n >= 0. One unchanged step implies global stability, so the loop is
/// exact and bounded by d + 1 iterations. May have 0 columns.
CMatrix unitary_subspace(const CMatrix& P, const ToleranceProfile& tol);

struct DecompositionResult {
  CMatrix H1_basis, H2_basis;       // orthonormal, mutually orthogonal
  CMatrix A1, B1, P1;               // restrictions to H1 (unitary part)
  CMatrix A2, B2, P2;               // restrictions to H2 (cnu part)
  // ‖Q1* X Q2‖ and ‖Q2* X Q1‖ for X = A, B, P; all six vanish exactly when
  // the input is a tetrablock contraction (H1, H2 reduce A and B).
  std::array<double, 3> offdiag_12;
  std::array<double, 3> offdiag_21;
  double block_identity_A;          // ‖A11 - B11* P1‖
  double block_identity_B;          // ‖B11 - A11* P1‖
  bool unitary_check;               // unitary part passes classify_E_unitary
  bool cnu_check;                   // restricted P2 has trivial unitary subspace
  bool rho_warning;                 // input lacked rho-positivity evidence
};

/// Canonical decomposition: splits the space into the maximal unitary
/// subspace of P and its complement, compresses all three operators to both,
/// and reports every residual the theorem predicts to vanish. Works on
/// arbitrary commuting triples; the residuals say how badly reduction fails.
DecompositionResult canonical_decompose(const triples::OperatorTriple& t);

struct WoldResult {
  CMatrix unitary_basis;  // total_dim x k1
  CMatrix shift_basis;    // total_dim x (total_dim - k1)
  bool stabilized = false;
  bool near_degenerate = false;  // singular values within a decade of cutoff
  int iterations = 0;
};

/// Wold-type split of a graded triple whose third operator is isometric on
/// interior levels: iterates orthonormal range bases of V3^n with a rank
/// cutoff until the retained subspace stabilizes and V3 compresses to a
/// unitary on it. Throws NotIsometricInterior when the interior contract
/// fails.
WoldResult wold_split(const GradedTriple& v);

}  // namespace tetra::decomp
