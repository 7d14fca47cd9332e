#pragma once

#include "tetra/numkit.hpp"
#include "tetra/triples.hpp"

namespace tetra::fundamental {

/// Solutions (F1, F2) on the defect space of P of the fundamental equations
///   A - B*P = D_P F1 D_P,   B - A*P = D_P F2 D_P,
/// expressed in defect-basis coordinates (k x k). Residuals are the ambient
/// operator-norm gaps of the two equations; for genuine tetrablock
/// contractions they vanish to roundoff, and a large residual is the signal
/// that the input is not one.
struct FundamentalPair {
  CMatrix F1, F2;
  double residual1 = 0;
  double residual2 = 0;
  Eigen::Index defect_dim = 0;
};

/// Solves the fundamental equations by restriction to defect coordinates:
/// with E the defect basis and Delta = E* D_P E (invertible on the range),
/// F_i = Delta^{-1} E* RHS_i E Delta^{-1}. Throws DegenerateDefect when the
/// restricted metric has an eigenvalue at or below the rank cutoff, and
/// NotAContraction when ‖P‖ > 1 + contraction_slack.
FundamentalPair fundamental_operators(const triples::OperatorTriple& t);

/// Fundamental operators of (A*, B*, P*), acting on defect coordinates of
/// the adjoint defect space.
FundamentalPair adjoint_fundamentals(const triples::OperatorTriple& t);

struct CommutatorReport {
  double comm_12;        // ‖[F1, F2]‖
  double self_comm_gap;  // ‖[F1*, F1] - [F2*, F2]‖
};

/// Both values near zero is the gate for the explicit dilation and for the
/// co-isometry model assembly.
CommutatorReport commutator_report(const FundamentalPair& fp);

}  // namespace tetra::fundamental
