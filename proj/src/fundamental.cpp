#include "tetra/fundamental.hpp"

namespace tetra::fundamental {

using numkit::op_norm;

FundamentalPair fundamental_operators(const triples::OperatorTriple& t) {
  const auto& tol = t.tol();
  const auto defect = numkit::defect_operator(t.P(), tol);
  const CMatrix& D = defect.D;
  const CMatrix& E = defect.basis;
  const Eigen::Index k = E.cols();

  const CMatrix rhs1 = t.A() - t.B().adjoint() * t.P();
  const CMatrix rhs2 = t.B() - t.A().adjoint() * t.P();

  FundamentalPair fp;
  fp.defect_dim = k;
  if (k == 0) {
    fp.F1 = CMatrix(0, 0);
    fp.F2 = CMatrix(0, 0);
    fp.residual1 = op_norm(rhs1);
    fp.residual2 = op_norm(rhs2);
    return fp;
  }

  // Delta = E* D E is Hermitian positive on the range; invert by
  // eigendecomposition with the rank cutoff as a degeneracy guard.
  const CMatrix delta = numkit::hermitian_part(E.adjoint() * D * E);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(delta);
  const Eigen::VectorXd mu = es.eigenvalues();
  const double cutoff = tol.rank_rtol * std::max(1.0, mu.maxCoeff());
  if (mu.minCoeff() <= cutoff)
    throw DegenerateDefect("fundamental_operators: restricted defect metric has "
                           "eigenvalue " + std::to_string(mu.minCoeff()));
  const CMatrix delta_inv =
      es.eigenvectors() * mu.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();

  fp.F1 = delta_inv * (E.adjoint() * rhs1 * E) * delta_inv;
  fp.F2 = delta_inv * (E.adjoint() * rhs2 * E) * delta_inv;
  fp.residual1 = op_norm(D * (E * fp.F1 * E.adjoint()) * D - rhs1);
  fp.residual2 = op_norm(D * (E * fp.F2 * E.adjoint()) * D - rhs2);
  return fp;
}

FundamentalPair adjoint_fundamentals(const triples::OperatorTriple& t) {
  return fundamental_operators(t.adjoint());
}

CommutatorReport commutator_report(const FundamentalPair& fp) {
  const CMatrix& F1 = fp.F1;
  const CMatrix& F2 = fp.F2;
  const CMatrix self1 = F1.adjoint() * F1 - F1 * F1.adjoint();
  const CMatrix self2 = F2.adjoint() * F2 - F2 * F2.adjoint();
  return {op_norm(F1 * F2 - F2 * F1), op_norm(self1 - self2)};
}

}  // namespace tetra::fundamental
