#include "tetra/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "tetra/triples.hpp"

namespace tetra::decomp {

using numkit::op_norm;

CMatrix unitary_subspace(const CMatrix& P, const ToleranceProfile& tol) {
  if (P.rows() != P.cols()) throw NonSquare("unitary_subspace: P not square");
  const double nrm = op_norm(P);
  if (nrm > 1.0 + tol.contraction_slack)
    throw NotAContraction("unitary_subspace: ‖P‖ = " + std::to_string(nrm));
  const Eigen::Index d = P.rows();
  if (d == 0) return CMatrix(0, 0);

  const CMatrix D = numkit::defect_operator(P, tol).D;
  const CMatrix Ds = numkit::defect_operator(CMatrix(P.adjoint()), tol).D;

  CMatrix Q = numkit::kernel_intersection({D, Ds}, tol);
  CMatrix Pn = CMatrix::Identity(d, d);   // P^n
  CMatrix Psn = CMatrix::Identity(d, d);  // P*^n
  for (Eigen::Index n = 1; n <= d && Q.cols() > 0; ++n) {
    Pn = P * Pn;
    Psn = P.adjoint() * Psn;
    const CMatrix K =
        numkit::kernel_intersection({CMatrix(D * Pn * Q), CMatrix(Ds * Psn * Q)}, tol);
    if (K.cols() == Q.cols()) return Q;  // stabilized: exact, see module notes
    Q = Q * K;
  }
  return Q;
}

DecompositionResult canonical_decompose(const triples::OperatorTriple& t) {
  const auto& tol = t.tol();
  const Eigen::Index d = t.dim();
  const CMatrix Q1 = unitary_subspace(t.P(), tol);
  const CMatrix Q2 = numkit::orthonormal_complement(Q1, d);

  DecompositionResult r;
  r.H1_basis = Q1;
  r.H2_basis = Q2;
  auto compress = [](const CMatrix& basis_l, const CMatrix& x, const CMatrix& basis_r) {
    return CMatrix(basis_l.adjoint() * x * basis_r);
  };
  const CMatrix* ops[3] = {&t.A(), &t.B(), &t.P()};
  for (int i = 0; i < 3; ++i) {
    r.offdiag_12[i] = op_norm(compress(Q1, *ops[i], Q2));
    r.offdiag_21[i] = op_norm(compress(Q2, *ops[i], Q1));
  }
  r.A1 = compress(Q1, t.A(), Q1);
  r.B1 = compress(Q1, t.B(), Q1);
  r.P1 = compress(Q1, t.P(), Q1);
  r.A2 = compress(Q2, t.A(), Q2);
  r.B2 = compress(Q2, t.B(), Q2);
  r.P2 = compress(Q2, t.P(), Q2);

  r.block_identity_A = op_norm(r.A1 - r.B1.adjoint() * r.P1);
  r.block_identity_B = op_norm(r.B1 - r.A1.adjoint() * r.P1);

  const auto unitary_part = triples::OperatorTriple::make_unchecked(r.A1, r.B1, r.P1, tol);
  r.unitary_check = triples::classify_E_unitary(unitary_part);
  r.cnu_check = unitary_subspace(r.P2, tol).cols() == 0;

  const auto rho = triples::rho_check(t, 32, 1);
  r.rho_warning = std::min(rho.min_eig_rho1, rho.min_eig_rho2) < -tol.psd_slack;
  return r;
}

WoldResult wold_split(const GradedTriple& v) {
  const ToleranceProfile& tol = v.tol;
  const Eigen::Index total = v.total_dim();
  if (v.T3.rows() != total || v.T3.cols() != total)
    throw DimensionMismatch("wold_split: T3 does not match level dims");

  WoldResult out;
  if (total == 0) {
    out.unitary_basis = CMatrix(0, 0);
    out.shift_basis = CMatrix(0, 0);
    out.stabilized = true;
    return out;
  }

  const int n_levels = static_cast<int>(v.level_dims.size());
  const CMatrix interior = v.interior_embed(n_levels - 2);
  const CMatrix gram = v.T3.adjoint() * v.T3;
  const CMatrix defect = gram * interior - interior;
  const double iso_defect = op_norm(defect);
  if (iso_defect > std::max(1e-8, 10 * tol.eq_atol))
    throw NotIsometricInterior("wold_split: interior isometry defect " +
                               std::to_string(iso_defect));

  // Track the cumulative power V3^n: unitary directions keep unit singular
  // values exactly (their orbits never touch the edge); shift directions
  // fall off the truncation edge or decay geometrically, and the cumulative
  // product carries the decay (a per-step range basis would renormalize it
  // away). The split is accepted once every singular value sits either at 1
  // or below the murky band; anything lingering inside the band at the
  // iteration cap is flagged.
  const double cutoff = 1e-7;
  const double band_lo = 1e-9;
  const double band_hi = 1.0 - 1e-6;
  const int max_iter = std::max<int>(512, 4 * static_cast<int>(total) + 16);
  CMatrix power = CMatrix::Identity(total, total);
  CMatrix basis(total, 0);
  bool murky = true;
  Eigen::Index prev_dim = total;
  for (out.iterations = 1; out.iterations <= max_iter; ++out.iterations) {
    power = v.T3 * power;
    Eigen::JacobiSVD<CMatrix> svd(power, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index keep = 0;
    murky = false;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cutoff) ++keep;
      if (sv(i) >= band_lo && sv(i) <= band_hi) murky = true;
    }
    basis = svd.matrixU().leftCols(keep);
    const bool same_dim = keep == prev_dim;
    prev_dim = keep;
    if ((same_dim && !murky) || keep == 0) {
      out.stabilized = true;
      break;
    }
  }
  out.near_degenerate = !out.stabilized && murky;
  out.unitary_basis = basis;
  out.shift_basis = numkit::orthonormal_complement(basis, total);
  return out;
}

}  // namespace tetra::decomp
