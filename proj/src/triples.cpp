#include "tetra/triples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tetra/decomposition.hpp"
#include "tetra/parallel.hpp"
#include "tetra/rng.hpp"

namespace tetra::triples {

using numkit::hermitian_part;
using numkit::min_hermitian_eig;
using numkit::op_norm;

namespace {

void check_shapes(const CMatrix& a, const CMatrix& b, const CMatrix& p) {
  const Eigen::Index d = a.rows();
  if (a.cols() != d || b.rows() != d || b.cols() != d || p.rows() != d ||
      p.cols() != d)
    throw DimensionMismatch("OperatorTriple: A, B, P must be square of equal size");
  if (!numkit::entries_finite(a) || !numkit::entries_finite(b) ||
      !numkit::entries_finite(p))
    throw ValidationError("OperatorTriple: non-finite entries");
}

}  // namespace

OperatorTriple OperatorTriple::make(CMatrix A, CMatrix B, CMatrix P,
                                    ToleranceProfile tol) {
  tol.validate();
  check_shapes(A, B, P);
  const double scale =
      std::max({1.0, op_norm(A), op_norm(B), op_norm(P)});
  const struct {
    const char* name;
    const CMatrix *x, *y;
  } pairs[] = {{"(A,B)", &A, &B}, {"(A,P)", &A, &P}, {"(B,P)", &B, &P}};
  for (const auto& pr : pairs) {
    const double c = op_norm(*pr.x * *pr.y - *pr.y * *pr.x);
    if (c > tol.eq_atol * scale) {
      std::ostringstream os;
      os << "OperatorTriple: pair " << pr.name
         << " fails to commute, commutator norm " << c;
      throw ValidationError(os.str());
    }
  }
  return OperatorTriple(std::move(A), std::move(B), std::move(P), tol, true);
}

OperatorTriple OperatorTriple::make_unchecked(CMatrix A, CMatrix B, CMatrix P,
                                              ToleranceProfile tol) {
  tol.validate();
  check_shapes(A, B, P);
  return OperatorTriple(std::move(A), std::move(B), std::move(P), tol, false);
}

OperatorTriple OperatorTriple::adjoint() const {
  return OperatorTriple(a_.adjoint(), b_.adjoint(), p_.adjoint(), tol_, validated_);
}

std::array<double, 3> OperatorTriple::commutator_norms() const {
  return {op_norm(a_ * b_ - b_ * a_), op_norm(a_ * p_ - p_ * a_),
          op_norm(b_ * p_ - p_ * b_)};
}

bool classify_E_unitary(const OperatorTriple& t) {
  const auto& tol = t.tol();
  const Eigen::Index d = t.dim();
  const CMatrix I = CMatrix::Identity(d, d);
  return op_norm(t.P().adjoint() * t.P() - I) <= tol.eq_atol &&
         op_norm(t.P() * t.P().adjoint() - I) <= tol.eq_atol &&
         op_norm(t.B()) <= 1.0 + tol.contraction_slack &&
         op_norm(t.A() - t.B().adjoint() * t.P()) <= tol.eq_atol;
}

bool classify_E_isometry(const OperatorTriple& t) {
  const auto& tol = t.tol();
  const Eigen::Index d = t.dim();
  const CMatrix I = CMatrix::Identity(d, d);
  return op_norm(t.P().adjoint() * t.P() - I) <= tol.eq_atol &&
         op_norm(t.B()) <= 1.0 + tol.contraction_slack &&
         op_norm(t.A() - t.B().adjoint() * t.P()) <= tol.eq_atol;
}

namespace {

// rho1 with roles swapped gives rho2.
CMatrix rho(const CMatrix& A, const CMatrix& B, const CMatrix& P) {
  const Eigen::Index d = A.rows();
  const CMatrix I = CMatrix::Identity(d, d);
  const CMatrix X = A - B.adjoint() * P;
  return I - P.adjoint() * P + (A.adjoint() * A - B.adjoint() * B) -
         (X + X.adjoint());
}

}  // namespace

RhoCheckResult rho_check(const OperatorTriple& t, int n_samples,
                         std::uint64_t seed) {
  rng::Engine eng(seed);
  std::vector<Complex> zs = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<Complex> ws = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int i = static_cast<int>(zs.size()); i < n_samples; ++i)
    zs.push_back(rng::unit_disc(eng));
  // Conjugation-closed rotation samples: the rotated rho of the adjoint
  // triple at w equals the original's at conj(w), so a symmetric set makes
  // verdicts adjoint-stable.
  for (int i = static_cast<int>(ws.size()); i < std::max(8, n_samples / 4); i += 2) {
    const Complex w = rng::unimodular(eng);
    ws.push_back(w);
    ws.push_back(std::conj(w));
  }

  RhoCheckResult out{std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
  for (const Complex& z : zs) {
    out.min_eig_rho1 =
        std::min(out.min_eig_rho1, min_hermitian_eig(rho(t.A(), z * t.B(), z * t.P())));
    out.min_eig_rho2 =
        std::min(out.min_eig_rho2, min_hermitian_eig(rho(t.B(), z * t.A(), z * t.P())));
  }
  // Rotation family (wA, wB, w^2 P); membership-preserving, so rho stays PSD.
  for (const Complex& w : ws) {
    out.min_eig_rho1 = std::min(
        out.min_eig_rho1,
        min_hermitian_eig(rho(w * t.A(), w * t.B(), w * w * t.P())));
    out.min_eig_rho2 = std::min(
        out.min_eig_rho2,
        min_hermitian_eig(rho(w * t.B(), w * t.A(), w * w * t.P())));
  }
  if (t.dim() == 0) out = {0.0, 0.0};
  return out;
}

std::vector<VnViolation> vn_falsifier(const OperatorTriple& t, int max_degree,
                                      int n_polys, int n_points,
                                      std::uint64_t seed, double rel_margin) {
  if (max_degree > 8)
    throw ValidationError("vn_falsifier: max_degree must be <= 8");
  rng::Engine eng(seed);
  std::vector<Polynomial3> polys;
  polys.reserve(n_polys + 3);
  // The coordinate monomials are bounded by 1 on closed E; they certify any
  // triple whose norms stick out of the tridisc.
  polys.push_back(Polynomial3::monomial(1, 0, 0));
  polys.push_back(Polynomial3::monomial(0, 1, 0));
  polys.push_back(Polynomial3::monomial(0, 0, 1));
  for (int i = 0; i < n_polys; ++i)
    polys.push_back(Polynomial3::random(max_degree, eng));
  const auto samples = geometry::sample_closed_E(
      n_points, seed ^ 0x9e3779b97f4a7c15ull, geometry::SampleMode::boundary_heavy);

  std::vector<std::optional<VnViolation>> slots(polys.size());
  par::parallel_for(static_cast<long>(polys.size()), [&](long i) {
    const double lhs = op_norm(polys[i].eval(t.A(), t.B(), t.P()));
    const double sup = geometry::sup_norm_estimate(polys[i], samples);
    if (lhs > sup * (1.0 + rel_margin))
      slots[i] = VnViolation{polys[i], lhs, sup};
  });
  std::vector<VnViolation> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

PurityReport purity(const CMatrix& P, const ToleranceProfile& tol) {
  if (P.rows() != P.cols()) throw NonSquare("purity: P not square");
  if (op_norm(P) > 1.0 + tol.contraction_slack)
    throw NotAContraction("purity: ‖P‖ = " + std::to_string(op_norm(P)));
  PurityReport r{};
  const Eigen::Index d = P.rows();
  const CMatrix I = CMatrix::Identity(d, d);
  r.spectral_radius = numkit::spectral_radius(P);
  r.is_pure = r.spectral_radius < 1.0 - tol.rank_rtol;
  r.is_unitary = op_norm(P.adjoint() * P - I) <= tol.eq_atol &&
                 op_norm(P * P.adjoint() - I) <= tol.eq_atol;
  r.unitary_dim = decomp::unitary_subspace(P, tol).cols();
  r.is_cnu = r.unitary_dim == 0;
  if (d == 0) {
    // Operator on the trivial space is vacuously unitary.
    r.is_unitary = true;
    r.is_pure = true;
    r.is_cnu = true;
  }
  r.label = r.is_unitary  ? PurityClass::unitary
            : r.is_pure   ? PurityClass::pure
            : r.is_cnu    ? PurityClass::cnu
                          : PurityClass::mixed;
  return r;
}

std::optional<std::vector<geometry::TetraPoint>> joint_eigenvalues(
    const OperatorTriple& t, std::uint64_t seed) {
  const Eigen::Index d = t.dim();
  const auto& tol = t.tol();
  const CMatrix* ops[3] = {&t.A(), &t.B(), &t.P()};
  for (const CMatrix* m : ops) {
    const double scale = std::max(1.0, op_norm(*m));
    if (op_norm(m->adjoint() * *m - *m * m->adjoint()) > tol.eq_atol * scale)
      return std::nullopt;
  }
  if (d == 0) return std::vector<geometry::TetraPoint>{};

  // Commuting normals generate a commutative *-algebra; a generic real
  // combination of the six Hermitian parts separates the joint eigenspaces.
  rng::Engine eng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    CMatrix H = CMatrix::Zero(d, d);
    for (const CMatrix* m : ops) {
      const Complex i{0, 1};
      H += rng::gaussian(eng) * hermitian_part(*m);
      H += rng::gaussian(eng) * hermitian_part(i * *m);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const CMatrix& V = es.eigenvectors();
    bool diagonal = true;
    std::array<CMatrix, 3> rotated;
    for (int k = 0; k < 3 && diagonal; ++k) {
      rotated[k] = V.adjoint() * *ops[k] * V;
      CMatrix off = rotated[k];
      off.diagonal().setZero();
      const double scale = std::max(1.0, op_norm(*ops[k]));
      if (op_norm(off) > 100 * tol.eq_atol * scale) diagonal = false;
    }
    if (!diagonal) continue;
    std::vector<geometry::TetraPoint> pts(d);
    for (Eigen::Index i = 0; i < d; ++i)
      pts[i] = {rotated[0](i, i), rotated[1](i, i), rotated[2](i, i)};
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
      auto key = [](const geometry::TetraPoint& p) {
        return std::array<double, 6>{p.x1.real(), p.x1.imag(), p.x2.real(),
                                     p.x2.imag(), p.x3.real(), p.x3.imag()};
      };
      return key(a) < key(b);
    });
    return pts;
  }
  return std::nullopt;
}

ClassificationReport classify(const OperatorTriple& t, const ClassifyOptions& opt) {
  ClassificationReport r;
  const auto& tol = t.tol();
  r.is_E_unitary = classify_E_unitary(t);
  r.is_E_isometry = classify_E_isometry(t);
  r.norm_A = op_norm(t.A());
  r.norm_B = op_norm(t.B());
  r.norm_P = op_norm(t.P());

  bool contraction_pre_ok = r.norm_P <= 1.0 + tol.contraction_slack;
  if (contraction_pre_ok) {
    r.purity = purity(t.P(), tol).label;
  } else {
    r.purity = PurityClass::mixed;
    r.notes += "P is not a contraction; ";
  }

  r.rho_min_eigs = rho_check(t, opt.rho_samples, opt.seed);
  r.necessary_ok = r.rho_min_eigs.min_eig_rho1 >= -tol.psd_slack &&
                   r.rho_min_eigs.min_eig_rho2 >= -tol.psd_slack;
  r.vn_violations = vn_falsifier(t, opt.vn_max_degree, opt.vn_polys,
                                 opt.vn_points, opt.seed, opt.vn_rel_margin);

  r.joint_eigenvalues = joint_eigenvalues(t, opt.seed);
  bool normal_spectrum_outside = false;
  bool normal_spectrum_boundary = false;
  if (r.joint_eigenvalues) {
    for (const auto& p : *r.joint_eigenvalues) {
      const auto m = geometry::in_closed_E(p, tol);
      if (m.indeterminate)
        normal_spectrum_boundary = true;
      else if (!m.member)
        normal_spectrum_outside = true;
    }
  }

  const double rho_floor =
      std::min(r.rho_min_eigs.min_eig_rho1, r.rho_min_eigs.min_eig_rho2);
  const bool clearly_negative = rho_floor < -geometry::kBoundaryBand * 1e-3;
  if (!r.vn_violations.empty() || clearly_negative || normal_spectrum_outside ||
      !contraction_pre_ok) {
    r.verdict = Verdict::falsified;
  } else if (r.necessary_ok && !normal_spectrum_boundary) {
    r.verdict = Verdict::evidence_consistent;
  } else {
    r.verdict = Verdict::unknown;  // inside the indeterminate band
  }
  if (r.is_E_isometry)
    r.notes += "finite-dimensional isometries are unitary; strict E-isometries "
               "arise only as graded truncations; ";
  return r;
}

}  // namespace tetra::triples
