#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tetra/geometry.hpp"
#include "tetra/numkit.hpp"
#include "tetra/polynomial.hpp"

namespace tetra::triples {

/// Three commuting square matrices on a common finite-dimensional space,
/// carrying the tolerance profile used by every check on them.
///
/// make() validates shapes, finiteness and pairwise commutators (norm at most
/// eq_atol * max(1, ‖A‖, ‖B‖, ‖P‖)); make_unchecked() records the defect but
/// does not throw, for compressions and truncations that commute only
/// approximately or on interior levels.
class OperatorTriple {
 public:
  static OperatorTriple make(CMatrix A, CMatrix B, CMatrix P,
                             ToleranceProfile tol = {});
  static OperatorTriple make_unchecked(CMatrix A, CMatrix B, CMatrix P,
                                       ToleranceProfile tol = {});

  const CMatrix& A() const { return a_; }
  const CMatrix& B() const { return b_; }
  const CMatrix& P() const { return p_; }
  Eigen::Index dim() const { return a_.rows(); }
  const ToleranceProfile& tol() const { return tol_; }
  bool validated() const { return validated_; }

  /// (A*, B*, P*) — commutes iff this does.
  OperatorTriple adjoint() const;

  /// Norms of [A,B], [A,P], [B,P].
  std::array<double, 3> commutator_norms() const;

 private:
  OperatorTriple(CMatrix a, CMatrix b, CMatrix p, ToleranceProfile tol, bool validated)
      : a_(std::move(a)), b_(std::move(b)), p_(std::move(p)), tol_(tol),
        validated_(validated) {}
  CMatrix a_, b_, p_;
  ToleranceProfile tol_;
  bool validated_;
};

/// P unitary, ‖B‖ a contraction and A = B*P, all within tolerance.
bool classify_E_unitary(const OperatorTriple& t);

/// P isometric (P*P = I), ‖B‖ a contraction and A = B*P. On a
/// finite-dimensional space every isometry is unitary, so a strict
/// (non-unitary) instance of this class only appears as a graded truncation.
bool classify_E_isometry(const OperatorTriple& t);

struct RhoCheckResult {
  double min_eig_rho1;
  double min_eig_rho2;
};

/// Minimum eigenvalues of the Hermitian operator functions
///   rho1(A,B,P) = (I - P*P) + (A*A - B*B) - 2 Re(A - B*P)
///   rho2(A,B,P) = (I - P*P) + (B*B - A*A) - 2 Re(B - A*P)
/// over the substitution family (A, zB, zP) for z sampled in the closed disc
/// (always including 0, ±1, ±i) together with the rotation family
/// (wA, wB, w^2 P) for sampled unimodular w. Both minima are >= -psd_slack
/// for any genuine tetrablock contraction.
RhoCheckResult rho_check(const OperatorTriple& t, int n_samples,
                         std::uint64_t seed);

struct VnViolation {
  Polynomial3 poly;
  double lhs_norm;     // ‖f(A,B,P)‖
  double sampled_sup;  // lower bound of ‖f‖ over closed E
};

/// Random-polynomial falsifier of the von Neumann inequality over closed E.
/// A reported violation (‖f(A,B,P)‖ > sampled_sup * (1 + rel_margin)) is a
/// certificate of non-membership in the tetrablock-contraction class; an
/// empty list is evidence, not proof.
std::vector<VnViolation> vn_falsifier(const OperatorTriple& t, int max_degree,
                                      int n_polys, int n_points,
                                      std::uint64_t seed,
                                      double rel_margin = 5e-3);

enum class PurityClass { pure, unitary, cnu, mixed };

struct PurityReport {
  PurityClass label;  // priority: unitary > pure > cnu > mixed
  bool is_pure;       // spectral radius < 1 - rank_rtol
  bool is_unitary;
  bool is_cnu;        // trivial maximal unitary subspace
  double spectral_radius;
  Eigen::Index unitary_dim;
};

/// Contraction class of P. Throws NotAContraction when ‖P‖ exceeds
/// 1 + contraction_slack.
PurityReport purity(const CMatrix& P, const ToleranceProfile& tol);

/// Joint eigenvalue triples of a commuting NORMAL triple, via simultaneous
/// unitary diagonalization of a random Hermitian combination. Returns
/// nullopt when some operator fails the normality test.
std::optional<std::vector<geometry::TetraPoint>> joint_eigenvalues(
    const OperatorTriple& t, std::uint64_t seed = 1);

/// Tetrablock-contraction status is only semi-decidable numerically.
enum class Verdict { falsified, evidence_consistent, unknown };

struct ClassifyOptions {
  int rho_samples = 64;
  int vn_max_degree = 4;
  int vn_polys = 48;
  int vn_points = 4096;
  std::uint64_t seed = 7;
  double vn_rel_margin = 5e-3;
};

struct ClassificationReport {
  bool is_E_unitary = false;
  bool is_E_isometry = false;
  bool necessary_ok = false;  // rho minima >= -psd_slack
  std::vector<VnViolation> vn_violations;
  RhoCheckResult rho_min_eigs{0, 0};
  double norm_A = 0, norm_B = 0, norm_P = 0;
  PurityClass purity = PurityClass::mixed;
  std::optional<std::vector<geometry::TetraPoint>> joint_eigenvalues;
  Verdict verdict = Verdict::unknown;
  std::string notes;
};

/// Full report: classifiers, necessary conditions, falsifier run, purity and
/// (for normal triples) the joint spectrum checked against the distinguished
/// boundary.
ClassificationReport classify(const OperatorTriple& t,
                              const ClassifyOptions& opt = {});

}  // namespace tetra::triples
