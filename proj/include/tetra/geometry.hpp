#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tetra/numkit.hpp"
#include "tetra/polynomial.hpp"

namespace tetra::geometry {

/// A point (x1, x2, x3) in C^3.
struct TetraPoint {
  Complex x1, x2, x3;
};

/// Witness pair for closed-tetrablock membership: x1 = c1 + conj(c2) x3 and
/// x2 = c2 + conj(c1) x3 with |c1| + |c2| <= 1.
struct Certificate {
  Complex c1, c2;
  double slack;       // 1 - |c1| - |c2|
  double x3_modulus;  // |x3| of the point the certificate belongs to
};

/// Width of the band around the decision surface inside which boolean
/// membership answers are flagged indeterminate.
inline constexpr double kBoundaryBand = 1e-3;

struct Membership {
  bool member = false;
  /// True when the verdict sits within kBoundaryBand of the decision
  /// surface (certificate slack, |x3| shell, or bE equation residual).
  bool indeterminate = false;
  /// Present on the |x3| < 1 branch; absent when the bE shell rule decided.
  std::optional<Certificate> certificate;
  /// Residual |x1 - conj(x2) x3| when the shell rule was used.
  std::optional<double> boundary_residual;
};

/// Unique (c1, c2) solving the two certificate equations; requires
/// |x3| < 1 - rank_rtol (determinant 1 - |x3|^2 of the 2x2 system).
/// Throws BoundaryModulus otherwise. No membership judgement implied.
Certificate solve_certificate(const TetraPoint& p, const ToleranceProfile& tol);

/// Closed tetrablock membership. For |x3| < 1: certificate test
/// |c1| + |c2| <= 1 + eq_atol. On the unit shell |x3| ~ 1: the distinguished
/// boundary equations (which describe closed-E there). Above the shell: false.
Membership in_closed_E(const TetraPoint& p, const ToleranceProfile& tol);

/// Distinguished boundary bE: ||x3| - 1| <= eq_atol, |x2| <= 1 + eq_atol and
/// |x1 - conj(x2) x3| <= eq_atol.
bool in_bE(const TetraPoint& p, const ToleranceProfile& tol);

struct OracleResult {
  double min_modulus;  // min over the grid of |1 - z x1 - w x2 + z w x3|
  Complex argmin_z, argmin_w;
};

/// Brute-force oracle on the defining function of the tetrablock: grids z
/// over the closed disc (grid_n radii x grid_n angles, outermost radius 1),
/// solves the affine function exactly in w, clamps the root to the closed
/// disc, and reports the minimum modulus. An (exact) zero means the point
/// lies outside E. Independent of the certificate path by construction.
OracleResult bidisc_zero_oracle(const TetraPoint& p, int grid_n);

/// Conservative open-membership test: |x3| clear of the shell, certificate
/// slack above the band and oracle minimum above the band. Conjunction per
/// the module design; never used as a post-condition.
bool in_open_E(const TetraPoint& p, const ToleranceProfile& tol,
               int grid_n = 64, double band = kBoundaryBand);

/// (omega x1, omega x2, omega^2 x3). Throws NotUnimodular when
/// ||omega| - 1| > eq_atol.
TetraPoint rotate(const TetraPoint& p, Complex omega,
                  const ToleranceProfile& tol = {});

enum class SampleMode {
  interior,        // (c1,c2) uniform over |c1|+|c2| <= 1, x3 uniform disc
  boundary_heavy,  // mass concentrated on |c1|+|c2| = 1 and |x3| = 1
};

/// Deterministic sample of closed-E points via the certificate
/// parametrization; every output passes in_closed_E.
std::vector<TetraPoint> sample_closed_E(int count, std::uint64_t seed,
                                        SampleMode mode = SampleMode::interior);

/// max over samples of |f(x1, x2, x3)|: a certified lower bound of the sup
/// norm of f over closed E. Throws ValidationError on an empty sample.
double sup_norm_estimate(const Polynomial3& f, std::span<const TetraPoint> samples);

}  // namespace tetra::geometry
