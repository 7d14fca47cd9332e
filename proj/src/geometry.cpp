#include "tetra/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tetra/parallel.hpp"
#include "tetra/rng.hpp"

namespace tetra::geometry {

namespace {

bool finite(const TetraPoint& p) {
  return std::isfinite(p.x1.real()) && std::isfinite(p.x1.imag()) &&
         std::isfinite(p.x2.real()) && std::isfinite(p.x2.imag()) &&
         std::isfinite(p.x3.real()) && std::isfinite(p.x3.imag());
}

Complex defining_fn(const TetraPoint& p, Complex z, Complex w) {
  return Complex{1, 0} - z * p.x1 - w * p.x2 + z * w * p.x3;
}

}  // namespace

Certificate solve_certificate(const TetraPoint& p, const ToleranceProfile& tol) {
  if (!finite(p)) throw ValidationError("solve_certificate: non-finite point");
  const double r3 = std::abs(p.x3);
  if (r3 >= 1.0 - tol.rank_rtol)
    throw BoundaryModulus("solve_certificate: |x3| = " + std::to_string(r3));
  const double det = 1.0 - r3 * r3;
  const Complex c1 = (p.x1 - std::conj(p.x2) * p.x3) / det;
  const Complex c2 = (p.x2 - std::conj(p.x1) * p.x3) / det;
  return {c1, c2, 1.0 - std::abs(c1) - std::abs(c2), r3};
}

Membership in_closed_E(const TetraPoint& p, const ToleranceProfile& tol) {
  Membership out;
  if (!finite(p)) throw ValidationError("in_closed_E: non-finite point");
  const double r3 = std::abs(p.x3);

  if (r3 < 1.0 - tol.rank_rtol) {
    const Certificate cert = solve_certificate(p, tol);
    out.member = cert.slack >= -tol.eq_atol;
    out.indeterminate = std::abs(cert.slack) <= kBoundaryBand ||
                        std::abs(r3 - 1.0) <= kBoundaryBand;
    out.certificate = cert;
    return out;
  }
  if (r3 <= 1.0 + tol.eq_atol) {
    // On the unit shell, closed E coincides with the distinguished boundary.
    // Membership there is an exact equation, so a clean bE point is a
    // confident member; only near-misses of either inequality sit in the
    // indeterminate band.
    const double res = std::abs(p.x1 - std::conj(p.x2) * p.x3);
    const double x2_excess = std::abs(p.x2) - 1.0;
    out.member = res <= tol.eq_atol && x2_excess <= tol.eq_atol;
    out.boundary_residual = res;
    out.indeterminate =
        !out.member && res <= kBoundaryBand && x2_excess <= kBoundaryBand;
    return out;
  }
  out.member = false;
  out.indeterminate = std::abs(r3 - 1.0) <= kBoundaryBand;
  return out;
}

bool in_bE(const TetraPoint& p, const ToleranceProfile& tol) {
  return std::abs(std::abs(p.x3) - 1.0) <= tol.eq_atol &&
         std::abs(p.x2) <= 1.0 + tol.eq_atol &&
         std::abs(p.x1 - std::conj(p.x2) * p.x3) <= tol.eq_atol;
}

namespace {

struct OracleSample {
  double val = std::numeric_limits<double>::infinity();
  Complex z{0, 0}, w{0, 0};
};

// For fixed z the defining function is affine in w: evaluate at the exact
// root clamped to the closed disc (and at w = 0 when the slope vanishes).
OracleSample eval_oracle_z(const TetraPoint& p, Complex z) {
  OracleSample s;
  const Complex a = Complex{1, 0} - z * p.x1;  // value at w = 0
  const Complex b = z * p.x3 - p.x2;           // slope in w
  auto consider = [&](Complex w) {
    const double v = std::abs(defining_fn(p, z, w));
    if (v < s.val) {
      s.val = v;
      s.z = z;
      s.w = w;
    }
  };
  consider(Complex{0, 0});
  if (std::abs(b) > 0) {
    Complex w0 = -a / b;  // exact root of the affine map
    if (std::abs(w0) > 1.0) w0 /= std::abs(w0);
    consider(w0);
  }
  return s;
}

}  // namespace

OracleResult bidisc_zero_oracle(const TetraPoint& p, int grid_n) {
  if (grid_n < 2) throw ValidationError("bidisc_zero_oracle: grid_n must be >= 2");

  const long total = static_cast<long>(grid_n) * grid_n;
  std::vector<OracleSample> best(total);
  par::parallel_for(total, [&](long idx) {
    const int ri = static_cast<int>(idx / grid_n);
    const int ai = static_cast<int>(idx % grid_n);
    // Radii include 1 (outermost), angles cover the full circle.
    const double r = static_cast<double>(ri + 1) / grid_n;
    const double th = 2.0 * std::numbers::pi * ai / grid_n;
    best[idx] = eval_oracle_z(p, r * Complex{std::cos(th), std::sin(th)});
  });

  // A thin zero region in z can slip between grid lines. Refine the most
  // promising, mutually separated candidates with a shrinking local pattern
  // search; any zero within reach of a candidate cell is then driven to
  // roundoff scale.
  std::vector<long> order(best.size());
  for (long i = 0; i < total; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](long a, long b) { return best[a].val < best[b].val; });
  const double spacing = 3.0 / grid_n;
  std::vector<Complex> seeds;
  for (long idx : order) {
    if (static_cast<int>(seeds.size()) >= 8) break;
    const Complex z = best[idx].z;
    bool too_close = false;
    for (const Complex& s : seeds)
      if (std::abs(s - z) < 2 * spacing) too_close = true;
    if (!too_close) seeds.push_back(z);
  }

  OracleSample global;
  for (const OracleSample& s : best)
    if (s.val < global.val) global = s;

  for (const Complex& seed : seeds) {
    Complex center = seed;
    double radius = spacing;
    OracleSample local = eval_oracle_z(p, center);
    for (int it = 0; it < 60 && local.val > 1e-14; ++it) {
      OracleSample step = local;
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          if (dx == 0 && dy == 0) continue;
          Complex z = center + radius * Complex{double(dx), double(dy)};
          if (std::abs(z) > 1.0) z /= std::abs(z);
          const OracleSample cand = eval_oracle_z(p, z);
          if (cand.val < step.val) step = cand;
        }
      }
      if (step.val < local.val) {
        local = step;
        center = step.z;
      } else {
        radius *= 0.5;
      }
    }
    if (local.val < global.val) global = local;
  }
  return {global.val, global.z, global.w};
}

bool in_open_E(const TetraPoint& p, const ToleranceProfile& tol, int grid_n,
               double band) {
  const double r3 = std::abs(p.x3);
  if (r3 >= 1.0 - std::max(band, tol.rank_rtol)) return false;
  const Certificate cert = solve_certificate(p, tol);
  if (cert.slack <= band) return false;
  // The oracle is authoritative on disagreement.
  return bidisc_zero_oracle(p, grid_n).min_modulus > band;
}

TetraPoint rotate(const TetraPoint& p, Complex omega, const ToleranceProfile& tol) {
  if (std::abs(std::abs(omega) - 1.0) > tol.eq_atol)
    throw NotUnimodular("rotate: |omega| = " + std::to_string(std::abs(omega)));
  return {omega * p.x1, omega * p.x2, omega * omega * p.x3};
}

std::vector<TetraPoint> sample_closed_E(int count, std::uint64_t seed,
                                        SampleMode mode) {
  if (count < 1) throw ValidationError("sample_closed_E: count must be >= 1");
  rng::Engine eng(seed);
  std::vector<TetraPoint> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    Complex c1, c2, x3;
    const bool on_boundary =
        mode == SampleMode::boundary_heavy && rng::uniform01(eng) < 0.8;
    if (on_boundary) {
      const double t = rng::uniform01(eng);
      c1 = t * rng::unimodular(eng);
      c2 = (1.0 - t) * rng::unimodular(eng);
      x3 = rng::unimodular(eng);
    } else {
      do {
        c1 = rng::unit_disc(eng);
        c2 = rng::unit_disc(eng);
      } while (std::abs(c1) + std::abs(c2) > 1.0);
      x3 = rng::unit_disc(eng);
    }
    out.push_back({c1 + std::conj(c2) * x3, c2 + std::conj(c1) * x3, x3});
  }
  return out;
}

double sup_norm_estimate(const Polynomial3& f, std::span<const TetraPoint> samples) {
  if (samples.empty()) throw ValidationError("sup_norm_estimate: empty sample");
  std::vector<double> vals(samples.size());
  par::parallel_for(static_cast<long>(samples.size()), [&](long i) {
    const TetraPoint& p = samples[i];
    vals[i] = std::abs(f.eval(p.x1, p.x2, p.x3));
  });
  return *std::max_element(vals.begin(), vals.end());
}

}  // namespace tetra::geometry
