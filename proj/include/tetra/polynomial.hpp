#pragma once

#include <array>
#include <map>
#include <string>

#include "tetra/numkit.hpp"
#include "tetra/rng.hpp"

namespace tetra {

/// Holomorphic polynomial in three complex variables, kept as a sparse
/// coefficient map from exponent triples (i, j, k). Total degree is capped
/// at 16. Scalar evaluation runs nested Horner in x1, x2, x3; matrix
/// evaluation uses memoized monomial products of the commuting arguments.
class Polynomial3 {
 public:
  static constexpr int kMaxTotalDegree = 16;

  using Exponents = std::array<int, 3>;
  using TermMap = std::map<Exponents, Complex>;

  Polynomial3() = default;

  /// Adds c * x1^i x2^j x3^k to the polynomial (coefficients accumulate).
  void add_term(int i, int j, int k, Complex c);

  static Polynomial3 constant(Complex c);
  static Polynomial3 monomial(int i, int j, int k, Complex c = Complex{1, 0});

  /// Dense complex-Gaussian coefficients over all exponents with total
  /// degree <= max_degree.
  static Polynomial3 random(int max_degree, rng::Engine& eng);

  Complex eval(Complex x1, Complex x2, Complex x3) const;

  /// Functional calculus f(A, B, P) for commuting square matrices of equal
  /// dimension. Throws DimensionMismatch on shape disagreement.
  CMatrix eval(const CMatrix& A, const CMatrix& B, const CMatrix& P) const;

  int total_degree() const;
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  /// Compact display form, e.g. "(1+0i) x1^2 x3 + ...". For reports.
  std::string to_string() const;

 private:
  TermMap terms_;
};

}  // namespace tetra
