#include "tetra/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace tetra {

void Polynomial3::add_term(int i, int j, int k, Complex c) {
  if (i < 0 || j < 0 || k < 0)
    throw ValidationError("Polynomial3: negative exponent");
  if (i + j + k > kMaxTotalDegree)
    throw ValidationError("Polynomial3: total degree exceeds " +
                          std::to_string(kMaxTotalDegree));
  auto [it, inserted] = terms_.try_emplace({i, j, k}, c);
  if (!inserted) it->second += c;
  if (it->second == Complex{0, 0}) terms_.erase(it);
}

Polynomial3 Polynomial3::constant(Complex c) {
  Polynomial3 p;
  p.add_term(0, 0, 0, c);
  return p;
}

Polynomial3 Polynomial3::monomial(int i, int j, int k, Complex c) {
  Polynomial3 p;
  p.add_term(i, j, k, c);
  return p;
}

Polynomial3 Polynomial3::random(int max_degree, rng::Engine& eng) {
  Polynomial3 p;
  for (int i = 0; i <= max_degree; ++i)
    for (int j = 0; i + j <= max_degree; ++j)
      for (int k = 0; i + j + k <= max_degree; ++k)
        p.add_term(i, j, k, rng::complex_gaussian(eng));
  return p;
}

int Polynomial3::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[0] + e[1] + e[2]);
  return deg;
}

namespace {

// Nested dense coefficient table c[i][j][k] built once per evaluation.
using Nested = std::vector<std::vector<std::vector<Complex>>>;

Nested nest(const Polynomial3::TermMap& terms) {
  int di = 0, dj = 0, dk = 0;
  for (const auto& [e, c] : terms) {
    di = std::max(di, e[0]);
    dj = std::max(dj, e[1]);
    dk = std::max(dk, e[2]);
  }
  Nested t(di + 1, std::vector<std::vector<Complex>>(
                       dj + 1, std::vector<Complex>(dk + 1, Complex{0, 0})));
  for (const auto& [e, c] : terms) t[e[0]][e[1]][e[2]] = c;
  return t;
}

}  // namespace

Complex Polynomial3::eval(Complex x1, Complex x2, Complex x3) const {
  if (terms_.empty()) return {0, 0};
  const Nested t = nest(terms_);
  Complex acc1{0, 0};
  for (auto i = t.size(); i-- > 0;) {
    Complex acc2{0, 0};
    for (auto j = t[i].size(); j-- > 0;) {
      Complex acc3{0, 0};
      for (auto k = t[i][j].size(); k-- > 0;) acc3 = acc3 * x3 + t[i][j][k];
      acc2 = acc2 * x2 + acc3;
    }
    acc1 = acc1 * x1 + acc2;
  }
  return acc1;
}

CMatrix Polynomial3::eval(const CMatrix& A, const CMatrix& B,
                          const CMatrix& P) const {
  const Eigen::Index d = A.rows();
  if (A.cols() != d || B.rows() != d || B.cols() != d || P.rows() != d ||
      P.cols() != d)
    throw DimensionMismatch("Polynomial3::eval: matrices must be square of equal size");
  CMatrix out = CMatrix::Zero(d, d);
  if (terms_.empty() || d == 0) return out;

  int di = 0, dj = 0, dk = 0;
  for (const auto& [e, c] : terms_) {
    di = std::max(di, e[0]);
    dj = std::max(dj, e[1]);
    dk = std::max(dk, e[2]);
  }
  auto powers = [d](const CMatrix& m, int maxdeg) {
    std::vector<CMatrix> pw;
    pw.reserve(maxdeg + 1);
    pw.push_back(CMatrix::Identity(d, d));
    for (int n = 1; n <= maxdeg; ++n) pw.push_back(pw.back() * m);
    return pw;
  };
  const auto Ap = powers(A, di);
  const auto Bp = powers(B, dj);
  const auto Pp = powers(P, dk);

  // Group terms by (i, j) so each group costs two matrix products.
  std::map<std::pair<int, int>, CMatrix> groups;
  for (const auto& [e, c] : terms_) {
    auto [it, inserted] =
        groups.try_emplace({e[0], e[1]}, CMatrix::Zero(d, d));
    it->second += c * Pp[e[2]];
  }
  for (const auto& [ij, s] : groups)
    out += Ap[ij.first] * (Bp[ij.second] * s);
  return out;
}

std::string Polynomial3::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    const char* names[3] = {" x1", " x2", " x3"};
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return os.str();
}

}  // namespace tetra
