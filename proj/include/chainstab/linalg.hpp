#pragma once

// Small dense linear algebra over Q. Sizes here are the number of exceptional
// curves (rarely above ten), so plain Gaussian elimination is all we need.

#include <cstddef>
#include <utility>
#include <vector>

#include "chainstab/errors.hpp"
#include "chainstab/rational.hpp"

namespace chainstab {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const RationalMatrix&) const = default;

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  RationalMatrix leading_block(std::size_t k) const {
    RationalMatrix b(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
    return b;
  }

  RationalMatrix operator-() const {
    RationalMatrix r(*this);
    for (auto& x : r.data_) x = -x;
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Rational determinant(RationalMatrix a) {
  if (a.rows() != a.cols()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Determinants of the leading k x k blocks, k = 1..n.
inline std::vector<Rational> leading_principal_minors(const RationalMatrix& a) {
  std::vector<Rational> minors;
  minors.reserve(a.rows());
  for (std::size_t k = 1; k <= a.rows(); ++k) minors.push_back(determinant(a.leading_block(k)));
  return minors;
}

/// Sylvester: negative definite iff (-1)^k * minor_k > 0 for every k.
inline bool minors_certify_negative_definite(const std::vector<Rational>& minors) {
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const int expected = (k % 2 == 0) ? -1 : 1;
    if (sign(minors[k]) != expected) return false;
  }
  return true;
}

inline bool minors_certify_positive_definite(const std::vector<Rational>& minors) {
  for (const auto& m : minors)
    if (m <= 0) return false;
  return true;
}

/// Solves a x = b; throws InternalError when a is singular.
inline std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw UsageError("solve: dimension mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw InternalError("solve: singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      std::swap(b[p], b[c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a(i, i);
  return b;
}

inline RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  RationalMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    auto col = solve(a, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

/// Decomposition x^T H x = sum_i diag[i] * (x_i + sum_{j>i} upper(i,j) x_j)^2
/// of a positive definite H (the "q-form" used by Fincke-Pohst enumeration).
struct SquareDecomposition {
  std::vector<Rational> diag;
  RationalMatrix upper;  // strictly upper part used; unit diagonal implied
};

inline SquareDecomposition square_decomposition(const RationalMatrix& h) {
  const std::size_t n = h.rows();
  RationalMatrix q = h;
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw UsageError("square_decomposition: matrix is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  SquareDecomposition d{std::vector<Rational>(n), RationalMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    d.diag[i] = q(i, i);
    for (std::size_t j = i + 1; j < n; ++j) d.upper(i, j) = q(i, j);
  }
  return d;
}

}  // namespace chainstab
