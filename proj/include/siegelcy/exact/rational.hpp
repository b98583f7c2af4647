#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegelcy {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_integral(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline std::int64_t to_int64(const Rational& r) {
  if (!is_integral(r)) throw std::domain_error("rational " + r.str() + " is not an integer");
  const BigInt n = boost::multiprecision::numerator(r);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer " + n.str() + " exceeds 64 bits");
  return n.convert_to<std::int64_t>();
}

/// Dense row-major matrix over the rationals; only what the exact checks need.
class QMatrix {
public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static QMatrix from_ints(const std::vector<std::vector<std::int64_t>>& rows) {
    QMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    QMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend bool operator==(const QMatrix&, const QMatrix&) = default;

  Rational determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    QMatrix m = *this;
    Rational det = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && m(p, c) == 0) ++p;
      if (p == rows_) return 0;
      if (p != c) {
        m.swap_rows(p, c);
        det = -det;
      }
      det *= m(c, c);
      for (std::size_t r = c + 1; r < rows_; ++r) {
        if (m(r, c) == 0) continue;
        const Rational f = m(r, c) / m(c, c);
        for (std::size_t j = c; j < cols_; ++j) m(r, j) -= f * m(c, j);
      }
    }
    return det;
  }

  QMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = rows_;
    QMatrix m = *this, inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && m(p, c) == 0) ++p;
      if (p == n) throw std::domain_error("matrix is singular");
      m.swap_rows(p, c);
      inv.swap_rows(p, c);
      const Rational piv = m(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(c, j) /= piv;
        inv(c, j) /= piv;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || m(r, c) == 0) continue;
        const Rational f = m(r, c);
        for (std::size_t j = 0; j < n; ++j) {
          m(r, j) -= f * m(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  std::size_t rank() const {
    QMatrix m = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t p = rank;
      while (p < rows_ && m(p, c) == 0) ++p;
      if (p == rows_) continue;
      m.swap_rows(p, rank);
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        if (m(r, c) == 0) continue;
        const Rational f = m(r, c) / m(rank, c);
        for (std::size_t j = c; j < cols_; ++j) m(r, j) -= f * m(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Some solution x of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<std::vector<Rational>> solve_linear(QMatrix a, std::vector<Rational> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.swap_rows(p, r);
    std::swap(b[p], b[r]);
    const Rational piv = a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) /= piv;
    b[r] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace siegelcy
