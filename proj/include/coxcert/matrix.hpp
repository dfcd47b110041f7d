#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "coxcert/errors.hpp"
#include "coxcert/rational.hpp"

namespace coxcert {

using Vec = std::vector<Rational>;

// Dense matrix of exact rationals, row-major. All arithmetic is exact;
// nothing in this file rounds.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ContractViolation("ragged initializer");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ContractViolation("matrix product shape mismatch");
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = at(i, k);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }

  Matrix operator*(const Rational& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  Matrix pow(unsigned long k) const {
    if (!is_square()) throw ContractViolation("pow requires a square matrix");
    Matrix acc = identity(rows_);
    Matrix base = *this;
    while (k) {
      if (k & 1) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  bool is_integral() const {
    for (const auto& x : data_)
      if (!is_integer(x)) return false;
    return true;
  }

  bool is_identity() const {
    if (!is_square()) return false;
    return *this == identity(rows_);
  }

  Vec row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  Vec col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ContractViolation("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Vec operator*(const Matrix& m, const Vec& x) {
  if (m.cols() != x.size()) throw ContractViolation("matrix-vector shape mismatch");
  Vec out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m.at(i, j))) out[i] += m.at(i, j) * x[j];
  return out;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ContractViolation("vector shape mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Vec operator*(const Rational& s, const Vec& x) {
  Vec out = x;
  for (auto& e : out) e *= s;
  return out;
}

inline bool is_zero_vec(const Vec& x) {
  for (const auto& e : x)
    if (!is_zero(e)) return false;
  return true;
}

// x^T Q y, exact.
inline Rational bilinear(const Matrix& q, const Vec& x, const Vec& y) {
  if (q.rows() != x.size() || q.cols() != y.size()) throw ContractViolation("bilinear shape mismatch");
  Rational acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_zero(x[i])) continue;
    Rational row(0);
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!is_zero(y[j])) row += q.at(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

inline Vec basis_vec(std::size_t dim, std::size_t i) {
  Vec e(dim, Rational(0));
  e[i] = 1;
  return e;
}

// Scales to integer entries with content 1 and first nonzero entry positive.
// This is the normal form used for every distinguished vector, so serialized
// bundles are byte-reproducible.
inline Vec primitive_integer_scaled(const Vec& x) {
  if (is_zero_vec(x)) throw ContractViolation("cannot normalize the zero vector");
  Int denom_lcm = 1;
  for (const auto& e : x) {
    Int d = denominator(e);
    denom_lcm = lcm(denom_lcm, d);
  }
  std::vector<Int> ints;
  ints.reserve(x.size());
  Int content = 0;
  for (const auto& e : x) {
    Rational scaled = e * Rational(denom_lcm);
    ints.push_back(numerator(scaled));
    content = gcd(content, ints.back());
  }
  int lead_sign = 0;
  for (const auto& z : ints)
    if (sgn(z) != 0) {
      lead_sign = sgn(z);
      break;
    }
  if (lead_sign < 0) content = -content;
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = Rational(ints[i] / content);
  return out;
}

inline bool is_integral_vec(const Vec& x) {
  for (const auto& e : x)
    if (!is_integer(e)) return false;
  return true;
}

inline std::string vec_to_string(const Vec& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += rational_to_string(x[i]);
  }
  return s + ")";
}

inline std::string matrix_to_string(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += rational_to_string(m.at(i, j));
    }
  }
  return s + "]";
}

}  // namespace coxcert
