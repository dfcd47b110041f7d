#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coxcert/matrix.hpp"

namespace coxcert {

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  bool operator==(const Signature&) const = default;
  std::string to_string() const {
    return "(" + std::to_string(positive) + "," + std::to_string(negative) + "," +
           std::to_string(zero) + ")";
  }
};

// Signature of a symmetric form by exact congruence diagonalization.
//
// At each step the first nonzero trailing diagonal entry is used as pivot and
// its row/column cleared by a simultaneous row+column elimination (a
// congruence, so inertia is preserved). When the trailing diagonal is all
// zero but an off-diagonal entry S[i][j] survives, adding row j to row i and
// column j to column i creates the diagonal pivot 2*S[i][j]. Sylvester's law
// makes the count independent of these pivot choices.
inline Signature signature(const Matrix& s_in) {
  if (!s_in.is_square()) throw ContractViolation("signature: matrix must be square");
  if (!s_in.is_symmetric()) throw ContractViolation("signature: matrix must be symmetric");
  Matrix s = s_in;
  const std::size_t d = s.rows();
  Signature sig;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t pivot_row = d;
    for (std::size_t i = k; i < d; ++i)
      if (!is_zero(s.at(i, i))) {
        pivot_row = i;
        break;
      }
    if (pivot_row == d) {
      // Trailing diagonal is zero; look for an off-diagonal entry.
      std::size_t oi = d, oj = d;
      for (std::size_t i = k; i < d && oi == d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          if (!is_zero(s.at(i, j))) {
            oi = i;
            oj = j;
            break;
          }
      if (oi == d) {
        sig.zero += static_cast<int>(d - k);
        return sig;
      }
      for (std::size_t j = 0; j < d; ++j) s.at(oi, j) += s.at(oj, j);
      for (std::size_t i = 0; i < d; ++i) s.at(i, oi) += s.at(i, oj);
      pivot_row = oi;
    }
    if (pivot_row != k) {
      for (std::size_t j = 0; j < d; ++j) std::swap(s.at(k, j), s.at(pivot_row, j));
      for (std::size_t i = 0; i < d; ++i) std::swap(s.at(i, k), s.at(i, pivot_row));
    }
    const Rational pivot = s.at(k, k);
    if (sgn(pivot) > 0)
      ++sig.positive;
    else
      ++sig.negative;
    for (std::size_t i = k + 1; i < d; ++i) {
      if (is_zero(s.at(i, k))) continue;
      const Rational f = s.at(i, k) / pivot;
      for (std::size_t j = k + 1; j < d; ++j) s.at(i, j) -= f * s.at(k, j);
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      s.at(i, k) = 0;
      s.at(k, i) = 0;
    }
  }
  return sig;
}

namespace detail {

// Reduced row echelon form in place; returns the pivot column of each pivot
// row in order. Pivoting is deterministic (first nonzero entry per column).
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pr = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (!is_zero(m.at(i, c))) {
        pr = i;
        break;
      }
    if (pr == m.rows()) continue;
    if (pr != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pr, j));
    const Rational inv = Rational(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m.at(i, c))) continue;
      const Rational f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

}  // namespace detail

struct RankKernel {
  std::size_t rank = 0;
  std::vector<Vec> kernel;  // primitive integer vectors, first nonzero entry positive
};

// Exact rank and right-kernel basis. Kernel vectors are produced per free
// column in increasing order and normalized to primitive integer form, so the
// basis is reproducible bit for bit.
inline RankKernel rank_and_kernel(const Matrix& m) {
  Matrix r = m;
  std::vector<std::size_t> pivot_cols = detail::rref(r);
  RankKernel out;
  out.rank = pivot_cols.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec k(m.cols(), Rational(0));
    k[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) k[pivot_cols[i]] = -r.at(i, f);
    out.kernel.push_back(primitive_integer_scaled(k));
  }
  return out;
}

// Nullspace of the system {row^T x = 0 : row in rows}.
inline std::vector<Vec> nullspace_of_rows(const std::vector<Vec>& rows, std::size_t dim) {
  Matrix m(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) throw ContractViolation("constraint row has wrong length");
    for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = rows[i][j];
  }
  return rank_and_kernel(m).kernel;
}

// True iff (M - I)^d = 0, computed exactly.
inline bool is_unipotent(const Matrix& m) {
  if (!m.is_square()) throw ContractViolation("is_unipotent: matrix must be square");
  const std::size_t d = m.rows();
  Matrix n = m - Matrix::identity(d);
  Matrix acc = n;
  const Matrix zero(d, d);
  for (std::size_t k = 1; k <= d; ++k) {
    if (acc == zero) return true;
    if (k < d) acc = acc * n;
  }
  return acc == zero;
}

inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw ContractViolation("inverse: matrix must be square");
  const std::size_t d = m.rows();
  Matrix aug(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, d + i) = 1;
  }
  std::vector<std::size_t> pivots = detail::rref(aug);
  if (pivots.size() != d || (d > 0 && pivots.back() >= d))
    throw ContractViolation("inverse: matrix is singular");
  Matrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.at(i, j) = aug.at(i, d + j);
  return out;
}

inline Rational determinant(const Matrix& m_in) {
  if (!m_in.is_square()) throw ContractViolation("determinant: matrix must be square");
  Matrix m = m_in;
  const std::size_t d = m.rows();
  Rational det(1);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pr = d;
    for (std::size_t i = c; i < d; ++i)
      if (!is_zero(m.at(i, c))) {
        pr = i;
        break;
      }
    if (pr == d) return Rational(0);
    if (pr != c) {
      for (std::size_t j = 0; j < d; ++j) std::swap(m.at(c, j), m.at(pr, j));
      det = -det;
    }
    det *= m.at(c, c);
    const Rational inv = Rational(1) / m.at(c, c);
    for (std::size_t i = c + 1; i < d; ++i) {
      if (is_zero(m.at(i, c))) continue;
      const Rational f = m.at(i, c) * inv;
      for (std::size_t j = c; j < d; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

}  // namespace coxcert
