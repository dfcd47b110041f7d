#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "coxcert/linalg.hpp"
#include "coxcert/matrix.hpp"

namespace coxcert {

// Symmetric integer form with cached signature and kernel. Row/column indices
// at this interface are 1-based, matching the generator numbering s_1..s_m;
// only the internal storage is 0-based.
class QuadraticForm {
 public:
  explicit QuadraticForm(Matrix m) : matrix_(std::move(m)) {
    if (!matrix_.is_square() || !matrix_.is_symmetric())
      throw ContractViolation("QuadraticForm: matrix must be square and symmetric");
    if (!matrix_.is_integral())
      throw ContractViolation("QuadraticForm: matrix must have integer entries");
    signature_ = coxcert::signature(matrix_);
    kernel_ = rank_and_kernel(matrix_).kernel;
  }

  std::size_t dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  const Signature& signature() const { return signature_; }
  const std::vector<Vec>& kernel() const { return kernel_; }

  // 1-based entry access.
  const Rational& entry(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > dim() || j > dim())
      throw ContractViolation("QuadraticForm::entry: index out of range");
    return matrix_.at(i - 1, j - 1);
  }

  Rational apply(const Vec& x, const Vec& y) const { return bilinear(matrix_, x, y); }
  Rational norm(const Vec& x) const { return apply(x, x); }

  bool has_unit_diagonal() const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (matrix_.at(i, i) != 1) return false;
    return true;
  }

  bool preserved_by(const Matrix& g) const {
    return g.transposed() * matrix_ * g == matrix_;
  }

 private:
  Matrix matrix_;
  Signature signature_;
  std::vector<Vec> kernel_;
};

// Q_m: all-ones diagonal, zeros on the super/subdiagonal, -1 elsewhere.
inline QuadraticForm build_Q(std::size_t m) {
  if (m < 3) throw ContractViolation("build_Q: m must be >= 3");
  Matrix q(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j)
        q.at(i, j) = 1;
      else if (i + 1 == j || j + 1 == i)
        q.at(i, j) = 0;
      else
        q.at(i, j) = -1;
    }
  return QuadraticForm(q);
}

// Q'_m: Q_m with the top-right and bottom-left entries replaced by 0.
inline QuadraticForm build_Q_prime(std::size_t m) {
  if (m < 5) throw ContractViolation("build_Q_prime: m must be >= 5");
  Matrix q = build_Q(m).matrix();
  q.at(0, m - 1) = 0;
  q.at(m - 1, 0) = 0;
  return QuadraticForm(q);
}

inline Vec all_ones_vec(std::size_t dim) { return Vec(dim, Rational(1)); }

// Entry i (0-based) is (-1)^i.
inline Vec alt_signs_vec(std::size_t dim) {
  Vec u(dim);
  for (std::size_t i = 0; i < dim; ++i) u[i] = (i % 2 == 0) ? 1 : -1;
  return u;
}

// v^T Q_{n+1} v for the all-ones vector v; equals -n^2 + 2n + 1.
inline Int all_ones_value(std::size_t n) {
  if (n < 2) throw ContractViolation("all_ones_value: n must be >= 2");
  QuadraticForm q = build_Q(n + 1);
  Rational val = q.norm(all_ones_vec(n + 1));
  return numerator(val);
}

// The tangency point of the hyperspheres normal to e_i and e_j (1-based), for
// a tangent pair (form entry -1): the kernel of Q restricted to the subspace
// {x : Q(e_i,x) = Q(e_j,x) = 0}. The restriction is positive semidefinite
// with a 1-dimensional kernel exactly when the pair is tangent.
inline Vec tangency_point(const QuadraticForm& q, std::size_t i, std::size_t j) {
  const std::size_t d = q.dim();
  if (i < 1 || j < 1 || i > d || j > d || i == j)
    throw ContractViolation("tangency_point: bad index pair");
  if (q.entry(i, j) != -1)
    throw CertificateFailure("tangency_point: pair (" + std::to_string(i) + "," +
                             std::to_string(j) + ") is not tangent (entry != -1)");
  if (q.signature().negative != 1 || q.signature().zero != 0)
    throw ContractViolation("tangency_point: form must have signature (n,1,0)");

  std::vector<Vec> constraints = {q.matrix().row(i - 1), q.matrix().row(j - 1)};
  std::vector<Vec> w_basis = nullspace_of_rows(constraints, d);

  // Gram matrix of Q restricted to the solution subspace: positive
  // semidefinite with a 1-dimensional kernel exactly for a tangent pair.
  Matrix gram(w_basis.size(), w_basis.size());
  for (std::size_t a = 0; a < w_basis.size(); ++a)
    for (std::size_t b = 0; b < w_basis.size(); ++b)
      gram.at(a, b) = q.apply(w_basis[a], w_basis[b]);
  const Signature restricted = coxcert::signature(gram);
  if (restricted.negative != 0 || restricted.zero != 1)
    throw CertificateFailure("tangency_point: restricted form has signature " +
                             restricted.to_string() + ", expected PSD with 1-dimensional kernel");
  RankKernel rk = rank_and_kernel(gram);
  if (rk.kernel.size() != 1)
    throw CertificateFailure("tangency_point: restricted kernel dimension is " +
                             std::to_string(rk.kernel.size()) + ", expected 1");
  Vec p(d, Rational(0));
  for (std::size_t a = 0; a < w_basis.size(); ++a) p = p + rk.kernel[0][a] * w_basis[a];
  p = primitive_integer_scaled(p);

  if (!is_zero(q.norm(p)) || !is_zero(q.apply(basis_vec(d, i - 1), p)) ||
      !is_zero(q.apply(basis_vec(d, j - 1), p)))
    throw CertificateFailure("tangency_point: candidate fails the defining equations");
  return p;
}

// The primitive spanning vector of {x : Q(e_i,x) = 0 for i in indices}
// (1-based indices), verified unique and spacelike.
inline Vec common_orthogonal(const QuadraticForm& q, const std::set<std::size_t>& indices) {
  const std::size_t d = q.dim();
  std::vector<Vec> constraints;
  for (std::size_t i : indices) {
    if (i < 1 || i > d) throw ContractViolation("common_orthogonal: index out of range");
    constraints.push_back(q.matrix().row(i - 1));
  }
  std::vector<Vec> sol = nullspace_of_rows(constraints, d);
  if (sol.size() != 1)
    throw CertificateFailure("common_orthogonal: solution space has dimension " +
                             std::to_string(sol.size()) + ", expected 1");
  Vec u = primitive_integer_scaled(sol[0]);
  if (sgn(q.norm(u)) <= 0)
    throw CertificateFailure("common_orthogonal: solution is not spacelike");
  return u;
}

// The distinguished vectors of a form: the all-ones vector, the alternating
// sign vector when it spans the kernel, and the tangency point of every
// tangent pair (entry -1) when the form is nondegenerate Lorentzian.
struct DistinguishedVectors {
  Vec all_ones;
  std::vector<Vec> alt_signs;  // empty unless it spans the kernel
  std::map<std::pair<std::size_t, std::size_t>, Vec> tangency_points;
};

inline DistinguishedVectors distinguished_vectors(const QuadraticForm& q) {
  DistinguishedVectors out;
  const std::size_t d = q.dim();
  out.all_ones = all_ones_vec(d);
  Vec alt = alt_signs_vec(d);
  if (q.kernel().size() == 1 && q.kernel()[0] == alt) out.alt_signs.push_back(alt);
  if (q.signature().negative == 1 && q.signature().zero == 0)
    for (std::size_t i = 1; i <= d; ++i)
      for (std::size_t j = i + 1; j <= d; ++j)
        if (q.entry(i, j) == -1) out.tangency_points[{i, j}] = tangency_point(q, i, j);
  return out;
}

}  // namespace coxcert
