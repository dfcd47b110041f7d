#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/forms.hpp"
#include "coxcert/linalg.hpp"
#include "coxcert/matrix.hpp"

namespace coxcert {

// Same-sheet criterion for the two-sheeted hyperboloid: g preserves the
// sheets iff it keeps a timelike reference vector on its own side.
inline bool preserves_sheets(const Matrix& g, const QuadraticForm& q, const Vec& x0) {
  if (sgn(q.norm(x0)) >= 0) throw ContractViolation("preserves_sheets: x0 must be timelike");
  if (!q.preserved_by(g)) throw ContractViolation("preserves_sheets: g does not preserve the form");
  return sgn(bilinear(q.matrix(), x0, g * x0)) < 0;
}

// Unipotent isometry E(p,v) attached to an isotropic p and v with Q(p,v) = 0:
//   x  |->  x + Q(x,p) v - Q(x,v) p - (1/2) Q(v,v) Q(x,p) p.
// Integral whenever p, v are integral and Q(v,v) is even; satisfies
// E(p,v) E(p,w) = E(p,v+w), so powers are E(p,kv).
struct Transvection {
  Vec p;
  Vec v;
  Matrix matrix;
};

inline Transvection transvection(const QuadraticForm& q, const Vec& p, const Vec& v) {
  const std::size_t d = q.dim();
  if (p.size() != d || v.size() != d) throw ContractViolation("transvection: bad vector length");
  if (is_zero_vec(p)) throw ContractViolation("transvection: p must be nonzero");
  if (!is_integral_vec(p) || !is_integral_vec(v))
    throw ContractViolation("transvection: p and v must be integral");
  if (!is_zero(q.norm(p))) throw ContractViolation("transvection: p must be isotropic");
  if (!is_zero(q.apply(p, v))) throw ContractViolation("transvection: v must be Q-orthogonal to p");
  const Rational vv = q.norm(v);
  if (!is_integer(vv) || !is_even(numerator(vv)))
    throw ContractViolation("transvection: Q(v,v) must be even (scale v by 2)");

  const Vec qp = q.matrix() * p;  // functional x -> Q(x,p)
  const Vec qv = q.matrix() * v;
  const Rational half_vv = vv / 2;
  Matrix e = Matrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      e.at(i, j) += v[i] * qp[j] - p[i] * qv[j] - half_vv * p[i] * qp[j];

  if (!e.is_integral()) throw CertificateFailure("transvection: non-integral result");
  if (!q.preserved_by(e)) throw CertificateFailure("transvection: result does not preserve the form");
  if (!is_unipotent(e)) throw CertificateFailure("transvection: result is not unipotent");
  if (e * p != p) throw CertificateFailure("transvection: result does not fix p");
  return Transvection{p, v, std::move(e)};
}

inline Transvection transvection_power(const QuadraticForm& q, const Transvection& t, long k) {
  Vec kv = t.v;
  for (auto& x : kv) x *= k;
  return transvection(q, t.p, kv);
}

// Finds a transvection at the tangency point of the pair (i,j) whose
// direction v satisfies the given orthogonality constraints: Q(v,p) = 0,
// Q(v,e_k) = 0 for k in must_fix, Q(v,u) != 0 for u in must_move, and
// v not proportional to p. Candidates are drawn deterministically from the
// primitive kernel basis of the constraint system, then pairwise sums and
// differences.
inline Transvection translation_search(const QuadraticForm& q, std::size_t i, std::size_t j,
                                       const std::set<std::size_t>& must_fix,
                                       const std::vector<Vec>& must_move = {}) {
  const std::size_t d = q.dim();
  const Vec p = tangency_point(q, i, j);

  std::vector<Vec> rows = {q.matrix() * p};
  for (std::size_t k : must_fix) {
    if (k < 1 || k > d) throw ContractViolation("translation_search: fix index out of range");
    rows.push_back(q.matrix().row(k - 1));
  }
  std::vector<Vec> basis = nullspace_of_rows(rows, d);

  const Vec p_canon = primitive_integer_scaled(p);
  auto admissible = [&](const Vec& cand) {
    if (is_zero_vec(cand)) return false;
    if (primitive_integer_scaled(cand) == p_canon) return false;
    for (const Vec& u : must_move)
      if (is_zero(q.apply(cand, u))) return false;
    return true;
  };

  std::vector<Vec> candidates;
  for (const Vec& b : basis) candidates.push_back(b);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      candidates.push_back(basis[a] + basis[b]);
      candidates.push_back(basis[a] + Rational(-1) * basis[b]);
    }

  for (const Vec& cand : candidates) {
    if (!admissible(cand)) continue;
    Vec v = cand;
    const Rational vv = q.norm(v);
    if (sgn(vv) <= 0)
      throw CertificateFailure("translation_search: candidate direction is not spacelike");
    if (!is_even(numerator(vv))) v = Rational(2) * v;
    return transvection(q, p, v);
  }
  throw CertificateFailure("translation_search: no direction satisfies the constraints");
}

enum class PairClass { orthogonal, tangent, diverging, crossing };

inline std::string pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::orthogonal: return "orthogonal";
    case PairClass::tangent: return "tangent";
    case PairClass::diverging: return "diverging";
    case PairClass::crossing: return "crossing";
  }
  return "?";
}

// Certificate that an ordered list of unit spacelike normals bounds a
// right-angled 2k-gon configuration: Gram diagonal all 1, cyclically
// consecutive entries 0, and a global sign normalization making every
// non-adjacent entry <= -1 (tangent or diverging; never meeting in the
// interior).
struct GramCertificate {
  std::size_t size = 0;
  Matrix gram;
  std::vector<int> signs;
  std::map<std::pair<std::size_t, std::size_t>, PairClass> classification;
  bool pass = false;
  std::string evidence;
};

namespace detail {

inline PairClass classify_entry(const Rational& g) {
  if (is_zero(g)) return PairClass::orthogonal;
  Rational a = abs(g);
  if (a == 1) return PairClass::tangent;
  if (a > 1) return PairClass::diverging;
  return PairClass::crossing;
}

// Signs satisfying sign_i * sign_j * G_ij <= -1 on non-adjacent pairs are
// fixed up to component-wise flips, so propagate over a spanning structure
// and fall back to exhaustive search only at small sizes.
inline bool assign_signs(const Matrix& g, std::size_t k, std::vector<int>& signs) {
  auto adjacent = [k](std::size_t a, std::size_t b) {
    std::size_t diff = (b + k - a) % k;
    return diff == 1 || diff == k - 1;
  };
  auto consistent = [&](const std::vector<int>& s) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        if (adjacent(a, b)) continue;
        if (Rational(s[a] * s[b]) * g.at(a, b) > -1) return false;
      }
    return true;
  };

  signs.assign(k, 0);
  for (std::size_t start = 0; start < k; ++start) {
    if (signs[start] != 0) continue;
    signs[start] = 1;
    std::vector<std::size_t> stack = {start};
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b || adjacent(a, b) || is_zero(g.at(a, b))) continue;
        int needed = -sgn(g.at(a, b)) * signs[a];
        if (signs[b] == 0) {
          signs[b] = needed;
          stack.push_back(b);
        }
      }
    }
  }
  if (consistent(signs)) return true;
  if (k <= 24) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << (k - 1)); ++mask) {
      std::vector<int> s(k, 1);
      for (std::size_t b = 0; b + 1 < k; ++b)
        if (mask & (std::size_t{1} << b)) s[b + 1] = -1;
      if (consistent(s)) {
        signs = s;
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

inline GramCertificate polygon_gram_certificate(const std::vector<Vec>& normals,
                                                const QuadraticForm& q) {
  GramCertificate cert;
  cert.size = normals.size();
  const std::size_t k = normals.size();
  cert.gram = Matrix(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) cert.gram.at(a, b) = q.apply(normals[a], normals[b]);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      cert.classification[{a + 1, b + 1}] = detail::classify_entry(cert.gram.at(a, b));

  if (k < 6 || k % 2 != 0) {
    cert.evidence = "size violation: " + std::to_string(k) + " normals, need an even count >= 6";
    return cert;
  }
  for (std::size_t a = 0; a < k; ++a)
    if (cert.gram.at(a, a) != 1) {
      cert.evidence = "normal " + std::to_string(a + 1) + " has Q-norm " +
                      rational_to_string(cert.gram.at(a, a)) + ", expected 1";
      return cert;
    }
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t b = (a + 1) % k;
    if (!is_zero(cert.gram.at(a, b))) {
      cert.evidence = "consecutive pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                      ") has entry " + rational_to_string(cert.gram.at(a, b)) + ", expected 0";
      return cert;
    }
  }
  auto adjacent = [k](std::size_t a, std::size_t b) {
    std::size_t diff = (b + k - a) % k;
    return diff == 1 || diff == k - 1;
  };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      if (adjacent(a, b)) continue;
      if (abs(cert.gram.at(a, b)) < 1) {
        cert.evidence = "non-adjacent pair (" + std::to_string(a + 1) + "," +
                        std::to_string(b + 1) + ") has entry " +
                        rational_to_string(cert.gram.at(a, b)) + ", magnitude < 1";
        return cert;
      }
    }
  if (!detail::assign_signs(cert.gram, k, cert.signs)) {
    cert.evidence = "no sign assignment normalizes all non-adjacent entries to <= -1";
    return cert;
  }
  cert.pass = true;
  cert.evidence = "";
  return cert;
}

// Zariski density of the reflection group in O(Q): the Gram matrix of the
// normals has full rank n+1 and the scheme graph on the normals is
// connected.
struct DensityReport {
  std::size_t rank = 0;
  bool rank_ok = false;
  bool irreducible = false;
  bool pass = false;
};

inline DensityReport zariski_density_certificate(const std::vector<Vec>& normals,
                                                 const QuadraticForm& q) {
  DensityReport rep;
  const std::size_t k = normals.size();
  Matrix gram(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) gram.at(a, b) = q.apply(normals[a], normals[b]);
  rep.rank = rank_and_kernel(gram).rank;
  rep.rank_ok = rep.rank == q.dim();

  if (k > 0) {
    std::vector<bool> seen(k, false);
    std::vector<std::size_t> stack = {0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < k; ++b)
        if (!seen[b] && b != a && !is_zero(gram.at(a, b))) {
          seen[b] = true;
          ++count;
          stack.push_back(b);
        }
    }
    rep.irreducible = count == k;
  }
  rep.pass = rep.rank_ok && rep.irreducible;
  return rep;
}

// Floating-point picture of the normals in the upper-half-space chart with
// the isotropic basepoint at infinity. Non-certifying: the exact Gram matrix
// stays the source of truth, and the residual table records how far the
// float picture drifts from it.
struct SphereItem {
  bool is_plane = false;
  std::vector<double> coeffs;   // unit normal (plane) or center (sphere)
  double offset_or_radius = 0;  // plane offset d, with plane = {x : n.x = d}, or radius
};

struct SphereConfiguration {
  std::size_t ambient_dim = 0;
  std::vector<SphereItem> items;
  std::vector<std::vector<double>> products;   // pairwise inversive products
  std::vector<std::vector<double>> residuals;  // | |product| - |gram| |
  double max_residual = 0;
};

inline double inversive_product(const SphereItem& a, const SphereItem& b) {
  if (a.is_plane && b.is_plane) {
    double dot = 0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) dot += a.coeffs[i] * b.coeffs[i];
    return dot;
  }
  if (a.is_plane != b.is_plane) {
    const SphereItem& plane = a.is_plane ? a : b;
    const SphereItem& sphere = a.is_plane ? b : a;
    double dot = 0;
    for (std::size_t i = 0; i < plane.coeffs.size(); ++i) dot += plane.coeffs[i] * sphere.coeffs[i];
    return (dot - plane.offset_or_radius) / sphere.offset_or_radius;
  }
  double dist2 = 0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    double diff = a.coeffs[i] - b.coeffs[i];
    dist2 += diff * diff;
  }
  double ra = a.offset_or_radius, rb = b.offset_or_radius;
  return (dist2 - ra * ra - rb * rb) / (2 * ra * rb);
}

inline SphereConfiguration spheres_from_normals(const std::vector<Vec>& normals,
                                                const QuadraticForm& q, const Vec& p) {
  const std::size_t d = q.dim();
  if (q.signature().negative != 1 || q.signature().zero != 0)
    throw ContractViolation("spheres_from_normals: form must have signature (n,1,0)");
  if (p.size() != d || is_zero_vec(p) || !is_zero(q.norm(p)))
    throw ContractViolation("spheres_from_normals: basepoint must be isotropic and nonzero");
  for (const Vec& u : normals)
    if (sgn(q.norm(u)) <= 0)
      throw ContractViolation("spheres_from_normals: normals must be spacelike");

  // Exact chart data: isotropic q0 with Q(p,q0) = 1 and a Q-orthogonal basis
  // of the complement of span(p,q0). Only the final unit normalization is
  // floating point.
  Vec y;
  for (std::size_t i = 0; i < d; ++i) {
    Vec e = basis_vec(d, i);
    if (!is_zero(q.apply(p, e))) {
      y = e;
      break;
    }
  }
  Vec q0 = y + (-q.norm(y) / (2 * q.apply(p, y))) * p;
  q0 = (Rational(1) / q.apply(p, q0)) * q0;

  std::vector<Vec> comp = nullspace_of_rows({q.matrix() * p, q.matrix() * q0}, d);
  std::vector<Vec> w;  // Q-orthogonal (not normalized)
  for (Vec b : comp) {
    for (const Vec& prev : w) b = b + (-q.apply(b, prev) / q.norm(prev)) * prev;
    w.push_back(b);
  }
  std::vector<double> w_len;
  for (const Vec& wi : w) w_len.push_back(std::sqrt(to_double(q.norm(wi))));

  SphereConfiguration cfg;
  cfg.ambient_dim = d - 2;
  for (const Vec& u : normals) {
    const Rational beta = q.apply(p, u);
    const Rational alpha = q.apply(q0, u);
    const double scale = std::sqrt(to_double(q.norm(u)));
    std::vector<double> c(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) c[i] = to_double(q.apply(w[i], u)) / w_len[i];
    SphereItem item;
    if (is_zero(beta)) {
      item.is_plane = true;
      item.coeffs = c;
      for (auto& x : item.coeffs) x /= scale;
      item.offset_or_radius = -to_double(alpha) / scale;
    } else {
      item.is_plane = false;
      item.coeffs = c;
      for (auto& x : item.coeffs) x /= to_double(beta);
      item.offset_or_radius = scale / std::abs(to_double(beta));
    }
    cfg.items.push_back(std::move(item));
  }

  const std::size_t k = normals.size();
  cfg.products.assign(k, std::vector<double>(k, 0));
  cfg.residuals.assign(k, std::vector<double>(k, 0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      double prod = inversive_product(cfg.items[a], cfg.items[b]);
      double gram = to_double(abs(q.apply(normals[a], normals[b]))) /
                    std::sqrt(to_double(q.norm(normals[a])) * to_double(q.norm(normals[b])));
      cfg.products[a][b] = prod;
      cfg.residuals[a][b] = std::abs(std::abs(prod) - gram);
      cfg.max_residual = std::max(cfg.max_residual, cfg.residuals[a][b]);
    }
  return cfg;
}

}  // namespace coxcert
