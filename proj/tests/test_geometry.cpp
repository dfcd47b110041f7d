#include <doctest.h>

#include <cmath>

#include "coxcert/coxeter.hpp"
#include "coxcert/forms.hpp"
#include "coxcert/geometry.hpp"
#include "coxcert/pipeline.hpp"

using namespace coxcert;

namespace {

const Vec kP14 = {1, 0, 0, 1};
const Vec kV14 = {2, -2, 2, 0};  // doubled: (1,-1,1,0) has odd norm 1

}  // namespace

TEST_CASE("preserves_sheets") {
  const QuadraticForm q4 = build_Q(4);
  const Vec ones = all_ones_vec(4);
  REQUIRE(q4.norm(ones) == -2);  // timelike
  CHECK(preserves_sheets(Matrix::identity(4), q4, ones));
  CHECK_FALSE(preserves_sheets(Matrix::identity(4) * Rational(-1), q4, ones));
  ReflectionSystem sys = tits_reflections(q4);
  CHECK(preserves_sheets(sys.generator(1), q4, ones));

  CHECK_THROWS_AS(preserves_sheets(Matrix::identity(4), q4, basis_vec(4, 0)), ContractViolation);
  Matrix not_isometry = Matrix::identity(4) * Rational(2);
  CHECK_THROWS_AS(preserves_sheets(not_isometry, q4, ones), ContractViolation);
}

TEST_CASE("transvection construction and postconditions") {
  const QuadraticForm q4 = build_Q(4);

  Transvection ident = transvection(q4, kP14, Vec(4, Rational(0)));
  CHECK(ident.matrix.is_identity());

  Transvection t = transvection(q4, kP14, kV14);
  CHECK(t.matrix.is_integral());
  CHECK(is_unipotent(t.matrix));
  CHECK(q4.preserved_by(t.matrix));
  CHECK(determinant(t.matrix) == 1);
  CHECK(t.matrix * kP14 == kP14);
  CHECK(t.matrix * basis_vec(4, 0) == basis_vec(4, 0));
  CHECK(t.matrix * basis_vec(4, 3) == basis_vec(4, 3));
  CHECK(preserves_sheets(t.matrix, q4, all_ones_vec(4)));
  Matrix nil = t.matrix - Matrix::identity(4);
  CHECK(nil * nil * nil == Matrix(4, 4));
  CHECK_FALSE(nil * nil == Matrix(4, 4));

  // Power law E(p,v)^k = E(p,kv).
  Vec twice = Rational(2) * kV14;
  CHECK(t.matrix * t.matrix == transvection(q4, kP14, twice).matrix);
  CHECK(transvection_power(q4, t, 3).matrix == t.matrix * t.matrix * t.matrix);
  CHECK((transvection_power(q4, t, -1).matrix * t.matrix).is_identity());

  // Odd norm is rejected: (1,-1,1,0) has Q-norm 1.
  CHECK_THROWS_AS(transvection(q4, kP14, Vec{1, -1, 1, 0}), ContractViolation);
  CHECK_THROWS_AS(transvection(q4, Vec{1, 0, 0, 0}, kV14), ContractViolation);  // p not isotropic
}

TEST_CASE("gram entries of powers are quadratic in the exponent") {
  const QuadraticForm q4 = build_Q(4);
  const Transvection t = transvection(q4, kP14, kV14);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Rational f[3];
      for (long k = 0; k <= 2; ++k)
        f[k] = q4.apply(transvection_power(q4, t, k).matrix * basis_vec(4, i), basis_vec(4, j));
      // Lagrange extrapolation from k = 0,1,2 to k = 5 must be exact.
      const Rational predicted = 6 * f[0] - 15 * f[1] + 10 * f[2];
      const Rational actual =
          q4.apply(transvection_power(q4, t, 5).matrix * basis_vec(4, i), basis_vec(4, j));
      CHECK(predicted == actual);
    }
}

TEST_CASE("translation_search reproduces the documented direction") {
  const QuadraticForm q4 = build_Q(4);
  Transvection t = translation_search(q4, 1, 4, {1, 4});
  CHECK(t.p == kP14);
  CHECK(t.v == kV14);

  const QuadraticForm q5 = build_Q(5);
  Transvection t5 = translation_search(q5, 1, 5, {1, 5});
  CHECK(t5.matrix * basis_vec(5, 0) == basis_vec(5, 0));
  CHECK(t5.matrix * basis_vec(5, 4) == basis_vec(5, 4));
  CHECK(t5.matrix * t5.p == t5.p);

  const Vec u_s = common_orthogonal(q5, {1, 2, 3, 4});
  Transvection moved = translation_search(q5, 1, 4, {1, 4}, {u_s});
  CHECK_FALSE(is_zero(q5.apply(moved.v, u_s)));
  CHECK(is_zero(q5.apply(moved.v, basis_vec(5, 0))));
  CHECK(is_zero(q5.apply(moved.v, basis_vec(5, 3))));
}

TEST_CASE("polygon gram certificate rejects malformed cycles") {
  const QuadraticForm q4 = build_Q(4);
  std::vector<Vec> four = {basis_vec(4, 0), basis_vec(4, 1), basis_vec(4, 2), basis_vec(4, 3)};
  GramCertificate cert = polygon_gram_certificate(four, q4);
  CHECK_FALSE(cert.pass);
  CHECK(cert.evidence.find("size violation") != std::string::npos);
  // Classification is still reported: (1,2) orthogonal, (1,3) tangent.
  CHECK(cert.classification.at({1, 2}) == PairClass::orthogonal);
  CHECK(cert.classification.at({1, 3}) == PairClass::tangent);
}

TEST_CASE("polygon gram certificate on the built hexagon") {
  const BuildResult r = build_2ngon(3, 64);
  REQUIRE(r.bundle.translation.has_value());
  const QuadraticForm q4 = build_Q(4);
  const Matrix& tau = r.bundle.translation->matrix;
  std::vector<Vec> normals = {basis_vec(4, 0), basis_vec(4, 1), basis_vec(4, 2), basis_vec(4, 3),
                              tau * basis_vec(4, 2), tau * basis_vec(4, 1)};
  GramCertificate cert = polygon_gram_certificate(normals, q4);
  REQUIRE(cert.pass);
  for (std::size_t a = 0; a < 6; ++a) {
    CHECK(cert.gram.at(a, a) == 1);
    CHECK(is_zero(cert.gram.at(a, (a + 1) % 6)));
  }

  // Pass is invariant under flipping any normal and rotating the cycle.
  for (std::size_t flip = 0; flip < 6; ++flip) {
    std::vector<Vec> flipped = normals;
    flipped[flip] = Rational(-1) * flipped[flip];
    CHECK(polygon_gram_certificate(flipped, q4).pass);
  }
  for (std::size_t rot = 1; rot < 6; ++rot) {
    std::vector<Vec> rotated;
    for (std::size_t a = 0; a < 6; ++a) rotated.push_back(normals[(a + rot) % 6]);
    CHECK(polygon_gram_certificate(rotated, q4).pass);
  }
}

TEST_CASE("zariski density certificate") {
  for (std::size_t n = 3; n <= 6; ++n) {
    const QuadraticForm q = build_Q(n + 1);
    std::vector<Vec> normals;
    for (std::size_t i = 0; i <= n; ++i) normals.push_back(basis_vec(n + 1, i));
    DensityReport rep = zariski_density_certificate(normals, q);
    CHECK(rep.rank == n + 1);
    CHECK(rep.pass);
  }
  const QuadraticForm q4 = build_Q(4);
  DensityReport bad = zariski_density_certificate({basis_vec(4, 0), basis_vec(4, 1)}, q4);
  CHECK(bad.rank == 2);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("spheres_from_normals reproduces the two-lines-two-circles picture") {
  const QuadraticForm q4 = build_Q(4);
  std::vector<Vec> normals = {basis_vec(4, 0), basis_vec(4, 1), basis_vec(4, 2), basis_vec(4, 3)};
  SphereConfiguration cfg = spheres_from_normals(normals, q4, kP14);
  CHECK(cfg.ambient_dim == 2);
  CHECK(cfg.items[0].is_plane);       // e_1: through the basepoint
  CHECK(cfg.items[3].is_plane);       // e_4
  CHECK_FALSE(cfg.items[1].is_plane); // e_2
  CHECK_FALSE(cfg.items[2].is_plane);
  CHECK(cfg.max_residual <= 1e-9);
  // Lines are parallel; the e_2 circle is orthogonal to the e_1 line and
  // tangent to the e_4 line.
  double dot = cfg.items[0].coeffs[0] * cfg.items[3].coeffs[0] +
               cfg.items[0].coeffs[1] * cfg.items[3].coeffs[1];
  CHECK(std::abs(std::abs(dot) - 1.0) <= 1e-9);
  CHECK(std::abs(cfg.products[1][0]) <= 1e-9);
  CHECK(std::abs(std::abs(cfg.products[1][3]) - 1.0) <= 1e-9);

  CHECK_THROWS_AS(spheres_from_normals(normals, q4, all_ones_vec(4)), ContractViolation);
}

TEST_CASE("figure metric data matches the |Q_4| pattern") {
  // Lines x = 0 and x = 1, unit circles centered (0,2) and (1,1): the
  // inversive products reproduce the |Q_4| off-diagonal pattern.
  SphereItem s1{true, {1, 0}, 0};   // line x = 0
  SphereItem s4{true, {1, 0}, 1};   // line x = 1
  SphereItem s2{false, {0, 2}, 1};  // circle at (0,2)
  SphereItem s3{false, {1, 1}, 1};  // circle at (1,1)
  CHECK(inversive_product(s1, s4) == doctest::Approx(1.0));        // parallel lines: tangent at infinity
  CHECK(inversive_product(s1, s2) == doctest::Approx(0.0));        // S1 orthogonal S2
  CHECK(std::abs(inversive_product(s1, s3)) == doctest::Approx(1.0));  // S1 tangent S3
  CHECK(inversive_product(s4, s3) == doctest::Approx(0.0));        // S4 orthogonal S3
  CHECK(std::abs(inversive_product(s4, s2)) == doctest::Approx(1.0));  // S4 tangent S2
  CHECK(inversive_product(s2, s3) == doctest::Approx(0.0));        // S2 orthogonal S3

  const Matrix q4 = build_Q(4).matrix();
  CHECK(abs(q4.at(0, 3)) == 1);
  CHECK(q4.at(0, 1) == 0);
  CHECK(abs(q4.at(0, 2)) == 1);
  CHECK(q4.at(2, 3) == 0);
  CHECK(abs(q4.at(1, 3)) == 1);
  CHECK(q4.at(1, 2) == 0);
}

TEST_CASE("single spacelike normal gives one sphere") {
  const QuadraticForm q4 = build_Q(4);
  SphereConfiguration cfg = spheres_from_normals({basis_vec(4, 1)}, q4, kP14);
  CHECK(cfg.items.size() == 1);
  CHECK(cfg.max_residual == 0);
}

TEST_CASE("float products track the exact gram matrix in every built configuration") {
  for (std::size_t n = 3; n <= 6; ++n) {
    const CertificateBundle b = build_2ngon(n, 64).bundle;
    const QuadraticForm q(b.form);
    std::vector<Vec> normals;
    for (std::size_t a = 0; a <= n; ++a) normals.push_back(basis_vec(n + 1, a));
    for (std::size_t s = n; s >= 2; --s)
      normals.push_back(b.translation->matrix * basis_vec(n + 1, s - 1));
    SphereConfiguration cfg = spheres_from_normals(normals, q, b.translation->p);
    CHECK(cfg.max_residual <= 1e-9);
  }
}
