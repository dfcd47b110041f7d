#include <doctest.h>

#include "coxcert/coxeter.hpp"
#include "coxcert/forms.hpp"

#include "oracles.hpp"

using namespace coxcert;

TEST_CASE("build_Q matches the family definition") {
  const QuadraticForm q4 = build_Q(4);
  CHECK(q4.matrix() == Matrix{{1, 0, -1, -1}, {0, 1, 0, -1}, {-1, 0, 1, 0}, {-1, -1, 0, 1}});
  CHECK(q4.entry(2, 3) == 0);
  CHECK(q4.entry(1, 3) == -1);
  CHECK(q4.matrix().is_symmetric());
  CHECK(build_Q(5).signature() == Signature{4, 1, 0});
  CHECK_THROWS_AS(build_Q(2), ContractViolation);
}

TEST_CASE("build_Q_prime corner zeros and signatures") {
  CHECK(build_Q_prime(5).entry(1, 5) == 0);
  CHECK(build_Q_prime(5).entry(5, 1) == 0);
  CHECK(build_Q_prime(5).signature() == Signature{4, 1, 0});
  CHECK(build_Q_prime(6).signature() == Signature{4, 1, 1});
  CHECK(is_zero_vec(build_Q_prime(6).matrix() * Vec{1, -1, 1, -1, 1, -1}));
  CHECK_THROWS_AS(build_Q_prime(4), ContractViolation);
}

TEST_CASE("signature and kernel across the families") {
  for (std::size_t n = 3; n <= 10; ++n) {
    CHECK(build_Q(n + 1).signature() == Signature{static_cast<int>(n), 1, 0});
    CHECK(all_ones_value(n) == -Int(n) * Int(n) + 2 * Int(n) + 1);
  }
  for (std::size_t n = 4; n <= 10; n += 2)
    CHECK(build_Q_prime(n + 1).signature() == Signature{static_cast<int>(n), 1, 0});
  for (std::size_t n = 5; n <= 9; n += 2) {
    const QuadraticForm qp = build_Q_prime(n + 1);
    CHECK(qp.signature() == Signature{static_cast<int>(n) - 1, 1, 1});
    REQUIRE(qp.kernel().size() == 1);
    CHECK(qp.kernel()[0] == alt_signs_vec(n + 1));
  }
}

TEST_CASE("all_ones_value at small n") {
  CHECK(all_ones_value(3) == -2);
  CHECK(all_ones_value(4) == -7);

  // n = 2: evaluate v^T Q_3 v by hand; positive, which is why n >= 3 is
  // needed for a Lorentzian form.
  const Matrix q3 = build_Q(3).matrix();
  Rational direct(0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) direct += q3.at(i, j);
  CHECK(direct == 1);
  CHECK(all_ones_value(2) == 1);
}

TEST_CASE("tangency_point on Q_4") {
  const QuadraticForm q4 = build_Q(4);
  const Vec p14 = tangency_point(q4, 1, 4);
  CHECK(p14 == Vec{1, 0, 0, 1});

  // Brute-force oracle over the two-parameter solution family: the primitive
  // isotropic solution is unique up to sign.
  std::vector<Vec> found = oracles::isotropic_biorthogonal_search(q4.matrix(), 1, 4, 3);
  REQUIRE(found.size() == 1);
  CHECK(found[0] == p14);

  const Vec p13 = tangency_point(q4, 1, 3);
  CHECK(is_zero(q4.norm(p13)));
  CHECK(is_zero(q4.apply(basis_vec(4, 0), p13)));
  CHECK(is_zero(q4.apply(basis_vec(4, 2), p13)));
  std::vector<Vec> found13 = oracles::isotropic_biorthogonal_search(q4.matrix(), 1, 3, 3);
  REQUIRE(found13.size() == 1);
  CHECK(found13[0] == p13);

  CHECK_THROWS_AS(tangency_point(q4, 1, 2), CertificateFailure);  // orthogonal pair
}

TEST_CASE("tangency points are fixed by the adjacent reflections") {
  const QuadraticForm q5 = build_Q(5);
  ReflectionSystem sys = tits_reflections(q5);
  for (std::size_t i = 1; i <= 5; ++i)
    for (std::size_t j = i + 1; j <= 5; ++j) {
      if (q5.entry(i, j) != -1) continue;
      const Vec p = tangency_point(q5, i, j);
      CHECK(sys.generator(i) * p == p);
      CHECK(sys.generator(j) * p == p);
    }
}

TEST_CASE("common_orthogonal") {
  const QuadraticForm q5 = build_Q(5);
  const Vec u = common_orthogonal(q5, {1, 2, 3, 4});
  for (std::size_t i = 1; i <= 4; ++i) CHECK(is_zero(q5.apply(basis_vec(5, i - 1), u)));
  CHECK(sgn(q5.norm(u)) > 0);
  CHECK(is_integral_vec(u));
  // Uniqueness: the constraint matrix has rank 4, checked by the minor oracle.
  Matrix constraints(4, 5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j) constraints.at(i, j) = q5.matrix().at(i, j);
  CHECK(oracles::minor_rank(constraints) == 4);

  // Three walls of the Q_4 system meeting the spacelike requirement: for
  // {1,2,3} the unique solution e_1 + e_3 is isotropic (it is the tangency
  // point of the pair (1,3)), so no common orthogonal hypersphere exists and
  // the operation fails; {1,2,4} does admit one.
  const QuadraticForm q4 = build_Q(4);
  CHECK_THROWS_AS(common_orthogonal(q4, {1, 2, 3}), CertificateFailure);
  const Vec u4 = common_orthogonal(q4, {1, 2, 4});
  CHECK(u4 == Vec{0, 1, -1, 1});
  CHECK(sgn(q4.norm(u4)) > 0);
  CHECK_THROWS_AS(common_orthogonal(q4, {1, 2}), CertificateFailure);
}

TEST_CASE("distinguished vectors bundle") {
  DistinguishedVectors dv = distinguished_vectors(build_Q(4));
  CHECK(dv.all_ones == Vec{1, 1, 1, 1});
  CHECK(dv.alt_signs.empty());
  CHECK(dv.tangency_points.count({1, 4}) == 1);
  CHECK(dv.tangency_points.at({1, 4}) == Vec{1, 0, 0, 1});

  DistinguishedVectors dv6 = distinguished_vectors(build_Q_prime(6));
  REQUIRE(dv6.alt_signs.size() == 1);
  CHECK(dv6.alt_signs[0] == alt_signs_vec(6));
}
