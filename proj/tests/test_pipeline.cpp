#include <doctest.h>

#include "coxcert/bundle_io.hpp"
#include "coxcert/forms.hpp"
#include "coxcert/pipeline.hpp"

using namespace coxcert;

TEST_CASE("build_2ngon at n = 3") {
  const BuildResult r = build_2ngon(3, 64);
  const CertificateBundle& b = r.bundle;
  CHECK_FALSE(r.max_power_exhausted);
  CHECK(b.variant == "polygon-2n");
  CHECK(b.generators.size() == 6);
  CHECK(b.all_pass());
  REQUIRE(b.translation.has_value());
  CHECK(b.translation->k >= 1);

  // Gram pattern of the hexagon normals, including the wrap-around pairs
  // S_4 orthogonal to tau S_3 and tau S_2 orthogonal to S_1.
  const QuadraticForm q4(b.form);
  const Matrix& tau = b.translation->matrix;
  std::vector<Vec> normals = {basis_vec(4, 0), basis_vec(4, 1), basis_vec(4, 2), basis_vec(4, 3),
                              tau * basis_vec(4, 2), tau * basis_vec(4, 1)};
  GramCertificate cert = polygon_gram_certificate(normals, q4);
  REQUIRE(cert.pass);
  CHECK(is_zero(cert.gram.at(3, 4)));  // S_4 vs tau S_3
  CHECK(is_zero(cert.gram.at(5, 0)));  // tau S_2 vs S_1
  DensityReport density = zariski_density_certificate(normals, q4);
  CHECK(density.rank == 4);
  CHECK(density.pass);

  CHECK_THROWS_AS(build_2ngon(2), ContractViolation);
}

TEST_CASE("bundle certificate ids are complete for polygon builds") {
  const CertificateBundle b = build_2ngon(3, 64).bundle;
  for (const char* id : {"signature", "construction", "generator-properties", "relations",
                         "parabolic-witnesses", "gram-pattern", "zariski-density",
                         "sheet-preservation", "translation-unipotent", "nonuniformity-witness"}) {
    const CertificateRecord* c = b.find_certificate(id);
    REQUIRE_MESSAGE(c != nullptr, id);
    CHECK_MESSAGE(c->pass, id << ": " << c->evidence);
  }
}

TEST_CASE("translation commutes with the boundary reflections") {
  for (std::size_t n : {std::size_t{3}, std::size_t{4}}) {
    const CertificateBundle b = build_2ngon(n, 64).bundle;
    const QuadraticForm q(b.form);
    ReflectionSystem sys = tits_reflections(q);
    const Matrix& tau = b.translation->matrix;
    const Matrix tau_inv = inverse(tau);
    CHECK(tau * sys.generator(1) * tau_inv == sys.generator(1));
    CHECK(tau * sys.generator(n + 1) * tau_inv == sys.generator(n + 1));
  }
}

TEST_CASE("gram certificate stays valid beyond the minimal power") {
  for (std::size_t n : {std::size_t{3}, std::size_t{4}}) {
    const CertificateBundle b = build_2ngon(n, 64).bundle;
    const QuadraticForm q(b.form);
    const Transvection base = transvection(q, b.translation->p, b.translation->v);
    const long kmin = b.translation->k;
    for (long k = kmin; k <= kmin + 2; ++k) {
      const Matrix tau = transvection_power(q, base, k).matrix;
      std::vector<Vec> normals;
      for (std::size_t a = 0; a <= n; ++a) normals.push_back(basis_vec(n + 1, a));
      for (std::size_t s = n; s >= 2; --s) normals.push_back(tau * basis_vec(n + 1, s - 1));
      CHECK(polygon_gram_certificate(normals, q).pass);
    }
  }
}

TEST_CASE("build_2n_minus_2_gon") {
  const BuildResult r4 = build_2n_minus_2_gon(4, 64);
  CHECK(r4.bundle.variant == "polygon-2n-2");
  CHECK(r4.bundle.generators.size() == 6);
  CHECK(r4.bundle.form == build_Q(5).matrix());
  CHECK(r4.bundle.all_pass());
  const CertificateRecord* density = r4.bundle.find_certificate("zariski-density");
  REQUIRE(density != nullptr);
  CHECK(density->evidence.find("rank 5/5") != std::string::npos);

  const BuildResult r5 = build_2n_minus_2_gon(5, 64);
  CHECK(r5.bundle.generators.size() == 8);
  CHECK(r5.bundle.form == build_Q(6).matrix());
  CHECK(r5.bundle.all_pass());

  CHECK_THROWS_AS(build_2n_minus_2_gon(3), ContractViolation);
}

TEST_CASE("build_even") {
  const CertificateBundle b4 = build_even(4).bundle;
  CHECK(b4.variant == "even-prime");
  CHECK(b4.generators.size() == 5);
  CHECK(b4.all_pass());
  CHECK(b4.translation == std::nullopt);

  const CertificateBundle b6 = build_even(6).bundle;
  CHECK(b6.generators.size() == 7);
  CHECK(b6.all_pass());

  CHECK_THROWS_AS(build_even(5), ContractViolation);
  CHECK_THROWS_AS(build_even(3), ContractViolation);
}

TEST_CASE("project_pi") {
  CHECK(project_pi(5, Matrix::identity(6)).is_identity());

  const QuadraticForm qp = build_Q_prime(6);
  ReflectionSystem sys6 = tits_reflections(qp);
  ReflectionSystem sys5 = tits_reflections(build_Q(5));
  for (std::size_t i = 1; i <= 5; ++i)
    CHECK(project_pi(5, sys6.generator(i)) == sys5.generator(i));

  // The projection of the extra generator still lands in O(Q_5; Z).
  const Matrix extra = project_pi(5, sys6.generator(6));
  CHECK(extra.is_integral());
  CHECK(build_Q(5).preserved_by(extra));

  // Homomorphism on a handful of fixed products.
  const Matrix a = sys6.generator(2) * sys6.generator(5) * sys6.generator(1);
  const Matrix b = sys6.generator(6) * sys6.generator(3);
  CHECK(project_pi(5, a * b) == project_pi(5, a) * project_pi(5, b));

  CHECK_THROWS_AS(project_pi(4, Matrix::identity(5)), ContractViolation);
  CHECK_THROWS_AS(project_pi(5, Matrix::identity(6) * Rational(2)), ContractViolation);
}

TEST_CASE("build_odd_projected") {
  const CertificateBundle b5 = build_odd_projected(5).bundle;
  CHECK(b5.variant == "odd-projected");
  CHECK(b5.all_pass());
  for (const char* id : {"signature", "kernel-alt-signs", "kernel-stabilized",
                         "projection-identity", "projection-integrality",
                         "projection-homomorphism", "injectivity-sample"}) {
    const CertificateRecord* c = b5.find_certificate(id);
    REQUIRE_MESSAGE(c != nullptr, id);
    CHECK_MESSAGE(c->pass, id << ": " << c->evidence);
  }
  CHECK_THROWS_AS(build_odd_projected(4), ContractViolation);
}

TEST_CASE("hnn samples evaluate to nonidentity") {
  const CertificateBundle b = build_2ngon(3, 64).bundle;
  const QuadraticForm q(b.form);
  ReflectionSystem sys = tits_reflections(q);
  const Matrix& tau = b.translation->matrix;

  CHECK_FALSE(tau.is_identity());  // the word "t" alone
  const Matrix g2 = sys.generator(2);
  CHECK_FALSE((g2 * tau * g2 * inverse(tau)).is_identity());

  HnnReport rep = hnn_sample_check(b, 4, 200, 0x1234u);
  CHECK(rep.samples == 200);
  CHECK(rep.identity_evaluations == 0);
  CHECK(rep.pass);

  // Deterministic under the seed.
  HnnReport rep2 = hnn_sample_check(b, 4, 200, 0x1234u);
  CHECK(rep2.samples == rep.samples);
  CHECK(rep2.identity_evaluations == rep.identity_evaluations);
}

TEST_CASE("word problem crosscheck at small length") {
  const CertificateBundle b = build_2ngon(3, 64).bundle;
  CrosscheckReport rep = word_problem_crosscheck(b, 4);
  CHECK(rep.pass);
  CHECK(rep.mismatches == 0);
  CHECK(rep.words_checked == 1 + 6 + 36 + 216 + 1296);
  // r_i r_i and adjacent commutators [r_i, r_{i+1}] land on the identity.
  CHECK(rep.trivial_words > 6);
  CHECK(rep.trivial_words == rep.identity_matrices);
}

TEST_CASE("rebuild determinism and verification closure") {
  const CertificateBundle a = build_2ngon(4, 64).bundle;
  const CertificateBundle b = build_2ngon(4, 64).bundle;
  CHECK(serialize_bundle(a) == serialize_bundle(b));

  for (const CertificateBundle& bundle :
       {build_2ngon(3, 64).bundle, build_2n_minus_2_gon(4, 64).bundle, build_even(4).bundle,
        build_odd_projected(5).bundle}) {
    VerifyReport rep = verify_bundle(bundle);
    CHECK_MESSAGE(rep.ok, bundle.variant << ": " << rep.detail);
  }
}
