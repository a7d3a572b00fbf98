#include <doctest.h>

#include <cmath>
#include <random>

#include "conelcp/classify.hpp"
#include "conelcp/lcp.hpp"
#include "conelcp/orbit.hpp"
#include "support.hpp"

using namespace conelcp;

namespace {

const Matrix kSplit = Matrix::diagonal(Vector{1, -1});
const Matrix kDgnl = Matrix::from_rows({{-1, 2}, {0, 1}});

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("apply and compose") {
  CHECK(apply(Congruence::identity(2), kDgnl) == kDgnl);
  CHECK(apply(Congruence(kSplit), kDgnl) == Matrix::from_rows({{-1, -2}, {0, 1}}));
  CHECK_THROWS_AS(Congruence(Matrix::from_rows({{1, 1}, {1, 1}})), Error);

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = testing::uniform_dim(rng, 1, 6);
    const Matrix a = testing::normal_matrix(m, rng);
    const Congruence c1 = random_congruence(m, rng);
    const Congruence c2 = random_congruence(m, rng);
    const Matrix lhs = apply(c2, apply(c1, a));
    REQUIRE(compose(c1, c2).factor() == c1.factor() * c2.factor());
    REQUIRE(max_abs_diff(lhs, apply(compose(c1, c2), a)) <= 1e-9 * (1.0 + lhs.max_abs()));
  }
}

TEST_CASE("sign_flip_non_f_witness") {
  const CongruenceWitness w = sign_flip_non_f_witness(kDgnl);
  CHECK(w.congruence.factor() == kSplit);
  CHECK(w.member == Matrix::from_rows({{-1, -2}, {0, 1}}));
  CHECK(std::get<NonFCertificate>(w.certificate).q == Vector{-1, 0});
  CHECK(reconstruction_residual(kDgnl, w) <= 1e-10);
  CHECK(verify_witness(kDgnl, w));

  const CongruenceWitness s = sign_flip_non_f_witness(kSplit);
  CHECK(s.member == Matrix::diagonal(Vector{-1, 1}));
  CHECK(std::get<NonFCertificate>(s.certificate).q == Vector{-1, 0});
  CHECK(verify_witness(kSplit, s));

  CHECK(code_of([] { sign_flip_non_f_witness(Matrix::identity(2)); }) == ErrorCode::NoNonpositiveDiagonal);
}

TEST_CASE("sign-flip witnesses are sound") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = testing::uniform_dim(rng, 1, 8);
    Matrix a = testing::normal_matrix(m, rng);
    const std::size_t k = testing::uniform_dim(rng, 0, m - 1);
    a(k, k) = -std::abs(a(k, k));
    const CongruenceWitness w = sign_flip_non_f_witness(a);
    const auto& cert = std::get<NonFCertificate>(w.certificate);
    for (double v : w.member.row(cert.row)) REQUIRE(v <= 1e-9);
    REQUIRE(verify_witness(a, w));
    REQUIRE(enumerate_solutions({w.member, cert.q}, 1e-9).empty());
    REQUIRE_FALSE(has_feasible_point(w.member, cert.q));
  }
}

TEST_CASE("expose_positive_diagonal") {
  const Matrix a = Matrix::from_rows({{0, 2}, {0, 0}});
  const DiagonalExposure e = expose_positive_diagonal(a);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(e.congruence.factor(), Matrix::from_rows({{r, r}, {r, -r}})) < 1e-15);
  CHECK(max_abs_diff(e.member, Matrix::from_rows({{1, -1}, {1, -1}})) < 1e-15);

  const Matrix s = Matrix::from_rows({{3, 1, 0}, {1, -2, 1}, {0, 1, 1}});
  const DiagonalExposure sym = expose_positive_diagonal(s);
  CHECK(max_abs_diff(sym.member.diag(), sym.eigenvalues) < 1e-12);
  CHECK(max_abs_diff(sym.eigenvalues, sym_eigen(s).eigenvalues) == 0.0);

  CHECK(code_of([] { expose_positive_diagonal(Matrix::from_rows({{0, 1}, {-1, 0}})); }) ==
        ErrorCode::NoPositiveForm);
}

TEST_CASE("positivize") {
  SUBCASE("diag(1,-1) under the t-rule") {
    const CongruenceWitness w = positivize(kSplit);
    const auto& cert = std::get<PositiveQCertificate>(w.certificate);
    const double t = 2.0 * std::sqrt(1.0 + 1e-9) + 1.0;
    REQUIRE(cert.shears.size() == 1);
    CHECK(cert.shears[0] == doctest::Approx(t).epsilon(1e-15));
    const Matrix member = Matrix::from_rows({{t * t - 1.0, t}, {t, 1.0}});
    CHECK(max_abs_diff(w.member, member) <= 1e-12);
    CHECK(max_abs_diff(w.member, Matrix::from_rows({{8, 3}, {3, 1}})) <= 1e-8);
    CHECK(max_abs_diff(w.congruence.factor(), Matrix::from_rows({{t, 1}, {1, 0}})) <= 1e-12);
    CHECK(reconstruction_residual(kSplit, w) <= 1e-10);
    CHECK(verify_witness(kSplit, w));
  }
  SUBCASE("already positive") {
    const Matrix a = Matrix::from_rows({{3, 2}, {2, 1}});
    const CongruenceWitness w = positivize(a);
    CHECK(w.congruence.factor() == Matrix::identity(2));
    CHECK(w.member == a);
  }
  SUBCASE("one shear step") {
    const Matrix a = Matrix::from_rows({{1, -5}, {-5, 1}});
    const CongruenceWitness w = positivize(a);
    CHECK(std::get<PositiveQCertificate>(w.certificate).shears.size() == 1);
    CHECK(min_entry(w.member.data()) > 1e-9);
    CHECK(reconstruction_residual(a, w) <= 1e-10 * (1.0 + w.member.max_abs()));
  }
  CHECK(code_of([] { positivize(-1.0 * Matrix::identity(2)); }) == ErrorCode::NoPositiveDiagonal);
}

TEST_CASE("indefinite_witnesses") {
  const OrbitWitnesses split = indefinite_witnesses(kSplit);
  CHECK(std::get<NonFCertificate>(split.non_f.certificate).q == Vector{-1, 0});
  CHECK(has_f_property(split.non_f.member).certified_false());
  CHECK(min_entry(split.positive_q.member.data()) > 1e-9);

  const Matrix upper = Matrix::from_rows({{1, 3}, {0, 1}});
  const OrbitWitnesses w = indefinite_witnesses(upper);
  CHECK(is_p_matrix(upper).certified_true());
  CHECK(verify_witness(upper, w.non_f));
  CHECK(has_f_property(w.non_f.member).certified_false());
  CHECK(verify_witness(upper, w.positive_q));
  CHECK(q_property_check(w.positive_q.member, 50, 0).certified_true());

  CHECK(code_of([] { indefinite_witnesses(Matrix::identity(2)); }) == ErrorCode::NotIndefinite);
}

TEST_CASE("cone_witnesses") {
  const ConeWitnesses cw = cone_witnesses(kSplit, 1e-9, 50, 3);
  CHECK(cw.non_f_cone.generators() == cw.orbit.non_f.congruence.factor());
  CHECK(cw.q_cone.generators() == cw.orbit.positive_q.congruence.factor());
  CHECK(check_cone_non_f(kSplit, cw.non_f_cone, cw.infeasible_q));
  CHECK(cw.solved_samples == cw.samples);

  // With L₁ = I the transported certificate is the classical one.
  const Matrix a = Matrix::from_rows({{-1, -1}, {0, 2}});
  const ConeWitnesses id = cone_witnesses(a, 1e-9, 10, 0);
  if (id.non_f_cone.generators() == Matrix::identity(2))
    CHECK(id.infeasible_q == std::get<NonFCertificate>(id.orbit.non_f.certificate).q);

  CHECK(code_of([] { cone_witnesses(Matrix::identity(2)); }) == ErrorCode::NotIndefinite);
}

TEST_CASE("congruence_to_identity") {
  CHECK(congruence_to_identity(Matrix::identity(2)).factor() == Matrix::identity(2));
  CHECK(max_abs_diff(congruence_to_identity(Matrix::diagonal(Vector{4, 9})).factor(),
                     Matrix::diagonal(Vector{0.5, 1.0 / 3.0})) < 1e-15);
  const Matrix a = Matrix::from_rows({{2, 1}, {1, 2}});
  const Congruence l = congruence_to_identity(a);
  CHECK(max_abs_diff(l.factor(), inverse(sqrt_spd(a))) < 1e-14);
  CHECK(max_abs_diff(apply(l, a), Matrix::identity(2)) < 1e-14);
  const CongruenceWitness w = identity_orbit_witness(a);
  CHECK(verify_witness(a, w));
  CHECK(code_of([] { congruence_to_identity(kSplit); }) == ErrorCode::NotPositiveDefinite);
}
