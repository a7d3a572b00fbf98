#include <doctest.h>

#include <random>

#include "conelcp/cones.hpp"
#include "support.hpp"

using namespace conelcp;

namespace {
const Matrix kShear = Matrix::from_rows({{1, 1}, {0, 1}});
}

TEST_CASE("cone_from_generators") {
  CHECK(cone_from_generators(Matrix::identity(2)).inv_generators() == Matrix::identity(2));
  const SimplicialCone k = cone_from_generators(kShear);
  CHECK(k.generators().column(0) == Vector{1, 0});
  CHECK(k.generators().column(1) == Vector{1, 1});
  CHECK(max_abs_diff(k.inv_generators(), Matrix::from_rows({{1, -1}, {0, 1}})) == 0.0);
  CHECK_THROWS_AS(cone_from_generators(Matrix::from_rows({{1, 2}, {2, 4}})), Error);
}

TEST_CASE("dual cone") {
  CHECK(dual(SimplicialCone::orthant(2)).generators() == Matrix::identity(2));
  const SimplicialCone d = dual(cone_from_generators(kShear));
  CHECK(d.generators().column(0) == Vector{1, -1});
  CHECK(d.generators().column(1) == Vector{0, 1});

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const SimplicialCone k(testing::random_invertible(testing::uniform_dim(rng, 1, 6), rng));
    REQUIRE(max_abs_diff(dual(dual(k)).generators(), k.generators()) <= 1e-9);
  }
}

TEST_CASE("membership") {
  const SimplicialCone orthant = SimplicialCone::orthant(2);
  const SimplicialCone k = cone_from_generators(kShear);
  CHECK(contains(orthant, Vector{1, 0}));
  CHECK(contains(k, Vector{2, 1}));
  CHECK(max_abs_diff(k.coordinates(Vector{2, 1}), Vector{1, 1}) == 0.0);
  CHECK_FALSE(contains(k, Vector{0, 1}));
  CHECK(max_abs_diff(k.coordinates(Vector{0, 1}), Vector{-1, 1}) == 0.0);
  CHECK(k.violation(Vector{0, 1}) == 1.0);

  CHECK(dual_contains(orthant, Vector{0, 1}));
  CHECK(dual_contains(k, Vector{1, 0}));
  CHECK_FALSE(dual_contains(k, Vector{-1, 2}));
}

TEST_CASE("image_cone") {
  const SimplicialCone orthant = SimplicialCone::orthant(2);
  CHECK(image_cone(Matrix::identity(2), orthant).generators() == Matrix::identity(2));
  CHECK(image_cone(kShear, orthant).generators() == kShear);

  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = testing::uniform_dim(rng, 1, 6);
    const Matrix l = testing::random_invertible(m, rng);
    const SimplicialCone k(testing::random_invertible(m, rng));
    const SimplicialCone lhs = dual(image_cone(l, k));
    const SimplicialCone rhs = image_cone(inverse(l).transpose(), dual(k));
    REQUIRE(max_abs_diff(lhs.generators(), rhs.generators()) <= 1e-8 * (1.0 + lhs.generators().max_abs()));
  }
}

TEST_CASE("duality pairing is nonnegative") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = testing::uniform_dim(rng, 1, 6);
    const SimplicialCone k(testing::random_invertible(m, rng));
    const Vector x = k.generators() * testing::uniform_vector(m, rng, 0.0, 1.0);
    const Vector y = dual(k).generators() * testing::uniform_vector(m, rng, 0.0, 1.0);
    REQUIRE(dot(x, y) >= -1e-9);
    REQUIRE(contains(k, x, 1e-9 * (1.0 + norm_inf(x))));
    REQUIRE(dual_contains(k, y, 1e-9 * (1.0 + norm_inf(y))));
  }
}
