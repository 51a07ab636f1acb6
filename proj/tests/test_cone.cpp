#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "toristack/cone.hpp"
#include "toristack/error.hpp"

using namespace toristack;

namespace {

std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (auto r : rows) out.push_back(make_vector(r));
  return out;
}

}  // namespace

TEST_CASE("rays are primitive, deduplicated and sorted") {
  const RationalCone c(2, vs({{2, 4}, {1, 0}, {1, 1}, {3, 0}}));
  CHECK(c.rays() == vs({{1, 0}, {1, 2}}));
  CHECK(c.dim() == 2);
  CHECK(c.strictly_convex());
  CHECK(RationalCone::zero(3).rays().empty());
  CHECK(RationalCone::zero(3).dim() == 0);
}

TEST_CASE("cones with lines are rejected by the constructor") {
  CHECK_THROWS_AS(RationalCone(2, vs({{1, 0}, {-1, 0}})), DomainError);
  const auto c = RationalCone::from_generators(2, vs({{1, 0}, {-1, 0}, {0, 1}}));
  CHECK_FALSE(c.strictly_convex());
  CHECK(c.lineality().size() == 1);
  CHECK(c.rays().size() == 1);
}

TEST_CASE("dual cones") {
  const RationalCone sigma(2, vs({{1, 0}, {1, 3}}));
  const RationalCone dual = dual_cone(sigma);
  CHECK(dual.rays() == vs({{0, 1}, {3, -1}}));

  // the dual of a ray in Z^2 is a half-plane
  const RationalCone half = dual_cone(RationalCone(2, vs({{1, 0}})));
  CHECK_FALSE(half.strictly_convex());
  CHECK(half.dim() == 2);
  CHECK(contains(half, make_vector({0, -5})));
  CHECK_FALSE(contains(half, make_vector({-1, 0})));

  // the dual of the dual is the cone again
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const auto rays = oracle::random_cone(rng, d, 5);
    const RationalCone c(d, oracle::to_ivs(rays));
    CHECK(dual_cone(dual_cone(c)) == c);
    // rays of the dual are the oracle's dual rays
    auto expected = oracle::dual_rays(rays);
    std::sort(expected.begin(), expected.end());
    const RationalCone dual = dual_cone(c);
    std::vector<oracle::Vec> got;
    for (const auto& r : dual.rays()) got.push_back(oracle::to_vec(r));
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
  }
}

TEST_CASE("from_inequalities with non-simplicial output") {
  // square-based pyramid over (±1, ±1, 1)
  const auto c = RationalCone::from_inequalities(3, vs({{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}}));
  CHECK(c.rays() == vs({{-1, -1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, 1}}));
  CHECK_FALSE(is_simplicial(c));
  CHECK(is_full_dimensional(c));
}

TEST_CASE("membership agrees with Caratheodory") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long long> dist(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + rng() % 2, n = 2 + rng() % 3;
    std::vector<oracle::Vec> gens;
    for (std::size_t i = 0; i < n; ++i) {
      oracle::Vec v(d);
      for (auto& x : v) x = dist(rng);
      gens.push_back(v);
    }
    const auto c = RationalCone::from_generators(d, oracle::to_ivs(gens));
    for (int k = 0; k < 20; ++k) {
      oracle::Vec x(d);
      for (auto& e : x) e = dist(rng);
      CHECK(contains(c, oracle::to_iv(x)) == oracle::cone_contains(gens, x));
    }
  }
}

TEST_CASE("faces and intersections") {
  const RationalCone c(2, vs({{1, 0}, {1, 2}}));
  CHECK(is_face(c, RationalCone(2, vs({{1, 0}}))));
  CHECK(is_face(c, RationalCone::zero(2)));
  CHECK(is_face(c, c));
  CHECK_FALSE(is_face(c, RationalCone(2, vs({{1, 1}}))));
  CHECK_FALSE(is_face(c, RationalCone(2, vs({{0, 1}}))));

  const RationalCone a(2, vs({{1, 0}, {0, 1}}));
  const RationalCone b(2, vs({{1, 1}, {-1, 1}}));
  CHECK(intersect(a, b) == RationalCone(2, vs({{1, 1}, {0, 1}})));
}

TEST_CASE("multiplicity matches the determinant") {
  CHECK(multiplicity(RationalCone(2, vs({{1, 0}, {1, 2}}))) == 2);
  CHECK(multiplicity(RationalCone(3, vs({{1, 1, 0}, {1, -1, 0}}))) == 2);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const auto rays = oracle::random_cone(rng, d, 5);
    const long long det = oracle::det(oracle::from_columns(rays));
    CHECK(multiplicity(RationalCone(d, oracle::to_ivs(rays))) == Integer(static_cast<long>(det < 0 ? -det : det)));
  }
}

TEST_CASE("ray_star") {
  const RationalCone c(2, vs({{1, 0}, {1, 2}}));
  CHECK(ray_star(c, make_vector({1, 0})) == make_vector({2, -1}));
  CHECK(ray_star(c, make_vector({1, 2})) == make_vector({0, 1}));
}

TEST_CASE("relative interior point") {
  const RationalCone c(2, vs({{1, 0}, {1, 2}}));
  CHECK(relative_interior_point(c) == make_vector({2, 2}));
  CHECK_THROWS_AS(relative_interior_point(RationalCone::zero(2)), DomainError);
}
