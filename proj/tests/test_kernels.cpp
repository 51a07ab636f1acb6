#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "toristack/kernels.hpp"

using namespace toristack;
using kernels::Execution;

TEST_CASE("parallelepiped points form a system of coset representatives") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const auto rays = oracle::random_cone(rng, d, 5);
    const IntegerMatrix t = IntegerMatrix::from_columns(oracle::to_ivs(rays), d);
    const auto p = kernels::parallelepiped_points(t, Execution::serial);
    const long long det = oracle::det(oracle::from_columns(rays));
    REQUIRE(p.volume == Integer(static_cast<long>(det < 0 ? -det : det)));
    REQUIRE(p.points.size() == static_cast<std::size_t>(det < 0 ? -det : det));
    CHECK(is_zero(p.points.front()));
    std::set<IntVector> distinct(p.points.begin(), p.points.end());
    CHECK(distinct.size() == p.points.size());
    for (std::size_t i = 0; i < p.points.size(); ++i) {
      // T c = vol * point, with 0 <= c_k < vol
      IntVector tc = t * p.coefficients[i];
      CHECK(tc == scale(p.points[i], p.volume));
      for (const auto& c : p.coefficients[i]) {
        CHECK(c >= 0);
        CHECK(c < p.volume);
      }
    }
  }
}

TEST_CASE("parallel and serial kernels agree") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + rng() % 2;
    const auto u = oracle::dual_rays(oracle::random_cone(rng, d, 5));
    const IntegerMatrix t = IntegerMatrix::from_columns(oracle::to_ivs(u), d);
    const auto s = kernels::parallelepiped_points(t, Execution::serial);
    const auto p = kernels::parallelepiped_points(t, Execution::parallel);
    CHECK(s.points == p.points);
    CHECK(s.coefficients == p.coefficients);
    std::vector<IntVector> coeffs(s.coefficients.begin() + 1, s.coefficients.end());
    CHECK(kernels::irreducible_indices(coeffs, Execution::serial) ==
          kernels::irreducible_indices(coeffs, Execution::parallel));
  }
  CHECK(kernels::max_threads() >= 1);
}

TEST_CASE("irreducible filter on a chain") {
  // 1, 2, 3 along one generator: only the first is irreducible
  const std::vector<IntVector> c{make_vector({3}), make_vector({1}), make_vector({2})};
  CHECK(kernels::irreducible_indices(c, Execution::serial) == std::vector<std::size_t>{1});
  // incomparable elements are all kept
  const std::vector<IntVector> e{make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1})};
  CHECK(kernels::irreducible_indices(e, Execution::serial) == std::vector<std::size_t>{0, 1});
}
