#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "toristack/error.hpp"
#include "toristack/lattice.hpp"

using namespace toristack;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

oracle::Mat to_mat(const IntegerMatrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

bool is_unimodular(const IntegerMatrix& u) {
  const Integer d = determinant(u);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  const auto a = IntegerMatrix::from_rows({{2, 0}, {0, 3}});
  const SmithForm s = smith_normal_form(a);
  CHECK(s.s == IntegerMatrix::from_rows({{1, 0}, {0, 6}}));
  CHECK(s.u * a * s.v == s.s);

  const auto b = IntegerMatrix::from_rows({{2, 4}, {0, 4}});
  CHECK(smith_normal_form(b).s == IntegerMatrix::from_rows({{2, 0}, {0, 4}}));
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const IntegerMatrix a = random_matrix(rng, rows, cols, trial % 3 == 0 ? 2 : 9);
    const SmithForm s = smith_normal_form(a);
    REQUIRE(s.u * a * s.v == s.s);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    CHECK(s.s.is_diagonal());
    const auto expected = oracle::smith_diagonal(to_mat(a));
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(s.s(k, k) == Integer(static_cast<long>(expected[k])));
  }
}

TEST_CASE("hermite normal form is canonical") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const IntegerMatrix a = random_matrix(rng, rows, cols, 6);
    const HermiteForm h = hermite_normal_form(a);
    REQUIRE(h.u * a == h.h);
    CHECK(is_unimodular(h.u));
    // a unimodular change of rows does not change the form
    IntegerMatrix w = IntegerMatrix::identity(rows);
    for (std::size_t i = 0; i + 1 < rows; ++i) w.add_row_multiple(i, i + 1, Integer(static_cast<long>(rng() % 5) - 2));
    if (rows > 1) w.swap_rows(0, rows - 1);
    CHECK(hermite_normal_form(w * a).h == h.h);
    // pivots positive, entries above pivots reduced
    std::size_t col = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      while (col < cols && h.h(i, col) == 0) ++col;
      if (col == cols) break;
      CHECK(h.h(i, col) > 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h.h(k, col) >= 0);
        CHECK(h.h(k, col) < h.h(i, col));
      }
      ++col;
    }
  }
}

TEST_CASE("cokernel invariants") {
  CHECK(cokernel_invariants(IntegerMatrix::from_rows({{2, 0}, {0, 3}})) == FiniteAbelianGroup({Integer(6)}));
  const auto g = cokernel_invariants(IntegerMatrix::from_rows({{2}, {0}}));
  CHECK(g.free_rank() == 1);
  CHECK(g.invariant_factors() == std::vector<Integer>{2});
  CHECK_FALSE(g.order().has_value());
  CHECK(cokernel_invariants(IntegerMatrix::identity(3)).is_trivial());
}

TEST_CASE("finite abelian groups validate their chain") {
  CHECK_THROWS_AS(FiniteAbelianGroup({Integer(2), Integer(3)}), DomainError);
  CHECK_THROWS_AS(FiniteAbelianGroup({Integer(1)}), DomainError);
  const FiniteAbelianGroup g({Integer(2), Integer(6)});
  CHECK(*g.order() == 12);
  CHECK(*g.exponent() == 6);
  CHECK(*FiniteAbelianGroup().exponent() == 1);
}

TEST_CASE("lattice index and saturation") {
  const std::vector<IntVector> gens{make_vector({1, 1, 0}), make_vector({1, -1, 0})};
  CHECK(*lattice_index(gens, 3) == 2);
  CHECK_FALSE(lattice_index(gens, 3, true).has_value());
  CHECK(*lattice_index({make_vector({2, 0}), make_vector({0, 3})}, 2, true) == 6);

  const auto sat = saturate(gens, 3);
  CHECK(sat == std::vector<IntVector>{make_vector({1, 0, 0}), make_vector({0, 1, 0})});
  CHECK(*lattice_index(sat, 3) == 1);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng() % 3, k = 1 + rng() % d;
    std::vector<IntVector> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(random_matrix(rng, 1, d, 5).row(0));
    if (rank(g) != k) continue;
    std::vector<oracle::Vec> og;
    for (const auto& v : g) og.push_back(oracle::to_vec(v));
    CHECK(*lattice_index(g, d) == Integer(static_cast<long>(oracle::lattice_index(og))));
    const auto s = saturate(g, d);
    CHECK(s.size() == k);
    CHECK(*lattice_index(s, d) == 1);
    // every generator lies in the saturated lattice with integer coordinates
    for (const auto& v : g) CHECK(is_integral(*solve_in_basis(s, v)));
    const auto comp = complete_to_basis(s, d);
    std::vector<IntVector> full = s;
    full.insert(full.end(), comp.begin(), comp.end());
    CHECK(is_unimodular(IntegerMatrix::from_columns(full, d)));
  }
}

TEST_CASE("complete_to_basis rejects a non-saturated lattice") {
  CHECK_THROWS_AS(complete_to_basis({make_vector({2, 0})}, 2), DomainError);
}

TEST_CASE("determinant and unimodular inverse") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const IntegerMatrix a = random_matrix(rng, n, n, 7);
    CHECK(determinant(a) == Integer(static_cast<long>(oracle::det(to_mat(a)))));
  }
  const auto u = IntegerMatrix::from_rows({{2, 1}, {1, 1}});
  CHECK(unimodular_inverse(u) * u == IntegerMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntegerMatrix::from_rows({{2, 0}, {0, 1}})), DomainError);
}

TEST_CASE("integer kernel") {
  const auto k = integer_kernel({make_vector({1, 2, 3})}, 3);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) {
    CHECK(dot(v, make_vector({1, 2, 3})) == 0);
    CHECK(content(v) == 1);
  }
  CHECK(integer_kernel({make_vector({1, 0}), make_vector({0, 1})}, 2).empty());
}

TEST_CASE("solve_in_basis") {
  const std::vector<IntVector> basis{make_vector({2, 0}), make_vector({0, 3})};
  const auto c = solve_in_basis(basis, make_vector({1, 1}));
  REQUIRE(c);
  CHECK((*c)[0] == Rational(1, 2));
  CHECK((*c)[1] == Rational(1, 3));
  CHECK_FALSE(solve_in_basis({make_vector({1, 0})}, make_vector({0, 1})).has_value());
}
