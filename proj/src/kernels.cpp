#include "toristack/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "toristack/error.hpp"

namespace toristack::kernels {

namespace {

// Enumeration sizes beyond this are not desk scale.
constexpr std::uint64_t kMaxPoints = 50'000'000;

struct CosetMap {
  std::size_t k = 0;
  Integer volume;
  int sign = 1;
  IntegerMatrix adjugate;  // det(T) * T^{-1}
  IntegerMatrix u_inverse;
  std::vector<std::uint64_t> radix;  // nontrivial Smith factors
  std::vector<std::size_t> radix_row;
};

CosetMap prepare(const IntegerMatrix& t) {
  if (t.rows() != t.cols()) throw DomainError("parallelepiped_points: matrix must be square");
  CosetMap m;
  m.k = t.rows();
  const Integer det = determinant(t);
  if (det == 0) throw DomainError("parallelepiped_points: singular matrix");
  m.volume = abs(det);
  m.sign = det > 0 ? 1 : -1;
  if (m.volume > kMaxPoints) throw DomainError("parallelepiped_points: volume " + to_string(m.volume) + " too large");

  // adj(T) = det * T^{-1}; column j of T^{-1} solves T x = e_j.
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < m.k; ++j) cols.push_back(t.column(j));
  m.adjugate = IntegerMatrix(m.k, m.k);
  for (std::size_t j = 0; j < m.k; ++j) {
    RationalVector e(m.k);
    e[j] = 1;
    const auto x = solve_in_basis(cols, e);
    for (std::size_t i = 0; i < m.k; ++i) {
      const Rational v = (*x)[i] * det;
      if (v.get_den() != 1) throw InternalError("adjugate is not integral");
      m.adjugate(i, j) = v.get_num();
    }
  }

  const SmithForm snf = smith_normal_form(t);
  m.u_inverse = unimodular_inverse(snf.u);
  for (std::size_t i = 0; i < m.k; ++i) {
    if (snf.s(i, i) > 1) {
      m.radix.push_back(snf.s(i, i).get_ui());
      m.radix_row.push_back(i);
    }
  }
  return m;
}

// Coset representative number `index` reduced into the parallelepiped.
void point_at(const CosetMap& m, const IntegerMatrix& t, std::uint64_t index, IntVector& point, IntVector& coeff) {
  IntVector y(m.k, Integer(0));
  for (std::size_t r = 0; r < m.radix.size(); ++r) {
    y[m.radix_row[r]] = static_cast<unsigned long>(index % m.radix[r]);
    index /= m.radix[r];
  }
  const IntVector x = m.u_inverse * y;
  coeff = m.adjugate * x;
  for (auto& c : coeff) {
    if (m.sign < 0) c = -c;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.volume.get_mpz_t());
  }
  point = t * coeff;
  for (auto& p : point) p /= m.volume;
}

template <typename Scalar>
std::vector<std::size_t> filter_irreducible(const std::vector<std::vector<Scalar>>& coeffs, Execution exec) {
  const std::size_t n = coeffs.size();
  std::vector<Scalar> degree(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& c : coeffs[i]) degree[i] += c;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });

  auto dominated_by = [&](std::size_t x, std::size_t y) {
    const auto& cx = coeffs[x];
    const auto& cy = coeffs[y];
    for (std::size_t j = 0; j < cx.size(); ++j)
      if (cy[j] > cx[j]) return false;
    return true;
  };

  // Elements of equal degree never reduce one another, so each degree layer
  // is checked in parallel against the irreducibles of lower degree.
  std::vector<std::size_t> irreducible;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end < n && degree[order[end]] == degree[order[start]]) ++end;
    std::vector<char> keep(end - start, 0);
    const std::size_t known = irreducible.size();
    auto check = [&](std::size_t slot) {
      const std::size_t x = order[start + slot];
      for (std::size_t q = 0; q < known; ++q)
        if (dominated_by(x, irreducible[q])) return;
      keep[slot] = 1;
    };
    const auto layer = static_cast<std::int64_t>(end - start);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t s = 0; s < layer; ++s) check(static_cast<std::size_t>(s));
    } else {
      for (std::int64_t s = 0; s < layer; ++s) check(static_cast<std::size_t>(s));
    }
    for (std::size_t s = 0; s < keep.size(); ++s)
      if (keep[s]) irreducible.push_back(order[start + s]);
    start = end;
  }
  std::sort(irreducible.begin(), irreducible.end());
  return irreducible;
}

}  // namespace

Parallelepiped parallelepiped_points(const IntegerMatrix& t, Execution exec) {
  const CosetMap m = prepare(t);
  const std::uint64_t count = m.volume.get_ui();
  Parallelepiped out;
  out.volume = m.volume;
  out.points.assign(count, IntVector());
  out.coefficients.assign(count, IntVector());
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      point_at(m, t, static_cast<std::uint64_t>(i), out.points[static_cast<std::size_t>(i)],
               out.coefficients[static_cast<std::size_t>(i)]);
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      point_at(m, t, static_cast<std::uint64_t>(i), out.points[static_cast<std::size_t>(i)],
               out.coefficients[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<std::size_t> irreducible_indices(const std::vector<IntVector>& coefficients, Execution exec) {
  // Fast path on machine integers when every degree fits comfortably.
  Integer bound = 0;
  for (const auto& c : coefficients) {
    Integer s = 0;
    for (const auto& x : c) {
      if (x < 0) throw DomainError("irreducible_indices: negative coefficient");
      s += x;
    }
    if (s > bound) bound = s;
  }
  if (bound < Integer(std::numeric_limits<std::int64_t>::max() / 4)) {
    std::vector<std::vector<std::int64_t>> small;
    small.reserve(coefficients.size());
    for (const auto& c : coefficients) {
      std::vector<std::int64_t> v;
      v.reserve(c.size());
      for (const auto& x : c) v.push_back(x.get_si());
      small.push_back(std::move(v));
    }
    return filter_irreducible(small, exec);
  }
  return filter_irreducible(coefficients, exec);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace toristack::kernels
