#include "toristack/lattice.hpp"

#include <algorithm>
#include <utility>

#include "toristack/error.hpp"

namespace toristack {

// IntegerMatrix ----------------------------------------------------------

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntegerMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DomainError("from_columns: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("from_rows: row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> rs;
  for (auto r : rows) rs.push_back(make_vector(r));
  return from_rows(rs, rs.empty() ? 0 : rs.front().size());
}

IntVector IntegerMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntegerMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("matrix product: dimension mismatch");
  IntegerMatrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

IntVector IntegerMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw DomainError("matrix-vector product: dimension mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool IntegerMatrix::operator==(const IntegerMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         std::equal(data_.begin(), data_.end(), other.data_.begin(),
                    [](const Integer& a, const Integer& b) { return a == b; });
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

void IntegerMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntegerMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

bool IntegerMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

// FiniteAbelianGroup -----------------------------------------------------

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Integer> invariant_factors, std::size_t free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw DomainError("invariant factor " + to_string(factors_[i]) + " is < 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw DomainError("invariant factors do not form a divisibility chain");
  }
}

std::optional<Integer> FiniteAbelianGroup::order() const {
  if (free_rank_ != 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::optional<Integer> FiniteAbelianGroup::exponent() const {
  if (free_rank_ != 0) return std::nullopt;
  return factors_.empty() ? Integer(1) : factors_.back();
}

bool FiniteAbelianGroup::operator==(const FiniteAbelianGroup& other) const {
  return free_rank_ == other.free_rank_ && factors_.size() == other.factors_.size() &&
         std::equal(factors_.begin(), factors_.end(), other.factors_.begin(),
                    [](const Integer& a, const Integer& b) { return a == b; });
}

// Normal forms -----------------------------------------------------------

namespace {

// Floor division for the reduction step; GMP's operator/ truncates.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntegerMatrix& a) {
  IntegerMatrix h = a;
  IntegerMatrix u = IntegerMatrix::identity(a.rows());
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
    // Euclid on column `col` over rows pivot_row.. until one nonzero remains.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = pivot_row; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        if (best == h.rows() || abs(h(i, col)) < abs(h(best, col))) best = i;
      }
      if (best == h.rows()) break;
      h.swap_rows(pivot_row, best);
      u.swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        Integer q = h(i, col) / h(pivot_row, col);
        h.add_row_multiple(i, pivot_row, -q);
        u.add_row_multiple(i, pivot_row, -q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, col) == 0) continue;
    if (h(pivot_row, col) < 0) {
      h.negate_row(pivot_row);
      u.negate_row(pivot_row);
    }
    const Integer p = h(pivot_row, col);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Integer q = floor_div(h(i, col), p);
      h.add_row_multiple(i, pivot_row, -q);
      u.add_row_multiple(i, pivot_row, -q);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u)};
}

SmithForm smith_normal_form(const IntegerMatrix& a) {
  IntegerMatrix s = a;
  IntegerMatrix u = IntegerMatrix::identity(a.rows());
  IntegerMatrix v = IntegerMatrix::identity(a.cols());
  const std::size_t n = std::min(s.rows(), s.cols());

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = s.rows(), pj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (pi == s.rows() || abs(s(i, j)) < abs(s(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == s.rows()) break;
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Integer q = s(i, t) / s(t, t);
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Integer q = s(t, j) / s(t, t);
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the remaining block; otherwise fold an offending
      // row in and repeat.
      std::size_t bad_row = s.rows();
      for (std::size_t i = t + 1; i < s.rows() && bad_row == s.rows(); ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == s.rows()) break;
      s.add_row_multiple(t, bad_row, 1);
      u.add_row_multiple(t, bad_row, 1);
    }
    if (t < s.rows() && t < s.cols() && s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

FiniteAbelianGroup cokernel_invariants(const IntegerMatrix& a) {
  const SmithForm snf = smith_normal_form(a);
  std::vector<Integer> factors;
  std::size_t r = 0;
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = snf.s(i, i);
    if (d == 0) continue;
    ++r;
    if (d != 1) factors.push_back(d);
  }
  return FiniteAbelianGroup(std::move(factors), a.rows() - r);
}

std::size_t rank(const IntegerMatrix& a) {
  const HermiteForm hf = hermite_normal_form(a);
  std::size_t r = 0;
  for (std::size_t i = 0; i < hf.h.rows(); ++i)
    if (!is_zero(hf.h.row(i))) ++r;
  return r;
}

std::size_t rank(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  return rank(IntegerMatrix::from_rows(vectors, vectors.front().size()));
}

Integer determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::optional<Integer> lattice_index(const std::vector<IntVector>& generators, std::size_t ambient_rank,
                                     bool in_full_lattice) {
  if (generators.empty()) {
    if (in_full_lattice && ambient_rank > 0) return std::nullopt;
    return Integer(1);
  }
  const IntegerMatrix a = IntegerMatrix::from_columns(generators, ambient_rank);
  const SmithForm snf = smith_normal_form(a);
  Integer index = 1;
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    if (snf.s(i, i) == 0) continue;
    ++r;
    index *= snf.s(i, i);
  }
  if (in_full_lattice && r < ambient_rank) return std::nullopt;
  return index;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("unimodular_inverse: non-square matrix");
  // Row reduce [A | I]; HNF of a unimodular matrix is the identity.
  const HermiteForm hf = hermite_normal_form(a);
  if (!(hf.h == IntegerMatrix::identity(a.rows()))) throw DomainError("matrix is not unimodular");
  return hf.u;
}

std::vector<IntVector> saturate(const std::vector<IntVector>& generators, std::size_t ambient_rank) {
  if (generators.empty()) return {};
  const IntegerMatrix a = IntegerMatrix::from_columns(generators, ambient_rank);
  const SmithForm snf = smith_normal_form(a);
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (snf.s(i, i) != 0) ++r;
  // U A V = S, so span(A) = U^{-1} S Z^k and its saturation is spanned by the
  // first r columns of U^{-1}.
  const IntegerMatrix u_inv = unimodular_inverse(snf.u);
  std::vector<IntVector> basis;
  for (std::size_t j = 0; j < r; ++j) basis.push_back(u_inv.column(j));
  const HermiteForm hf = hermite_normal_form(IntegerMatrix::from_rows(basis, ambient_rank));
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(hf.h.row(i));
  return out;
}

std::vector<IntVector> complete_to_basis(const std::vector<IntVector>& basis, std::size_t ambient_rank) {
  if (basis.empty()) {
    std::vector<IntVector> out;
    const IntegerMatrix id = IntegerMatrix::identity(ambient_rank);
    for (std::size_t j = 0; j < ambient_rank; ++j) out.push_back(id.column(j));
    return out;
  }
  const IntegerMatrix a = IntegerMatrix::from_columns(basis, ambient_rank);
  const SmithForm snf = smith_normal_form(a);
  const std::size_t r = basis.size();
  for (std::size_t i = 0; i < r; ++i)
    if (snf.s(i, i) != 1) throw DomainError("complete_to_basis: sublattice is not saturated or not independent");
  // U A V = [I;0] means the columns of U^{-1} beyond r complement span(A).
  const IntegerMatrix u_inv = unimodular_inverse(snf.u);
  std::vector<IntVector> out;
  for (std::size_t j = r; j < ambient_rank; ++j) out.push_back(u_inv.column(j));
  return out;
}

// Rational helpers -------------------------------------------------------

namespace {

using RationalRows = std::vector<RationalVector>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalRows& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<RationalVector> solve_in_basis(const std::vector<IntVector>& basis, const RationalVector& target) {
  const std::size_t k = basis.size();
  const std::size_t d = target.size();
  // Augmented system: d equations, k unknowns.
  RationalRows m(d, RationalVector(k + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (basis[j].size() != d) throw DomainError("solve_in_basis: length mismatch");
      m[i][j] = basis[j][i];
    }
    m[i][k] = target[i];
  }
  const auto pivots = rref(m, k + 1);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  if (pivots.size() != k) throw DomainError("solve_in_basis: basis is linearly dependent");
  RationalVector x(k);
  for (std::size_t i = 0; i < k; ++i) x[pivots[i]] = m[i][k];
  return x;
}

std::optional<RationalVector> solve_in_basis(const std::vector<IntVector>& basis, const IntVector& target) {
  return solve_in_basis(basis, to_rational(target));
}

std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t cols) {
  RationalRows m;
  for (const auto& r : rows) m.push_back(to_rational(r));
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<IntVector> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(cols);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m[i][free];
    out.push_back(primitive_part(x));
  }
  return out;
}

std::vector<std::size_t> independent_subset(const std::vector<IntVector>& vectors) {
  std::vector<std::size_t> chosen;
  std::vector<IntVector> acc;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    acc.push_back(vectors[i]);
    if (rank(acc) == acc.size()) {
      chosen.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

}  // namespace toristack
