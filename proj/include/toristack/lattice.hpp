#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal
// forms, cokernels of integer matrices, saturation and lattice indices.

#include <optional>
#include <vector>

#include "toristack/integer.hpp"

namespace toristack {

/// Dense row-major matrix over Z.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);

  static IntegerMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntegerMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;

  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix& other) const;
  IntVector operator*(const IntVector& v) const;

  bool operator==(const IntegerMatrix& other) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  bool is_zero() const;
  bool is_diagonal() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Finite-type abelian group Z^free_rank + Z/d_1 + ... + Z/d_k, d_i | d_{i+1}.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  /// Throws DomainError unless each factor is >= 2 and the chain divides.
  FiniteAbelianGroup(std::vector<Integer> invariant_factors, std::size_t free_rank = 0);

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }

  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
  /// Product of the invariant factors; nullopt when the group is infinite.
  std::optional<Integer> order() const;
  /// Largest invariant factor (1 for the trivial group); nullopt if infinite.
  std::optional<Integer> exponent() const;

  bool operator==(const FiniteAbelianGroup& other) const;

 private:
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
};

struct HermiteForm {
  IntegerMatrix h;  // U * A
  IntegerMatrix u;  // unimodular
};

struct SmithForm {
  IntegerMatrix s;  // U * A * V, diagonal with s_1 | s_2 | ...
  IntegerMatrix u;
  IntegerMatrix v;
};

/// Row-style Hermite normal form: UA = H, H in echelon form with positive
/// pivots and the entries above each pivot reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntegerMatrix& a);

/// UAV = S with S diagonal, nonnegative and each diagonal entry dividing the
/// next. Pivots chosen by smallest absolute value.
SmithForm smith_normal_form(const IntegerMatrix& a);

/// Structure of Z^rows / (column span of A).
FiniteAbelianGroup cokernel_invariants(const IntegerMatrix& a);

/// Integer rank of A (= rank over Q).
std::size_t rank(const IntegerMatrix& a);

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntegerMatrix& a);

/// Index of the span of `generators` inside its saturation in Z^ambient_rank.
/// With `in_full_lattice` set, the index inside Z^ambient_rank itself is
/// returned instead, which is nullopt ("infinite") when the span is not of
/// full rank.
std::optional<Integer> lattice_index(const std::vector<IntVector>& generators,
                                     std::size_t ambient_rank, bool in_full_lattice = false);

/// Basis of {v in Z^d : n v in span(generators) for some n >= 1}, returned
/// in Hermite normal form (canonical for the lattice).
std::vector<IntVector> saturate(const std::vector<IntVector>& generators, std::size_t ambient_rank);

/// For a basis of a saturated sublattice L of Z^d, returns vectors w_1..w_{d-r}
/// with basis + w a basis of Z^d. Throws DomainError if L is not saturated.
std::vector<IntVector> complete_to_basis(const std::vector<IntVector>& basis, std::size_t ambient_rank);

/// Inverse of a unimodular matrix (throws DomainError otherwise).
IntegerMatrix unimodular_inverse(const IntegerMatrix& a);

// Rational helpers -------------------------------------------------------

/// Coordinates c with sum_i c_i basis[i] = target, or nullopt when target is
/// not in the Q-span. `basis` must be linearly independent.
std::optional<RationalVector> solve_in_basis(const std::vector<IntVector>& basis, const RationalVector& target);
std::optional<RationalVector> solve_in_basis(const std::vector<IntVector>& basis, const IntVector& target);

/// Primitive integer basis of {x in Q^cols : A x = 0} where A has the given
/// rows; empty when the kernel is trivial.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t cols);

/// Indices of a maximal linearly independent subset, chosen greedily.
std::vector<std::size_t> independent_subset(const std::vector<IntVector>& vectors);

std::size_t rank(const std::vector<IntVector>& vectors);

}  // namespace toristack
