#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace toristack {

using Integer = mpz_class;
using Rational = mpq_class;

/// Lattice vector in Z^d.
using IntVector = std::vector<Integer>;

/// Vector in Q^d. Every entry is kept canonical (lowest terms, positive
/// denominator); build entries through make_rational().
using RationalVector = std::vector<Rational>;

Rational make_rational(const Integer& num, const Integer& den);

RationalVector to_rational(const IntVector& v);

/// Clears denominators and divides by the content. Returns the zero vector
/// unchanged.
IntVector primitive_part(const RationalVector& v);
IntVector primitive_part(const IntVector& v);

/// gcd of all entries (0 for the zero vector).
Integer content(const IntVector& v);

bool is_zero(const IntVector& v);
bool is_zero(const RationalVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const IntVector& b);

IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& v, const Integer& s);
RationalVector scale(const RationalVector& v, const Rational& s);

/// Returns the vector when every entry is integral, throws DomainError
/// otherwise.
IntVector to_integer(const RationalVector& v);
bool is_integral(const RationalVector& v);

/// Lexicographic order on vectors of equal length.
bool lex_less(const IntVector& a, const IntVector& b);

/// "p/q" or "p".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const IntVector& v);
std::string to_string(const RationalVector& v);

IntVector make_vector(std::initializer_list<long> entries);

}  // namespace toristack
