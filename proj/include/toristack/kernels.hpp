#pragma once

// Data-parallel inner loops behind Hilbert-basis computation. Every kernel
// has an OpenMP path and a serial reference path producing identical output;
// the serial path is what the tests compare against and what the benchmark
// measures the parallel one against.

#include <vector>

#include "toristack/integer.hpp"
#include "toristack/lattice.hpp"

namespace toristack::kernels {

enum class Execution { serial, parallel };

/// Lattice points of the half-open parallelepiped {T λ : λ in [0,1)^k} for a
/// nonsingular k×k integer matrix T (columns = generators).
///
/// Each point p is reported with its coefficient numerators c: λ = c / |det T|,
/// 0 <= c_i < |det T|. Points are listed in the order of the group
/// Z^k / T Z^k enumerated through the Smith form of T, so exactly |det T|
/// points are produced (the origin first).
struct Parallelepiped {
  Integer volume;                        // |det T|
  std::vector<IntVector> points;         // in Z^k
  std::vector<IntVector> coefficients;   // numerators of λ
};

Parallelepiped parallelepiped_points(const IntegerMatrix& t, Execution exec = Execution::parallel);

/// Given coefficient vectors of nonzero monoid elements that are pairwise
/// comparable through "x - y in the monoid iff c(x) >= c(y) componentwise",
/// returns the (sorted) indices of the elements that are not a sum of two
/// nonzero elements of the list.
std::vector<std::size_t> irreducible_indices(const std::vector<IntVector>& coefficients,
                                             Execution exec = Execution::parallel);

/// Number of OpenMP threads the parallel paths will use (1 without OpenMP).
int max_threads();

}  // namespace toristack::kernels
