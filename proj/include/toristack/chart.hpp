#pragma once

// Local quotient presentations [A^r / G] x G_m^(d-r) of the toric stack of a
// stacky fan, one per cone, together with the stabilizer and
// Deligne-Mumford criteria derived from them.

#include <vector>

#include "toristack/fan.hpp"
#include "toristack/kernels.hpp"
#include "toristack/lattice.hpp"
#include "toristack/monoid.hpp"

namespace toristack {

/// N = N' ⊕ N'' with N' the saturated span of the cone.
struct Splitting {
  std::vector<IntVector> n_prime;        // basis of N' in Z^d
  std::vector<IntVector> n_doubleprime;  // complement basis
  std::vector<IntVector> local_rays;     // rays of the cone in N' coordinates, in input order
  RationalCone local_cone;               // full-dimensional in Z^r
};

Splitting split_cone(const RationalCone& sigma);

struct LocalChart {
  std::size_t cone_id = 0;
  RayIndexSet cone_rays;
  std::size_t r = 0;
  std::size_t torus_rank = 0;
  Splitting splitting;
  FreeResolution resolution;  // admissible resolution of P = σ'^∨ ∩ M'
  /// Fan ray index attached to each chart coordinate e_i.
  std::vector<std::size_t> generator_rays;
  FiniteAbelianGroup group;   // F^gp / ι(P^gp); the stabilizer is its Cartier dual
  /// Image of e_i in group, one residue per invariant factor, each in [0, d_j).
  std::vector<std::vector<Integer>> action_weights;
  std::vector<IntVector> coarse_generators;  // Hilbert basis of P (chart of X_σ)
};

LocalChart local_chart(const StackyFan& sf, std::size_t cone_id);

/// Charts for several cones. Each chart is independent, so the parallel path
/// runs them concurrently; output order follows `cone_ids` either way.
std::vector<LocalChart> local_charts(const StackyFan& sf, const std::vector<std::size_t>& cone_ids,
                                     kernels::Execution exec = kernels::Execution::parallel);

/// Stabilizer of a point of the stratum of sigma. Its order is checked
/// against stacky_multiplicity (InternalError on mismatch).
FiniteAbelianGroup stabilizer(const StackyFan& sf, std::size_t cone_id);

/// Decided from the stabilizer groups of all cones: every stabilizer order is
/// invertible in each residue characteristic.
bool is_deligne_mumford(const StackyFan& sf, const std::vector<Integer>& residue_characteristics);

bool is_kummer_etale_chart(const LocalChart& chart, const std::vector<Integer>& residue_characteristics);

/// Indices of the chart coordinates of tau_chart whose rays lie in
/// sigma_face; they cut out V(sigma_face) in that chart.
std::vector<std::size_t> cycle_ideal_in_chart(const StackyFan& sf, std::size_t sigma_face, std::size_t tau_chart);
std::vector<std::size_t> cycle_ideal_in_chart(const LocalChart& chart, const RayIndexSet& face_rays);

struct DivisorChartEntry {
  std::size_t cone_id;     // maximal cone
  std::size_t coordinate;  // chart coordinate cutting out V(ρ)
};

struct BoundaryDivisor {
  std::size_t ray;
  Integer level;
  FiniteAbelianGroup generic_stabilizer;
  std::vector<DivisorChartEntry> charts;
};

std::vector<BoundaryDivisor> boundary_divisors(const StackyFan& sf);

/// Residues of x in F^gp = Z^r mapped to the group coordinates.
std::vector<Integer> group_image(const LocalChart& chart, const IntVector& x);

/// Monomials x^a of F with |a| <= degree_bound: a is fixed by the group
/// exactly when it lies in P^gp, and then it is a sum of Hilbert-basis
/// elements of P.
struct InvariantRingCheck {
  std::size_t degree_bound = 0;
  std::size_t monomials = 0;
  std::size_t invariant = 0;
  std::size_t weight_mismatches = 0;
  bool saturated = true;

  bool holds() const { return weight_mismatches == 0 && saturated; }
};

InvariantRingCheck invariant_ring_check(const LocalChart& chart, std::size_t degree_bound);

}  // namespace toristack
