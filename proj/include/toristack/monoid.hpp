#pragma once

#include <map>
#include <optional>
#include <vector>

#include "toristack/cone.hpp"
#include "toristack/integer.hpp"
#include "toristack/kernels.hpp"
#include "toristack/lattice.hpp"

namespace toristack {

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }
};

/// Saturated affine monoid P = C ∩ Z^d for a rational cone C in Q^d.
///
/// For a sharp monoid hilbert_basis() holds the irreducible elements. When C
/// has lineality, units() is a basis of the unit group C ∩ -C ∩ Z^d and
/// hilbert_basis() holds lifts of the irreducibles of P / units.
class AffineMonoid {
 public:
  AffineMonoid() = default;
  explicit AffineMonoid(RationalCone cone, kernels::Execution exec = kernels::Execution::parallel);

  std::size_t lattice_rank() const { return cone_.ambient_rank(); }
  const RationalCone& cone() const { return cone_; }
  const std::vector<IntVector>& hilbert_basis() const { return hilbert_basis_; }
  const std::vector<IntVector>& units() const { return units_; }
  /// hilbert_basis() followed by each unit basis vector and its negative.
  std::vector<IntVector> generators() const;

  bool sharp() const { return units_.empty(); }
  /// C(P) modulo its lineality is simplicial.
  bool simplicial() const { return simplicial_; }

  /// m lies in C ∩ Z^d (uses saturation, not the generators).
  bool contains(const IntVector& m) const;

 private:
  RationalCone cone_;
  std::vector<IntVector> hilbert_basis_;
  std::vector<IntVector> units_;
  bool simplicial_ = false;
};

/// Irreducible elements of c ∩ Z^d for a strictly convex simplicial cone c
/// (of any dimension). Lexicographically sorted.
std::vector<IntVector> hilbert_basis(const RationalCone& c, kernels::Execution exec = kernels::Execution::parallel);

/// P = sigma^∨ ∩ M for a strictly convex simplicial cone sigma in N = Z^d.
AffineMonoid monoid_from_cone(const RationalCone& sigma);

/// Requires a sharp monoid; C(P) has exactly rank(P^gp) rays.
bool is_simplicially_toric(const AffineMonoid& p);

/// Free resolution P -> F = ⊕ N g_i inside P^gp ⊗ Q, with
/// g_i = v_i / (b_i n_i) for the primitive rays v_i of C(P).
struct FreeResolution {
  AffineMonoid source;
  std::size_t rank = 0;
  std::vector<IntVector> rays;               // v_i, lexicographic
  std::vector<Integer> denominators;         // b_i
  std::vector<RationalVector> generators;    // f_i = v_i / b_i
  std::vector<Integer> levels;               // n_i (all 1 for the minimal resolution)
  std::vector<RationalVector> realized_generators;  // g_i = f_i / n_i

  bool is_minimal() const;
};

using RayLevels = std::map<IntVector, Integer, LexLess>;

FreeResolution minimal_free_resolution(const AffineMonoid& p);

/// Type-n resolution: levels keyed by rays of C(P); rays absent from the map
/// get level 1. Throws DomainError for an unknown ray or a level < 1.
FreeResolution admissible_resolution(const AffineMonoid& p, const RayLevels& levels);

/// Integer matrix whose k-th column holds the coordinates of the k-th
/// standard basis vector of P^gp in the basis g_1..g_r of F^gp.
/// Throws InternalError if a coordinate is not integral.
IntegerMatrix lattice_in_free_coordinates(const FreeResolution& res);

/// Coordinates of an element of P^gp ⊗ Q in the basis g_1..g_r.
RationalVector free_coordinates(const FreeResolution& res, const IntVector& m);

/// F^gp / ι(P^gp).
FiniteAbelianGroup resolution_cokernel(const FreeResolution& res);

struct RayCorrespondence {
  std::size_t generator_index;
  RationalVector generator;        // irreducible element g_i of F
  IntVector ray;                   // primitive generator of the ray of C(P)
  IntVector prime_normal;          // the height-one prime is {p in P : <p, prime_normal> > 0}
  std::vector<IntVector> facet;    // rays of the facet complementary to the prime
};

/// Irreducible elements of F <-> rays of C(P) <-> height-one primes of P.
std::vector<RayCorrespondence> irreducible_ray_correspondence(const FreeResolution& res);

/// Invariant factors of P^gp / Q^gp for the submonoid Q generated by
/// q_generators. Checks that Q is close to P (multiple search up to
/// `multiple_bound`, default derived from the resolution data) and that Q is
/// saturated; throws DomainError when either fails.
FiniteAbelianGroup quotient_group(const AffineMonoid& p, const std::vector<IntVector>& q_generators,
                                  std::optional<Integer> multiple_bound = std::nullopt);

struct RestrictedResolution {
  AffineMonoid monoid;                   // Q, in the coordinates of lattice_basis
  FreeResolution resolution;             // minimal free resolution of Q
  std::vector<IntVector> lattice_basis;  // basis of Q^gp inside Z^r (free coordinates)
  std::vector<std::size_t> coordinates;  // the retained F-coordinates
};

/// Projects P along F = N^d -> N^r onto the given coordinates. The projected
/// inclusion Q ⊂ N^r is compared with the minimal free resolution of Q
/// recomputed from scratch; a mismatch raises InternalError.
RestrictedResolution restrict_resolution(const AffineMonoid& p, const FreeResolution& res,
                                         const std::vector<std::size_t>& coordinates);

/// Brute force over F-elements of degree <= degree_bound: an element lying in
/// P^gp must lie in the submonoid generated by the Hilbert basis of P.
bool saturation_intersection_check(const FreeResolution& res, std::size_t degree_bound);

/// Whether x is an N-combination of `generators` (all lying in the cone of
/// `grading`-positive vectors). Brute-force search.
bool in_submonoid(const std::vector<IntVector>& generators, const IntVector& x, const IntVector& grading);

}  // namespace toristack
