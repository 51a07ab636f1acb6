#pragma once

#include <vector>

#include "toristack/integer.hpp"

namespace toristack {

/// Rational polyhedral cone in Q^d, stored in minimal form: primitive
/// extreme rays of the pointed part (lexicographic order) plus a basis of
/// the lineality space, together with the dual (inequality) description.
///
/// The public constructors only accept strictly convex cones. Cones with
/// lineality (duals of lower-dimensional cones) are produced by dual_cone()
/// and carry strictly_convex() == false.
class RationalCone {
 public:
  RationalCone() = default;
  /// Cone generated by the given vectors; throws DomainError when the cone
  /// contains a line or a generator has the wrong length.
  RationalCone(std::size_t ambient_rank, const std::vector<IntVector>& generators);
  RationalCone(std::size_t ambient_rank, const std::vector<RationalVector>& generators);

  static RationalCone zero(std::size_t ambient_rank);
  /// Like the constructor but keeps lineality instead of rejecting it.
  static RationalCone from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators);
  /// {x : <a, x> >= 0 for every a in inequalities}.
  static RationalCone from_inequalities(std::size_t ambient_rank, const std::vector<IntVector>& inequalities);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t dim() const { return dim_; }

  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  bool strictly_convex() const { return lineality_.empty(); }

  /// rays, then each lineality basis vector and its negative.
  std::vector<IntVector> generators() const;
  /// Generators of the dual cone; c = {x : <h, x> >= 0 for all h}.
  const std::vector<IntVector>& inequalities() const { return inequalities_; }

  bool operator==(const RationalCone& other) const;

 private:
  void build(std::vector<IntVector> generators);

  std::size_t ambient_rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> inequalities_;
};

/// Extreme rays of {x in Q^d : A x >= 0} together with a lineality basis.
struct ConeDescription {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};
ConeDescription solve_inequalities(const std::vector<IntVector>& inequalities, std::size_t ambient_rank);

const std::vector<IntVector>& rays(const RationalCone& c);

RationalCone dual_cone(const RationalCone& c);

bool is_simplicial(const RationalCone& c);
bool is_full_dimensional(const RationalCone& c);
bool contains(const RationalCone& c, const RationalVector& v);
bool contains(const RationalCone& c, const IntVector& v);
/// f is a face of c: f is contained in c and f = c ∩ m^⊥ for some m in the dual.
bool is_face(const RationalCone& c, const RationalCone& f);
RationalCone intersect(const RationalCone& a, const RationalCone& b);

/// Index of the lattice spanned by the primitive rays in its saturation.
/// Requires a simplicial cone.
Integer multiplicity(const RationalCone& c);

/// The unique ray of dual_cone(c) pairing positively with `ray`. Requires
/// c simplicial and full-dimensional and `ray` one of its rays.
IntVector ray_star(const RationalCone& c, const IntVector& ray);

/// Sum of the primitive ray generators. Throws DomainError for the zero cone.
IntVector relative_interior_point(const RationalCone& c);

}  // namespace toristack
