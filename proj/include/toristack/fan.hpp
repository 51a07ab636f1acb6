#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toristack/cone.hpp"
#include "toristack/error.hpp"
#include "toristack/integer.hpp"

namespace toristack {

enum class FanIssueKind {
  RankMismatch,
  ZeroRay,
  NonPrimitiveRay,
  DuplicateRay,
  RayIndexOutOfRange,
  RepeatedRayInCone,
  NonSimplicial,
  IntersectionNotFace,
  UnusedRay,
  InvalidLevel,
  InvalidCharacteristic,
};

std::string to_string(FanIssueKind kind);

struct FanIssue {
  FanIssueKind kind;
  std::vector<std::size_t> cones;  // indices into the maximal-cone input list
  std::vector<std::size_t> rays;   // indices into the ray list
  std::string message;
};

class FanValidationError : public DomainError {
 public:
  explicit FanValidationError(std::vector<FanIssue> issues);
  const std::vector<FanIssue>& issues() const { return issues_; }

 private:
  std::vector<FanIssue> issues_;
};

using RayIndexSet = std::vector<std::size_t>;  // sorted, duplicate free

/// Finite simplicial fan, stored through its maximal cones with every face
/// generated on construction. Cones are identified by their position in
/// cones(), which lists them by dimension and then lexicographically by ray
/// indices; cone 0 is the zero cone.
class Fan {
 public:
  std::size_t ambient_rank() const { return ambient_rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<RayIndexSet>& maximal_cones() const { return maximal_; }
  const std::vector<RayIndexSet>& cones() const { return cones_; }

  std::optional<std::size_t> find_cone(const RayIndexSet& ray_indices) const;
  /// Throws DomainError when the ray set is not a cone of the fan.
  std::size_t cone_id(const RayIndexSet& ray_indices) const;
  const RationalCone& cone(std::size_t id) const { return geometry_.at(id); }
  std::size_t dim(std::size_t id) const { return cones_.at(id).size(); }
  /// tau ≺ sigma (as cones of this fan).
  bool is_face_of(std::size_t tau, std::size_t sigma) const;
  /// Maximal cones (as cone ids) containing the given cone.
  std::vector<std::size_t> maximal_cones_containing(std::size_t id) const;
  std::vector<std::size_t> maximal_cone_ids() const;

 private:
  friend Fan validate_fan(std::size_t, std::vector<IntVector>, std::vector<RayIndexSet>);
  std::size_t ambient_rank_ = 0;
  std::vector<IntVector> rays_;
  std::vector<RayIndexSet> maximal_;
  std::vector<RayIndexSet> cones_;
  std::vector<RationalCone> geometry_;
};

/// Every fan-axiom violation of the input, in a deterministic order.
std::vector<FanIssue> fan_issues(std::size_t ambient_rank, const std::vector<IntVector>& rays,
                                 const std::vector<RayIndexSet>& maximal_cones);

/// Builds the fan, throwing FanValidationError listing every violation.
Fan validate_fan(std::size_t ambient_rank, std::vector<IntVector> rays, std::vector<RayIndexSet> maximal_cones);

/// Simplicial fan with a level n_ρ >= 1 on every ray.
class StackyFan {
 public:
  /// Throws FanValidationError for levels < 1 or a level count that does not
  /// match the ray count.
  StackyFan(Fan fan, std::vector<Integer> levels);

  const Fan& fan() const { return fan_; }
  const std::vector<Integer>& levels() const { return levels_; }
  const Integer& level(std::size_t ray) const { return levels_.at(ray); }

 private:
  Fan fan_;
  std::vector<Integer> levels_;
};

/// w_ρ = n_ρ v_ρ, indexed like the rays.
std::vector<IntVector> free_net_points(const StackyFan& sf);

/// Wall criterion: pure full-dimensional, every wall in exactly two maximal
/// cones, wall-connected, nonempty.
bool is_complete(const Fan& f);

/// mult(σ) times the product of the levels of the rays of σ; 1 for the zero cone.
Integer stacky_multiplicity(const StackyFan& sf, std::size_t cone_id);

/// Every stacky multiplicity is prime to every nonzero characteristic.
bool is_tame(const StackyFan& sf, const std::vector<Integer>& residue_characteristics);

/// Monomial generators of the ideal of V(tau) in the affine chart of sigma:
/// Hilbert-basis elements of sigma^∨ ∩ M pairing positively with the relative
/// interior of tau. Requires tau ≺ sigma.
std::vector<IntVector> cycle_ideal_classical(const Fan& f, std::size_t tau, std::size_t sigma);

}  // namespace toristack
