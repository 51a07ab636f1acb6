#include "toristack/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "toristack/lattice.hpp"
#include "toristack/monoid.hpp"

namespace toristack {

std::string to_string(FanIssueKind kind) {
  switch (kind) {
    case FanIssueKind::RankMismatch: return "RankMismatch";
    case FanIssueKind::ZeroRay: return "ZeroRay";
    case FanIssueKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case FanIssueKind::DuplicateRay: return "DuplicateRay";
    case FanIssueKind::RayIndexOutOfRange: return "RayIndexOutOfRange";
    case FanIssueKind::RepeatedRayInCone: return "RepeatedRayInCone";
    case FanIssueKind::NonSimplicial: return "NonSimplicial";
    case FanIssueKind::IntersectionNotFace: return "IntersectionNotFace";
    case FanIssueKind::UnusedRay: return "UnusedRay";
    case FanIssueKind::InvalidLevel: return "InvalidLevel";
    case FanIssueKind::InvalidCharacteristic: return "InvalidCharacteristic";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<FanIssue>& issues) {
  std::string s = "invalid fan:";
  for (const auto& i : issues) s += " [" + to_string(i.kind) + "] " + i.message + ";";
  return s;
}

std::vector<IntVector> select(const std::vector<IntVector>& rays, const RayIndexSet& idx) {
  std::vector<IntVector> out;
  for (auto i : idx) out.push_back(rays[i]);
  return out;
}

std::string describe(const RayIndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace

FanValidationError::FanValidationError(std::vector<FanIssue> issues)
    : DomainError(summarize(issues)), issues_(std::move(issues)) {}

std::vector<FanIssue> fan_issues(std::size_t d, const std::vector<IntVector>& rays,
                                 const std::vector<RayIndexSet>& maximal_cones) {
  std::vector<FanIssue> issues;
  bool rays_ok = true;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const IntVector& v = rays[i];
    if (v.size() != d) {
      issues.push_back({FanIssueKind::RankMismatch, {}, {i},
                        "ray " + std::to_string(i) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                            std::to_string(d)});
      rays_ok = false;
      continue;
    }
    if (is_zero(v)) {
      issues.push_back({FanIssueKind::ZeroRay, {}, {i}, "ray " + std::to_string(i) + " is zero"});
      rays_ok = false;
      continue;
    }
    if (content(v) != 1) {
      issues.push_back({FanIssueKind::NonPrimitiveRay, {}, {i},
                        "ray " + std::to_string(i) + " = " + to_string(v) + " is not primitive; use " +
                            to_string(primitive_part(v))});
      rays_ok = false;
    }
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i].size() == d && rays[j].size() == d && !is_zero(rays[i]) &&
          primitive_part(rays[i]) == primitive_part(rays[j])) {
        issues.push_back({FanIssueKind::DuplicateRay, {}, {i, j},
                          "rays " + std::to_string(i) + " and " + std::to_string(j) + " span the same ray"});
        rays_ok = false;
      }

  bool cones_ok = true;
  std::vector<bool> used(rays.size(), false);
  for (std::size_t c = 0; c < maximal_cones.size(); ++c) {
    std::set<std::size_t> seen;
    for (auto i : maximal_cones[c]) {
      if (i >= rays.size()) {
        issues.push_back({FanIssueKind::RayIndexOutOfRange, {c}, {i},
                          "cone " + std::to_string(c) + " refers to ray " + std::to_string(i) + ", but only " +
                              std::to_string(rays.size()) + " rays exist"});
        cones_ok = false;
        continue;
      }
      if (!seen.insert(i).second) {
        issues.push_back({FanIssueKind::RepeatedRayInCone, {c}, {i},
                          "cone " + std::to_string(c) + " lists ray " + std::to_string(i) + " twice"});
        cones_ok = false;
      }
      used[i] = true;
    }
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i])
      issues.push_back({FanIssueKind::UnusedRay, {}, {i}, "ray " + std::to_string(i) + " lies in no cone"});

  if (!rays_ok || !cones_ok) return issues;

  std::vector<RayIndexSet> sorted;
  for (const auto& c : maximal_cones) {
    RayIndexSet s(c);
    std::sort(s.begin(), s.end());
    sorted.push_back(std::move(s));
  }
  std::vector<bool> simplicial(sorted.size(), true);
  for (std::size_t c = 0; c < sorted.size(); ++c) {
    const auto gens = select(rays, sorted[c]);
    if (rank(gens) != gens.size()) {
      issues.push_back({FanIssueKind::NonSimplicial, {c}, sorted[c],
                        "cone " + std::to_string(c) + " " + describe(sorted[c]) +
                            " is not simplicial (its rays are linearly dependent)"});
      simplicial[c] = false;
    }
  }
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    if (!simplicial[a]) continue;
    const RationalCone ca(d, select(rays, sorted[a]));
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      if (!simplicial[b]) continue;
      const RationalCone cb(d, select(rays, sorted[b]));
      RayIndexSet common;
      std::set_intersection(sorted[a].begin(), sorted[a].end(), sorted[b].begin(), sorted[b].end(),
                            std::back_inserter(common));
      const RationalCone expected(d, select(rays, common));
      if (!(intersect(ca, cb) == expected)) {
        issues.push_back({FanIssueKind::IntersectionNotFace, {a, b}, {},
                          "cones " + std::to_string(a) + " " + describe(sorted[a]) + " and " + std::to_string(b) + " " +
                              describe(sorted[b]) + " meet outside their common face " + describe(common)});
      }
    }
  }
  return issues;
}

Fan validate_fan(std::size_t d, std::vector<IntVector> rays, std::vector<RayIndexSet> maximal_cones) {
  auto issues = fan_issues(d, rays, maximal_cones);
  if (!issues.empty()) throw FanValidationError(std::move(issues));

  Fan f;
  f.ambient_rank_ = d;
  f.rays_ = std::move(rays);

  std::set<RayIndexSet> all;
  for (auto& c : maximal_cones) {
    std::sort(c.begin(), c.end());
    const std::size_t n = c.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      RayIndexSet face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) face.push_back(c[i]);
      all.insert(face);
    }
  }
  if (all.empty()) all.insert(RayIndexSet{});
  f.cones_.assign(all.begin(), all.end());
  std::stable_sort(f.cones_.begin(), f.cones_.end(),
                   [](const RayIndexSet& a, const RayIndexSet& b) { return a.size() < b.size(); });

  for (const auto& c : f.cones_) {
    const bool maximal = std::none_of(f.cones_.begin(), f.cones_.end(), [&](const RayIndexSet& o) {
      return o.size() > c.size() && std::includes(o.begin(), o.end(), c.begin(), c.end());
    });
    if (maximal) f.maximal_.push_back(c);
    f.geometry_.emplace_back(d, select(f.rays_, c));
  }
  return f;
}

std::optional<std::size_t> Fan::find_cone(const RayIndexSet& ray_indices) const {
  RayIndexSet key(ray_indices);
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i] == key) return i;
  return std::nullopt;
}

std::size_t Fan::cone_id(const RayIndexSet& ray_indices) const {
  auto id = find_cone(ray_indices);
  if (!id) throw DomainError("no cone with rays " + describe(ray_indices) + " in the fan");
  return *id;
}

bool Fan::is_face_of(std::size_t tau, std::size_t sigma) const {
  const auto& t = cones_.at(tau);
  const auto& s = cones_.at(sigma);
  return std::includes(s.begin(), s.end(), t.begin(), t.end());
}

std::vector<std::size_t> Fan::maximal_cones_containing(std::size_t id) const {
  std::vector<std::size_t> out;
  for (const auto& m : maximal_) {
    const std::size_t mid = *find_cone(m);
    if (is_face_of(id, mid)) out.push_back(mid);
  }
  return out;
}

std::vector<std::size_t> Fan::maximal_cone_ids() const {
  std::vector<std::size_t> out;
  for (const auto& m : maximal_) out.push_back(*find_cone(m));
  return out;
}

// StackyFan --------------------------------------------------------------

StackyFan::StackyFan(Fan fan, std::vector<Integer> levels) : fan_(std::move(fan)), levels_(std::move(levels)) {
  std::vector<FanIssue> issues;
  if (levels_.size() != fan_.rays().size()) {
    issues.push_back({FanIssueKind::InvalidLevel, {}, {},
                      "expected " + std::to_string(fan_.rays().size()) + " levels, got " +
                          std::to_string(levels_.size())});
  }
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (levels_[i] < 1)
      issues.push_back({FanIssueKind::InvalidLevel, {}, {i},
                        "level " + to_string(levels_[i]) + " on ray " + std::to_string(i) + " is not positive"});
  if (!issues.empty()) throw FanValidationError(std::move(issues));

  // Free-net axioms: per cone the points n_ρ v_ρ are independent (free of
  // rank dim σ) and have finite index in σ ∩ N (close).
  const auto w = free_net_points(*this);
  for (const auto& c : fan_.cones()) {
    const auto gens = select(w, c);
    if (rank(gens) != c.size()) throw InternalError("free-net points of a cone are dependent");
  }
}

std::vector<IntVector> free_net_points(const StackyFan& sf) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < sf.fan().rays().size(); ++i) out.push_back(scale(sf.fan().rays()[i], sf.level(i)));
  return out;
}

bool is_complete(const Fan& f) {
  const std::size_t d = f.ambient_rank();
  if (f.maximal_cones().empty()) return false;
  for (const auto& m : f.maximal_cones())
    if (m.size() != d) return false;
  if (d == 0) return true;

  const auto& top = f.maximal_cones();
  std::map<RayIndexSet, std::vector<std::size_t>> walls;
  for (std::size_t c = 0; c < top.size(); ++c)
    for (std::size_t skip = 0; skip < d; ++skip) {
      RayIndexSet wall;
      for (std::size_t i = 0; i < d; ++i)
        if (i != skip) wall.push_back(top[c][i]);
      walls[wall].push_back(c);
    }

  std::vector<std::size_t> parent(top.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [wall, cofaces] : walls) {
    if (cofaces.size() != 2) return false;
    parent[find(cofaces[0])] = find(cofaces[1]);
  }
  const std::size_t root = find(0);
  for (std::size_t c = 0; c < top.size(); ++c)
    if (find(c) != root) return false;
  return true;
}

Integer stacky_multiplicity(const StackyFan& sf, std::size_t cone_id) {
  const auto& rays = sf.fan().cones().at(cone_id);
  if (rays.empty()) return 1;
  Integer m = multiplicity(sf.fan().cone(cone_id));
  for (auto r : rays) m *= sf.level(r);
  return m;
}

bool is_tame(const StackyFan& sf, const std::vector<Integer>& residue_characteristics) {
  for (std::size_t id = 0; id < sf.fan().cones().size(); ++id) {
    const Integer m = stacky_multiplicity(sf, id);
    for (const auto& p : residue_characteristics) {
      if (p == 0) continue;
      Integer g;
      mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      if (g != 1) return false;
    }
  }
  return true;
}

std::vector<IntVector> cycle_ideal_classical(const Fan& f, std::size_t tau, std::size_t sigma) {
  if (!f.is_face_of(tau, sigma)) throw DomainError("cycle_ideal_classical: tau is not a face of sigma");
  if (f.cones().at(tau).empty()) return {};
  const IntVector interior = relative_interior_point(f.cone(tau));
  const AffineMonoid p = monoid_from_cone(f.cone(sigma));
  std::vector<IntVector> out;
  for (const auto& h : p.hilbert_basis())
    if (dot(h, interior) > 0) out.push_back(h);
  return out;
}

}  // namespace toristack
