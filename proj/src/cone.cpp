#include "toristack/cone.hpp"

#include <algorithm>

#include "toristack/error.hpp"
#include "toristack/lattice.hpp"

namespace toristack {

namespace {

void sort_unique(std::vector<IntVector>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end(),
                       [](const IntVector& a, const IntVector& b) { return !lex_less(a, b) && !lex_less(b, a); }),
           vs.end());
}

void check_lengths(const std::vector<IntVector>& vs, std::size_t d) {
  for (const auto& v : vs)
    if (v.size() != d) throw DomainError("vector " + to_string(v) + " does not have length " + std::to_string(d));
}

// Double description on a pointed cone {y in Q^k : a_i . y >= 0}, where the
// a_i have full rank k.
std::vector<IntVector> pointed_extreme_rays(const std::vector<IntVector>& constraints, std::size_t k) {
  const std::vector<std::size_t> basis_rows = independent_subset(constraints);
  if (basis_rows.size() != k) throw InternalError("pointed_extreme_rays: constraints not of full rank");

  // Start from the simplicial cone cut out by k independent constraints:
  // its rays are the columns of B^{-1}.
  std::vector<IntVector> b_columns(k, IntVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b_columns[j][i] = constraints[basis_rows[i]][j];

  std::vector<IntVector> rays;
  for (std::size_t j = 0; j < k; ++j) {
    RationalVector target(k);
    target[j] = 1;
    const auto y = solve_in_basis(b_columns, target);
    if (!y) throw InternalError("pointed_extreme_rays: singular start basis");
    rays.push_back(primitive_part(*y));
  }

  std::vector<std::size_t> processed = basis_rows;
  std::vector<bool> done(constraints.size(), false);
  for (auto i : basis_rows) done[i] = true;

  auto tight_set = [&](const IntVector& r) {
    std::vector<std::size_t> t;
    for (auto i : processed)
      if (dot(constraints[i], r) == 0) t.push_back(i);
    return t;
  };

  for (std::size_t c = 0; c < constraints.size(); ++c) {
    if (done[c]) continue;
    const IntVector& a = constraints[c];
    std::vector<IntVector> pos, zero, neg;
    std::vector<Integer> pos_val, neg_val;
    for (const auto& r : rays) {
      Integer s = dot(a, r);
      if (s > 0) {
        pos.push_back(r);
        pos_val.push_back(s);
      } else if (s < 0) {
        neg.push_back(r);
        neg_val.push_back(s);
      } else {
        zero.push_back(r);
      }
    }
    std::vector<std::vector<std::size_t>> tight;
    for (const auto& r : rays) tight.push_back(tight_set(r));

    auto index_of = [&](const IntVector& r) {
      return static_cast<std::size_t>(std::find(rays.begin(), rays.end(), r) - rays.begin());
    };

    std::vector<IntVector> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (std::size_t p = 0; p < pos.size(); ++p) {
      const std::size_t ip = index_of(pos[p]);
      for (std::size_t n = 0; n < neg.size(); ++n) {
        const std::size_t in = index_of(neg[n]);
        std::vector<std::size_t> common;
        std::set_intersection(tight[ip].begin(), tight[ip].end(), tight[in].begin(), tight[in].end(),
                              std::back_inserter(common));
        // Combinatorial adjacency: no third ray is tight on all of `common`.
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == ip || o == in) continue;
          if (std::includes(tight[o].begin(), tight[o].end(), common.begin(), common.end())) adjacent = false;
        }
        if (!adjacent) continue;
        std::vector<IntVector> common_rows;
        for (auto i : common) common_rows.push_back(constraints[i]);
        if (k >= 2 && rank(common_rows) < k - 2) continue;
        IntVector combo(k);
        for (std::size_t j = 0; j < k; ++j) combo[j] = pos_val[p] * neg[n][j] - neg_val[n] * pos[p][j];
        next.push_back(primitive_part(combo));
      }
    }
    sort_unique(next);
    rays = std::move(next);
    processed.push_back(c);
    std::sort(processed.begin(), processed.end());
    done[c] = true;
  }
  return rays;
}

}  // namespace

ConeDescription solve_inequalities(const std::vector<IntVector>& inequalities, std::size_t ambient_rank) {
  check_lengths(inequalities, ambient_rank);
  std::vector<IntVector> rows;
  for (const auto& a : inequalities)
    if (!is_zero(a)) rows.push_back(primitive_part(a));
  sort_unique(rows);

  ConeDescription out;
  out.lineality = saturate(integer_kernel(rows, ambient_rank), ambient_rank);

  const std::vector<std::size_t> idx = independent_subset(rows);
  const std::size_t k = idx.size();
  if (k == 0) return out;

  // Pointed part lives in the row space W of the constraints; use the
  // independent rows as coordinates on W.
  std::vector<IntVector> w;
  for (auto i : idx) w.push_back(rows[i]);
  std::vector<IntVector> reduced;
  for (const auto& a : rows) {
    IntVector r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = dot(a, w[j]);
    reduced.push_back(std::move(r));
  }

  for (const auto& y : pointed_extreme_rays(reduced, k)) {
    IntVector x(ambient_rank, Integer(0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < ambient_rank; ++i) x[i] += y[j] * w[j][i];
    out.rays.push_back(primitive_part(x));
  }
  sort_unique(out.rays);
  return out;
}

// RationalCone -----------------------------------------------------------

void RationalCone::build(std::vector<IntVector> generators) {
  check_lengths(generators, ambient_rank_);
  std::vector<IntVector> gens;
  for (auto& g : generators)
    if (!is_zero(g)) gens.push_back(primitive_part(g));
  sort_unique(gens);
  dim_ = rank(gens);

  const ConeDescription dual = solve_inequalities(gens, ambient_rank_);
  inequalities_ = dual.rays;
  for (const auto& l : dual.lineality) {
    inequalities_.push_back(l);
    inequalities_.push_back(scale(l, -1));
  }
  sort_unique(inequalities_);

  ConeDescription self = solve_inequalities(inequalities_, ambient_rank_);
  rays_ = std::move(self.rays);
  lineality_ = std::move(self.lineality);
}

RationalCone::RationalCone(std::size_t ambient_rank, const std::vector<IntVector>& generators)
    : ambient_rank_(ambient_rank) {
  build(generators);
  if (!lineality_.empty()) throw DomainError("cone is not strictly convex (contains a line)");
}

RationalCone::RationalCone(std::size_t ambient_rank, const std::vector<RationalVector>& generators)
    : ambient_rank_(ambient_rank) {
  std::vector<IntVector> ints;
  for (const auto& g : generators) {
    if (g.size() != ambient_rank) throw DomainError("generator length mismatch");
    ints.push_back(primitive_part(g));
  }
  build(ints);
  if (!lineality_.empty()) throw DomainError("cone is not strictly convex (contains a line)");
}

RationalCone RationalCone::zero(std::size_t ambient_rank) {
  return RationalCone(ambient_rank, std::vector<IntVector>{});
}

RationalCone RationalCone::from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
  RationalCone c;
  c.ambient_rank_ = ambient_rank;
  c.build(generators);
  return c;
}

RationalCone RationalCone::from_inequalities(std::size_t ambient_rank, const std::vector<IntVector>& inequalities) {
  const ConeDescription d = solve_inequalities(inequalities, ambient_rank);
  std::vector<IntVector> gens = d.rays;
  for (const auto& l : d.lineality) {
    gens.push_back(l);
    gens.push_back(scale(l, -1));
  }
  return from_generators(ambient_rank, gens);
}

std::vector<IntVector> RationalCone::generators() const {
  std::vector<IntVector> out = rays_;
  for (const auto& l : lineality_) {
    out.push_back(l);
    out.push_back(scale(l, -1));
  }
  return out;
}

bool RationalCone::operator==(const RationalCone& other) const {
  return ambient_rank_ == other.ambient_rank_ && rays_ == other.rays_ && lineality_ == other.lineality_;
}

// Operations -------------------------------------------------------------

const std::vector<IntVector>& rays(const RationalCone& c) { return c.rays(); }

RationalCone dual_cone(const RationalCone& c) {
  return RationalCone::from_generators(c.ambient_rank(), c.inequalities());
}

bool is_simplicial(const RationalCone& c) { return c.strictly_convex() && c.rays().size() == c.dim(); }

bool is_full_dimensional(const RationalCone& c) { return c.dim() == c.ambient_rank(); }

bool contains(const RationalCone& c, const RationalVector& v) {
  if (v.size() != c.ambient_rank()) throw DomainError("contains: rank mismatch");
  return std::all_of(c.inequalities().begin(), c.inequalities().end(),
                     [&](const IntVector& h) { return dot(v, h) >= 0; });
}

bool contains(const RationalCone& c, const IntVector& v) { return contains(c, to_rational(v)); }

bool is_face(const RationalCone& c, const RationalCone& f) {
  if (c.ambient_rank() != f.ambient_rank()) throw DomainError("is_face: rank mismatch");
  const auto f_gens = f.generators();
  for (const auto& g : f_gens)
    if (!contains(c, g)) return false;
  IntVector m(c.ambient_rank(), Integer(0));
  for (const auto& h : c.inequalities()) {
    const bool vanishes = std::all_of(f_gens.begin(), f_gens.end(), [&](const IntVector& g) { return dot(h, g) == 0; });
    if (vanishes) m = add(m, h);
  }
  std::vector<IntVector> tight;
  for (const auto& g : c.generators())
    if (dot(m, g) == 0) tight.push_back(g);
  return RationalCone::from_generators(c.ambient_rank(), tight) == f;
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw DomainError("intersect: rank mismatch");
  std::vector<IntVector> ineqs = a.inequalities();
  ineqs.insert(ineqs.end(), b.inequalities().begin(), b.inequalities().end());
  return RationalCone::from_inequalities(a.ambient_rank(), ineqs);
}

Integer multiplicity(const RationalCone& c) {
  if (!is_simplicial(c)) throw DomainError("multiplicity requires a simplicial cone");
  return *lattice_index(c.rays(), c.ambient_rank());
}

IntVector ray_star(const RationalCone& c, const IntVector& ray) {
  if (!is_simplicial(c) || !is_full_dimensional(c))
    throw DomainError("ray_star requires a simplicial full-dimensional cone");
  if (std::find(c.rays().begin(), c.rays().end(), ray) == c.rays().end())
    throw DomainError("ray_star: " + to_string(ray) + " is not a ray of the cone");
  const RationalCone dual = dual_cone(c);
  std::vector<IntVector> hits;
  for (const auto& h : dual.rays())
    if (dot(h, ray) > 0) hits.push_back(h);
  if (hits.size() != 1) throw InternalError("ray_star: dual ray is not unique");
  return hits.front();
}

IntVector relative_interior_point(const RationalCone& c) {
  if (c.rays().empty() && c.lineality().empty()) throw DomainError("zero cone has no relative interior point");
  IntVector s(c.ambient_rank(), Integer(0));
  for (const auto& r : c.rays()) s = add(s, r);
  return s;
}

}  // namespace toristack
