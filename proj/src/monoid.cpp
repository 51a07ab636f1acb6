#include "toristack/monoid.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "toristack/error.hpp"

namespace toristack {

namespace {

void sort_unique(std::vector<IntVector>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

// Strictly positive on every nonzero element of a strictly convex cone.
IntVector grading(const RationalCone& c) {
  IntVector w(c.ambient_rank(), Integer(0));
  for (const auto& h : c.inequalities()) w = add(w, h);
  return w;
}

// Lattice points of the half-open parallelepiped of a simplicial cone plus
// its rays, as vectors of Z^d together with the coefficient numerators.
struct SimplexCandidates {
  std::vector<IntVector> points;
  std::vector<IntVector> coefficients;
};

SimplexCandidates simplex_candidates(const std::vector<IntVector>& cone_rays, std::size_t d, kernels::Execution exec) {
  SimplexCandidates out;
  const std::size_t k = cone_rays.size();
  if (k == 0) return out;
  const std::vector<IntVector> lattice = saturate(cone_rays, d);
  IntegerMatrix t(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto coords = solve_in_basis(lattice, cone_rays[j]);
    if (!coords || !is_integral(*coords)) throw InternalError("ray outside its saturated span");
    for (std::size_t i = 0; i < k; ++i) t(i, j) = (*coords)[i].get_num();
  }
  const kernels::Parallelepiped box = kernels::parallelepiped_points(t, exec);

  auto lift = [&](const IntVector& local) {
    IntVector x(d, Integer(0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d; ++i) x[i] += local[j] * lattice[j][i];
    return x;
  };
  for (std::size_t n = 0; n < box.points.size(); ++n) {
    if (is_zero(box.coefficients[n])) continue;
    out.points.push_back(lift(box.points[n]));
    out.coefficients.push_back(box.coefficients[n]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    IntVector c(k, Integer(0));
    c[j] = box.volume;
    out.points.push_back(cone_rays[j]);
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

// Pulling triangulation: cone over the first ray with a triangulation of
// every facet that misses it.
void triangulate(const RationalCone& c, std::vector<std::vector<IntVector>>& out) {
  if (is_simplicial(c)) {
    out.push_back(c.rays());
    return;
  }
  const IntVector& apex = c.rays().front();
  std::set<std::vector<IntVector>> facets;
  for (const auto& h : c.inequalities()) {
    std::vector<IntVector> tight;
    for (const auto& r : c.rays())
      if (dot(h, r) == 0) tight.push_back(r);
    if (tight.size() == c.rays().size()) continue;
    if (rank(tight) + 1 != c.dim()) continue;
    if (std::find(tight.begin(), tight.end(), apex) != tight.end()) continue;
    facets.insert(tight);
  }
  for (const auto& f : facets) {
    std::vector<std::vector<IntVector>> sub;
    triangulate(RationalCone(c.ambient_rank(), f), sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

std::vector<IntVector> hilbert_basis_any(const RationalCone& c, kernels::Execution exec) {
  if (is_simplicial(c)) return hilbert_basis(c, exec);
  std::vector<std::vector<IntVector>> pieces;
  triangulate(c, pieces);
  std::vector<IntVector> candidates;
  for (const auto& piece : pieces) {
    auto sc = simplex_candidates(piece, c.ambient_rank(), exec);
    candidates.insert(candidates.end(), sc.points.begin(), sc.points.end());
  }
  sort_unique(candidates);
  std::vector<IntVector> out;
  for (const auto& x : candidates) {
    bool reducible = false;
    for (const auto& y : candidates) {
      if (y == x) continue;
      const IntVector diff = sub(x, y);
      if (contains(c, diff)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  return out;
}

Integer rational_gcd_denominator(const std::vector<Rational>& values) {
  // values generate c Z with c = gcd(numerators) / lcm(denominators); return 1/c.
  Integer num = 0, den = 1;
  for (const auto& q : values) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  if (num != 1) throw InternalError("ray coordinate group is not (1/b)Z");
  return den;
}

FreeResolution make_resolution(const AffineMonoid& p, std::vector<Integer> levels) {
  if (!p.sharp()) throw DomainError("free resolutions require a sharp monoid");
  if (!is_simplicially_toric(p)) throw DomainError("free resolutions require a simplicially toric monoid");
  FreeResolution res;
  res.source = p;
  res.rank = p.lattice_rank();
  res.rays = p.cone().rays();
  const std::size_t d = res.rank;

  std::vector<RationalVector> coords;  // coords[k] = e_k in the ray basis
  for (std::size_t k = 0; k < d; ++k) {
    RationalVector e(d);
    e[k] = 1;
    coords.push_back(*solve_in_basis(res.rays, e));
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> column;
    for (std::size_t k = 0; k < d; ++k) column.push_back(coords[k][i]);
    const Integer b = rational_gcd_denominator(column);
    res.denominators.push_back(b);
    res.generators.push_back(scale(to_rational(res.rays[i]), make_rational(1, b)));
  }
  res.levels = std::move(levels);
  for (std::size_t i = 0; i < d; ++i)
    res.realized_generators.push_back(scale(res.generators[i], make_rational(1, res.levels[i])));
  return res;
}

std::vector<IntVector> as_integer_basis(const std::vector<RationalVector>& vs) {
  // Scaling by a common denominator keeps coordinates solvable exactly.
  Integer l = 1;
  for (const auto& v : vs)
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<IntVector> out;
  for (const auto& v : vs) out.push_back(to_integer(scale(v, Rational(l))));
  return out;
}

void compositions(std::size_t r, std::size_t budget, IntVector& current, std::size_t pos,
                  const std::function<bool(const IntVector&)>& visit, bool& stop) {
  if (stop) return;
  if (pos == r) {
    if (!visit(current)) stop = true;
    return;
  }
  for (std::size_t a = 0; a <= budget && !stop; ++a) {
    current[pos] = static_cast<unsigned long>(a);
    compositions(r, budget - a, current, pos + 1, visit, stop);
  }
  current[pos] = 0;
}

}  // namespace

// AffineMonoid -----------------------------------------------------------

AffineMonoid::AffineMonoid(RationalCone cone, kernels::Execution exec) : cone_(std::move(cone)) {
  const std::size_t d = cone_.ambient_rank();
  units_ = cone_.lineality();
  if (units_.empty()) {
    simplicial_ = is_simplicial(cone_);
    hilbert_basis_ = hilbert_basis_any(cone_, exec);
    return;
  }
  // Split off the units: Z^d = complement ⊕ units, then work in the
  // complement coordinates where the image cone is strictly convex.
  const std::vector<IntVector> complement = complete_to_basis(units_, d);
  std::vector<IntVector> basis = complement;
  basis.insert(basis.end(), units_.begin(), units_.end());
  const std::size_t q = complement.size();
  std::vector<IntVector> projected;
  for (const auto& r : cone_.rays()) {
    const auto c = solve_in_basis(basis, r);
    IntVector head;
    for (std::size_t i = 0; i < q; ++i) head.push_back(c->at(i).get_num());
    projected.push_back(head);
  }
  const RationalCone quotient(q, projected);
  simplicial_ = is_simplicial(quotient);
  for (const auto& h : hilbert_basis_any(quotient, exec)) {
    IntVector x(d, Integer(0));
    for (std::size_t i = 0; i < q; ++i) x = add(x, scale(complement[i], h[i]));
    hilbert_basis_.push_back(x);
  }
  sort_unique(hilbert_basis_);
}

std::vector<IntVector> AffineMonoid::generators() const {
  std::vector<IntVector> out = hilbert_basis_;
  for (const auto& u : units_) {
    out.push_back(u);
    out.push_back(scale(u, -1));
  }
  return out;
}

bool AffineMonoid::contains(const IntVector& m) const { return toristack::contains(cone_, m); }

// Operations -------------------------------------------------------------

std::vector<IntVector> hilbert_basis(const RationalCone& c, kernels::Execution exec) {
  if (!is_simplicial(c)) throw DomainError("hilbert_basis requires a strictly convex simplicial cone");
  const SimplexCandidates sc = simplex_candidates(c.rays(), c.ambient_rank(), exec);
  std::vector<IntVector> out;
  for (auto i : kernels::irreducible_indices(sc.coefficients, exec)) out.push_back(sc.points[i]);
  sort_unique(out);
  return out;
}

AffineMonoid monoid_from_cone(const RationalCone& sigma) {
  if (!sigma.strictly_convex() || !is_simplicial(sigma))
    throw DomainError("monoid_from_cone requires a strictly convex simplicial cone");
  return AffineMonoid(dual_cone(sigma));
}

bool is_simplicially_toric(const AffineMonoid& p) {
  if (!p.sharp()) throw DomainError("is_simplicially_toric requires a sharp monoid");
  return p.cone().rays().size() == p.lattice_rank();
}

bool FreeResolution::is_minimal() const {
  return std::all_of(levels.begin(), levels.end(), [](const Integer& n) { return n == 1; });
}

FreeResolution minimal_free_resolution(const AffineMonoid& p) {
  return make_resolution(p, std::vector<Integer>(p.lattice_rank(), Integer(1)));
}

FreeResolution admissible_resolution(const AffineMonoid& p, const RayLevels& levels) {
  const auto& rs = p.cone().rays();
  for (const auto& [ray, n] : levels) {
    if (std::find(rs.begin(), rs.end(), ray) == rs.end())
      throw DomainError("level given for " + to_string(ray) + ", which is not a ray of C(P)");
    if (n < 1) throw DomainError("level " + to_string(n) + " on ray " + to_string(ray) + " is not positive");
  }
  std::vector<Integer> ns;
  for (const auto& r : rs) {
    auto it = levels.find(r);
    ns.push_back(it == levels.end() ? Integer(1) : it->second);
  }
  return make_resolution(p, std::move(ns));
}

RationalVector free_coordinates(const FreeResolution& res, const IntVector& m) {
  // g_i = v_i / (b_i n_i), so the g-coordinate is the v-coordinate times b_i n_i.
  const auto c = solve_in_basis(res.rays, m);
  if (!c) throw DomainError("element outside P^gp ⊗ Q");
  RationalVector out(res.rank);
  for (std::size_t i = 0; i < res.rank; ++i) out[i] = (*c)[i] * res.denominators[i] * res.levels[i];
  return out;
}

IntegerMatrix lattice_in_free_coordinates(const FreeResolution& res) {
  IntegerMatrix a(res.rank, res.rank);
  for (std::size_t k = 0; k < res.rank; ++k) {
    IntVector e(res.rank, Integer(0));
    e[k] = 1;
    const RationalVector c = free_coordinates(res, e);
    if (!is_integral(c)) throw InternalError("P^gp is not contained in F^gp: broken resolution");
    for (std::size_t i = 0; i < res.rank; ++i) a(i, k) = c[i].get_num();
  }
  return a;
}

FiniteAbelianGroup resolution_cokernel(const FreeResolution& res) {
  return cokernel_invariants(lattice_in_free_coordinates(res));
}

std::vector<RayCorrespondence> irreducible_ray_correspondence(const FreeResolution& res) {
  std::vector<RayCorrespondence> out;
  const RationalCone& cp = res.source.cone();
  for (std::size_t i = 0; i < res.rank; ++i) {
    RayCorrespondence rc;
    rc.generator_index = i;
    rc.generator = res.realized_generators[i];
    rc.ray = res.rays[i];
    rc.prime_normal = ray_star(cp, res.rays[i]);
    for (std::size_t j = 0; j < res.rank; ++j)
      if (j != i) rc.facet.push_back(res.rays[j]);
    out.push_back(std::move(rc));
  }
  return out;
}

bool in_submonoid(const std::vector<IntVector>& generators, const IntVector& x, const IntVector& grading) {
  std::vector<IntVector> gens;
  std::vector<Integer> deg;
  for (const auto& g : generators) {
    if (is_zero(g)) continue;
    const Integer w = dot(grading, g);
    if (w <= 0) throw DomainError("in_submonoid: generator " + to_string(g) + " has nonpositive degree");
    gens.push_back(g);
    deg.push_back(w);
  }
  std::set<std::pair<IntVector, std::size_t>> failed;
  std::function<bool(const IntVector&, std::size_t)> search = [&](const IntVector& y, std::size_t start) {
    if (is_zero(y)) return true;
    const Integer dy = dot(grading, y);
    if (dy <= 0) return false;
    if (failed.count({y, start})) return false;
    for (std::size_t i = start; i < gens.size(); ++i) {
      if (deg[i] > dy) continue;
      if (search(sub(y, gens[i]), i)) return true;
    }
    failed.insert({y, start});
    return false;
  };
  return search(x, 0);
}

FiniteAbelianGroup quotient_group(const AffineMonoid& p, const std::vector<IntVector>& q_generators,
                                  std::optional<Integer> multiple_bound) {
  if (!p.sharp()) throw DomainError("quotient_group requires a sharp monoid");
  const std::size_t d = p.lattice_rank();
  for (const auto& q : q_generators)
    if (q.size() != d || !p.contains(q)) throw DomainError("Q generator " + to_string(q) + " is not in P");

  const FiniteAbelianGroup group =
      q_generators.empty() ? cokernel_invariants(IntegerMatrix(d, 0))
                           : cokernel_invariants(IntegerMatrix::from_columns(q_generators, d));
  if (!group.is_finite()) throw DomainError("Q is not close to P: Q^gp has smaller rank than P^gp");

  Integer bound;
  if (multiple_bound) {
    bound = *multiple_bound;
  } else {
    Integer l = 1;
    if (is_simplicially_toric(p))
      for (const auto& b : minimal_free_resolution(p).denominators) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b.get_mpz_t());
    bound = std::max(Integer(2 * l), *group.exponent());
  }

  const IntVector w = grading(p.cone());
  for (const auto& h : p.hilbert_basis()) {
    bool found = false;
    for (Integer n = 1; n <= bound && !found; ++n) found = in_submonoid(q_generators, scale(h, n), w);
    if (!found)
      throw DomainError("Q is not close to P: no multiple of " + to_string(h) + " up to " + to_string(bound) +
                        " lies in Q");
  }

  // Saturation: Q^gp ∩ cone(Q) must be generated by the Q generators. In a
  // basis of Q^gp this is a saturated monoid whose Hilbert basis we test.
  const auto hf = hermite_normal_form(IntegerMatrix::from_rows(q_generators, d));
  std::vector<IntVector> qgp;
  for (std::size_t i = 0; i < hf.h.rows(); ++i)
    if (!is_zero(hf.h.row(i))) qgp.push_back(hf.h.row(i));
  std::vector<IntVector> local;
  for (const auto& q : q_generators) local.push_back(to_integer(*solve_in_basis(qgp, q)));
  const RationalCone qcone(d, local);
  for (const auto& h : hilbert_basis_any(qcone, kernels::Execution::parallel)) {
    IntVector x(d, Integer(0));
    for (std::size_t i = 0; i < d; ++i) x = add(x, scale(qgp[i], h[i]));
    if (!in_submonoid(q_generators, x, w))
      throw DomainError("Q is not saturated: " + to_string(x) + " lies in Q^gp ∩ C(Q) but not in Q");
  }
  return group;
}

RestrictedResolution restrict_resolution(const AffineMonoid& p, const FreeResolution& res,
                                         const std::vector<std::size_t>& coordinates) {
  if (!res.is_minimal()) throw DomainError("restrict_resolution expects the minimal free resolution");
  if (!(res.source.cone() == p.cone())) throw DomainError("resolution does not belong to this monoid");
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (coordinates[i] >= res.rank) throw DomainError("coordinate index out of range");
    if (i > 0 && coordinates[i] <= coordinates[i - 1]) throw DomainError("coordinates must be strictly increasing");
  }
  const std::size_t r = coordinates.size();

  RestrictedResolution out;
  out.coordinates = coordinates;
  std::vector<IntVector> projected;
  for (const auto& h : p.hilbert_basis()) {
    const IntVector full = to_integer(free_coordinates(res, h));
    IntVector image;
    for (auto c : coordinates) image.push_back(full[c]);
    if (!is_zero(image)) projected.push_back(image);
  }
  sort_unique(projected);

  if (r == 0) {
    out.monoid = AffineMonoid(RationalCone::zero(0));
    out.resolution = minimal_free_resolution(out.monoid);
    return out;
  }

  const auto hf = hermite_normal_form(IntegerMatrix::from_rows(projected, r));
  for (std::size_t i = 0; i < hf.h.rows(); ++i)
    if (!is_zero(hf.h.row(i))) out.lattice_basis.push_back(hf.h.row(i));
  if (out.lattice_basis.size() != r) throw InternalError("projected monoid is not of full rank");

  std::vector<IntVector> local;
  for (const auto& q : projected) local.push_back(to_integer(*solve_in_basis(out.lattice_basis, q)));
  out.monoid = AffineMonoid(RationalCone(r, local));

  // The projection image must already be saturated.
  const IntVector w = grading(out.monoid.cone());
  for (const auto& h : out.monoid.hilbert_basis())
    if (!in_submonoid(local, h, w)) throw InternalError("projected monoid is not saturated");

  out.resolution = minimal_free_resolution(out.monoid);

  // Projected resolution: the standard basis of N^r in Q^gp ⊗ Q coordinates.
  std::vector<RationalVector> expected;
  for (std::size_t j = 0; j < r; ++j) {
    RationalVector e(r);
    e[j] = 1;
    expected.push_back(*solve_in_basis(out.lattice_basis, e));
  }
  auto key = [](std::vector<RationalVector> vs) {
    std::vector<IntVector> scaled = as_integer_basis(vs);
    std::vector<std::pair<IntVector, RationalVector>> tagged;
    for (std::size_t i = 0; i < vs.size(); ++i) tagged.emplace_back(scaled[i], vs[i]);
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    std::vector<RationalVector> sorted;
    for (auto& t : tagged) sorted.push_back(t.second);
    return sorted;
  };
  if (key(expected) != key(out.resolution.generators))
    throw InternalError("projected resolution differs from the recomputed minimal free resolution");
  return out;
}

bool saturation_intersection_check(const FreeResolution& res, std::size_t degree_bound) {
  const AffineMonoid& p = res.source;
  const std::vector<IntVector> gens = p.generators();
  const IntVector w = grading(p.cone());
  IntVector current(res.rank, Integer(0));
  bool stop = false;
  bool ok = true;
  compositions(res.rank, degree_bound, current, 0,
               [&](const IntVector& x) {
                 RationalVector m(res.rank);
                 for (std::size_t i = 0; i < res.rank; ++i)
                   for (std::size_t j = 0; j < res.rank; ++j) m[j] += x[i] * res.realized_generators[i][j];
                 if (!is_integral(m)) return true;
                 if (!in_submonoid(gens, to_integer(m), w)) {
                   ok = false;
                   return false;
                 }
                 return true;
               },
               stop);
  return ok;
}

}  // namespace toristack
