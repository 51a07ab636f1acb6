#include "toristack/chart.hpp"

#include <algorithm>
#include <exception>
#include <functional>

#include "toristack/error.hpp"

namespace toristack {

namespace {

IntVector local_coordinates(const Splitting& s, const IntVector& v) {
  const auto c = solve_in_basis(s.n_prime, v);
  if (!c || !is_integral(*c)) throw InternalError("ray " + to_string(v) + " is not in N'");
  return to_integer(*c);
}

void check_order(const StackyFan& sf, const LocalChart& chart) {
  const Integer expected = stacky_multiplicity(sf, chart.cone_id);
  if (chart.group.order() != expected)
    throw InternalError("stabilizer order " + to_string(*chart.group.order()) + " of cone " +
                        std::to_string(chart.cone_id) + " differs from the stacky multiplicity " + to_string(expected));
}

}  // namespace

Splitting split_cone(const RationalCone& sigma) {
  if (!sigma.strictly_convex() || !is_simplicial(sigma))
    throw DomainError("split_cone requires a strictly convex simplicial cone");
  const std::size_t d = sigma.ambient_rank();
  Splitting s;
  if (is_full_dimensional(sigma)) {
    const IntegerMatrix id = IntegerMatrix::identity(d);
    for (std::size_t j = 0; j < d; ++j) s.n_prime.push_back(id.column(j));
  } else {
    s.n_prime = saturate(sigma.rays(), d);
    s.n_doubleprime = complete_to_basis(s.n_prime, d);
  }
  for (const auto& r : sigma.rays()) s.local_rays.push_back(local_coordinates(s, r));
  s.local_cone = RationalCone(s.n_prime.size(), s.local_rays);
  return s;
}

LocalChart local_chart(const StackyFan& sf, std::size_t cone_id) {
  const Fan& fan = sf.fan();
  LocalChart chart;
  chart.cone_id = cone_id;
  chart.cone_rays = fan.cones().at(cone_id);
  chart.r = chart.cone_rays.size();
  chart.torus_rank = fan.ambient_rank() - chart.r;
  if (chart.r == 0) {
    // the open torus: no chart coordinates, trivial group
    const IntegerMatrix id = IntegerMatrix::identity(fan.ambient_rank());
    for (std::size_t j = 0; j < fan.ambient_rank(); ++j) chart.splitting.n_doubleprime.push_back(id.column(j));
    return chart;
  }
  chart.splitting = split_cone(fan.cone(cone_id));

  const RationalCone& local = chart.splitting.local_cone;
  std::vector<IntVector> fan_rays_local;
  for (auto i : chart.cone_rays) fan_rays_local.push_back(local_coordinates(chart.splitting, fan.rays()[i]));

  const AffineMonoid p = monoid_from_cone(local);
  // Each ray v of C(P) = σ'^∨ pairs positively with exactly one ray of σ';
  // that fan ray's level scales the generator on v.
  RayLevels levels;
  for (const auto& v : p.cone().rays()) {
    const IntVector u = ray_star(p.cone(), v);
    const auto it = std::find(fan_rays_local.begin(), fan_rays_local.end(), u);
    if (it == fan_rays_local.end()) throw InternalError("dual ray does not match a fan ray");
    const std::size_t fan_ray = chart.cone_rays[static_cast<std::size_t>(it - fan_rays_local.begin())];
    chart.generator_rays.push_back(fan_ray);
    levels[v] = sf.level(fan_ray);
  }
  chart.resolution = admissible_resolution(p, levels);
  chart.coarse_generators = p.hilbert_basis();

  const IntegerMatrix a = lattice_in_free_coordinates(chart.resolution);
  const SmithForm snf = smith_normal_form(a);
  std::vector<Integer> factors;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < chart.r; ++i) {
    const Integer& s = snf.s(i, i);
    if (s == 0) throw InternalError("P^gp does not have full rank in F^gp");
    if (s != 1) {
      factors.push_back(s);
      rows.push_back(i);
    }
  }
  chart.group = FiniteAbelianGroup(factors);
  for (std::size_t j = 0; j < chart.r; ++j) {
    std::vector<Integer> w;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Integer x = snf.u(rows[k], j);
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), factors[k].get_mpz_t());
      w.push_back(x);
    }
    chart.action_weights.push_back(std::move(w));
  }
  // Rescale each cyclic factor by a unit so that the first coordinate whose
  // weight is a unit gets weight 1; an automorphism of G, fixed for output.
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t j = 0; j < chart.r; ++j) {
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), chart.action_weights[j][k].get_mpz_t(), factors[k].get_mpz_t()) == 0) continue;
      for (auto& w : chart.action_weights) {
        w[k] *= inv;
        mpz_fdiv_r(w[k].get_mpz_t(), w[k].get_mpz_t(), factors[k].get_mpz_t());
      }
      break;
    }
  }
  check_order(sf, chart);
  return chart;
}

std::vector<LocalChart> local_charts(const StackyFan& sf, const std::vector<std::size_t>& cone_ids,
                                     kernels::Execution exec) {
  std::vector<LocalChart> out(cone_ids.size());
  std::vector<std::exception_ptr> errors(cone_ids.size());
  const auto n = static_cast<std::int64_t>(cone_ids.size());
  auto run = [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = local_chart(sf, cone_ids[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (exec == kernels::Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) run(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) run(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

FiniteAbelianGroup stabilizer(const StackyFan& sf, std::size_t cone_id) { return local_chart(sf, cone_id).group; }

bool is_deligne_mumford(const StackyFan& sf, const std::vector<Integer>& residue_characteristics) {
  std::vector<std::size_t> ids(sf.fan().cones().size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  for (const auto& chart : local_charts(sf, ids))
    if (!is_kummer_etale_chart(chart, residue_characteristics)) return false;
  return true;
}

bool is_kummer_etale_chart(const LocalChart& chart, const std::vector<Integer>& residue_characteristics) {
  const Integer order = *chart.group.order();
  for (const auto& p : residue_characteristics) {
    if (p == 0) continue;
    Integer g;
    mpz_gcd(g.get_mpz_t(), order.get_mpz_t(), p.get_mpz_t());
    if (g != 1) return false;
  }
  return true;
}

std::vector<std::size_t> cycle_ideal_in_chart(const LocalChart& chart, const RayIndexSet& face_rays) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < chart.generator_rays.size(); ++j)
    if (std::find(face_rays.begin(), face_rays.end(), chart.generator_rays[j]) != face_rays.end()) out.push_back(j);
  return out;
}

std::vector<std::size_t> cycle_ideal_in_chart(const StackyFan& sf, std::size_t sigma_face, std::size_t tau_chart) {
  if (!sf.fan().is_face_of(sigma_face, tau_chart))
    throw DomainError("cycle_ideal_in_chart: cone " + std::to_string(sigma_face) + " is not a face of cone " +
                      std::to_string(tau_chart));
  return cycle_ideal_in_chart(local_chart(sf, tau_chart), sf.fan().cones()[sigma_face]);
}

std::vector<BoundaryDivisor> boundary_divisors(const StackyFan& sf) {
  const Fan& fan = sf.fan();
  const auto max_ids = fan.maximal_cone_ids();
  const auto charts = local_charts(sf, max_ids);
  std::vector<BoundaryDivisor> out;
  for (std::size_t ray = 0; ray < fan.rays().size(); ++ray) {
    BoundaryDivisor div;
    div.ray = ray;
    div.level = sf.level(ray);
    const std::size_t ray_cone = fan.cone_id({ray});
    div.generic_stabilizer = stabilizer(sf, ray_cone);
    for (std::size_t m = 0; m < max_ids.size(); ++m) {
      if (!fan.is_face_of(ray_cone, max_ids[m])) continue;
      const auto coords = cycle_ideal_in_chart(charts[m], {ray});
      if (coords.size() != 1) throw InternalError("ray does not cut a single chart coordinate");
      div.charts.push_back({max_ids[m], coords.front()});
    }
    out.push_back(std::move(div));
  }
  return out;
}

std::vector<Integer> group_image(const LocalChart& chart, const IntVector& x) {
  const auto& factors = chart.group.invariant_factors();
  std::vector<Integer> out(factors.size(), Integer(0));
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < factors.size(); ++k) out[k] += x[j] * chart.action_weights[j][k];
  for (std::size_t k = 0; k < factors.size(); ++k)
    mpz_fdiv_r(out[k].get_mpz_t(), out[k].get_mpz_t(), factors[k].get_mpz_t());
  return out;
}

InvariantRingCheck invariant_ring_check(const LocalChart& chart, std::size_t degree_bound) {
  InvariantRingCheck out;
  out.degree_bound = degree_bound;
  const FreeResolution& res = chart.resolution;
  IntVector a(chart.r, Integer(0));
  auto visit = [&] {
    ++out.monomials;
    const auto g = group_image(chart, a);
    const bool fixed = std::all_of(g.begin(), g.end(), [](const Integer& v) { return v == 0; });
    RationalVector m(chart.r);
    for (std::size_t j = 0; j < chart.r; ++j)
      for (std::size_t l = 0; l < chart.r; ++l) m[l] += a[j] * res.realized_generators[j][l];
    if (fixed) ++out.invariant;
    if (fixed != is_integral(m)) ++out.weight_mismatches;
  };
  // every a in N^r with |a| <= degree_bound
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t left) {
    if (i == chart.r) {
      visit();
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      a[i] = static_cast<long>(v);
      walk(i + 1, left - v);
    }
    a[i] = 0;
  };
  walk(0, degree_bound);
  out.saturated = chart.r == 0 || saturation_intersection_check(res, degree_bound);
  return out;
}

}  // namespace toristack
