#include "toristack/report.hpp"

#include <functional>
#include <optional>
#include <sstream>

namespace toristack {

using nlohmann::json;

namespace {

const Integer kSafeInteger("9007199254740991");

json abelian_json(const FiniteAbelianGroup& g) {
  json out;
  json factors = json::array();
  std::string label;
  for (const auto& d : g.invariant_factors()) {
    factors.push_back(to_json(d));
    label += (label.empty() ? "" : " x ") + ("Z/" + d.get_str());
  }
  out["invariant_factors"] = std::move(factors);
  out["free_rank"] = g.free_rank();
  if (g.order()) out["order"] = to_json(*g.order());
  out["label"] = label.empty() ? std::string("0") : label;
  return out;
}

json index_list(const RayIndexSet& s) {
  json out = json::array();
  for (auto i : s) out.push_back(i);
  return out;
}

json vectors_json(const std::vector<IntVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

json cone_ref(const Fan& fan, std::size_t id) {
  json out;
  out["id"] = id;
  out["rays"] = index_list(fan.cones()[id]);
  return out;
}

Integer cone_multiplicity(const Fan& fan, std::size_t id) {
  return fan.cones()[id].empty() ? Integer(1) : multiplicity(fan.cone(id));
}

std::string dump(const json& j, OutputFormat format) {
  return format == OutputFormat::json ? j.dump(2) + "\n" : render_text(j);
}

CommandResult finish(int code, const json& j, OutputFormat format) { return {code, dump(j, format)}; }

// Loads and validates the document, then runs body; maps every failure onto
// its exit code with a machine-readable payload.
CommandResult guarded(const std::string& path, OutputFormat format,
                      const std::function<json(const StackyFan&, const FanDocument&)>& body) {
  json err;
  try {
    const FanDocument doc = load_document(path);
    const StackyFan sf = to_stacky_fan(doc);
    return finish(kExitOk, body(sf, doc), format);
  } catch (const DocumentParseError& e) {
    err["status"] = "parse_error";
    err["message"] = e.what();
    if (e.line() != 0) {
      err["line"] = e.line();
      err["column"] = e.column();
    }
    return finish(kExitParse, err, format);
  } catch (const FanValidationError& e) {
    err["status"] = "invalid";
    err["issues"] = issues_json(e.issues());
    return finish(kExitInvalid, err, format);
  } catch (const InternalError& e) {
    err["status"] = "internal_error";
    err["message"] = e.what();
    return finish(kExitInternal, err, format);
  } catch (const DomainError& e) {
    err["status"] = "invalid";
    err["message"] = e.what();
    return finish(kExitInvalid, err, format);
  } catch (const std::exception& e) {
    err["status"] = "internal_error";
    err["message"] = e.what();
    return finish(kExitInternal, err, format);
  }
}

void render(const json& j, int indent, std::ostringstream& out);

bool is_flat(const json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
  return true;
}

std::string inline_value(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_value(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(const json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_flat(value)) {
        out << pad << key << ": " << inline_value(value) << "\n";
      } else {
        out << pad << key << ":\n";
        render(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (is_flat(e)) {
        out << pad << "- " << inline_value(e) << "\n";
      } else {
        out << pad << "-\n";
        render(e, indent + 2, out);
      }
    }
  } else {
    out << pad << inline_value(j) << "\n";
  }
}

}  // namespace

json to_json(const Integer& v) {
  if (abs(v) <= kSafeInteger) return json(std::stoll(v.get_str()));
  return json(v.get_str());
}

json to_json(const Rational& v) { return json(to_string(v)); }

json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json group_json(const FiniteAbelianGroup& g) {
  json out;
  json factors = json::array();
  std::string label;
  for (const auto& d : g.invariant_factors()) {
    factors.push_back(to_json(d));
    label += (label.empty() ? "" : " × ") + ("μ_" + d.get_str());
  }
  out["invariant_factors"] = std::move(factors);
  out["order"] = to_json(g.order().value_or(Integer(0)));
  out["label"] = label.empty() ? std::string("trivial") : label;
  return out;
}

json issues_json(const std::vector<FanIssue>& issues) {
  json out = json::array();
  for (const auto& i : issues) {
    json e;
    e["kind"] = to_string(i.kind);
    e["cones"] = index_list(i.cones);
    e["rays"] = index_list(i.rays);
    e["message"] = i.message;
    out.push_back(std::move(e));
  }
  return out;
}

json stabilizer_report(const StackyFan& sf, std::size_t cone_id) {
  const Fan& fan = sf.fan();
  const LocalChart chart = local_chart(sf, cone_id);
  json out;
  out["cone"] = cone_ref(fan, cone_id);
  out["multiplicity"] = to_json(cone_multiplicity(fan, cone_id));
  out["stacky_multiplicity"] = to_json(stacky_multiplicity(sf, cone_id));
  json levels = json::array();
  for (auto i : fan.cones()[cone_id]) levels.push_back(to_json(sf.level(i)));
  out["levels"] = std::move(levels);
  out["stabilizer"] = group_json(chart.group);
  out["generator_rays"] = index_list(chart.generator_rays);
  out["action_weights"] = vectors_json(chart.action_weights);
  return out;
}

json mfr_report(const StackyFan& sf, std::size_t cone_id) {
  const Fan& fan = sf.fan();
  json out;
  out["cone"] = cone_ref(fan, cone_id);
  if (fan.cones()[cone_id].empty()) {
    // P is the trivial monoid
    for (const char* key : {"n_prime", "hilbert_basis", "cone_rays", "denominators", "free_generators", "correspondence"})
      out[key] = json::array();
    out["cokernel"] = abelian_json(FiniteAbelianGroup());
    return out;
  }
  const Splitting s = split_cone(fan.cone(cone_id));
  const AffineMonoid p = monoid_from_cone(s.local_cone);
  const FreeResolution res = minimal_free_resolution(p);
  out["n_prime"] = vectors_json(s.n_prime);
  out["hilbert_basis"] = vectors_json(p.hilbert_basis());
  out["cone_rays"] = vectors_json(res.rays);
  json b = json::array();
  for (const auto& x : res.denominators) b.push_back(to_json(x));
  out["denominators"] = std::move(b);
  json f = json::array();
  for (const auto& g : res.generators) f.push_back(to_json(g));
  out["free_generators"] = std::move(f);
  out["cokernel"] = abelian_json(resolution_cokernel(res));

  json table = json::array();
  for (const auto& c : irreducible_ray_correspondence(res)) {
    json row;
    row["index"] = c.generator_index;
    row["generator"] = to_json(c.generator);
    row["ray"] = to_json(c.ray);
    row["prime_normal"] = to_json(c.prime_normal);
    row["facet"] = vectors_json(c.facet);
    const IntVector u = ray_star(p.cone(), c.ray);
    for (std::size_t k = 0; k < s.local_rays.size(); ++k)
      if (s.local_rays[k] == u) row["fan_ray"] = fan.cones()[cone_id][k];
    table.push_back(std::move(row));
  }
  out["correspondence"] = std::move(table);
  return out;
}

json fan_report(const StackyFan& sf, const std::vector<Integer>& characteristics, std::size_t degree_bound) {
  const Fan& fan = sf.fan();
  json out;
  out["status"] = "ok";
  out["rank"] = fan.ambient_rank();
  out["rays"] = vectors_json(fan.rays());
  json levels = json::array();
  for (const auto& n : sf.levels()) levels.push_back(to_json(n));
  out["levels"] = std::move(levels);
  json chars = json::array();
  for (const auto& p : characteristics) chars.push_back(to_json(p));
  out["characteristics"] = std::move(chars);

  std::vector<std::size_t> all(fan.cones().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto charts = local_charts(sf, all);

  const bool tame = is_tame(sf, characteristics);
  const bool dm = is_deligne_mumford(sf, characteristics);
  if (tame != dm) throw InternalError("stabilizer orders and stacky multiplicities disagree on tameness");
  bool trivial = true;
  for (const auto& c : charts) trivial = trivial && c.group.is_trivial();
  out["complete"] = is_complete(fan);
  out["tame"] = tame;
  out["deligne_mumford"] = dm;
  out["smooth_canonical"] = trivial;
  json notes = json::array();
  if (trivial)
    notes.push_back("all stabilizers are trivial: the stack is the smooth toric variety of the fan");
  out["notes"] = std::move(notes);

  json cones = json::array();
  for (std::size_t id = 0; id < charts.size(); ++id) {
    json c = cone_ref(fan, id);
    c["dim"] = fan.dim(id);
    c["multiplicity"] = to_json(cone_multiplicity(fan, id));
    c["stacky_multiplicity"] = to_json(stacky_multiplicity(sf, id));
    c["stabilizer"] = group_json(charts[id].group);
    cones.push_back(std::move(c));
  }
  out["cones"] = std::move(cones);

  json chart_list = json::array();
  bool all_kummer = true;
  for (auto id : fan.maximal_cone_ids()) {
    const LocalChart& ch = charts[id];
    json c;
    c["cone"] = cone_ref(fan, id);
    c["r"] = ch.r;
    c["torus_rank"] = ch.torus_rank;
    c["group"] = group_json(ch.group);
    c["generator_rays"] = index_list(ch.generator_rays);
    c["action_weights"] = vectors_json(ch.action_weights);
    c["coarse_generators"] = vectors_json(ch.coarse_generators);
    c["kummer_etale"] = is_kummer_etale_chart(ch, characteristics);
    all_kummer = all_kummer && c["kummer_etale"].get<bool>();
    json ideals = json::array();
    for (std::size_t tau = 0; tau < fan.cones().size(); ++tau) {
      if (!fan.is_face_of(tau, id)) continue;
      json e;
      e["face"] = cone_ref(fan, tau);
      json coords = json::array();
      for (auto k : cycle_ideal_in_chart(ch, fan.cones()[tau])) coords.push_back(k);
      e["chart_coordinates"] = std::move(coords);
      e["classical_generators"] = vectors_json(cycle_ideal_classical(fan, tau, id));
      ideals.push_back(std::move(e));
    }
    c["cycle_ideals"] = std::move(ideals);
    const InvariantRingCheck check = invariant_ring_check(ch, degree_bound);
    json inv;
    inv["degree_bound"] = check.degree_bound;
    inv["monomials"] = check.monomials;
    inv["invariant_monomials"] = check.invariant;
    inv["holds"] = check.holds();
    c["invariant_ring_check"] = std::move(inv);
    chart_list.push_back(std::move(c));
  }
  out["charts"] = std::move(chart_list);
  out["kummer_etale_charts"] = all_kummer;

  json divisors = json::array();
  for (const auto& d : boundary_divisors(sf)) {
    json e;
    e["ray"] = d.ray;
    e["level"] = to_json(d.level);
    e["generic_stabilizer"] = group_json(d.generic_stabilizer);
    json where = json::array();
    for (const auto& w : d.charts) where.push_back(json{{"cone", w.cone_id}, {"coordinate", w.coordinate}});
    e["charts"] = std::move(where);
    divisors.push_back(std::move(e));
  }
  out["boundary_divisors"] = std::move(divisors);
  return out;
}

std::string render_text(const json& j) {
  std::ostringstream out;
  render(j, 0, out);
  return out.str();
}

CommandResult run_validate(const std::string& path, OutputFormat format) {
  return guarded(path, format, [](const StackyFan& sf, const FanDocument&) {
    json out;
    out["status"] = "valid";
    out["rank"] = sf.fan().ambient_rank();
    out["rays"] = sf.fan().rays().size();
    out["maximal_cones"] = sf.fan().maximal_cones().size();
    out["cones"] = sf.fan().cones().size();
    return out;
  });
}

CommandResult run_report(const std::string& path, OutputFormat format, std::size_t degree_bound) {
  return guarded(path, format, [degree_bound](const StackyFan& sf, const FanDocument& doc) {
    return fan_report(sf, doc.characteristics, degree_bound);
  });
}

CommandResult run_mfr(const std::string& path, const RayIndexSet& cone, OutputFormat format) {
  return guarded(path, format,
                 [&cone](const StackyFan& sf, const FanDocument&) { return mfr_report(sf, sf.fan().cone_id(cone)); });
}

CommandResult run_stabilizer(const std::string& path, const RayIndexSet& cone, OutputFormat format) {
  return guarded(path, format, [&cone](const StackyFan& sf, const FanDocument&) {
    return stabilizer_report(sf, sf.fan().cone_id(cone));
  });
}

CommandResult run_complete(const std::string& path, OutputFormat format) {
  return guarded(path, format, [](const StackyFan& sf, const FanDocument&) {
    json out;
    out["complete"] = is_complete(sf.fan());
    return out;
  });
}

}  // namespace toristack
