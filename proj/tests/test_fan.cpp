#include <algorithm>

#include "doctest.h"
#include "toristack/error.hpp"
#include "toristack/fan.hpp"

using namespace toristack;

namespace {

std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (auto r : rows) out.push_back(make_vector(r));
  return out;
}

std::vector<FanIssueKind> kinds(const std::vector<FanIssue>& issues) {
  std::vector<FanIssueKind> out;
  for (const auto& i : issues) out.push_back(i.kind);
  return out;
}

bool has(const std::vector<FanIssue>& issues, FanIssueKind k) {
  const auto ks = kinds(issues);
  return std::find(ks.begin(), ks.end(), k) != ks.end();
}

Fan p1() { return validate_fan(1, vs({{1}, {-1}}), {{0}, {1}}); }
Fan p2() { return validate_fan(2, vs({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {0, 2}}); }
Fan a1() { return validate_fan(2, vs({{1, 0}, {1, 2}}), {{0, 1}}); }
Fan hirzebruch(long a) { return validate_fan(2, vs({{1, 0}, {0, 1}, {-1, a}, {0, -1}}), {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

}  // namespace

TEST_CASE("valid fans and their faces") {
  const Fan f = p2();
  CHECK(f.cones().size() == 7);
  CHECK(f.cones()[0].empty());
  CHECK(f.maximal_cone_ids().size() == 3);
  CHECK(f.cone_id({1, 0}) == f.cone_id({0, 1}));
  CHECK_THROWS_AS(f.cone_id({0, 1, 2}), DomainError);
  const auto ray0 = f.cone_id({0});
  CHECK(f.is_face_of(ray0, f.cone_id({0, 1})));
  CHECK_FALSE(f.is_face_of(ray0, f.cone_id({1, 2})));
  CHECK(f.is_face_of(0, ray0));
  CHECK(f.maximal_cones_containing(ray0).size() == 2);
  CHECK(p1().cones().size() == 3);
}

TEST_CASE("fan axiom violations are all reported") {
  CHECK(kinds(fan_issues(2, vs({{1, 0}, {0, 1}, {1, 1}}), {{0, 1}, {2}})) ==
        std::vector<FanIssueKind>{FanIssueKind::IntersectionNotFace});
  const auto overlap = fan_issues(2, vs({{1, 0}, {1, 2}, {1, 1}}), {{0, 1}, {2}});
  REQUIRE(overlap.size() == 1);
  CHECK(overlap[0].cones == std::vector<std::size_t>{0, 1});

  const auto np = fan_issues(2, vs({{2, 0}, {0, 1}}), {{0, 1}});
  REQUIRE(np.size() == 1);
  CHECK(np[0].kind == FanIssueKind::NonPrimitiveRay);
  CHECK(np[0].message.find("(1,0)") != std::string::npos);

  CHECK(has(fan_issues(2, vs({{0, 0}, {0, 1}}), {{0, 1}}), FanIssueKind::ZeroRay));
  CHECK(has(fan_issues(2, vs({{1, 0}, {1, 0}}), {{0}, {1}}), FanIssueKind::DuplicateRay));
  CHECK(has(fan_issues(2, vs({{1, 0}, {0, 1}}), {{0, 5}}), FanIssueKind::RayIndexOutOfRange));
  CHECK(has(fan_issues(2, vs({{1, 0}, {0, 1}}), {{0, 0, 1}}), FanIssueKind::RepeatedRayInCone));
  CHECK(has(fan_issues(2, vs({{1, 0}, {0, 1}, {1, 1}}), {{0, 1, 2}}), FanIssueKind::NonSimplicial));
  CHECK(has(fan_issues(2, vs({{1, 0}, {0, 1}, {-1, 0}}), {{0, 1}}), FanIssueKind::UnusedRay));
  CHECK(has(fan_issues(2, vs({{1, 0, 0}, {0, 1}}), {{0, 1}}), FanIssueKind::RankMismatch));
  // a cone containing a line is not strictly convex, hence not simplicial
  CHECK(has(fan_issues(1, vs({{1}, {-1}}), {{0, 1}}), FanIssueKind::NonSimplicial));

  try {
    validate_fan(2, vs({{2, 0}, {0, 0}}), {{0, 1}});
    FAIL("expected FanValidationError");
  } catch (const FanValidationError& e) {
    CHECK(e.issues().size() >= 2);
  }
}

TEST_CASE("stacky fans") {
  CHECK_THROWS_AS(StackyFan(p1(), {Integer(2), Integer(0)}), FanValidationError);
  CHECK_THROWS_AS(StackyFan(p1(), {Integer(2)}), FanValidationError);

  const StackyFan sf(p1(), {Integer(2), Integer(3)});
  CHECK(free_net_points(sf) == vs({{2}, {-3}}));
  const StackyFan canonical(p2(), std::vector<Integer>(3, Integer(1)));
  CHECK(free_net_points(canonical) == p2().rays());
  const StackyFan a(a1(), {Integer(1), Integer(2)});
  CHECK(free_net_points(a) == vs({{1, 0}, {2, 4}}));
}

TEST_CASE("completeness") {
  CHECK(is_complete(p1()));
  CHECK(is_complete(p2()));
  for (long a : {0L, 1L, 2L, 3L}) CHECK(is_complete(hirzebruch(a)));
  CHECK_FALSE(is_complete(a1()));
  CHECK_FALSE(is_complete(validate_fan(2, vs({{1, 0}, {0, 1}}), {{0, 1}})));
  CHECK_FALSE(is_complete(validate_fan(2, vs({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}})));
  // two half-planes missing: all walls shared but not full-dimensional
  CHECK_FALSE(is_complete(validate_fan(2, vs({{1, 0}, {-1, 0}}), {{0}, {1}})));
  CHECK_FALSE(is_complete(validate_fan(1, vs({{1}}), {{0}})));
}

TEST_CASE("stacky multiplicities and tameness") {
  const StackyFan smooth(p2(), std::vector<Integer>(3, Integer(1)));
  for (std::size_t id = 0; id < p2().cones().size(); ++id) CHECK(stacky_multiplicity(smooth, id) == 1);
  CHECK(is_tame(smooth, {Integer(2), Integer(3), Integer(5)}));

  const StackyFan a(a1(), {Integer(1), Integer(1)});
  CHECK(stacky_multiplicity(a, a.fan().cone_id({0, 1})) == 2);
  CHECK_FALSE(is_tame(a, {Integer(2)}));
  CHECK(is_tame(a, {Integer(3)}));
  CHECK(is_tame(a, {Integer(0)}));

  const StackyFan ray(validate_fan(1, vs({{1}}), {{0}}), {Integer(3)});
  CHECK(stacky_multiplicity(ray, 1) == 3);
  CHECK(stacky_multiplicity(ray, 0) == 1);

  const StackyFan levels(p1(), {Integer(2), Integer(3)});
  CHECK(is_tame(levels, {Integer(0)}));
  CHECK_FALSE(is_tame(levels, {Integer(3)}));
}

TEST_CASE("classical cycle ideals") {
  const Fan orthant = validate_fan(2, vs({{1, 0}, {0, 1}}), {{0, 1}});
  const auto sigma = orthant.cone_id({0, 1});
  CHECK(cycle_ideal_classical(orthant, orthant.cone_id({0}), sigma) == vs({{1, 0}}));
  CHECK(cycle_ideal_classical(orthant, sigma, sigma) == vs({{0, 1}, {1, 0}}));
  CHECK(cycle_ideal_classical(orthant, 0, sigma).empty());

  const Fan a = a1();
  CHECK(cycle_ideal_classical(a, a.cone_id({0}), a.cone_id({0, 1})) == vs({{1, 0}, {2, -1}}));
  CHECK_THROWS_AS(cycle_ideal_classical(p2(), p2().cone_id({2}), p2().cone_id({0, 1})), DomainError);
}
