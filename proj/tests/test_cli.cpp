#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "toristack/report.hpp"

using namespace toristack;
using nlohmann::json;

namespace {

const std::string kCli = TORISTACK_CLI;
const std::string kFixtures = TORISTACK_FIXTURES;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name + ".json"; }

std::string temp_document(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("toristack_test_" + name + ".json");
  std::ofstream(path) << text;
  return path.string();
}

const json* find_cone(const json& cones, std::vector<std::size_t> rays) {
  for (const auto& c : cones)
    if (c["rays"].get<std::vector<std::size_t>>() == rays) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("validate " + fixture("p2")).code == 0);
  CHECK(run("validate " + fixture("invalid_overlap")).code == 1);
  CHECK(run("validate " + fixture("invalid_level_zero")).code == 1);
  CHECK(run("validate " + fixture("invalid_nonprimitive")).code == 1);
  CHECK(run("validate " + fixture("malformed")).code == 2);
  CHECK(run("validate " + fixture("wrong_type")).code == 2);
  CHECK(run("report " + fixture("malformed")).code == 2);
  CHECK(run("validate").code == 2);
  CHECK(run("frobnicate " + fixture("p2")).code == 2);
  CHECK(run("report " + fixture("p2") + " --format xml").code == 2);
  CHECK(run("mfr " + fixture("p2") + " --cone 0,x").code == 2);
  CHECK(run("mfr " + fixture("p2") + " --cone 0,1,2").code == 1);  // not a cone
  CHECK(run("--help").code == 0);
}

TEST_CASE("validate output") {
  const Run ok = run("validate " + fixture("p2"));
  CHECK(json::parse(ok.out)["status"] == "valid");

  const json overlap = json::parse(run("validate " + fixture("invalid_overlap")).out);
  REQUIRE(overlap["issues"].size() == 1);
  CHECK(overlap["issues"][0]["kind"] == "IntersectionNotFace");
  CHECK(overlap["issues"][0]["cones"] == json::array({0, 1}));

  const json np = json::parse(run("validate " + fixture("invalid_nonprimitive")).out);
  CHECK(np["issues"][0]["message"].get<std::string>().find("(1,0)") != std::string::npos);

  const json bad = json::parse(run("validate " + fixture("malformed")).out);
  CHECK(bad["status"] == "parse_error");
  CHECK(bad["line"] == 3);
}

TEST_CASE("report of P1 with levels 2 and 3") {
  const json r = json::parse(run("report " + fixture("p1_levels_2_3")).out);
  CHECK(r["complete"] == true);
  CHECK(r["tame"] == true);
  CHECK(r["deligne_mumford"] == true);
  CHECK(r["kummer_etale_charts"] == true);
  CHECK((*find_cone(r["cones"], {}))["stabilizer"]["label"] == "trivial");
  CHECK((*find_cone(r["cones"], {0}))["stabilizer"]["label"] == "μ_2");
  CHECK((*find_cone(r["cones"], {1}))["stabilizer"]["label"] == "μ_3");
  CHECK(r["boundary_divisors"].size() == 2);
  for (const auto& c : r["charts"]) CHECK(c["invariant_ring_check"]["holds"] == true);
}

TEST_CASE("report of the A1 cone in characteristic 2") {
  const json r = json::parse(run("report " + fixture("a1_char2")).out);
  CHECK(r["tame"] == false);
  CHECK(r["deligne_mumford"] == false);
  CHECK(r["complete"] == false);
  REQUIRE(r["charts"].size() == 1);
  CHECK(r["charts"][0]["group"]["invariant_factors"] == json::array({2}));
  CHECK(r["charts"][0]["action_weights"] == json::array({json::array({1}), json::array({1})}));
  CHECK(r["charts"][0]["kummer_etale"] == false);
}

TEST_CASE("report of a smooth fan notes the toric variety") {
  for (const char* name : {"p2", "hirzebruch_1", "a3"}) {
    const json r = json::parse(run(std::string("report ") + fixture(name)).out);
    CHECK(r["smooth_canonical"] == true);
    CHECK(r["notes"].size() == 1);
    for (const auto& c : r["cones"]) CHECK(c["stabilizer"]["order"] == 1);
  }
  const json p2 = json::parse(run("report " + fixture("p2")).out);
  CHECK(p2["charts"].size() == 3);
  for (const auto& c : p2["charts"]) CHECK(c["cycle_ideals"].size() == 4);
}

TEST_CASE("mfr command") {
  const json a1 = json::parse(run("mfr " + fixture("a1_cone") + " --cone 0,1").out);
  CHECK(a1["denominators"] == json::array({2, 2}));
  CHECK(a1["free_generators"] == json::parse(R"([["0", "1/2"], ["1", "-1/2"]])"));
  CHECK(a1["cokernel"]["invariant_factors"] == json::array({2}));
  CHECK(a1["correspondence"].size() == 2);

  const json smooth = json::parse(run("mfr " + fixture("p2") + " --cone 1,0").out);
  CHECK(smooth["denominators"] == json::array({1, 1}));
  CHECK(smooth["cokernel"]["invariant_factors"] == json::array());

  const auto path = temp_document("mult3", R"({"rank": 2, "rays": [[1, 0], [1, 3]], "max_cones": [[0, 1]]})");
  const json m3 = json::parse(run("mfr " + path + " --cone 0,1").out);
  CHECK(m3["cokernel"]["order"] == 3);
  CHECK(m3["hilbert_basis"] == json::parse("[[0, 1], [1, 0], [3, -1]]"));
}

TEST_CASE("stabilizer and complete commands") {
  const json s = json::parse(run("stabilizer " + fixture("weighted_p2_char") + " --cone 0,2").out);
  CHECK(s["stacky_multiplicity"] == 6);
  CHECK(s["stabilizer"]["order"] == 6);
  const json z = json::parse(run("stabilizer " + fixture("p2") + " --cone \"\"").out);
  CHECK(z["stabilizer"]["label"] == "trivial");
  CHECK(json::parse(run("complete " + fixture("hirzebruch_2")).out)["complete"] == true);
  CHECK(json::parse(run("complete " + fixture("a3")).out)["complete"] == false);
}

TEST_CASE("text format") {
  const Run t = run("report " + fixture("p1_levels_2_3") + " --format text");
  CHECK(t.code == 0);
  CHECK(t.out.find("label: μ_3") != std::string::npos);
  CHECK(t.out.find("complete: true") != std::string::npos);
}

TEST_CASE("degree bound from the environment") {
  const std::string base = "report " + fixture("a1_cone");
  ::unsetenv("TORISTACK_DEGREE_BOUND");
  const json r = json::parse(run(base).out);
  CHECK(r["charts"][0]["invariant_ring_check"]["degree_bound"] == 6);
  // in-process with an explicit bound
  const CommandResult c = run_report(fixture("a1_cone"), OutputFormat::json, 2);
  const json j = json::parse(c.output);
  CHECK(j["charts"][0]["invariant_ring_check"]["degree_bound"] == 2);
  CHECK(j["charts"][0]["invariant_ring_check"]["monomials"] == 6);
  ::setenv("TORISTACK_DEGREE_BOUND", "3", 1);
  const json e = json::parse(run(base).out);
  ::unsetenv("TORISTACK_DEGREE_BOUND");
  CHECK(e["charts"][0]["invariant_ring_check"]["degree_bound"] == 3);
  ::setenv("TORISTACK_DEGREE_BOUND", "lots", 1);
  CHECK(run(base).code == 2);
  ::unsetenv("TORISTACK_DEGREE_BOUND");
}

TEST_CASE("in-process commands match the binary") {
  for (const char* name : {"p2", "p1_levels_2_3", "invalid_overlap", "malformed"}) {
    const Run r = run(std::string("report ") + fixture(name));
    const CommandResult c = run_report(fixture(name), OutputFormat::json);
    CHECK(r.code == c.exit_code);
    CHECK(r.out == c.output);
  }
}
