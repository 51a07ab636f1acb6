#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "toristack/report.hpp"

namespace {

using toristack::OutputFormat;

toristack::RayIndexSet parse_cone(const std::string& text) {
  toristack::RayIndexSet out;
  if (text.empty()) return out;  // the zero cone
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw CLI::ValidationError("--cone", "expected comma-separated ray indices, got '" + text + "'");
    out.push_back(std::stoul(item));
    pos = comma + 1;
  }
  return out;
}

std::size_t degree_bound_from_env() {
  const char* raw = std::getenv("TORISTACK_DEGREE_BOUND");
  if (raw == nullptr || *raw == '\0') return toristack::kDefaultDegreeBound;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 4)
    throw CLI::ValidationError("TORISTACK_DEGREE_BOUND", "expected a small non-negative integer, got '" + s + "'");
  return std::stoul(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on toric stacks given by stacky fans"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "json";
  std::string cone;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "stacky fan document (JSON)")->required();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* validate = app.add_subcommand("validate", "check the fan axioms and levels");
  add_common(validate);
  auto* report = app.add_subcommand("report", "stack invariants, charts and boundary divisors");
  add_common(report);
  auto* mfr = app.add_subcommand("mfr", "minimal free resolution of the monoid of a cone");
  add_common(mfr);
  mfr->add_option("--cone", cone, "ray indices, e.g. 0,1")->required();
  auto* stab = app.add_subcommand("stabilizer", "stabilizer group of a cone");
  add_common(stab);
  stab->add_option("--cone", cone, "ray indices, e.g. 0,1")->required();
  auto* complete = app.add_subcommand("complete", "completeness of the fan");
  add_common(complete);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : toristack::kExitParse;
  }

  toristack::CommandResult result;
  try {
    const OutputFormat fmt = format == "text" ? OutputFormat::text : OutputFormat::json;
    if (validate->parsed()) {
      result = toristack::run_validate(file, fmt);
    } else if (report->parsed()) {
      result = toristack::run_report(file, fmt, degree_bound_from_env());
    } else if (mfr->parsed()) {
      result = toristack::run_mfr(file, parse_cone(cone), fmt);
    } else if (stab->parsed()) {
      result = toristack::run_stabilizer(file, parse_cone(cone), fmt);
    } else {
      result = toristack::run_complete(file, fmt);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return toristack::kExitParse;
  }
  std::cout << result.output;
  return result.exit_code;
}
