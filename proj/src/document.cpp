#include "toristack/document.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace toristack {

using nlohmann::json;

namespace {

// 2^53 - 1: larger magnitudes are written as strings so that readers using
// doubles do not lose digits.
const Integer kSafeInteger("9007199254740991");

[[noreturn]] void structural(const std::string& where, const std::string& what) {
  throw DocumentParseError(where + ": " + what, 0, 0);
}

bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Integer read_integer(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (is_decimal(s)) return Integer(s);
  }
  structural(where, "expected an integer, got " + j.dump());
}

std::size_t read_index(const json& j, const std::string& where) {
  const Integer v = read_integer(j, where);
  if (v < 0 || !v.fits_ulong_p()) structural(where, "expected a non-negative index, got " + j.dump());
  return v.get_ui();
}

json write_integer(const Integer& v) {
  if (abs(v) <= kSafeInteger) return json(std::stoll(v.get_str()));
  return json(v.get_str());
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based offset of the last byte read
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool is_prime(const Integer& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

}  // namespace

DocumentParseError::DocumentParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(message), line_(line), column_(column) {}

bool FanDocument::operator==(const FanDocument& other) const {
  return rank == other.rank && rays == other.rays && max_cones == other.max_cones && levels == other.levels &&
         characteristics == other.characteristics;
}

FanDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    // drop nlohmann's "[json.exception...] parse error at ...: " prefix
    std::string detail = e.what();
    const auto at = detail.find(": ", detail.find("parse error"));
    if (at != std::string::npos) detail = detail.substr(at + 2);
    throw DocumentParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                                 std::to_string(column) + ": " + detail,
                             line, column);
  }
  if (!root.is_object()) structural("/", "expected an object");
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (key != "rank" && key != "rays" && key != "max_cones" && key != "levels" && key != "characteristics")
      structural("/" + key, "unknown field");
  }

  FanDocument doc;
  if (!root.contains("rank")) structural("/rank", "missing field");
  doc.rank = read_index(root["rank"], "/rank");

  if (!root.contains("rays")) structural("/rays", "missing field");
  if (!root["rays"].is_array()) structural("/rays", "expected an array");
  for (std::size_t i = 0; i < root["rays"].size(); ++i) {
    const auto& r = root["rays"][i];
    const std::string where = "/rays/" + std::to_string(i);
    if (!r.is_array()) structural(where, "expected an array of integers");
    IntVector v;
    for (std::size_t k = 0; k < r.size(); ++k) v.push_back(read_integer(r[k], where + "/" + std::to_string(k)));
    doc.rays.push_back(std::move(v));
  }

  if (!root.contains("max_cones")) structural("/max_cones", "missing field");
  if (!root["max_cones"].is_array()) structural("/max_cones", "expected an array");
  for (std::size_t i = 0; i < root["max_cones"].size(); ++i) {
    const auto& c = root["max_cones"][i];
    const std::string where = "/max_cones/" + std::to_string(i);
    if (!c.is_array()) structural(where, "expected an array of ray indices");
    RayIndexSet s;
    for (std::size_t k = 0; k < c.size(); ++k) s.push_back(read_index(c[k], where + "/" + std::to_string(k)));
    doc.max_cones.push_back(std::move(s));
  }

  if (root.contains("levels")) {
    const auto& l = root["levels"];
    if (!l.is_object()) structural("/levels", "expected an object mapping ray indices to levels");
    for (const auto& [key, value] : l.items()) {
      const std::string where = "/levels/" + key;
      if (!is_decimal(key) || key[0] == '-') structural(where, "level keys must be ray indices");
      doc.levels[read_index(json(key), where)] = read_integer(value, where);
    }
  }

  if (root.contains("characteristics")) {
    const auto& c = root["characteristics"];
    if (!c.is_array()) structural("/characteristics", "expected an array");
    doc.characteristics.clear();
    for (std::size_t i = 0; i < c.size(); ++i)
      doc.characteristics.push_back(read_integer(c[i], "/characteristics/" + std::to_string(i)));
  }
  return doc;
}

FanDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentParseError("cannot read " + path.string(), 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string emit_document(const FanDocument& doc) {
  json root = json::object();
  root["rank"] = doc.rank;
  json rays = json::array();
  for (const auto& r : doc.rays) {
    json v = json::array();
    for (const auto& x : r) v.push_back(write_integer(x));
    rays.push_back(std::move(v));
  }
  root["rays"] = std::move(rays);
  json cones = json::array();
  for (const auto& c : doc.max_cones) cones.push_back(c);
  root["max_cones"] = std::move(cones);
  json levels = json::object();
  for (const auto& [i, n] : doc.levels) levels[std::to_string(i)] = write_integer(n);
  root["levels"] = std::move(levels);
  json chars = json::array();
  for (const auto& p : doc.characteristics) chars.push_back(write_integer(p));
  root["characteristics"] = std::move(chars);
  return root.dump(2) + "\n";
}

std::vector<FanIssue> validate_document(const FanDocument& doc) {
  auto issues = fan_issues(doc.rank, doc.rays, doc.max_cones);
  for (const auto& [i, n] : doc.levels) {
    if (i >= doc.rays.size())
      issues.push_back({FanIssueKind::InvalidLevel, {}, {i},
                        "level given for ray " + std::to_string(i) + ", but there are only " +
                            std::to_string(doc.rays.size()) + " rays"});
    else if (n < 1)
      issues.push_back({FanIssueKind::InvalidLevel, {}, {i},
                        "level " + to_string(n) + " on ray " + std::to_string(i) + " is not positive"});
  }
  for (const auto& p : doc.characteristics)
    if (p != 0 && !is_prime(p))
      issues.push_back({FanIssueKind::InvalidCharacteristic, {}, {},
                        "characteristic " + to_string(p) + " is neither 0 nor a prime"});
  return issues;
}

std::vector<Integer> document_levels(const FanDocument& doc) {
  std::vector<Integer> out(doc.rays.size(), Integer(1));
  for (const auto& [i, n] : doc.levels)
    if (i < out.size()) out[i] = n;
  return out;
}

StackyFan to_stacky_fan(const FanDocument& doc) {
  auto issues = validate_document(doc);
  if (!issues.empty()) throw FanValidationError(std::move(issues));
  return StackyFan(validate_fan(doc.rank, doc.rays, doc.max_cones), document_levels(doc));
}

}  // namespace toristack
