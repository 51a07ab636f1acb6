#pragma once

// JSON serialization of stacky-fan input documents:
//
//   {"rank": 2,
//    "rays": [[1,0],[0,1],[-1,-1]],
//    "max_cones": [[0,1],[1,2],[0,2]],
//    "levels": {"0": 2},          optional, default level 1
//    "characteristics": [0, 3]}   optional, default [0]
//
// Integers beyond 2^53-1 in magnitude may be written as decimal strings.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "toristack/error.hpp"
#include "toristack/fan.hpp"
#include "toristack/integer.hpp"

namespace toristack {

struct FanDocument {
  std::size_t rank = 0;
  std::vector<IntVector> rays;
  std::vector<RayIndexSet> max_cones;
  std::map<std::size_t, Integer> levels;  // explicit entries only
  std::vector<Integer> characteristics{Integer(0)};

  bool operator==(const FanDocument& other) const;
};

/// Malformed JSON or a field of the wrong type. line/column are 1-based and
/// zero when the error is structural rather than syntactic.
class DocumentParseError : public Error {
 public:
  DocumentParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

FanDocument parse_document(std::string_view text);
FanDocument load_document(const std::filesystem::path& path);
std::string emit_document(const FanDocument& doc);

/// Fan axioms plus level and characteristic checks, in one list.
std::vector<FanIssue> validate_document(const FanDocument& doc);

/// Level of every ray (1 when not given).
std::vector<Integer> document_levels(const FanDocument& doc);

/// Throws FanValidationError listing every problem.
StackyFan to_stacky_fan(const FanDocument& doc);

}  // namespace toristack
