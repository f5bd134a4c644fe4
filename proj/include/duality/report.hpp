#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace duality {

using Json = nlohmann::json;

// Internal invariant (never a user-input condition); a failure here is a bug,
// not a negative verdict.
inline void require_internal(bool cond, const char* what) {
  if (!cond) throw std::logic_error(what);
}

// One verdict line.  `detail` carries a re-evaluable witness payload for FAIL
// lines (and optional context for PASS lines); it must be deterministic.
struct CheckLine {
  std::string id;
  bool pass = false;
  Json detail = Json::object();
};

struct Report {
  std::vector<CheckLine> lines;

  bool all_pass() const;
  void add(const std::string& id, bool pass, Json detail = Json::object());
  void merge(const Report& other, const std::string& prefix = "");
  std::string to_text() const;  // "PASS <id>" / "FAIL <id> <detail>"
  Json to_json() const;
};

}  // namespace duality
