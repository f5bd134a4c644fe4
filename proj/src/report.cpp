#include "duality/report.hpp"

namespace duality {

bool Report::all_pass() const {
  for (const CheckLine& l : lines)
    if (!l.pass) return false;
  return true;
}

void Report::add(const std::string& id, bool pass, Json detail) {
  lines.push_back({id, pass, std::move(detail)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const CheckLine& l : other.lines) lines.push_back({prefix + l.id, l.pass, l.detail});
}

std::string Report::to_text() const {
  std::string out;
  for (const CheckLine& l : lines) {
    out += l.pass ? "PASS " : "FAIL ";
    out += l.id;
    if (!l.pass && !l.detail.empty()) {
      out += " ";
      out += l.detail.dump();
    }
    out += "\n";
  }
  return out;
}

Json Report::to_json() const {
  Json arr = Json::array();
  for (const CheckLine& l : lines) {
    Json o;
    o["id"] = l.id;
    o["pass"] = l.pass;
    if (!l.detail.empty()) o["detail"] = l.detail;
    arr.push_back(o);
  }
  return arr;
}

}  // namespace duality
