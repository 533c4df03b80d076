#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace picard {

using json = nlohmann::ordered_json;

struct Check {
  std::string id;
  bool pass = false;
  json detail = json::object();
};

struct Report {
  std::string name;
  std::vector<Check> checks;
  json meta = json::object();

  Check& add(std::string id, bool pass, json detail = json::object()) {
    checks.push_back({std::move(id), pass, std::move(detail)});
    return checks.back();
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.id, c.pass, c.detail});
    if (!other.meta.empty()) meta[prefix.empty() ? other.name : prefix.substr(0, prefix.size() - 1)] = other.meta;
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.id);
    return out;
  }
  json to_json() const {
    json j;
    j["report"] = name;
    j["pass"] = all_pass();
    if (!meta.empty()) j["meta"] = meta;
    json arr = json::array();
    for (const auto& c : checks) {
      json e;
      e["id"] = c.id;
      e["pass"] = c.pass;
      if (!c.detail.empty()) e["detail"] = c.detail;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
  }
};

}  // namespace picard
