#include "hinv/report.hpp"

#include <algorithm>

namespace hinv {

bool Report::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks_)
    if (c.id == id) return &c;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    nlohmann::json j{{"id", c.id}, {"anchor", c.anchor}, {"pass", c.pass}, {"instances", c.instances}};
    if (!c.pass) j["witness"] = c.witness;
    checks.push_back(std::move(j));
  }
  return {{"suite", suite_}, {"system", system_}, {"pass", all_pass()}, {"checks", std::move(checks)}};
}

}  // namespace hinv
