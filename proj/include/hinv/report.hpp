// Pass/fail reports emitted by the verifier suites.
#pragma once

#include <string>
#include <deque>

#include "json.hpp"

namespace hinv {

struct Check {
  std::string id;
  std::string anchor;  // short name of the identity being checked
  bool pass = true;
  std::size_t instances = 0;  // how many cases were examined
  nlohmann::json witness;     // first failing case, null on success
};

class Report {
 public:
  Report(std::string suite, std::string system) : suite_(std::move(suite)), system_(std::move(system)) {}

  Check& add(std::string id, std::string anchor) {
    checks_.push_back(Check{std::move(id), std::move(anchor), true, 0, nullptr});
    return checks_.back();
  }
  /// Records one instance; keeps the first failing witness.
  static void record(Check& c, bool ok, const nlohmann::json& witness = nullptr) {
    ++c.instances;
    if (!ok && c.pass) {
      c.pass = false;
      c.witness = witness;
    }
  }
  void append(const Report& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

  [[nodiscard]] const std::string& suite() const { return suite_; }
  [[nodiscard]] const std::deque<Check>& checks() const { return checks_; }
  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const Check* find(const std::string& id) const;
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  std::string suite_;
  std::string system_;
  std::deque<Check> checks_;  // deque: references returned by add() stay valid
};

}  // namespace hinv
