#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace catcom {

/// Outcome of one law checked over a batch of cases.
struct Check {
  std::string name;
  bool passed = true;
  bool vacuous = false;     ///< no instance of the hypothesis was found
  bool exhaustive = false;  ///< every case was enumerated, not sampled
  std::size_t cases = 0;
  double max_error = 0.0;   ///< largest deviation seen (0 on exact backends)
  std::string witness;      ///< first failure, if any
  std::vector<std::string> notes;

  void record(bool ok, double err = 0.0) {
    ++cases;
    max_error = std::max(max_error, err);
    passed = passed && ok;
  }
  void fail(std::string w) {
    if (witness.empty()) witness = std::move(w);
    passed = false;
  }
  /// Records one case; on failure keeps the witness produced by `describe`.
  template <class F>
  void expect(bool ok, double err, F&& describe) {
    record(ok, err);
    if (!ok && witness.empty()) witness = describe();
  }
};

struct Report {
  std::deque<Check> checks;  // deque: references from add() stay valid

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  Check& add(std::string name) {
    Check c;
    c.name = std::move(name);
    checks.push_back(std::move(c));
    return checks.back();
  }
  const Check* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

inline nlohmann::json to_json(const Check& c) {
  nlohmann::json j{{"name", c.name},       {"passed", c.passed}, {"cases", c.cases},
                   {"exhaustive", c.exhaustive}, {"vacuous", c.vacuous}, {"max_error", c.max_error}};
  if (!c.witness.empty()) j["witness"] = c.witness;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : r.checks) arr.push_back(to_json(c));
  return nlohmann::json{{"passed", r.passed()}, {"checks", std::move(arr)}};
}

}  // namespace catcom
