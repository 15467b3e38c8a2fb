#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "zhuforge/sparse.hpp"

namespace zhuforge {

using json = nlohmann::json;

/// Sparse vector as [[index, "p/q"], ...].
inline json vec_to_json(const SparseVec& v) {
  json out = json::array();
  for (const auto& [i, c] : v) out.push_back({i, c.str()});
  return out;
}

enum class Status { pass, fail, inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct Witness {
  std::string description;
  json data = json::object();
};

/// Outcome of one named check. A check fails as soon as one instance fails; it is
/// inconclusive when every instance was skipped (nothing decidable at this cutoff).
struct CheckResult {
  static constexpr std::size_t kMaxWitnesses = 8;

  std::string name;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
  std::vector<std::string> skipped_strata;

  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  [[nodiscard]] Status status() const {
    if (failures > 0) return Status::fail;
    if (checked == 0) return Status::inconclusive;
    return Status::pass;
  }
  [[nodiscard]] bool passed() const { return status() == Status::pass; }

  void pass(std::size_t n = 1) { checked += n; }
  void skip(std::size_t n = 1) { skipped += n; }
  void fail(Witness w) {
    ++checked;
    ++failures;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
  }
  /// Records pass/fail for a boolean condition; the witness is built only on failure.
  template <typename MakeWitness>
  bool expect(bool ok, MakeWitness&& make) {
    if (ok) {
      pass();
    } else {
      fail(make());
    }
    return ok;
  }

  void merge(const CheckResult& o) {
    checked += o.checked;
    skipped += o.skipped;
    failures += o.failures;
    for (const auto& w : o.witnesses)
      if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    skipped_strata.insert(skipped_strata.end(), o.skipped_strata.begin(), o.skipped_strata.end());
  }

  [[nodiscard]] json to_json() const {
    json w = json::array();
    for (const auto& x : witnesses) w.push_back({{"description", x.description}, {"data", x.data}});
    return {{"check", name},       {"status", to_string(status())}, {"checked", checked},
            {"skipped", skipped},  {"failures", failures},          {"witnesses", w},
            {"notes", notes},      {"strata_skipped", skipped_strata}};
  }
};

/// A suite run: the checks plus the parameters that scope every claim.
struct Report {
  std::string suite;
  json parameters = json::object();
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;

  [[nodiscard]] Status overall() const {
    bool any_pass = false;
    for (const auto& c : checks) {
      if (c.status() == Status::fail) return Status::fail;
      any_pass = any_pass || c.status() == Status::pass;
    }
    return any_pass ? Status::pass : Status::inconclusive;
  }

  [[nodiscard]] const CheckResult* find(const std::string& name) const {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
  }

  [[nodiscard]] json to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back(c.to_json());
    return {{"suite", suite},
            {"status", to_string(overall())},
            {"parameters", parameters},
            {"checks", cs},
            {"wall_seconds", wall_seconds}};
  }
};

}  // namespace zhuforge
