// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmlab/groebner.hpp"

namespace lmlab {

enum class Status { pass, fail, uncertified, timeout };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::uncertified: return "uncertified";
    case Status::timeout: return "timeout";
  }
  return "?";
}

/// Outcome of one check at one instance. A failing report always carries a
/// residue or witness.
struct VerificationReport {
  std::string check;
  int d = 0, delta = 0;
  std::string pivot;  // empty when the check is pivot-independent
  Status status = Status::pass;
  std::vector<std::string> notes;
  std::map<std::string, std::string> units;  // explicit unit scalings
  std::vector<std::string> certificates;
  std::string residue;
  double runtime_ms = 0;

  bool ok() const { return status == Status::pass; }

  /// Marks the report failed unless `cond`; the witness is kept as residue.
  bool require(bool cond, const std::string& what, const std::string& witness = {}) {
    if (cond) return true;
    if (status == Status::pass || status == Status::uncertified) status = Status::fail;
    notes.push_back("FAILED: " + what);
    if (residue.empty()) residue = witness.empty() ? what : witness;
    return false;
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
  void absorb(const VerificationReport& sub) {
    for (const auto& n : sub.notes) notes.push_back(sub.check + ": " + n);
    for (const auto& [k, v] : sub.units) units[sub.check + ":" + k] = v;
    if (sub.status == Status::fail) {
      status = Status::fail;
      if (residue.empty()) residue = sub.residue;
    } else if (sub.status != Status::pass && status == Status::pass) {
      status = sub.status;
    }
  }

  nlohmann::ordered_json to_json(bool with_timing = true) const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["instance"] = {{"d", d}, {"delta", delta}};
    if (!pivot.empty()) j["instance"]["pivot"] = pivot;
    j["status"] = to_string(status);
    j["notes"] = notes;
    j["units"] = units;
    j["certificates"] = certificates;
    if (!residue.empty()) j["residue"] = residue;
    if (with_timing) j["runtime_ms"] = runtime_ms;
    return j;
  }
};

/// Runs `body` under a deadline, timing it and turning a TimeoutError
/// into the timeout status.
inline VerificationReport run_check(std::string check, int d, int delta, std::optional<double> timeout_s,
                                    const std::function<void(VerificationReport&)>& body) {
  VerificationReport rep;
  rep.check = std::move(check);
  rep.d = d;
  rep.delta = delta;
  auto start = Clock::now();
  try {
    DeadlineScope scope(timeout_s);
    body(rep);
  } catch (const TimeoutError&) {
    rep.status = Status::timeout;
    rep.note("time budget of " + std::to_string(timeout_s.value_or(0)) + " s exhausted");
  }
  rep.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rep;
}

}  // namespace lmlab
