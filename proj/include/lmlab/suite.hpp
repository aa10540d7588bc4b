// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <thread>

#include "lmlab/verify.hpp"

namespace lmlab {

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"za1",           "dt-equals-u",  "linked-fiber", "b-blowup",
                                              "quadbu-smooth", "affine-chart", "chart-match",  "exceptional",
                                              "annihilator",   "flatness-dims"};
  return names;
}

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::vector<std::pair<int, int>> grid{{5, 1}, {5, 2}, {6, 1}, {6, 2}, {6, 3}, {7, 2}, {7, 3}};
  std::vector<std::string> checks = check_names();
  Mode mode = Mode::sound;
  std::optional<double> timeout_s;
  std::uint64_t seed = 7;
  unsigned jobs = 1;
  std::string pivot = "all";  // "all" or "s,t"

  void validate() const {
    if (grid.empty()) throw ConfigError("empty grid");
    for (auto [d, delta] : grid) {
      try {
        check_instance(d, delta);
      } catch (const LatticeError& e) {
        throw ConfigError(std::string(e.what()));
      }
    }
    for (const auto& c : checks)
      if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
        throw ConfigError("unknown check '" + c + "'");
    if (timeout_s && *timeout_s <= 0) throw ConfigError("timeout must be positive");
    if (jobs == 0) throw ConfigError("jobs must be >= 1");
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["grid"] = nlohmann::ordered_json::array();
    for (auto [d, delta] : grid) j["grid"].push_back({d, delta});
    j["checks"] = checks;
    j["mode"] = mode == Mode::sound ? "sound" : "complete";
    j["timeout_s"] = timeout_s ? nlohmann::ordered_json(*timeout_s) : nlohmann::ordered_json(nullptr);
    j["seed"] = seed;
    j["pivot"] = pivot;
    return j;
  }
};

/// "5:1,6:2" -> {(5,1), (6,2)}.
inline std::vector<std::pair<int, int>> parse_grid(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      std::size_t a = 0, b = 0;
      int d = std::stoi(item.substr(0, colon), &a), delta = std::stoi(item.substr(colon + 1), &b);
      if (a != colon || b != item.size() - colon - 1) throw std::invalid_argument(item);
      out.emplace_back(d, delta);
    } catch (const std::exception&) {
      throw ConfigError("malformed grid entry '" + item + "' (expected d:delta)");
    }
  }
  return out;
}

/// Pivots of Z (1-based row, column) for the blow-up checks.
inline std::vector<std::pair<int, int>> z_pivots(const LatticeNormalForm& nf) {
  std::vector<std::pair<int, int>> out;
  for (int s = 1; s <= nf.delta; ++s)
    for (int t = 1; t <= nf.d - nf.delta; ++t) out.emplace_back(s, t);
  return out;
}

namespace detail {

inline std::optional<std::pair<int, int>> parse_pivot(const std::string& p) {
  if (p.empty() || p == "all") return std::nullopt;
  auto comma = p.find(',');
  if (comma == std::string::npos) throw ConfigError("pivot must be 's,t' or 'all'");
  try {
    return std::pair{std::stoi(p.substr(0, comma)), std::stoi(p.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("pivot must be 's,t' or 'all'");
  }
}

inline VerificationReport with_instance(VerificationReport r, const LatticeNormalForm& nf) {
  r.d = nf.d;
  r.delta = nf.delta;
  return r;
}

}  // namespace detail

/// Runs one named check at one instance; per-pivot checks give one report per pivot.
inline std::vector<VerificationReport> run_named_check(const std::string& name, const LatticeNormalForm& nf,
                                                       const SuiteConfig& cfg) {
  const auto& to = cfg.timeout_s;
  auto only = detail::parse_pivot(cfg.pivot);
  auto pick = [&](std::vector<std::pair<int, int>> all) {
    if (!only) return all;
    if (std::find(all.begin(), all.end(), *only) == all.end())
      throw ConfigError("pivot " + pivot_label(only->first, only->second) + " not admissible for " + name +
                        " at " + nf.label());
    return std::vector<std::pair<int, int>>{*only};
  };
  std::vector<VerificationReport> out;
  if (name == "za1") {
    PresentationOptions opt;
    opt.mode = cfg.mode;
    opt.seed = cfg.seed;
    out.push_back(verify_presentation(nf, opt, to));
  } else if (name == "dt-equals-u") {
    out.push_back(run_check(name, nf.d, nf.delta, to, [&](VerificationReport& rep) {
      auto dt = build_DT_ideal(nf, false);
      auto u = build_U_ideals(nf);
      rep.require(ideal_equal(dt.ideal, u.U.ideal), "D_T ideal differs from the U ideal");
      rep.units["D_T/U quadric generator"] = "2";
      rep.note(std::to_string(dt.ideal.size()) + " generators; reduced bases coincide");
    }));
  } else if (name == "linked-fiber") {
    out.push_back(verify_linked_quadric(nf, to));
  } else if (name == "b-blowup") {
    out.push_back(detail::with_instance(verify_B_blowup(to), nf));
  } else if (name == "quadbu-smooth") {
    for (auto [s, t] : pick(z_pivots(nf))) out.push_back(verify_blowup_smooth(nf, s, t, to));
  } else if (name == "affine-chart") {
    for (auto [s, t] : pick(m_pivots(nf))) {
      auto rep = verify_affine_chart(nf, s, t, to);
      rep.absorb(linking_multipliers(nf, s, t, to));
      out.push_back(rep);
    }
  } else if (name == "chart-match") {
    for (auto [s, t] : pick(m_pivots(nf))) out.push_back(chart_match(nf, s, t, false, to));
  } else if (name == "exceptional") {
    for (auto [s, t] : pick(m_pivots(nf))) out.push_back(exceptional_locus(nf, s, t, to));
  } else if (name == "annihilator") {
    out.push_back(verify_annihilator(nf, to));
  } else if (name == "flatness-dims") {
    auto rep = flatness_and_dimension(build_U_ideals(nf).U, nf.d - 2, to, nf.d, nf.delta);
    rep.note("U: relative dimension " + std::to_string(nf.d - 2));
    auto R = z_ring(nf);
    ChartPresentation segre("Segre" + nf.label(), Ideal(R, minors(z_matrix(nf, R), 2)),
                            "cone over the Segre embedding, pi free");
    auto ctl = flatness_and_dimension(segre, nf.d - 1, to, nf.d, nf.delta);
    ctl.check = "segre-control";
    rep.absorb(ctl);
    out.push_back(rep);
  } else {
    throw ConfigError("unknown check '" + name + "'");
  }
  return out;
}

struct SuiteResult {
  std::vector<VerificationReport> reports;
  int exit_code = 0;
  nlohmann::ordered_json json;
};

inline nlohmann::ordered_json summarize(const std::vector<VerificationReport>& reports) {
  std::map<std::string, int> c{{"pass", 0}, {"fail", 0}, {"uncertified", 0}, {"timeout", 0}};
  for (const auto& r : reports) ++c[to_string(r.status)];
  nlohmann::ordered_json s;
  s["total"] = reports.size();
  for (const char* k : {"pass", "fail", "uncertified", "timeout"}) s[k] = c[k];
  return s;
}

/// Exit code: 0 all pass, 1 some fail, 2 only uncertified/timeout beside passes.
inline int exit_code_for(const std::vector<VerificationReport>& reports) {
  bool fail = false, soft = false;
  for (const auto& r : reports) {
    fail |= r.status == Status::fail;
    soft |= r.status == Status::uncertified || r.status == Status::timeout;
  }
  return fail ? 1 : (soft ? 2 : 0);
}

/// Runs every (instance, check) pair on a pool of cfg.jobs workers; reports
/// come back in grid order, then check order, then pivot order.
inline SuiteResult run_suite(const SuiteConfig& cfg, bool with_timing = true) {
  cfg.validate();
  struct Task {
    LatticeNormalForm nf;
    std::string check;
  };
  std::vector<Task> tasks;
  for (auto [d, delta] : cfg.grid)
    for (const auto& c : cfg.checks) tasks.push_back({normal_form(d, delta), c});
  std::vector<std::vector<VerificationReport>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      try {
        results[k] = run_named_check(tasks[k].check, tasks[k].nf, cfg);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned n = std::min<std::size_t>(cfg.jobs, tasks.size());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SuiteResult res;
  for (auto& r : results)
    for (auto& x : r) res.reports.push_back(std::move(x));
  res.exit_code = exit_code_for(res.reports);
  res.json["version"] = "1";
  res.json["config"] = cfg.to_json();
  res.json["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : res.reports) res.json["reports"].push_back(r.to_json(with_timing));
  res.json["summary"] = summarize(res.reports);
  return res;
}

}  // namespace lmlab
