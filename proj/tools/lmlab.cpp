// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "lmlab/lmlab.hpp"

using namespace lmlab;

namespace {

constexpr int kExitConfig = 64;

std::string matrix_text(const std::vector<std::vector<int>>& m) {
  std::string s;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "  ") + std::to_string(row[j]);
    s += "\n";
  }
  return s;
}

std::string list_text(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::pair<int, int> need_pivot(const std::string& p) {
  auto comma = p.find(',');
  if (p.empty() || p == "all" || comma == std::string::npos) throw ConfigError("this object needs --pivot s,t");
  try {
    return {std::stoi(p.substr(0, comma)), std::stoi(p.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("pivot must be 's,t'");
  }
}

ChartPresentation build_object(const std::string& object, const LatticeNormalForm& nf, const std::string& pivot) {
  if (object == "u-naive") return build_naive_chart_ideal(nf).chart;
  if (object == "u") return build_U_ideals(nf).U;
  if (object == "u-naive-small") return build_U_ideals(nf).U_naive_small;
  if (object == "dt") return build_DT_ideal(nf);
  if (object == "basic") return build_basic_scheme();
  auto [s, t] = need_pivot(pivot);
  if (object == "linked") return build_linked_chart_ideal(nf, s, t).chart;
  if (object == "dt-blowup") return build_DT_blowup_chart(nf, s, t).chart;
  if (object == "dt-blowup-ambient") return build_DT_blowup_chart(nf, s, t).ambient;
  if (object == "m-chart") return build_M_chart(nf, s, t).full;
  if (object == "m-chart-reduced") return build_M_chart(nf, s, t).reduced;
  throw ConfigError("unknown object '" + object + "'");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

// verify aliases that expand to several checks
std::vector<std::string> expand_check(const std::string& c) {
  if (c == "linked-quadric") return {"linked-fiber", "b-blowup"};
  if (c == "blowup") return {"affine-chart", "chart-match", "exceptional"};
  if (c == "blowup-smooth") return {"quadbu-smooth"};
  return {c};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lmlab: explicit charts of local models and linked quadrics, with exact verification"};
  app.require_subcommand(1);

  int d = 0, delta = 0;
  std::string object, out, json, pivot = "all", mode = "sound", grid, checks = "all", check, input;
  std::optional<double> timeout_s;
  if (const char* env = std::getenv("LMLAB_TIMEOUT_S")) {
    try {
      timeout_s = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: LMLAB_TIMEOUT_S is not a number\n";
      return kExitConfig;
    }
  }
  std::optional<double> timeout_flag;
  std::uint64_t seed = 7;
  unsigned jobs = 1;
  bool no_timing = false;

  auto* lat = app.add_subcommand("lattice", "print the normal form for (d, delta)");
  auto* build = app.add_subcommand("build", "build a chart and write it as a .ideal file");
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis of a .ideal file");
  auto* ver = app.add_subcommand("verify", "run one check at one instance");
  auto* suite = app.add_subcommand("suite", "run checks over a grid of instances");
  for (auto* sc : {lat, build, ver}) {
    sc->add_option("--d", d, "rank")->required();
    sc->add_option("--delta", delta, "type")->required();
  }
  build->add_option("--object", object,
                    "u-naive|u|u-naive-small|dt|basic|linked|dt-blowup|dt-blowup-ambient|m-chart|m-chart-reduced")
      ->required();
  build->add_option("--pivot", pivot, "s,t for pivoted objects");
  build->add_option("--out", out, "output path (stdout when omitted)");
  gb->add_option("input", input, ".ideal file")->required();
  gb->add_option("--out", out, "output path");
  gb->add_option("--timeout-s", timeout_flag, "time budget in seconds");
  ver->add_option("check", check, "check name")->required();
  for (auto* sc : {ver, suite}) {
    sc->add_option("--mode", mode, "sound|complete")->check(CLI::IsMember({"sound", "complete"}));
    sc->add_option("--timeout-s", timeout_flag, "time budget per check in seconds");
    sc->add_option("--seed", seed, "seed of the randomized oracle");
    sc->add_option("--json", json, "write the JSON report here");
    sc->add_option("--jobs", jobs, "worker threads");
    sc->add_option("--pivot", pivot, "s,t or all");
    sc->add_flag("--no-timing", no_timing, "omit runtime_ms from JSON");
  }
  suite->add_option("--grid", grid, "d:delta,d:delta,...");
  suite->add_option("--checks", checks, "all or a comma-separated list");
  suite->add_option("--out", out, "JSON report path (same as --json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  if (timeout_flag) timeout_s = timeout_flag;

  try {
    if (*lat) {
      auto nf = normal_form(d, delta);
      std::vector<std::string> names{"pi"};
      for (int i = 1; i <= d; ++i) names.push_back("x_" + std::to_string(i));
      auto q = quad_forms(nf, PolyRing::make(names));
      std::cout << "case (" << nf.case_tag << ")\n"
                << "n = " << nf.n << ", r = " << nf.r << ", r' = " << nf.r_prime << "\n"
                << "Delta = " << list_text(nf.Delta) << "\nDeltaC = " << list_text(nf.DeltaC) << "\n"
                << "S1 =\n" << matrix_text(nf.S1) << "S2 =\n" << matrix_text(nf.S2)
                << "Q1 = " << to_string(q.Q1) << "\nQ2 = " << to_string(q.Q2) << "\n";
      return 0;
    }
    if (*build) {
      auto nf = normal_form(d, delta);
      auto c = build_object(object, nf, pivot);
      emit(export_ideal(c.ideal), out);
      std::cerr << c.name << ": " << c.ideal.size() << " generators in " << c.ring->nvars() << " variables\n";
      return 0;
    }
    if (*gb) {
      Ideal I = import_ideal(read_file(input));
      DeadlineScope scope(timeout_s);
      Ideal G(I.ring(), I.groebner());
      emit(export_ideal(G), out);
      return 0;
    }

    SuiteConfig cfg;
    cfg.mode = mode == "complete" ? Mode::complete : Mode::sound;
    cfg.timeout_s = timeout_s;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.pivot = pivot;
    if (*ver) {
      cfg.grid = {{d, delta}};
      cfg.checks = expand_check(check);
    } else {
      if (!grid.empty()) cfg.grid = parse_grid(grid);
      if (checks != "all") {
        cfg.checks.clear();
        std::stringstream ss(checks);
        for (std::string c; std::getline(ss, c, ',');) cfg.checks.push_back(c);
      }
      if (json.empty()) json = out;
    }
    auto res = run_suite(cfg, !no_timing);
    for (const auto& r : res.reports) {
      std::cout << to_string(r.status) << "  " << r.check << " (" << r.d << "," << r.delta << ")";
      if (!r.pivot.empty()) std::cout << " pivot " << r.pivot;
      if (!r.residue.empty()) std::cout << "  residue: " << r.residue.substr(0, 160);
      std::cout << "\n";
    }
    const auto& s = res.json["summary"];
    std::cout << s["total"] << " reports: " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["uncertified"]
              << " uncertified, " << s["timeout"] << " timeout\n";
    if (!json.empty()) emit(res.json.dump(2) + "\n", json);
    return res.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ImportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
