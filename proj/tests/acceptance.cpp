// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when all pass.
// Usage: acceptance [path/to/zhuforge] [work dir]

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zhuforge.hpp"

using namespace zhuforge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string summary(const Report& r) {
  std::ostringstream s;
  s << r.suite << "=" << to_string(r.overall()) << " [";
  bool first = true;
  for (const auto& c : r.checks) {
    s << (first ? "" : ", ") << c.name << " " << c.checked << "/" << c.failures << "f/" << c.skipped << "s";
    first = false;
  }
  s << "]";
  return s.str();
}

bool all_checked(const Report& r) {
  for (const auto& c : r.checks)
    if (c.checked == 0 && c.skipped == 0) return false;
  return r.overall() == Status::pass;
}

bool has_witness(const Report& r) {
  for (const auto& c : r.checks)
    if (c.failures > 0 && !c.witnesses.empty()) return true;
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome c1_axioms() {
  Outcome o{true, ""};
  const Bounds b{10, 10};
  struct Case {
    TruncatedVOA v;
    std::vector<int> dims;
  };
  for (auto& [v, dims] : std::vector<Case>{{build_heisenberg(6), {1, 1, 2, 3, 5, 7, 11}},
                                           {build_virasoro(Rational(1, 2), 6), {1, 0, 1, 1, 2, 2, 4}}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = verify_axioms(v, b);
    const double t = seconds_since(t0);
    o.pass = o.pass && r.overall() == Status::pass && v.dims() == dims && t < 30.0;
    o.detail += summary(r) + " " + std::to_string(t).substr(0, 5) + "s; ";
  }
  return o;
}

Outcome c2_circ_m() {
  Outcome o{true, ""};
  for (const TruncatedVOA& v : {build_heisenberg(5), build_virasoro(Rational(1, 2), 6)}) {
    const Report r = verify_prop41(v, Bounds{}, 4);
    o.pass = o.pass && r.overall() == Status::pass;
    o.detail += summary(r) + "; ";
  }
  return o;
}

Outcome c3_f_map() {
  const Report r = verify_izo(build_heisenberg(4), build_virasoro(Rational(1, 2), 4), 4);
  bool named = true;
  for (const char* name : {"unital", "multiplicative", "bijective"}) {
    bool found = false;
    for (const auto& c : r.checks) found = found || (c.name.find(name) != std::string::npos && c.checked > 0);
    named = named && found;
  }
  return {all_checked(r) && named, summary(r)};
}

Outcome c4_ten_kvoc() {
  const TruncatedVOA h = build_heisenberg(4), v = build_virasoro(Rational(1, 2), 4);
  const Report ten = verify_ten(h, v, 4), kvoc = verify_kvoc(h, v, 4);
  return {all_checked(ten) && all_checked(kvoc), summary(ten) + "; " + summary(kvoc)};
}

Outcome c5_top_level() {
  const TruncatedVOA h = build_heisenberg(4);
  Outcome o{true, ""};
  std::vector<std::pair<std::string, TruncatedModule>> mods{{"adjoint", adjoint_module(h)}};
  for (const Rational& l : {Rational(0), Rational(1), Rational(1, 2)}) mods.emplace_back("F_" + l.str(), build_fock(l, 4));
  for (const auto& [name, m] : mods) {
    const Report r = verify_zhu_top(h, m);
    o.pass = o.pass && r.overall() == Status::pass;
    o.detail += name + ":" + to_string(r.overall()) + " ";
  }
  return o;
}

Outcome c6_teh() {
  const TruncatedVOA h = build_heisenberg(3);
  const Report r = verify_teh(h, h, build_fock(1, 3), build_fock(0, 3), 3);
  return {all_checked(r), summary(r) + " dims " + r.parameters["dim_product"].dump() + "=" +
                              r.parameters["dim_left"].dump() + "x" + r.parameters["dim_right"].dump() + " by degree"};
}

Outcome c7_factorization() {
  const Report r = verify_factorization(7, 60);
  const std::size_t trials = r.parameters.value("trials", 0);
  return {r.overall() == Status::pass && trials >= 50, summary(r) + " trials " + std::to_string(trials)};
}

Outcome c8_lemica() {
  const Report r = verify_lemica(8, 100);
  const std::size_t trials = r.parameters.value("trials", 0);
  return {r.overall() == Status::pass && trials == 100, summary(r) + " trials " + std::to_string(trials)};
}

Outcome c9_fusion() {
  Outcome o{true, ""};
  for (const FusionData& d : {idempotent_fusion_data(), trivial_fusion_data()}) {
    const FusionTable t = fusion_table(d);
    o.pass = o.pass && t.forms_agree();
  }
  const Report r = verify_fusion_mult(idempotent_fusion_data(), idempotent_fusion_data());
  const CheckResult* binary = r.find("binary_flag");
  o.pass = o.pass && r.overall() == Status::pass && r.parameters["tensor_sectors"] == 16 && binary && binary->passed() &&
           r.parameters["tensor_binary"] == true;
  o.detail = summary(r);
  return o;
}

// Library sweep: every suite, several seeds, must fail with a witness.
Outcome c10_library() {
  const TruncatedVOA h3 = build_heisenberg(3), v3 = build_virasoro(Rational(1, 2), 3), h4 = build_heisenberg(4);
  const TruncatedModule f1 = build_fock(1, 3), f0 = build_fock(0, 3), fh = build_fock(Rational(1, 2), 4);
  using Run = std::function<Report(std::uint64_t)>;
  const std::vector<std::pair<std::string, Run>> suites{
      {"axioms", [&](std::uint64_t s) { return verify_axioms(inject_fault(h4, s)); }},
      {"module", [&](std::uint64_t s) { return verify_module(h4, inject_fault(fh, s)); }},
      {"prop41", [&](std::uint64_t s) { return verify_prop41(inject_fault(h4, s)); }},
      {"zhu-top", [&](std::uint64_t s) { return verify_zhu_top(h4, inject_fault(fh, s)); }},
      {"izo", [&](std::uint64_t s) { return verify_izo(inject_fault(h3, s), v3, 3); }},
      {"ten", [&](std::uint64_t s) { return verify_ten(inject_fault(h3, s), v3, 3); }},
      {"kvoc", [&](std::uint64_t s) { return verify_kvoc(inject_fault(h3, s), v3, 3); }},
      {"braiding", [&](std::uint64_t s) { return verify_braiding(inject_fault(h3, s), v3, h3, 3); }},
      {"teh", [&](std::uint64_t s) { return verify_teh(h3, h3, inject_fault(f1, s), f0, 3); }},
      {"main", [&](std::uint64_t s) { return verify_factorization(s, 5, s); }},
      {"lemica", [&](std::uint64_t s) { return verify_lemica(s, 5, s); }},
      {"fusion-mult",
       [&](std::uint64_t s) { return verify_fusion_mult(inject_fault(idempotent_fusion_data(), s), idempotent_fusion_data()); }},
  };
  Outcome o{true, ""};
  for (const auto& [name, run] : suites) {
    std::size_t caught = 0;
    const std::size_t seeds = 8;
    for (std::uint64_t s = 0; s < seeds; ++s) {
      const Report r = run(s);
      if (r.overall() == Status::fail && has_witness(r)) ++caught;
    }
    o.pass = o.pass && caught == seeds;
    o.detail += name + " " + std::to_string(caught) + "/" + std::to_string(seeds) + " ";
  }
  return o;
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

// CLI sweep: exit code 1 and a witness in the JSON report for each suite, after a clean exit-0 run.
Outcome c10_cli(const std::string& cli, const std::filesystem::path& work) {
  std::filesystem::create_directories(work);
  auto f = [&](const char* name) { return (work / name).string(); };
  const std::vector<std::string> builds{
      "build heisenberg --cutoff 3 --out " + f("h3.json"),
      "build heisenberg --cutoff 4 --out " + f("h4.json"),
      "build virasoro --c 1/2 --cutoff 3 --out " + f("v3.json"),
      "build fock --lambda 1 --cutoff 3 --out " + f("f1.json"),
      "build fock --lambda 0 --cutoff 3 --out " + f("f0.json"),
      "build fock --lambda 1/2 --cutoff 4 --out " + f("fh.json"),
  };
  for (const auto& b : builds)
    if (run_cli(cli, b) != 0) return {false, "build failed: " + b};
  const std::string pair = "--left " + f("h3.json") + " --right " + f("v3.json");
  const std::vector<std::pair<std::string, std::string>> suites{
      {"axioms", "verify axioms --voa " + f("h4.json")},
      {"module", "verify axioms --voa " + f("h4.json") + " --module " + f("fh.json")},
      {"prop41", "verify prop41 --voa " + f("h4.json")},
      {"zhu-top", "verify zhu-top --voa " + f("h4.json") + " --module " + f("fh.json")},
      {"izo", "verify izo " + pair},
      {"ten", "verify ten " + pair},
      {"kvoc", "verify kvoc " + pair},
      {"braiding", "verify braiding " + pair + " --third " + f("h3.json")},
      {"teh", "verify teh --left " + f("h3.json") + " --right " + f("h3.json") + " --left-module " + f("f1.json") +
                  " --right-module " + f("f0.json")},
      {"main", "verify main --trials 5"},
      {"lemica", "verify lemica --trials 5"},
      {"fusion-mult", "verify fusion-mult --data idempotent"},
  };
  Outcome o{true, ""};
  for (const auto& [name, args] : suites) {
    const std::string report = f(("report_" + name + ".json").c_str());
    const int clean = run_cli(cli, args + " --out " + report);
    std::size_t caught = 0;
    const std::size_t seeds = 3;
    for (std::uint64_t s = 0; s < seeds; ++s) {
      const int code = run_cli(cli, args + " --inject-fault --seed " + std::to_string(s) + " --out " + report);
      if (code != 1) continue;
      const json j = load_json(report);
      bool witness = false;
      for (const auto& c : j["checks"]) witness = witness || (c["status"] == "fail" && !c["witnesses"].empty());
      caught += witness ? 1 : 0;
    }
    o.pass = o.pass && clean == 0 && caught == seeds;
    o.detail += name + " clean=" + std::to_string(clean) + " " + std::to_string(caught) + "/" + std::to_string(seeds) + " ";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::filesystem::path work = argc > 2 ? argv[2] : std::filesystem::temp_directory_path() / "zhuforge_acceptance";

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "axioms of Heisenberg(6) and Virasoro(1/2, 6)", c1_axioms},
      {2, "circ_m products lie in O(V)", c2_circ_m},
      {3, "F map unital, multiplicative, bijective", c3_f_map},
      {4, "circ and O-span factor through the tensor product", c4_ten_kvoc},
      {5, "top-level actions of A(V)", c5_top_level},
      {6, "bimodule of a tensor module", c6_teh},
      {7, "tensor factorization of irreducible modules", c7_factorization},
      {8, "dimension identity for tensor products over algebras", c8_lemica},
      {9, "fusion forms and multiplicativity", c9_fusion},
      {10, "fault injection is detected by every suite",
       [&] {
         Outcome lib = c10_library();
         if (cli.empty()) return Outcome{false, lib.detail + "| no CLI path given"};
         Outcome bin = c10_cli(cli, work);
         return Outcome{lib.pass && bin.pass, "library: " + lib.detail + "| cli: " + bin.detail};
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", seconds_since(t0));
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  (" << secs << ")\n"
              << "    " << o.detail << "\n";
    std::cout.flush();
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
