#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zhuforge.hpp"

using namespace zhuforge;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kind;
  std::string suite;
  std::string voa, module, left, right, third, left_module, right_module, data, data2;
  std::string out;
  std::string format = "json";
  std::string c = "1/2", lambda = "0", h = "0", dataset = "idempotent";
  std::string verify_list = "izo,ten,kvoc";
  int cutoff = -1;
  int assoc_bound = 10, comm_bound = 10;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool inject = false;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text << '\n';
}

int exit_code(Status s) {
  switch (s) {
    case Status::pass: return kExitPass;
    case Status::fail: return kExitFail;
    case Status::inconclusive: return kExitInconclusive;
  }
  return kExitFail;
}

Rational parse_rational(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::string need(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing ") + flag);
  return path;
}

TruncatedVOA load_voa(const std::string& path, const char* flag) { return voa_from_json(load_json(need(path, flag))); }
TruncatedModule load_module(const std::string& path, const char* flag) {
  return module_from_json(load_json(need(path, flag)));
}

int resolve_cutoff(int requested, std::initializer_list<int> available) {
  const int most = *std::min_element(available.begin(), available.end());
  if (requested < 0) return most;
  if (requested > most)
    throw UsageError("--cutoff " + std::to_string(requested) + " exceeds the stored data (" + std::to_string(most) + ")");
  return requested;
}

int finish(Report rep, const Options& o, int cutoff, std::optional<Fault> fault = std::nullopt) {
  json j = rep.to_json();
  j["command"] = rep.suite;
  j["seed"] = o.seed;
  if (cutoff >= 0) j["cutoff"] = cutoff;
  j["bounds"] = {{"assoc_bound", o.assoc_bound}, {"comm_bound", o.comm_bound}};
  if (fault) j["fault"] = to_json(*fault);
  emit(j.dump(2), o.out);
  std::cerr << rep.suite << ": " << to_string(rep.overall());
  if (cutoff >= 0) std::cerr << " (verified at N = " << cutoff << ")";
  std::cerr << '\n';
  return exit_code(rep.overall());
}

int cmd_build(const Options& o) {
  const int n = o.cutoff < 0 ? 4 : o.cutoff;
  json doc;
  Fault fault;
  const bool fault_on = o.inject;
  if (o.kind == "heisenberg" || o.kind == "virasoro" || o.kind == "trivial") {
    if (o.kind != "trivial" && n < 2) throw UsageError("--cutoff must be >= 2");
    TruncatedVOA v = o.kind == "heisenberg" ? build_heisenberg(n)
                     : o.kind == "virasoro" ? build_virasoro(parse_rational(o.c, "--c"), n)
                                            : build_trivial(n);
    if (fault_on) v = inject_fault(v, o.seed, &fault);
    doc = to_json(v);
  } else if (o.kind == "fock" || o.kind == "virasoro-module") {
    if (o.kind == "virasoro-module" && n < 2) throw UsageError("--cutoff must be >= 2");
    TruncatedModule m = o.kind == "fock" ? build_fock(parse_rational(o.lambda, "--lambda"), n)
                                         : build_virasoro_module(parse_rational(o.c, "--c"), parse_rational(o.h, "--h"), n);
    if (fault_on) m = inject_fault(m, o.seed, &fault);
    doc = to_json(m);
  } else if (o.kind == "fusion-data") {
    FusionData d;
    if (o.dataset == "idempotent") d = idempotent_fusion_data();
    else if (o.dataset == "trivial") d = trivial_fusion_data();
    else throw UsageError("--dataset must be idempotent or trivial");
    if (fault_on) d = inject_fault(d, o.seed, &fault);
    doc = to_json(d);
  } else {
    throw UsageError("unknown kind " + o.kind);
  }
  if (fault_on) doc["fault"] = to_json(fault);
  emit(doc.dump(2), o.out);
  return kExitPass;
}

int verify_voa_suite(const Options& o) {
  TruncatedVOA v = load_voa(o.voa, "--voa");
  std::optional<TruncatedModule> loaded;
  if (!o.module.empty() && (o.suite == "axioms" || o.suite == "zhu-top")) loaded = load_module(o.module, "--module");
  const int n = resolve_cutoff(o.cutoff, {v.cutoff(), loaded ? loaded->cutoff() : v.cutoff()});
  v = truncate(v, n);
  std::optional<Fault> fault;
  const Bounds b{o.assoc_bound, o.comm_bound};
  if (o.suite == "axioms" && loaded) {
    TruncatedModule m = truncate(*loaded, n);
    if (o.inject) m = inject_fault(m, o.seed, &fault.emplace());
    return finish(verify_module(v, m, b), o, n, fault);
  }
  if (o.suite == "zhu-top") {
    TruncatedModule m = loaded ? truncate(*loaded, n) : adjoint_module(v);
    if (o.inject) m = inject_fault(m, o.seed, &fault.emplace());
    return finish(verify_zhu_top(v, m, b), o, n, fault);
  }
  if (o.inject) v = inject_fault(v, o.seed, &fault.emplace());
  if (o.suite == "axioms") return finish(verify_axioms(v, b), o, n, fault);
  return finish(verify_prop41(v, b), o, n, fault);
}

int verify_pair_suite(const Options& o) {
  TruncatedVOA l = load_voa(o.left, "--left");
  TruncatedVOA r = load_voa(o.right, "--right");
  const Bounds b{o.assoc_bound, o.comm_bound};
  std::optional<Fault> fault;
  if (o.suite == "teh") {
    TruncatedModule ml = load_module(o.left_module, "--left-module");
    TruncatedModule mr = load_module(o.right_module, "--right-module");
    const int n = resolve_cutoff(o.cutoff, {l.cutoff(), r.cutoff(), ml.cutoff(), mr.cutoff()});
    l = truncate(l, n);
    if (o.inject) l = inject_fault(l, o.seed, &fault.emplace());
    return finish(verify_teh(l, r, ml, mr, n, b), o, n, fault);
  }
  if (o.suite == "braiding") {
    TruncatedVOA t = load_voa(o.third, "--third");
    const int n = resolve_cutoff(o.cutoff, {l.cutoff(), r.cutoff(), t.cutoff()});
    l = truncate(l, n);
    if (o.inject) l = inject_fault(l, o.seed, &fault.emplace());
    return finish(verify_braiding(l, r, t, n, b), o, n, fault);
  }
  const int n = resolve_cutoff(o.cutoff, {l.cutoff(), r.cutoff()});
  l = truncate(l, n);
  if (o.inject) l = inject_fault(l, o.seed, &fault.emplace());
  if (o.suite == "izo") return finish(verify_izo(l, r, n, b), o, n, fault);
  if (o.suite == "ten") return finish(verify_ten(l, r, n, b), o, n, fault);
  return finish(verify_kvoc(l, r, n, b), o, n, fault);
}

FusionData load_fusion(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing ") + flag);
  if (path == "idempotent") return idempotent_fusion_data();
  if (path == "trivial") return trivial_fusion_data();
  return fusion_data_from_json(load_json(path));
}

int cmd_verify(const Options& o) {
  const std::string& s = o.suite;
  if (s == "axioms" || s == "prop41" || s == "zhu-top") return verify_voa_suite(o);
  if (s == "izo" || s == "ten" || s == "kvoc" || s == "teh" || s == "braiding") return verify_pair_suite(o);
  std::optional<std::uint64_t> fault_seed;
  if (o.inject) fault_seed = o.seed;
  if (s == "lemica") return finish(verify_lemica(o.seed, o.trials ? o.trials : 100, fault_seed), o, -1);
  if (s == "main") return finish(verify_factorization(o.seed, o.trials ? o.trials : 50, fault_seed), o, -1);
  FusionData d1 = load_fusion(o.data, "--data");
  FusionData d2 = o.data2.empty() ? d1 : load_fusion(o.data2, "--data2");
  std::optional<Fault> fault;
  if (o.inject) d1 = inject_fault(d1, o.seed, &fault.emplace());
  return finish(verify_fusion_mult(d1, d2), o, -1, fault);
}

int cmd_zhu(const Options& o) {
  TruncatedVOA v = load_voa(o.voa, "--voa");
  const int n = resolve_cutoff(o.cutoff, {v.cutoff()});
  v = truncate(v, n);
  const ZhuPresentation z = zhu_algebra(v);
  const Report rep = verify_zhu(v);
  json j = to_json(z, v);
  j["report"] = rep.to_json();
  emit(j.dump(2), o.out);
  std::cerr << "zhu: " << z.dim() << " classes, o_span rank " << z.o_span_rank() << ", " << to_string(rep.overall())
            << " (verified at N = " << n << "; O(V) window is conservative)\n";
  return exit_code(rep.overall());
}

int cmd_tensor(const Options& o) {
  const TruncatedVOA l = load_voa(o.left, "--left");
  const TruncatedVOA r = load_voa(o.right, "--right");
  const int n = resolve_cutoff(o.cutoff, {l.cutoff(), r.cutoff()});
  const Bounds b{o.assoc_bound, o.comm_bound};
  Report all;
  all.suite = "tensor";
  all.parameters = {{"cutoff", n}};
  std::stringstream list(o.verify_list);
  std::string item;
  json sub = json::object();
  while (std::getline(list, item, ',')) {
    Report rep;
    if (item == "izo") rep = verify_izo(l, r, n, b);
    else if (item == "ten") rep = verify_ten(l, r, n, b);
    else if (item == "kvoc") rep = verify_kvoc(l, r, n, b);
    else if (item == "axioms") rep = verify_axioms(tensor_voa(l, r, n).product, b);
    else throw UsageError("unknown check " + item + " in --verify");
    for (auto c : rep.checks) {
      c.name = item + "/" + c.name;
      all.checks.push_back(std::move(c));
    }
    all.wall_seconds += rep.wall_seconds;
    sub[item] = rep.parameters;
  }
  all.parameters["suites"] = sub;
  all.parameters["product_dims"] = tensor_voa(l, r, n).product.dims();
  return finish(all, o, n);
}

int cmd_bimodule(const Options& o) {
  TruncatedVOA v = load_voa(o.voa, "--voa");
  TruncatedModule m = load_module(o.module, "--module");
  const int n = resolve_cutoff(o.cutoff, {v.cutoff(), m.cutoff()});
  v = truncate(v, n);
  m = truncate(m, n);
  const ZhuBimodule b = build_bimodule(v, m);
  const Report rep = check_bimodule(v, m, b);
  json j = to_json(b, m);
  j["report"] = rep.to_json();
  emit(j.dump(2), o.out);
  std::cerr << "bimodule: " << b.dim() << " classes, " << to_string(rep.overall()) << " (verified at N = " << n << ")\n";
  return exit_code(rep.overall());
}

int cmd_fusion(const Options& o) {
  const FusionData d = load_fusion(o.data, "--data");
  CheckResult valid = validate_fusion_data(d, "data");
  if (valid.status() == Status::fail) {
    Report rep;
    rep.suite = "fusion";
    rep.checks = {valid};
    return finish(rep, o, -1);
  }
  const FusionTable t = fusion_table(d);
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "bimodule,m2,m3,fusion_dim,dual_form";
    for (const auto& e : t.entries) csv << '\n' << e.bimodule << ',' << e.m2 << ',' << e.m3 << ',' << e.hom_form << ',' << e.dual_form;
    emit(csv.str(), o.out);
  } else {
    json rows = json::array();
    for (const auto& e : t.entries)
      rows.push_back({{"bimodule", e.bimodule}, {"m2", e.m2}, {"m3", e.m3}, {"fusion_dim", e.hom_form}, {"dual_form", e.dual_form}});
    emit(json{{"rows", rows}, {"all_binary", t.all_binary()}, {"forms_agree", t.forms_agree()}}.dump(2), o.out);
  }
  std::cerr << "fusion: " << t.entries.size() << " rows, all 0/1: " << (t.all_binary() ? "yes" : "no") << '\n';
  return t.forms_agree() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated vertex operator algebras, Zhu algebras and fusion dimensions over Q"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* c) {
    c->add_option("--cutoff", o.cutoff, "weight cutoff N");
    c->add_option("--assoc-bound", o.assoc_bound, "largest vanishing order used in weak associativity")->check(CLI::PositiveNumber);
    c->add_option("--comm-bound", o.comm_bound, "largest vanishing order used in weak commutativity")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "seed for random trials and fault injection");
    c->add_option("--out", o.out, "output file (default stdout)");
  };

  auto* build = app.add_subcommand("build", "write an example structure as JSON");
  build->add_option("kind", o.kind, "heisenberg|virasoro|fock|virasoro-module|trivial|fusion-data")
      ->required()
      ->check(CLI::IsMember({"heisenberg", "virasoro", "fock", "virasoro-module", "trivial", "fusion-data"}));
  build->add_option("--c", o.c, "central charge p/q");
  build->add_option("--lambda", o.lambda, "Fock momentum p/q");
  build->add_option("--weight", o.h, "lowest conformal weight h as p/q (virasoro-module)");
  build->add_option("--dataset", o.dataset, "fusion dataset: idempotent|trivial");
  build->add_flag("--inject-fault", o.inject, "corrupt one structure constant (seeded)");
  add_common(build);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"axioms", "izo", "ten", "kvoc", "teh", "prop41", "zhu-top", "lemica", "main", "fusion-mult", "braiding"}));
  verify->add_option("--voa", o.voa);
  verify->add_option("--module", o.module);
  verify->add_option("--left", o.left);
  verify->add_option("--right", o.right);
  verify->add_option("--third", o.third);
  verify->add_option("--left-module", o.left_module);
  verify->add_option("--right-module", o.right_module);
  verify->add_option("--data", o.data, "fusion dataset file, or idempotent|trivial");
  verify->add_option("--data2", o.data2, "second fusion dataset (default: same as --data)");
  verify->add_option("--trials", o.trials, "random trials for lemica/main");
  verify->add_flag("--inject-fault", o.inject, "corrupt one structure constant of the first input");
  add_common(verify);

  auto* zhu = app.add_subcommand("zhu", "Zhu algebra of a truncated VOA");
  auto* zhu_compute = zhu->add_subcommand("compute", "quotient V/O(V) and its multiplication table");
  zhu->require_subcommand(1);
  zhu_compute->add_option("--voa", o.voa)->required();
  add_common(zhu_compute);

  auto* tensor = app.add_subcommand("tensor", "tensor product checks");
  tensor->add_option("--left", o.left)->required();
  tensor->add_option("--right", o.right)->required();
  tensor->add_option("--verify", o.verify_list, "comma list of izo,ten,kvoc,axioms");
  add_common(tensor);

  auto* bimodule = app.add_subcommand("bimodule", "A(M) with its two actions");
  bimodule->add_option("--voa", o.voa)->required();
  bimodule->add_option("--module", o.module)->required();
  add_common(bimodule);

  auto* teh = app.add_subcommand("verify-teh", "A(M1⊗M2) against A(M1)⊗A(M2)");
  teh->add_option("--left", o.left, "left VOA")->required();
  teh->add_option("--right", o.right, "right VOA")->required();
  teh->add_option("--left-module", o.left_module)->required();
  teh->add_option("--right-module", o.right_module)->required();
  teh->add_flag("--inject-fault", o.inject);
  add_common(teh);

  auto* fusion = app.add_subcommand("fusion", "fusion dimensions over all sector triples");
  fusion->add_option("--data", o.data, "fusion dataset file, or idempotent|trivial")->required();
  fusion->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  add_common(fusion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*zhu_compute) return cmd_zhu(o);
    if (*tensor) return cmd_tensor(o);
    if (*bimodule) return cmd_bimodule(o);
    if (*teh) {
      o.suite = "teh";
      return verify_pair_suite(o);
    }
    if (*fusion) return cmd_fusion(o);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutOfTruncation& e) {
    std::cerr << "out of truncation (raise --cutoff): " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
