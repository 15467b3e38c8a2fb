#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/assoc.hpp"
#include "zhuforge/assoc_rep.hpp"
#include "zhuforge/axioms.hpp"
#include "zhuforge/bimodule.hpp"
#include "zhuforge/faults.hpp"
#include "zhuforge/random_algebra.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/tensor.hpp"
#include "zhuforge/voa.hpp"
#include "zhuforge/zhu.hpp"

namespace zhuforge {

struct Bounds {
  int assoc = 10;
  int comm = 10;
};

namespace detail {

/// Collapses a validation report into one check so a broken input fails the suite with its witnesses.
inline CheckResult input_check(const std::string& name, const Report& r) {
  CheckResult out("input:" + name);
  for (const auto& c : r.checks) {
    CheckResult tagged = c;
    for (auto& w : tagged.witnesses) w.data["check"] = c.name;
    out.merge(tagged);
  }
  return out;
}

inline Report with_inputs(std::vector<CheckResult> inputs, Report body) {
  inputs.insert(inputs.end(), body.checks.begin(), body.checks.end());
  body.checks = std::move(inputs);
  return body;
}

inline json bounds_json(const Bounds& b) { return {{"assoc_bound", b.assoc}, {"comm_bound", b.comm}}; }

}  // namespace detail

inline Report verify_axioms(const TruncatedVOA& v, const Bounds& b = {}) { return check_axioms(v, b.assoc, b.comm); }

inline Report verify_module(const TruncatedVOA& v, const TruncatedModule& m, const Bounds& b = {}) {
  return check_module(v, m, b.assoc, b.comm);
}

inline Report verify_prop41(const TruncatedVOA& v, const Bounds& b = {}, long max_m = 4) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = detail::with_inputs({detail::input_check("voa", check_axioms(v, b.assoc, b.comm))}, check_circ_m_in_O(v, max_m));
  rep.parameters.update(detail::bounds_json(b));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

/// Top level as an A(V)-module via a ↦ o(a); also reports o(ω) on the top level.
inline Report verify_zhu_top(const TruncatedVOA& v, const TruncatedModule& m, const Bounds& b = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckResult> inputs{detail::input_check("voa", check_axioms(v, b.assoc, b.comm)),
                                  detail::input_check("module", check_module(v, m, b.assoc, b.comm))};
  ZhuTopLevelResult top = check_zhu_top_level(v, m);
  Report rep = detail::with_inputs(std::move(inputs), std::move(top.report));
  if (v.omega()) rep.parameters["o_omega"] = top_level_action(m, *v.omega()).str();
  rep.parameters.update(detail::bounds_json(b));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

inline std::vector<CheckResult> validate_pair(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff, const Bounds& b) {
  return {detail::input_check("left", check_axioms(truncate(v1, cutoff), b.assoc, b.comm)),
          detail::input_check("right", check_axioms(truncate(v2, cutoff), b.assoc, b.comm))};
}

inline Report verify_izo(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff, const Bounds& b = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  auto inputs = validate_pair(v1, v2, cutoff, b);
  Report rep = detail::with_inputs(std::move(inputs), build_F_map(v1, v2, cutoff).report);
  rep.parameters.update(detail::bounds_json(b));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

inline Report verify_ten(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff, const Bounds& b = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = detail::with_inputs(validate_pair(v1, v2, cutoff, b), check_lemma_ten(v1, v2, cutoff));
  rep.parameters.update(detail::bounds_json(b));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

inline Report verify_kvoc(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff, const Bounds& b = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = detail::with_inputs(validate_pair(v1, v2, cutoff, b), check_lemma_kvoc(v1, v2, cutoff));
  rep.parameters.update(detail::bounds_json(b));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

inline Report verify_braiding(const TruncatedVOA& v1, const TruncatedVOA& v2, const TruncatedVOA& v3, int cutoff,
                              const Bounds& b = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  auto inputs = validate_pair(v1, v2, cutoff, b);
  inputs.push_back(detail::input_check("third", check_axioms(truncate(v3, cutoff), b.assoc, b.comm)));
  Report rep = detail::with_inputs(std::move(inputs), check_braiding_associator(v1, v2, v3, cutoff));
  rep.parameters.update(detail::bounds_json(b));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

inline Report verify_teh(const TruncatedVOA& v1, const TruncatedVOA& v2, const TruncatedModule& m1,
                         const TruncatedModule& m2, int cutoff, const Bounds& b = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const TruncatedVOA w1 = truncate(v1, cutoff), w2 = truncate(v2, cutoff);
  auto inputs = validate_pair(v1, v2, cutoff, b);
  inputs.push_back(detail::input_check("left_module", check_module(w1, truncate(m1, cutoff), b.assoc, b.comm)));
  inputs.push_back(detail::input_check("right_module", check_module(w2, truncate(m2, cutoff), b.assoc, b.comm)));
  Report rep = detail::with_inputs(std::move(inputs), check_theorem_teh(v1, v2, m1, m2, cutoff));
  rep.parameters.update(detail::bounds_json(b));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

/// Zhu algebra laws at N plus stability against N - 1 when the cutoff allows it.
inline Report verify_zhu(const TruncatedVOA& v) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = zhu_algebra(v).check();
  rep.checks.push_back(check_circ_m_in_O(v, 2).checks.front());
  if (v.cutoff() >= 1) {
    CheckResult conv = zhu_convergence(v, v.cutoff() - 1);
    conv.notes.push_back("compared cutoffs " + std::to_string(v.cutoff() - 1) + " and " + std::to_string(v.cutoff()));
    rep.checks.push_back(std::move(conv));
  }
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

namespace detail {

inline CheckResult validate_modules(const std::vector<const AlgModule*>& mods) {
  CheckResult r("input_modules");
  for (const auto* m : mods) {
    r.merge(m->algebra().check());
    r.merge(m->check());
  }
  r.name = "input_modules";
  return r;
}

}  // namespace detail

/// Irreducible modules of A⊗B recovered as M1⊗M2 on seeded split semisimple pairs (dims <= max_dim).
/// With a fault seed, one trial's module gets a corrupted action entry.
inline Report verify_factorization(std::uint64_t seed, std::size_t trials, std::optional<std::uint64_t> fault = std::nullopt,
                                   std::size_t max_dim = 4) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  CheckResult inputs("input_modules"), fact("factorization"), dims("factor_dims"), iso("factor_types");
  const std::size_t faulty = fault ? static_cast<std::size_t>(*fault % std::max<std::size_t>(trials, 1)) : trials;
  Fault where;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampleAlgebra a = random_split_semisimple(rng, max_dim);
    const SampleAlgebra b = random_split_semisimple(rng, max_dim);
    const AlgModule& sa = a.blocks[static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(a.blocks.size()) - 1))];
    const AlgModule& sb = b.blocks[static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(b.blocks.size()) - 1))];
    const AlgebraPtr ab = share(tensor_algebra(*a.algebra, *b.algebra));
    AlgModule m = tensor_module(sa, sb, ab).rebased(random_invertible(rng, sa.dim() * sb.dim()));
    if (t == faulty) m = inject_fault(m, *fault, &where);
    CheckResult v = detail::validate_modules({&sa, &sb, &m});
    if (!v.passed()) {
      for (auto& w : v.witnesses) w.data["trial"] = t;
      inputs.merge(v);
      continue;
    }
    inputs.pass();
    const TensorFactorization f = factor_tensor_module(a.algebra, b.algebra, m);
    fact.expect(f.checks.passed(), [&] {
      Witness w = f.checks.witnesses.empty() ? Witness{"factorization checks failed", {}} : f.checks.witnesses.front();
      w.data["trial"] = t;
      return w;
    });
    dims.expect(f.m1.dim() == sa.dim() && f.m2.dim() == sb.dim(), [&] {
      return Witness{"factor dimensions differ from the planted ones",
                     {{"trial", t}, {"m1", f.m1.dim()}, {"m2", f.m2.dim()}, {"planted", {sa.dim(), sb.dim()}}}};
    });
    iso.expect(!hom_space(f.m1, sa).empty() && !hom_space(f.m2, sb).empty(), [&] {
      return Witness{"a recovered factor is not isomorphic to the planted one", {{"trial", t}}};
    });
  }
  Report rep;
  rep.suite = "main";
  rep.parameters = {{"seed", seed}, {"trials", trials}, {"max_algebra_dim", max_dim}};
  if (fault) rep.parameters["fault"] = to_json(where);
  rep.checks = {inputs, fact, dims, iso};
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

/// dim(M ⊗_A M') · dim(N ⊗_B N') = dim((M⊗N) ⊗_{A⊗B} (M'⊗N')) on seeded algebras, semisimple or not.
inline Report verify_lemica(std::uint64_t seed, std::size_t trials, std::optional<std::uint64_t> fault = std::nullopt,
                            std::size_t max_dim = 4, std::size_t max_module_dim = 3) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  CheckResult inputs("input_modules"), lem("tensor_over_algebra");
  const std::size_t faulty = fault ? static_cast<std::size_t>(*fault % std::max<std::size_t>(trials, 1)) : trials;
  Fault where;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampleAlgebra a = random_algebra(rng, max_dim);
    const SampleAlgebra b = random_algebra(rng, max_dim);
    AlgModule m = random_module(rng, a, max_module_dim, Side::right);
    const AlgModule mp = random_module(rng, a, max_module_dim);
    const AlgModule n = random_module(rng, b, max_module_dim, Side::right);
    const AlgModule np = random_module(rng, b, max_module_dim);
    if (t == faulty) m = inject_fault(m, *fault, &where);
    CheckResult v = detail::validate_modules({&m, &mp, &n, &np});
    if (!v.passed()) {
      for (auto& w : v.witnesses) w.data["trial"] = t;
      inputs.merge(v);
      continue;
    }
    inputs.pass();
    CheckResult r = check_lemica(m, mp, n, np);
    for (auto& w : r.witnesses) w.data["trial"] = t;
    lem.merge(r);
  }
  Report rep;
  rep.suite = "lemica";
  rep.parameters = {{"seed", seed}, {"trials", trials}, {"max_algebra_dim", max_dim}, {"max_module_dim", max_module_dim}};
  if (fault) rep.parameters["fault"] = to_json(where);
  rep.checks = {inputs, lem};
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

inline CheckResult validate_fusion_data(const FusionData& d, const std::string& name) {
  CheckResult r("input:" + name);
  r.merge(d.algebra->check());
  for (const auto& [n, b] : d.bimodules) r.merge(b.check());
  for (const auto& [n, m] : d.modules) r.merge(m.check());
  return r;
}

inline Report verify_fusion_mult(const FusionData& d1, const FusionData& d2) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckResult> inputs{validate_fusion_data(d1, "left"), validate_fusion_data(d2, "right")};
  Report rep;
  if (inputs[0].passed() && inputs[1].passed()) {
    rep = detail::with_inputs(std::move(inputs), check_fusion_multiplicativity(d1, d2));
  } else {
    rep.suite = "fusion-mult";
    rep.checks = std::move(inputs);
  }
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace zhuforge
