#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "zhuforge/assoc.hpp"
#include "zhuforge/assoc_rep.hpp"
#include "zhuforge/errors.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/voa.hpp"

namespace zhuforge {

/// Where a single structure constant was corrupted.
struct Fault {
  std::string target;
  json location;
};

namespace detail {

inline std::vector<std::tuple<std::size_t, long, std::size_t>> nonzero_constants(const ModeTable& t) {
  std::vector<std::tuple<std::size_t, long, std::size_t>> out;
  for (std::size_t a = 0; a < t.source_dim(); ++a)
    for (std::size_t b = 0; b < t.target_dim(); ++b) {
      const auto [lo, hi] = t.mode_range(a, b);
      for (long n = lo; n <= hi; ++n)
        if (t.classify(a, n, b) == ModeTable::Slot::in_window && !t.at(a, n, b).is_zero()) out.emplace_back(a, n, b);
    }
  return out;
}

/// Adds 1 to one coefficient of a seeded nonzero constant a(n)b; the grading is kept.
template <typename Structure>
Structure corrupt_table(const Structure& s, std::uint64_t seed, const char* target, Fault* fault) {
  const auto candidates = nonzero_constants(s.table());
  if (candidates.empty()) throw PreconditionFailed("no nonzero constant to corrupt");
  std::mt19937_64 rng(seed);
  const auto [a, n, b] = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  SparseVec value = s.table().at(a, n, b);
  const auto it = std::next(value.begin(), static_cast<long>(std::uniform_int_distribution<std::size_t>(0, value.nnz() - 1)(rng)));
  const std::size_t k = it->first;
  const Rational before = it->second;
  value.add(k, Rational(1));
  if (fault) {
    *fault = {target,
              {{"a", a}, {"n", n}, {"b", b}, {"component", k}, {"was", before.str()}, {"now", (before + Rational(1)).str()}}};
  }
  return s.with_constant(a, n, b, std::move(value));
}

/// Index of a basis element that carries part of the identity.
inline std::size_t identity_support(const AssocAlgebra& a, std::mt19937_64& rng) {
  std::vector<std::size_t> support;
  for (const auto& [k, c] : a.identity()) support.push_back(k);
  if (support.empty()) throw PreconditionFailed("algebra has zero identity");
  return support[std::uniform_int_distribution<std::size_t>(0, support.size() - 1)(rng)];
}

}  // namespace detail

inline TruncatedVOA inject_fault(const TruncatedVOA& v, std::uint64_t seed, Fault* fault = nullptr) {
  return detail::corrupt_table(v, seed, "voa", fault);
}

inline TruncatedModule inject_fault(const TruncatedModule& m, std::uint64_t seed, Fault* fault = nullptr) {
  return detail::corrupt_table(m, seed, "module", fault);
}

/// Adds 1 to a coefficient of e_k e_j where e_k carries part of the identity, which breaks the unit law.
inline AssocAlgebra inject_fault(const AssocAlgebra& a, std::uint64_t seed, Fault* fault = nullptr) {
  std::mt19937_64 rng(seed);
  const std::size_t k = detail::identity_support(a, rng);
  const std::size_t j = std::uniform_int_distribution<std::size_t>(0, a.dim() - 1)(rng);
  const std::size_t c = std::uniform_int_distribution<std::size_t>(0, a.dim() - 1)(rng);
  std::vector<SparseVec> mult = a.table();
  mult[k * a.dim() + j].add(c, Rational(1));
  if (fault) *fault = {"algebra", {{"i", k}, {"j", j}, {"component", c}}};
  return AssocAlgebra(a.dim(), std::move(mult), a.identity(), a.name());
}

/// Adds 1 to a diagonal entry of the action of an identity-carrying basis element, which moves the
/// action of 1 off the identity matrix.
inline AlgModule inject_fault(const AlgModule& m, std::uint64_t seed, Fault* fault = nullptr) {
  std::mt19937_64 rng(seed);
  const std::size_t k = detail::identity_support(m.algebra(), rng);
  const std::size_t r = std::uniform_int_distribution<std::size_t>(0, m.dim() - 1)(rng);
  std::vector<Matrix> act = m.actions();
  act[k](r, r) += Rational(1);
  if (fault) *fault = {"module", {{"basis", k}, {"row", r}, {"col", r}}};
  return AlgModule(m.algebra_ptr(), m.dim(), std::move(act), m.side());
}

/// Corrupts one module of the dataset.
inline FusionData inject_fault(const FusionData& d, std::uint64_t seed, Fault* fault = nullptr) {
  if (d.modules.empty()) throw PreconditionFailed("dataset has no modules");
  std::mt19937_64 rng(seed);
  FusionData out = d;
  auto& [name, m] = out.modules[std::uniform_int_distribution<std::size_t>(0, d.modules.size() - 1)(rng)];
  m = inject_fault(m, rng(), fault);
  if (fault) fault->location["name"] = name;
  return out;
}

inline json to_json(const Fault& f) { return {{"target", f.target}, {"location", f.location}}; }

}  // namespace zhuforge
