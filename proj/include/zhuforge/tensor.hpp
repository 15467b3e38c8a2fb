#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/axioms.hpp"
#include "zhuforge/errors.hpp"
#include "zhuforge/matrix.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/sparse.hpp"
#include "zhuforge/voa.hpp"
#include "zhuforge/zhu.hpp"

namespace zhuforge {

/// Pairs (i, j) of factor basis indices with w1[i] + w2[j] <= N, weight-major then lexicographic.
class TensorBasis {
 public:
  TensorBasis() = default;
  TensorBasis(const std::vector<int>& w1, const std::vector<int>& w2, int cutoff) : cutoff_(cutoff) {
    dims_.assign(static_cast<std::size_t>(cutoff) + 1, 0);
    for (int t = 0; t <= cutoff; ++t)
      for (std::size_t i = 0; i < w1.size(); ++i) {
        if (w1[i] > t) break;
        for (std::size_t j = 0; j < w2.size(); ++j) {
          if (w2[j] > t - w1[i]) break;
          if (w2[j] < t - w1[i]) continue;
          index_[{i, j}] = pairs_.size();
          pairs_.emplace_back(i, j);
          weights_.push_back(t);
          ++dims_[static_cast<std::size_t>(t)];
        }
      }
    left_dim_ = w1.size();
    right_dim_ = w2.size();
  }

  [[nodiscard]] int cutoff() const { return cutoff_; }
  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
  [[nodiscard]] const std::vector<int>& weights() const { return weights_; }
  [[nodiscard]] const std::pair<std::size_t, std::size_t>& pair(std::size_t k) const { return pairs_.at(k); }
  [[nodiscard]] std::optional<std::size_t> find(std::size_t i, std::size_t j) const {
    auto it = index_.find({i, j});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t at(std::size_t i, std::size_t j) const {
    auto k = find(i, j);
    if (!k) throw OutOfTruncation("tensor of basis " + std::to_string(i) + " and " + std::to_string(j) +
                                  " lies above the cutoff");
    return *k;
  }

  /// x ⊗ y in tensor coordinates; nullopt when some component leaves the window.
  [[nodiscard]] std::optional<SparseVec> tensor(const SparseVec& x, const SparseVec& y) const {
    if (x.dim() != left_dim_ || y.dim() != right_dim_) throw DimensionMismatch("tensor factor of wrong dimension");
    SparseVec out(size());
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) {
        auto k = find(i, j);
        if (!k) return std::nullopt;
        out.add(*k, a * b);
      }
    return out;
  }

 private:
  int cutoff_ = 0;
  std::size_t left_dim_ = 0;
  std::size_t right_dim_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
  std::vector<int> weights_;
  std::vector<int> dims_;
};

namespace detail {

/// (a⊗b)(n)(u⊗v) = sum_{p+q=n-1} a(p)u ⊗ b(q)v. Every factor constant needed lies in the factor windows
/// as long as both factors are stored up to the product cutoff.
inline ModeTable convolve(const ModeTable& t1, const ModeTable& t2, const TensorBasis& src, const TensorBasis& tgt,
                          int cutoff) {
  ModeTable out(cutoff, src.weights(), tgt.weights());
  for (std::size_t x = 0; x < src.size(); ++x) {
    const auto [a, b] = src.pair(x);
    for (std::size_t y = 0; y < tgt.size(); ++y) {
      const auto [u, v] = tgt.pair(y);
      const long hi_p = static_cast<long>(t1.source_weights()[a]) + t1.target_weights()[u] - 1;
      const long hi_q = static_cast<long>(t2.source_weights()[b]) + t2.target_weights()[v] - 1;
      const auto [lo_n, hi_n] = out.mode_range(x, y);
      for (long n = lo_n; n <= hi_n; ++n) {
        SparseVec value(tgt.size());
        for (long p = n - 1 - hi_q; p <= hi_p; ++p) {
          const long q = n - 1 - p;
          const SparseVec& l = t1.at(a, p, u);
          if (l.is_zero()) continue;
          const SparseVec& r = t2.at(b, q, v);
          if (r.is_zero()) continue;
          for (const auto& [k, c] : l)
            for (const auto& [j, d] : r) value.add(tgt.at(k, j), c * d);
        }
        out.set(x, n, y, std::move(value));
      }
    }
  }
  return out;
}

inline std::vector<std::string> tensor_labels(const TensorBasis& basis, const std::vector<std::string>& l,
                                              const std::vector<std::string>& r) {
  std::vector<std::string> out;
  if (l.empty() || r.empty()) return out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto [i, j] = basis.pair(k);
    out.push_back(l[i] + "⊗" + r[j]);
  }
  return out;
}

inline void require_cutoff(int have, int want, const char* what) {
  if (have < want)
    throw PreconditionFailed(std::string(what) + " is truncated at " + std::to_string(have) + " below the cutoff " +
                             std::to_string(want));
}

}  // namespace detail

struct TensorVOA {
  TruncatedVOA left;
  TruncatedVOA right;
  TruncatedVOA product;
  TensorBasis basis;
};

inline TensorVOA tensor_voa(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff) {
  detail::require_cutoff(v1.cutoff(), cutoff, "left factor");
  detail::require_cutoff(v2.cutoff(), cutoff, "right factor");
  TensorVOA t{truncate(v1, cutoff), truncate(v2, cutoff), {}, {}};
  t.basis = TensorBasis(t.left.weights(), t.right.weights(), cutoff);
  ModeTable table = detail::convolve(t.left.table(), t.right.table(), t.basis, t.basis, cutoff);
  const SparseVec vacuum = *t.basis.tensor(t.left.vacuum(), t.right.vacuum());
  std::optional<SparseVec> omega;
  if (cutoff >= 2 && (t.left.omega() || t.right.omega())) {
    SparseVec w(t.basis.size());
    if (t.left.omega()) w += *t.basis.tensor(*t.left.omega(), t.right.vacuum());
    if (t.right.omega()) w += *t.basis.tensor(t.left.vacuum(), *t.right.omega());
    omega = std::move(w);
  }
  t.product = TruncatedVOA(t.basis.dims(), vacuum, omega, t.left.central_charge() + t.right.central_charge(),
                           std::move(table), detail::tensor_labels(t.basis, t.left.labels(), t.right.labels()));
  return t;
}

inline TensorBasis tensor_module_basis(const TruncatedModule& m1, const TruncatedModule& m2, int cutoff) {
  return TensorBasis(m1.degrees(), m2.degrees(), cutoff);
}

/// M1 ⊗ M2 over V1 ⊗ V2 with the same convolution on the actions.
inline TruncatedModule tensor_module(const TruncatedModule& m1, const TruncatedModule& m2, int cutoff) {
  detail::require_cutoff(m1.cutoff(), cutoff, "left module");
  detail::require_cutoff(m2.cutoff(), cutoff, "right module");
  const TensorBasis src(weights_from_dims(m1.voa_dims()), weights_from_dims(m2.voa_dims()), cutoff);
  const TensorBasis tgt = tensor_module_basis(m1, m2, cutoff);
  ModeTable table = detail::convolve(m1.table(), m2.table(), src, tgt, cutoff);
  return TruncatedModule(src.dims(), tgt.dims(), std::move(table), detail::tensor_labels(tgt, m1.labels(), m2.labels()));
}

namespace detail {

inline SparseVec permute(const SparseVec& x, const std::vector<std::size_t>& perm) {
  SparseVec out(x.dim());
  for (const auto& [k, c] : x) out.add(perm.at(k), c);
  return out;
}

/// f(a(n)b) = f(a)(n)f(b) for a basis permutation f, plus vacuum, ω and central charge.
inline CheckResult check_basis_homomorphism(std::string name, const TruncatedVOA& v, const TruncatedVOA& w,
                                            const std::vector<std::size_t>& perm) {
  CheckResult r(std::move(name));
  if (v.dims() != w.dims()) {
    r.fail(Witness{"graded dimensions differ", {{"source", v.dims()}, {"target", w.dims()}}});
    return r;
  }
  for (std::size_t k = 0; k < v.dim(); ++k)
    r.expect(v.weight(k) == w.weight(perm[k]), [&] { return Witness{"map is not graded", {{"basis", k}}}; });
  r.expect(permute(v.vacuum(), perm) == w.vacuum(), [] { return Witness{"vacuum is not preserved", {}}; });
  r.expect(v.omega().has_value() == w.omega().has_value() &&
               (!v.omega() || permute(*v.omega(), perm) == *w.omega()),
           [] { return Witness{"Virasoro element is not preserved", {}}; });
  r.expect(v.central_charge() == w.central_charge(), [] { return Witness{"central charge differs", {}}; });
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (std::size_t b = 0; b < v.dim(); ++b) {
      const auto [lo, hi] = v.table().mode_range(a, b);
      for (long n = lo; n <= hi; ++n) {
        if (v.table().classify(a, n, b) != ModeTable::Slot::in_window) continue;
        const SparseVec lhs = permute(v.table().at(a, n, b), perm);
        const SparseVec& rhs = w.table().at(perm[a], n, perm[b]);
        r.expect(lhs == rhs, [&] { return mode_witness("map does not intertwine the modes", a, n, b, lhs, rhs); });
      }
    }
  return r;
}

}  // namespace detail

/// Swap V1⊗V2 → V2⊗V1 and reassociation (V1⊗V2)⊗V3 → V1⊗(V2⊗V3) as VOA homomorphisms at cutoff N.
inline Report check_braiding_associator(const TruncatedVOA& v1, const TruncatedVOA& v2, const TruncatedVOA& v3,
                                        int cutoff) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.suite = "braiding-associator";
  rep.parameters = {{"cutoff", cutoff}};
  const TensorVOA t12 = tensor_voa(v1, v2, cutoff);
  const TensorVOA t21 = tensor_voa(v2, v1, cutoff);
  std::vector<std::size_t> swap(t12.basis.size()), back(t21.basis.size());
  for (std::size_t k = 0; k < t12.basis.size(); ++k) {
    const auto [i, j] = t12.basis.pair(k);
    swap[k] = t21.basis.at(j, i);
  }
  for (std::size_t k = 0; k < t21.basis.size(); ++k) {
    const auto [i, j] = t21.basis.pair(k);
    back[k] = t12.basis.at(j, i);
  }
  rep.checks.push_back(detail::check_basis_homomorphism("swap", t12.product, t21.product, swap));
  CheckResult square("swap_squared");
  for (std::size_t k = 0; k < swap.size(); ++k)
    square.expect(back[swap[k]] == k, [&] { return Witness{"swap twice is not the identity", {{"basis", k}}}; });
  rep.checks.push_back(square);

  const TensorVOA t12_3 = tensor_voa(t12.product, v3, cutoff);
  const TensorVOA t23 = tensor_voa(v2, v3, cutoff);
  const TensorVOA t1_23 = tensor_voa(v1, t23.product, cutoff);
  std::vector<std::size_t> assoc(t12_3.basis.size());
  for (std::size_t k = 0; k < t12_3.basis.size(); ++k) {
    const auto [ij, l] = t12_3.basis.pair(k);
    const auto [i, j] = t12.basis.pair(ij);
    assoc[k] = t1_23.basis.at(i, t23.basis.at(j, l));
  }
  rep.checks.push_back(detail::check_basis_homomorphism("associator", t12_3.product, t1_23.product, assoc));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

/// (a⊗1)∘(a1⊗b) = (a∘a1)⊗b and (1⊗b)∘(a1⊗b1) = a1⊗(b∘b1) on every basis triple in the window.
inline Report check_lemma_ten(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff) {
  const auto t0 = std::chrono::steady_clock::now();
  const TensorVOA t = tensor_voa(v1, v2, cutoff);
  Report rep;
  rep.suite = "ten";
  rep.parameters = {{"cutoff", cutoff}};
  CheckResult left("left_factor"), right("right_factor");
  const auto& l = t.left;
  const auto& r = t.right;
  for (std::size_t a = 0; a < l.dim(); ++a)
    for (std::size_t a1 = 0; a1 < l.dim(); ++a1)
      for (std::size_t b = 0; b < r.dim(); ++b) {
        if (l.weight(a) + l.weight(a1) + r.weight(b) + 1 > cutoff) {
          left.skip();
          continue;
        }
        const SparseVec x = *t.basis.tensor(l.basis_vector(a), r.vacuum());
        const SparseVec y = *t.basis.tensor(l.basis_vector(a1), r.basis_vector(b));
        const SparseVec lhs = *circ(t.product, x, y);
        const SparseVec rhs = *t.basis.tensor(*circ(l, l.basis_vector(a), l.basis_vector(a1)), r.basis_vector(b));
        left.expect(lhs == rhs, [&] {
          return Witness{"(a⊗1)∘(a1⊗b) differs from (a∘a1)⊗b",
                         {{"a", a}, {"a1", a1}, {"b", b}, {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(rhs)}}};
        });
      }
  for (std::size_t b = 0; b < r.dim(); ++b)
    for (std::size_t b1 = 0; b1 < r.dim(); ++b1)
      for (std::size_t a1 = 0; a1 < l.dim(); ++a1) {
        if (r.weight(b) + r.weight(b1) + l.weight(a1) + 1 > cutoff) {
          right.skip();
          continue;
        }
        const SparseVec x = *t.basis.tensor(l.vacuum(), r.basis_vector(b));
        const SparseVec y = *t.basis.tensor(l.basis_vector(a1), r.basis_vector(b1));
        const SparseVec lhs = *circ(t.product, x, y);
        const SparseVec rhs = *t.basis.tensor(l.basis_vector(a1), *circ(r, r.basis_vector(b), r.basis_vector(b1)));
        right.expect(lhs == rhs, [&] {
          return Witness{"(1⊗b)∘(a1⊗b1) differs from a1⊗(b∘b1)",
                         {{"b", b}, {"b1", b1}, {"a1", a1}, {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(rhs)}}};
        });
      }
  rep.checks = {left, right};
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

namespace detail {

/// Rank of S ∩ (weight <= k) for every k, read off highest-index pivots (indices are weight-major).
inline std::vector<std::size_t> stratum_ranks(const Subspace& s, const std::vector<int>& weights, int cutoff) {
  std::vector<std::size_t> ranks(static_cast<std::size_t>(cutoff) + 1, 0);
  for (auto p : s.pivots())
    for (int k = weights.at(p); k <= cutoff; ++k) ++ranks[static_cast<std::size_t>(k)];
  return ranks;
}

/// Equality of two subspaces of a graded window: filtered ranks per weight and mutual membership of generators.
inline std::vector<CheckResult> compare_subspaces(const std::string& prefix, const Subspace& lhs, const Subspace& rhs,
                                                  const std::vector<int>& weights, int cutoff) {
  CheckResult strata(prefix + "_strata"), l_in_r(prefix + "_lhs_in_rhs"), r_in_l(prefix + "_rhs_in_lhs");
  const auto rl = stratum_ranks(lhs, weights, cutoff);
  const auto rr = stratum_ranks(rhs, weights, cutoff);
  for (int k = 0; k <= cutoff; ++k) {
    const auto i = static_cast<std::size_t>(k);
    strata.expect(rl[i] == rr[i], [&] {
      return Witness{"filtered ranks differ", {{"weight", k}, {"lhs_rank", rl[i]}, {"rhs_rank", rr[i]}}};
    });
  }
  for (const auto& g : lhs.generators())
    l_in_r.expect(rhs.contains(g), [&] { return Witness{"generator of the left side missing on the right", {{"vector", vec_to_json(g)}}}; });
  for (const auto& g : rhs.generators())
    r_in_l.expect(lhs.contains(g), [&] { return Witness{"generator of the right side missing on the left", {{"vector", vec_to_json(g)}}}; });
  strata.notes.push_back("ranks by weight: " + json(rl).dump() + " vs " + json(rr).dump());
  return {strata, l_in_r, r_in_l};
}

/// Span of g⊗e_j and e_i⊗h over O-span generators g, h of the factors, where the factor circ
/// generator (top weight wa + wb + 1) tensored with the other basis vector fits the window.
template <typename CircLeft, typename CircRight>
Subspace split_o_span(const TensorBasis& basis, const std::vector<int>& src1, const std::vector<int>& tgt1,
                      const std::vector<int>& src2, const std::vector<int>& tgt2, int cutoff, CircLeft circ1,
                      CircRight circ2) {
  Subspace s(basis.size(), PivotOrder::highest_first);
  for (std::size_t a = 0; a < src1.size(); ++a)
    for (std::size_t m = 0; m < tgt1.size(); ++m)
      for (std::size_t j = 0; j < tgt2.size(); ++j)
        if (src1[a] + tgt1[m] + 1 + tgt2[j] <= cutoff)
          s.add_generator(*basis.tensor(circ1(a, m), SparseVec::unit(tgt2.size(), j)));
  for (std::size_t b = 0; b < src2.size(); ++b)
    for (std::size_t m = 0; m < tgt2.size(); ++m)
      for (std::size_t i = 0; i < tgt1.size(); ++i)
        if (src2[b] + tgt2[m] + 1 + tgt1[i] <= cutoff)
          s.add_generator(*basis.tensor(SparseVec::unit(tgt1.size(), i), circ2(b, m)));
  return s;
}

}  // namespace detail

/// O(V1⊗V2) = O(V1)⊗V2 + V1⊗O(V2) on the window, stratum by stratum and by mutual membership.
inline Report check_lemma_kvoc(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff) {
  const auto t0 = std::chrono::steady_clock::now();
  const TensorVOA t = tensor_voa(v1, v2, cutoff);
  const Subspace lhs = o_span(t.product);
  const auto& l = t.left;
  const auto& r = t.right;
  const Subspace rhs = detail::split_o_span(
      t.basis, l.weights(), l.weights(), r.weights(), r.weights(), cutoff,
      [&](std::size_t a, std::size_t b) { return *circ(l, l.basis_vector(a), l.basis_vector(b)); },
      [&](std::size_t a, std::size_t b) { return *circ(r, r.basis_vector(a), r.basis_vector(b)); });
  Report rep;
  rep.suite = "kvoc";
  rep.parameters = {{"cutoff", cutoff}, {"lhs_rank", lhs.rank()}, {"rhs_rank", rhs.rank()}};
  rep.checks = detail::compare_subspaces("o_span", lhs, rhs, t.product.weights(), cutoff);
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

/// F : A(V1⊗V2) → A(V1)⊗A(V2), [a⊗b] ↦ [a]⊗[b], on truncated presentations. The codomain basis is the
/// class pairs (i, j) with deg i + deg j <= N.
struct ZhuTensorMap {
  int cutoff = 0;
  ZhuPresentation domain;
  ZhuPresentation left;
  ZhuPresentation right;
  TensorBasis codomain;
  Matrix matrix;  ///< codomain.size() x domain.dim()
  Report report;

  [[nodiscard]] SparseVec apply(const SparseVec& cls) const {
    SparseVec out(codomain.size());
    for (const auto& [k, c] : cls)
      for (std::size_t i = 0; i < codomain.size(); ++i)
        if (!matrix(i, k).is_zero()) out.add(i, c * matrix(i, k));
    return out;
  }

  /// Product in the codomain, defined when the degree sums fit the cutoff.
  [[nodiscard]] std::optional<SparseVec> multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec out(codomain.size());
    for (const auto& [p, a] : x)
      for (const auto& [q, b] : y) {
        const auto [i, j] = codomain.pair(p);
        const auto [k, l] = codomain.pair(q);
        const auto& u = left.product(i, k);
        const auto& v = right.product(j, l);
        if (!u || !v) return std::nullopt;
        auto uv = codomain.tensor(*u, *v);
        if (!uv) return std::nullopt;
        out.axpy(a * b, *uv);
      }
    return out;
  }
};

inline ZhuTensorMap build_F_map(const TruncatedVOA& v1, const TruncatedVOA& v2, int cutoff) {
  const auto t0 = std::chrono::steady_clock::now();
  const TensorVOA t = tensor_voa(v1, v2, cutoff);
  ZhuTensorMap f;
  f.cutoff = cutoff;
  f.domain = zhu_algebra(t.product);
  f.left = zhu_algebra(t.left);
  f.right = zhu_algebra(t.right);
  f.codomain = TensorBasis(f.left.degrees(), f.right.degrees(), cutoff);
  f.report.suite = "izo";
  f.report.parameters = {{"cutoff", cutoff},
                         {"domain_dim", f.domain.dim()},
                         {"codomain_dim", f.codomain.size()},
                         {"left_dim", f.left.dim()},
                         {"right_dim", f.right.dim()}};

  // a⊗b ↦ [a]⊗[b] on the whole product window.
  auto lift_map = [&](const SparseVec& x) {
    SparseVec out(f.codomain.size());
    for (const auto& [k, c] : x) {
      const auto [i, j] = t.basis.pair(k);
      auto y = f.codomain.tensor(f.left.project(t.left.basis_vector(i)), f.right.project(t.right.basis_vector(j)));
      if (!y) throw OutOfTruncation("class of a factor basis vector has degree above its weight");
      out.axpy(c, *y);
    }
    return out;
  };

  f.matrix = Matrix(f.codomain.size(), f.domain.dim());
  for (std::size_t k = 0; k < f.domain.dim(); ++k)
    for (const auto& [i, c] : lift_map(f.domain.lift(f.domain.basis_class(k)))) f.matrix(i, k) = c;

  CheckResult well("well_defined"), unit("unital"), omega("omega"), mult("multiplicative"), bij("bijective");
  for (const auto& g : f.domain.o_span().generators()) {
    const SparseVec img = lift_map(g);
    well.expect(img.is_zero(), [&] {
      return Witness{"an O-span generator of the product does not map to zero", {{"generator", vec_to_json(g)},
                                                                                 {"image", vec_to_json(img)}}};
    });
  }
  const SparseVec one = *f.codomain.tensor(f.left.identity(), f.right.identity());
  unit.expect(f.apply(f.domain.identity()) == one, [&] {
    return Witness{"F([1⊗1]) is not [1]⊗[1]", {{"image", vec_to_json(f.apply(f.domain.identity()))}}};
  });
  if (f.domain.omega()) {
    SparseVec want(f.codomain.size());
    if (f.left.omega()) want += *f.codomain.tensor(*f.left.omega(), f.right.identity());
    if (f.right.omega()) want += *f.codomain.tensor(f.left.identity(), *f.right.omega());
    omega.expect(f.apply(*f.domain.omega()) == want, [&] {
      return Witness{"F([ω]) differs from [ω1]⊗[1] + [1]⊗[ω2]", {{"image", vec_to_json(f.apply(*f.domain.omega()))},
                                                                  {"expected", vec_to_json(want)}}};
    });
  } else {
    omega.notes.push_back("no Virasoro vector");
  }
  for (std::size_t i = 0; i < f.domain.dim(); ++i)
    for (std::size_t j = 0; j < f.domain.dim(); ++j) {
      if (!f.domain.defined(i, j)) {
        mult.skip();
        continue;
      }
      const SparseVec lhs = f.apply(*f.domain.product(i, j));
      auto rhs = f.multiply(f.apply(f.domain.basis_class(i)), f.apply(f.domain.basis_class(j)));
      if (!rhs) {
        mult.skip();
        continue;
      }
      mult.expect(lhs == *rhs, [&] {
        return Witness{"F is not multiplicative", {{"i", i}, {"j", j}, {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(*rhs)}}};
      });
    }
  const std::size_t rank = f.matrix.rank();
  bij.expect(rank == f.domain.dim() && rank == f.codomain.size(), [&] {
    return Witness{"F is not bijective",
                   {{"rank", rank}, {"domain_dim", f.domain.dim()}, {"codomain_dim", f.codomain.size()}}};
  });
  f.report.checks = {well, unit, omega, mult, bij};
  f.report.checks.front().notes.push_back("verified at N = " + std::to_string(cutoff));
  f.report.wall_seconds = detail::seconds_since(t0);
  return f;
}

}  // namespace zhuforge
