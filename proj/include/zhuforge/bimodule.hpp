#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/axioms.hpp"
#include "zhuforge/errors.hpp"
#include "zhuforge/matrix.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/sparse.hpp"
#include "zhuforge/tensor.hpp"
#include "zhuforge/voa.hpp"
#include "zhuforge/zhu.hpp"

namespace zhuforge {

/// a∘m = Res_z (1+z)^{wt a}/z^2 Y(a,z)m.
inline std::optional<SparseVec> circ_module(const TruncatedModule& m, const SparseVec& a, const SparseVec& x) {
  return detail::residue_product(m.table(), a, x, 0, 2);
}

/// a·m = Res_z (1+z)^{wt a}/z Y(a,z)m.
inline std::optional<SparseVec> left_action(const TruncatedModule& m, const SparseVec& a, const SparseVec& x) {
  return detail::residue_product(m.table(), a, x, 0, 1);
}

/// m·a = Res_z (1+z)^{wt a - 1}/z Y(a,z)m.
inline std::optional<SparseVec> right_action(const TruncatedModule& m, const SparseVec& x, const SparseVec& a) {
  return detail::residue_product(m.table(), a, x, -1, 1);
}

/// Span of a∘m over basis pairs with wt a + deg m + 1 <= N.
inline Subspace o_span_module(const TruncatedVOA& v, const TruncatedModule& m) {
  if (m.voa_dims() != v.dims()) throw DimensionMismatch("module is over a VOA with different graded dimensions");
  Subspace s(m.dim(), PivotOrder::highest_first);
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (std::size_t x = 0; x < m.dim(); ++x)
      if (v.weight(a) + m.degree(x) + 1 <= m.cutoff())
        s.add_generator(*circ_module(m, v.basis_vector(a), SparseVec::unit(m.dim(), x)));
  return s;
}

/// A(M) = M/O(M) with the partial left and right actions of the truncated A(V). The action of algebra
/// class k on module class j is stored when deg k + deg j <= N.
class ZhuBimodule {
 public:
  ZhuBimodule() = default;
  ZhuBimodule(ZhuPresentation algebra, Subspace span, std::vector<int> module_degrees,
              std::vector<std::optional<SparseVec>> left, std::vector<std::optional<SparseVec>> right)
      : algebra_(std::move(algebra)),
        quotient_(span.ambient_dim(), span),
        left_(std::move(left)),
        right_(std::move(right)) {
    for (auto r : quotient_.representatives()) degrees_.push_back(module_degrees[r]);
  }

  [[nodiscard]] const ZhuPresentation& algebra() const { return algebra_; }
  [[nodiscard]] std::size_t dim() const { return quotient_.dim(); }
  [[nodiscard]] const Quotient& quotient() const { return quotient_; }
  [[nodiscard]] const Subspace& o_span() const { return quotient_.kernel(); }
  [[nodiscard]] const std::vector<int>& degrees() const { return degrees_; }
  [[nodiscard]] SparseVec project(const SparseVec& x) const { return quotient_.project(x); }
  [[nodiscard]] SparseVec lift(const SparseVec& cls) const { return quotient_.lift(cls); }
  [[nodiscard]] SparseVec basis_class(std::size_t j) const { return SparseVec::unit(dim(), j); }

  [[nodiscard]] const std::optional<SparseVec>& left(std::size_t k, std::size_t j) const {
    return left_.at(k * dim() + j);
  }
  [[nodiscard]] const std::optional<SparseVec>& right(std::size_t j, std::size_t k) const {
    return right_.at(k * dim() + j);
  }

  [[nodiscard]] std::optional<SparseVec> act_left(const SparseVec& a, const SparseVec& x) const {
    return bilinear(a, x, left_);
  }
  [[nodiscard]] std::optional<SparseVec> act_right(const SparseVec& x, const SparseVec& a) const {
    return bilinear(a, x, right_);
  }

  /// Matrix of a class acting from one side, with unset entries reported as nullopt.
  [[nodiscard]] std::optional<Matrix> left_matrix(std::size_t k) const { return side_matrix(k, left_); }
  [[nodiscard]] std::optional<Matrix> right_matrix(std::size_t k) const { return side_matrix(k, right_); }

  /// Unit laws, left and right module laws, and commuting actions on every evaluable triple.
  [[nodiscard]] std::vector<CheckResult> check() const {
    CheckResult unit("bimodule_unit"), lassoc("left_module_law"), rassoc("right_module_law"), commute("actions_commute");
    const auto& z = algebra_;
    for (std::size_t j = 0; j < dim(); ++j) {
      const SparseVec m = basis_class(j);
      auto l = act_left(z.identity(), m);
      auto r = act_right(m, z.identity());
      if (!l || !r) {
        unit.skip();
        continue;
      }
      unit.expect(*l == m && *r == m, [&] { return Witness{"[1] does not act as the identity", {{"class", j}}}; });
    }
    for (std::size_t a = 0; a < z.dim(); ++a)
      for (std::size_t b = 0; b < z.dim(); ++b)
        for (std::size_t j = 0; j < dim(); ++j) {
          const SparseVec ea = z.basis_class(a), eb = z.basis_class(b), m = basis_class(j);
          if (z.degree(a) + z.degree(b) + degrees_[j] > z.cutoff()) {
            lassoc.skip();
            rassoc.skip();
            commute.skip();
            continue;
          }
          const auto ab = z.product(a, b);
          auto bm = act_left(eb, m);
          auto l1 = act_left(*ab, m);
          auto l2 = bm ? act_left(ea, *bm) : std::nullopt;
          if (l1 && l2)
            lassoc.expect(*l1 == *l2, [&] { return Witness{"(a*b)·m differs from a·(b·m)", {{"a", a}, {"b", b}, {"m", j}}}; });
          else
            lassoc.skip();
          auto ma = act_right(m, ea);
          auto r1 = act_right(m, *ab);
          auto r2 = ma ? act_right(*ma, eb) : std::nullopt;
          if (r1 && r2)
            rassoc.expect(*r1 == *r2, [&] { return Witness{"m·(a*b) differs from (m·a)·b", {{"a", a}, {"b", b}, {"m", j}}}; });
          else
            rassoc.skip();
          auto am = act_left(ea, m);
          auto c1 = am ? act_right(*am, eb) : std::nullopt;
          auto mb = act_right(m, eb);
          auto c2 = mb ? act_left(ea, *mb) : std::nullopt;
          if (c1 && c2)
            commute.expect(*c1 == *c2, [&] { return Witness{"(a·m)·b differs from a·(m·b)", {{"a", a}, {"b", b}, {"m", j}}}; });
          else
            commute.skip();
        }
    return {unit, lassoc, rassoc, commute};
  }

 private:
  [[nodiscard]] std::optional<SparseVec> bilinear(const SparseVec& a, const SparseVec& x,
                                                  const std::vector<std::optional<SparseVec>>& table) const {
    SparseVec out(dim());
    for (const auto& [k, c] : a)
      for (const auto& [j, d] : x) {
        const auto& v = table.at(k * dim() + j);
        if (!v) return std::nullopt;
        out.axpy(c * d, *v);
      }
    return out;
  }

  [[nodiscard]] std::optional<Matrix> side_matrix(std::size_t k, const std::vector<std::optional<SparseVec>>& t) const {
    Matrix out(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      const auto& v = t.at(k * dim() + j);
      if (!v) return std::nullopt;
      for (const auto& [i, c] : *v) out(i, j) = c;
    }
    return out;
  }

  ZhuPresentation algebra_;
  Quotient quotient_;
  std::vector<int> degrees_;
  std::vector<std::optional<SparseVec>> left_;
  std::vector<std::optional<SparseVec>> right_;
};

inline ZhuBimodule build_bimodule(const TruncatedVOA& v, const TruncatedModule& m) {
  ZhuPresentation z = zhu_algebra(v);
  Subspace span = o_span_module(v, m);
  const Quotient q(m.dim(), span);
  const auto& reps = q.representatives();
  const std::size_t d = reps.size();
  std::vector<std::optional<SparseVec>> left(z.dim() * d), right(z.dim() * d);
  for (std::size_t k = 0; k < z.dim(); ++k) {
    const std::size_t a = z.representatives()[k];
    for (std::size_t j = 0; j < d; ++j) {
      if (v.weight(a) + m.degree(reps[j]) > m.cutoff()) continue;
      const SparseVec x = SparseVec::unit(m.dim(), reps[j]);
      if (auto l = left_action(m, v.basis_vector(a), x)) left[k * d + j] = q.project(*l);
      if (auto r = right_action(m, x, v.basis_vector(a))) right[k * d + j] = q.project(*r);
    }
  }
  return ZhuBimodule(std::move(z), std::move(span), m.degrees(), std::move(left), std::move(right));
}

/// Bimodule laws plus well-definedness: O(M) generators vanish under both actions of basis vectors and
/// O(V) generators act as zero on module basis vectors, whenever the result stays in the window.
inline Report check_bimodule(const TruncatedVOA& v, const TruncatedModule& m, const ZhuBimodule& b) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.suite = "bimodule";
  rep.parameters = {{"cutoff", m.cutoff()}, {"dim", b.dim()}, {"o_span_rank", b.o_span().rank()},
                    {"algebra_dim", b.algebra().dim()}};
  rep.checks = b.check();
  CheckResult kill_m("o_module_killed"), kill_v("o_voa_acts_trivially");
  for (const auto& g : b.o_span().generators()) {
    if (g.is_zero()) continue;
    const int top = top_weight(g, m.degrees());
    for (std::size_t a = 0; a < v.dim(); ++a) {
      if (v.weight(a) + top > m.cutoff()) {
        kill_m.skip();
        continue;
      }
      const SparseVec l = b.project(*left_action(m, v.basis_vector(a), g));
      const SparseVec r = b.project(*right_action(m, g, v.basis_vector(a)));
      kill_m.expect(l.is_zero() && r.is_zero(), [&] {
        return Witness{"a basis vector maps O(M) outside O(M)", {{"a", a}, {"generator", vec_to_json(g)}}};
      });
    }
  }
  for (const auto& g : b.algebra().o_span().generators()) {
    if (g.is_zero()) continue;
    const int top = top_weight(g, v.weights());
    for (std::size_t x = 0; x < m.dim(); ++x) {
      if (top + m.degree(x) > m.cutoff()) {
        kill_v.skip();
        continue;
      }
      const SparseVec e = SparseVec::unit(m.dim(), x);
      const SparseVec l = b.project(*left_action(m, g, e));
      const SparseVec r = b.project(*right_action(m, e, g));
      kill_v.expect(l.is_zero() && r.is_zero(), [&] {
        return Witness{"an O(V) generator acts nontrivially on A(M)", {{"m", x}, {"generator", vec_to_json(g)}}};
      });
    }
  }
  rep.checks.push_back(kill_m);
  rep.checks.push_back(kill_v);
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

inline constexpr const char* kRightActionStatementNote =
    "right action checked as (m1⊗m2)·(a⊗b) = (m1·a)⊗(m2·b); the usual statement writes the second factor as "
    "b·m2, which disagrees with the derivation";

/// A(M1⊗M2) ≅ A(M1)⊗A(M2) at cutoff N: O-span decomposition, left and right action identities modulo
/// O(M1⊗M2), and the class map [m1⊗m2] ↦ [m1]⊗[m2] as a bijective intertwiner.
inline Report check_theorem_teh(const TruncatedVOA& v1, const TruncatedVOA& v2, const TruncatedModule& m1,
                                const TruncatedModule& m2, int cutoff) {
  const auto t0 = std::chrono::steady_clock::now();
  const TensorVOA t = tensor_voa(v1, v2, cutoff);
  const TruncatedModule n1 = truncate(m1, cutoff);
  const TruncatedModule n2 = truncate(m2, cutoff);
  const TruncatedModule tm = tensor_module(n1, n2, cutoff);
  const TensorBasis mb = tensor_module_basis(n1, n2, cutoff);
  const auto& l = t.left;
  const auto& r = t.right;
  Report rep;
  rep.suite = "teh";

  const Subspace lhs = o_span_module(t.product, tm);
  const Subspace rhs = detail::split_o_span(
      mb, l.weights(), n1.degrees(), r.weights(), n2.degrees(), cutoff,
      [&](std::size_t a, std::size_t x) {
        return *circ_module(n1, SparseVec::unit(n1.table().source_dim(), a), SparseVec::unit(n1.dim(), x));
      },
      [&](std::size_t b, std::size_t x) {
        return *circ_module(n2, SparseVec::unit(n2.table().source_dim(), b), SparseVec::unit(n2.dim(), x));
      });
  rep.checks = detail::compare_subspaces("o_span", lhs, rhs, tm.degrees(), cutoff);

  const Quotient q(tm.dim(), lhs);
  const Quotient q1(n1.dim(), o_span_module(l, n1));
  const Quotient q2(n2.dim(), o_span_module(r, n2));

  CheckResult left("left_action"), right("right_action");
  right.notes.push_back(kRightActionStatementNote);
  const std::size_t s1 = n1.table().source_dim(), s2 = n2.table().source_dim();
  for (std::size_t a = 0; a < l.dim(); ++a)
    for (std::size_t b = 0; b < r.dim(); ++b)
      for (std::size_t x = 0; x < n1.dim(); ++x)
        for (std::size_t y = 0; y < n2.dim(); ++y) {
          if (l.weight(a) + r.weight(b) + n1.degree(x) + n2.degree(y) > cutoff) {
            left.skip();
            right.skip();
            continue;
          }
          const SparseVec ab = *t.basis.tensor(l.basis_vector(a), r.basis_vector(b));
          const SparseVec xy = *mb.tensor(SparseVec::unit(n1.dim(), x), SparseVec::unit(n2.dim(), y));
          const SparseVec ea = SparseVec::unit(s1, a), eb = SparseVec::unit(s2, b);
          const SparseVec ex = SparseVec::unit(n1.dim(), x), ey = SparseVec::unit(n2.dim(), y);
          const SparseVec l_lhs = q.project(*left_action(tm, ab, xy));
          const SparseVec l_rhs = q.project(*mb.tensor(*left_action(n1, ea, ex), *left_action(n2, eb, ey)));
          left.expect(l_lhs == l_rhs, [&] {
            return Witness{"(a⊗b)·(m1⊗m2) differs from (a·m1)⊗(b·m2) modulo O",
                           {{"a", a}, {"b", b}, {"m1", x}, {"m2", y}, {"lhs", vec_to_json(l_lhs)}, {"rhs", vec_to_json(l_rhs)}}};
          });
          const SparseVec r_lhs = q.project(*right_action(tm, xy, ab));
          const SparseVec r_rhs = q.project(*mb.tensor(*right_action(n1, ex, ea), *right_action(n2, ey, eb)));
          right.expect(r_lhs == r_rhs, [&] {
            return Witness{"(m1⊗m2)·(a⊗b) differs from (m1·a)⊗(m2·b) modulo O",
                           {{"a", a}, {"b", b}, {"m1", x}, {"m2", y}, {"lhs", vec_to_json(r_lhs)}, {"rhs", vec_to_json(r_rhs)}}};
          });
        }
  rep.checks.push_back(left);
  rep.checks.push_back(right);

  // Class map G: [m1⊗m2] ↦ [m1]⊗[m2] into the class pairs of total degree <= N.
  std::vector<int> d1, d2;
  for (auto k : q1.representatives()) d1.push_back(n1.degree(k));
  for (auto k : q2.representatives()) d2.push_back(n2.degree(k));
  const TensorBasis pairs(d1, d2, cutoff);
  auto g_map = [&](const SparseVec& x) {
    SparseVec out(pairs.size());
    for (const auto& [k, c] : x) {
      const auto [i, j] = mb.pair(k);
      out.axpy(c, *pairs.tensor(q1.project(SparseVec::unit(n1.dim(), i)), q2.project(SparseVec::unit(n2.dim(), j))));
    }
    return out;
  };
  CheckResult iso_well("iso_well_defined"), iso_bij("iso_bijective"), dims("dimension");
  for (const auto& g : lhs.generators()) {
    const SparseVec img = g_map(g);
    iso_well.expect(img.is_zero(), [&] { return Witness{"an O(M1⊗M2) generator has nonzero image", {{"generator", vec_to_json(g)}}}; });
  }
  Matrix gm(pairs.size(), q.dim());
  for (std::size_t k = 0; k < q.dim(); ++k)
    for (const auto& [i, c] : g_map(q.lift(SparseVec::unit(q.dim(), k)))) gm(i, k) = c;
  const std::size_t rank = gm.rank();
  iso_bij.expect(rank == q.dim() && rank == pairs.size(), [&] {
    return Witness{"class map is not bijective", {{"rank", rank}, {"domain", q.dim()}, {"codomain", pairs.size()}}};
  });
  dims.expect(q.dim() == pairs.size(), [&] {
    return Witness{"dimension of A(M1⊗M2) differs from the windowed product",
                   {{"product_classes", q.dim()}, {"factor_pairs", pairs.size()}}};
  });
  dims.notes.push_back("A(M1) window " + std::to_string(q1.dim()) + ", A(M2) window " + std::to_string(q2.dim()) +
                       ", class pairs of total degree <= N " + std::to_string(pairs.size()));
  rep.checks.push_back(iso_well);
  rep.checks.push_back(iso_bij);
  rep.checks.push_back(dims);
  rep.parameters = {{"cutoff", cutoff},
                    {"dim_product", q.dim()},
                    {"dim_left", q1.dim()},
                    {"dim_right", q2.dim()},
                    {"note", kRightActionStatementNote}};
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace zhuforge
