#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/assoc.hpp"
#include "zhuforge/errors.hpp"
#include "zhuforge/matrix.hpp"
#include "zhuforge/rational.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/sparse.hpp"
#include "zhuforge/voa.hpp"

namespace zhuforge {

namespace detail {

/// sum over homogeneous parts p of a (weight w) of sum_{i>=0} C(w + shift, i) p(i - offset) x,
/// i.e. Res_z (1+z)^{wt a + shift} z^{-offset} Y(a,z) x. The exponent may be negative (then the
/// series is cut where the modes vanish by grading).
inline std::optional<SparseVec> residue_product(const ModeTable& t, const SparseVec& a, const SparseVec& x,
                                                long shift, long offset) {
  SparseVec out(t.target_dim());
  if (x.is_zero()) return out;
  const long top = top_weight(x, t.target_weights());
  for (const auto& [w, part] : homogeneous_parts(a, t.source_weights())) {
    const long e = w + shift;
    for (long i = 0; i - offset <= w + top - 1; ++i) {
      if (e >= 0 && i > e) break;
      auto v = t.apply(part, i - offset, x);
      if (!v) return std::nullopt;
      out.axpy(binomial(e, i), *v);
    }
  }
  return out;
}

}  // namespace detail

/// a * b = Res_z (1+z)^{wt a}/z Y(a,z) b.
inline std::optional<SparseVec> star(const TruncatedVOA& v, const SparseVec& a, const SparseVec& b) {
  return detail::residue_product(v.table(), a, b, 0, 1);
}

/// a ∘_m b = Res_z (1+z)^{wt a}/z^m Y(a,z) b, m >= 2.
inline std::optional<SparseVec> circ_m(const TruncatedVOA& v, const SparseVec& a, const SparseVec& b, long m) {
  if (m < 2) throw PreconditionFailed("circ_m needs m >= 2");
  return detail::residue_product(v.table(), a, b, 0, m);
}

inline std::optional<SparseVec> circ(const TruncatedVOA& v, const SparseVec& a, const SparseVec& b) {
  return circ_m(v, a, b, 2);
}

/// Span of a ∘ b over basis pairs with wt a + wt b + 1 <= N (every component inside the window).
/// Pivots are taken at the highest index so quotient representatives have low weight.
inline Subspace o_span(const TruncatedVOA& v) {
  Subspace s(v.dim(), PivotOrder::highest_first);
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (std::size_t b = 0; b < v.dim(); ++b)
      if (v.weight(a) + v.weight(b) + 1 <= v.cutoff()) s.add_generator(*circ(v, v.basis_vector(a), v.basis_vector(b)));
  return s;
}

/// Truncated presentation of A(V) = V/O(V). Each class carries the weight of its representative;
/// the product of classes i, j is defined when their weights sum to at most N.
class ZhuPresentation {
 public:
  ZhuPresentation() = default;
  ZhuPresentation(int cutoff, std::vector<int> voa_weights, Subspace span, std::vector<std::optional<SparseVec>> mult,
                  std::optional<SparseVec> omega_vec, SparseVec vacuum)
      : cutoff_(cutoff),
        voa_weights_(std::move(voa_weights)),
        quotient_(span.ambient_dim(), span),
        mult_(std::move(mult)) {
    for (auto r : quotient_.representatives()) degrees_.push_back(voa_weights_[r]);
    identity_ = quotient_.project(vacuum);
    if (omega_vec) omega_ = quotient_.project(*omega_vec);
  }

  [[nodiscard]] int cutoff() const { return cutoff_; }
  [[nodiscard]] std::size_t dim() const { return quotient_.dim(); }
  [[nodiscard]] const Subspace& o_span() const { return quotient_.kernel(); }
  [[nodiscard]] std::size_t o_span_rank() const { return quotient_.kernel().rank(); }
  [[nodiscard]] const Quotient& quotient() const { return quotient_; }
  [[nodiscard]] const std::vector<int>& degrees() const { return degrees_; }
  [[nodiscard]] int degree(std::size_t k) const { return degrees_.at(k); }
  [[nodiscard]] const std::vector<std::size_t>& representatives() const { return quotient_.representatives(); }
  [[nodiscard]] const SparseVec& identity() const { return identity_; }
  [[nodiscard]] const std::optional<SparseVec>& omega() const { return omega_; }

  [[nodiscard]] SparseVec project(const SparseVec& v) const { return quotient_.project(v); }
  [[nodiscard]] SparseVec lift(const SparseVec& cls) const { return quotient_.lift(cls); }
  [[nodiscard]] SparseVec basis_class(std::size_t k) const { return SparseVec::unit(dim(), k); }

  [[nodiscard]] bool defined(std::size_t i, std::size_t j) const { return mult_.at(i * dim() + j).has_value(); }
  [[nodiscard]] const std::optional<SparseVec>& product(std::size_t i, std::size_t j) const {
    return mult_.at(i * dim() + j);
  }

  /// Highest class weight carrying a nonzero coordinate (-1 for zero).
  [[nodiscard]] int degree_of(const SparseVec& x) const {
    int d = -1;
    for (const auto& [k, c] : x) d = std::max(d, degrees_[k]);
    return d;
  }

  [[nodiscard]] std::optional<SparseVec> multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec out(dim());
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) {
        const auto& p = product(i, j);
        if (!p) return std::nullopt;
        out.axpy(a * b, *p);
      }
    return out;
  }

  [[nodiscard]] bool complete() const {
    for (const auto& p : mult_)
      if (!p) return false;
    return true;
  }

  /// The finite algebra when every product is defined (e.g. when V is spanned by its vacuum).
  [[nodiscard]] std::optional<AssocAlgebra> algebra() const {
    if (!complete()) return std::nullopt;
    std::vector<SparseVec> mult;
    for (const auto& p : mult_) mult.push_back(*p);
    return AssocAlgebra(dim(), std::move(mult), identity_, "A(V)");
  }

  /// Identity, centrality of [omega], commutativity report and associativity on every defined triple.
  [[nodiscard]] Report check() const {
    Report rep;
    rep.suite = "zhu-algebra";
    CheckResult unit("identity"), assoc("associativity"), center("omega_central");
    for (std::size_t i = 0; i < dim(); ++i) {
      const SparseVec e = basis_class(i);
      auto l = multiply(identity_, e);
      auto r = multiply(e, identity_);
      if (!l || !r) {
        unit.skip();
        continue;
      }
      unit.expect(*l == e && *r == e, [&] { return Witness{"[1] is not a two-sided identity", {{"class", i}}}; });
    }
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          if (degrees_[i] + degrees_[j] + degrees_[k] > cutoff_) {
            assoc.skip();
            continue;
          }
          auto ij = product(i, j);
          auto jk = product(j, k);
          auto lhs = multiply(*ij, basis_class(k));
          auto rhs = multiply(basis_class(i), *jk);
          if (!lhs || !rhs) {
            assoc.skip();
            continue;
          }
          assoc.expect(*lhs == *rhs, [&] {
            return Witness{"Zhu product is not associative",
                           {{"i", i}, {"j", j}, {"k", k}, {"lhs", vec_to_json(*lhs)}, {"rhs", vec_to_json(*rhs)}}};
          });
        }
    if (omega_) {
      for (std::size_t i = 0; i < dim(); ++i) {
        auto l = multiply(*omega_, basis_class(i));
        auto r = multiply(basis_class(i), *omega_);
        if (!l || !r) {
          center.skip();
          continue;
        }
        center.expect(*l == *r, [&] { return Witness{"[omega] does not commute with a class", {{"class", i}}}; });
      }
    } else {
      center.notes.push_back("no Virasoro vector");
    }
    bool commutative = true;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (defined(i, j) && *product(i, j) != *product(j, i)) commutative = false;
    rep.parameters = {{"cutoff", cutoff_}, {"dim", dim()}, {"commutative_on_window", commutative}};
    rep.checks = {unit, assoc, center};
    return rep;
  }

 private:
  int cutoff_ = 0;
  std::vector<int> voa_weights_;
  Quotient quotient_;
  std::vector<std::optional<SparseVec>> mult_;
  std::vector<int> degrees_;
  SparseVec identity_;
  std::optional<SparseVec> omega_;
};

/// Truncated Zhu algebra: quotient by o_span, products of representatives by star.
inline ZhuPresentation zhu_algebra(const TruncatedVOA& v) {
  Subspace span = o_span(v);
  const Quotient q(v.dim(), span);
  const auto& reps = q.representatives();
  const std::size_t d = reps.size();
  std::vector<std::optional<SparseVec>> mult(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (v.weight(reps[i]) + v.weight(reps[j]) > v.cutoff()) continue;
      auto p = star(v, v.basis_vector(reps[i]), v.basis_vector(reps[j]));
      if (p) mult[i * d + j] = q.project(*p);
    }
  return ZhuPresentation(v.cutoff(), v.weights(), std::move(span), std::move(mult), v.omega(), v.vacuum());
}

/// a ∘_m b ∈ O(V) for every basis pair and 2 <= m <= max_m with wt a + wt b + m - 1 <= N.
inline Report check_circ_m_in_O(const TruncatedVOA& v, long max_m = 4) {
  const auto t0 = std::chrono::steady_clock::now();
  const Subspace span = o_span(v);
  Report rep;
  rep.suite = "prop41";
  rep.parameters = {{"cutoff", v.cutoff()}, {"m_range", {2, max_m}}, {"o_span_rank", span.rank()}};
  for (long m = 2; m <= max_m; ++m) {
    CheckResult r("circ_" + std::to_string(m) + "_in_O");
    for (std::size_t a = 0; a < v.dim(); ++a)
      for (std::size_t b = 0; b < v.dim(); ++b) {
        if (v.weight(a) + v.weight(b) + m - 1 > v.cutoff()) {
          r.skip();
          continue;
        }
        const SparseVec x = *circ_m(v, v.basis_vector(a), v.basis_vector(b), m);
        r.expect(span.contains(x), [&] {
          return Witness{"a ∘_m b is not in the O-span",
                         {{"a", a}, {"b", b}, {"m", m}, {"a_label", v.label(a)}, {"b_label", v.label(b)},
                          {"value", vec_to_json(x)}}};
        });
      }
    if (r.skipped > 0)
      r.skipped_strata.push_back(std::to_string(r.skipped) + " pairs with wt a + wt b + " + std::to_string(m - 1) +
                                 " above the cutoff");
    rep.checks.push_back(std::move(r));
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Matrix of o(a) = a(wt a - 1) on the top level M(0), extended over homogeneous parts.
inline Matrix top_level_action(const TruncatedModule& m, const SparseVec& a) {
  const std::size_t d0 = m.top_level_dim();
  Matrix out(d0, d0);
  const auto& t = m.table();
  for (const auto& [w, part] : homogeneous_parts(a, t.source_weights()))
    for (std::size_t j = 0; j < d0; ++j) {
      const SparseVec col = *t.apply(part, w - 1, SparseVec::unit(m.dim(), j));
      for (const auto& [i, c] : col) out(i, j) += c;
    }
  return out;
}

/// Top level as a module over the algebra spanned by the o(a).
struct TopLevelModule {
  AlgModule module;
  std::vector<SparseVec> class_images;  ///< coordinates of o(representative) in the image algebra
};

struct ZhuTopLevelResult {
  Report report;
  std::optional<TopLevelModule> top;
};

/// o(a)o(b) = o(a*b) on M(0) for basis pairs with wt a + wt b <= N, and o(x) = 0 for every O-span generator.
inline ZhuTopLevelResult check_zhu_top_level(const TruncatedVOA& v, const TruncatedModule& m) {
  const auto t0 = std::chrono::steady_clock::now();
  if (m.voa_dims() != v.dims()) throw DimensionMismatch("module is over a VOA with different graded dimensions");
  ZhuTopLevelResult out;
  out.report.suite = "zhu-top";
  out.report.parameters = {{"cutoff", v.cutoff()}, {"top_level_dim", m.top_level_dim()}};
  std::vector<Matrix> o(v.dim());
  for (std::size_t a = 0; a < v.dim(); ++a) o[a] = top_level_action(m, v.basis_vector(a));
  auto o_of = [&](const SparseVec& x) {
    Matrix r(m.top_level_dim(), m.top_level_dim());
    for (const auto& [k, c] : x) r += c * o[k];
    return r;
  };
  CheckResult unit("o_vacuum"), prod("o_product"), kernel("o_kernel");
  unit.expect(o_of(v.vacuum()) == Matrix::identity(m.top_level_dim()),
              [] { return Witness{"o(1) is not the identity on the top level", {}}; });
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (std::size_t b = 0; b < v.dim(); ++b) {
      if (v.weight(a) + v.weight(b) > v.cutoff()) {
        prod.skip();
        continue;
      }
      const Matrix lhs = o[a] * o[b];
      const Matrix rhs = o_of(*star(v, v.basis_vector(a), v.basis_vector(b)));
      prod.expect(lhs == rhs, [&] {
        return Witness{"o(a)o(b) differs from o(a*b)",
                       {{"a", a}, {"b", b}, {"lhs", lhs.str()}, {"rhs", rhs.str()}}};
      });
    }
  const Subspace span = o_span(v);
  for (std::size_t g = 0; g < span.generators().size(); ++g) {
    const Matrix x = o_of(span.generators()[g]);
    kernel.expect(x.is_zero(), [&] {
      return Witness{"o(x) is nonzero for an O-span generator", {{"generator", vec_to_json(span.generators()[g])},
                                                                 {"o(x)", x.str()}}};
    });
  }
  out.report.checks = {unit, prod, kernel};
  if (out.report.overall() == Status::pass) {
    // Close the span of the o(a) under products to get the image algebra.
    std::vector<Matrix> span_mats(o.begin(), o.end());
    span_mats.push_back(Matrix::identity(m.top_level_dim()));
    for (bool grew = true; grew;) {
      Subspace s(m.top_level_dim() * m.top_level_dim());
      for (const auto& x : span_mats) s.add_generator(x.flatten());
      const std::size_t before = s.rank();
      std::vector<Matrix> basis;
      for (const auto& b : s.basis()) basis.push_back(Matrix::unflatten(b, m.top_level_dim(), m.top_level_dim()));
      for (const auto& x : basis)
        for (const auto& y : basis) s.add_generator((x * y).flatten());
      grew = s.rank() > before;
      span_mats.clear();
      for (const auto& b : s.basis()) span_mats.push_back(Matrix::unflatten(b, m.top_level_dim(), m.top_level_dim()));
    }
    std::vector<Matrix> basis;
    AlgebraPtr image = share(AssocAlgebra::from_matrices(span_mats, "image of A(V)", &basis));
    std::vector<SparseVec> flat;
    for (const auto& b : basis) flat.push_back(b.flatten());
    const Subspace coords = Subspace::echelonize(flat, m.top_level_dim() * m.top_level_dim());
    TopLevelModule top{AlgModule(image, m.top_level_dim(), basis), {}};
    const ZhuPresentation z = zhu_algebra(v);
    for (auto r : z.representatives()) top.class_images.push_back(*coords.membership(o[r].flatten()));
    out.report.checks.push_back(top.module.check());
    out.top = std::move(top);
  }
  out.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Compares the presentations at cutoffs n and n + 1 on their common window: class counts per weight
/// and every product defined at n, transported into the n + 1 presentation.
inline CheckResult zhu_convergence(const TruncatedVOA& v, int n) {
  if (v.cutoff() < n + 1) throw PreconditionFailed("convergence needs data up to cutoff n + 1");
  CheckResult r("convergence");
  const ZhuPresentation p = zhu_algebra(truncate(v, n));
  const ZhuPresentation q = zhu_algebra(truncate(v, n + 1));
  auto widen = [&](const SparseVec& x) {
    SparseVec y(v.dim_up_to(n + 1));
    for (const auto& [k, c] : x) y.add(k, c);
    return y;
  };
  for (int w = 0; w <= n; ++w) {
    const auto count = [w](const ZhuPresentation& z) {
      return std::count(z.degrees().begin(), z.degrees().end(), w);
    };
    const auto cp = count(p), cq = count(q);
    r.expect(cp == cq, [&] {
      return Witness{"class count changes between cutoffs", {{"weight", w}, {"at_n", cp}, {"at_n_plus_1", cq}}};
    });
  }
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (!p.defined(i, j)) continue;
      const SparseVec xi = q.project(widen(p.lift(p.basis_class(i))));
      const SparseVec xj = q.project(widen(p.lift(p.basis_class(j))));
      auto want = q.multiply(xi, xj);
      if (!want) {
        r.skip();
        continue;
      }
      const SparseVec got = q.project(widen(p.lift(*p.product(i, j))));
      r.expect(got == *want, [&] { return Witness{"product changes between cutoffs", {{"i", i}, {"j", j}}}; });
    }
  return r;
}

}  // namespace zhuforge
