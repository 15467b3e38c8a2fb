#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/errors.hpp"
#include "zhuforge/parallel.hpp"
#include "zhuforge/rational.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/sparse.hpp"
#include "zhuforge/voa.hpp"

namespace zhuforge {

namespace detail {

/// A VOA acting on a graded space: `voa` holds a(n)b inside V, `act` holds a(n)m on the target.
struct ActionData {
  const ModeTable& voa;
  const ModeTable& act;
  int cutoff;

  [[nodiscard]] std::size_t voa_dim() const { return voa.source_dim(); }
  [[nodiscard]] std::size_t dim() const { return act.target_dim(); }
  [[nodiscard]] int wt(std::size_t a) const { return voa.source_weights()[a]; }
  [[nodiscard]] int deg(std::size_t m) const { return act.target_weights()[m]; }

  /// a(n)m for basis elements, with the out-of-window case made explicit.
  [[nodiscard]] std::optional<SparseVec> mode(std::size_t a, long n, std::size_t m) const {
    switch (act.classify(a, n, m)) {
      case ModeTable::Slot::above: return std::nullopt;
      case ModeTable::Slot::below: return SparseVec(dim());
      case ModeTable::Slot::in_window: return act.at(a, n, m);
    }
    return std::nullopt;
  }
};

inline Witness mode_witness(const std::string& what, std::size_t a, long n, std::size_t b, const SparseVec& lhs,
                            const SparseVec& rhs) {
  return {what, {{"a", a}, {"n", n}, {"b", b}, {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(rhs)}}};
}

inline CheckResult merge_all(std::string name, const std::vector<CheckResult>& parts) {
  CheckResult out(std::move(name));
  for (const auto& p : parts) out.merge(p);
  return out;
}

/// vacuum(n)m = δ_{n,-1} m on every stored slot.
inline CheckResult check_vacuum_law(const ActionData& d, const SparseVec& vacuum, const std::string& name) {
  CheckResult r(name);
  for (std::size_t m = 0; m < d.dim(); ++m) {
    const SparseVec e = SparseVec::unit(d.dim(), m);
    for (long n = -1 - d.cutoff + d.deg(m); n <= d.deg(m) - 1; ++n) {
      auto got = d.act.apply(vacuum, n, e);
      if (!got) {
        r.skip();
        continue;
      }
      const SparseVec want = n == -1 ? e : SparseVec(d.dim());
      r.expect(*got == want, [&] { return mode_witness("vacuum mode acts wrongly", 0, n, m, *got, want); });
    }
  }
  return r;
}

/// Stored entries respect the grading, and L(0) = omega(1) measures it: on V, L(0)b = wt(b) b; on a module,
/// L(0) preserves degrees and [L(0), a(n)] = (wt a - n - 1) a(n).
inline CheckResult check_grading(const ActionData& d, const std::optional<SparseVec>& omega, bool adjoint) {
  CheckResult r("grading");
  for (std::size_t a = 0; a < d.voa_dim(); ++a)
    for (std::size_t m = 0; m < d.dim(); ++m) {
      auto [lo, hi] = d.act.mode_range(a, m);
      for (long n = lo; n <= hi; ++n) {
        const long t = d.act.image_weight(a, n, m);
        const SparseVec& v = d.act.at(a, n, m);
        bool ok = true;
        for (const auto& [k, c] : v) ok = ok && d.deg(k) == t;
        r.expect(ok, [&] {
          return Witness{"entry a(n)b has a component of the wrong weight",
                         {{"a", a}, {"n", n}, {"b", m}, {"expected_weight", t}, {"value", vec_to_json(v)}}};
        });
      }
    }
  if (!omega) {
    r.notes.push_back("no Virasoro vector: L(0) law not checked");
    return r;
  }
  std::vector<SparseVec> l0(d.dim());
  for (std::size_t m = 0; m < d.dim(); ++m) {
    const SparseVec e = SparseVec::unit(d.dim(), m);
    l0[m] = *d.act.apply(*omega, 1, e);
    if (adjoint) {
      const SparseVec want = Rational(d.deg(m)) * e;
      r.expect(l0[m] == want, [&] { return mode_witness("L(0) differs from the weight", 2, 1, m, l0[m], want); });
    } else {
      bool ok = true;
      for (const auto& [k, c] : l0[m]) ok = ok && d.deg(k) == d.deg(m);
      r.expect(ok, [&] { return mode_witness("L(0) does not preserve the degree", 2, 1, m, l0[m], e); });
    }
  }
  if (adjoint) return r;
  auto apply_l0 = [&](const SparseVec& x) {
    SparseVec out(d.dim());
    for (const auto& [k, c] : x) out.axpy(c, l0[k]);
    return out;
  };
  for (std::size_t a = 0; a < d.voa_dim(); ++a)
    for (std::size_t m = 0; m < d.dim(); ++m) {
      auto [lo, hi] = d.act.mode_range(a, m);
      for (long n = lo; n <= hi; ++n) {
        const SparseVec& am = d.act.at(a, n, m);
        const SparseVec lhs = apply_l0(am) - *d.act.apply(a, n, l0[m]);
        const SparseVec rhs = Rational(d.wt(a) - n - 1) * am;
        r.expect(lhs == rhs, [&] { return mode_witness("[L(0), a(n)] differs from (wt a - n - 1) a(n)", a, n, m, lhs, rhs); });
      }
    }
  return r;
}

/// (L(-1)a)(n) = -n a(n-1) with L(-1)a = omega(0)a, wherever both sides are stored.
inline CheckResult check_translation(const ActionData& d, const std::optional<SparseVec>& omega) {
  CheckResult r("translation");
  if (!omega) {
    r.notes.push_back("no Virasoro vector: L(-1) unavailable");
    return r;
  }
  const std::size_t vd = d.voa_dim();
  for (std::size_t a = 0; a < vd; ++a) {
    if (d.wt(a) + 1 > d.cutoff) {
      r.skip();
      continue;
    }
    const SparseVec la = *d.voa.apply(*omega, 0, SparseVec::unit(vd, a));
    for (std::size_t m = 0; m < d.dim(); ++m) {
      const SparseVec e = SparseVec::unit(d.dim(), m);
      const long hi = d.wt(a) + d.deg(m);
      for (long n = hi - d.cutoff; n <= hi; ++n) {
        auto lhs = d.act.apply(la, n, e);
        auto rhs = d.act.apply(a, n - 1, e);
        if (!lhs || !rhs) {
          r.skip();
          continue;
        }
        *rhs *= Rational(-n);
        r.expect(*lhs == *rhs, [&] { return mode_witness("(L(-1)a)(n) differs from -n a(n-1)", a, n, m, *lhs, *rhs); });
      }
    }
  }
  return r;
}

/// [L(m), L(n)] = (m-n) L(m+n) + δ_{m+n,0} (m^3-m)/12 c on every basis vector, m, n in [-N, N].
inline CheckResult check_virasoro(const ActionData& d, const std::optional<SparseVec>& omega, const Rational& c) {
  CheckResult r("virasoro");
  if (!omega) {
    r.notes.push_back("no Virasoro vector");
    return r;
  }
  const long N = d.cutoff;
  for (std::size_t b = 0; b < d.dim(); ++b) {
    const SparseVec e = SparseVec::unit(d.dim(), b);
    for (long m = -N; m <= N; ++m)
      for (long n = -N; n <= N; ++n) {
        const long t = d.deg(b) - m - n;
        if (t < 0 || t > N) continue;
        auto ln = d.act.apply(*omega, n + 1, e);
        auto lm = d.act.apply(*omega, m + 1, e);
        auto lmn = d.act.apply(*omega, m + n + 1, e);
        if (!ln || !lm || !lmn) {
          r.skip();
          continue;
        }
        auto lmln = d.act.apply(*omega, m + 1, *ln);
        auto lnlm = d.act.apply(*omega, n + 1, *lm);
        if (!lmln || !lnlm) {
          r.skip();
          continue;
        }
        const SparseVec lhs = *lmln - *lnlm;
        SparseVec rhs = Rational(m - n) * *lmn;
        if (m + n == 0) rhs.axpy(c * Rational(m * m * m - m, 12), e);
        r.expect(lhs == rhs, [&] {
          return Witness{"Virasoro bracket fails",
                         {{"m", m}, {"n", n}, {"b", b}, {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(rhs)}}};
        });
      }
  }
  return r;
}

/// [L(m), a(n)] = sum_i C(m+1, i) (L(i-1)a)(m+n+1-i) for m >= -1, with the i = 0 and i = 1 terms rewritten
/// through L(-1)a ↦ translation and L(0)a = wt a · a, so that every term stays inside the window.
inline CheckResult check_conformal_covariance(const ActionData& d, const std::optional<SparseVec>& omega) {
  CheckResult r("conformal_covariance");
  if (!omega) {
    r.notes.push_back("no Virasoro vector");
    return r;
  }
  const long N = d.cutoff;
  const std::size_t vd = d.voa_dim();
  for (std::size_t a = 0; a < vd; ++a) {
    const SparseVec ea = SparseVec::unit(vd, a);
    std::vector<SparseVec> lowered;  // L(i-1)a = omega(i)a for i >= 2
    for (long i = 2; i <= N + 1; ++i) lowered.push_back(*d.voa.apply(*omega, i, ea));
    for (std::size_t c = 0; c < d.dim(); ++c) {
      const SparseVec ec = SparseVec::unit(d.dim(), c);
      const long hi = d.wt(a) + d.deg(c) - 1;
      for (long n = hi - N; n <= hi; ++n)
        for (long m = -1; m <= N; ++m) {
          if (d.deg(c) + d.wt(a) - n - 1 - m < 0) continue;
          auto x = d.mode(a, n, c);
          auto lmc = d.act.apply(*omega, m + 1, ec);
          if (!x || !lmc) {
            r.skip();
            continue;
          }
          auto y = d.act.apply(*omega, m + 1, *x);
          auto z = d.act.apply(a, n, *lmc);
          auto amn = d.mode(a, m + n, c);
          if (!y || !z || !amn) {
            r.skip();
            continue;
          }
          const SparseVec lhs = *y - *z;
          SparseVec rhs = Rational((m + 1) * d.wt(a) - (m + n + 1)) * *amn;
          bool ok = true;
          for (long i = 2; i <= m + 1 && ok; ++i) {
            auto t = d.act.apply(lowered[static_cast<std::size_t>(i - 2)], m + n + 1 - i, ec);
            if (!t) ok = false;
            else rhs.axpy(binomial(m + 1, i), *t);
          }
          if (!ok) {
            r.skip();
            continue;
          }
          r.expect(lhs == rhs, [&] {
            return Witness{"[L(m), a(n)] differs from the commutator formula",
                           {{"m", m}, {"a", a}, {"n", n}, {"b", c}, {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(rhs)}}};
          });
        }
    }
  }
  return r;
}

/// Largest j with x(j)y stored and nonzero, plus one; if every stored mode vanishes, the lowest stored mode.
inline long vanishing_order(const ModeTable& t, std::size_t x, std::size_t y) {
  auto [lo, hi] = t.mode_range(x, y);
  for (long j = hi; j >= lo; --j)
    if (!t.at(x, j, y).is_zero()) return j + 1;
  return lo;
}

/// Weak associativity in component form, with r >= order of a on c:
///   sum_i C(r,i) (a(l+i)b)(r+n-i)c = sum_i (-1)^i C(l,i) a(l+r-i) b(n+i) c.
inline CheckResult check_weak_associativity(const ActionData& d, int bound) {
  const long N = d.cutoff;
  auto per_a = parallel_map<CheckResult>(d.voa_dim(), [&](std::size_t a) {
    CheckResult r("weak_associativity");
    const long wa = d.wt(a);
    for (std::size_t c = 0; c < d.dim(); ++c) {
      const long dc = d.deg(c);
      const long r0 = std::max(vanishing_order(d.act, a, c), 0L);
      if (r0 > bound) {
        r.skip();
        if (r.skipped_strata.size() < 8)
          r.skipped_strata.push_back("a=" + std::to_string(a) + ", c=" + std::to_string(c) + ": order " +
                                     std::to_string(r0) + " exceeds bound");
        continue;
      }
      const SparseVec ec = SparseVec::unit(d.dim(), c);
      for (std::size_t b = 0; b < d.voa_dim(); ++b) {
        const long wb = d.wt(b);
        for (long l = wa + wb - 1 - N; l <= wa + wb - 1; ++l)
          for (long t = 0; t <= N; ++t) {
            const long n = wa + wb + dc - l - 2 - t;
            bool skipped = false;
            SparseVec rhs(d.dim());
            for (long i = 0; i <= r0 && !skipped; ++i) {
              if (l + i > wa + wb - 1) break;
              const SparseVec& ab = d.voa.at(a, l + i, b);
              if (ab.is_zero()) continue;
              auto v = d.act.apply(ab, r0 + n - i, ec);
              if (!v) skipped = true;
              else rhs.axpy(binomial(r0, i), *v);
            }
            SparseVec lhs(d.dim());
            for (long i = 0; !skipped; ++i) {
              if (l >= 0 && i > l) break;
              if (n + i > wb + dc - 1) break;
              auto bc = d.mode(b, n + i, c);
              if (!bc) {
                skipped = true;
                break;
              }
              if (bc->is_zero()) continue;
              auto v = d.act.apply(a, l + r0 - i, *bc);
              if (!v) skipped = true;
              else lhs.axpy(power_sign(i) * binomial(l, i), *v);
            }
            if (skipped) {
              r.skip();
              continue;
            }
            r.expect(lhs == rhs, [&] {
              return Witness{"weak associativity fails",
                             {{"a", a}, {"b", b}, {"c", c}, {"l", l}, {"n", n}, {"r", r0},
                              {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(rhs)}}};
            });
          }
      }
    }
    return r;
  });
  return merge_all("weak_associativity", per_a);
}

/// Weak commutativity in component form, with k >= order of a on b:
///   sum_i (-1)^i C(k,i) [a(m+k-i) b(n+i) c - b(n+i) a(m+k-i) c] = 0.
inline CheckResult check_weak_commutativity(const ActionData& d, int bound) {
  const long N = d.cutoff;
  auto per_a = parallel_map<CheckResult>(d.voa_dim(), [&](std::size_t a) {
    CheckResult r("weak_commutativity");
    const long wa = d.wt(a);
    for (std::size_t b = 0; b < d.voa_dim(); ++b) {
      const long wb = d.wt(b);
      const long k = std::max(vanishing_order(d.voa, a, b), 0L);
      if (k > bound) {
        r.skip();
        if (r.skipped_strata.size() < 8)
          r.skipped_strata.push_back("a=" + std::to_string(a) + ", b=" + std::to_string(b) + ": order " +
                                     std::to_string(k) + " exceeds bound");
        continue;
      }
      for (std::size_t c = 0; c < d.dim(); ++c) {
        const long dc = d.deg(c);
        for (long n = wb + dc - 1 - N; n <= wb + dc - 1; ++n)
          for (long t = 0; t <= N; ++t) {
            const long m = wa + wb + dc - n - k - 2 - t;
            bool skipped = false;
            SparseVec sum(d.dim());
            for (long i = 0; i <= k && !skipped; ++i) {
              const Rational coef = power_sign(i) * binomial(k, i);
              auto bc = d.mode(b, n + i, c);
              auto ac = d.mode(a, m + k - i, c);
              if (!bc || !ac) {
                skipped = true;
                break;
              }
              auto abc = d.act.apply(a, m + k - i, *bc);
              auto bac = d.act.apply(b, n + i, *ac);
              if (!abc || !bac) {
                skipped = true;
                break;
              }
              sum.axpy(coef, *abc);
              sum.axpy(-coef, *bac);
            }
            if (skipped) {
              r.skip();
              continue;
            }
            r.expect(sum.is_zero(), [&] {
              return Witness{"weak commutativity fails",
                             {{"a", a}, {"b", b}, {"c", c}, {"m", m}, {"n", n}, {"k", k}, {"sum", vec_to_json(sum)}}};
            });
          }
      }
    }
    return r;
  });
  return merge_all("weak_commutativity", per_a);
}

/// a(n)1 = 0 for n >= 0 and a(-1)1 = a.
inline CheckResult check_creation(const TruncatedVOA& v) {
  CheckResult r("creation");
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (long n = -1; n <= v.weight(a) - 1; ++n) {
      auto got = v.table().apply(a, n, v.vacuum());
      if (!got) {
        r.skip();
        continue;
      }
      const SparseVec want = n == -1 ? v.basis_vector(a) : SparseVec(v.dim());
      r.expect(*got == want, [&] { return mode_witness("creation property fails", a, n, 0, *got, want); });
    }
  return r;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Every VOA axiom at cutoff N. Jacobi is checked as weak associativity plus weak commutativity;
/// pairs whose vanishing order exceeds the bound are skipped (never passed).
inline Report check_axioms(const TruncatedVOA& v, int assoc_bound = 10, int comm_bound = 10) {
  if (assoc_bound < 1 || comm_bound < 1) throw PreconditionFailed("bounds must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  detail::ActionData d{v.table(), v.table(), v.cutoff()};
  Report rep;
  rep.suite = "axioms";
  rep.parameters = {{"cutoff", v.cutoff()}, {"assoc_bound", assoc_bound}, {"comm_bound", comm_bound},
                    {"dims", v.dims()}, {"central_charge", v.central_charge().str()}};
  rep.checks.push_back(detail::check_vacuum_law(d, v.vacuum(), "vacuum"));
  rep.checks.push_back(detail::check_creation(v));
  rep.checks.push_back(detail::check_grading(d, v.omega(), true));
  rep.checks.push_back(detail::check_translation(d, v.omega()));
  rep.checks.push_back(detail::check_virasoro(d, v.omega(), v.central_charge()));
  rep.checks.push_back(detail::check_conformal_covariance(d, v.omega()));
  rep.checks.push_back(detail::check_weak_associativity(d, assoc_bound));
  rep.checks.push_back(detail::check_weak_commutativity(d, comm_bound));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

/// Module axioms for M over V: grading, identity, translation, Virasoro, weak associativity/commutativity.
inline Report check_module(const TruncatedVOA& v, const TruncatedModule& m, int assoc_bound = 10,
                           int comm_bound = 10) {
  if (assoc_bound < 1 || comm_bound < 1) throw PreconditionFailed("bounds must be >= 1");
  if (m.cutoff() != v.cutoff() || m.voa_dims() != v.dims())
    throw DimensionMismatch("module and VOA have different cutoffs or graded dimensions");
  const auto t0 = std::chrono::steady_clock::now();
  detail::ActionData d{v.table(), m.table(), v.cutoff()};
  Report rep;
  rep.suite = "module";
  rep.parameters = {{"cutoff", v.cutoff()}, {"assoc_bound", assoc_bound}, {"comm_bound", comm_bound},
                    {"dims", m.dims()}, {"top_level_dim", m.top_level_dim()}};
  rep.checks.push_back(detail::check_vacuum_law(d, v.vacuum(), "identity"));
  rep.checks.push_back(detail::check_grading(d, v.omega(), false));
  rep.checks.push_back(detail::check_translation(d, v.omega()));
  rep.checks.push_back(detail::check_virasoro(d, v.omega(), v.central_charge()));
  rep.checks.push_back(detail::check_conformal_covariance(d, v.omega()));
  rep.checks.push_back(detail::check_weak_associativity(d, assoc_bound));
  rep.checks.push_back(detail::check_weak_commutativity(d, comm_bound));
  rep.wall_seconds = detail::seconds_since(t0);
  return rep;
}

/// Block-diagonal sum V1 ⊕ V2 with vacuum 1₁ + 1₂ and omega ω₁ + ω₂.
/// The central charge is c₁ when c₁ = c₂; unequal charges admit no single c for the summed omega.
inline TruncatedVOA direct_sum(const TruncatedVOA& v1, const TruncatedVOA& v2) {
  if (v1.cutoff() != v2.cutoff()) throw PreconditionFailed("direct sum needs a shared cutoff");
  if (v1.central_charge() != v2.central_charge())
    throw PreconditionFailed("direct sum needs equal central charges (got " + v1.central_charge().str() + " and " +
                             v2.central_charge().str() + ")");
  const int N = v1.cutoff();
  std::vector<int> dims(static_cast<std::size_t>(N) + 1);
  std::vector<std::size_t> map1(v1.dim()), map2(v2.dim());
  std::vector<std::string> labels;
  std::size_t next = 0;
  for (int w = 0; w <= N; ++w) {
    dims[w] = v1.dims()[w] + v2.dims()[w];
    for (std::size_t i = v1.first_of_weight(w); i < v1.first_of_weight(w + 1); ++i) {
      map1[i] = next++;
      labels.push_back(v1.label(i) + "⊕0");
    }
    for (std::size_t i = v2.first_of_weight(w); i < v2.first_of_weight(w + 1); ++i) {
      map2[i] = next++;
      labels.push_back("0⊕" + v2.label(i));
    }
  }
  const std::size_t d = next;
  auto embed = [d](const SparseVec& x, const std::vector<std::size_t>& map) {
    SparseVec y(d);
    for (const auto& [k, c] : x) y.add(map[k], c);
    return y;
  };
  const auto weights = weights_from_dims(dims);
  ModeTable table(N, weights, weights);
  for (int side = 0; side < 2; ++side) {
    const TruncatedVOA* part = side == 0 ? &v1 : &v2;
    const auto& map = side == 0 ? map1 : map2;
    for (std::size_t a = 0; a < part->dim(); ++a)
      for (std::size_t b = 0; b < part->dim(); ++b) {
        auto [lo, hi] = part->table().mode_range(a, b);
        for (long n = lo; n <= hi; ++n) table.set_unchecked(map[a], n, map[b], embed(part->table().at(a, n, b), map));
      }
  }
  std::optional<SparseVec> omega;
  if (v1.omega() && v2.omega()) omega = embed(*v1.omega(), map1) + embed(*v2.omega(), map2);
  return TruncatedVOA(dims, embed(v1.vacuum(), map1) + embed(v2.vacuum(), map2), omega, v1.central_charge(),
                      std::move(table), std::move(labels));
}

/// Whether S is closed under every stored mode a(n). S must be spanned by homogeneous vectors.
/// Returns nullopt only when S is nonzero and no action could be evaluated.
inline std::optional<bool> is_ideal(const TruncatedVOA& v, const Subspace& s) {
  if (s.ambient_dim() != v.dim()) throw DimensionMismatch("subspace lives in a different ambient space");
  std::vector<SparseVec> homogeneous;
  for (const auto& g : s.basis())
    for (auto& [w, part] : homogeneous_parts(g, v.weights())) {
      if (!s.contains(part)) throw PreconditionFailed("subspace is not graded");
      homogeneous.push_back(part);
    }
  std::size_t evaluated = 0;
  for (const auto& x : homogeneous) {
    const int wx = top_weight(x, v.weights());
    for (std::size_t a = 0; a < v.dim(); ++a)
      for (long n = v.weight(a) + wx - 1 - v.cutoff(); n <= v.weight(a) + wx - 1; ++n) {
        auto y = v.table().apply(a, n, x);
        if (!y) continue;
        ++evaluated;
        if (!s.contains(*y)) return false;
      }
  }
  if (!homogeneous.empty() && evaluated == 0) return std::nullopt;
  return true;
}

}  // namespace zhuforge
