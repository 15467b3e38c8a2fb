#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "zhuforge/errors.hpp"
#include "zhuforge/rational.hpp"
#include "zhuforge/sparse.hpp"
#include "zhuforge/voa.hpp"

namespace zhuforge {

namespace detail {

/// Non-increasing list of positive parts; encodes x(-k1)...x(-kr)|v>.
using Word = std::vector<int>;

/// Partitions of w into parts >= min_part, sorted lexicographically (as non-increasing tuples).
inline std::vector<Word> partitions(int w, int min_part) {
  std::vector<Word> out;
  Word cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= min_part; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(w, w);
  std::sort(out.begin(), out.end());
  return out;
}

/// PBW-type basis of a free-field space, weight-major then lexicographic.
class PbwBasis {
 public:
  PbwBasis(int cutoff, int min_part) : cutoff_(cutoff) {
    for (int w = 0; w <= cutoff; ++w) {
      auto ws = partitions(w, min_part);
      dims_.push_back(static_cast<int>(ws.size()));
      for (auto& word : ws) {
        index_.emplace(word, words_.size());
        weights_.push_back(w);
        words_.push_back(std::move(word));
      }
    }
  }

  [[nodiscard]] int cutoff() const { return cutoff_; }
  [[nodiscard]] std::size_t size() const { return words_.size(); }
  [[nodiscard]] const Word& word(std::size_t i) const { return words_.at(i); }
  [[nodiscard]] int weight(std::size_t i) const { return weights_.at(i); }
  [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
  [[nodiscard]] std::size_t size_up_to(int w) const {
    std::size_t k = 0;
    for (int u = 0; u <= w && u <= cutoff_; ++u) k += static_cast<std::size_t>(dims_[u]);
    return k;
  }

  [[nodiscard]] std::size_t index(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw std::logic_error("PBW word outside the internal window");
    return it->second;
  }

  [[nodiscard]] std::size_t rest(std::size_t i) const { return index(Word(word(i).begin() + 1, word(i).end())); }

 private:
  int cutoff_;
  std::vector<Word> words_;
  std::vector<int> weights_;
  std::vector<int> dims_;
  std::map<Word, std::size_t> index_;
};

inline std::string word_label(const Word& w, const char* mode_symbol, const char* ground) {
  std::string s;
  for (int p : w) s += std::string(mode_symbol) + "(-" + std::to_string(p) + ")";
  return s + ground;
}

/// Heisenberg modes a(m) on a Fock space with a(0) = lambda, [a(m), a(n)] = m δ_{m+n,0}.
class HeisenbergModes {
 public:
  HeisenbergModes(const PbwBasis& basis, Rational lambda) : basis_(basis), lambda_(std::move(lambda)) {}

  [[nodiscard]] SparseVec apply(long m, std::size_t i) const {
    SparseVec out(basis_.size());
    const Word& w = basis_.word(i);
    if (m < 0) {
      Word nw = w;
      nw.insert(std::upper_bound(nw.begin(), nw.end(), static_cast<int>(-m), std::greater<>()), static_cast<int>(-m));
      out.add(basis_.index(nw), Rational(1));
    } else if (m == 0) {
      out.add(i, lambda_);
    } else {
      const auto count = std::count(w.begin(), w.end(), static_cast<int>(m));
      if (count > 0) {
        Word nw = w;
        nw.erase(std::find(nw.begin(), nw.end(), static_cast<int>(m)));
        out.add(basis_.index(nw), Rational(m * count));
      }
    }
    return out;
  }

 private:
  const PbwBasis& basis_;
  Rational lambda_;
};

/// Virasoro modes L(k) on a highest-weight space, straightened with
/// [L(m), L(n)] = (m-n) L(m+n) + δ_{m+n,0} (m^3-m)/12 c.
/// The vacuum variant has L(-1)|0> = 0 (parts >= 2); the Verma variant has L(0)v = h v.
class VirasoroModes {
 public:
  VirasoroModes(const PbwBasis& basis, Rational c, Rational h, bool vacuum)
      : basis_(basis), c_(std::move(c)), h_(std::move(h)), vacuum_(vacuum) {}

  [[nodiscard]] SparseVec apply(long k, std::size_t i) const {
    const auto key = std::make_pair(k, i);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SparseVec out(basis_.size());
    const Word& w = basis_.word(i);
    if (w.empty()) {
      const long lowest_creation = vacuum_ ? -2 : -1;
      if (k <= lowest_creation) {
        out.add(basis_.index(Word{static_cast<int>(-k)}), Rational(1));
      } else if (k == 0 && !vacuum_) {
        out.add(i, h_);
      }
    } else if (k < 0 && -k >= w.front()) {
      Word nw = w;
      nw.insert(nw.begin(), static_cast<int>(-k));
      out.add(basis_.index(nw), Rational(1));
    } else {
      const long f = w.front();
      const std::size_t r = basis_.rest(i);
      for (const auto& [j, x] : apply(k, r)) out.axpy(x, apply(-f, j));
      if (k + f != 0) out.axpy(Rational(k + f), apply(k - f, r));
      if (k == f) out.add(r, c_ * Rational(k * k * k - k, 12));
    }
    memo_.emplace(key, out);
    return out;
  }

 private:
  const PbwBasis& basis_;
  Rational c_;
  Rational h_;
  bool vacuum_;
  mutable std::map<std::pair<long, std::size_t>, SparseVec> memo_;
};

/// Rebuilds every field Y(v, z) of a strongly generated VOA from the modes of one generator g,
/// by the iterate formula
///   (g(p)u)(q) = sum_i (-1)^i C(p,i) [ g(p-i) u(q+i) - (-1)^p u(p+q-i) g(i) ].
class FieldReconstructor {
 public:
  using GeneratorModes = std::function<SparseVec(long, std::size_t)>;

  /// `generator_mode_of(k)` is the mode p with x(-k) = g(p) for the first letter of a state word.
  FieldReconstructor(const PbwBasis& states, int generator_weight, std::function<long(int)> generator_mode_of,
                     const PbwBasis& target, GeneratorModes modes)
      : states_(states),
        gw_(generator_weight),
        mode_of_(std::move(generator_mode_of)),
        target_(target),
        modes_(std::move(modes)) {}

  [[nodiscard]] SparseVec field(std::size_t v, long q, std::size_t c) const {
    const auto key = std::make_tuple(v, q, c);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SparseVec out(target_.size());
    const long image = static_cast<long>(states_.weight(v)) + target_.weight(c) - q - 1;
    if (states_.word(v).empty()) {
      if (q == -1) out.add(c, Rational(1));
    } else if (image >= 0) {
      const long p = mode_of_(states_.word(v).front());
      const std::size_t r = states_.rest(v);
      const long wr = states_.weight(r);
      const long dc = target_.weight(c);
      const SparseVec ec = SparseVec::unit(target_.size(), c);
      const long last_first = wr + dc - q - 1;
      const long last_second = dc + gw_ - 1;
      for (long i = 0; i <= std::max(last_first, last_second); ++i) {
        const Rational coef = power_sign(i) * binomial(p, i);
        if (i <= last_first) {
          const SparseVec inner = field(r, q + i, c);
          if (!inner.is_zero()) out.axpy(coef, generator(p - i, inner));
        }
        if (i <= last_second) {
          const SparseVec gc = generator(i, ec);
          if (!gc.is_zero()) out.axpy(-coef * power_sign(p), field(r, p + q - i, gc));
        }
      }
    }
    memo_.emplace(key, out);
    return out;
  }

  [[nodiscard]] SparseVec field(std::size_t v, long q, const SparseVec& x) const {
    SparseVec out(target_.size());
    for (const auto& [c, coeff] : x) out.axpy(coeff, field(v, q, c));
    return out;
  }

  [[nodiscard]] SparseVec generator(long m, const SparseVec& x) const {
    SparseVec out(target_.size());
    for (const auto& [c, coeff] : x) out.axpy(coeff, modes_(m, c));
    return out;
  }

  /// Mode table restricted to states of weight <= N and targets of degree <= N.
  [[nodiscard]] ModeTable table(int cutoff) const {
    const std::size_t ds = states_.size_up_to(cutoff);
    const std::size_t dt = target_.size_up_to(cutoff);
    std::vector<int> sw(ds), tw(dt);
    for (std::size_t i = 0; i < ds; ++i) sw[i] = states_.weight(i);
    for (std::size_t i = 0; i < dt; ++i) tw[i] = target_.weight(i);
    ModeTable t(cutoff, sw, tw);
    for (std::size_t a = 0; a < ds; ++a)
      for (std::size_t b = 0; b < dt; ++b) {
        auto [lo, hi] = t.mode_range(a, b);
        for (long n = lo; n <= hi; ++n) {
          SparseVec e(dt);
          for (const auto& [k, c] : field(a, n, b)) e.add(k, c);
          t.set(a, n, b, std::move(e));
        }
      }
    return t;
  }

 private:
  const PbwBasis& states_;
  int gw_;
  std::function<long(int)> mode_of_;
  const PbwBasis& target_;
  GeneratorModes modes_;
  mutable std::map<std::tuple<std::size_t, long, std::size_t>, SparseVec> memo_;
};

inline std::size_t longest_word(const PbwBasis& b, int cutoff) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < b.size_up_to(cutoff); ++i) m = std::max(m, b.word(i).size());
  return m;
}

inline std::vector<std::string> labels_of(const PbwBasis& b, int cutoff, const char* sym, const char* ground) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < b.size_up_to(cutoff); ++i) out.push_back(word_label(b.word(i), sym, ground));
  return out;
}

inline ModeTable heisenberg_table(const PbwBasis& states, const PbwBasis& target, const Rational& lambda, int cutoff) {
  HeisenbergModes modes(target, lambda);
  FieldReconstructor rec(
      states, 1, [](int k) { return static_cast<long>(-k); }, target,
      [&modes](long m, std::size_t i) { return modes.apply(m, i); });
  return rec.table(cutoff);
}

inline ModeTable virasoro_table(const PbwBasis& states, const PbwBasis& target, const Rational& c, const Rational& h,
                                bool vacuum, int cutoff) {
  VirasoroModes modes(target, c, h, vacuum);
  // omega(p) = L(p - 1), so L(-k) = omega(1 - k).
  FieldReconstructor rec(
      states, 2, [](int k) { return static_cast<long>(1 - k); }, target,
      [&modes](long m, std::size_t i) { return modes.apply(m - 1, i); });
  return rec.table(cutoff);
}

}  // namespace detail

/// Rank-one Heisenberg VOA on partitions; omega = 1/2 a(-1)^2 1, c = 1.
inline TruncatedVOA build_heisenberg(int cutoff) {
  if (cutoff < 2) throw PreconditionFailed("Heisenberg VOA needs cutoff >= 2");
  detail::PbwBasis basis(cutoff, 1);
  ModeTable table = detail::heisenberg_table(basis, basis, Rational(0), cutoff);
  const std::size_t d = basis.size();
  SparseVec omega = SparseVec::unit(d, basis.index({1, 1}), Rational(1, 2));
  return TruncatedVOA(basis.dims(), SparseVec::unit(d, 0), omega, Rational(1), std::move(table),
                      detail::labels_of(basis, cutoff, "a", "1"));
}

/// Universal Virasoro VOA of central charge c on words L(-n1)...L(-nk)1 with n_i >= 2.
inline TruncatedVOA build_virasoro(const Rational& c, int cutoff) {
  if (cutoff < 2) throw PreconditionFailed("Virasoro VOA needs cutoff >= 2");
  detail::PbwBasis states(cutoff, 2);
  // Reconstruction passes through L(-1) images, one weight above the target per nested letter.
  const int internal = cutoff + static_cast<int>(detail::longest_word(states, cutoff));
  detail::PbwBasis target(internal, 2);
  ModeTable table = detail::virasoro_table(states, target, c, Rational(0), true, cutoff);
  const std::size_t d = states.size();
  return TruncatedVOA(states.dims(), SparseVec::unit(d, 0), SparseVec::unit(d, states.index({2})), c,
                      std::move(table), detail::labels_of(states, cutoff, "L", "1"));
}

/// Trivial VOA C1: only the vacuum, no Virasoro vector, c = 0.
inline TruncatedVOA build_trivial(int cutoff) {
  if (cutoff < 0) throw PreconditionFailed("cutoff must be nonnegative");
  std::vector<int> dims(static_cast<std::size_t>(cutoff) + 1, 0);
  dims[0] = 1;
  ModeTable table(cutoff, {0}, {0});
  table.set(0, -1, 0, SparseVec::unit(1, 0));
  return TruncatedVOA(dims, SparseVec::unit(1, 0), std::nullopt, Rational(0), std::move(table), {"1"});
}

/// Heisenberg Fock module F_lambda (a(0) = lambda) over build_heisenberg(cutoff).
inline TruncatedModule build_fock(const Rational& lambda, int cutoff) {
  if (cutoff < 0) throw PreconditionFailed("cutoff must be nonnegative");
  detail::PbwBasis basis(cutoff, 1);
  ModeTable table = detail::heisenberg_table(basis, basis, lambda, cutoff);
  return TruncatedModule(basis.dims(), basis.dims(), std::move(table), detail::labels_of(basis, cutoff, "a", "v"));
}

/// Verma module M(c, h) over build_virasoro(c, cutoff).
inline TruncatedModule build_virasoro_module(const Rational& c, const Rational& h, int cutoff) {
  if (cutoff < 2) throw PreconditionFailed("Virasoro module needs cutoff >= 2");
  detail::PbwBasis states(cutoff, 2);
  const int internal = cutoff + static_cast<int>(detail::longest_word(states, cutoff));
  detail::PbwBasis target(internal, 1);
  ModeTable table = detail::virasoro_table(states, target, c, h, false, cutoff);
  detail::PbwBasis shown(cutoff, 1);
  return TruncatedModule(states.dims(), shown.dims(), std::move(table), detail::labels_of(shown, cutoff, "L", "v"));
}

}  // namespace zhuforge
