#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge.hpp"

namespace oracle {

using zhuforge::Rational;
using zhuforge::SparseVec;

inline std::size_t index_of(const std::vector<std::string>& labels, const std::string& name) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == name) return i;
  throw std::out_of_range("no basis label " + name);
}

inline SparseVec unit(const std::vector<std::string>& labels, const std::string& name, Rational c = Rational(1)) {
  return SparseVec::unit(labels.size(), index_of(labels, name), c);
}

// p(n) restricted to parts >= min_part, by the usual coin-change recurrence.
inline std::vector<int> partition_counts(int n, int min_part) {
  std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = min_part; part <= n; ++part)
    for (int w = part; w <= n; ++w) p[static_cast<std::size_t>(w)] += p[static_cast<std::size_t>(w - part)];
  return p;
}

inline std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<Rational> dense(const SparseVec& v) {
  std::vector<Rational> out(v.dim());
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

// Words of negative modes read off a label such as "a(-2)a(-1)1" or "L(-3)v", largest first.
using Word = std::vector<int>;
using State = std::map<Word, Rational>;

inline Word parse_word(const std::string& label) {
  static const std::regex mode(R"(\(-(\d+)\))");
  Word w;
  for (auto it = std::sregex_iterator(label.begin(), label.end(), mode); it != std::sregex_iterator(); ++it)
    w.push_back(std::stoi((*it)[1]));
  return w;
}

inline void add(State& s, const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto& slot = s[w];
  slot += c;
  if (slot.is_zero()) s.erase(w);
}

inline State from_vec(const SparseVec& v, const std::vector<std::string>& labels) {
  State s;
  for (const auto& [i, c] : v) add(s, parse_word(labels[i]), c);
  return s;
}

inline SparseVec to_vec(const State& s, const std::vector<std::string>& labels) {
  std::map<Word, std::size_t> where;
  for (std::size_t i = 0; i < labels.size(); ++i) where[parse_word(labels[i])] = i;
  SparseVec out(labels.size());
  for (const auto& [w, c] : s) {
    const auto it = where.find(w);
    if (it == where.end()) throw std::out_of_range("state leaves the basis");
    out.add(it->second, c);
  }
  return out;
}

inline int weight(const Word& w) {
  int s = 0;
  for (int k : w) s += k;
  return s;
}

// Fock space: a word lists the creation modes; a(m) with m > 0 acts as m d/dx_m.
inline State heisenberg_mode(long m, const State& s, const Rational& lambda) {
  State out;
  for (const auto& [w, c] : s) {
    if (m < 0) {
      Word nw = w;
      nw.push_back(static_cast<int>(-m));
      std::sort(nw.rbegin(), nw.rend());
      add(out, nw, c);
    } else if (m == 0) {
      add(out, w, c * lambda);
    } else {
      long count = 0;
      for (int k : w) count += (k == m);
      if (count == 0) continue;
      Word nw = w;
      nw.erase(std::find(nw.begin(), nw.end(), static_cast<int>(m)));
      add(out, nw, c * Rational(m * count));
    }
  }
  return out;
}

// L(m) = 1/2 sum_j :a(m-j)a(j): with the larger mode acting first.
inline State sugawara(long m, const State& s, const Rational& lambda) {
  long depth = 0;
  for (const auto& [w, c] : s) depth = std::max<long>(depth, weight(w));
  State out;
  for (long j = m - depth - 1; j <= depth + 1; ++j) {
    const long lo = std::min(j, m - j), hi = std::max(j, m - j);
    for (const auto& [w, c] : heisenberg_mode(lo, heisenberg_mode(hi, s, lambda), lambda)) add(out, w, c / Rational(2));
  }
  return out;
}

// Highest weight Virasoro module straightened into PBW order with parts sorted largest first.
struct Virasoro {
  Rational c, h;
  bool vacuum = false;

  [[nodiscard]] State apply(long m, const Word& w) const {
    State out;
    if (w.empty()) {
      if (m < 0 && !(vacuum && m == -1)) add(out, Word{static_cast<int>(-m)}, Rational(1));
      if (m == 0) add(out, w, h);
      return out;
    }
    const int k = w.front();
    const Word rest(w.begin() + 1, w.end());
    if (m < 0 && -m >= k) {
      Word nw{static_cast<int>(-m)};
      nw.insert(nw.end(), w.begin(), w.end());
      add(out, nw, Rational(1));
      return out;
    }
    for (const auto& [u, a] : apply(m, rest))
      for (const auto& [x, b] : apply(-k, u)) add(out, x, a * b);
    for (const auto& [u, a] : apply(m - k, rest)) add(out, u, a * Rational(m + k));
    if (m == k) add(out, rest, c * Rational(m * m * m - m, 12));
    return out;
  }

  [[nodiscard]] State apply(long m, const State& s) const {
    State out;
    for (const auto& [w, a] : s)
      for (const auto& [x, b] : apply(m, w)) add(out, x, a * b);
    return out;
  }
};

using Rng = std::mt19937_64;

inline Rational small_rational(Rng& rng, long range = 3) {
  std::uniform_int_distribution<long> num(-range, range), den(1, 3);
  return Rational(num(rng), den(rng));
}

inline SparseVec random_vec(Rng& rng, std::size_t dim, std::size_t terms = 3) {
  SparseVec v(dim);
  if (dim == 0) return v;
  std::uniform_int_distribution<std::size_t> idx(0, dim - 1);
  for (std::size_t t = 0; t < terms; ++t) v.add(idx(rng), small_rational(rng));
  return v;
}

// Random combination of basis vectors of a single weight.
inline SparseVec random_homogeneous(Rng& rng, const zhuforge::TruncatedVOA& v, int w) {
  SparseVec out(v.dim());
  for (std::size_t i = v.first_of_weight(w); i < v.dim_up_to(w); ++i) out.add(i, small_rational(rng));
  return out;
}

}  // namespace oracle
