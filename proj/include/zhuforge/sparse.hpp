#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/errors.hpp"
#include "zhuforge/rational.hpp"

namespace zhuforge {

/// Sparse vector over a fixed ambient basis. Never stores zero entries.
class SparseVec {
 public:
  using Map = std::map<std::size_t, Rational>;

  SparseVec() = default;
  explicit SparseVec(std::size_t dim) : dim_(dim) {}
  SparseVec(std::size_t dim, std::initializer_list<std::pair<std::size_t, Rational>> entries) : dim_(dim) {
    for (const auto& [i, c] : entries) add(i, c);
  }

  static SparseVec unit(std::size_t dim, std::size_t i, Rational coeff = Rational(1)) {
    SparseVec v(dim);
    v.add(i, std::move(coeff));
    return v;
  }

  /// Dense constructor, mostly for tests.
  static SparseVec from_dense(const std::vector<Rational>& dense) {
    SparseVec v(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) v.add(i, dense[i]);
    return v;
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
  [[nodiscard]] const Map& entries() const { return entries_; }
  [[nodiscard]] auto begin() const { return entries_.begin(); }
  [[nodiscard]] auto end() const { return entries_.end(); }

  [[nodiscard]] Rational get(std::size_t i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  void set(std::size_t i, Rational c) {
    check_index(i);
    if (c.is_zero()) {
      entries_.erase(i);
    } else {
      entries_[i] = std::move(c);
    }
  }

  void add(std::size_t i, const Rational& c) {
    if (c.is_zero()) return;
    check_index(i);
    auto [it, inserted] = entries_.try_emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  /// this += c * other
  void axpy(const Rational& c, const SparseVec& other) {
    if (c.is_zero()) return;
    require_same_dim(other);
    for (const auto& [i, x] : other.entries_) add(i, c * x);
  }

  SparseVec& operator+=(const SparseVec& o) { axpy(Rational(1), o); return *this; }
  SparseVec& operator-=(const SparseVec& o) { axpy(Rational(-1), o); return *this; }
  SparseVec& operator*=(const Rational& c) {
    if (c.is_zero()) {
      entries_.clear();
    } else {
      for (auto& [i, x] : entries_) x *= c;
    }
    return *this;
  }
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(const Rational& c, SparseVec v) { return v *= c; }
  friend SparseVec operator-(SparseVec v) { return v *= Rational(-1); }
  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  [[nodiscard]] std::optional<std::size_t> lowest_index() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.begin()->first;
  }
  [[nodiscard]] std::optional<std::size_t> highest_index() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.rbegin()->first;
  }

  /// Same entries in a larger or equal ambient space.
  [[nodiscard]] SparseVec widened(std::size_t new_dim) const {
    if (new_dim < dim_ && highest_index().value_or(0) >= new_dim && !is_zero())
      throw DimensionMismatch("cannot narrow vector with entries beyond new dimension");
    SparseVec v(new_dim);
    v.entries_ = entries_;
    return v;
  }

  [[nodiscard]] std::string str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [i, c] : entries_) {
      if (!first) out += ", ";
      first = false;
      out += std::to_string(i) + ": " + c.str();
    }
    return out + "}";
  }

  void require_same_dim(const SparseVec& o) const {
    if (o.dim_ != dim_)
      throw DimensionMismatch("ambient dimensions differ: " + std::to_string(dim_) + " vs " + std::to_string(o.dim_));
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= dim_)
      throw DimensionMismatch("index " + std::to_string(i) + " outside ambient dimension " + std::to_string(dim_));
  }

  std::size_t dim_ = 0;
  Map entries_;
};

enum class PivotOrder { lowest_first, highest_first };

/// Span of a list of generators, kept in reduced echelon form. Each echelon row also
/// remembers its expression in the generators so membership can return coordinates.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim, PivotOrder order = PivotOrder::lowest_first)
      : dim_(ambient_dim), order_(order) {}

  static Subspace echelonize(const std::vector<SparseVec>& vectors, std::size_t ambient_dim,
                             PivotOrder order = PivotOrder::lowest_first) {
    Subspace s(ambient_dim, order);
    for (const auto& v : vectors) s.add_generator(v);
    return s;
  }

  static Subspace echelonize(const std::vector<SparseVec>& vectors, PivotOrder order = PivotOrder::lowest_first) {
    if (vectors.empty()) throw DimensionMismatch("cannot infer ambient dimension of an empty list");
    return echelonize(vectors, vectors.front().dim(), order);
  }

  /// Appends a generator; returns true when it increased the rank.
  bool add_generator(const SparseVec& g) {
    if (g.dim() != dim_)
      throw DimensionMismatch("generator of dimension " + std::to_string(g.dim()) + " in ambient " +
                              std::to_string(dim_));
    const std::size_t gen_index = generators_.size();
    generators_.push_back(g);

    SparseVec v = g;
    SparseVec combo = SparseVec::unit(kComboDim, gen_index);
    eliminate(v, &combo);
    if (v.is_zero()) return false;

    const std::size_t piv = order_ == PivotOrder::lowest_first ? *v.lowest_index() : *v.highest_index();
    const Rational inv = Rational(1) / v.get(piv);
    v *= inv;
    combo *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational c = rows_[r].get(piv);
      if (c.is_zero()) continue;
      rows_[r].axpy(-c, v);
      combos_[r].axpy(-c, combo);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(v));
    combos_.insert(combos_.begin() + pos, std::move(combo));
    return true;
  }

  [[nodiscard]] std::size_t ambient_dim() const { return dim_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] PivotOrder pivot_order() const { return order_; }
  [[nodiscard]] const std::vector<SparseVec>& generators() const { return generators_; }
  [[nodiscard]] const std::vector<SparseVec>& basis() const { return rows_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of v after clearing every pivot coordinate.
  [[nodiscard]] SparseVec reduce(const SparseVec& v) const {
    if (v.dim() != dim_) throw DimensionMismatch("vector and subspace live in different ambient spaces");
    SparseVec r = v;
    eliminate(r, nullptr);
    return r;
  }

  [[nodiscard]] bool contains(const SparseVec& v) const { return reduce(v).is_zero(); }

  /// Coordinates of v with respect to generators(), or nullopt if v is not in the span.
  [[nodiscard]] std::optional<SparseVec> membership(const SparseVec& v) const {
    if (v.dim() != dim_) throw DimensionMismatch("vector and subspace live in different ambient spaces");
    SparseVec r = v;
    SparseVec acc(kComboDim);
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Rational c = r.get(pivots_[k]);
      if (c.is_zero()) continue;
      r.axpy(-c, rows_[k]);
      acc.axpy(c, combos_[k]);
    }
    if (!r.is_zero()) return std::nullopt;
    SparseVec coords(generators_.size());
    for (const auto& [i, c] : acc) coords.add(i, c);
    return coords;
  }

  /// True when both spaces coincide (same ambient dimension, mutual containment).
  [[nodiscard]] bool same_span(const Subspace& o) const {
    if (o.dim_ != dim_ || o.rank() != rank()) return false;
    return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const SparseVec& v) { return contains(v); });
  }

 private:
  void eliminate(SparseVec& v, SparseVec* combo) const {
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      Rational c = v.get(pivots_[k]);
      if (!c.is_zero()) hits.emplace_back(k, std::move(c));
    }
    // Rows are fully reduced, so one sweep over the original pivot entries suffices.
    for (const auto& [k, c] : hits) {
      v.axpy(-c, rows_[k]);
      if (combo) combo->axpy(-c, combos_[k]);
    }
  }

  // Generator-coordinate rows grow with the generator list; give them an open-ended ambient.
  static constexpr std::size_t kComboDim = static_cast<std::size_t>(-1);

  std::size_t dim_ = 0;
  PivotOrder order_ = PivotOrder::lowest_first;
  std::vector<SparseVec> generators_;
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<SparseVec> combos_;
};

/// Quotient of the ambient space by a subspace, presented on the non-pivot coordinates.
class Quotient {
 public:
  Quotient() = default;
  Quotient(std::size_t ambient_dim, Subspace kernel) : dim_(ambient_dim), kernel_(std::move(kernel)) {
    if (kernel_.ambient_dim() != dim_) throw DimensionMismatch("subspace does not live in the given ambient space");
    position_.assign(dim_, npos);
    std::vector<bool> is_pivot(dim_, false);
    for (auto p : kernel_.pivots()) is_pivot[p] = true;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_pivot[i]) continue;
      position_[i] = reps_.size();
      reps_.push_back(i);
    }
  }

  [[nodiscard]] std::size_t ambient_dim() const { return dim_; }
  [[nodiscard]] std::size_t dim() const { return reps_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& representatives() const { return reps_; }
  [[nodiscard]] const Subspace& kernel() const { return kernel_; }

  /// Class coordinates of an ambient vector.
  [[nodiscard]] SparseVec project(const SparseVec& v) const {
    SparseVec r = kernel_.reduce(v);
    SparseVec out(reps_.size());
    for (const auto& [i, c] : r) out.add(position_[i], c);
    return out;
  }

  /// Ambient vector of the chosen representatives for the given class coordinates.
  [[nodiscard]] SparseVec lift(const SparseVec& cls) const {
    if (cls.dim() != reps_.size()) throw DimensionMismatch("class vector has wrong dimension");
    SparseVec out(dim_);
    for (const auto& [k, c] : cls) out.add(reps_[k], c);
    return out;
  }

  [[nodiscard]] std::optional<std::size_t> class_of_index(std::size_t ambient_index) const {
    if (ambient_index >= dim_ || position_[ambient_index] == npos) return std::nullopt;
    return position_[ambient_index];
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t dim_ = 0;
  Subspace kernel_;
  std::vector<std::size_t> reps_;
  std::vector<std::size_t> position_;
};

inline Quotient quotient_basis(std::size_t ambient_dim, const Subspace& s) { return Quotient(ambient_dim, s); }

}  // namespace zhuforge
