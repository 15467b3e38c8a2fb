#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/errors.hpp"
#include "zhuforge/rational.hpp"
#include "zhuforge/sparse.hpp"

namespace zhuforge {

/// Basis weights for a graded space listed weight-major: dims[w] consecutive indices of weight w.
inline std::vector<int> weights_from_dims(const std::vector<int>& dims) {
  std::vector<int> w;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < 0) throw PreconditionFailed("graded dimension " + std::to_string(k) + " is negative");
    w.insert(w.end(), static_cast<std::size_t>(dims[k]), static_cast<int>(k));
  }
  return w;
}

/// Splits a vector into homogeneous components according to the basis weights.
inline std::map<int, SparseVec> homogeneous_parts(const SparseVec& v, const std::vector<int>& weights) {
  std::map<int, SparseVec> parts;
  for (const auto& [i, c] : v) {
    auto [it, _] = parts.try_emplace(weights.at(i), v.dim());
    it->second.add(i, c);
  }
  return parts;
}

/// Highest weight carrying a nonzero component, or -1 for the zero vector.
inline int top_weight(const SparseVec& v, const std::vector<int>& weights) {
  int top = -1;
  for (const auto& [i, c] : v) top = std::max(top, weights.at(i));
  return top;
}

/// Mode data a(n)b for source basis a and target basis b, stored for exactly the modes whose
/// image weight wt a + wt b - n - 1 lies in [0, cutoff]. Lower modes would land above the
/// cutoff (unknown); higher modes vanish by grading.
class ModeTable {
 public:
  enum class Slot { in_window, below, above };

  ModeTable() = default;
  ModeTable(int cutoff, std::vector<int> source_weights, std::vector<int> target_weights)
      : cutoff_(cutoff), src_(std::move(source_weights)), tgt_(std::move(target_weights)) {
    if (cutoff_ < 0) throw PreconditionFailed("cutoff must be nonnegative");
    entries_.assign(src_.size() * tgt_.size() * static_cast<std::size_t>(cutoff_ + 1), SparseVec(tgt_.size()));
  }

  [[nodiscard]] int cutoff() const { return cutoff_; }
  [[nodiscard]] std::size_t source_dim() const { return src_.size(); }
  [[nodiscard]] std::size_t target_dim() const { return tgt_.size(); }
  [[nodiscard]] const std::vector<int>& source_weights() const { return src_; }
  [[nodiscard]] const std::vector<int>& target_weights() const { return tgt_; }

  [[nodiscard]] long image_weight(std::size_t a, long n, std::size_t b) const {
    return static_cast<long>(src_.at(a)) + tgt_.at(b) - n - 1;
  }

  [[nodiscard]] Slot classify(std::size_t a, long n, std::size_t b) const {
    const long t = image_weight(a, n, b);
    if (t < 0) return Slot::below;
    if (t > cutoff_) return Slot::above;
    return Slot::in_window;
  }

  /// Lowest and highest mode n stored for the pair (a, b).
  [[nodiscard]] std::pair<long, long> mode_range(std::size_t a, std::size_t b) const {
    const long hi = static_cast<long>(src_.at(a)) + tgt_.at(b) - 1;
    return {hi - cutoff_, hi};
  }

  [[nodiscard]] const SparseVec& at(std::size_t a, long n, std::size_t b) const { return entries_[slot_index(a, n, b)]; }

  void set(std::size_t a, long n, std::size_t b, SparseVec v) {
    if (v.dim() != tgt_.size()) throw DimensionMismatch("mode table entry has wrong target dimension");
    const long t = image_weight(a, n, b);
    for (const auto& [k, c] : v)
      if (tgt_[k] != t)
        throw PreconditionFailed("entry a(n)b has a component of weight " + std::to_string(tgt_[k]) +
                                 " but the grading requires " + std::to_string(t));
    entries_[slot_index(a, n, b)] = std::move(v);
  }

  /// Overwrites an entry without the grading check (fault injection, raw input).
  void set_unchecked(std::size_t a, long n, std::size_t b, SparseVec v) {
    if (v.dim() != tgt_.size()) throw DimensionMismatch("mode table entry has wrong target dimension");
    entries_[slot_index(a, n, b)] = std::move(v);
  }

  /// a(n)x for a source basis element; nullopt when any needed component lies above the cutoff.
  [[nodiscard]] std::optional<SparseVec> apply(std::size_t a, long n, const SparseVec& x) const {
    if (x.dim() != tgt_.size()) throw DimensionMismatch("mode applied to vector of wrong dimension");
    SparseVec out(tgt_.size());
    for (const auto& [j, c] : x) {
      switch (classify(a, n, j)) {
        case Slot::above: return std::nullopt;
        case Slot::below: break;
        case Slot::in_window: out.axpy(c, at(a, n, j)); break;
      }
    }
    return out;
  }

  /// Bilinear extension in the source argument.
  [[nodiscard]] std::optional<SparseVec> apply(const SparseVec& a, long n, const SparseVec& x) const {
    if (a.dim() != src_.size()) throw DimensionMismatch("mode of a vector of wrong dimension");
    SparseVec out(tgt_.size());
    for (const auto& [i, c] : a) {
      auto part = apply(i, n, x);
      if (!part) return std::nullopt;
      out.axpy(c, *part);
    }
    return out;
  }

  friend bool operator==(const ModeTable& x, const ModeTable& y) {
    return x.cutoff_ == y.cutoff_ && x.src_ == y.src_ && x.tgt_ == y.tgt_ && x.entries_ == y.entries_;
  }

 private:
  [[nodiscard]] std::size_t slot_index(std::size_t a, long n, std::size_t b) const {
    const long t = image_weight(a, n, b);
    if (t < 0 || t > cutoff_)
      throw OutOfTruncation("mode " + std::to_string(n) + " of basis " + std::to_string(a) + " on basis " +
                            std::to_string(b) + " is not stored (image weight " + std::to_string(t) + ")");
    return (a * tgt_.size() + b) * static_cast<std::size_t>(cutoff_ + 1) + static_cast<std::size_t>(t);
  }

  int cutoff_ = 0;
  std::vector<int> src_;
  std::vector<int> tgt_;
  std::vector<SparseVec> entries_;
};

/// Vertex operator algebra truncated at weight N: V_0 ⊕ ... ⊕ V_N with all stored modes.
class TruncatedVOA {
 public:
  TruncatedVOA() = default;
  TruncatedVOA(std::vector<int> dims, SparseVec vacuum, std::optional<SparseVec> omega, Rational central_charge,
               ModeTable table, std::vector<std::string> labels = {})
      : dims_(std::move(dims)),
        weights_(weights_from_dims(dims_)),
        vacuum_(std::move(vacuum)),
        omega_(std::move(omega)),
        c_(std::move(central_charge)),
        table_(std::move(table)),
        labels_(std::move(labels)) {
    if (dims_.empty()) throw PreconditionFailed("a truncated VOA needs at least the weight-0 piece");
    const std::size_t d = weights_.size();
    if (table_.source_dim() != d || table_.target_dim() != d || table_.source_weights() != weights_ ||
        table_.target_weights() != weights_ || table_.cutoff() != cutoff())
      throw DimensionMismatch("mode table does not match the graded dimensions");
    if (vacuum_.dim() != d) throw DimensionMismatch("vacuum vector has wrong dimension");
    if (top_weight(vacuum_, weights_) != 0) throw PreconditionFailed("vacuum must be a nonzero vector of weight 0");
    if (omega_) {
      if (omega_->dim() != d) throw DimensionMismatch("Virasoro vector has wrong dimension");
      for (const auto& [i, c] : *omega_)
        if (weights_[i] != 2) throw PreconditionFailed("Virasoro vector must have weight 2");
    }
    if (!labels_.empty() && labels_.size() != d) throw DimensionMismatch("label count differs from dimension");
  }

  [[nodiscard]] int cutoff() const { return static_cast<int>(dims_.size()) - 1; }
  [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
  [[nodiscard]] std::size_t dim() const { return weights_.size(); }
  [[nodiscard]] const std::vector<int>& weights() const { return weights_; }
  [[nodiscard]] int weight(std::size_t i) const { return weights_.at(i); }
  [[nodiscard]] const SparseVec& vacuum() const { return vacuum_; }
  [[nodiscard]] const std::optional<SparseVec>& omega() const { return omega_; }
  [[nodiscard]] const Rational& central_charge() const { return c_; }
  [[nodiscard]] const ModeTable& table() const { return table_; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::string label(std::size_t i) const {
    return labels_.empty() ? "e" + std::to_string(i) : labels_.at(i);
  }

  /// First basis index of weight w (== dim() when w exceeds the cutoff).
  [[nodiscard]] std::size_t first_of_weight(int w) const {
    std::size_t k = 0;
    for (int u = 0; u < w && u < static_cast<int>(dims_.size()); ++u) k += static_cast<std::size_t>(dims_[u]);
    return k;
  }
  /// Number of basis vectors of weight <= w.
  [[nodiscard]] std::size_t dim_up_to(int w) const { return first_of_weight(w + 1); }

  [[nodiscard]] SparseVec basis_vector(std::size_t i) const { return SparseVec::unit(dim(), i); }

  /// Copy with one structure constant replaced (no grading check), used for fault injection.
  [[nodiscard]] TruncatedVOA with_constant(std::size_t a, long n, std::size_t b, SparseVec value) const {
    TruncatedVOA copy = *this;
    copy.table_.set_unchecked(a, n, b, std::move(value));
    return copy;
  }

 private:
  std::vector<int> dims_;
  std::vector<int> weights_;
  SparseVec vacuum_;
  std::optional<SparseVec> omega_;
  Rational c_;
  ModeTable table_;
  std::vector<std::string> labels_;
};

/// Positive-energy module truncated at degree N; source modes are indexed by the VOA basis.
class TruncatedModule {
 public:
  TruncatedModule() = default;
  TruncatedModule(std::vector<int> voa_dims, std::vector<int> dims, ModeTable table,
                  std::vector<std::string> labels = {})
      : voa_dims_(std::move(voa_dims)),
        dims_(std::move(dims)),
        degrees_(weights_from_dims(dims_)),
        table_(std::move(table)),
        labels_(std::move(labels)) {
    if (dims_.empty()) throw PreconditionFailed("a truncated module needs its top level");
    if (table_.target_weights() != degrees_ || table_.source_weights() != weights_from_dims(voa_dims_) ||
        table_.cutoff() != cutoff())
      throw DimensionMismatch("module action table does not match the graded dimensions");
    if (!labels_.empty() && labels_.size() != degrees_.size()) throw DimensionMismatch("label count differs");
  }

  [[nodiscard]] int cutoff() const { return static_cast<int>(dims_.size()) - 1; }
  [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
  [[nodiscard]] const std::vector<int>& voa_dims() const { return voa_dims_; }
  [[nodiscard]] std::size_t dim() const { return degrees_.size(); }
  [[nodiscard]] std::size_t top_level_dim() const { return static_cast<std::size_t>(dims_.front()); }
  [[nodiscard]] const std::vector<int>& degrees() const { return degrees_; }
  [[nodiscard]] int degree(std::size_t i) const { return degrees_.at(i); }
  [[nodiscard]] const ModeTable& table() const { return table_; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::string label(std::size_t i) const {
    return labels_.empty() ? "m" + std::to_string(i) : labels_.at(i);
  }
  [[nodiscard]] std::size_t first_of_degree(int d) const {
    std::size_t k = 0;
    for (int u = 0; u < d && u < static_cast<int>(dims_.size()); ++u) k += static_cast<std::size_t>(dims_[u]);
    return k;
  }

  [[nodiscard]] TruncatedModule with_constant(std::size_t a, long n, std::size_t b, SparseVec value) const {
    TruncatedModule copy = *this;
    copy.table_.set_unchecked(a, n, b, std::move(value));
    return copy;
  }

 private:
  std::vector<int> voa_dims_;
  std::vector<int> dims_;
  std::vector<int> degrees_;
  ModeTable table_;
  std::vector<std::string> labels_;
};

/// V as a module over itself.
inline TruncatedModule adjoint_module(const TruncatedVOA& v) {
  return TruncatedModule(v.dims(), v.dims(), v.table(), v.labels());
}

/// a(n)b with a, b arbitrary vectors; nullopt = out of truncation.
inline std::optional<SparseVec> mode_action(const TruncatedVOA& v, const SparseVec& a, long n, const SparseVec& b) {
  return v.table().apply(a, n, b);
}

/// Restriction of V to weights <= new_cutoff.
inline TruncatedVOA truncate(const TruncatedVOA& v, int new_cutoff) {
  if (new_cutoff < 0 || new_cutoff > v.cutoff()) throw PreconditionFailed("new cutoff outside [0, N]");
  std::vector<int> dims(v.dims().begin(), v.dims().begin() + new_cutoff + 1);
  const std::size_t d = v.dim_up_to(new_cutoff);
  const auto weights = weights_from_dims(dims);
  ModeTable table(new_cutoff, weights, weights);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      auto [lo, hi] = table.mode_range(a, b);
      for (long n = lo; n <= hi; ++n) {
        SparseVec e(d);
        for (const auto& [k, c] : v.table().at(a, n, b)) e.add(k, c);
        table.set_unchecked(a, n, b, std::move(e));
      }
    }
  auto narrow = [d](const SparseVec& x) {
    SparseVec y(d);
    for (const auto& [k, c] : x)
      if (k < d) y.add(k, c);
    return y;
  };
  std::optional<SparseVec> omega;
  if (v.omega() && new_cutoff >= 2) omega = narrow(*v.omega());
  std::vector<std::string> labels;
  if (!v.labels().empty()) labels.assign(v.labels().begin(), v.labels().begin() + static_cast<long>(d));
  return TruncatedVOA(dims, narrow(v.vacuum()), omega, v.central_charge(), std::move(table), std::move(labels));
}

/// Restriction of M (and of the VOA it is over) to degrees and weights <= new_cutoff.
inline TruncatedModule truncate(const TruncatedModule& m, int new_cutoff) {
  if (new_cutoff < 0 || new_cutoff > m.cutoff()) throw PreconditionFailed("new cutoff outside [0, N]");
  if (static_cast<int>(m.voa_dims().size()) < new_cutoff + 1) throw PreconditionFailed("VOA data shorter than cutoff");
  std::vector<int> dims(m.dims().begin(), m.dims().begin() + new_cutoff + 1);
  std::vector<int> voa_dims(m.voa_dims().begin(), m.voa_dims().begin() + new_cutoff + 1);
  const auto degrees = weights_from_dims(dims);
  const auto weights = weights_from_dims(voa_dims);
  const std::size_t d = degrees.size();
  ModeTable table(new_cutoff, weights, degrees);
  for (std::size_t a = 0; a < weights.size(); ++a)
    for (std::size_t b = 0; b < d; ++b) {
      auto [lo, hi] = table.mode_range(a, b);
      for (long n = lo; n <= hi; ++n) {
        SparseVec e(d);
        for (const auto& [k, c] : m.table().at(a, n, b)) e.add(k, c);
        table.set_unchecked(a, n, b, std::move(e));
      }
    }
  std::vector<std::string> labels;
  if (!m.labels().empty()) labels.assign(m.labels().begin(), m.labels().begin() + static_cast<long>(d));
  return TruncatedModule(std::move(voa_dims), std::move(dims), std::move(table), std::move(labels));
}

}  // namespace zhuforge
