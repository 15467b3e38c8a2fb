#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/errors.hpp"
#include "zhuforge/matrix.hpp"
#include "zhuforge/rational.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/sparse.hpp"

namespace zhuforge {

/// Finite-dimensional associative algebra with identity, given by structure constants e_i e_j.
class AssocAlgebra {
 public:
  AssocAlgebra() = default;
  AssocAlgebra(std::size_t dim, std::vector<SparseVec> mult, SparseVec identity, std::string name = "")
      : dim_(dim), mult_(std::move(mult)), identity_(std::move(identity)), name_(std::move(name)) {
    if (mult_.size() != dim_ * dim_) throw DimensionMismatch("multiplication table must have dim^2 entries");
    for (const auto& v : mult_)
      if (v.dim() != dim_) throw DimensionMismatch("product vector has wrong dimension");
    if (identity_.dim() != dim_) throw DimensionMismatch("identity has wrong dimension");
  }

  /// Subalgebra of matrices spanned by the given ones; must contain the identity and be closed.
  static AssocAlgebra from_matrices(const std::vector<Matrix>& spanning, std::string name = "",
                                    std::vector<Matrix>* basis_out = nullptr) {
    if (spanning.empty()) throw PreconditionFailed("no matrices given");
    const std::size_t r = spanning.front().rows(), c = spanning.front().cols();
    Subspace span(r * c);
    for (const auto& m : spanning) span.add_generator(m.flatten());
    std::vector<Matrix> basis;
    for (const auto& v : span.basis()) basis.push_back(Matrix::unflatten(v, r, c));
    const Subspace coords = Subspace::echelonize(span.basis(), r * c);
    const std::size_t d = basis.size();
    auto express = [&](const Matrix& m) {
      auto x = coords.membership(m.flatten());
      if (!x) throw PreconditionFailed("matrix span is not closed under multiplication");
      return *x;
    };
    std::vector<SparseVec> mult;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) mult.push_back(express(basis[i] * basis[j]));
    SparseVec id = express(Matrix::identity(r));
    if (basis_out) *basis_out = basis;
    return AssocAlgebra(d, std::move(mult), std::move(id), std::move(name));
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const SparseVec& identity() const { return identity_; }
  [[nodiscard]] const SparseVec& product(std::size_t i, std::size_t j) const { return mult_.at(i * dim_ + j); }
  [[nodiscard]] const std::vector<SparseVec>& table() const { return mult_; }
  [[nodiscard]] SparseVec basis_vector(std::size_t i) const { return SparseVec::unit(dim_, i); }

  [[nodiscard]] SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
    if (x.dim() != dim_ || y.dim() != dim_) throw DimensionMismatch("algebra elements of wrong dimension");
    SparseVec out(dim_);
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) out.axpy(a * b, product(i, j));
    return out;
  }

  /// Matrix of y -> x y.
  [[nodiscard]] Matrix left_regular(const SparseVec& x) const {
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : multiply(x, basis_vector(j))) m(k, j) = c;
    return m;
  }

  /// Matrix of y -> y x.
  [[nodiscard]] Matrix right_regular(const SparseVec& x) const {
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : multiply(basis_vector(j), x)) m(k, j) = c;
    return m;
  }

  /// Associativity on all basis triples and the two-sided unit law.
  [[nodiscard]] CheckResult check() const {
    CheckResult r("algebra");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          const SparseVec lhs = multiply(product(i, j), basis_vector(k));
          const SparseVec rhs = multiply(basis_vector(i), product(j, k));
          r.expect(lhs == rhs, [&] {
            return Witness{"associativity fails",
                           {{"i", i}, {"j", j}, {"k", k}, {"lhs", vec_to_json(lhs)}, {"rhs", vec_to_json(rhs)}}};
          });
        }
    for (std::size_t i = 0; i < dim_; ++i) {
      const SparseVec e = basis_vector(i);
      r.expect(multiply(identity_, e) == e && multiply(e, identity_) == e,
               [&] { return Witness{"identity is not two-sided", {{"i", i}}}; });
    }
    return r;
  }

  [[nodiscard]] bool is_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        if (product(i, j) != product(j, i)) return false;
    return true;
  }

  friend bool operator==(const AssocAlgebra& a, const AssocAlgebra& b) {
    return a.dim_ == b.dim_ && a.mult_ == b.mult_ && a.identity_ == b.identity_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<SparseVec> mult_;
  SparseVec identity_;
  std::string name_;
};

using AlgebraPtr = std::shared_ptr<const AssocAlgebra>;

inline AlgebraPtr share(AssocAlgebra a) { return std::make_shared<const AssocAlgebra>(std::move(a)); }

/// The ground field Q.
inline AssocAlgebra ground_field() {
  return AssocAlgebra(1, {SparseVec::unit(1, 0)}, SparseVec::unit(1, 0), "Q");
}

/// Q^k with the primitive idempotents as basis.
inline AssocAlgebra diagonal_algebra(std::size_t k) {
  std::vector<SparseVec> mult;
  SparseVec id(k);
  for (std::size_t i = 0; i < k; ++i) {
    id.add(i, Rational(1));
    for (std::size_t j = 0; j < k; ++j) mult.push_back(i == j ? SparseVec::unit(k, i) : SparseVec(k));
  }
  return AssocAlgebra(k, std::move(mult), std::move(id), "Q^" + std::to_string(k));
}

/// M_n(Q) on matrix units E_ij, index i*n + j.
inline AssocAlgebra matrix_algebra(std::size_t n) {
  const std::size_t d = n * n;
  std::vector<SparseVec> mult;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) mult.push_back(j == k ? SparseVec::unit(d, i * n + l) : SparseVec(d));
  SparseVec id(d);
  for (std::size_t i = 0; i < n; ++i) id.add(i * n + i, Rational(1));
  return AssocAlgebra(d, std::move(mult), std::move(id), "M" + std::to_string(n) + "(Q)");
}

/// Q[x]/(p) for monic p = x^d + c_{d-1} x^{d-1} + ... + c_0, basis 1, x, ..., x^{d-1}.
inline AssocAlgebra polynomial_quotient(const std::vector<Rational>& lower_coeffs, std::string name = "") {
  const std::size_t d = lower_coeffs.size();
  if (d == 0) throw PreconditionFailed("polynomial must have degree >= 1");
  // powers[k] = x^k reduced, for k < 2d - 1.
  std::vector<SparseVec> powers;
  for (std::size_t k = 0; k < d; ++k) powers.push_back(SparseVec::unit(d, k));
  for (std::size_t k = d; k + 1 < 2 * d; ++k) {
    SparseVec shifted(d);
    Rational top;
    for (const auto& [i, c] : powers[k - 1]) {
      if (i + 1 < d) shifted.add(i + 1, c);
      else top = c;
    }
    for (std::size_t i = 0; i < d; ++i) shifted.add(i, -top * lower_coeffs[i]);
    powers.push_back(std::move(shifted));
  }
  std::vector<SparseVec> mult;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mult.push_back(powers[i + j]);
  return AssocAlgebra(d, std::move(mult), SparseVec::unit(d, 0), std::move(name));
}

/// Q[x]/(x^k).
inline AssocAlgebra truncated_polynomial(std::size_t k) {
  return polynomial_quotient(std::vector<Rational>(k, Rational(0)), "Q[x]/(x^" + std::to_string(k) + ")");
}

/// Upper triangular 2x2 matrices, basis E11, E12, E22.
inline AssocAlgebra upper_triangular2() {
  std::vector<Matrix> basis;
  for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {1, 1}}) {
    Matrix m(2, 2);
    m(i, j) = Rational(1);
    basis.push_back(m);
  }
  return AssocAlgebra::from_matrices(basis, "T2(Q)");
}

/// A ⊗ B on basis pairs, index i*dim(B) + j.
inline AssocAlgebra tensor_algebra(const AssocAlgebra& a, const AssocAlgebra& b) {
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  auto kron_vec = [&](const SparseVec& x, const SparseVec& y) {
    SparseVec out(d);
    for (const auto& [i, c] : x)
      for (const auto& [j, e] : y) out.add(i * db + j, c * e);
    return out;
  };
  std::vector<SparseVec> mult;
  mult.reserve(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < db; ++l) mult.push_back(kron_vec(a.product(i, k), b.product(j, l)));
  return AssocAlgebra(d, std::move(mult), kron_vec(a.identity(), b.identity()), a.name() + "⊗" + b.name());
}

/// Change of basis: new basis vector k is column k of p (an invertible dim x dim matrix).
inline AssocAlgebra rebase(const AssocAlgebra& a, const Matrix& p) {
  auto inv = p.inverse();
  if (!inv || p.rows() != a.dim()) throw PreconditionFailed("basis change must be invertible of size dim");
  const std::size_t d = a.dim();
  std::vector<SparseVec> mult;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mult.push_back(inv->apply(a.multiply(p.column(i), p.column(j))));
  return AssocAlgebra(d, std::move(mult), inv->apply(a.identity()), a.name());
}

enum class Side { left, right };

/// Module over an algebra by action matrices on basis elements.
/// Left modules satisfy A(xy) = A(x)A(y); right modules A(xy) = A(y)A(x).
class AlgModule {
 public:
  AlgModule() = default;
  AlgModule(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> action, Side side = Side::left)
      : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)), side_(side) {
    if (!algebra_) throw PreconditionFailed("module needs an algebra");
    if (action_.size() != algebra_->dim()) throw DimensionMismatch("one action matrix per algebra basis element");
    for (const auto& m : action_)
      if (m.rows() != dim_ || m.cols() != dim_) throw DimensionMismatch("action matrix has wrong shape");
  }

  static AlgModule regular(const AlgebraPtr& a, Side side = Side::left) {
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i)
      act.push_back(side == Side::left ? a->left_regular(a->basis_vector(i)) : a->right_regular(a->basis_vector(i)));
    return AlgModule(a, a->dim(), std::move(act), side);
  }

  [[nodiscard]] const AssocAlgebra& algebra() const { return *algebra_; }
  [[nodiscard]] const AlgebraPtr& algebra_ptr() const { return algebra_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] Side side() const { return side_; }
  [[nodiscard]] const Matrix& action(std::size_t i) const { return action_.at(i); }
  [[nodiscard]] const std::vector<Matrix>& actions() const { return action_; }

  [[nodiscard]] Matrix act(const SparseVec& x) const {
    Matrix m(dim_, dim_);
    for (const auto& [i, c] : x) m += c * action_[i];
    return m;
  }

  /// Unital homomorphism law on all basis pairs.
  [[nodiscard]] CheckResult check() const {
    CheckResult r("module");
    r.expect(act(algebra_->identity()) == Matrix::identity(dim_),
             [] { return Witness{"identity does not act as the identity", {}}; });
    const std::size_t d = algebra_->dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Matrix lhs = act(algebra_->product(i, j));
        const Matrix rhs = side_ == Side::left ? action_[i] * action_[j] : action_[j] * action_[i];
        r.expect(lhs == rhs, [&] {
          return Witness{"action is not multiplicative", {{"i", i}, {"j", j}, {"lhs", lhs.str()}, {"rhs", rhs.str()}}};
        });
      }
    return r;
  }

  /// Dual module: transposed actions, opposite side.
  [[nodiscard]] AlgModule dual() const {
    std::vector<Matrix> act;
    for (const auto& m : action_) act.push_back(m.transpose());
    return AlgModule(algebra_, dim_, std::move(act), side_ == Side::left ? Side::right : Side::left);
  }

  /// Same module in the basis given by the columns of p.
  [[nodiscard]] AlgModule rebased(const Matrix& p) const {
    auto inv = p.inverse();
    if (!inv || p.rows() != dim_) throw PreconditionFailed("basis change must be invertible");
    std::vector<Matrix> act;
    for (const auto& m : action_) act.push_back(*inv * m * p);
    return AlgModule(algebra_, dim_, std::move(act), side_);
  }

  /// Restriction to an invariant subspace given by an injective inclusion matrix.
  [[nodiscard]] AlgModule restricted(const Matrix& inclusion) const {
    if (inclusion.rows() != dim_) throw DimensionMismatch("inclusion has wrong row count");
    std::vector<Matrix> act;
    for (const auto& m : action_) {
      auto x = solve(inclusion, m * inclusion);
      if (!x) throw PreconditionFailed("subspace is not invariant");
      act.push_back(std::move(*x));
    }
    return AlgModule(algebra_, inclusion.cols(), std::move(act), side_);
  }

  /// Pulls the action back along an algebra homomorphism given on basis elements.
  [[nodiscard]] AlgModule pulled_back(const AlgebraPtr& source, const std::vector<SparseVec>& images) const {
    std::vector<Matrix> act;
    for (const auto& x : images) act.push_back(this->act(x));
    return AlgModule(source, dim_, std::move(act), side_);
  }

 private:
  AlgebraPtr algebra_;
  std::size_t dim_ = 0;
  std::vector<Matrix> action_;
  Side side_ = Side::left;
};

/// Two-sided module: commuting left action of one algebra and right action of another.
class Bimod {
 public:
  Bimod() = default;
  Bimod(AlgebraPtr left_algebra, AlgebraPtr right_algebra, std::size_t dim, std::vector<Matrix> left,
        std::vector<Matrix> right)
      : left_(std::move(left_algebra), dim, std::move(left), Side::left),
        right_(std::move(right_algebra), dim, std::move(right), Side::right) {}

  static Bimod regular(const AlgebraPtr& a) {
    const AlgModule l = AlgModule::regular(a, Side::left), r = AlgModule::regular(a, Side::right);
    return Bimod(a, a, a->dim(), l.actions(), r.actions());
  }

  [[nodiscard]] std::size_t dim() const { return left_.dim(); }
  [[nodiscard]] const AlgModule& as_left() const { return left_; }
  [[nodiscard]] const AlgModule& as_right() const { return right_; }
  [[nodiscard]] const AssocAlgebra& left_algebra() const { return left_.algebra(); }
  [[nodiscard]] const AssocAlgebra& right_algebra() const { return right_.algebra(); }

  [[nodiscard]] CheckResult check() const {
    CheckResult r("bimodule");
    r.merge(left_.check());
    r.merge(right_.check());
    for (std::size_t a = 0; a < left_algebra().dim(); ++a)
      for (std::size_t b = 0; b < right_algebra().dim(); ++b)
        r.expect(left_.action(a) * right_.action(b) == right_.action(b) * left_.action(a),
                 [&] { return Witness{"left and right actions do not commute", {{"left", a}, {"right", b}}}; });
    return r;
  }

 private:
  AlgModule left_;
  AlgModule right_;
};

/// M ⊗ N over A ⊗ B with Kronecker actions (index m*dim(N) + n); both modules on the same side.
inline AlgModule tensor_module(const AlgModule& m, const AlgModule& n, AlgebraPtr product = nullptr) {
  if (m.side() != n.side()) throw PreconditionFailed("tensor factors must act from the same side");
  if (!product) product = share(tensor_algebra(m.algebra(), n.algebra()));
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < m.algebra().dim(); ++a)
    for (std::size_t b = 0; b < n.algebra().dim(); ++b) act.push_back(kron(m.action(a), n.action(b)));
  return AlgModule(product, m.dim() * n.dim(), std::move(act), m.side());
}

inline Bimod tensor_bimodule(const Bimod& x, const Bimod& y, AlgebraPtr left = nullptr, AlgebraPtr right = nullptr) {
  AlgModule l = tensor_module(x.as_left(), y.as_left(), std::move(left));
  AlgModule r = tensor_module(x.as_right(), y.as_right(), std::move(right));
  return Bimod(l.algebra_ptr(), r.algebra_ptr(), l.dim(), l.actions(), r.actions());
}

inline AlgModule direct_sum(const AlgModule& m, const AlgModule& n) {
  if (m.side() != n.side() || !(m.algebra() == n.algebra())) throw PreconditionFailed("summands differ in algebra or side");
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < m.algebra().dim(); ++a) {
    Matrix s(m.dim() + n.dim(), m.dim() + n.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) s(i, j) = m.action(a)(i, j);
    for (std::size_t i = 0; i < n.dim(); ++i)
      for (std::size_t j = 0; j < n.dim(); ++j) s(m.dim() + i, m.dim() + j) = n.action(a)(i, j);
    act.push_back(std::move(s));
  }
  return AlgModule(m.algebra_ptr(), m.dim() + n.dim(), std::move(act), m.side());
}

/// Basis of Hom_A(M, N): matrices f (dim N x dim M) with f A_M(a) = A_N(a) f for every basis a.
inline std::vector<Matrix> hom_space(const AlgModule& m, const AlgModule& n) {
  if (m.side() != n.side()) throw PreconditionFailed("hom_space needs modules on the same side");
  if (!(m.algebra() == n.algebra())) throw PreconditionFailed("hom_space needs modules over the same algebra");
  const std::size_t dm = m.dim(), dn = n.dim(), unknowns = dm * dn;
  // Unknown f(i, j) sits at i*dm + j.
  Subspace rows(unknowns);
  for (std::size_t a = 0; a < m.algebra().dim(); ++a) {
    const Matrix& am = m.action(a);
    const Matrix& an = n.action(a);
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dm; ++j) {
        SparseVec row(unknowns);
        for (std::size_t k = 0; k < dm; ++k)
          if (!am(k, j).is_zero()) row.add(i * dm + k, am(k, j));
        for (std::size_t k = 0; k < dn; ++k)
          if (!an(i, k).is_zero()) row.add(k * dm + j, -an(i, k));
        if (!row.is_zero()) rows.add_generator(row);
      }
  }
  std::vector<Matrix> out;
  for (const auto& v : nullspace(rows)) out.push_back(Matrix::unflatten(v, dn, dm));
  return out;
}

/// Column space basis of a matrix as an inclusion matrix (columns independent).
inline Matrix column_basis(const Matrix& m) {
  Subspace s(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) s.add_generator(m.column(j));
  return Matrix::from_columns(s.basis(), m.rows());
}

inline Matrix span_basis(const std::vector<SparseVec>& vectors, std::size_t dim) {
  Subspace s(dim);
  for (const auto& v : vectors) s.add_generator(v);
  return Matrix::from_columns(s.basis(), dim);
}

}  // namespace zhuforge
