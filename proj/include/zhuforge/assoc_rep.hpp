#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "zhuforge/assoc.hpp"
#include "zhuforge/errors.hpp"
#include "zhuforge/matrix.hpp"
#include "zhuforge/rational.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/sparse.hpp"

namespace zhuforge {

/// Characteristic polynomial det(t I - m), coefficients c_0..c_n (c_n = 1), by Faddeev–LeVerrier.
inline std::vector<Rational> characteristic_polynomial(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = Rational(1);
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    c[n - k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

/// Rational roots of a polynomial with rational coefficients (rational root test).
inline std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  std::vector<Rational> roots;
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() <= 1) return roots;
  std::size_t shift = 0;
  while (coeffs[shift].is_zero()) ++shift;
  if (shift > 0) roots.emplace_back(0);
  mpz_class lcm = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.raw().get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : coeffs) {
    mpq_class s = c.raw() * lcm;
    ints.push_back(s.get_num());
  }
  auto divisors = [](mpz_class x) {
    std::vector<mpz_class> out;
    x = abs(x);
    if (x > mpz_class("1000000000000")) return out;  // too large to enumerate; treated as no rational root
    for (mpz_class d = 1; d * d <= x; ++d)
      if (x % d == 0) {
        out.push_back(d);
        if (d * d != x) out.push_back(x / d);
      }
    return out;
  };
  const auto ps = divisors(ints[shift]);
  const auto qs = divisors(ints.back());
  auto eval = [&](const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t k = ints.size(); k-- > shift;) acc = acc * x + ints[k];
    return acc;
  };
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int sgn : {1, -1}) {
        mpq_class x(p * sgn, q);
        x.canonicalize();
        if (eval(x) != 0) continue;
        Rational r{x};
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace detail {

constexpr long kSearchLimit = 10'000'000;

/// n = core * root^2 with core square-free (sign kept in core), by trial division.
inline std::pair<mpz_class, mpz_class> squarefree_split(const mpz_class& n) {
  mpz_class rest = abs(n), core = 1, root = 1;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    if (p > kSearchLimit) throw PreconditionFailed("integer too large to factor by trial division: " + n.get_str());
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) root *= p;
    if (e % 2 == 1) core *= p;
  }
  core *= rest;
  if (sgn(n) < 0) core = -core;
  return {core, root};
}

using Triple = std::array<mpz_class, 3>;

/// Nontrivial (x, y, z) with a x^2 + b y^2 = z^2 for square-free nonzero a, b; nullopt when there is none.
/// Descent: t^2 - a = b k with |k| < |b| reduces b to the square-free part of k.
inline std::optional<Triple> legendre(const mpz_class& a, const mpz_class& b) {
  if (a == 1) return Triple{1, 0, 1};
  if (b == 1) return Triple{0, 1, 1};
  if (a < 0 && b < 0) return std::nullopt;
  if (abs(a) > abs(b)) {
    auto s = legendre(b, a);
    if (!s) return std::nullopt;
    return Triple{(*s)[1], (*s)[0], (*s)[2]};
  }
  const mpz_class m = abs(b);
  if (m > kSearchLimit) throw PreconditionFailed("coefficient too large for the square-root search: " + m.get_str());
  for (mpz_class t = 0; 2 * t <= m; ++t) {
    const mpz_class d = t * t - a;
    if (d % m != 0) continue;
    const auto [k0, r] = squarefree_split(d / b);
    auto s = legendre(a, k0);
    if (!s) return std::nullopt;
    const auto& [x1, y1, z1] = *s;
    // (t + √a)(z1 + x1√a) has norm b (k0 r y1)^2.
    return Triple{t * x1 + z1, k0 * r * y1, t * z1 + a * x1};
  }
  return std::nullopt;
}

/// Nonzero c with c^T g c = 0 for a symmetric nondegenerate 3x3 g; nullopt when the form is anisotropic.
inline std::optional<std::vector<Rational>> isotropic_vector(const Matrix& g) {
  constexpr std::size_t n = 3;
  auto form = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational acc;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc += x[i] * g(i, j) * y[j];
    return acc;
  };
  std::vector<std::vector<Rational>> ortho;
  std::vector<Rational> diag;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(n);
    v[i] = Rational(1);
    for (std::size_t k = 0; k < ortho.size(); ++k) {
      const Rational c = form(v, ortho[k]) / diag[k];
      for (std::size_t j = 0; j < n; ++j) v[j] -= c * ortho[k][j];
    }
    const Rational d = form(v, v);
    if (d.is_zero()) return v;
    ortho.push_back(std::move(v));
    diag.push_back(d);
  }
  // d_i x_i^2 = core_i (root_i den_i^{-1} x_i)^2 with num_i den_i = core_i root_i^2.
  std::array<mpz_class, n> core, scale;
  for (std::size_t i = 0; i < n; ++i) {
    const mpq_class& q = diag[i].raw();
    auto [c, r] = squarefree_split(q.get_num() * q.get_den());
    core[i] = c;
    scale[i] = r;
  }
  // Divide by -core_2 and clear it: (-c0 c2) w0^2 + (-c1 c2) w1^2 = (c2 w2)^2.
  const auto [ca, ra] = squarefree_split(-core[0] * core[2]);
  const auto [cb, rb] = squarefree_split(-core[1] * core[2]);
  const auto sol = legendre(ca, cb);
  if (!sol) return std::nullopt;
  std::array<mpq_class, n> w{mpq_class((*sol)[0], ra), mpq_class((*sol)[1], rb), mpq_class((*sol)[2], core[2])};
  for (auto& x : w) x.canonicalize();
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class xi = w[i] * diag[i].raw().get_den() / scale[i];
    xi.canonicalize();
    for (std::size_t j = 0; j < n; ++j) c[j] += Rational(xi) * ortho[i][j];
  }
  return c;
}

}  // namespace detail

/// Algebra spanned by the action matrices of a module, with the radical of its trace form.
struct ImageAlgebra {
  std::vector<Matrix> basis;
  std::vector<Matrix> radical;
};

inline ImageAlgebra image_algebra(const AlgModule& m) {
  ImageAlgebra out;
  Subspace span(m.dim() * m.dim());
  for (const auto& a : m.actions()) span.add_generator(a.flatten());
  for (const auto& v : span.basis()) out.basis.push_back(Matrix::unflatten(v, m.dim(), m.dim()));
  const std::size_t d = out.basis.size();
  Matrix gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) gram(i, j) = (out.basis[i] * out.basis[j]).trace();
  for (const auto& k : gram.kernel()) {
    Matrix x(m.dim(), m.dim());
    for (const auto& [i, c] : k) x += c * out.basis[i];
    out.radical.push_back(std::move(x));
  }
  return out;
}

/// Radical of A as the kernel of the trace form tr(L_{xy}) of the regular representation.
inline std::vector<SparseVec> radical(const AssocAlgebra& a) {
  const std::size_t d = a.dim();
  std::vector<Rational> tr(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) tr[k] += a.product(k, j).get(j);
  Matrix form(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, c] : a.product(i, j)) form(i, j) += c * tr[k];
  return form.kernel();
}

inline bool is_semisimple(const AssocAlgebra& a) { return radical(a).empty(); }

/// A submodule with its inclusion (columns = basis of the submodule in ambient coordinates).
struct Submodule {
  AlgModule module;
  Matrix inclusion;
};

namespace detail {

/// A proper nonzero submodule of m, or nullopt when m is irreducible with End = Q.
/// Throws when End(m) is larger than Q and no rational splitting element is found.
inline std::optional<Matrix> proper_submodule(const AlgModule& m) {
  if (m.dim() <= 1) return std::nullopt;
  const ImageAlgebra e = image_algebra(m);
  if (!e.radical.empty()) {
    std::vector<SparseVec> cols;
    for (const auto& x : e.radical)
      for (std::size_t j = 0; j < m.dim(); ++j) cols.push_back(x.column(j));
    return span_basis(cols, m.dim());
  }
  const auto ends = hom_space(m, m);
  if (ends.size() <= 1) return std::nullopt;
  // Cyclic submodules are proper when the irreducible is smaller than its multiplicity.
  for (std::size_t j = 0; j < m.dim(); ++j) {
    std::vector<SparseVec> images;
    for (const auto& b : e.basis) images.push_back(b.column(j));
    const Matrix cyc = span_basis(images, m.dim());
    if (cyc.cols() > 0 && cyc.cols() < m.dim()) return cyc;
  }
  std::vector<Matrix> candidates = ends;
  for (std::size_t k = 1; k < ends.size(); ++k) candidates.push_back(ends[k - 1] + Rational(static_cast<long>(k + 1)) * ends[k]);
  const Matrix id = Matrix::identity(m.dim());
  for (const auto& phi : candidates) {
    for (const auto& lambda : rational_roots(characteristic_polynomial(phi))) {
      const Matrix shifted = phi - lambda * id;
      if (shifted.is_zero()) continue;
      auto ker = shifted.kernel();
      if (!ker.empty()) return Matrix::from_columns(ker, m.dim());
    }
  }
  // End(M) of dimension 4 whose trace-zero part squares to scalars is a quaternion algebra: a nilpotent
  // element exists exactly when it is M2(Q), and its kernel is a submodule.
  if (ends.size() == 4) {
    const Rational n(static_cast<long>(m.dim()));
    Subspace traceless(m.dim() * m.dim());
    for (const auto& phi : ends) traceless.add_generator((phi - (phi.trace() / n) * id).flatten());
    std::vector<Matrix> psi;
    for (const auto& v : traceless.basis()) psi.push_back(Matrix::unflatten(v, m.dim(), m.dim()));
    bool quaternion = psi.size() == 3;
    Matrix g(3, 3);
    for (std::size_t i = 0; quaternion && i < psi.size(); ++i)
      for (std::size_t j = 0; j < psi.size(); ++j) {
        const Matrix anti = psi[i] * psi[j] + psi[j] * psi[i];
        g(i, j) = anti.trace() / (Rational(2) * n);
        if (!(anti == (Rational(2) * g(i, j)) * id)) quaternion = false;
      }
    if (quaternion) {
      if (auto c = detail::isotropic_vector(g)) {
        Matrix x(m.dim(), m.dim());
        for (std::size_t i = 0; i < 3; ++i) x += (*c)[i] * psi[i];
        auto ker = x.kernel();
        if (!x.is_zero() && !ker.empty()) return Matrix::from_columns(ker, m.dim());
      }
      throw PreconditionFailed("field not splitting: End(M) is a quaternion division algebra over Q");
    }
  }
  throw PreconditionFailed("field not splitting: End(M) has dimension " + std::to_string(ends.size()) +
                           " and no rational splitting element was found");
}

}  // namespace detail

/// A minimal nonzero submodule (irreducible with End = Q), by repeated splitting.
inline Submodule irreducible_submodule(const AlgModule& m) {
  if (m.dim() == 0) throw PreconditionFailed("zero module has no irreducible submodule");
  Matrix inclusion = Matrix::identity(m.dim());
  AlgModule current = m;
  while (auto sub = detail::proper_submodule(current)) {
    inclusion = inclusion * *sub;
    current = current.restricted(*sub);
  }
  return {current, inclusion};
}

inline bool is_irreducible(const AlgModule& m) {
  return m.dim() > 0 && irreducible_submodule(m).module.dim() == m.dim();
}

struct Summand {
  AlgModule module;
  Matrix inclusion;
  Matrix projection;
  std::size_t type = 0;
};

struct Decomposition {
  std::vector<Summand> summands;
  std::vector<AlgModule> types;
  std::vector<std::size_t> multiplicities;
};

/// Complete decomposition into irreducibles, grouped by isomorphism type.
/// Requires the radical of the algebra to act by zero.
inline Decomposition decompose(const AlgModule& m) {
  for (const auto& r : radical(m.algebra())) {
    const Matrix x = m.act(r);
    if (!x.is_zero())
      throw PreconditionFailed("module is not semisimple: radical element " + r.str() + " acts as " + x.str());
  }
  struct Piece {
    AlgModule module;
    Matrix inclusion;
  };
  std::vector<Piece> pending{{m, Matrix::identity(m.dim())}};
  Decomposition out;
  while (!pending.empty()) {
    Piece p = std::move(pending.back());
    pending.pop_back();
    if (p.module.dim() == 0) continue;
    Submodule s = irreducible_submodule(p.module);
    Matrix sub_inclusion = p.inclusion * s.inclusion;
    if (s.module.dim() < p.module.dim()) {
      // Complement = kernel of a module retraction rho: U -> S with rho o iota = id.
      const auto homs = hom_space(p.module, s.module);
      const std::size_t ds = s.module.dim();
      // Solve sum_k c_k (homs[k] o iota) = id as [system | -id] (c, 1) = 0.
      Matrix aug(ds * ds, homs.size() + 1);
      for (std::size_t k = 0; k < homs.size(); ++k)
        for (const auto& [i, c] : (homs[k] * s.inclusion).flatten()) aug(i, k) = c;
      for (std::size_t i = 0; i < ds; ++i) aug(i * ds + i, homs.size()) = Rational(-1);
      Matrix rho(ds, p.module.dim());
      bool found = false;
      for (const auto& v : aug.kernel()) {
        const Rational last = v.get(homs.size());
        if (last.is_zero()) continue;
        for (std::size_t k = 0; k < homs.size(); ++k) rho += (v.get(k) / last) * homs[k];
        found = true;
        break;
      }
      if (!found) throw PreconditionFailed("no module complement found: module is not semisimple");
      const auto ker = rho.kernel();
      const Matrix k_incl = Matrix::from_columns(ker, p.module.dim());
      pending.push_back({p.module.restricted(k_incl), p.inclusion * k_incl});
    }
    std::size_t type = out.types.size();
    for (std::size_t t = 0; t < out.types.size(); ++t)
      if (out.types[t].dim() == s.module.dim() && !hom_space(s.module, out.types[t]).empty()) {
        type = t;
        break;
      }
    if (type == out.types.size()) {
      out.types.push_back(s.module);
      out.multiplicities.push_back(0);
    }
    ++out.multiplicities[type];
    out.summands.push_back({s.module, sub_inclusion, Matrix(), type});
  }
  std::size_t total = 0;
  for (const auto& s : out.summands) total += s.module.dim();
  if (total != m.dim()) throw PreconditionFailed("decomposition lost dimensions");
  Matrix all(m.dim(), m.dim());
  std::size_t col = 0;
  for (const auto& s : out.summands)
    for (std::size_t j = 0; j < s.module.dim(); ++j, ++col)
      for (std::size_t i = 0; i < m.dim(); ++i) all(i, col) = s.inclusion(i, j);
  auto inv = all.inverse();
  if (!inv) throw PreconditionFailed("summands are not independent");
  col = 0;
  for (auto& s : out.summands) {
    s.projection = s.inclusion * inv->rows_block(col, s.module.dim());
    col += s.module.dim();
  }
  return out;
}

/// Output of the tensor factorization of an irreducible A⊗B-module.
struct TensorFactorization {
  AlgModule m1;        ///< irreducible A-module
  AlgModule m2;        ///< Hom_A(M1, M) as a B-module
  Matrix iso;          ///< m1 ⊗ f -> f(m1), index i*dim(M2) + k
  Matrix iso_inverse;
  CheckResult checks{"factorization"};
};

/// Splits an irreducible module over A ⊗ B as M1 ⊗ M2 with the evaluation isomorphism.
inline TensorFactorization factor_tensor_module(const AlgebraPtr& a, const AlgebraPtr& b, const AlgModule& m) {
  const std::size_t da = a->dim(), db = b->dim();
  if (m.algebra().dim() != da * db) throw DimensionMismatch("module algebra is not A ⊗ B");
  if (m.side() != Side::left) throw PreconditionFailed("factorization expects a left module");
  {
    Submodule s = irreducible_submodule(m);
    if (s.module.dim() != m.dim())
      throw PreconditionFailed("module is not irreducible: invariant subspace with basis " + s.inclusion.str());
  }
  auto over_a = [&](std::size_t i) {
    SparseVec x(da * db);
    for (const auto& [j, c] : b->identity()) x.add(i * db + j, c);
    return x;
  };
  auto over_b = [&](std::size_t j) {
    SparseVec x(da * db);
    for (const auto& [i, c] : a->identity()) x.add(i * db + j, c);
    return x;
  };
  std::vector<SparseVec> a_images, b_images;
  for (std::size_t i = 0; i < da; ++i) a_images.push_back(over_a(i));
  for (std::size_t j = 0; j < db; ++j) b_images.push_back(over_b(j));
  const AlgModule restricted_a = m.pulled_back(a, a_images);
  Submodule s1 = irreducible_submodule(restricted_a);
  const AlgModule& m1 = s1.module;
  if (hom_space(m1, m1).size() != 1) throw PreconditionFailed("field not splitting: End_A(M1) is larger than Q");
  const auto fs = hom_space(m1, restricted_a);
  const std::size_t d1 = m1.dim(), d2 = fs.size(), dm = m.dim();
  if (d2 == 0) throw PreconditionFailed("Hom_A(M1, M) vanishes");
  const Subspace f_span = Subspace::echelonize([&] {
    std::vector<SparseVec> v;
    for (const auto& f : fs) v.push_back(f.flatten());
    return v;
  }(), dm * d1);
  std::vector<Matrix> b_action;
  for (std::size_t j = 0; j < db; ++j) {
    const Matrix bj = m.act(b_images[j]);
    Matrix act(d2, d2);
    for (std::size_t k = 0; k < d2; ++k) {
      auto coords = f_span.membership((bj * fs[k]).flatten());
      if (!coords) throw PreconditionFailed("B does not preserve Hom_A(M1, M)");
      for (const auto& [r, c] : *coords) act(r, k) = c;
    }
    b_action.push_back(std::move(act));
  }
  AlgModule m2(b, d2, std::move(b_action));
  Matrix iso(dm, d1 * d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = 0; k < d2; ++k)
      for (std::size_t r = 0; r < dm; ++r) iso(r, i * d2 + k) = fs[k](r, i);
  TensorFactorization out{m1, m2, iso, Matrix(), CheckResult("factorization")};
  out.checks.merge(m2.check());
  auto inv = iso.inverse();
  out.checks.expect(inv.has_value(), [&] {
    return Witness{"evaluation map is not invertible", {{"dim_M", dm}, {"dim_M1", d1}, {"dim_M2", d2}}};
  });
  if (inv) out.iso_inverse = *inv;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      const Matrix lhs = iso * kron(m1.action(i), m2.action(j));
      const Matrix rhs = m.action(i * db + j) * iso;
      out.checks.expect(lhs == rhs, [&] { return Witness{"evaluation map is not an intertwiner", {{"a", i}, {"b", j}}}; });
    }
  return out;
}

/// Mr ⊗_A Ml as the quotient of Mr ⊗ Ml (index i*dim(Ml) + j) by (m·a)⊗m' - m⊗(a·m').
struct TensorOverAlgebra {
  std::size_t right_dim = 0;
  std::size_t left_dim = 0;
  Quotient quotient;
  [[nodiscard]] std::size_t dim() const { return quotient.dim(); }
};

inline TensorOverAlgebra tensor_over_algebra(const AlgModule& mr, const AlgModule& ml) {
  if (mr.side() != Side::right || ml.side() != Side::left)
    throw PreconditionFailed("tensor_over_algebra needs a right module and a left module");
  if (!(mr.algebra() == ml.algebra())) throw PreconditionFailed("modules are over different algebras");
  const std::size_t dr = mr.dim(), dl = ml.dim(), d = dr * dl;
  Subspace rel(d);
  for (std::size_t a = 0; a < mr.algebra().dim(); ++a) {
    const Matrix& ra = mr.action(a);
    const Matrix& la = ml.action(a);
    for (std::size_t i = 0; i < dr; ++i)
      for (std::size_t j = 0; j < dl; ++j) {
        SparseVec v(d);
        for (std::size_t k = 0; k < dr; ++k)
          if (!ra(k, i).is_zero()) v.add(k * dl + j, ra(k, i));
        for (std::size_t k = 0; k < dl; ++k)
          if (!la(k, j).is_zero()) v.add(i * dl + k, -la(k, j));
        if (!v.is_zero()) rel.add_generator(v);
      }
  }
  return {dr, dl, Quotient(d, std::move(rel))};
}

/// Left A-module X ⊗_A M for a bimodule X over (A, A) and a left A-module M.
inline AlgModule induced_left_module(const Bimod& x, const AlgModule& m) {
  const TensorOverAlgebra t = tensor_over_algebra(x.as_right(), m);
  const std::size_t d = t.dim();
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < x.left_algebra().dim(); ++a) {
    const Matrix big = kron(x.as_left().action(a), Matrix::identity(m.dim()));
    Matrix small(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      const SparseVec img = t.quotient.project(big.apply(t.quotient.lift(SparseVec::unit(d, k))));
      for (const auto& [r, c] : img) small(r, k) = c;
    }
    act.push_back(std::move(small));
  }
  return AlgModule(x.as_left().algebra_ptr(), d, std::move(act), Side::left);
}

/// Both sides of dim (M ⊗_A M') · dim (N ⊗_B N') = dim (M⊗N) ⊗_{A⊗B} (M'⊗N').
inline CheckResult check_lemica(const AlgModule& m, const AlgModule& mp, const AlgModule& n, const AlgModule& np) {
  CheckResult r("lemica");
  const std::size_t lhs = tensor_over_algebra(m, mp).dim() * tensor_over_algebra(n, np).dim();
  AlgebraPtr ab = share(tensor_algebra(m.algebra(), n.algebra()));
  const std::size_t rhs = tensor_over_algebra(tensor_module(m, n, ab), tensor_module(mp, np, ab)).dim();
  r.expect(lhs == rhs, [&] { return Witness{"tensor dimensions differ", {{"lhs", lhs}, {"rhs", rhs}}}; });
  r.notes.push_back("lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs));
  return r;
}

struct FusionForms {
  std::size_t hom_form = 0;   ///< dim Hom_A(X ⊗_A M2, M3)
  std::size_t dual_form = 0;  ///< dim M3^* ⊗_A X ⊗_A M2
  [[nodiscard]] bool agree() const { return hom_form == dual_form; }
};

/// Fusion dimension in both forms. M3 must be semisimple (radical of A acts by zero).
inline FusionForms fusion_forms(const AssocAlgebra& av, const Bimod& am1, const AlgModule& m2, const AlgModule& m3) {
  if (!(am1.left_algebra() == av) || !(am1.right_algebra() == av) || !(m2.algebra() == av) || !(m3.algebra() == av))
    throw PreconditionFailed("fusion data must all live over the same algebra");
  for (const auto& rad : radical(av))
    if (!m3.act(rad).is_zero()) throw PreconditionFailed("M3 is not semisimple: a radical element acts nonzero");
  const AlgModule x = induced_left_module(am1, m2);
  FusionForms f;
  f.hom_form = hom_space(x, m3).size();
  f.dual_form = tensor_over_algebra(m3.dual(), x).dim();
  return f;
}

inline std::size_t fusion_dim(const AssocAlgebra& av, const Bimod& am1, const AlgModule& m2, const AlgModule& m3) {
  const FusionForms f = fusion_forms(av, am1, m2, m3);
  if (!f.agree())
    throw PreconditionFailed("fusion forms disagree: hom form " + std::to_string(f.hom_form) + ", dual form " +
                             std::to_string(f.dual_form));
  return f.hom_form;
}

/// Named fusion data: an algebra with candidate bimodules and top-level modules.
struct FusionData {
  AlgebraPtr algebra;
  std::vector<std::pair<std::string, Bimod>> bimodules;
  std::vector<std::pair<std::string, AlgModule>> modules;
};

struct FusionEntry {
  std::string bimodule, m2, m3;
  std::size_t hom_form = 0, dual_form = 0;
};

struct FusionTable {
  std::vector<FusionEntry> entries;
  [[nodiscard]] bool all_binary() const {
    return std::all_of(entries.begin(), entries.end(), [](const FusionEntry& e) { return e.hom_form <= 1; });
  }
  [[nodiscard]] bool forms_agree() const {
    return std::all_of(entries.begin(), entries.end(), [](const FusionEntry& e) { return e.hom_form == e.dual_form; });
  }
};

inline FusionTable fusion_table(const FusionData& data) {
  FusionTable t;
  for (const auto& [bn, b] : data.bimodules)
    for (const auto& [n2, m2] : data.modules)
      for (const auto& [n3, m3] : data.modules) {
        const FusionForms f = fusion_forms(*data.algebra, b, m2, m3);
        t.entries.push_back({bn, n2, n3, f.hom_form, f.dual_form});
      }
  return t;
}

/// Tensor dataset: algebra A1⊗A2, bimodules and modules paired factor by factor.
inline FusionData tensor_fusion_data(const FusionData& d1, const FusionData& d2) {
  FusionData out;
  out.algebra = share(tensor_algebra(*d1.algebra, *d2.algebra));
  for (const auto& [n1, b1] : d1.bimodules)
    for (const auto& [n2, b2] : d2.bimodules)
      out.bimodules.emplace_back(n1 + "⊗" + n2, tensor_bimodule(b1, b2, out.algebra, out.algebra));
  for (const auto& [n1, m1] : d1.modules)
    for (const auto& [n2, m2] : d2.modules) out.modules.emplace_back(n1 + "⊗" + n2, tensor_module(m1, m2, out.algebra));
  return out;
}

/// Fusion over the tensor data equals the product of factor fusion dimensions on every sector,
/// both forms agree everywhere, and 0/1 factor tables give a 0/1 product table.
inline Report check_fusion_multiplicativity(const FusionData& d1, const FusionData& d2) {
  Report rep;
  rep.suite = "fusion-mult";
  const FusionTable t1 = fusion_table(d1), t2 = fusion_table(d2);
  const FusionData d12 = tensor_fusion_data(d1, d2);
  CheckResult mult("multiplicativity"), forms("forms_agree"), binary("binary_flag");
  const std::size_t nb2 = d2.bimodules.size(), nm1 = d1.modules.size(), nm2 = d2.modules.size();
  auto idx = [](std::size_t b, std::size_t x, std::size_t y, std::size_t nm) { return (b * nm + x) * nm + y; };
  FusionTable t12;
  for (std::size_t b1 = 0; b1 < d1.bimodules.size(); ++b1)
    for (std::size_t b2 = 0; b2 < nb2; ++b2)
      for (std::size_t x1 = 0; x1 < nm1; ++x1)
        for (std::size_t x2 = 0; x2 < nm2; ++x2)
          for (std::size_t y1 = 0; y1 < nm1; ++y1)
            for (std::size_t y2 = 0; y2 < nm2; ++y2) {
              const auto& bm = d12.bimodules[b1 * nb2 + b2];
              const auto& mx = d12.modules[x1 * nm2 + x2];
              const auto& my = d12.modules[y1 * nm2 + y2];
              const FusionForms f = fusion_forms(*d12.algebra, bm.second, mx.second, my.second);
              t12.entries.push_back({bm.first, mx.first, my.first, f.hom_form, f.dual_form});
              const std::size_t want = t1.entries[idx(b1, x1, y1, nm1)].hom_form * t2.entries[idx(b2, x2, y2, nm2)].hom_form;
              mult.expect(f.hom_form == want, [&] {
                return Witness{"fusion dimension is not multiplicative",
                               {{"bimodule", bm.first}, {"m2", mx.first}, {"m3", my.first}, {"got", f.hom_form},
                                {"product", want}}};
              });
              forms.expect(f.agree(), [&] {
                return Witness{"fusion forms disagree", {{"bimodule", bm.first}, {"hom", f.hom_form}, {"dual", f.dual_form}}};
              });
            }
  for (const auto* t : {&t1, &t2})
    forms.expect(t->forms_agree(), [] { return Witness{"fusion forms disagree on a factor table", {}}; });
  if (t1.all_binary() && t2.all_binary()) {
    binary.expect(t12.all_binary(), [] { return Witness{"0/1 factor tables produced an entry above 1", {}}; });
  } else {
    binary.skip();
    binary.notes.push_back("a factor table has entries above 1; the 0/1 implication is vacuous");
  }
  rep.parameters = {{"factor_sectors", {t1.entries.size(), t2.entries.size()}}, {"tensor_sectors", t12.entries.size()},
                    {"factor_binary", {t1.all_binary(), t2.all_binary()}}, {"tensor_binary", t12.all_binary()}};
  rep.checks = {mult, forms, binary};
  return rep;
}

/// Dimension, semisimplicity, irreducible types of the regular module, and semisimplicity of A ⊗ other.
inline json rationality_witness(const AssocAlgebra& a, const AssocAlgebra& other) {
  json out = {{"dim", a.dim()}, {"semisimple", is_semisimple(a)}};
  if (is_semisimple(a)) {
    const Decomposition d = decompose(AlgModule::regular(share(a)));
    json types = json::array();
    for (std::size_t t = 0; t < d.types.size(); ++t)
      types.push_back({{"dim", d.types[t].dim()}, {"multiplicity", d.multiplicities[t]}});
    out["irreducible_types"] = d.types.size();
    out["regular_summands"] = d.summands.size();
    out["types"] = types;
  }
  out["tensor_partner"] = other.name();
  out["tensor_semisimple"] = is_semisimple(tensor_algebra(a, other));
  return out;
}

/// Q⊕Q presented as Q[x]/(x^2 - x): the regular bimodule and the two one-dimensional simples.
inline FusionData idempotent_fusion_data() {
  FusionData d;
  d.algebra = share(polynomial_quotient({Rational(0), Rational(-1)}, "Q+Q"));
  d.bimodules.emplace_back("R", Bimod::regular(d.algebra));
  for (int e : {1, 0}) {
    std::vector<Matrix> act{Matrix::identity(1), Matrix::from_rows({{Rational(e)}})};
    d.modules.emplace_back(e == 1 ? "S1" : "S0", AlgModule(d.algebra, 1, std::move(act)));
  }
  return d;
}

/// The ground field with its regular bimodule and its one simple.
inline FusionData trivial_fusion_data() {
  FusionData d;
  d.algebra = share(ground_field());
  d.bimodules.emplace_back("R", Bimod::regular(d.algebra));
  d.modules.emplace_back("S", AlgModule::regular(d.algebra));
  return d;
}

}  // namespace zhuforge
