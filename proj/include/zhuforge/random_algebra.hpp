#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/assoc.hpp"
#include "zhuforge/matrix.hpp"
#include "zhuforge/rational.hpp"

namespace zhuforge {

using Rng = std::mt19937_64;

/// Algebra with a catalog of indecomposable left modules (the irreducibles when semisimple).
struct SampleAlgebra {
  AlgebraPtr algebra;
  std::vector<AlgModule> blocks;
  bool semisimple = false;
};

inline long random_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Invertible integer matrix with small entries.
inline Matrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(random_int(rng, -2, 2));
    if (m.rank() == n) return m;
  }
}

namespace detail {

/// Block-diagonal matrix algebra from blocks of size 1 (Q) and 2 (M2(Q)); irreducibles are the block projections.
inline SampleAlgebra block_algebra(const std::vector<std::size_t>& sizes) {
  std::size_t n = 0;
  for (auto s : sizes) n += s;
  std::vector<Matrix> spanning;
  std::size_t off = 0;
  for (auto s : sizes) {
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        Matrix m(n, n);
        m(off + i, off + j) = Rational(1);
        spanning.push_back(m);
      }
    off += s;
  }
  std::vector<Matrix> basis;
  std::string name;
  for (auto s : sizes) name += (name.empty() ? "" : "⊕") + std::string(s == 1 ? "Q" : "M" + std::to_string(s) + "(Q)");
  SampleAlgebra out{share(AssocAlgebra::from_matrices(spanning, name, &basis)), {}, true};
  off = 0;
  for (auto s : sizes) {
    std::vector<Matrix> act;
    for (const auto& b : basis) {
      Matrix blk(s, s);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) blk(i, j) = b(off + i, off + j);
      act.push_back(blk);
    }
    out.blocks.emplace_back(out.algebra, s, std::move(act));
    off += s;
  }
  return out;
}

inline SampleAlgebra rebased_sample(const SampleAlgebra& s, const Matrix& p) {
  SampleAlgebra out{share(rebase(*s.algebra, p)), {}, s.semisimple};
  std::vector<SparseVec> images;
  for (std::size_t k = 0; k < p.cols(); ++k) images.push_back(p.column(k));
  for (const auto& b : s.blocks) out.blocks.push_back(b.pulled_back(out.algebra, images));
  return out;
}

}  // namespace detail

/// Split semisimple algebra Q^k or M2(Q) (or Q ⊕ ... mixes) of dimension <= max_dim, in a random basis.
inline SampleAlgebra random_split_semisimple(Rng& rng, std::size_t max_dim) {
  std::vector<std::size_t> sizes;
  std::size_t dim = 0;
  const std::size_t target = static_cast<std::size_t>(random_int(rng, 1, static_cast<long>(max_dim)));
  while (dim < target) {
    const bool big = target - dim >= 4 && random_int(rng, 0, 1) == 1;
    sizes.push_back(big ? 2 : 1);
    dim += big ? 4 : 1;
  }
  SampleAlgebra s = detail::block_algebra(sizes);
  return detail::rebased_sample(s, random_invertible(rng, s.algebra->dim()));
}

/// Random algebra of dimension <= max_dim, including non-semisimple ones (Q[x]/(x^k), upper triangular).
inline SampleAlgebra random_algebra(Rng& rng, std::size_t max_dim) {
  const long kind = random_int(rng, 0, 3);
  if (kind <= 1 || max_dim < 2) return random_split_semisimple(rng, max_dim);
  SampleAlgebra s;
  if (kind == 2) {
    const std::size_t k = static_cast<std::size_t>(random_int(rng, 2, static_cast<long>(std::min<std::size_t>(max_dim, 3))));
    s.algebra = share(truncated_polynomial(k));
    // Jordan blocks of x of size 1..k.
    for (std::size_t size = 1; size <= k; ++size) {
      Matrix nil(size, size);
      for (std::size_t i = 0; i + 1 < size; ++i) nil(i + 1, i) = Rational(1);
      std::vector<Matrix> act{Matrix::identity(size)};
      for (std::size_t p = 1; p < k; ++p) act.push_back(act.back() * nil);
      s.blocks.emplace_back(s.algebra, size, std::move(act));
    }
  } else {
    if (max_dim < 3) return random_split_semisimple(rng, max_dim);
    std::vector<Matrix> basis;
    std::vector<Matrix> spanning;
    for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {1, 1}}) {
      Matrix m(2, 2);
      m(i, j) = Rational(1);
      spanning.push_back(m);
    }
    s.algebra = share(AssocAlgebra::from_matrices(spanning, "T2(Q)", &basis));
    s.blocks.emplace_back(s.algebra, 2, basis);
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<Matrix> act;
      for (const auto& b : basis) act.push_back(Matrix::from_rows({{b(k, k)}}));
      s.blocks.emplace_back(s.algebra, 1, std::move(act));
    }
  }
  s.semisimple = false;
  return detail::rebased_sample(s, random_invertible(rng, s.algebra->dim()));
}

/// Direct sum of random catalog blocks with total dimension in [1, max_dim], in a random basis.
/// Right modules are duals of left modules.
inline AlgModule random_module(Rng& rng, const SampleAlgebra& s, std::size_t max_dim, Side side = Side::left) {
  std::vector<const AlgModule*> fitting;
  for (const auto& b : s.blocks)
    if (b.dim() <= max_dim) fitting.push_back(&b);
  if (fitting.empty()) throw PreconditionFailed("no catalog module fits the dimension bound");
  AlgModule m = *fitting[static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(fitting.size()) - 1))];
  const long extra = random_int(rng, 0, 2);
  for (long e = 0; e < extra; ++e) {
    const AlgModule& b = *fitting[static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(fitting.size()) - 1))];
    if (m.dim() + b.dim() <= max_dim) m = direct_sum(m, b);
  }
  m = m.rebased(random_invertible(rng, m.dim()));
  return side == Side::left ? m : m.dual();
}

}  // namespace zhuforge
