#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace zhuforge;
using oracle::unit;

namespace {

std::vector<int> convolve_dims(const std::vector<int>& a, const std::vector<int>& b, int n) {
  std::vector<int> out(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return out;
}

// (x⊗y)(n)(u⊗v) = sum_{p+q=n-1} x(p)u ⊗ y(q)v straight from the factor tables, as (left index, right index) -> coeff.
std::map<std::pair<std::size_t, std::size_t>, Rational> product_mode(const TensorVOA& t, std::size_t x, std::size_t y,
                                                                    long n, std::size_t u, std::size_t v) {
  std::map<std::pair<std::size_t, std::size_t>, Rational> out;
  const long wx = t.left.weight(x), wu = t.left.weight(u);
  for (long p = wx + wu - t.left.cutoff() - 1; p <= wx + wu - 1; ++p) {
    const long q = n - 1 - p;
    const auto l = mode_action(t.left, t.left.basis_vector(x), p, t.left.basis_vector(u));
    const auto r = mode_action(t.right, t.right.basis_vector(y), q, t.right.basis_vector(v));
    if (!l || !r || l->is_zero() || r->is_zero()) continue;
    for (const auto& [i, a] : *l)
      for (const auto& [j, b] : *r) {
        if (t.left.weight(i) + t.right.weight(j) > t.product.cutoff()) continue;
        out[{i, j}] += a * b;
      }
  }
  return out;
}

}  // namespace

TEST_CASE("tensor product dimensions") {
  const TruncatedVOA h = build_heisenberg(3);
  const TensorVOA hh = tensor_voa(h, h, 3);
  CHECK(hh.product.dims() == std::vector<int>{1, 2, 5, 10});
  const TruncatedVOA h4 = build_heisenberg(4), v4 = build_virasoro(Rational(1, 2), 4);
  const TensorVOA hv = tensor_voa(h4, v4, 4);
  CHECK(hv.product.dims() == convolve_dims(h4.dims(), v4.dims(), 4));
  CHECK(hv.product.central_charge() == Rational(3, 2));
  CHECK_THROWS_AS(tensor_voa(h, h, 4), PreconditionFailed);
}

TEST_CASE("L(0) of the product acts by the total weight") {
  const TensorVOA hv = tensor_voa(build_heisenberg(4), build_virasoro(Rational(1, 2), 4), 4);
  const TruncatedVOA& p = hv.product;
  for (std::size_t k = 0; k < p.dim(); ++k)
    CHECK(*mode_action(p, *p.omega(), 1, p.basis_vector(k)) == Rational(p.weight(k)) * p.basis_vector(k));
  CHECK(*p.omega() == unit(p.labels(), "a(-1)a(-1)1⊗1", Rational(1, 2)) + unit(p.labels(), "1⊗L(-2)1"));
}

TEST_CASE("product modes are the convolution of factor modes") {
  const TensorVOA hv = tensor_voa(build_heisenberg(3), build_virasoro(Rational(1, 2), 3), 3);
  const TruncatedVOA& p = hv.product;
  const auto& t = p.table();
  std::size_t compared = 0;
  for (std::size_t a = 0; a < p.dim(); ++a)
    for (std::size_t b = 0; b < p.dim(); ++b) {
      const auto [lo, hi] = t.mode_range(a, b);
      for (long n = lo; n <= hi; ++n) {
        if (t.classify(a, n, b) != ModeTable::Slot::in_window) continue;
        const auto [x, y] = hv.basis.pair(a);
        const auto [u, v] = hv.basis.pair(b);
        SparseVec expect(p.dim());
        for (const auto& [ij, c] : product_mode(hv, x, y, n, u, v)) expect.add(hv.basis.at(ij.first, ij.second), c);
        CHECK(t.at(a, n, b) == expect);
        ++compared;
      }
    }
  CHECK(compared > 100);
  CHECK(check_axioms(p).overall() == Status::pass);
}

TEST_CASE("tensor modules") {
  const TruncatedVOA h = build_heisenberg(3);
  const TensorVOA hh = tensor_voa(h, h, 3);
  for (const auto& [lambda, mu] : std::vector<std::pair<Rational, Rational>>{{1, 0}, {Rational(1, 2), 2}}) {
    const TruncatedModule m = tensor_module(build_fock(lambda, 3), build_fock(mu, 3), 3);
    CHECK(m.top_level_dim() == 1);
    CHECK(top_level_action(m, unit(hh.product.labels(), "a(-1)1⊗1")) == Matrix::from_rows({{lambda}}));
    CHECK(top_level_action(m, unit(hh.product.labels(), "1⊗a(-1)1")) == Matrix::from_rows({{mu}}));
    CHECK(check_module(hh.product, m).overall() == Status::pass);
  }
  const TensorVOA hv = tensor_voa(build_heisenberg(4), build_virasoro(Rational(1, 2), 4), 4);
  const TruncatedModule mv =
      tensor_module(build_fock(Rational(1, 2), 4), build_virasoro_module(Rational(1, 2), Rational(1, 16), 4), 4);
  CHECK(top_level_action(mv, *hv.product.omega()) == Matrix::from_rows({{Rational(1, 8) + Rational(1, 16)}}));
}

TEST_CASE("braiding and associator") {
  const TruncatedVOA h = build_heisenberg(3), v = build_virasoro(Rational(1, 2), 3);
  const Report r = check_braiding_associator(h, v, h, 3);
  CHECK(r.overall() == Status::pass);
  for (const char* name : {"swap", "swap_squared", "associator"}) {
    REQUIRE(r.find(name));
    CHECK(r.find(name)->checked > 0);
  }
}

TEST_CASE("circ factors through the tensor product") {
  const TruncatedVOA h = build_heisenberg(4), v = build_virasoro(Rational(1, 2), 4);
  const TensorVOA hv = tensor_voa(h, v, 4);
  const auto& pl = hv.product.labels();
  const SparseVec alpha = unit(h.labels(), "a(-1)1");
  // α∘(α⊗1) = (α∘α)⊗1 and α∘(1⊗ω) = (α∘1)⊗ω with α = α⊗1.
  const SparseVec a1 = unit(pl, "a(-1)1⊗1");
  CHECK(*circ(hv.product, a1, a1) == *hv.basis.tensor(*circ(h, alpha, alpha), v.vacuum()));
  CHECK(*circ(hv.product, a1, unit(pl, "1⊗L(-2)1")) == *hv.basis.tensor(*circ(h, alpha, h.vacuum()), *v.omega()));
  CHECK(circ(hv.product, hv.product.vacuum(), a1)->is_zero());
  CHECK(check_lemma_ten(h, v, 4).overall() == Status::pass);
}

TEST_CASE("O of the product against the two factor O-spans") {
  const TruncatedVOA h = build_heisenberg(4), v = build_virasoro(Rational(1, 2), 4);
  const Report r = check_lemma_kvoc(h, v, 4);
  CHECK(r.overall() == Status::pass);
  const TensorVOA hv = tensor_voa(h, v, 4);
  const Subspace o = o_span(hv.product);
  CHECK(o.contains(*hv.basis.tensor(*circ(h, unit(h.labels(), "a(-1)1"), h.vacuum()), v.vacuum())));
  const Report triv = check_lemma_kvoc(build_trivial(3), build_trivial(3), 3);
  CHECK(triv.overall() == Status::pass);
  CHECK(o_span(tensor_voa(build_trivial(3), build_trivial(3), 3).product).rank() == 0);
}

TEST_CASE("F map on the heisenberg-virasoro pair") {
  const TruncatedVOA h = build_heisenberg(4), v = build_virasoro(Rational(1, 2), 4);
  const ZhuTensorMap f = build_F_map(h, v, 4);
  CHECK(f.report.overall() == Status::pass);
  const TensorVOA hv = tensor_voa(h, v, 4);
  const auto& d = f.domain;
  CHECK(f.apply(d.identity()) == *f.codomain.tensor(f.left.identity(), f.right.identity()));
  REQUIRE(d.omega());
  CHECK(f.apply(*d.omega()) ==
        *f.codomain.tensor(*f.left.omega(), f.right.identity()) + *f.codomain.tensor(f.left.identity(), *f.right.omega()));
  const SparseVec a = d.project(unit(hv.product.labels(), "a(-1)1⊗1"));
  const SparseVec x = f.left.project(unit(h.labels(), "a(-1)1"));
  CHECK(f.apply(*d.multiply(a, a)) == *f.codomain.tensor(*f.left.multiply(x, x), f.right.identity()));
  CHECK(f.matrix.rank() == d.dim());
  CHECK(d.dim() == f.codomain.size());
}

TEST_CASE("property: F is multiplicative on random classes") {
  oracle::Rng rng(41);
  const ZhuTensorMap f = build_F_map(build_heisenberg(4), build_virasoro(Rational(1, 2), 4), 4);
  const auto& d = f.domain;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SparseVec x = oracle::random_vec(rng, d.dim(), 2), y = oracle::random_vec(rng, d.dim(), 2);
    const auto xy = d.multiply(x, y);
    if (!xy) continue;
    const auto fxfy = f.multiply(f.apply(x), f.apply(y));
    REQUIRE(fxfy);
    CHECK(f.apply(*xy) == *fxfy);
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("property: seeded faults in a factor break the product suites") {
  const TruncatedVOA h = build_heisenberg(3), v = build_virasoro(Rational(1, 2), 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    INFO("seed " << seed);
    const TruncatedVOA bad = inject_fault(h, seed);
    CHECK(verify_izo(bad, v, 3).overall() == Status::fail);
    CHECK(verify_ten(bad, v, 3).overall() == Status::fail);
    CHECK(verify_kvoc(bad, v, 3).overall() == Status::fail);
  }
}
