#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace zhuforge;
using oracle::unit;

namespace {

// Res_z Y(a,z) b (1+z)^{wt a + shift} z^{-m}, expanded from the stored modes.
std::optional<SparseVec> residue(const TruncatedVOA& v, const SparseVec& a, const SparseVec& b, long shift, long m) {
  SparseVec out(v.dim());
  for (const auto& [w, part] : homogeneous_parts(a, v.weights())) {
    const long top = w + shift;
    for (long i = 0; top < 0 || i <= top; ++i) {
      const auto x = mode_action(v, part, i - m, b);
      if (!x) return std::nullopt;
      if (top < 0 && x->is_zero() && i > v.cutoff() + 2) break;
      out.axpy(binomial(top, i), *x);
    }
  }
  return out;
}

// dim V_{<=N} - rank of every in-window a∘b, by dense elimination.
std::size_t brute_force_zhu_dim(const TruncatedVOA& v) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (std::size_t b = 0; b < v.dim(); ++b) {
      if (v.weight(a) + v.weight(b) + 1 > v.cutoff()) continue;
      rows.push_back(oracle::dense(*residue(v, v.basis_vector(a), v.basis_vector(b), 0, 2)));
    }
  return v.dim() - oracle::dense_rank(rows);
}

}  // namespace

TEST_CASE("star products") {
  const TruncatedVOA h = build_heisenberg(4);
  const auto& l = h.labels();
  const SparseVec alpha = unit(l, "a(-1)1");
  for (std::size_t b = 0; b < h.dim(); ++b) CHECK(*star(h, h.vacuum(), h.basis_vector(b)) == h.basis_vector(b));
  CHECK(*star(h, alpha, alpha) == unit(l, "a(-1)a(-1)1"));
  // Y(ω,z)(1+z)^2/z picks L(-2) + 2L(-1) + L(0), and L(-2)α = a(-3)1 + a(-1)^3 1 / 2 by the Fock oracle.
  const SparseVec l_minus2 = oracle::to_vec(oracle::sugawara(-2, oracle::from_vec(alpha, l), Rational(0)), l);
  CHECK(l_minus2 == unit(l, "a(-3)1") + unit(l, "a(-1)a(-1)a(-1)1", Rational(1, 2)));
  CHECK(*star(h, *h.omega(), alpha) == l_minus2 + Rational(2) * unit(l, "a(-2)1") + alpha);
  CHECK_FALSE(star(h, unit(l, "a(-2)a(-1)1"), unit(l, "a(-2)1")));
}

TEST_CASE("circ products") {
  const TruncatedVOA h = build_heisenberg(4);
  const auto& l = h.labels();
  const SparseVec alpha = unit(l, "a(-1)1");
  CHECK(*circ(h, alpha, h.vacuum()) == unit(l, "a(-2)1") + alpha);
  CHECK(*circ(h, alpha, alpha) == unit(l, "a(-2)a(-1)1") + unit(l, "a(-1)a(-1)1"));
  CHECK(circ(h, h.vacuum(), alpha)->is_zero());
  CHECK(*circ_m(h, alpha, alpha, 2) == *circ(h, alpha, alpha));
  CHECK(*circ_m(h, alpha, h.vacuum(), 3) == unit(l, "a(-3)1") + unit(l, "a(-2)1"));
  CHECK_THROWS_AS(circ_m(h, alpha, alpha, 1), PreconditionFailed);

  const TruncatedVOA v = build_virasoro(Rational(1, 2), 4);
  CHECK(*circ_m(v, *v.omega(), v.vacuum(), 3) ==
        unit(v.labels(), "L(-4)1") + unit(v.labels(), "L(-3)1", Rational(2)) + *v.omega());
}

TEST_CASE("o_span") {
  CHECK(o_span(build_trivial(4)).rank() == 0);
  const TruncatedVOA h = build_heisenberg(4);
  const auto& l = h.labels();
  const Subspace o = o_span(h);
  CHECK(o.contains(unit(l, "a(-2)1") + unit(l, "a(-1)1")));
  // (L(-1) + L(0))a lies in O for every basis a with wt a + 1 <= N.
  for (std::size_t a = 0; a < h.dim(); ++a) {
    if (h.weight(a) + 1 > h.cutoff()) continue;
    const SparseVec x = h.basis_vector(a);
    CHECK(o.contains(*mode_action(h, *h.omega(), 0, x) + *mode_action(h, *h.omega(), 1, x)));
  }
}

TEST_CASE("zhu algebra of small examples") {
  const ZhuPresentation t = zhu_algebra(build_trivial(3));
  CHECK(t.dim() == 1);
  CHECK(t.identity() == SparseVec::unit(1, 0));

  for (int n : {4, 5, 6}) {
    const TruncatedVOA h = build_heisenberg(n);
    const ZhuPresentation z = zhu_algebra(h);
    CHECK(z.dim() == brute_force_zhu_dim(h));
    CHECK(z.dim() == static_cast<std::size_t>(n) + 1);
    CHECK(z.check().overall() == Status::pass);
  }

  const TruncatedVOA h = build_heisenberg(6);
  const auto& l = h.labels();
  const ZhuPresentation z = zhu_algebra(h);
  const SparseVec x = z.project(unit(l, "a(-1)1"));
  const auto x2 = z.multiply(x, x);
  REQUIRE(x2);
  CHECK(*x2 == z.project(unit(l, "a(-1)a(-1)1")));
  // Every class is a polynomial in x: the powers x^0..x^6 span the window.
  std::vector<SparseVec> powers{z.identity()};
  for (int k = 1; k <= 6; ++k) powers.push_back(*z.multiply(powers.back(), x));
  CHECK(Subspace::echelonize(powers).rank() == z.dim());
  for (std::size_t i = 0; i < z.dim(); ++i)
    for (std::size_t j = 0; j < z.dim(); ++j)
      if (z.defined(i, j) && z.defined(j, i)) CHECK(*z.product(i, j) == *z.product(j, i));
}

TEST_CASE("zhu algebra of the virasoro vertex algebra is generated by omega") {
  const TruncatedVOA v = build_virasoro(Rational(1, 2), 6);
  const ZhuPresentation z = zhu_algebra(v);
  CHECK(z.dim() == brute_force_zhu_dim(v));
  CHECK(z.degrees() == std::vector<int>{0, 2, 4, 6});
  REQUIRE(z.omega());
  std::vector<SparseVec> powers{z.identity()};
  for (int k = 1; k <= 3; ++k) powers.push_back(*z.multiply(powers.back(), *z.omega()));
  CHECK(Subspace::echelonize(powers).rank() == z.dim());
  CHECK(z.check().overall() == Status::pass);
}

TEST_CASE("circ_m lies in O for m >= 2") {
  const TruncatedVOA h = build_heisenberg(5);
  const auto& l = h.labels();
  const SparseVec alpha = unit(l, "a(-1)1");
  CHECK(o_span(h).contains(*circ_m(h, alpha, alpha, 3)));
  const Report r = check_circ_m_in_O(h);
  CHECK(r.overall() == Status::pass);
  for (const char* name : {"circ_2_in_O", "circ_3_in_O", "circ_4_in_O"}) {
    const CheckResult* c = r.find(name);
    REQUIRE(c);
    CHECK(c->failures == 0);
    CHECK(c->checked > 0);
  }
  const CheckResult* c4 = r.find("circ_4_in_O");
  CHECK(c4->skipped + c4->skipped_strata.size() > 0);

  const TruncatedVOA v = build_virasoro(Rational(1, 2), 6);
  CHECK(o_span(v).contains(*circ_m(v, *v.omega(), *v.omega(), 3)));
  CHECK(check_circ_m_in_O(v).overall() == Status::pass);
}

TEST_CASE("top level action") {
  const TruncatedVOA h = build_heisenberg(4);
  const auto& l = h.labels();
  const SparseVec alpha = unit(l, "a(-1)1");
  for (const Rational lambda : {Rational(0), Rational(1), Rational(1, 2)}) {
    const TruncatedModule f = build_fock(lambda, 4);
    CHECK(top_level_action(f, h.vacuum()) == Matrix::identity(1));
    CHECK(top_level_action(f, alpha) == Matrix::from_rows({{lambda}}));
    CHECK(top_level_action(f, *h.omega()) == Matrix::from_rows({{lambda * lambda / Rational(2)}}));
    CHECK(top_level_action(f, alpha) * top_level_action(f, alpha) == top_level_action(f, *star(h, alpha, alpha)));
    CHECK(top_level_action(f, *circ(h, alpha, h.vacuum())).is_zero());
    const ZhuTopLevelResult r = check_zhu_top_level(h, f);
    CHECK(r.report.overall() == Status::pass);
  }
  const TruncatedModule adj = adjoint_module(h);
  CHECK(top_level_action(adj, alpha).is_zero());
  CHECK(top_level_action(adj, *star(h, alpha, alpha)).is_zero());
  CHECK(check_zhu_top_level(h, adj).report.overall() == Status::pass);
}

TEST_CASE("top level of the virasoro module") {
  const Rational c(1, 2), hw(1, 16);
  const TruncatedVOA v = build_virasoro(c, 4);
  const TruncatedModule m = build_virasoro_module(c, hw, 4);
  CHECK(top_level_action(m, *v.omega()) == Matrix::from_rows({{hw}}));
  CHECK(check_zhu_top_level(v, m).report.overall() == Status::pass);
}

TEST_CASE("convergence between cutoffs") {
  CHECK(zhu_convergence(build_heisenberg(5), 4).status() == Status::pass);
  CHECK(zhu_convergence(build_virasoro(Rational(1, 2), 7), 6).status() == Status::pass);
  CHECK_THROWS(zhu_convergence(build_heisenberg(4), 4));
}

TEST_CASE("property: a*b - b*a is Res Y(a,z)b (1+z)^{wt a - 1} modulo O") {
  oracle::Rng rng(31);
  for (const TruncatedVOA& v : {build_heisenberg(6), build_virasoro(Rational(1, 2), 6)}) {
    const ZhuPresentation z = zhu_algebra(v);
    for (int trial = 0; trial < 30; ++trial) {
      const int wa = static_cast<int>(rng() % 4), wb = static_cast<int>(rng() % (6 - wa));
      if (wa + wb + 1 > v.cutoff()) continue;
      const SparseVec a = oracle::random_homogeneous(rng, v, wa), b = oracle::random_homogeneous(rng, v, wb);
      const auto ab = star(v, a, b), ba = star(v, b, a), res = residue(v, a, b, -1, 0);
      REQUIRE(ab);
      REQUIRE(ba);
      REQUIRE(res);
      CHECK(z.project(*ab - *ba) == z.project(*res));
      CHECK(*ab == *residue(v, a, b, 0, 1));
    }
  }
}

TEST_CASE("property: star is associative on classes") {
  oracle::Rng rng(32);
  const TruncatedVOA h = build_heisenberg(6);
  const ZhuPresentation z = zhu_algebra(h);
  for (int trial = 0; trial < 30; ++trial) {
    const int wa = static_cast<int>(rng() % 3), wb = static_cast<int>(rng() % 3), wc = static_cast<int>(rng() % 2);
    const SparseVec a = oracle::random_homogeneous(rng, h, wa), b = oracle::random_homogeneous(rng, h, wb),
                    c = oracle::random_homogeneous(rng, h, wc);
    const auto lhs = star(h, *star(h, a, b), c);
    const auto rhs = star(h, a, *star(h, b, c));
    REQUIRE(lhs);
    REQUIRE(rhs);
    CHECK(z.project(*lhs) == z.project(*rhs));
  }
}

TEST_CASE("property: O-span acts by zero on every Fock top level") {
  oracle::Rng rng(33);
  const TruncatedVOA h = build_heisenberg(4);
  const Subspace o = o_span(h);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational lambda = oracle::small_rational(rng);
    const TruncatedModule f = build_fock(lambda, 4);
    SparseVec x(h.dim());
    for (const auto& g : o.basis()) x.axpy(oracle::small_rational(rng), g);
    CHECK(top_level_action(f, x).is_zero());
  }
}
