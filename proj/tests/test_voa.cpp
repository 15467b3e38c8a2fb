#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace zhuforge;
using oracle::unit;

namespace {

// Every in-window constant x(n)b of the table against an oracle for the modes of x.
template <typename Modes>
void compare_modes(const ModeTable& t, const std::vector<std::string>& src_labels, std::size_t x,
                   const std::vector<std::string>& tgt_labels, Modes modes) {
  for (std::size_t b = 0; b < t.target_dim(); ++b) {
    const auto [lo, hi] = t.mode_range(x, b);
    for (long n = lo; n <= hi; ++n) {
      if (t.classify(x, n, b) != ModeTable::Slot::in_window) continue;
      const oracle::State expect = modes(n, oracle::from_vec(SparseVec::unit(t.target_dim(), b), tgt_labels));
      INFO(src_labels[x] << " (" << n << ") " << tgt_labels[b]);
      CHECK(t.at(x, n, b) == oracle::to_vec(expect, tgt_labels));
    }
  }
}

}  // namespace

TEST_CASE("graded dimensions are partition counts") {
  CHECK(build_heisenberg(4).dims() == std::vector<int>{1, 1, 2, 3, 5});
  CHECK(build_heisenberg(6).dims() == oracle::partition_counts(6, 1));
  CHECK(build_virasoro(Rational(1, 2), 6).dims() == std::vector<int>{1, 0, 1, 1, 2, 2, 4});
  CHECK(build_virasoro(Rational(1, 2), 6).dims() == oracle::partition_counts(6, 2));
  CHECK(build_fock(Rational(1), 3).dims() == oracle::partition_counts(3, 1));
  CHECK(build_virasoro_module(Rational(1, 2), Rational(1, 16), 4).dims() == oracle::partition_counts(4, 1));
  CHECK(build_trivial(3).dims() == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("heisenberg modes") {
  const TruncatedVOA h = build_heisenberg(4);
  const auto& l = h.labels();
  const SparseVec alpha = unit(l, "a(-1)1");
  CHECK(*mode_action(h, alpha, 1, alpha) == unit(l, "1"));
  CHECK(mode_action(h, alpha, 0, alpha)->is_zero());
  CHECK(*mode_action(h, h.vacuum(), -1, alpha) == alpha);
  CHECK(*mode_action(h, *h.omega(), 1, alpha) == alpha);
  CHECK(*mode_action(h, *h.omega(), 3, *h.omega()) == Rational(1, 2) * h.vacuum());
  CHECK(h.central_charge() == Rational(1));
}

TEST_CASE("heisenberg table matches the Fock oracle") {
  const TruncatedVOA h = build_heisenberg(5);
  const auto& l = h.labels();
  const Rational zero(0);
  compare_modes(h.table(), l, oracle::index_of(l, "a(-1)1"), l,
                [&](long n, const oracle::State& s) { return oracle::heisenberg_mode(n, s, zero); });
  compare_modes(h.table(), l, oracle::index_of(l, "a(-1)a(-1)1"), l,
                [&](long n, const oracle::State& s) {
                  oracle::State out;
                  for (const auto& [w, c] : oracle::sugawara(n - 1, s, zero)) oracle::add(out, w, Rational(2) * c);
                  return out;
                });
  // Y(a(-2)1, z) is the derivative of Y(a(-1)1, z).
  compare_modes(h.table(), l, oracle::index_of(l, "a(-2)1"), l, [&](long n, const oracle::State& s) {
    oracle::State out;
    for (const auto& [w, c] : oracle::heisenberg_mode(n - 1, s, zero)) oracle::add(out, w, Rational(-n) * c);
    return out;
  });
}

TEST_CASE("fock module table matches the Fock oracle") {
  for (const Rational lambda : {Rational(0), Rational(1), Rational(1, 2), Rational(-2, 3)}) {
    const TruncatedModule f = build_fock(lambda, 4);
    const TruncatedVOA h = build_heisenberg(4);
    compare_modes(f.table(), h.labels(), 1, f.labels(),
                  [&](long n, const oracle::State& s) { return oracle::heisenberg_mode(n, s, lambda); });
    compare_modes(f.table(), h.labels(), 2, f.labels(), [&](long n, const oracle::State& s) {
      oracle::State out;
      for (const auto& [w, c] : oracle::sugawara(n - 1, s, lambda)) oracle::add(out, w, Rational(2) * c);
      return out;
    });
    CHECK(f.top_level_dim() == 1);
    CHECK(top_level_action(f, unit(h.labels(), "a(-1)1")) == Matrix::from_rows({{lambda}}));
    CHECK(top_level_action(f, *h.omega()) == Matrix::from_rows({{lambda * lambda / Rational(2)}}));
  }
}

TEST_CASE("fock module at lambda 0 is the adjoint module") {
  const TruncatedVOA h = build_heisenberg(4);
  const TruncatedModule f = build_fock(Rational(0), 4);
  const TruncatedModule adj = adjoint_module(h);
  const auto& t = f.table();
  for (std::size_t a = 0; a < t.source_dim(); ++a)
    for (std::size_t b = 0; b < t.target_dim(); ++b) {
      const auto [lo, hi] = t.mode_range(a, b);
      for (long n = lo; n <= hi; ++n)
        if (t.classify(a, n, b) == ModeTable::Slot::in_window) CHECK(t.at(a, n, b) == adj.table().at(a, n, b));
    }
}

TEST_CASE("virasoro table matches PBW straightening") {
  const Rational c(1, 2);
  const TruncatedVOA v = build_virasoro(c, 6);
  const oracle::Virasoro vir{c, Rational(0), true};
  const auto& l = v.labels();
  compare_modes(v.table(), l, oracle::index_of(l, "L(-2)1"), l,
                [&](long n, const oracle::State& s) { return vir.apply(n - 1, s); });
  CHECK(*mode_action(v, *v.omega(), 1, *v.omega()) == Rational(2) * *v.omega());
  CHECK(*mode_action(v, *v.omega(), 3, *v.omega()) == (c / Rational(2)) * v.vacuum());
}

TEST_CASE("virasoro highest weight module matches PBW straightening") {
  const Rational c(1, 2), h(1, 16);
  const TruncatedModule m = build_virasoro_module(c, h, 4);
  const TruncatedVOA v = build_virasoro(c, 4);
  const oracle::Virasoro vir{c, h, false};
  compare_modes(m.table(), v.labels(), oracle::index_of(v.labels(), "L(-2)1"), m.labels(),
                [&](long n, const oracle::State& s) { return vir.apply(n - 1, s); });
  CHECK(check_module(v, m).overall() == Status::pass);
}

TEST_CASE("axiom suites pass on the example structures") {
  CHECK(check_axioms(build_heisenberg(4)).overall() == Status::pass);
  CHECK(check_axioms(build_virasoro(Rational(1, 2), 5)).overall() == Status::pass);
  CHECK(check_axioms(build_virasoro(Rational(-22, 5), 5)).overall() == Status::pass);
  CHECK(check_axioms(build_trivial(3)).overall() == Status::pass);
  const TruncatedVOA h = build_heisenberg(4);
  CHECK(check_module(h, adjoint_module(h)).overall() == Status::pass);
  CHECK(check_module(h, build_fock(Rational(1), 4)).overall() == Status::pass);
  const Report r = check_axioms(h);
  for (const char* name : {"vacuum", "creation", "grading", "translation", "virasoro", "conformal_covariance",
                           "weak_associativity", "weak_commutativity"})
    CHECK(r.find(name) != nullptr);
}

TEST_CASE("translation: (L(-1)a)(n) = -n a(n-1)") {
  const TruncatedVOA h = build_heisenberg(5);
  const auto& l = h.labels();
  const SparseVec alpha = unit(l, "a(-1)1");
  const SparseVec da = *mode_action(h, *h.omega(), 0, alpha);
  CHECK(da == unit(l, "a(-2)1"));
  for (std::size_t b = 0; b < h.dim(); ++b)
    for (long n = -3; n <= 4; ++n) {
      const auto lhs = mode_action(h, da, n, h.basis_vector(b));
      const auto rhs = mode_action(h, alpha, n - 1, h.basis_vector(b));
      if (lhs && rhs) CHECK(*lhs == Rational(-n) * *rhs);
    }
}

TEST_CASE("corrupted omega(1)alpha fails the grading check") {
  const TruncatedVOA h = build_heisenberg(4);
  const auto& l = h.labels();
  const std::size_t w = oracle::index_of(l, "a(-1)a(-1)1"), a = oracle::index_of(l, "a(-1)1");
  const TruncatedVOA bad = h.with_constant(w, 1, a, Rational(4) * unit(l, "a(-1)1"));
  const Report r = check_axioms(bad);
  CHECK(r.overall() == Status::fail);
  const CheckResult* g = r.find("grading");
  REQUIRE(g);
  CHECK(g->status() == Status::fail);
  CHECK_FALSE(g->witnesses.empty());
}

TEST_CASE("with_constant rejects out-of-window slots") {
  const TruncatedVOA h = build_heisenberg(3);
  CHECK_THROWS((void)h.with_constant(1, -5, 1, SparseVec(h.dim())));
}

TEST_CASE("direct sum") {
  const TruncatedVOA h = build_heisenberg(3);
  const TruncatedVOA s = direct_sum(h, h);
  CHECK(s.dims() == std::vector<int>{2, 2, 4, 6});
  const auto& l = s.labels();
  const SparseVec left = unit(l, "a(-1)1⊕0");
  for (std::size_t b = 0; b < s.dim(); ++b) {
    if (l[b].rfind("0⊕", 0) != 0) continue;
    for (long n = -3; n <= 3; ++n) {
      const auto x = mode_action(s, left, n, s.basis_vector(b));
      if (x) CHECK(x->is_zero());
    }
  }
  CHECK(*mode_action(s, left, 1, left) == unit(l, "1⊕0"));
  CHECK(check_axioms(s).overall() == Status::pass);
  CHECK_THROWS_AS(direct_sum(h, build_virasoro(Rational(1, 2), 3)), PreconditionFailed);
}

TEST_CASE("is_ideal") {
  const TruncatedVOA h = build_heisenberg(3);
  CHECK(is_ideal(h, Subspace(h.dim())) == std::optional<bool>(true));
  std::vector<SparseVec> all;
  for (std::size_t i = 0; i < h.dim(); ++i) all.push_back(h.basis_vector(i));
  CHECK(is_ideal(h, Subspace::echelonize(all)) == std::optional<bool>(true));
  std::vector<SparseVec> top;
  for (std::size_t i = h.first_of_weight(3); i < h.dim(); ++i) top.push_back(h.basis_vector(i));
  CHECK(is_ideal(h, Subspace::echelonize(top)) == std::optional<bool>(false));
}

TEST_CASE("truncate keeps the lower window") {
  const TruncatedVOA h = build_heisenberg(5);
  const TruncatedVOA t = truncate(h, 3);
  CHECK(t.dims() == std::vector<int>{1, 1, 2, 3});
  CHECK(t.table().at(1, 1, 1) == build_heisenberg(3).table().at(1, 1, 1));
  CHECK_THROWS_AS(truncate(h, 6), PreconditionFailed);
  CHECK(truncate(build_fock(Rational(1), 4), 2).dims() == std::vector<int>{1, 1, 2});
}

TEST_CASE("property: seeded faults in a VOA are detected with a witness") {
  for (const TruncatedVOA& v : {build_heisenberg(4), build_virasoro(Rational(1, 2), 4)}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      Fault f;
      const Report r = check_axioms(inject_fault(v, seed, &f));
      INFO("seed " << seed << " " << to_json(f).dump());
      CHECK(r.overall() == Status::fail);
      bool witness = false;
      for (const auto& c : r.checks) witness |= !c.witnesses.empty();
      CHECK(witness);
    }
  }
}

TEST_CASE("property: seeded faults in a module are detected") {
  const TruncatedVOA h = build_heisenberg(4);
  const TruncatedModule f1 = build_fock(Rational(1), 4);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    INFO("seed " << seed);
    CHECK(check_module(h, inject_fault(f1, seed)).overall() == Status::fail);
  }
}

TEST_CASE("property: random weight-homogeneous states obey the L(0) eigenvalue law") {
  oracle::Rng rng(21);
  const TruncatedVOA v = build_virasoro(Rational(7, 10), 6);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = static_cast<int>(rng() % 7);
    const SparseVec x = oracle::random_homogeneous(rng, v, w);
    CHECK(*mode_action(v, *v.omega(), 1, x) == Rational(w) * x);
  }
}
