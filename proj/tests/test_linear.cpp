#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace zhuforge;

namespace {

SparseVec vec(std::initializer_list<long> xs) {
  std::vector<Rational> d;
  for (long x : xs) d.emplace_back(x);
  return SparseVec::from_dense(d);
}

}  // namespace

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK(Rational::parse("7").is_integer());
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
}

TEST_CASE("binomial coefficients extend to negative upper index") {
  CHECK(binomial(5, 2) == Rational(10));
  CHECK(binomial(2, 5) == Rational(0));
  CHECK(binomial(-1, 3) == Rational(-1));
  CHECK(binomial(-2, 2) == Rational(3));
  CHECK(binomial(4, -1) == Rational(0));
}

TEST_CASE("sparse vectors drop zeros and reject bad indices") {
  SparseVec v(3);
  v.add(1, Rational(2));
  v.add(1, Rational(-2));
  CHECK(v.is_zero());
  CHECK_THROWS_AS(v.add(3, Rational(1)), DimensionMismatch);
  CHECK_THROWS_AS(vec({1, 0}) + vec({1, 0, 0}), DimensionMismatch);
  CHECK(Rational(2) * vec({1, 0, 3}) == vec({2, 0, 6}));
}

TEST_CASE("echelonize") {
  const Subspace a = Subspace::echelonize({vec({1, 0}), vec({0, 1})});
  CHECK(a.rank() == 2);
  CHECK(a.basis()[0] == vec({1, 0}));
  CHECK(a.basis()[1] == vec({0, 1}));

  const Subspace b = Subspace::echelonize({vec({2, 4}), vec({1, 2})});
  CHECK(b.rank() == 1);
  CHECK(b.basis()[0] == vec({1, 2}));

  const Subspace c = Subspace::echelonize({vec({1, 1, 0}), vec({0, 1, 1}), vec({1, 0, -1})});
  CHECK(c.rank() == 2);
  CHECK(c.rank() == oracle::dense_rank({oracle::dense(vec({1, 1, 0})), oracle::dense(vec({0, 1, 1})),
                                        oracle::dense(vec({1, 0, -1}))}));
  CHECK_THROWS_AS(Subspace::echelonize(std::vector<SparseVec>{}), DimensionMismatch);
}

TEST_CASE("membership returns coordinates in the generators") {
  const Subspace s = Subspace::echelonize({vec({1, 2})});
  const auto m = s.membership(vec({3, 6}));
  REQUIRE(m);
  CHECK(*m == vec({3}));
  CHECK_FALSE(Subspace::echelonize({vec({0, 1})}).membership(vec({1, 0})));

  const Subspace t = Subspace::echelonize({vec({1, 0, 1}), vec({0, 1, 1})});
  const auto u = t.membership(vec({1, 1, 2}));
  REQUIRE(u);
  CHECK(*u == vec({1, 1}));
}

TEST_CASE("quotient basis") {
  const Quotient q2(2, Subspace::echelonize({vec({1, 0})}));
  CHECK(q2.representatives() == std::vector<std::size_t>{1});
  CHECK(q2.project(vec({5, 7})) == vec({7}));

  const Quotient q3(3, Subspace(3));
  CHECK(q3.dim() == 3);
  CHECK(q3.project(vec({1, 2, 3})) == vec({1, 2, 3}));

  // (2,3,5) = 2(1,1,0) + 5(0,0,1) + (0,1,0): class coordinate 1 on the surviving axis.
  const Quotient q(3, Subspace::echelonize({vec({1, 1, 0}), vec({0, 0, 1})}));
  CHECK(q.dim() == 1);
  CHECK(q.project(vec({2, 3, 5})) == vec({1}));
  CHECK(q.project(q.lift(vec({4}))) == vec({4}));
}

TEST_CASE("highest-first pivots keep low indices as representatives") {
  const Subspace s = Subspace::echelonize({vec({1, 1, 0}), vec({0, 1, 1})}, PivotOrder::highest_first);
  const Quotient q(3, s);
  CHECK(q.representatives() == std::vector<std::size_t>{0});
}

TEST_CASE("matrix rank, inverse and kernel") {
  const Matrix v = Matrix::from_rows({{1, 1, 1}, {1, 2, 4}, {1, 3, 9}});
  CHECK(v.rank() == 3);
  const auto inv = v.inverse();
  REQUIRE(inv);
  CHECK(v * *inv == Matrix::identity(3));
  const Matrix s = Matrix::from_rows({{1, 2}, {2, 4}});
  CHECK(s.rank() == 1);
  CHECK_FALSE(s.inverse());
  const auto k = s.kernel();
  REQUIRE(k.size() == 1);
  CHECK(s.apply(k[0]).is_zero());
  CHECK_THROWS_AS(Matrix::identity(2) * Matrix::identity(3), DimensionMismatch);
}

TEST_CASE("property: echelon rank matches dense elimination") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng() % 6, count = rng() % 7;
    std::vector<SparseVec> gens;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < count; ++i) {
      gens.push_back(oracle::random_vec(rng, dim, 1 + rng() % 3));
      rows.push_back(oracle::dense(gens.back()));
    }
    const Subspace s = Subspace::echelonize(gens, dim, trial % 2 ? PivotOrder::highest_first : PivotOrder::lowest_first);
    CHECK(s.rank() == oracle::dense_rank(rows));
    SparseVec combo(dim);
    for (const auto& g : gens) combo.axpy(oracle::small_rational(rng), g);
    const auto coords = s.membership(combo);
    REQUIRE(coords);
    SparseVec back(dim);
    for (const auto& [i, c] : *coords) back.axpy(c, gens[i]);
    CHECK(back == combo);
  }
}

TEST_CASE("property: projection kills the subspace and inverts lift") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng() % 6;
    std::vector<SparseVec> gens;
    for (std::size_t i = 0, n = rng() % 5; i < n; ++i) gens.push_back(oracle::random_vec(rng, dim));
    const Quotient q(dim, Subspace::echelonize(gens, dim, PivotOrder::highest_first));
    CHECK(q.dim() + q.kernel().rank() == dim);
    const SparseVec x = oracle::random_vec(rng, dim, 4);
    SparseVec shifted = x;
    for (const auto& g : gens) shifted.axpy(oracle::small_rational(rng), g);
    CHECK(q.project(shifted) == q.project(x));
    const SparseVec cls = oracle::random_vec(rng, q.dim(), 2);
    CHECK(q.project(q.lift(cls)) == cls);
  }
}

TEST_CASE("property: rank of product is bounded and transpose keeps rank") {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4, k = 1 + rng() % 4;
    Matrix a(r, c), b(c, k);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = rng() % 3 ? Rational(0) : oracle::small_rational(rng);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < k; ++j) b(i, j) = oracle::small_rational(rng);
    CHECK(a.rank() == a.transpose().rank());
    CHECK((a * b).rank() <= std::min(a.rank(), b.rank()));
    CHECK(a.rank() + a.kernel().size() == c);
  }
}
