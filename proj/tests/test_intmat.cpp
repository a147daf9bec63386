#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tq/intmat.hpp"

using namespace tq;

static IntMatrix mat(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

TEST_CASE("hermite normal form invariants") {
  auto a = mat({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
  HnfResult r = hermite_normal_form(a);
  // U is unimodular and U*A = H
  Int du = determinant(r.u);
  CHECK((du == 1 || du == -1));
  CHECK(r.u * a == r.h);
  // pivots positive, entries above reduced
  std::size_t col = 0;
  for (std::size_t i = 0; i < r.rank; ++i) {
    while (r.h(i, col) == 0) ++col;
    CHECK(r.h(i, col) > 0);
    for (std::size_t k = 0; k < i; ++k) {
      CHECK(r.h(k, col) >= 0);
      CHECK(r.h(k, col) < r.h(i, col));
    }
  }
  CHECK(r.rank == oracle::rank(a));
}

TEST_CASE("hnf fixed value") {
  // row lattice of {(2,0),(1,3)} has HNF {(1,3),(0,6)}
  auto h = hnf_canonical_rows(mat({{2, 0}, {1, 3}}));
  CHECK(h == mat({{1, 3}, {0, 6}}));
}

TEST_CASE("smith normal form matches gcd/det oracle on 2x2") {
  std::vector<IntMatrix> cases = {
      mat({{2, 4}, {6, 8}}), mat({{1, 0}, {0, 1}}), mat({{3, 0}, {0, 5}}),
      mat({{4, 6}, {2, 2}}), mat({{0, 7}, {7, 0}}), mat({{5, 10}, {15, 20}})};
  for (const auto& a : cases) {
    SnfResult s = smith_normal_form(a);
    CHECK(s.invariant_factors == oracle::snf_2x2(a));
    // U A V is diagonal with the invariant factors
    IntMatrix d = s.u * a * s.v;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        Int want = (i == j && i < s.invariant_factors.size())
                       ? s.invariant_factors[i]
                       : Int(0);
        CHECK(d(i, j) == want);
      }
  }
}

TEST_CASE("snf divisibility chain") {
  auto a = mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  SnfResult s = smith_normal_form(a);
  for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
    CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
}

TEST_CASE("kernel basis") {
  auto a = mat({{1, 1, 1}});
  LatticeBasis k = kernel_basis(a);
  CHECK(k.rank() == 2);
  for (std::size_t i = 0; i < k.rank(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += k.basis(i, j);
    CHECK(s == 0);
  }
  // kernel of an injective map is trivial
  CHECK(kernel_basis(mat({{1, 0}, {0, 1}, {1, 1}})).rank() == 0);
  // saturation: kernel of (2 4) is generated by (2,-1), not (4,-2)
  LatticeBasis k2 = kernel_basis(mat({{2, 4}}));
  REQUIRE(k2.rank() == 1);
  Int g;
  mpz_gcd(g.get_mpz_t(), k2.basis(0, 0).get_mpz_t(),
          k2.basis(0, 1).get_mpz_t());
  CHECK(g == 1);
}

TEST_CASE("solve_integer") {
  auto a = mat({{2, 0}, {0, 3}});
  auto x = solve_integer(a, {Int(4), Int(9)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK(!solve_integer(a, {Int(1), Int(0)}).has_value());
  // underdetermined consistent system
  auto y = solve_integer(mat({{1, 1}}), {Int(5)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] + (*y)[1] == 5);
}

TEST_CASE("rank and determinant against oracles") {
  std::vector<IntMatrix> cases = {
      mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}),
      mat({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}),
      mat({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})};
  for (const auto& a : cases) {
    CHECK(rank_of(a) == oracle::rank(a));
    CHECK(determinant(a) == oracle::det(a));
  }
}
