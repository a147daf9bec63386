#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "tq/catalog.hpp"
#include "tq/quiver.hpp"

using namespace tq;

static Quiver fixture(const std::string& name) {
  auto e = *catalog::find(name);
  auto qs = complete_quiver_of_sections(e.fan, e.bundles);
  return e.arrow_order.empty() ? qs.quiver
                               : reorder_arrows(qs.quiver, e.arrow_order);
}

TEST_CASE("first surface fixture quiver") {
  auto e = *catalog::find("hirzebruch1:list");
  Quiver q = fixture("hirzebruch1:list");
  REQUIRE(q.arrows.size() == 4);
  CHECK(q.arrows[0].tail == 0);
  CHECK(q.arrows[0].head == 1);
  CHECK(divisor_label(q.arrows[0].label) == "x1");
  CHECK(divisor_label(q.arrows[1].label) == "x2");
  CHECK(q.arrows[1].tail == 1);
  CHECK(divisor_label(q.arrows[2].label) == "x3");
  CHECK(divisor_label(q.arrows[3].label) == "x4");
  CHECK(quiver_relations(q, 4).empty());
  CHECK(spanning_trees_rooted(q).size() == 4);
  CHECK(oracle::tree_count(q) == 4);
}

TEST_CASE("second surface fixture quiver") {
  Quiver q = fixture("hirzebruch2:list");
  REQUIRE(q.arrows.size() == 8);
  // the star scheme also relates length-three paths; those binomials are
  // consequences of the four quadratic generators (see the moduli tests)
  CHECK(quiver_relations(q, 4).size() == 8);
  CHECK(spanning_trees_rooted(q).size() == 18);
  CHECK(oracle::tree_count(q) == 18);
  // path counts from the adjacency oracle (0 -> 3 crosses three levels)
  CHECK(oracle::path_count(q, 0, 3) == 12);
  CHECK(enumerate_paths(q, 0, 3).size() == 12);
  CHECK(enumerate_paths(q, 0, 0).size() == 1);  // trivial path only
}

TEST_CASE("threefold fixture quiver") {
  Quiver q = fixture("threefold-flop:list");
  REQUIRE(q.arrows.size() == 14);
  CHECK(spanning_trees_rooted(q).size() == 162);
  CHECK(oracle::tree_count(q) == 162);
  CHECK(enumerate_paths(q, 0, 5).size() ==
        static_cast<std::size_t>(oracle::path_count(q, 0, 5).get_ui()));
}

TEST_CASE("incidence and circulation") {
  Quiver q = fixture("hirzebruch1:list");
  IntMatrix inc = incidence_matrix(q);
  // column sums vanish
  for (std::size_t a = 0; a < 4; ++a) {
    Int s = 0;
    for (int v = 0; v < 3; ++v) s += inc(v, a);
    CHECK(s == 0);
  }
  LatticeBasis cir = circulation_basis(q);
  CHECK(cir.rank() == q.arrows.size() - q.num_vertices + 1);
  // a supplied basis spanning the same lattice is accepted verbatim
  auto e = *catalog::find("hirzebruch1:list");
  LatticeBasis sup = circulation_basis(q, &e.circuit_basis);
  CHECK(sup.basis == IntMatrix::from_rows(e.circuit_basis));
  // a non-spanning candidate is rejected
  std::vector<std::vector<Int>> bad = {
      {Int(2), Int(0), Int(-2), Int(0)},
      {Int(0), Int(1), Int(1), Int(-1)}};
  CHECK_THROWS_AS(circulation_basis(q, &bad), error);
  std::vector<std::vector<Int>> wrong_rank = {{Int(1), Int(0), Int(-1), Int(0)}};
  CHECK_THROWS_AS(circulation_basis(q, &wrong_rank), error);
}

TEST_CASE("path cap") {
  Quiver q = fixture("threefold-flop:list");
  setenv("TQ_PATH_CAP", "3", 1);
  CHECK_THROWS_AS(enumerate_paths(q, 0, 5), error);
  unsetenv("TQ_PATH_CAP");
  CHECK(enumerate_paths(q, 0, 5).size() > 3);
}

TEST_CASE("indecomposable sections exclude factoring divisors") {
  auto e = *catalog::find("hirzebruch1:list");
  // 0 -> 2 has three sections but only x4 is indecomposable
  auto all = global_sections(e.fan, e.bundles[2]);
  CHECK(all.size() == 3);
  auto ind = indecomposable_sections(e.fan, e.bundles, 0, 2);
  REQUIRE(ind.size() == 1);
  CHECK(divisor_label(ind[0]) == "x4");
}

TEST_CASE("duplicate bundles rejected") {
  Fan p2 = catalog::projective_space(2);
  std::vector<TWeilDivisor> dup = {{Int(0), Int(0), Int(0)},
                                   {Int(1), Int(0), Int(0)},
                                   {Int(0), Int(1), Int(0)}};
  CHECK_THROWS_AS(complete_quiver_of_sections(p2, dup), error);
}

TEST_CASE("vertex reordering puts sources first") {
  Fan p1 = catalog::projective_space(1);
  std::vector<TWeilDivisor> shuffled = {{Int(0), Int(0)},
                                        {Int(4), Int(0)},
                                        {Int(2), Int(0)}};
  auto qs = complete_quiver_of_sections(p1, shuffled);
  CHECK(qs.vertex_order == std::vector<int>{0, 2, 1});
  for (const auto& a : qs.quiver.arrows) CHECK(a.tail < a.head);
}

TEST_CASE("special weight") {
  Quiver q = fixture("hirzebruch2:list");
  auto theta = special_weight(q);
  CHECK(theta == std::vector<Int>{Int(-3), Int(1), Int(1), Int(1)});
}
