#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tq/catalog.hpp"
#include "tq/fan.hpp"

using namespace tq;

static TWeilDivisor dv(std::vector<long> v) {
  return TWeilDivisor(v.begin(), v.end());
}

TEST_CASE("catalog fans validate as smooth and complete") {
  for (const auto& name :
       {"p1", "p2", "p3", "hirzebruch0", "hirzebruch1", "hirzebruch2",
        "hirzebruch3", "threefold-flop"}) {
    auto e = catalog::find(name);
    REQUIRE(e);
    FanReport rep = validate_fan(e->fan);
    INFO(name);
    CHECK(rep.valid);
    CHECK(rep.smooth);
    CHECK(rep.simplicial);
    CHECK(rep.complete);
  }
}

TEST_CASE("invalid fans are rejected") {
  Fan f = catalog::projective_space(2);
  f.rays[0] = {Int(2), Int(0)};  // not primitive
  CHECK(!validate_fan(f).valid);

  Fan g = catalog::projective_space(2);
  g.max_cones[0] = {0, 1};
  g.max_cones[1] = {0, 2};
  g.max_cones[2] = {0, 1};  // duplicate; facet {0} then appears 4 times
  CHECK(!validate_fan(g).valid);

  Fan h;  // overlapping cones that share no face
  h.rank = 2;
  h.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)},
            {Int(1), Int(-1)}};
  h.max_cones = {{0, 1}, {2, 3}};
  h.complete = false;
  CHECK(!validate_fan(h).valid);

  Fan k = catalog::hirzebruch(1);
  k.max_cones.pop_back();  // hole in an asserted-complete fan
  FanReport rep = validate_fan(k);
  CHECK(!rep.complete);
  CHECK(!rep.valid);
}

TEST_CASE("non-smooth simplicial fan") {
  // quadric cone patch P(1,1,2)
  Fan f;
  f.rank = 2;
  f.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-2)}};
  f.max_cones = {{0, 1}, {1, 2}, {2, 0}};
  f.complete = true;
  FanReport rep = validate_fan(f);
  CHECK(rep.valid);
  CHECK(rep.simplicial);
  CHECK(!rep.smooth);
  CHECK(rep.complete);
}

TEST_CASE("class group ranks") {
  CHECK(class_group(catalog::projective_space(2)).free_rank == 1);
  CHECK(class_group(catalog::projective_space(2)).torsion.empty());
  CHECK(class_group(catalog::hirzebruch(1)).free_rank == 2);
  CHECK(class_group(catalog::threefold_flop()).free_rank == 2);
}

TEST_CASE("linear equivalence") {
  Fan p2 = catalog::projective_space(2);
  // D1 ~ D2 ~ D3 on the projective plane
  CHECK(linearly_equivalent(p2, dv({1, 0, 0}), dv({0, 1, 0})).has_value());
  CHECK(linearly_equivalent(p2, dv({1, 0, 0}), dv({0, 0, 1})).has_value());
  CHECK(!linearly_equivalent(p2, dv({1, 0, 0}), dv({2, 0, 0})).has_value());
  Fan f1 = catalog::hirzebruch(1);
  CHECK(!linearly_equivalent(f1, catalog::hirzebruch_bundle(1, 0),
                             catalog::hirzebruch_bundle(0, 1))
             .has_value());
}

TEST_CASE("global sections") {
  Fan p1 = catalog::projective_space(1);
  CHECK(global_sections(p1, dv({2, 0})).size() == 3);
  CHECK(global_sections(p1, dv({0, 0})).size() == 1);
  CHECK(global_sections(p1, dv({-1, 0})).empty());
  Fan p2 = catalog::projective_space(2);
  CHECK(global_sections(p2, dv({1, 0, 0})).size() == 3);
  CHECK(global_sections(p2, dv({2, 0, 0})).size() == 6);
  Fan f1 = catalog::hirzebruch(1);
  // H0(O(1,0)) = {x1, x3}, H0(O(0,1)) = {x4, x2 x3, x1 x2}
  auto s10 = global_sections(f1, catalog::hirzebruch_bundle(1, 0));
  CHECK(s10.size() == 2);
  auto s01 = global_sections(f1, catalog::hirzebruch_bundle(0, 1));
  CHECK(s01.size() == 3);
}

TEST_CASE("unbounded section polytope is rejected") {
  Fan affine;  // just the first quadrant: sections of 0 are unbounded
  affine.rank = 2;
  affine.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}};
  affine.max_cones = {{0, 1}};
  affine.complete = false;
  CHECK_THROWS_WITH_AS(global_sections(affine, dv({0, 0})),
                       doctest::Contains("unbounded"), error);
}

TEST_CASE("cartier") {
  Fan p112;
  p112.rank = 2;
  p112.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-2)}};
  p112.max_cones = {{0, 1}, {1, 2}, {2, 0}};
  p112.complete = true;
  CHECK(!is_cartier(p112, dv({0, 0, 1})).has_value());
  CHECK(is_cartier(p112, dv({0, 0, 2})).has_value());
  CHECK(is_cartier(catalog::projective_space(2), dv({0, 0, 1})).has_value());
}

TEST_CASE("positivity on smooth surfaces") {
  Fan f1 = catalog::hirzebruch(1);
  Positivity p10 = positivity(f1, catalog::hirzebruch_bundle(1, 0));
  CHECK(p10.basepoint_free);
  CHECK(!p10.ample);
  Positivity p11 = positivity(f1, catalog::hirzebruch_bundle(1, 1));
  CHECK(p11.basepoint_free);
  CHECK(p11.ample);
  CHECK(p11.very_ample);
  Positivity bad = positivity(f1, catalog::hirzebruch_bundle(-1, 0));
  CHECK(!bad.basepoint_free);
  Fan p2 = catalog::projective_space(2);
  CHECK(positivity(p2, dv({1, 0, 0})).very_ample);
}

TEST_CASE("positivity on the quadric cone surface") {
  Fan p112;
  p112.rank = 2;
  p112.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-2)}};
  p112.max_cones = {{0, 1}, {1, 2}, {2, 0}};
  p112.complete = true;
  // 2 D3 embeds the quadric cone into P^3
  Positivity p = positivity(p112, dv({0, 0, 2}));
  CHECK(p.basepoint_free);
  CHECK(p.ample);
  CHECK(p.very_ample);
  CHECK_THROWS_AS(positivity(p112, dv({0, 0, 1})), error);
}

TEST_CASE("dual cone hilbert basis of the A1 singularity") {
  Fan f;
  f.rank = 2;
  f.rays = {{Int(1), Int(0)}, {Int(1), Int(2)}};
  f.max_cones = {{0, 1}};
  f.complete = false;
  auto hb = dual_cone_hilbert_basis(f, {0, 1});
  // dual of cone((1,0),(1,2)) = cone((0,1),(2,-1)); Hilbert basis adds (1,0)
  std::vector<std::vector<Int>> want = {dv({0, 1}), dv({1, 0}), dv({2, -1})};
  std::sort(hb.begin(), hb.end());
  std::sort(want.begin(), want.end());
  CHECK(hb == want);
}

TEST_CASE("multiplication surjectivity") {
  Fan p1 = catalog::projective_space(1);
  CHECK(multiplication_surjective(p1, {dv({1, 0}), dv({1, 0})}));
  CHECK(multiplication_surjective(p1, {dv({0, 0}), dv({2, 0})}));
  Fan f1 = catalog::hirzebruch(1);
  CHECK(multiplication_surjective(
      f1, {catalog::hirzebruch_bundle(1, 0), catalog::hirzebruch_bundle(0, 1)}));
}
