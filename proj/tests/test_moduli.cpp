#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tq/catalog.hpp"
#include "tq/moduli.hpp"

using namespace tq;

namespace {

struct Fixture {
  Fan fan;
  std::vector<TWeilDivisor> bundles;
  Quiver q;
  std::vector<std::vector<Int>> circuit_basis;
};

Fixture load(const std::string& name) {
  auto e = *catalog::find(name);
  auto qs = complete_quiver_of_sections(e.fan, e.bundles);
  Quiver q = e.arrow_order.empty() ? qs.quiver
                                   : reorder_arrows(qs.quiver, e.arrow_order);
  return {e.fan, e.bundles, q, e.circuit_basis};
}

Ideal parse_ideal(const std::vector<std::string>& gens, std::size_t n) {
  std::vector<Polynomial> ps;
  for (const auto& s : gens)
    ps.push_back(poly_parse(s, n, TermOrder::grevlex()));
  return Ideal(n, ps);
}

Ideal monomial_prime(std::size_t n, const std::vector<int>& vars) {
  std::vector<Polynomial> gens;
  for (int v : vars) {
    Monomial m(n, 0);
    m[v - 1] = 1;
    gens.push_back(Polynomial::monomial(n, m));
  }
  return Ideal(n, gens);
}

}  // namespace

TEST_CASE("first surface series") {
  Fixture f = load("hirzebruch1:list");
  CHECK(section_lattice(f.fan, f.q).rank == 4);  // dim 2 + 3 vertices - 1
  CHECK(embedding_rank_check(f.fan, f.q));
  SeriesFan sf = multilinear_fan(f.q, &f.circuit_basis);
  // ray matrix equals [[1,0,-1,0],[0,1,1,-1]] read in columns
  std::vector<std::vector<Int>> want = {{Int(1), Int(0)},
                                        {Int(0), Int(1)},
                                        {Int(-1), Int(1)},
                                        {Int(0), Int(-1)}};
  CHECK(sf.fan.rays == want);
  CHECK(sf.trees.size() == 4);
  CHECK(validate_fan(sf.fan).complete);
  // toric and relation ideals both vanish
  CHECK(toric_ideal(f.fan, f.q).is_zero_ideal());
  CHECK(relation_ideal(f.fan, f.q).is_zero_ideal());
  // irrelevant ideal = (y1,y3) ∩ (y2,y4)
  Ideal by = irrelevant_ideal(f.q, sf);
  CHECK(ideal_equal(by, intersect(monomial_prime(4, {1, 3}),
                                  monomial_prime(4, {2, 4}))));
  // base ideal in the homogeneous coordinates of the surface
  std::vector<std::string> base;
  for (const auto& m : base_ideal_monomials(f.fan, f.q))
    base.push_back(mono_to_string(m, 'x'));
  CHECK(base == std::vector<std::string>{"x3*x4", "x2*x3", "x1*x4", "x1*x2"});
  CHECK(is_basepoint_free(f.fan, f.q));
  CHECK(is_very_ample_series(f.fan, f.bundles, f.q));
  CHECK(fine_report(f.fan, f.bundles, f.q).fine);
}

TEST_CASE("second surface series and ideals") {
  Fixture f = load("hirzebruch2:list");
  CHECK(section_lattice(f.fan, f.q).rank == 5);  // dim 2 + 4 vertices - 1
  CHECK(embedding_rank_check(f.fan, f.q));
  SeriesFan sf = multilinear_fan(f.q, &f.circuit_basis);
  CHECK(sf.fan.rays.size() == 8);
  CHECK(sf.trees.size() == 18);
  CHECK(validate_fan(sf.fan).complete);

  Ideal iq = toric_ideal(f.fan, f.q);
  Ideal iq_want = parse_ideal({"y2*y4 - y1*y5", "y1*y6 - y3*y7",
                               "y2*y6 - y3*y8", "y2*y7 - y1*y8",
                               "y5*y7 - y4*y8"},
                              8);
  CHECK(ideal_equal(iq, iq_want));

  Ideal ir = relation_ideal(f.fan, f.q);
  Ideal ir_want = parse_ideal({"y2*y4 - y1*y5", "y4*y8 - y5*y7",
                               "y2*y6 - y3*y8", "y1*y6 - y3*y7"},
                              8);
  CHECK(ideal_equal(ir, ir_want));
  CHECK(ideal_equal(intersect(iq, monomial_prime(8, {3, 4, 5, 6})), ir));

  Ideal sat = saturate_by_variable_primes(ir, vertex_primes(f.q));
  CHECK(ideal_equal(sat, iq));

  // irrelevant ideal = (y1,y2) ∩ (y3,y4,y5) ∩ (y6,y7,y8)
  Ideal by = irrelevant_ideal(f.q, sf);
  CHECK(ideal_equal(
      by, intersect(intersect(monomial_prime(8, {1, 2}),
                              monomial_prime(8, {3, 4, 5})),
                    monomial_prime(8, {6, 7, 8}))));

  auto theta = special_weight(f.q);
  NefAmple na = nef_ample_membership(f.q, theta);
  CHECK(na.nef);
  CHECK(na.ample);
  NefAmple bad = nef_ample_membership(
      f.q, {Int(-3), Int(-1), Int(1), Int(3)});
  CHECK(!bad.ample);

  CHECK(fine_report(f.fan, f.bundles, f.q).fine);
}

TEST_CASE("projective line pair is not fine") {
  Fixture f = load("p1:pair");
  Ideal iq = toric_ideal(f.fan, f.q);
  CHECK(ideal_equal(iq, parse_ideal({"y2^2 - y1*y3"}, 3)));
  CHECK(relation_ideal(f.fan, f.q).is_zero_ideal());
  FineReport rep = fine_report(f.fan, f.bundles, f.q);
  CHECK(rep.basepoint_free);
  CHECK(rep.very_ample);
  CHECK(!rep.saturation_equal);
  CHECK(!rep.fine);
}

TEST_CASE("projective line triple is fine") {
  Fixture f = load("p1:fine");
  Ideal iq = toric_ideal(f.fan, f.q);
  // listed generators in the fixture's arrow numbering (labels sorted
  // lexicographically by divisor: a1 = x2^2, a2 = x1 x2, a3 = x1^2, ...)
  Ideal iq_want = parse_ideal(
      {"y2^2 - y1*y3", "y5^2 - y4*y6", "y3*y5 - y2*y6", "y2*y5 - y1*y6",
       "y3*y4 - y1*y6", "y2*y4 - y1*y5"},
      6);
  CHECK(ideal_equal(iq, iq_want));
  Ideal ir = relation_ideal(f.fan, f.q);
  Ideal ir_want = parse_ideal(
      {"y3*y5 - y2*y6", "y3*y4 - y2*y5", "y2*y5 - y1*y6", "y2*y4 - y1*y5"},
      6);
  CHECK(ideal_equal(ir, ir_want));
  CHECK(ideal_equal(ir, intersect(intersect(iq, monomial_prime(6, {1, 2, 3})),
                                  monomial_prime(6, {4, 5, 6}))));
  FineReport rep = fine_report(f.fan, f.bundles, f.q);
  CHECK(rep.fine);
}

TEST_CASE("threefold series and ideals") {
  Fixture f = load("threefold-flop:list");
  CHECK(section_lattice(f.fan, f.q).rank == 8);  // dim 3 + 6 vertices - 1
  CHECK(embedding_rank_check(f.fan, f.q));
  SeriesFan sf = multilinear_fan(f.q);
  CHECK(sf.fan.rank == 9);  // 14 arrows - 6 vertices + 1
  CHECK(sf.trees.size() == 162);

  Ideal iq = toric_ideal(f.fan, f.q);
  Ideal iq_want = parse_ideal(
      {"y9*y13 - y8*y14", "y2*y13 - y1*y14", "y9*y12 - y7*y14",
       "y8*y12 - y7*y13", "y5*y10 - y4*y11", "y2*y8 - y1*y9",
       "y5*y7 - y6*y11", "y4*y7 - y6*y10", "y2*y6 - y3*y9",
       "y1*y6 - y3*y8", "y2*y5*y12 - y3*y11*y14", "y1*y5*y12 - y3*y11*y13",
       "y2*y4*y12 - y3*y10*y14", "y1*y4*y12 - y3*y10*y13"},
      14);
  CHECK(ideal_equal(iq, iq_want));

  Ideal ir = relation_ideal(f.fan, f.q);
  Ideal ir_want = parse_ideal(
      {"y9*y12 - y7*y14", "y8*y12 - y7*y13", "y5*y7 - y6*y11",
       "y4*y7 - y6*y10", "y2*y6 - y3*y9", "y1*y6 - y3*y8",
       "y9*y11*y13 - y8*y11*y14", "y9*y10*y13 - y8*y10*y14",
       "y5*y9*y10 - y4*y9*y11", "y5*y8*y10 - y4*y8*y11",
       "y2*y5*y8 - y1*y5*y9", "y2*y4*y8 - y1*y4*y9"},
      14);
  CHECK(ideal_equal(ir, ir_want));

  // displayed intersection decomposition of the relation ideal
  auto component = [&](const std::vector<int>& vars,
                       const std::vector<std::string>& binoms) {
    std::vector<Polynomial> gens = monomial_prime(14, vars).gens();
    for (const auto& s : binoms)
      gens.push_back(poly_parse(s, 14, TermOrder::grevlex()));
    return Ideal(14, gens);
  };
  Ideal c1 = component({12, 11, 10, 7},
                       {"y2*y8 - y1*y9", "y2*y6 - y3*y9", "y1*y6 - y3*y8"});
  Ideal c2 = component({6, 5, 4, 3}, {"y9*y13 - y8*y14", "y9*y12 - y7*y14",
                                      "y8*y12 - y7*y13"});
  Ideal c3 = component({12, 11, 10, 7, 6, 5, 4, 3}, {});
  Ideal c4 = component({9, 8, 7, 6}, {});
  CHECK(ideal_equal(
      ir, intersect(iq, intersect(intersect(c1, c2), intersect(c3, c4)))));

  Ideal sat = saturate_by_variable_primes(ir, vertex_primes(f.q));
  CHECK(ideal_equal(sat, iq));
  CHECK(fine_report(f.fan, f.bundles, f.q).fine);
}

TEST_CASE("tautological degrees restrict to the input classes") {
  Fixture f = load("hirzebruch2:list");
  auto degs = tautological_degrees(f.fan, f.bundles);
  REQUIRE(degs.size() == 4);
  ClassGroup cg = class_group(f.fan);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(degs[i] == cg.projection.apply(f.bundles[i]));
  for (const auto& x : degs[0]) CHECK(x == 0);
  CHECK(degs[1] != degs[2]);
}

TEST_CASE("extension of the projective line pair to a fine list") {
  Fixture f = load("p1:pair");
  auto extended = complete_to_fine(f.fan, f.bundles, 2);
  REQUIRE(extended.size() == 3);
  // third bundle has the class of degree 4
  auto m = linearly_equivalent(f.fan, extended[2], {Int(4), Int(0)});
  CHECK(m.has_value());
  auto qs = complete_quiver_of_sections(f.fan, extended);
  CHECK(fine_report(f.fan, extended, qs.quiver).fine);
}

TEST_CASE("no extension within bound") {
  Fan p1 = catalog::projective_space(1);
  // only the structure sheaf: nothing ample can be built from it
  std::vector<TWeilDivisor> just_o = {{Int(0), Int(0)}};
  CHECK_THROWS_AS(complete_to_fine(p1, just_o, 2), error);
}
