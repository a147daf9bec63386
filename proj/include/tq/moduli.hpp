#pragma once

// Multilinear series attached to a quiver of sections: the section
// lattice, the GIT fan with its irrelevant ideal in two presentations,
// the toric ideal and the relation ideal, and the positivity /
// fine-moduli certificates.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tq/fan.hpp"
#include "tq/groebner.hpp"
#include "tq/intmat.hpp"
#include "tq/quiver.hpp"

namespace tq {

// pi = (inc; div): vertex rows stacked over ray rows, one column per arrow.
struct SectionLattice {
  IntMatrix pi;
  std::size_t rank = 0;
};

inline SectionLattice section_lattice(const Fan& fan, const Quiver& q) {
  IntMatrix inc = incidence_matrix(q);
  std::size_t rows = q.num_vertices + fan.rays.size();
  IntMatrix pi(rows, q.arrows.size());
  for (int i = 0; i < q.num_vertices; ++i)
    for (std::size_t a = 0; a < q.arrows.size(); ++a) pi(i, a) = inc(i, a);
  for (std::size_t r = 0; r < fan.rays.size(); ++r)
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      pi(q.num_vertices + r, a) = q.arrows[a].label[r];
  return {pi, rank_of(pi)};
}

// rank(pi) should be dim X + (#vertices - 1)
inline bool embedding_rank_check(const Fan& fan, const Quiver& q) {
  return section_lattice(fan, q).rank ==
         static_cast<std::size_t>(fan.rank + q.num_vertices - 1);
}

// Classes of the bundles in the chosen class-group coordinates.
inline std::vector<std::vector<Int>> tautological_degrees(
    const Fan& fan, const std::vector<TWeilDivisor>& bundles) {
  ClassGroup cg = class_group(fan);
  std::vector<std::vector<Int>> out;
  for (const auto& b : bundles) out.push_back(cg.projection.apply(b));
  return out;
}

// The GIT quotient fan of the multilinear series: one ray per arrow
// (columns of the circulation basis), one maximal cone per rooted
// spanning tree (spanned by the rays of the arrows outside the tree).
struct SeriesFan {
  Fan fan;                           // rays indexed by arrows
  std::vector<std::vector<int>> trees;  // arrow sets, aligned with max_cones
};

inline SeriesFan multilinear_fan(
    const Quiver& q,
    const std::vector<std::vector<Int>>* supplied_basis = nullptr) {
  LatticeBasis basis = circulation_basis(q, supplied_basis);
  std::size_t r = basis.rank(), m = q.arrows.size();
  SeriesFan sf;
  sf.fan.rank = static_cast<int>(r);
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<Int> ray(r);
    for (std::size_t i = 0; i < r; ++i) ray[i] = basis.basis(i, a);
    sf.fan.rays.push_back(ray);
  }
  sf.trees = spanning_trees_rooted(q);
  for (const auto& tree : sf.trees) {
    std::vector<int> cone;
    for (std::size_t a = 0; a < m; ++a)
      if (std::find(tree.begin(), tree.end(), static_cast<int>(a)) ==
          tree.end())
        cone.push_back(static_cast<int>(a));
    if (cone.size() != r)
      throw error("NotSimplicial", "tree complement has wrong size");
    IntMatrix cm(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) cm(i, j) = sf.fan.rays[cone[i]][j];
    Int det = determinant(cm);
    if (det != 1 && det != -1)
      throw error("NotUnimodular", "tree-complement cone");
    sf.fan.max_cones.push_back(cone);
  }
  sf.fan.complete = true;
  FanReport rep = validate_fan(sf.fan);
  if (!rep.valid || !rep.complete)
    throw error("InvalidSeriesFan", rep.errors.empty() ? "incomplete"
                                                       : rep.errors.front());
  return sf;
}

// Irrelevant ideal, two presentations asserted equal:
//   product over trees of prod_{a outside tree} y_a, and
//   intersection over non-root vertices of (y_a : head(a) = v).
inline Ideal irrelevant_ideal(const Quiver& q, const SeriesFan& sf) {
  std::size_t m = q.arrows.size();
  std::vector<Polynomial> gens;
  for (const auto& tree : sf.trees) {
    Monomial mono(m, 0);
    for (int a : tree) mono[a] = 1;
    gens.push_back(Polynomial::monomial(m, mono));
  }
  Ideal by_trees(m, gens);
  Ideal by_vertices(m, {Polynomial::monomial(m, Monomial(m, 0))});
  for (int v = 1; v < q.num_vertices; ++v) {
    std::vector<Polynomial> vgens;
    for (std::size_t a = 0; a < m; ++a)
      if (q.arrows[a].head == v) {
        Monomial mono(m, 0);
        mono[a] = 1;
        vgens.push_back(Polynomial::monomial(m, mono));
      }
    by_vertices = intersect(by_vertices, Ideal(m, vgens));
  }
  if (!ideal_equal(by_trees, by_vertices))
    throw error("InternalInconsistency", "irrelevant ideal presentations");
  return by_trees;
}

// Variables generating the monomial prime (y_a : head(a) = v), per vertex.
inline std::vector<std::vector<std::size_t>> vertex_primes(const Quiver& q) {
  std::vector<std::vector<std::size_t>> primes;
  for (int v = 1; v < q.num_vertices; ++v) {
    std::vector<std::size_t> vars;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].head == v) vars.push_back(a);
    primes.push_back(vars);
  }
  return primes;
}

struct NefAmple {
  bool nef = false;
  bool ample = false;
};

// Weight-space positivity: theta (summing to zero) is nef / ample iff it
// lies in / strictly inside the cone spanned by the incidence vectors of
// every rooted spanning tree, in the coordinates dropping the root vertex.
inline NefAmple nef_ample_membership(const Quiver& q,
                                     const std::vector<Int>& theta) {
  if (static_cast<int>(theta.size()) != q.num_vertices)
    throw error("DimensionMismatch", "weight length");
  Int sum = 0;
  for (const Int& t : theta) sum += t;
  if (sum != 0) return {false, false};
  int r = q.num_vertices - 1;
  std::vector<Int> point(theta.begin() + 1, theta.end());
  NefAmple res{true, true};
  for (const auto& tree : spanning_trees_rooted(q)) {
    std::vector<std::vector<Int>> gens;
    for (int a : tree) {
      std::vector<Int> g(r, 0);
      if (q.arrows[a].head > 0) g[q.arrows[a].head - 1] = 1;
      if (q.arrows[a].tail > 0) g[q.arrows[a].tail - 1] = -1;
      gens.push_back(g);
    }
    if (!cone_membership(gens, point, false)) res.nef = false;
    if (!cone_membership(gens, point, true)) res.ample = false;
    if (!res.nef && !res.ample) break;
  }
  return res;
}

// Base locus certificate in the coordinate ring of X: one monomial
// prod_{a in tree} label(a) per rooted spanning tree.
inline std::vector<Monomial> base_ideal_monomials(const Fan& fan,
                                                  const Quiver& q) {
  std::set<Monomial> mons;
  for (const auto& tree : spanning_trees_rooted(q)) {
    Monomial mono(fan.rays.size(), 0);
    for (int a : tree)
      for (std::size_t r = 0; r < fan.rays.size(); ++r)
        mono[r] += static_cast<int>(q.arrows[a].label[r].get_si());
    mons.insert(mono);
  }
  return {mons.begin(), mons.end()};
}

// Basepoint-freeness of the series. Two equivalent tests, both run:
// (c) for every maximal cone of the fan, the arrows whose labels avoid
//     the cone's rays contain a rooted spanning tree;
// (b) every irrelevant-ideal generator of X lies in the radical of the
//     base ideal (support containment for monomial ideals).
inline bool is_basepoint_free(const Fan& fan, const Quiver& q) {
  auto base = base_ideal_monomials(fan, q);
  bool b = true, c = true;
  for (const auto& cone : fan.max_cones) {
    std::set<int> in_cone(cone.begin(), cone.end());
    // (c): reachability through arrows supported off the cone
    std::vector<char> reach(q.num_vertices, 0);
    reach[0] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& a : q.arrows) {
        if (!reach[a.tail] || reach[a.head]) continue;
        bool off = true;
        for (int r : in_cone)
          if (a.label[r] != 0) off = false;
        if (off) {
          reach[a.head] = 1;
          grew = true;
        }
      }
    }
    for (int v = 0; v < q.num_vertices; ++v)
      if (!reach[v]) c = false;
    // (b): some base monomial supported inside the cone's complement
    bool found = false;
    for (const auto& mono : base) {
      bool off = true;
      for (int r : in_cone)
        if (mono[r] != 0) off = false;
      if (off) found = true;
    }
    if (!found) b = false;
  }
  if (b != c) throw error("InternalInconsistency", "basepoint-free tests");
  return b;
}

// Toric ideal I_Q = lattice ideal of ker(pi).
inline Ideal toric_ideal(const Fan& fan, const Quiver& q) {
  SectionLattice sl = section_lattice(fan, q);
  return lattice_ideal(kernel_basis(sl.pi), q.arrows.size());
}

// Relation ideal I_R: one binomial y^{u} - y^{u'} per defining relation.
inline Ideal relation_ideal(const Fan& fan, const Quiver& q) {
  std::vector<Polynomial> gens;
  for (const auto& rel : quiver_relations(q, fan.rays.size())) {
    // y^{p} - y^{p'} for the two path monomials; arrows shared by both
    // paths must not be cancelled, or the ideal grows
    std::vector<Int> u = path_weight(q, rel.lhs);
    std::vector<Int> u2 = path_weight(q, rel.rhs);
    Monomial lm(u.size()), rm(u2.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      lm[i] = static_cast<int>(u[i].get_si());
      rm[i] = static_cast<int>(u2[i].get_si());
    }
    gens.push_back(Polynomial(q.arrows.size(), {{1, lm}, {-1, rm}},
                              TermOrder::grevlex()));
  }
  return Ideal(q.arrows.size(), gens);
}

// All flows u in N^{Q1} with inc(u) = theta, enumerated vertex by vertex
// in topological order (arrows of the quiver only run forward).
inline std::vector<std::vector<Int>> special_weight_flows(const Quiver& q) {
  int n = q.num_vertices;
  std::vector<std::vector<int>> out_arrows(n);
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    out_arrows[q.arrows[a].tail].push_back(static_cast<int>(a));
  std::vector<std::vector<Int>> flows;
  std::vector<Int> u(q.arrows.size(), 0);
  std::vector<Int> inflow(n, 0);
  std::function<void(int)> visit = [&](int v) {
    if (v == n) {
      flows.push_back(u);
      return;
    }
    Int supply = inflow[v] - (v == 0 ? Int(-(n - 1)) : Int(1));
    if (supply < 0) return;
    const auto& outs = out_arrows[v];
    if (outs.empty()) {
      if (supply == 0) visit(v + 1);
      return;
    }
    // compositions of `supply` across the outgoing arrows
    std::function<void(std::size_t, Int)> split = [&](std::size_t k,
                                                      Int rest) {
      if (k + 1 == outs.size()) {
        u[outs[k]] = rest;
        inflow[q.arrows[outs[k]].head] += rest;
        visit(v + 1);
        inflow[q.arrows[outs[k]].head] -= rest;
        u[outs[k]] = 0;
        return;
      }
      for (Int x = 0; x <= rest; ++x) {
        u[outs[k]] = x;
        inflow[q.arrows[outs[k]].head] += x;
        split(k + 1, rest - x);
        inflow[q.arrows[outs[k]].head] -= x;
        u[outs[k]] = 0;
      }
    };
    split(0, supply);
  };
  visit(0);
  return flows;
}

// Is the map to the multilinear series a closed embedding?  Fast path:
// the product bundle is very ample and the multiplication map of the
// individual section spaces onto its sections is surjective.  Otherwise
// fall back to the per-cone semigroup test on the sub-linear-system cut
// out by the special-weight flows.
inline bool is_very_ample_series(const Fan& fan,
                                 const std::vector<TWeilDivisor>& bundles,
                                 const Quiver& q) {
  if (!is_basepoint_free(fan, q)) return false;
  TWeilDivisor total(fan.rays.size(), 0);
  for (const auto& b : bundles)
    for (std::size_t r = 0; r < total.size(); ++r) total[r] += b[r];
  auto cartier = is_cartier(fan, total);
  if (!cartier)
    throw error("PreconditionFailed", "product bundle is not Cartier");
  if (multiplication_surjective(fan, bundles) &&
      positivity(fan, total).very_ample)
    return true;
  // exhaustive path: lattice points reached by special-weight flows
  std::vector<std::vector<Int>> points;
  IntMatrix v = ray_pairing_matrix(fan);
  for (const auto& u : special_weight_flows(q)) {
    TWeilDivisor div(fan.rays.size(), 0);
    for (std::size_t a = 0; a < u.size(); ++a)
      for (std::size_t r = 0; r < div.size(); ++r)
        div[r] += u[a] * q.arrows[a].label[r];
    std::vector<Int> rhs(div.size());
    for (std::size_t r = 0; r < div.size(); ++r) rhs[r] = div[r] - total[r];
    auto m = solve_integer(v, rhs);
    if (!m) throw error("InternalInconsistency", "flow divisor class");
    if (std::find(points.begin(), points.end(), *m) == points.end())
      points.push_back(*m);
  }
  for (std::size_t s = 0; s < fan.max_cones.size(); ++s) {
    const auto& cone = fan.max_cones[s];
    const std::vector<Int>& ms = (*cartier)[s];
    if (std::find(points.begin(), points.end(), ms) == points.end())
      return false;
    std::vector<std::vector<Int>> shifted;
    for (const auto& p : points) {
      std::vector<Int> d(p.size());
      for (std::size_t j = 0; j < p.size(); ++j) d[j] = p[j] - ms[j];
      shifted.push_back(d);
    }
    std::vector<std::vector<Int>> gens;
    for (int r : cone) gens.push_back(fan.rays[r]);
    auto grade = [&](const std::vector<Int>& m) {
      Int val = 0;
      for (const auto& g : gens)
        for (std::size_t j = 0; j < m.size(); ++j) val += m[j] * g[j];
      return val;
    };
    std::map<std::vector<Int>, bool> memo;
    for (const auto& h : dual_cone_hilbert_basis(fan, cone))
      if (!n_combination(h, shifted, grade, memo)) return false;
  }
  return true;
}

struct FineReport {
  bool connected = false;
  bool rooted = false;
  bool acyclic = false;
  bool basepoint_free = false;
  bool very_ample = false;
  bool saturation_equal = false;
  bool fine = false;
};

inline FineReport fine_report(const Fan& fan,
                              const std::vector<TWeilDivisor>& bundles,
                              const Quiver& q) {
  FineReport rep;
  rep.acyclic = true;  // arrows only run forward by construction
  try {
    auto trees = spanning_trees_rooted(q);
    rep.rooted = !trees.empty();
  } catch (const error&) {
    rep.rooted = false;
  }
  // connected as an undirected graph
  std::vector<char> seen(q.num_vertices, 0);
  seen[0] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& a : q.arrows) {
      if (seen[a.tail] != seen[a.head]) {
        seen[a.tail] = seen[a.head] = 1;
        grew = true;
      }
    }
  }
  rep.connected =
      std::all_of(seen.begin(), seen.end(), [](char x) { return x != 0; });
  if (!rep.connected || !rep.rooted) return rep;
  rep.basepoint_free = is_basepoint_free(fan, q);
  if (!rep.basepoint_free) return rep;
  rep.very_ample = is_very_ample_series(fan, bundles, q);
  Ideal iq = toric_ideal(fan, q);
  Ideal ir = relation_ideal(fan, q);
  Ideal saturated = saturate_by_variable_primes(ir, vertex_primes(q));
  rep.saturation_equal = ideal_equal(saturated, iq);
  rep.fine = rep.very_ample && rep.saturation_equal;
  return rep;
}

// Search for an extension of the list by one or two ample products so the
// extended list presents X as a fine moduli space.
inline std::vector<TWeilDivisor> complete_to_fine(
    const Fan& fan, const std::vector<TWeilDivisor>& bundles, int bound = 2) {
  std::size_t k = bundles.size() - 1;  // nonzero bundles
  std::vector<int> b(k, 1);
  auto advance = [&]() -> bool {
    for (std::size_t i = 0; i < k; ++i) {
      if (b[i] < bound) {
        ++b[i];
        for (std::size_t j = 0; j < i; ++j) b[j] = 1;
        return true;
      }
    }
    return false;
  };
  auto equivalent_to_some = [&](const TWeilDivisor& d,
                                const std::vector<TWeilDivisor>& list) {
    for (const auto& e : list)
      if (linearly_equivalent(fan, e, d)) return true;
    return false;
  };
  do {
    TWeilDivisor a(fan.rays.size(), 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t r = 0; r < a.size(); ++r)
        a[r] += Int(b[i]) * bundles[i + 1][r];
    auto cartier = is_cartier(fan, a);
    if (!cartier || !positivity(fan, a).ample) continue;
    std::vector<TWeilDivisor> trial = bundles;
    if (!equivalent_to_some(a, trial)) trial.push_back(a);
    TWeilDivisor a2(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) a2[r] = 2 * a[r];
    if (!equivalent_to_some(a2, trial)) trial.push_back(a2);
    if (trial.size() == bundles.size()) continue;
    try {
      auto qs = complete_quiver_of_sections(fan, trial);
      if (fine_report(fan, trial, qs.quiver).fine) return trial;
    } catch (const error&) {
      continue;
    }
  } while (advance());
  throw error("NoAmpleCombination", "no extension found within bound");
}

}  // namespace tq
