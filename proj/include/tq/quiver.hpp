#pragma once

// Quivers of sections: arrows labelled by torus-invariant divisors,
// circulation lattices, rooted spanning trees, path enumeration, and the
// quiver of sections construction with its defining relations.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tq/fan.hpp"
#include "tq/intmat.hpp"

namespace tq {

struct Arrow {
  int tail = 0;
  int head = 0;
  TWeilDivisor label;  // effective divisor
};

struct Quiver {
  int num_vertices = 0;
  std::vector<Arrow> arrows;
};

// Vertex rows of the incidence map: inc(a) = e_head - e_tail.
// (|Q0| x |Q1|).
inline IntMatrix incidence_matrix(const Quiver& q) {
  IntMatrix m(q.num_vertices, q.arrows.size());
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    m(q.arrows[a].head, a) += 1;
    m(q.arrows[a].tail, a) -= 1;
  }
  return m;
}

// Basis of the circulation lattice ker(inc); HNF-canonical rows, or a
// caller-supplied basis validated to span the same lattice.
inline LatticeBasis circulation_basis(
    const Quiver& q,
    const std::vector<std::vector<Int>>* supplied = nullptr) {
  LatticeBasis ker = kernel_basis(incidence_matrix(q));
  if (!supplied) return ker;
  if (supplied->size() != ker.rank())
    throw error("SuppliedBasisInvalid", "wrong rank");
  for (const auto& row : *supplied)
    if (row.size() != q.arrows.size())
      throw error("SuppliedBasisInvalid", "wrong row length");
  IntMatrix cand = IntMatrix::from_rows(*supplied);
  if (hnf_canonical_rows(cand) != hnf_canonical_rows(ker.basis))
    throw error("SuppliedBasisInvalid", "does not span the circulation lattice");
  LatticeBasis out;
  out.ambient_dim = ker.ambient_dim;
  out.basis = cand;
  return out;
}

inline std::size_t path_cap() {
  if (const char* env = std::getenv("TQ_PATH_CAP")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

struct Path {
  std::vector<int> arrows;  // arrow indices in traversal order
};

// All directed paths from `from` to `to`, including the trivial path when
// from == to. Arrows explored in index order; throws LimitExceeded past cap.
inline std::vector<Path> enumerate_paths(const Quiver& q, int from, int to) {
  std::vector<std::vector<int>> out_arrows(q.num_vertices);
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    out_arrows[q.arrows[a].tail].push_back(static_cast<int>(a));
  std::vector<Path> paths;
  std::size_t cap = path_cap();
  std::vector<int> cur;
  std::vector<char> on_stack(q.num_vertices, 0);
  std::function<void(int)> dfs = [&](int v) {
    if (v == to) {
      if (paths.size() >= cap)
        throw error("LimitExceeded", "path enumeration cap reached");
      paths.push_back({cur});
    }
    on_stack[v] = 1;
    for (int a : out_arrows[v]) {
      int w = q.arrows[a].head;
      if (on_stack[w]) continue;  // acyclic quivers only revisit via cycles
      cur.push_back(a);
      dfs(w);
      cur.pop_back();
    }
    on_stack[v] = 0;
  };
  dfs(from);
  return paths;
}

inline TWeilDivisor path_divisor(const Quiver& q, const Path& p,
                                 std::size_t num_rays) {
  TWeilDivisor d(num_rays, 0);
  for (int a : p.arrows)
    for (std::size_t i = 0; i < num_rays; ++i) d[i] += q.arrows[a].label[i];
  return d;
}

inline std::vector<Int> path_weight(const Quiver& q, const Path& p) {
  std::vector<Int> u(q.arrows.size(), 0);
  for (int a : p.arrows) u[a] += 1;
  return u;
}

// Spanning trees rooted at vertex 0: one incoming arrow chosen for every
// other vertex, such that every vertex reaches back to the root.
inline std::vector<std::vector<int>> spanning_trees_rooted(const Quiver& q) {
  int n = q.num_vertices;
  std::vector<std::vector<int>> in_arrows(n);
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    in_arrows[q.arrows[a].head].push_back(static_cast<int>(a));
  for (int v = 1; v < n; ++v)
    if (in_arrows[v].empty())
      throw error("VertexUnreachable", "vertex " + std::to_string(v));
  std::vector<std::vector<int>> trees;
  std::vector<int> choice(n, -1);
  std::function<void(int)> pick = [&](int v) {
    if (v == n) {
      // verify every vertex walks back to the root
      for (int w = 1; w < n; ++w) {
        int x = w, steps = 0;
        while (x != 0 && steps <= n) {
          x = q.arrows[choice[x]].tail;
          ++steps;
        }
        if (x != 0) return;
      }
      std::vector<int> t;
      for (int w = 1; w < n; ++w) t.push_back(choice[w]);
      trees.push_back(t);
      return;
    }
    for (int a : in_arrows[v]) {
      choice[v] = a;
      pick(v + 1);
    }
    choice[v] = -1;
  };
  pick(1);
  if (trees.empty()) throw error("VertexUnreachable", "no rooted spanning tree");
  return trees;
}

// Sections of D not factoring through an intermediate bundle in the list:
// div is indecomposable from i to j if no k != i, j and effective
// divisors give div = (section i->k) + (section k->j).
inline std::vector<TWeilDivisor> indecomposable_sections(
    const Fan& fan, const std::vector<TWeilDivisor>& bundles, int i, int j) {
  std::vector<Int> diff(fan.rays.size());
  for (std::size_t r = 0; r < diff.size(); ++r)
    diff[r] = bundles[j][r] - bundles[i][r];
  std::vector<TWeilDivisor> secs = global_sections(fan, diff);
  std::vector<TWeilDivisor> out;
  for (const auto& s : secs) {
    bool decomposable = false;
    for (std::size_t k = 0; k < bundles.size() && !decomposable; ++k) {
      if (static_cast<int>(k) == i || static_cast<int>(k) == j) continue;
      std::vector<Int> dik(diff.size()), dkj(diff.size());
      for (std::size_t r = 0; r < diff.size(); ++r) {
        dik[r] = bundles[k][r] - bundles[i][r];
        dkj[r] = bundles[j][r] - bundles[k][r];
      }
      for (const auto& s1 : global_sections(fan, dik)) {
        bool fits = true;
        TWeilDivisor s2(diff.size());
        for (std::size_t r = 0; r < diff.size(); ++r) {
          s2[r] = s[r] - s1[r];
          if (s2[r] < 0) fits = false;
        }
        if (!fits) continue;
        auto dkj_secs = global_sections(fan, dkj);
        if (std::find(dkj_secs.begin(), dkj_secs.end(), s2) !=
            dkj_secs.end()) {
          decomposable = true;
          break;
        }
      }
    }
    if (!decomposable) out.push_back(s);
  }
  return out;
}

// Quiver of sections of a bundle list. Bundles are reordered (stably) so
// that arrows only run forward; arrows come out sorted by
// (tail, head, label). Returns the quiver plus the vertex permutation
// applied (order[v] = original index now at vertex v).
struct QuiverOfSections {
  Quiver quiver;
  std::vector<int> vertex_order;
};

inline QuiverOfSections complete_quiver_of_sections(
    const Fan& fan, const std::vector<TWeilDivisor>& bundles) {
  std::size_t n = bundles.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (linearly_equivalent(fan, bundles[i], bundles[j]))
        throw error("DuplicateBundle",
                    "bundles " + std::to_string(i) + " and " +
                        std::to_string(j) + " are linearly equivalent");
  // sections between every ordered pair
  std::vector<std::vector<std::vector<TWeilDivisor>>> secs(
      n, std::vector<std::vector<TWeilDivisor>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      secs[i][j] = indecomposable_sections(fan, bundles, static_cast<int>(i),
                                           static_cast<int>(j));
    }
  // topological order: i precedes j when a nonzero section i -> j exists
  // (arrow direction); stable on ties
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  auto has_arrow = [&](int i, int j) { return !secs[i][j].empty(); };
  for (std::size_t round = 0; round < n; ++round) {
    int next = -1;
    for (std::size_t i = 0; i < n && next < 0; ++i) {
      if (placed[i]) continue;
      bool source = true;
      for (std::size_t j = 0; j < n; ++j)
        if (!placed[j] && j != i && has_arrow(static_cast<int>(j),
                                              static_cast<int>(i)))
          source = false;
      if (source) next = static_cast<int>(i);
    }
    if (next < 0) throw error("NoValidOrdering", "section cycle among bundles");
    placed[next] = 1;
    order.push_back(next);
  }
  QuiverOfSections result;
  result.vertex_order = order;
  result.quiver.num_vertices = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const auto& label : secs[order[i]][order[j]])
        result.quiver.arrows.push_back(
            {static_cast<int>(i), static_cast<int>(j), label});
    }
  std::sort(result.quiver.arrows.begin(), result.quiver.arrows.end(),
            [](const Arrow& a, const Arrow& b) {
              if (a.tail != b.tail) return a.tail < b.tail;
              if (a.head != b.head) return a.head < b.head;
              return a.label < b.label;
            });
  if (n > 1 && result.quiver.arrows.empty())
    throw error("EmptySections", "no sections between any pair of bundles");
  return result;
}

// Reorder arrows to match an externally fixed numbering given as
// (tail, head, label) triples; throws if the sets differ.
inline Quiver reorder_arrows(const Quiver& q, const std::vector<Arrow>& order) {
  if (order.size() != q.arrows.size())
    throw error("ArrowMismatch", "arrow count differs");
  Quiver out;
  out.num_vertices = q.num_vertices;
  std::vector<char> used(q.arrows.size(), 0);
  for (const auto& want : order) {
    bool found = false;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (used[a]) continue;
      if (q.arrows[a].tail == want.tail && q.arrows[a].head == want.head &&
          q.arrows[a].label == want.label) {
        out.arrows.push_back(q.arrows[a]);
        used[a] = 1;
        found = true;
        break;
      }
    }
    if (!found) throw error("ArrowMismatch", "arrow not present");
  }
  return out;
}

// Defining relations: for each (tail, head, path divisor) class with more
// than one path, equate every path with the lexicographically smallest.
struct Relation {
  Path lhs;
  Path rhs;
};

inline std::vector<Relation> quiver_relations(const Quiver& q,
                                              std::size_t num_rays) {
  std::vector<Relation> rels;
  for (int i = 0; i < q.num_vertices; ++i)
    for (int j = i + 1; j < q.num_vertices; ++j) {
      std::map<TWeilDivisor, std::vector<Path>> classes;
      for (const auto& p : enumerate_paths(q, i, j))
        classes[path_divisor(q, p, num_rays)].push_back(p);
      for (auto& [div, paths] : classes) {
        if (paths.size() < 2) continue;
        std::sort(paths.begin(), paths.end(),
                  [](const Path& a, const Path& b) {
                    return a.arrows < b.arrows;
                  });
        for (std::size_t k = 1; k < paths.size(); ++k)
          rels.push_back({paths[k], paths[0]});
      }
    }
  return rels;
}

// Weight singling out the root: theta = (-(|Q0|-1), 1, ..., 1).
inline std::vector<Int> special_weight(const Quiver& q) {
  std::vector<Int> theta(q.num_vertices, 1);
  theta[0] = -(q.num_vertices - 1);
  return theta;
}

inline std::string divisor_label(const TWeilDivisor& d) {
  std::string s;
  for (std::size_t r = 0; r < d.size(); ++r) {
    if (d[r] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(r + 1);
    if (d[r] > 1) s += "^" + d[r].get_str();
  }
  return s.empty() ? "1" : s;
}

inline std::string quiver_to_dot(const Quiver& q) {
  std::string s = "digraph Q {\n";
  for (int v = 0; v < q.num_vertices; ++v)
    s += "  v" + std::to_string(v) + ";\n";
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    s += "  v" + std::to_string(q.arrows[a].tail) + " -> v" +
         std::to_string(q.arrows[a].head) + " [label=\"a" +
         std::to_string(a + 1) + ": " + divisor_label(q.arrows[a].label) +
         "\"];\n";
  s += "}\n";
  return s;
}

}  // namespace tq
