#pragma once

// Fans, T-invariant divisors, class groups, global sections via polytope
// lattice points, and positivity tests on a projective toric variety.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tq/conelp.hpp"
#include "tq/intmat.hpp"

namespace tq {

using TWeilDivisor = std::vector<Int>;  // coefficients indexed by rays

struct Fan {
  int rank = 0;
  std::vector<std::vector<Int>> rays;      // primitive integer vectors
  std::vector<std::vector<int>> max_cones; // 0-based ray index sets
  bool complete = false;                   // asserted (verified if simplicial)
};

struct FanReport {
  bool valid = false;
  bool smooth = false;
  bool simplicial = false;
  bool complete = false;
  std::vector<std::string> errors;
};

namespace detail {

inline Int vec_gcd(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

// rays-as-rows matrix restricted to a cone's ray set
inline IntMatrix cone_ray_matrix(const Fan& fan, const std::vector<int>& cone) {
  IntMatrix m(cone.size(), fan.rank);
  for (std::size_t i = 0; i < cone.size(); ++i)
    for (int j = 0; j < fan.rank; ++j) m(i, j) = fan.rays[cone[i]][j];
  return m;
}

// Is cone(gens) strongly convex (no nonzero lambda >= 0 with sum = 0)?
inline bool strongly_convex(const std::vector<std::vector<Int>>& gens) {
  if (gens.empty()) return true;
  std::size_t d = gens[0].size(), n = gens.size();
  // max sum(lambda) s.t. G lambda = 0, lambda_i <= 1 (slack), lambda >= 0
  std::vector<std::vector<Rat>> a(d + n, std::vector<Rat>(2 * n, 0));
  std::vector<Rat> b(d + n, 0), c(2 * n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = Rat(gens[j][i]);
    a[d + j][j] = 1;
    a[d + j][n + j] = 1;
    b[d + j] = 1;
    c[j] = 1;
  }
  LpResult r = lp_solve(a, b, c);
  return r.status == LpStatus::Optimal && r.value == 0;
}

// Separating functional certifying that sigma ∩ tau = cone(common) is a
// common face: m with <m,r> >= 1 on sigma\common, <= -1 on tau\common,
// = 0 on common. Free m is encoded as a difference of nonnegatives.
inline bool cones_meet_in_common_face(const Fan& fan,
                                      const std::vector<int>& sigma,
                                      const std::vector<int>& tau) {
  std::vector<int> common;
  for (int r : sigma)
    if (std::find(tau.begin(), tau.end(), r) != tau.end())
      common.push_back(r);
  std::size_t d = fan.rank;
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  auto add_row = [&](const std::vector<Int>& ray, int kind) {
    // kind: 0 equality to 0, +1 ">= 1" (surplus), -1 "<= -1" (slack)
    std::vector<Rat> row(2 * d + 2 * (sigma.size() + tau.size()), 0);
    for (std::size_t i = 0; i < d; ++i) {
      row[i] = Rat(ray[i]);
      row[d + i] = -Rat(ray[i]);
    }
    a.push_back(row);
    if (kind == 0)
      b.push_back(0);
    else
      b.push_back(kind > 0 ? 1 : -1);
  };
  std::size_t slack = 0;
  auto finish_row = [&](int kind) {
    if (kind != 0) {
      a.back()[2 * d + slack] = kind > 0 ? -1 : 1;
      ++slack;
    }
  };
  for (int r : sigma) {
    bool in_common = std::find(common.begin(), common.end(), r) != common.end();
    add_row(fan.rays[r], in_common ? 0 : 1);
    finish_row(in_common ? 0 : 1);
  }
  for (int r : tau) {
    if (std::find(common.begin(), common.end(), r) != common.end()) continue;
    add_row(fan.rays[r], -1);
    finish_row(-1);
  }
  return lp_feasible(a, b);
}

}  // namespace detail

inline FanReport validate_fan(const Fan& fan) {
  FanReport rep;
  if (fan.rank <= 0 || fan.rays.empty()) {
    rep.errors.push_back("NotAFan: no rays");
    return rep;
  }
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    if (static_cast<int>(fan.rays[i].size()) != fan.rank) {
      rep.errors.push_back("NotAFan: ray dimension mismatch");
      return rep;
    }
    if (detail::vec_gcd(fan.rays[i]) != 1)
      rep.errors.push_back("NonPrimitiveRay: ray " + std::to_string(i));
  }
  for (const auto& cone : fan.max_cones)
    for (int r : cone)
      if (r < 0 || r >= static_cast<int>(fan.rays.size())) {
        rep.errors.push_back("NotAFan: cone ray index out of range");
        return rep;
      }
  if (!rep.errors.empty()) return rep;

  rep.simplicial = true;
  rep.smooth = true;
  for (const auto& cone : fan.max_cones) {
    std::vector<std::vector<Int>> gens;
    for (int r : cone) gens.push_back(fan.rays[r]);
    if (!detail::strongly_convex(gens)) {
      rep.errors.push_back("NonStronglyConvexCone");
      continue;
    }
    IntMatrix m = detail::cone_ray_matrix(fan, cone);
    std::size_t rk = rank_of(m);
    if (rk < cone.size()) {
      rep.simplicial = false;
      rep.smooth = false;
    } else {
      // simplicial: smooth iff the rays extend to a Z-basis
      SnfResult s = smith_normal_form(m);
      for (const Int& d : s.invariant_factors)
        if (d != 1) rep.smooth = false;
    }
  }
  for (std::size_t i = 0; i < fan.max_cones.size(); ++i)
    for (std::size_t j = i + 1; j < fan.max_cones.size(); ++j)
      if (!detail::cones_meet_in_common_face(fan, fan.max_cones[i],
                                             fan.max_cones[j])) {
        rep.errors.push_back("NotAFan: cones " + std::to_string(i) + "," +
                             std::to_string(j) +
                             " do not meet in a common face");
      }
  if (fan.complete) {
    if (rep.simplicial) {
      // facet pairing: every (d-1)-subset of a maximal cone's rays must
      // occur in exactly two maximal cones
      std::map<std::vector<int>, int> facets;
      bool fulldim = true;
      for (const auto& cone : fan.max_cones) {
        if (static_cast<int>(cone.size()) != fan.rank) fulldim = false;
        for (std::size_t k = 0; k < cone.size(); ++k) {
          std::vector<int> f;
          for (std::size_t l = 0; l < cone.size(); ++l)
            if (l != k) f.push_back(cone[l]);
          std::sort(f.begin(), f.end());
          facets[f]++;
        }
      }
      bool paired = fulldim;
      for (const auto& [f, count] : facets)
        if (count != 2) paired = false;
      if (!paired)
        rep.errors.push_back("IncompletenessDetected");
      else
        rep.complete = true;
    } else {
      rep.complete = true;  // asserted by the caller, not verified
    }
  }
  rep.valid = rep.errors.empty();
  return rep;
}

inline void require_valid(const Fan& fan) {
  FanReport r = validate_fan(fan);
  if (!r.valid) throw error("InvalidFan", r.errors.front());
}

// #rays x rank matrix with rows v_rho; div(chi^m) = V m.
inline IntMatrix ray_pairing_matrix(const Fan& fan) {
  IntMatrix v(fan.rays.size(), fan.rank);
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    for (int j = 0; j < fan.rank; ++j) v(i, j) = fan.rays[i][j];
  return v;
}

struct ClassGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
  IntMatrix projection;      // u -> [u] on chosen coordinates
};

inline ClassGroup class_group(const Fan& fan) {
  IntMatrix v = ray_pairing_matrix(fan);
  if (rank_of(v) < static_cast<std::size_t>(fan.rank))
    throw error("RaysDoNotSpan", "class_group");
  SnfResult s = smith_normal_form(v);
  ClassGroup cg;
  std::size_t n = fan.rays.size();
  std::size_t rank = s.invariant_factors.size();
  std::vector<std::size_t> keep;  // coordinates of U u describing coker
  for (std::size_t i = 0; i < rank; ++i)
    if (s.invariant_factors[i] != 1) {
      cg.torsion.push_back(s.invariant_factors[i]);
      keep.push_back(i);
    }
  for (std::size_t i = rank; i < n; ++i) keep.push_back(i);
  cg.free_rank = n - rank;
  cg.projection = IntMatrix(keep.size(), n);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) cg.projection(i, j) = s.u(keep[i], j);
  return cg;
}

// m with E = D + div(chi^m), or nullopt.
inline std::optional<std::vector<Int>> linearly_equivalent(
    const Fan& fan, const TWeilDivisor& d, const TWeilDivisor& e) {
  std::vector<Int> diff(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) diff[i] = e[i] - d[i];
  return solve_integer(ray_pairing_matrix(fan), diff);
}

namespace detail {

// Do the fan's rays positively span the whole space? (Equivalent to the
// recession cone of every P_D being trivial.)
inline bool rays_positively_span(const Fan& fan) {
  std::size_t d = fan.rank;
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      std::vector<Int> e(d, 0);
      e[i] = s;
      if (!cone_membership(fan.rays, e, false)) return false;
    }
  return true;
}

// Exact vertex enumeration of P_D = {m : <m, v_rho> >= -u_rho}.
inline std::vector<std::vector<Rat>> polytope_vertices(const Fan& fan,
                                                       const TWeilDivisor& u) {
  std::size_t d = fan.rank, n = fan.rays.size();
  std::vector<std::vector<Rat>> verts;
  std::vector<std::size_t> idx(d);
  // iterate over all d-subsets of the inequalities
  std::vector<std::size_t> comb(d);
  for (std::size_t i = 0; i < d; ++i) comb[i] = i;
  auto next_comb = [&]() -> bool {
    std::size_t i = d;
    while (i-- > 0) {
      if (comb[i] < n - (d - i)) {
        ++comb[i];
        for (std::size_t j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  if (n < d) return verts;
  do {
    // solve <m, v_rho> = -u_rho over the subset, exactly, by elimination
    std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d + 1));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j)
        m[i][j] = Rat(fan.rays[comb[i]][j]);
      m[i][d] = -Rat(u[comb[i]]);
    }
    bool singular = false;
    for (std::size_t k = 0; k < d && !singular; ++k) {
      std::size_t p = k;
      while (p < d && m[p][k] == 0) ++p;
      if (p == d) {
        singular = true;
        break;
      }
      std::swap(m[k], m[p]);
      for (std::size_t i = 0; i < d; ++i) {
        if (i == k || m[i][k] == 0) continue;
        Rat f = m[i][k] / m[k][k];
        for (std::size_t j = k; j <= d; ++j) m[i][j] -= f * m[k][j];
      }
    }
    if (singular) continue;
    std::vector<Rat> pt(d);
    for (std::size_t k = 0; k < d; ++k) pt[k] = m[k][d] / m[k][k];
    bool ok = true;
    for (std::size_t r = 0; r < n && ok; ++r) {
      Rat val = 0;
      for (std::size_t j = 0; j < d; ++j) val += Rat(fan.rays[r][j]) * pt[j];
      if (val < -Rat(u[r])) ok = false;
    }
    if (ok && std::find(verts.begin(), verts.end(), pt) == verts.end())
      verts.push_back(pt);
  } while (next_comb());
  return verts;
}

inline Int rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}
inline Int rat_ceil(const Rat& q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c;
}

}  // namespace detail

// Lattice points of P_D, lexicographically sorted.
inline std::vector<std::vector<Int>> polytope_lattice_points(
    const Fan& fan, const TWeilDivisor& u) {
  if (!detail::rays_positively_span(fan))
    throw error("UnboundedPolytope", "section polytope is unbounded");
  auto verts = detail::polytope_vertices(fan, u);
  std::vector<std::vector<Int>> pts;
  if (verts.empty()) return pts;
  std::size_t d = fan.rank;
  std::vector<Int> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rat mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = detail::rat_ceil(mn);
    hi[j] = detail::rat_floor(mx);
  }
  std::vector<Int> cur(d);
  std::function<void(std::size_t)> scan = [&](std::size_t j) {
    if (j == d) {
      for (std::size_t r = 0; r < fan.rays.size(); ++r) {
        Int val = 0;
        for (std::size_t k = 0; k < d; ++k) val += fan.rays[r][k] * cur[k];
        if (val < -u[r]) return;
      }
      pts.push_back(cur);
      return;
    }
    for (Int x = lo[j]; x <= hi[j]; ++x) {
      cur[j] = x;
      scan(j + 1);
    }
  };
  scan(0);
  std::sort(pts.begin(), pts.end());
  return pts;
}

// All effective divisors linearly equivalent to D, sorted lexicographically
// by coefficient vector.
inline std::vector<TWeilDivisor> global_sections(const Fan& fan,
                                                 const TWeilDivisor& d) {
  IntMatrix v = ray_pairing_matrix(fan);
  std::vector<TWeilDivisor> out;
  for (const auto& m : polytope_lattice_points(fan, d)) {
    TWeilDivisor e = v.apply(m);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += d[i];
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

using CartierData = std::vector<std::vector<Int>>;  // m_sigma per max cone

inline std::optional<CartierData> is_cartier(const Fan& fan,
                                             const TWeilDivisor& u) {
  CartierData data;
  for (const auto& cone : fan.max_cones) {
    IntMatrix m = detail::cone_ray_matrix(fan, cone);
    std::vector<Int> rhs(cone.size());
    for (std::size_t i = 0; i < cone.size(); ++i) rhs[i] = -u[cone[i]];
    auto sol = solve_integer(m, rhs);
    if (!sol) return std::nullopt;
    data.push_back(*sol);
  }
  return data;
}

struct Positivity {
  bool basepoint_free = false;
  bool ample = false;
  bool very_ample = false;
};

// Hilbert basis of the dual cone of a full-dimensional cone sigma
// (Gordan-style bounded enumeration; desk scale only).
inline std::vector<std::vector<Int>> dual_cone_hilbert_basis(
    const Fan& fan, const std::vector<int>& cone) {
  std::size_t d = fan.rank;
  // extreme rays of sigma-dual: kernels of (d-1)-subsets of sigma's rays,
  // oriented to satisfy all inequalities
  std::vector<std::vector<Int>> dual_rays;
  std::vector<std::vector<Int>> gens;
  for (int r : cone) gens.push_back(fan.rays[r]);
  std::size_t k = gens.size();
  std::vector<int> sel(k, 0);
  std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t pos,
                                                           std::size_t got) {
    if (got == d - 1) {
      IntMatrix m(d - 1, d);
      std::size_t row = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (sel[i]) {
          for (std::size_t j = 0; j < d; ++j) m(row, j) = gens[i][j];
          ++row;
        }
      LatticeBasis ker = kernel_basis(m);
      if (ker.rank() != 1) return;
      std::vector<Int> v = ker.basis.row(0);
      Int g = detail::vec_gcd(v);
      if (g > 1)
        for (auto& x : v) x /= g;
      for (int sgn : {1, -1}) {
        std::vector<Int> w(d);
        for (std::size_t j = 0; j < d; ++j) w[j] = sgn * v[j];
        bool ok = true;
        for (const auto& gvec : gens) {
          Int dot = 0;
          for (std::size_t j = 0; j < d; ++j) dot += w[j] * gvec[j];
          if (dot < 0) {
            ok = false;
            break;
          }
        }
        if (ok && std::find(dual_rays.begin(), dual_rays.end(), w) ==
                      dual_rays.end())
          dual_rays.push_back(w);
      }
      return;
    }
    if (pos == k) return;
    sel[pos] = 1;
    pick(pos + 1, got + 1);
    sel[pos] = 0;
    if (k - pos - 1 + got >= d - 1) pick(pos + 1, got);
  };
  if (d == 1) {
    // dual of a full-dim 1d cone is the opposite... no: dual of cone(v)
    // in rank 1 is {m : m v >= 0}
    std::vector<Int> w{gens[0][0] > 0 ? Int(1) : Int(-1)};
    dual_rays.push_back(w);
  } else {
    pick(0, 0);
  }
  // candidate box: coordinatewise extent of the dual-ray zonotope
  std::vector<Int> lo(d, 0), hi(d, 0);
  for (const auto& r : dual_rays)
    for (std::size_t j = 0; j < d; ++j) {
      if (r[j] > 0) hi[j] += r[j];
      if (r[j] < 0) lo[j] += r[j];
    }
  auto in_dual = [&](const std::vector<Int>& m) {
    for (const auto& gvec : gens) {
      Int dot = 0;
      for (std::size_t j = 0; j < d; ++j) dot += m[j] * gvec[j];
      if (dot < 0) return false;
    }
    return true;
  };
  // strictly positive grading on the dual cone: sum of sigma's rays
  auto grade = [&](const std::vector<Int>& m) {
    Int s = 0;
    for (const auto& gvec : gens)
      for (std::size_t j = 0; j < d; ++j) s += m[j] * gvec[j];
    return s;
  };
  std::vector<std::vector<Int>> candidates;
  std::vector<Int> cur(d);
  std::function<void(std::size_t)> scan = [&](std::size_t j) {
    if (j == d) {
      bool zero = true;
      for (const auto& x : cur)
        if (x != 0) zero = false;
      if (!zero && in_dual(cur)) candidates.push_back(cur);
      return;
    }
    for (Int x = lo[j]; x <= hi[j]; ++x) {
      cur[j] = x;
      scan(j + 1);
    }
  };
  scan(0);
  std::sort(candidates.begin(), candidates.end(),
            [&](const std::vector<Int>& a, const std::vector<Int>& b) {
              Int ga = grade(a), gb = grade(b);
              return ga != gb ? ga < gb : a < b;
            });
  std::vector<std::vector<Int>> hilbert;
  for (const auto& h : candidates) {
    bool reducible = false;
    for (const auto& a : hilbert) {
      if (grade(a) >= grade(h)) break;
      std::vector<Int> rest(d);
      for (std::size_t j = 0; j < d; ++j) rest[j] = h[j] - a[j];
      bool zero = true;
      for (const auto& x : rest)
        if (x != 0) zero = false;
      if (!zero && in_dual(rest)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) hilbert.push_back(h);
  }
  return hilbert;
}

// Is `target` an N-combination of `gens` (all lying in a strongly convex
// cone graded by `grade`)?
inline bool n_combination(const std::vector<Int>& target,
                          const std::vector<std::vector<Int>>& gens,
                          const std::function<Int(const std::vector<Int>&)>&
                              grade,
                          std::map<std::vector<Int>, bool>& memo) {
  bool zero = true;
  for (const auto& x : target)
    if (x != 0) zero = false;
  if (zero) return true;
  auto it = memo.find(target);
  if (it != memo.end()) return it->second;
  Int gt = grade(target);
  bool ok = false;
  for (const auto& g : gens) {
    Int gg = grade(g);
    if (gg <= 0 || gg > gt) continue;
    std::vector<Int> rest(target.size());
    for (std::size_t j = 0; j < target.size(); ++j) rest[j] = target[j] - g[j];
    if (n_combination(rest, gens, grade, memo)) {
      ok = true;
      break;
    }
  }
  memo[target] = ok;
  return ok;
}

inline Positivity positivity(const Fan& fan, const TWeilDivisor& u) {
  auto cartier = is_cartier(fan, u);
  if (!cartier) throw error("NotCartier", "positivity");
  FanReport rep = validate_fan(fan);
  Positivity pos;
  pos.basepoint_free = true;
  pos.ample = true;
  const CartierData& data = *cartier;
  for (std::size_t s = 0; s < fan.max_cones.size(); ++s) {
    for (std::size_t r = 0; r < fan.rays.size(); ++r) {
      Int dot = 0;
      for (int j = 0; j < fan.rank; ++j) dot += data[s][j] * fan.rays[r][j];
      if (dot < -u[r]) {
        pos.basepoint_free = false;
        pos.ample = false;
      }
      bool in_cone =
          std::find(fan.max_cones[s].begin(), fan.max_cones[s].end(),
                    static_cast<int>(r)) != fan.max_cones[s].end();
      if (!in_cone && dot <= -u[r]) pos.ample = false;
    }
  }
  if (rep.smooth) {
    pos.very_ample = pos.ample;
    return pos;
  }
  if (!pos.ample) {
    pos.very_ample = false;
    return pos;
  }
  // general case: per-cone semigroup generation test (exhaustive)
  pos.very_ample = true;
  auto points = polytope_lattice_points(fan, u);
  for (std::size_t s = 0; s < fan.max_cones.size() && pos.very_ample; ++s) {
    std::vector<std::vector<Int>> shifted;
    for (const auto& p : points) {
      std::vector<Int> q(p.size());
      for (std::size_t j = 0; j < p.size(); ++j) q[j] = p[j] - data[s][j];
      shifted.push_back(q);
    }
    std::vector<std::vector<Int>> gens;
    for (int r : fan.max_cones[s]) gens.push_back(fan.rays[r]);
    auto grade = [&](const std::vector<Int>& m) {
      Int val = 0;
      for (const auto& g : gens)
        for (std::size_t j = 0; j < m.size(); ++j) val += m[j] * g[j];
      return val;
    };
    std::map<std::vector<Int>, bool> memo;
    for (const auto& h : dual_cone_hilbert_basis(fan, fan.max_cones[s]))
      if (!n_combination(h, shifted, grade, memo)) pos.very_ample = false;
  }
  return pos;
}

// Is H0(L_1) x ... x H0(L_r) -> H0(L_1 ... L_r) surjective?
// Brute force over the finite lattice-point sets.
inline bool multiplication_surjective(const Fan& fan,
                                      const std::vector<TWeilDivisor>& ds) {
  if (ds.size() <= 1) return true;
  std::vector<std::vector<std::vector<Int>>> pts;
  for (const auto& d : ds) pts.push_back(polytope_lattice_points(fan, d));
  TWeilDivisor total(fan.rays.size(), 0);
  for (const auto& d : ds)
    for (std::size_t i = 0; i < d.size(); ++i) total[i] += d[i];
  auto sum_pts = polytope_lattice_points(fan, total);
  for (const auto& target : sum_pts) {
    // DFS: peel one factor at a time
    std::function<bool(std::size_t, std::vector<Int>)> expressible =
        [&](std::size_t k, std::vector<Int> rest) -> bool {
      if (k + 1 == pts.size()) {
        for (const auto& p : pts[k])
          if (p == rest) return true;
        return false;
      }
      for (const auto& p : pts[k]) {
        std::vector<Int> next(rest.size());
        for (std::size_t j = 0; j < rest.size(); ++j) next[j] = rest[j] - p[j];
        if (expressible(k + 1, next)) return true;
      }
      return false;
    };
    if (!expressible(0, target)) return false;
  }
  return true;
}

}  // namespace tq
