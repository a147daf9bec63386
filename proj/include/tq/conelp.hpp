#pragma once

// Exact rational linear programming (dense simplex with Bland's rule)
// and polyhedral cone membership built on top of it.

#include <vector>

#include "tq/intmat.hpp"

namespace tq {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status;
  Rat value;
  std::vector<Rat> x;
};

namespace detail {

// Simplex on max c'x s.t. Ax = b, x >= 0, b >= 0 assumed after sign fix.
// Two-phase with artificial variables; Bland's rule guarantees termination.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
          std::vector<Rat> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    m_ = a_.size();
    n_ = m_ ? a_[0].size() : 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (b_[i] < 0) {
        for (auto& v : a_[i]) v = -v;
        b_[i] = -b_[i];
      }
  }

  LpResult solve() {
    // phase 1: minimize the sum of artificials
    std::size_t total = n_ + m_;
    tab_.assign(m_, std::vector<Rat>(total, 0));
    rhs_ = b_;
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = a_[i][j];
      tab_[i][n_ + i] = 1;
      basis_[i] = n_ + i;
    }
    std::vector<Rat> obj(total, 0);  // maximize -sum(artificials)
    for (std::size_t j = n_; j < total; ++j) obj[j] = -1;
    Rat val = run(obj, total);
    if (val != 0) return {LpStatus::Infeasible, 0, {}};
    // drive any artificial still in the basis out (degenerate rows)
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t j = 0;
      for (; j < n_; ++j)
        if (tab_[i][j] != 0) break;
      if (j < n_)
        pivot(i, j);
      // else: the row is all zero over the real variables; harmless
    }
    // phase 2
    std::vector<Rat> obj2(total, 0);
    for (std::size_t j = 0; j < n_; ++j) obj2[j] = c_[j];
    blocked_from_ = n_;  // never let artificials re-enter
    Rat v2 = run(obj2, total);
    if (unbounded_) return {LpStatus::Unbounded, 0, {}};
    std::vector<Rat> x(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    return {LpStatus::Optimal, v2, x};
  }

 private:
  Rat run(std::vector<Rat> obj, std::size_t total) {
    unbounded_ = false;
    // reduced costs: z row relative to the current basis
    for (;;) {
      std::vector<Rat> red = obj;
      Rat z = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rat& cb = obj[basis_[i]];
        if (cb == 0) continue;
        z += cb * rhs_[i];
        for (std::size_t j = 0; j < total; ++j) red[j] -= cb * tab_[i][j];
      }
      // Bland: smallest index with positive reduced cost
      std::size_t enter = total;
      for (std::size_t j = 0; j < total; ++j) {
        if (j >= blocked_from_ && j >= n_) continue;
        if (red[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == total) return z;
      // ratio test, Bland tie-break on basis index
      std::size_t leave = m_;
      Rat best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rat ratio = rhs_[i] / tab_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) {
        unbounded_ = true;
        return 0;
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rat p = tab_[r][c];
    for (auto& v : tab_[r]) v /= p;
    rhs_[r] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || tab_[i][c] == 0) continue;
      Rat f = tab_[i][c];
      for (std::size_t j = 0; j < tab_[i].size(); ++j)
        tab_[i][j] -= f * tab_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  std::vector<std::vector<Rat>> a_;
  std::vector<Rat> b_, c_;
  std::size_t m_ = 0, n_ = 0;
  std::vector<std::vector<Rat>> tab_;
  std::vector<Rat> rhs_;
  std::vector<std::size_t> basis_;
  std::size_t blocked_from_ = SIZE_MAX;
  bool unbounded_ = false;
};

}  // namespace detail

// max c'x s.t. Ax = b, x >= 0
inline LpResult lp_solve(const std::vector<std::vector<Rat>>& a,
                         const std::vector<Rat>& b,
                         const std::vector<Rat>& c) {
  return detail::Simplex(a, b, c).solve();
}

inline bool lp_feasible(const std::vector<std::vector<Rat>>& a,
                        const std::vector<Rat>& b) {
  std::vector<Rat> c(a.empty() ? 0 : a[0].size(), 0);
  return lp_solve(a, b, c).status == LpStatus::Optimal;
}

// Is `point` a nonnegative rational combination of `generators`?
// With strict=true, decide membership in the relative interior instead
// (a combination with every coefficient strictly positive).
inline bool cone_membership(const std::vector<std::vector<Rat>>& generators,
                            const std::vector<Rat>& point, bool strict) {
  std::size_t d = point.size();
  std::size_t n = generators.size();
  bool zero = true;
  for (const auto& p : point)
    if (p != 0) zero = false;
  if (n == 0) return zero;
  if (!strict) {
    std::vector<std::vector<Rat>> a(d, std::vector<Rat>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < d; ++i) a[i][j] = generators[j][i];
    return lp_feasible(a, point);
  }
  // relint: max t s.t. G mu + (sum g_i) t = p, mu >= 0, 0 <= t <= 1;
  // p lies in the relative interior iff the optimum is positive.
  std::vector<std::vector<Rat>> a(d + 1, std::vector<Rat>(n + 2, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < d; ++i) a[i][j] = generators[j][i];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][n] += generators[j][i];
  a[d][n] = 1;  // t + slack = 1
  a[d][n + 1] = 1;
  std::vector<Rat> b = point;
  b.push_back(1);
  std::vector<Rat> c(n + 2, 0);
  c[n] = 1;
  LpResult r = lp_solve(a, b, c);
  return r.status == LpStatus::Optimal && r.value > 0;
}

inline std::vector<Rat> to_rat(const std::vector<Int>& v) {
  std::vector<Rat> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

inline bool cone_membership(const std::vector<std::vector<Int>>& generators,
                            const std::vector<Int>& point, bool strict) {
  std::vector<std::vector<Rat>> g;
  g.reserve(generators.size());
  for (const auto& v : generators) g.push_back(to_rat(v));
  return cone_membership(g, to_rat(point), strict);
}

}  // namespace tq
