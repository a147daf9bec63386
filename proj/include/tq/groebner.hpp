#pragma once

// Buchberger's algorithm with reduced bases, plus the ideal operations
// the certificates need: saturation, quotient by a monomial ideal,
// intersection, equality, and lattice ideals.

#include <map>
#include <mutex>
#include <set>
#include <vector>

#include "tq/poly.hpp"

namespace tq {

// Full multivariate division remainder of f by basis.
inline Polynomial normal_form(const Polynomial& f,
                              const std::vector<Polynomial>& basis,
                              const TermOrder& ord) {
  Polynomial rem(f.nvars());
  Polynomial cur = f;
  while (!cur.is_zero()) {
    bool reduced = false;
    const Term& lt = cur.leading_term();
    for (const Polynomial& g : basis) {
      if (g.is_zero()) continue;
      if (mono_divides(g.leading_monomial(), lt.mono)) {
        Rat c = -lt.coeff / g.leading_term().coeff;
        cur = cur.axpy(c, mono_div(lt.mono, g.leading_monomial()), g, ord);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem = rem.axpy(1, Monomial(f.nvars(), 0),
                     Polynomial::monomial(f.nvars(), lt.mono, lt.coeff), ord);
      cur = cur.axpy(-1, Monomial(f.nvars(), 0),
                     Polynomial::monomial(f.nvars(), lt.mono, lt.coeff), ord);
    }
  }
  return rem;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                               const TermOrder& ord) {
  Monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
  Polynomial a = Polynomial::zero(f.nvars());
  a = a.axpy(1 / f.leading_term().coeff, mono_div(l, f.leading_monomial()), f,
             ord);
  return a.axpy(-1 / g.leading_term().coeff, mono_div(l, g.leading_monomial()),
                g, ord);
}

inline std::vector<Polynomial> buchberger(std::vector<Polynomial> gens,
                                          const TermOrder& ord) {
  std::vector<Polynomial> g;
  for (auto& p : gens) {
    p.normalize(ord);
    if (!p.is_zero()) g.push_back(p.monic(ord));
  }
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int deg;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.lcm != b.lcm) return a.lcm < b.lcm;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto push_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (mono_coprime(g[i].leading_monomial(), g[k].leading_monomial()))
        continue;  // Buchberger's first criterion
      Monomial l = mono_lcm(g[i].leading_monomial(), g[k].leading_monomial());
      pairs.push_back({i, k, l, total_degree(l)});
      pending.insert({i, k});
    }
  };
  for (std::size_t k = 0; k < g.size(); ++k) push_pairs(k);
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair p = *it;
    pairs.erase(it);
    pending.erase({p.i, p.j});
    // chain criterion: lt(g_k) divides the lcm and both sub-pairs have
    // already been treated (or were never needed)
    bool skip = false;
    for (std::size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!mono_divides(g[k].leading_monomial(), p.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (pending.count(key(p.i, k)) == 0 && pending.count(key(p.j, k)) == 0)
        skip = true;
    }
    if (skip) continue;
    Polynomial s = s_polynomial(g[p.i], g[p.j], ord);
    Polynomial r = normal_form(s, g, ord);
    if (!r.is_zero()) {
      g.push_back(r.monic(ord));
      push_pairs(g.size() - 1);
    }
  }
  // minimalize: drop elements whose leading term is divisible by another's
  std::vector<Polynomial> min;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (mono_divides(g[j].leading_monomial(), g[i].leading_monomial()) &&
          (g[j].leading_monomial() != g[i].leading_monomial() || j < i))
        redundant = true;
    }
    if (!redundant) min.push_back(g[i]);
  }
  // tail-reduce
  std::vector<Polynomial> red;
  for (std::size_t i = 0; i < min.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    Polynomial r = normal_form(min[i], others, ord);
    if (!r.is_zero()) red.push_back(r.monic(ord));
  }
  std::sort(red.begin(), red.end(),
            [&](const Polynomial& a, const Polynomial& b) {
              return ord.cmp(a.leading_monomial(), b.leading_monomial()) > 0;
            });
  return red;
}

class Ideal {
 public:
  Ideal() = default;
  Ideal(std::size_t nvars, std::vector<Polynomial> gens)
      : nvars_(nvars), gens_(std::move(gens)) {}

  static Ideal zero(std::size_t nvars) { return Ideal(nvars, {}); }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Polynomial>& gens() const { return gens_; }

  const std::vector<Polynomial>& groebner(
      const TermOrder& ord = TermOrder::grevlex()) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(ord);
    if (it == cache_.end())
      it = cache_.emplace(ord, buchberger(gens_, ord)).first;
    return it->second;
  }

  bool contains(const Polynomial& f,
                const TermOrder& ord = TermOrder::grevlex()) const {
    return normal_form(f, groebner(ord), ord).is_zero();
  }

  bool is_zero_ideal() const { return groebner().empty(); }

 private:
  std::size_t nvars_ = 0;
  std::vector<Polynomial> gens_;
  mutable std::mutex mu_;
  mutable std::map<TermOrder, std::vector<Polynomial>> cache_;

 public:
  Ideal(const Ideal& o) : nvars_(o.nvars_), gens_(o.gens_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    cache_ = o.cache_;
  }
  Ideal& operator=(const Ideal& o) {
    if (this != &o) {
      std::scoped_lock lock(mu_, o.mu_);
      nvars_ = o.nvars_;
      gens_ = o.gens_;
      cache_ = o.cache_;
    }
    return *this;
  }
};

inline bool ideal_equal(const Ideal& a, const Ideal& b,
                        const TermOrder& ord = TermOrder::grevlex()) {
  if (a.nvars() != b.nvars()) throw error("VariableMismatch", "ideal_equal");
  const auto& ga = a.groebner(ord);
  const auto& gb = b.groebner(ord);
  if (ga.size() != gb.size()) return false;
  for (std::size_t i = 0; i < ga.size(); ++i)
    if (!(ga[i] == gb[i])) return false;
  return true;
}

inline bool ideal_contains_ideal(const Ideal& outer, const Ideal& inner,
                                 const TermOrder& ord = TermOrder::grevlex()) {
  for (const auto& g : inner.gens())
    if (!outer.contains(g, ord)) return false;
  return true;
}

// (I : f^inf) via elimination of t from I + (t*f - 1).
inline Ideal saturate(const Ideal& ideal, const Polynomial& f) {
  if (f.is_zero()) throw error("ZeroDivisor", "saturate by zero");
  std::size_t n = ideal.nvars();
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.shifted(1));
  // t*f - 1
  Monomial t(n + 1, 0);
  t[0] = 1;
  Polynomial tf = Polynomial::zero(n + 1);
  tf = tf.axpy(1, t, f.shifted(1), TermOrder::block(1));
  tf = tf.axpy(-1, Monomial(n + 1, 0),
               Polynomial::monomial(n + 1, Monomial(n + 1, 0)),
               TermOrder::block(1));
  gens.push_back(tf);
  std::vector<Polynomial> gb = buchberger(gens, TermOrder::block(1));
  std::vector<Polynomial> out;
  for (const auto& g : gb)
    if (!g.involves_var(0)) out.push_back(g.unshifted(1));
  return Ideal(n, std::move(out));
}

// I ∩ J via elimination of t from t*I + (1-t)*J.
inline Ideal intersect(const Ideal& a, const Ideal& b) {
  if (a.nvars() != b.nvars()) throw error("VariableMismatch", "intersect");
  std::size_t n = a.nvars();
  std::vector<Polynomial> gens;
  Monomial t(n + 1, 0);
  t[0] = 1;
  TermOrder ord = TermOrder::block(1);
  for (const auto& g : a.gens()) {
    Polynomial p = Polynomial::zero(n + 1);
    gens.push_back(p.axpy(1, t, g.shifted(1), ord));
  }
  for (const auto& g : b.gens()) {
    Polynomial p = Polynomial::zero(n + 1);
    p = p.axpy(1, Monomial(n + 1, 0), g.shifted(1), ord);
    gens.push_back(p.axpy(-1, t, g.shifted(1), ord));
  }
  std::vector<Polynomial> gb = buchberger(gens, ord);
  std::vector<Polynomial> out;
  for (const auto& g : gb)
    if (!g.involves_var(0)) out.push_back(g.unshifted(1));
  return Ideal(n, std::move(out));
}

// (I : B^inf) for a monomial ideal B = (m_1, ..., m_k):
// the intersection over j of (I : m_j^inf).
inline Ideal saturate_by_monomial_ideal(const Ideal& ideal,
                                        const std::vector<Monomial>& mons) {
  if (mons.empty()) throw error("EmptyIdeal", "saturate_by_monomial_ideal");
  std::size_t n = ideal.nvars();
  bool first = true;
  Ideal acc;
  for (const auto& m : mons) {
    Ideal s = saturate(ideal, Polynomial::monomial(n, m));
    if (first) {
      acc = s;
      first = false;
    } else {
      acc = intersect(acc, s);
    }
  }
  return acc;
}

// Saturation by an intersection of monomial primes P_i = (vars_i):
// (I : (∩P_i)^inf) = successive saturations, each P_i handled as an
// intersection of single-variable saturations. Agrees with
// saturate_by_monomial_ideal on the expanded generator set but avoids
// expanding the (possibly huge) product presentation.
inline Ideal saturate_by_variable_primes(
    const Ideal& ideal, const std::vector<std::vector<std::size_t>>& primes) {
  std::size_t n = ideal.nvars();
  Ideal acc = ideal;
  for (const auto& vars : primes) {
    bool first = true;
    Ideal stage;
    for (std::size_t v : vars) {
      Monomial m(n, 0);
      m[v] = 1;
      Ideal s = saturate(acc, Polynomial::monomial(n, m));
      if (first) {
        stage = s;
        first = false;
      } else {
        stage = intersect(stage, s);
      }
    }
    acc = stage;
  }
  return acc;
}

// The lattice ideal of a saturated kernel basis: binomials y^{u+} - y^{u-}
// for basis vectors u, saturated by the product of all variables.
inline Ideal lattice_ideal(const LatticeBasis& kernel, std::size_t nvars) {
  TermOrder ord = TermOrder::grevlex();
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < kernel.basis.rows(); ++i)
    gens.push_back(Polynomial::pure_binomial(kernel.basis.row(i), ord));
  if (gens.empty()) return Ideal::zero(nvars);
  // (I : (y_1...y_n)^inf) computed one variable at a time, which keeps the
  // elimination steps small
  Ideal acc(nvars, std::move(gens));
  for (std::size_t v = 0; v < nvars; ++v) {
    Monomial m(nvars, 0);
    m[v] = 1;
    acc = saturate(acc, Polynomial::monomial(nvars, m));
  }
  return acc;
}

// Is f a pure-difference binomial (monomial - monomial)?
inline bool is_pure_binomial(const Polynomial& f) {
  if (f.terms().size() != 2) return false;
  const Rat& a = f.terms()[0].coeff;
  const Rat& b = f.terms()[1].coeff;
  return (a == 1 && b == -1) || (a == -1 && b == 1);
}

}  // namespace tq
