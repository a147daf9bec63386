#pragma once

// Sparse exact-rational multivariate polynomials with term orders.
// Variables are indexed 0..n-1 and printed as y1..yn (or x1..xn).

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "tq/intmat.hpp"

namespace tq {

using Monomial = std::vector<int>;  // exponent vector, entries >= 0

inline int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
  return c;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

struct TermOrder {
  enum Kind { Grevlex, Lex, Block };
  Kind kind = Grevlex;
  std::size_t elim_vars = 0;  // Block: first elim_vars variables eliminated

  static TermOrder grevlex() { return {Grevlex, 0}; }
  static TermOrder lex() { return {Lex, 0}; }
  static TermOrder block(std::size_t elim) { return {Block, elim}; }

  bool operator==(const TermOrder& o) const {
    return kind == o.kind && elim_vars == o.elim_vars;
  }
  bool operator<(const TermOrder& o) const {
    return kind != o.kind ? kind < o.kind : elim_vars < o.elim_vars;
  }

  // -1 if a < b, 0 if equal, +1 if a > b
  int cmp(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Grevlex:
        return cmp_grevlex(a, b, 0, a.size());
      case Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Block: {
        int c = cmp_grevlex(a, b, 0, elim_vars);
        if (c != 0) return c;
        return cmp_grevlex(a, b, elim_vars, a.size());
      }
    }
    return 0;
  }

 private:
  static int cmp_grevlex(const Monomial& a, const Monomial& b, std::size_t lo,
                         std::size_t hi) {
    int da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
};

struct Term {
  Rat coeff;
  Monomial mono;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, std::vector<Term> terms, const TermOrder& ord)
      : nvars_(nvars), terms_(std::move(terms)) {
    normalize(ord);
  }

  static Polynomial zero(std::size_t nvars) { return Polynomial(nvars); }
  static Polynomial monomial(std::size_t nvars, const Monomial& m,
                             const Rat& c = 1) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.push_back({c, m});
    return p;
  }
  // y^{u+} - y^{u-} for an integer vector u
  static Polynomial pure_binomial(const std::vector<Int>& u,
                                  const TermOrder& ord) {
    std::size_t n = u.size();
    Monomial plus(n, 0), minus(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] > 0)
        plus[i] = static_cast<int>(u[i].get_si());
      else if (u[i] < 0)
        minus[i] = static_cast<int>(Int(-u[i]).get_si());
    }
    std::vector<Term> t;
    t.push_back({1, plus});
    t.push_back({-1, minus});
    return Polynomial(n, std::move(t), ord);
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }

  // terms must stay sorted under ord, descending
  void normalize(const TermOrder& ord) {
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) {
                return ord.cmp(a.mono, b.mono) > 0;
              });
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono)
        out.back().coeff += t.coeff;
      else
        out.push_back(t);
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

  Polynomial scaled(const Rat& c, const TermOrder&) const {
    Polynomial p(nvars_);
    if (c == 0) return p;
    p.terms_ = terms_;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
  }

  Polynomial monic(const TermOrder& ord) const {
    if (is_zero()) return *this;
    return scaled(1 / terms_.front().coeff, ord);
  }

  // this + c * m * g, re-normalized
  Polynomial axpy(const Rat& c, const Monomial& m, const Polynomial& g,
                  const TermOrder& ord) const {
    Polynomial out(nvars_);
    out.terms_.reserve(terms_.size() + g.terms_.size());
    auto it = terms_.begin();
    std::vector<Term> add;
    add.reserve(g.terms_.size());
    for (const auto& t : g.terms_) add.push_back({c * t.coeff, mono_mul(m, t.mono)});
    auto jt = add.begin();
    while (it != terms_.end() || jt != add.end()) {
      if (it == terms_.end()) {
        if (jt->coeff != 0) out.terms_.push_back(*jt);
        ++jt;
      } else if (jt == add.end()) {
        out.terms_.push_back(*it);
        ++it;
      } else {
        int c2 = ord.cmp(it->mono, jt->mono);
        if (c2 > 0) {
          out.terms_.push_back(*it);
          ++it;
        } else if (c2 < 0) {
          if (jt->coeff != 0) out.terms_.push_back(*jt);
          ++jt;
        } else {
          Rat s = it->coeff + jt->coeff;
          if (s != 0) out.terms_.push_back({s, it->mono});
          ++it;
          ++jt;
        }
      }
    }
    return out;
  }

  bool operator==(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].coeff != o.terms_[i].coeff ||
          terms_[i].mono != o.terms_[i].mono)
        return false;
    return true;
  }

  // insert `count` fresh variables at index 0 (for elimination rings)
  Polynomial shifted(std::size_t count) const {
    Polynomial p(nvars_ + count);
    p.terms_ = terms_;
    for (auto& t : p.terms_) {
      Monomial m(nvars_ + count, 0);
      std::copy(t.mono.begin(), t.mono.end(), m.begin() + count);
      t.mono = std::move(m);
    }
    return p;
  }
  // drop the first `count` variables; caller guarantees they do not occur
  Polynomial unshifted(std::size_t count) const {
    Polynomial p(nvars_ - count);
    p.terms_ = terms_;
    for (auto& t : p.terms_)
      t.mono = Monomial(t.mono.begin() + count, t.mono.end());
    return p;
  }
  bool involves_var(std::size_t v) const {
    for (const auto& t : terms_)
      if (t.mono[v] > 0) return true;
    return false;
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// --- text syntax: terms like -3*y1^2*y4, separated by + / - ------------

inline std::string mono_to_string(const Monomial& m, char var) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += var;
    s += std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string poly_to_string(const Polynomial& p, char var = 'y') {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.terms().size(); ++i) {
    const Term& t = p.terms()[i];
    Rat c = t.coeff;
    if (i == 0) {
      if (c < 0) {
        s += "-";
        c = -c;
      }
    } else {
      s += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    std::string ms = mono_to_string(t.mono, var);
    if (c != 1 || ms == "1") {
      s += c.get_str();
      if (ms != "1") s += "*";
    }
    if (ms != "1") s += ms;
  }
  return s;
}

inline Polynomial poly_parse(const std::string& text, std::size_t nvars,
                             const TermOrder& ord) {
  std::vector<Term> terms;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip_ws();
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw error("Parse", "expected + or - in polynomial: " + text);
    }
    first = false;
    Rat coeff = sign;
    Monomial mono(nvars, 0);
    bool saw_factor = false;
    for (;;) {
      skip_ws();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::string num;
        while (i < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[i])) ||
                text[i] == '/'))
          num += text[i++];
        coeff *= Rat(num);
        coeff.canonicalize();
        saw_factor = true;
      } else if (i < text.size() && (text[i] == 'y' || text[i] == 'x' ||
                                     text[i] == 't')) {
        char v = text[i++];
        std::string num;
        while (i < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[i])))
          num += text[i++];
        std::size_t idx;
        if (v == 't' && num.empty())
          idx = 0;  // only used internally
        else
          idx = std::stoul(num) - 1;
        if (idx >= nvars)
          throw error("Parse", "variable index out of range: " + text);
        int exp = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip_ws();
          std::string e;
          while (i < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[i])))
            e += text[i++];
          exp = std::stoi(e);
        }
        mono[idx] += exp;
        saw_factor = true;
      } else {
        break;
      }
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!saw_factor) throw error("Parse", "empty term in polynomial: " + text);
    terms.push_back({coeff, mono});
    skip_ws();
  }
  return Polynomial(nvars, std::move(terms), ord);
}

}  // namespace tq
