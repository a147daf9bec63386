#pragma once

// Exact integer matrices over GMP integers: Hermite and Smith normal
// forms, saturated kernels, and integer linear solving.

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tq {

using Int = mpz_class;
using Rat = mpq_class;

class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    assert(e_.size() == rows_ * cols_);
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      assert(rows[i].size() == c);
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  std::vector<Int> row(std::size_t i) const {
    return std::vector<Int>(e_.begin() + i * cols_,
                            e_.begin() + (i + 1) * cols_);
  }
  std::vector<Int> col(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    assert(cols_ == o.rows_);
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    assert(v.size() == cols_);
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  // row[a] += q * row[b]
  void add_row_multiple(std::size_t a, std::size_t b, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += q * (*this)(b, j);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }
  void add_col_multiple(std::size_t a, std::size_t b, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += q * (*this)(i, b);
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct HnfResult {
  IntMatrix h;  // row-style Hermite form, U * A = H
  IntMatrix u;  // unimodular
  std::size_t rank = 0;
};

// Row-style HNF: pivots positive, entries above each pivot reduced into
// [0, pivot). Zero rows sink to the bottom.
inline HnfResult hermite_normal_form(const IntMatrix& a) {
  if (a.empty()) throw error("EmptyMatrix", "hermite_normal_form");
  HnfResult res{a, IntMatrix::identity(a.rows()), 0};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  std::size_t r = 0;
  for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
    // bring a nonzero entry into position (r, j)
    std::size_t piv = r;
    while (piv < h.rows() && h(piv, j) == 0) ++piv;
    if (piv == h.rows()) continue;
    h.swap_rows(r, piv);
    u.swap_rows(r, piv);
    // gcd-eliminate entries below the pivot
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, j) == 0) continue;
      Int g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
                 h(r, j).get_mpz_t(), h(i, j).get_mpz_t());
      Int rr = h(r, j) / g, ii = h(i, j) / g;
      for (std::size_t k = 0; k < h.cols(); ++k) {
        Int hr = p * h(r, k) + q * h(i, k);
        Int hi = -ii * h(r, k) + rr * h(i, k);
        h(r, k) = hr;
        h(i, k) = hi;
      }
      for (std::size_t k = 0; k < u.cols(); ++k) {
        Int ur = p * u(r, k) + q * u(i, k);
        Int ui = -ii * u(r, k) + rr * u(i, k);
        u(r, k) = ur;
        u(i, k) = ui;
      }
    }
    if (h(r, j) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, j), h(r, j));
      if (q != 0) {
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
      }
    }
    ++r;
  }
  res.rank = r;
  return res;
}

struct SnfResult {
  std::vector<Int> invariant_factors;  // nonzero, d1 | d2 | ...
  IntMatrix u, v;                      // U * A * V diagonal
};

inline SnfResult smith_normal_form(const IntMatrix& a) {
  if (a.empty()) throw error("EmptyMatrix", "smith_normal_form");
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  IntMatrix v = IntMatrix::identity(a.cols());
  std::size_t n = std::min(a.rows(), a.cols());
  std::size_t t = 0;
  for (; t < n; ++t) {
    // find a nonzero entry in the remaining block
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < h.rows() && !found; ++i)
      for (std::size_t j = t; j < h.cols() && !found; ++j)
        if (h(i, j) != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    h.swap_rows(t, pi);
    u.swap_rows(t, pi);
    h.swap_cols(t, pj);
    v.swap_cols(t, pj);
    // alternate row/column elimination until the cross is clear
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < h.rows(); ++i) {
        if (h(i, t) == 0) continue;
        if (h(i, t) % h(t, t) == 0) {
          Int q = h(i, t) / h(t, t);
          h.add_row_multiple(i, t, -q);
          u.add_row_multiple(i, t, -q);
        } else {
          Int g, p, q;
          mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
                     h(t, t).get_mpz_t(), h(i, t).get_mpz_t());
          Int rr = h(t, t) / g, ii = h(i, t) / g;
          for (std::size_t k = 0; k < h.cols(); ++k) {
            Int ht = p * h(t, k) + q * h(i, k);
            Int hi = -ii * h(t, k) + rr * h(i, k);
            h(t, k) = ht;
            h(i, k) = hi;
          }
          for (std::size_t k = 0; k < u.cols(); ++k) {
            Int ut = p * u(t, k) + q * u(i, k);
            Int ui = -ii * u(t, k) + rr * u(i, k);
            u(t, k) = ut;
            u(i, k) = ui;
          }
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < h.cols(); ++j) {
        if (h(t, j) == 0) continue;
        if (h(t, j) % h(t, t) == 0) {
          Int q = h(t, j) / h(t, t);
          h.add_col_multiple(j, t, -q);
          v.add_col_multiple(j, t, -q);
        } else {
          Int g, p, q;
          mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
                     h(t, t).get_mpz_t(), h(t, j).get_mpz_t());
          Int rr = h(t, t) / g, jj = h(t, j) / g;
          for (std::size_t k = 0; k < h.rows(); ++k) {
            Int ht = p * h(k, t) + q * h(k, j);
            Int hj = -jj * h(k, t) + rr * h(k, j);
            h(k, t) = ht;
            h(k, j) = hj;
          }
          for (std::size_t k = 0; k < v.rows(); ++k) {
            Int vt = p * v(k, t) + q * v(k, j);
            Int vj = -jj * v(k, t) + rr * v(k, j);
            v(k, t) = vt;
            v(k, j) = vj;
          }
          dirty = true;
        }
        // a column op can reintroduce entries below the pivot
        for (std::size_t i = t + 1; i < h.rows(); ++i)
          if (h(i, t) != 0) dirty = true;
      }
    }
    if (h(t, t) < 0) {
      h.negate_row(t);
      u.negate_row(t);
    }
  }
  std::size_t rank = t;
  // enforce the divisibility chain
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < rank; ++i) {
      if (h(i + 1, i + 1) % h(i, i) != 0) {
        // fold entry (i+1,i+1) into column i, then re-diagonalize the 2x2
        h.add_col_multiple(i, i + 1, 1);
        v.add_col_multiple(i, i + 1, 1);
        Int g, p, q;
        mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
                   h(i, i).get_mpz_t(), h(i + 1, i).get_mpz_t());
        Int rr = h(i, i) / g, ii = h(i + 1, i) / g;
        for (std::size_t k = 0; k < h.cols(); ++k) {
          Int ht = p * h(i, k) + q * h(i + 1, k);
          Int hi = -ii * h(i, k) + rr * h(i + 1, k);
          h(i, k) = ht;
          h(i + 1, k) = hi;
        }
        for (std::size_t k = 0; k < u.cols(); ++k) {
          Int ut = p * u(i, k) + q * u(i + 1, k);
          Int ui = -ii * u(i, k) + rr * u(i + 1, k);
          u(i, k) = ut;
          u(i + 1, k) = ui;
        }
        // clear the off-diagonal fill in row i
        Int qq = h(i, i + 1) / h(i, i);
        h.add_col_multiple(i + 1, i, -qq);
        v.add_col_multiple(i + 1, i, -qq);
        if (h(i + 1, i + 1) < 0) {
          h.negate_row(i + 1);
          u.negate_row(i + 1);
        }
        changed = true;
      }
    }
  }
  SnfResult res;
  res.u = std::move(u);
  res.v = std::move(v);
  for (std::size_t i = 0; i < rank; ++i)
    res.invariant_factors.push_back(h(i, i));
  return res;
}

struct LatticeBasis {
  std::size_t ambient_dim = 0;
  IntMatrix basis;  // rows are Z-linearly independent

  std::size_t rank() const { return basis.rows(); }
};

// HNF-canonicalize a set of independent lattice vectors (rows).
inline IntMatrix hnf_canonical_rows(const IntMatrix& rows) {
  if (rows.rows() == 0) return rows;
  HnfResult r = hermite_normal_form(rows);
  IntMatrix out(r.rank, rows.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) out(i, j) = r.h(i, j);
  return out;
}

// Basis of {u : A u = 0} as a group. The integer kernel of A is
// automatically saturated. Returned in HNF-canonical form.
inline LatticeBasis kernel_basis(const IntMatrix& a) {
  if (a.empty()) throw error("EmptyMatrix", "kernel_basis");
  HnfResult r = hermite_normal_form(a.transpose());
  // rows of U beyond the rank satisfy u * A^T = 0, i.e. A u^T = 0
  std::size_t k = a.cols() - r.rank;
  IntMatrix ker(k, a.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) ker(i, j) = r.u(r.rank + i, j);
  LatticeBasis b;
  b.ambient_dim = a.cols();
  b.basis = hnf_canonical_rows(ker);
  return b;
}

// Some integer solution of A u = b, or nullopt.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                                     const std::vector<Int>& b) {
  if (a.empty()) throw error("EmptyMatrix", "solve_integer");
  if (b.size() != a.rows()) throw error("DimensionMismatch", "solve_integer");
  SnfResult s = smith_normal_form(a);
  std::vector<Int> c = s.u.apply(b);
  std::size_t rank = s.invariant_factors.size();
  std::vector<Int> w(a.cols(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < rank) {
      if (c[i] % s.invariant_factors[i] != 0) return std::nullopt;
      w[i] = c[i] / s.invariant_factors[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v.apply(w);
}

inline std::size_t rank_of(const IntMatrix& a) {
  return hermite_normal_form(a).rank;
}

inline Int determinant(const IntMatrix& a) {
  assert(a.rows() == a.cols());
  // fraction-free Gaussian elimination (Bareiss)
  IntMatrix m = a;
  std::size_t n = a.rows();
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    prev = m(k, k);
  }
  return n == 0 ? Int(1) : Int(sign) * m(n - 1, n - 1);
}

}  // namespace tq
