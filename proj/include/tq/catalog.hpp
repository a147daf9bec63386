#pragma once

// Built-in fans and bundle lists used by the command-line tool and the
// test fixtures.

#include <optional>
#include <string>
#include <vector>

#include "tq/fan.hpp"
#include "tq/quiver.hpp"

namespace tq::catalog {

inline Fan projective_space(int n) {
  Fan f;
  f.rank = n;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> e(n, 0);
    e[i] = 1;
    f.rays.push_back(e);
  }
  f.rays.push_back(std::vector<Int>(n, -1));
  // all n-subsets of the n+1 rays
  for (int skip = n; skip >= 0; --skip) {
    std::vector<int> cone;
    for (int i = 0; i <= n; ++i)
      if (i != skip) cone.push_back(i);
    f.max_cones.push_back(cone);
  }
  f.complete = true;
  return f;
}

inline Fan hirzebruch(int a) {
  Fan f;
  f.rank = 2;
  f.rays = {{Int(1), Int(0)},
            {Int(0), Int(1)},
            {Int(-1), Int(a)},
            {Int(0), Int(-1)}};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  f.complete = true;
  return f;
}

// O(k, l) = k D1 + l D4 on a Hirzebruch surface.
inline TWeilDivisor hirzebruch_bundle(Int k, Int l) {
  return {k, Int(0), Int(0), l};
}

inline Fan threefold_flop() {
  Fan f;
  f.rank = 3;
  f.rays = {{Int(1), Int(0), Int(0)},
            {Int(0), Int(1), Int(0)},
            {Int(-1), Int(-1), Int(-1)},
            {Int(0), Int(1), Int(1)},
            {Int(1), Int(0), Int(1)}};
  f.max_cones = {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 4}, {1, 2, 3},
                 {2, 3, 4}};
  f.complete = true;
  return f;
}

// O(k, l) = k D3 + l D2 on the flop threefold.
inline TWeilDivisor threefold_bundle(Int k, Int l) {
  return {Int(0), l, k, Int(0), Int(0)};
}

inline TWeilDivisor p1_bundle(Int k) { return {k, Int(0)}; }

struct Entry {
  std::string name;
  Fan fan;
  std::vector<TWeilDivisor> bundles;           // empty for bare fans
  std::vector<Arrow> arrow_order;              // optional fixed numbering
  std::vector<std::vector<Int>> circuit_basis; // optional, in that numbering
};

namespace detail {

inline Entry f1_list() {
  Entry e;
  e.name = "hirzebruch1:list";
  e.fan = hirzebruch(1);
  e.bundles = {hirzebruch_bundle(0, 0), hirzebruch_bundle(1, 0),
               hirzebruch_bundle(0, 1)};
  auto div = [](int i) {
    TWeilDivisor d(4, 0);
    d[i - 1] = 1;
    return d;
  };
  e.arrow_order = {{0, 1, div(1)},
                   {1, 2, div(2)},
                   {0, 1, div(3)},
                   {0, 2, div(4)}};
  e.circuit_basis = {{Int(1), Int(0), Int(-1), Int(0)},
                     {Int(0), Int(1), Int(1), Int(-1)}};
  return e;
}

inline Entry f2_list() {
  Entry e;
  e.name = "hirzebruch2:list";
  e.fan = hirzebruch(2);
  e.bundles = {hirzebruch_bundle(0, 0), hirzebruch_bundle(1, 0),
               hirzebruch_bundle(0, 1), hirzebruch_bundle(1, 1)};
  auto div = [](std::vector<int> is) {
    TWeilDivisor d(4, 0);
    for (int i : is) d[i - 1] += 1;
    return d;
  };
  e.arrow_order = {{0, 1, div({1})},  {0, 1, div({3})},    {0, 2, div({4})},
                   {1, 2, div({1, 2})}, {1, 2, div({2, 3})}, {1, 3, div({4})},
                   {2, 3, div({1})},  {2, 3, div({3})}};
  e.circuit_basis = {
      {Int(1), Int(-1), Int(0), Int(0), Int(0), Int(0), Int(0), Int(0)},
      {Int(1), Int(0), Int(-1), Int(1), Int(0), Int(0), Int(0), Int(0)},
      {Int(1), Int(0), Int(-1), Int(0), Int(1), Int(0), Int(0), Int(0)},
      {Int(1), Int(0), Int(-1), Int(0), Int(0), Int(1), Int(-1), Int(0)},
      {Int(1), Int(0), Int(-1), Int(0), Int(0), Int(1), Int(0), Int(-1)}};
  return e;
}

inline Entry p1_pair() {
  Entry e;
  e.name = "p1:pair";
  e.fan = projective_space(1);
  e.bundles = {p1_bundle(0), p1_bundle(2)};
  return e;
}

inline Entry p1_fine() {
  Entry e;
  e.name = "p1:fine";
  e.fan = projective_space(1);
  e.bundles = {p1_bundle(0), p1_bundle(2), p1_bundle(4)};
  return e;
}

inline Entry threefold_list() {
  Entry e;
  e.name = "threefold-flop:list";
  e.fan = threefold_flop();
  e.bundles = {threefold_bundle(0, 0), threefold_bundle(0, 1),
               threefold_bundle(1, 0), threefold_bundle(1, 1),
               threefold_bundle(2, 0), threefold_bundle(2, 1)};
  auto div = [](int i) {
    TWeilDivisor d(5, 0);
    d[i - 1] = 1;
    return d;
  };
  e.arrow_order = {{0, 1, div(2)}, {0, 1, div(5)}, {0, 2, div(3)},
                   {1, 2, div(1)}, {1, 2, div(4)}, {1, 3, div(3)},
                   {2, 4, div(3)}, {2, 3, div(2)}, {2, 3, div(5)},
                   {3, 4, div(1)}, {3, 4, div(4)}, {3, 5, div(3)},
                   {4, 5, div(2)}, {4, 5, div(5)}};
  return e;
}

}  // namespace detail

inline std::vector<Entry> entries() {
  std::vector<Entry> out;
  for (int n : {1, 2, 3}) {
    Entry e;
    e.name = "p" + std::to_string(n);
    e.fan = projective_space(n);
    out.push_back(e);
  }
  for (int a : {0, 1, 2, 3}) {
    Entry e;
    e.name = "hirzebruch" + std::to_string(a);
    e.fan = hirzebruch(a);
    out.push_back(e);
  }
  {
    Entry e;
    e.name = "threefold-flop";
    e.fan = threefold_flop();
    out.push_back(e);
  }
  out.push_back(detail::f1_list());
  out.push_back(detail::f2_list());
  out.push_back(detail::p1_pair());
  out.push_back(detail::p1_fine());
  out.push_back(detail::threefold_list());
  return out;
}

inline std::optional<Entry> find(const std::string& name) {
  for (auto& e : entries())
    if (e.name == name) return e;
  return std::nullopt;
}

}  // namespace tq::catalog
