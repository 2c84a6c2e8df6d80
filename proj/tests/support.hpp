// Shared helpers for the test suites: enumeration of membership-valid
// exponent data and deterministic sampling of generator-sum classes.
#pragma once

#include "m06cox/lifting.hpp"

#include <functional>
#include <vector>

namespace m06cox::testsupport {

/// All membership-valid exponent data on the fifth plane for D (the line
/// exponents determine the point exponents).
inline std::vector<ExpE5> all_exp_e5(const DivisorClassM& D) {
  std::vector<ExpE5> out;
  if (D.m[4] < 0) return out;
  const long total = to_long(D.m[4]);
  std::array<long, 6> a{};
  std::function<void(int, long)> rec = [&](int slot, long rem) {
    if (slot == 5) {
      a[5] = rem;
      ExpE5 e;
      for (int t = 0; t < 6; ++t) e.a[t] = a[t];
      bool ok = true;
      for (int i = 1; i <= 4 && ok; ++i) {
        Int row = 0;
        for (int j = 1; j <= 4; ++j)
          if (j != i) row += e.a_at(i, j);
        const Int l = row - D.at_pair(i, 5);
        if (l < 0) ok = false;
        else e.l[i - 1] = l;
      }
      if (ok) out.push_back(e);
      return;
    }
    for (long v = 0; v <= rem; ++v) {
      a[slot] = v;
      rec(slot + 1, rem - v);
    }
    a[slot] = 0;
  };
  rec(0, total);
  return out;
}

/// All membership-valid exponent data on Y for D; both the point and the
/// diagonal exponents are determined by the line and quadric choices.
inline std::vector<ExpY> all_exp_y(const DivisorClassM& D) {
  std::vector<ExpY> out;
  if (D.m[4] < 0) return out;
  const long total = to_long(D.m[4]);
  std::array<Int, 3> malpha{m_alpha(D, Alpha::x), m_alpha(D, Alpha::y), m_alpha(D, Alpha::z)};
  std::array<long, 9> v{};  // six line slots then three quadric slots
  std::function<void(int, long)> rec = [&](int slot, long rem) {
    if (slot == 8) {
      v[8] = rem;
      ExpY e;
      for (int t = 0; t < 6; ++t) e.a[t] = v[t];
      for (int t = 0; t < 3; ++t) e.c[t] = v[6 + t];
      bool ok = true;
      for (int i = 1; i <= 4 && ok; ++i) {
        Int row = 0;
        for (int j = 1; j <= 4; ++j)
          if (j != i) row += e.a_at(i, j);
        const Int l = row - D.at_pair(i, 5);
        if (l < 0) ok = false;
        else e.l[i - 1] = l;
      }
      for (int t = 0; t < 3 && ok; ++t) {
        const Alpha al = static_cast<Alpha>(t);
        const auto f = chi_fibre(al);
        Int lhs = e.a_at(f[0][0], f[0][1]) + e.a_at(f[1][0], f[1][1]);
        for (int b = 0; b < 3; ++b)
          if (b != t) lhs += e.c[b];
        const Int l = lhs - malpha[t];
        if (l < 0) ok = false;
        else e.lxyz[t] = l;
      }
      if (ok) out.push_back(e);
      return;
    }
    for (long w = 0; w <= rem; ++w) {
      v[slot] = w;
      rec(slot + 1, rem - w);
    }
    v[slot] = 0;
  };
  rec(0, total);
  return out;
}

/// Deterministic enumeration of all multisets of at most `max_total`
/// generators, as divisor classes (duplicates included).
inline void for_each_generator_sum(int max_total,
                                   const std::function<void(const DivisorClassM&)>& fn) {
  const auto& gens = all_generators();
  std::function<void(std::size_t, int, DivisorClassM&)> rec = [&](std::size_t from, int left,
                                                                  DivisorClassM& acc) {
    fn(acc);
    if (left == 0) return;
    for (std::size_t g = from; g < gens.size(); ++g) {
      acc += generator_class(gens[g]);
      rec(g, left - 1, acc);
      acc -= generator_class(gens[g]);
    }
  };
  DivisorClassM acc;
  rec(0, max_total, acc);
}

}  // namespace m06cox::testsupport
