// Homogeneous forms with exact rational coefficients in 3 or 4 variables.
#pragma once

#include "m06cox/linalg.hpp"

#include <map>
#include <vector>

namespace m06cox {

using Expo = std::array<int, 4>;  // exponent vector; trailing zeros when nvars == 3

struct PolyForm {
  int nvars{3};
  long degree{0};
  std::map<Expo, Rat> coeff;  // no zero coefficients stored

  bool is_zero() const { return coeff.empty(); }

  void add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto it = coeff.find(e);
    if (it == coeff.end()) {
      coeff.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) coeff.erase(it);
    }
  }

  friend bool operator==(const PolyForm& a, const PolyForm& b) {
    return a.nvars == b.nvars && a.degree == b.degree && a.coeff == b.coeff;
  }
};

inline PolyForm poly_const_one(int nvars) {
  PolyForm p;
  p.nvars = nvars;
  p.degree = 0;
  p.coeff[{0, 0, 0, 0}] = 1;
  return p;
}

inline PolyForm poly_mul(const PolyForm& a, const PolyForm& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("poly_mul: variable mismatch");
  PolyForm r;
  r.nvars = a.nvars;
  r.degree = a.degree + b.degree;
  for (const auto& [ea, ca] : a.coeff)
    for (const auto& [eb, cb] : b.coeff) {
      Expo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
      r.add_term(e, ca * cb);
    }
  return r;
}

inline PolyForm poly_scale(const PolyForm& a, const Rat& s) {
  PolyForm r;
  r.nvars = a.nvars;
  r.degree = a.degree;
  if (s == 0) return r;
  for (const auto& [e, c] : a.coeff) r.coeff[e] = c * s;
  return r;
}

inline PolyForm poly_add(const PolyForm& a, const PolyForm& b) {
  if (a.nvars != b.nvars || a.degree != b.degree)
    throw std::invalid_argument("poly_add: shape mismatch");
  PolyForm r = a;
  for (const auto& [e, c] : b.coeff) r.add_term(e, c);
  return r;
}

inline Rat poly_eval(const PolyForm& p, const std::array<Rat, 4>& pt) {
  Rat total = 0;
  for (const auto& [e, c] : p.coeff) {
    Rat t = c;
    for (int v = 0; v < 4; ++v)
      for (int k = 0; k < e[v]; ++k) t *= pt[v];
    total += t;
  }
  return total;
}

/// Scale so the lexicographically leading monomial (earlier variables
/// dominant, i.e. the largest exponent key) has coefficient 1.
inline PolyForm poly_normalize(const PolyForm& p) {
  if (p.coeff.empty()) return p;
  return poly_scale(p, Rat(1) / p.coeff.rbegin()->second);
}

/// All exponent vectors of total degree d in nvars variables, in the fixed
/// (lexicographic) order used for coefficient rows.
inline std::vector<Expo> monomials_of_degree(int nvars, long d) {
  std::vector<Expo> out;
  if (d < 0) return out;
  Expo e{0, 0, 0, 0};
  // iterate exponents of the first nvars-1 variables; the last is forced
  if (nvars == 3) {
    for (long a = 0; a <= d; ++a)
      for (long b = 0; a + b <= d; ++b)
        out.push_back(Expo{static_cast<int>(a), static_cast<int>(b), static_cast<int>(d - a - b), 0});
  } else {
    for (long a = 0; a <= d; ++a)
      for (long b = 0; a + b <= d; ++b)
        for (long c = 0; a + b + c <= d; ++c)
          out.push_back(Expo{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c),
                             static_cast<int>(d - a - b - c)});
  }
  (void)e;
  return out;
}

/// Integer coefficient row of p over monomials_of_degree(p.nvars, p.degree),
/// with denominators cleared.
inline IntRow poly_int_row(const PolyForm& p, const std::vector<Expo>& basis) {
  Int lcm = 1;
  for (const auto& [e, c] : p.coeff) {
    const Int den = boost::multiprecision::denominator(c);
    lcm = lcm / int_gcd(lcm, den) * den;
  }
  IntRow row(basis.size(), Int(0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto it = p.coeff.find(basis[i]);
    if (it == p.coeff.end()) continue;
    const Rat scaled = it->second * lcm;
    row[i] = boost::multiprecision::numerator(scaled);
  }
  return row;
}

}  // namespace m06cox
