// Effective-cone membership and constructive boundary decomposition on X,
// the iterated blow-up of P3 at four general points and the six lines
// through them.  Certificates either exhibit an explicit multiset of
// boundary classes summing to the input or name a violated inequality.
#pragma once

#include "m06cox/restriction.hpp"

#include <string>
#include <vector>

namespace m06cox {

struct XClass {
  Int d{};
  std::array<Int, 4> m{};
  std::array<Int, 6> mline{};  // pair order 12,13,14,23,24,34

  Int& at_pair(int i, int j) { return mline[pair4_index(i, j)]; }
  const Int& at_pair(int i, int j) const { return mline[pair4_index(i, j)]; }

  XClass& operator+=(const XClass& o) {
    d += o.d;
    for (int i = 0; i < 4; ++i) m[i] += o.m[i];
    for (int i = 0; i < 6; ++i) mline[i] += o.mline[i];
    return *this;
  }
  XClass& operator-=(const XClass& o) {
    d -= o.d;
    for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
    for (int i = 0; i < 6; ++i) mline[i] -= o.mline[i];
    return *this;
  }
  friend XClass operator+(XClass a, const XClass& b) { return a += b; }
  friend XClass operator-(XClass a, const XClass& b) { return a -= b; }
  friend XClass operator*(const Int& k, const XClass& a) {
    XClass r;
    r.d = k * a.d;
    for (int i = 0; i < 4; ++i) r.m[i] = k * a.m[i];
    for (int i = 0; i < 6; ++i) r.mline[i] = k * a.mline[i];
    return r;
  }
  friend bool operator==(const XClass& a, const XClass& b) {
    return a.d == b.d && a.m == b.m && a.mline == b.mline;
  }
  bool is_zero() const { return *this == XClass{}; }
};

inline DivisorClassM embed_x(const XClass& x) {
  DivisorClassM d;
  d.d = x.d;
  for (int i = 0; i < 4; ++i) d.m[i] = x.m[i];
  for (const auto& p : pairs4()) d.at_pair(p[0], p[1]) = x.at_pair(p[0], p[1]);
  return d;
}

/// Projection from the big lattice; requires vanishing coefficients at the
/// fifth point and its lines.
inline XClass to_xclass(const DivisorClassM& d) {
  if (d.m[4] != 0) throw std::invalid_argument("to_xclass: nonzero m5");
  for (int i = 1; i <= 4; ++i)
    if (d.at_pair(i, 5) != 0) throw std::invalid_argument("to_xclass: nonzero m_i5");
  XClass x;
  x.d = d.d;
  for (int i = 0; i < 4; ++i) x.m[i] = d.m[i];
  for (const auto& p : pairs4()) x.at_pair(p[0], p[1]) = d.at_pair(p[0], p[1]);
  return x;
}

// generator classes on X

inline XClass x_exc(int i) {
  XClass c;
  c.m[i - 1] = -1;
  return c;
}

inline XClass x_exc_line(int i, int j) {
  XClass c;
  c.at_pair(i, j) = -1;
  return c;
}

inline XClass x_plane(int i, int j, int k) {
  XClass c;
  c.d = 1;
  c.m[i - 1] = c.m[j - 1] = c.m[k - 1] = 1;
  c.at_pair(i, j) = c.at_pair(i, k) = c.at_pair(j, k) = 1;
  return c;
}

struct XGen {
  std::string name;
  XClass cls;
};

/// The fourteen Cox generators of X: E_i, E_ij, and the plane transforms.
inline const std::vector<XGen>& x_cox_generators() {
  static const std::vector<XGen> gens = [] {
    std::vector<XGen> v;
    for (int i = 1; i <= 4; ++i) v.push_back({"E" + std::to_string(i), x_exc(i)});
    for (const auto& p : pairs4())
      v.push_back({"E" + std::to_string(p[0]) + std::to_string(p[1]), x_exc_line(p[0], p[1])});
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j)
        for (int k = j + 1; k <= 4; ++k)
          v.push_back({"L" + std::to_string(i) + std::to_string(j) + std::to_string(k), x_plane(i, j, k)});
    return v;
  }();
  return gens;
}

// ---------------------------------------------------------------------------
// the nine nef-curve inequality families

struct XIneqReport {
  std::vector<Slack> slacks;
  std::array<Int, 3> separating;  // the three d - m_ij - m_kl values, by chi label
  bool strict_ok{false};          // some separating slack strictly positive
};

inline XIneqReport x_inequalities(const XClass& D) {
  XIneqReport rep;
  auto push = [&rep](std::string n, Int v) { rep.slacks.push_back({std::move(n), std::move(v)}); };
  push("l", D.d);
  for (int i = 1; i <= 4; ++i) push("l-e" + std::to_string(i), D.d - D.m[i - 1]);
  for (const auto& p : pairs4())
    push("l-e" + std::to_string(p[0]) + std::to_string(p[1]), D.d - D.at_pair(p[0], p[1]));
  for (Alpha a : {Alpha::x, Alpha::y, Alpha::z}) {
    const auto f = chi_fibre(a);
    const Int v = D.d - D.at_pair(f[0][0], f[0][1]) - D.at_pair(f[1][0], f[1][1]);
    rep.separating[static_cast<int>(a)] = v;
    push("l-e" + std::to_string(f[0][0]) + std::to_string(f[0][1]) + "-e" +
             std::to_string(f[1][0]) + std::to_string(f[1][1]),
         v);
  }
  for (const auto& p : pairs4()) {
    const auto kl = complement4(p[0], p[1]);
    push("C" + std::to_string(p[0]) + std::to_string(p[1]),
         2 * D.d - D.at_pair(p[0], p[1]) - D.m[kl[0] - 1] - D.m[kl[1] - 1]);
  }
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      const auto kl = complement4(i, j);
      push("C" + std::to_string(i) + ";" + std::to_string(j),
           2 * D.d - D.at_pair(i, kl[0]) - D.at_pair(i, kl[1]) - D.m[j - 1]);
    }
  for (int i = 1; i <= 4; ++i) {
    Int s = 0;
    for (int j = 1; j <= 4; ++j)
      if (j != i) s += D.at_pair(i, j);
    push("C" + std::to_string(i), 2 * D.d - s);
  }
  {
    Int s = 0;
    for (int i = 0; i < 4; ++i) s += D.m[i];
    push("B", 3 * D.d - s);
  }
  for (int i = 1; i <= 4; ++i) {
    Int s = 2 * D.m[i - 1];
    for (int a = 1; a <= 4; ++a)
      for (int b = a + 1; b <= 4; ++b)
        if (a != i && b != i) s += D.at_pair(a, b);
    push("B" + std::to_string(i), 3 * D.d - s);
  }
  rep.strict_ok = rep.separating[0] > 0 || rep.separating[1] > 0 || rep.separating[2] > 0;
  return rep;
}

// ---------------------------------------------------------------------------
// constructive decomposition

using XCert = EffCertificate<XClass>;

namespace detail {

inline void x_add_part(XCert& cert, const std::string& name, const XClass& cls, const Int& mult) {
  if (mult == 0) return;
  for (auto& p : cert.parts) {
    if (p.name == name) {
      p.mult += mult;
      return;
    }
  }
  cert.parts.push_back({name, cls, mult});
}

/// Splits off all negative exceptional multiplicities; the remainder has
/// m, mline >= 0 and the same section space.
inline XClass x_strip(XCert& cert, XClass R) {
  for (int i = 1; i <= 4; ++i) {
    if (R.m[i - 1] < 0) {
      x_add_part(cert, "E" + std::to_string(i), x_exc(i), -R.m[i - 1]);
      R.m[i - 1] = 0;
    }
  }
  for (const auto& p : pairs4()) {
    Int& v = R.at_pair(p[0], p[1]);
    if (v < 0) {
      x_add_part(cert, "E" + std::to_string(p[0]) + std::to_string(p[1]), x_exc_line(p[0], p[1]), -v);
      v = 0;
    }
  }
  return R;
}

/// Direct decomposition when some point has no conditions left: writes
/// R = d L_jkl + sum (d - m_j) E_j + sum (d - m_uv) E_uv over indices away
/// from i.  Valid whenever d >= m_j, m_uv (families 2 and 3).
inline void x_observation_negatives(XCert& cert, const XClass& R, int i) {
  std::array<int, 3> jkl{};
  int n = 0;
  for (int v = 1; v <= 4; ++v)
    if (v != i) jkl[n++] = v;
  x_add_part(cert, "L" + std::to_string(jkl[0]) + std::to_string(jkl[1]) + std::to_string(jkl[2]),
             x_plane(jkl[0], jkl[1], jkl[2]), R.d);
  for (int v : jkl)
    x_add_part(cert, "E" + std::to_string(v), x_exc(v), R.d - R.m[v - 1]);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      x_add_part(cert, "E" + std::to_string(jkl[a]) + std::to_string(jkl[b]),
                 x_exc_line(jkl[a], jkl[b]), R.d - R.at_pair(jkl[a], jkl[b]));
  x_add_part(cert, "E" + std::to_string(i), x_exc(i), -R.m[i - 1]);
  for (int v : jkl)
    x_add_part(cert, "E" + std::to_string(std::min(i, v)) + std::to_string(std::max(i, v)),
               x_exc_line(i, v), -R.at_pair(i, v));
}

/// On the face where every d - m_ij - m_kl slack vanishes, boundary sums
/// contain no line exceptionals, so the plane multiplicities are forced:
/// a_T = (m_ij + m_ik + m_jk - d) / 2.  Returns false if no such sum exists.
inline bool x_stratum_decompose(XCert& cert, const XClass& R) {
  const std::array<std::array<int, 3>, 4> triples{{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
  std::array<Int, 4> a{};
  for (int t = 0; t < 4; ++t) {
    const auto& T = triples[t];
    const Int s = R.at_pair(T[0], T[1]) + R.at_pair(T[0], T[2]) + R.at_pair(T[1], T[2]) - R.d;
    if (s < 0 || s % 2 != 0) return false;
    a[t] = s / 2;
  }
  XClass probe;
  for (int t = 0; t < 4; ++t) probe += a[t] * x_plane(triples[t][0], triples[t][1], triples[t][2]);
  if (probe.d != R.d) return false;
  for (int p = 0; p < 6; ++p)
    if (probe.mline[p] != R.mline[p]) return false;
  for (int i = 0; i < 4; ++i)
    if (probe.m[i] < R.m[i]) return false;  // E_i cannot absorb a deficit
  for (int t = 0; t < 4; ++t)
    x_add_part(cert, "L" + std::to_string(triples[t][0]) + std::to_string(triples[t][1]) + std::to_string(triples[t][2]),
               x_plane(triples[t][0], triples[t][1], triples[t][2]), a[t]);
  for (int i = 1; i <= 4; ++i)
    x_add_part(cert, "E" + std::to_string(i), x_exc(i), probe.m[i - 1] - R.m[i - 1]);
  return true;
}

inline bool x_all_nonneg(const XClass& R) {
  return all_nonneg(x_inequalities(R).slacks);
}

/// Induction step: pick a plane whose subtraction keeps every inequality.
inline std::array<int, 3> x_choose_plane(const XClass& R) {
  // a pair with m_ij = d forces the plane through it and its largest cross
  for (const auto& p : pairs4()) {
    if (R.at_pair(p[0], p[1]) != R.d) continue;
    const auto rs = complement4(p[0], p[1]);
    Int best = -1;
    int bv = 0;
    for (int u : {p[0], p[1]})
      for (int v : {rs[0], rs[1]}) {
        if (R.at_pair(u, v) > best) {
          best = R.at_pair(u, v);
          bv = v;
        }
      }
    return {p[0], p[1], bv};
  }
  // a point with m_i = d: order the rest by multiplicity
  {
    std::array<int, 4> ord{1, 2, 3, 4};
    std::stable_sort(ord.begin(), ord.end(), [&R](int a, int b) { return R.m[a - 1] < R.m[b - 1]; });
    if (R.m[ord[3] - 1] == R.d) {
      if (R.at_pair(ord[1], ord[2]) > 0) return {ord[1], ord[2], ord[3]};
      return {ord[0], ord[2], ord[3]};
    }
  }
  // all multiplicities below d: try the four planes in a fixed order
  const std::array<std::array<int, 3>, 4> order{{{2, 3, 4}, {1, 3, 4}, {1, 2, 4}, {1, 2, 3}}};
  for (const auto& T : order) {
    XClass R2 = R - x_plane(T[0], T[1], T[2]);
    // the subtraction may create admissible negatives; test the clamped class
    XCert scratch;
    R2 = x_strip(scratch, R2);
    if (x_all_nonneg(R2)) return T;
  }
  throw std::logic_error("x_decompose: no admissible plane");
}

}  // namespace detail

/// Constructive membership test for the monoid generated by E_i, E_ij and
/// the plane classes.  Effective certificates carry an exact decomposition;
/// NotEffective names a violated nef inequality, or the separating-face
/// obstruction when every d - m_ij - m_kl slack is zero and no boundary sum
/// exists on that face.
inline XCert x_decompose(const XClass& D) {
  XCert cert;
  XClass R = detail::x_strip(cert, D);
  long guard = to_long(int_max(R.d, Int(0))) + 1;
  while (true) {
    if (R.is_zero()) {
      cert.effective = true;
      break;
    }
    const XIneqReport rep = x_inequalities(R);
    if (const Slack* bad = first_negative(rep.slacks)) {
      cert = XCert{};
      cert.witness = bad->name;
      cert.slack = bad->value;
      return cert;
    }
    if (!rep.strict_ok) {
      if (detail::x_stratum_decompose(cert, R)) {
        cert.effective = true;
        break;
      }
      cert = XCert{};
      cert.witness = "strict l-e_ij-e_kl";
      cert.slack = 0;
      return cert;
    }
    // a point with nothing left to vanish: finish directly
    int free_pt = 0;
    for (int i = 1; i <= 4 && free_pt == 0; ++i) {
      if (R.m[i - 1] > 0) continue;
      bool row0 = true;
      for (int j = 1; j <= 4; ++j)
        if (j != i && R.at_pair(i, j) > 0) row0 = false;
      if (row0) free_pt = i;
    }
    if (free_pt != 0) {
      detail::x_observation_negatives(cert, R, free_pt);
      cert.effective = true;
      break;
    }
    if (guard-- <= 0) throw std::logic_error("x_decompose: degree did not decrease");
    const auto T = detail::x_choose_plane(R);
    detail::x_add_part(cert, "L" + std::to_string(T[0]) + std::to_string(T[1]) + std::to_string(T[2]),
                       x_plane(T[0], T[1], T[2]), 1);
    R = detail::x_strip(cert, R - x_plane(T[0], T[1], T[2]));
    if (!detail::x_all_nonneg(R)) throw std::logic_error("x_decompose: plane choice broke an inequality");
  }
  XClass sum;
  for (const auto& p : cert.parts) sum += p.mult * p.cls;
  if (!(sum == D)) throw std::logic_error("x_decompose: sum mismatch");
  return cert;
}

}  // namespace m06cox
