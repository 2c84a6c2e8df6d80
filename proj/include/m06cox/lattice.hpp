// Divisor and curve class arithmetic on the blow-up model of the moduli
// space: the 40-generator dictionary, intersection pairing, special curves
// and the renumbering normalization used by the reduction loop.
//
// A divisor class is written D = d*H - sum_i m_i E_i - sum_{ij} m_ij E_ij
// with point indices in {1..5} and the ten unordered pairs in lexicographic
// order (12,13,14,15,23,24,25,34,35,45).
#pragma once

#include "m06cox/numeric.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace m06cox {

// ---------------------------------------------------------------------------
// pair indexing

inline const std::array<std::array<int, 2>, 10>& pairs5() {
  static const std::array<std::array<int, 2>, 10> p = {{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};
  return p;
}

inline const std::array<std::array<int, 2>, 6>& pairs4() {
  static const std::array<std::array<int, 2>, 6> p = {{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  return p;
}

/// Index of the unordered pair {i,j} in {1..5}; order of i,j is irrelevant.
inline int pair5_index(int i, int j) {
  if (i == j || i < 1 || j < 1 || i > 5 || j > 5) throw std::invalid_argument("pair5_index: bad pair");
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 10; ++k)
    if (pairs5()[k][0] == i && pairs5()[k][1] == j) return k;
  throw std::logic_error("pair5_index: unreachable");
}

inline int pair4_index(int i, int j) {
  if (i == j || i < 1 || j < 1 || i > 4 || j > 4) throw std::invalid_argument("pair4_index: bad pair");
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (pairs4()[k][0] == i && pairs4()[k][1] == j) return k;
  throw std::logic_error("pair4_index: unreachable");
}

/// The two indices of {1,2,3,4} not in {i,j}.
inline std::array<int, 2> complement4(int i, int j) {
  std::array<int, 2> out{};
  int n = 0;
  for (int k = 1; k <= 4; ++k)
    if (k != i && k != j) out[n++] = k;
  if (n != 2) throw std::invalid_argument("complement4: bad pair");
  return out;
}

// ---------------------------------------------------------------------------
// the x/y/z labels of the three pair partitions of {1,2,3,4}

enum class Alpha { x = 0, y = 1, z = 2 };

inline const char* alpha_name(Alpha a) {
  switch (a) {
    case Alpha::x: return "x";
    case Alpha::y: return "y";
    case Alpha::z: return "z";
  }
  return "?";
}

/// chi({1,3}) = chi({2,4}) = x, chi({1,4}) = chi({2,3}) = y,
/// chi({1,2}) = chi({3,4}) = z.
inline Alpha chi(int i, int j) {
  if (i > j) std::swap(i, j);
  if ((i == 1 && j == 3) || (i == 2 && j == 4)) return Alpha::x;
  if ((i == 1 && j == 4) || (i == 2 && j == 3)) return Alpha::y;
  if ((i == 1 && j == 2) || (i == 3 && j == 4)) return Alpha::z;
  throw std::invalid_argument("chi: pair must lie in {1..4}");
}

/// The two pairs {i,j},{k,l} of {1,2,3,4} with chi = a, in canonical order.
inline std::array<std::array<int, 2>, 2> chi_fibre(Alpha a) {
  switch (a) {
    case Alpha::x: return {{{1, 3}, {2, 4}}};
    case Alpha::y: return {{{1, 4}, {2, 3}}};
    case Alpha::z: return {{{1, 2}, {3, 4}}};
  }
  throw std::invalid_argument("chi_fibre");
}

// ---------------------------------------------------------------------------
// classes

struct DivisorClassM {
  Int d{};
  std::array<Int, 5> m{};
  std::array<Int, 10> mline{};

  Int& at_pair(int i, int j) { return mline[pair5_index(i, j)]; }
  const Int& at_pair(int i, int j) const { return mline[pair5_index(i, j)]; }

  DivisorClassM& operator+=(const DivisorClassM& o) {
    d += o.d;
    for (int i = 0; i < 5; ++i) m[i] += o.m[i];
    for (int i = 0; i < 10; ++i) mline[i] += o.mline[i];
    return *this;
  }
  DivisorClassM& operator-=(const DivisorClassM& o) {
    d -= o.d;
    for (int i = 0; i < 5; ++i) m[i] -= o.m[i];
    for (int i = 0; i < 10; ++i) mline[i] -= o.mline[i];
    return *this;
  }
  friend DivisorClassM operator+(DivisorClassM a, const DivisorClassM& b) { return a += b; }
  friend DivisorClassM operator-(DivisorClassM a, const DivisorClassM& b) { return a -= b; }
  friend DivisorClassM operator*(const Int& k, const DivisorClassM& a) {
    DivisorClassM r;
    r.d = k * a.d;
    for (int i = 0; i < 5; ++i) r.m[i] = k * a.m[i];
    for (int i = 0; i < 10; ++i) r.mline[i] = k * a.mline[i];
    return r;
  }
  friend bool operator==(const DivisorClassM& a, const DivisorClassM& b) {
    return a.d == b.d && a.m == b.m && a.mline == b.mline;
  }
  bool is_zero() const { return *this == DivisorClassM{}; }
};

struct CurveClassM {
  Int cl{};
  std::array<Int, 5> ce{};
  std::array<Int, 10> cline{};

  Int& at_pair(int i, int j) { return cline[pair5_index(i, j)]; }
  const Int& at_pair(int i, int j) const { return cline[pair5_index(i, j)]; }

  CurveClassM& operator+=(const CurveClassM& o) {
    cl += o.cl;
    for (int i = 0; i < 5; ++i) ce[i] += o.ce[i];
    for (int i = 0; i < 10; ++i) cline[i] += o.cline[i];
    return *this;
  }
  CurveClassM& operator-=(const CurveClassM& o) {
    cl -= o.cl;
    for (int i = 0; i < 5; ++i) ce[i] -= o.ce[i];
    for (int i = 0; i < 10; ++i) cline[i] -= o.cline[i];
    return *this;
  }
  friend CurveClassM operator+(CurveClassM a, const CurveClassM& b) { return a += b; }
  friend CurveClassM operator-(CurveClassM a, const CurveClassM& b) { return a -= b; }
  friend CurveClassM operator*(const Int& k, const CurveClassM& a) {
    CurveClassM r;
    r.cl = k * a.cl;
    for (int i = 0; i < 5; ++i) r.ce[i] = k * a.ce[i];
    for (int i = 0; i < 10; ++i) r.cline[i] = k * a.cline[i];
    return r;
  }
  friend bool operator==(const CurveClassM& a, const CurveClassM& b) {
    return a.cl == b.cl && a.ce == b.ce && a.cline == b.cline;
  }
};

/// Intersection pairing: D.l = d, D.e_i = m_i, D.e_ij = m_ij, extended
/// bilinearly.
inline Int dot(const DivisorClassM& d, const CurveClassM& c) {
  Int r = d.d * c.cl;
  for (int i = 0; i < 5; ++i) r += d.m[i] * c.ce[i];
  for (int i = 0; i < 10; ++i) r += d.mline[i] * c.cline[i];
  return r;
}

// ---------------------------------------------------------------------------
// generators

struct GeneratorId {
  enum class Kind { ExcPoint, ExcLine, Plane, KV };
  Kind kind{Kind::ExcPoint};
  std::array<int, 4> idx{};  // ExcPoint: {i}; ExcLine: {i,j}; Plane: {i,j,k}; KV: {i,j,k,l} as pairs (i,j),(k,l)

  friend bool operator==(const GeneratorId& a, const GeneratorId& b) {
    return a.kind == b.kind && a.idx == b.idx;
  }
};

inline GeneratorId gen_point(int i) {
  if (i < 1 || i > 5) throw std::invalid_argument("gen_point: index");
  return {GeneratorId::Kind::ExcPoint, {i, 0, 0, 0}};
}

inline GeneratorId gen_line(int i, int j) {
  pair5_index(i, j);
  if (i > j) std::swap(i, j);
  return {GeneratorId::Kind::ExcLine, {i, j, 0, 0}};
}

inline GeneratorId gen_plane(int i, int j, int k) {
  std::array<int, 3> t{i, j, k};
  std::sort(t.begin(), t.end());
  if (t[0] < 1 || t[2] > 5 || t[0] == t[1] || t[1] == t[2])
    throw std::invalid_argument("gen_plane: indices");
  return {GeneratorId::Kind::Plane, {t[0], t[1], t[2], 0}};
}

/// Keel-Vermeire label {(i,j),(k,l)}: unordered pair of disjoint unordered
/// pairs in {1..5}.
inline GeneratorId gen_kv(int i, int j, int k, int l) {
  if (i > j) std::swap(i, j);
  if (k > l) std::swap(k, l);
  if (k < i || (k == i && l < j)) {
    std::swap(i, k);
    std::swap(j, l);
  }
  std::array<int, 4> all{i, j, k, l};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (all[a] == all[b]) throw std::invalid_argument("gen_kv: pairs must be disjoint");
  for (int v : all)
    if (v < 1 || v > 5) throw std::invalid_argument("gen_kv: indices");
  return {GeneratorId::Kind::KV, {i, j, k, l}};
}

/// All 40 generators in the fixed enumeration order
/// ExcPoint < ExcLine < Plane < KV, each block lexicographic.
inline const std::vector<GeneratorId>& all_generators() {
  static const std::vector<GeneratorId> gens = [] {
    std::vector<GeneratorId> v;
    for (int i = 1; i <= 5; ++i) v.push_back(gen_point(i));
    for (const auto& p : pairs5()) v.push_back(gen_line(p[0], p[1]));
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j)
        for (int k = j + 1; k <= 5; ++k) v.push_back(gen_plane(i, j, k));
    for (int a = 0; a < 10; ++a)
      for (int b = a + 1; b < 10; ++b) {
        const auto& p = pairs5()[a];
        const auto& q = pairs5()[b];
        if (p[0] == q[0] || p[0] == q[1] || p[1] == q[0] || p[1] == q[1]) continue;
        v.push_back(gen_kv(p[0], p[1], q[0], q[1]));
      }
    return v;
  }();
  return gens;
}

inline int generator_index(const GeneratorId& g) {
  const auto& gens = all_generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == g) return static_cast<int>(i);
  throw std::invalid_argument("generator_index: unknown generator");
}

inline std::string generator_name(const GeneratorId& g) {
  std::ostringstream os;
  switch (g.kind) {
    case GeneratorId::Kind::ExcPoint: os << "E" << g.idx[0]; break;
    case GeneratorId::Kind::ExcLine: os << "E" << g.idx[0] << g.idx[1]; break;
    case GeneratorId::Kind::Plane: os << "L" << g.idx[0] << g.idx[1] << g.idx[2]; break;
    case GeneratorId::Kind::KV:
      os << "Q" << g.idx[0] << g.idx[1] << "." << g.idx[2] << g.idx[3];
      break;
  }
  return os.str();
}

inline std::optional<GeneratorId> parse_generator(const std::string& s) {
  auto digits = [](const std::string& t) {
    for (char c : t)
      if (c < '1' || c > '5') return false;
    return !t.empty();
  };
  try {
    if (s.size() >= 2 && s[0] == 'E' && digits(s.substr(1))) {
      if (s.size() == 2) return gen_point(s[1] - '0');
      if (s.size() == 3) return gen_line(s[1] - '0', s[2] - '0');
    }
    if (s.size() == 4 && s[0] == 'L' && digits(s.substr(1)))
      return gen_plane(s[1] - '0', s[2] - '0', s[3] - '0');
    if (s.size() == 6 && s[0] == 'Q' && s[3] == '.' && digits(s.substr(1, 2)) && digits(s.substr(4, 2)))
      return gen_kv(s[1] - '0', s[2] - '0', s[4] - '0', s[5] - '0');
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

/// The published divisor class of a generator.
inline DivisorClassM generator_class(const GeneratorId& g) {
  DivisorClassM c;
  switch (g.kind) {
    case GeneratorId::Kind::ExcPoint:
      c.m[g.idx[0] - 1] = -1;
      break;
    case GeneratorId::Kind::ExcLine:
      c.at_pair(g.idx[0], g.idx[1]) = -1;
      break;
    case GeneratorId::Kind::Plane: {
      c.d = 1;
      const int i = g.idx[0], j = g.idx[1], k = g.idx[2];
      c.m[i - 1] = c.m[j - 1] = c.m[k - 1] = 1;
      c.at_pair(i, j) = c.at_pair(i, k) = c.at_pair(j, k) = 1;
      break;
    }
    case GeneratorId::Kind::KV: {
      c.d = 2;
      for (int i = 0; i < 5; ++i) c.m[i] = 1;
      const int i = g.idx[0], j = g.idx[1], k = g.idx[2], l = g.idx[3];
      c.at_pair(i, k) = c.at_pair(i, l) = c.at_pair(j, k) = c.at_pair(j, l) = 1;
      break;
    }
  }
  return c;
}

/// Boundary dictionary: S in {1..6} with |S| or |S^c| in {2,3}.
/// D_{i6} = E_i, D_{ij6} = E_ij, D_{ij} = L_{abc} with {i,j,a,b,c} = {1..5}.
inline DivisorClassM boundary_class(std::vector<int> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  for (int v : S)
    if (v < 1 || v > 6) throw std::invalid_argument("boundary_class: marking out of range");
  if (S.size() > 3) {  // replace by complement
    std::vector<int> c;
    for (int v = 1; v <= 6; ++v)
      if (!std::binary_search(S.begin(), S.end(), v)) c.push_back(v);
    S = std::move(c);
  }
  if (S.size() != 2 && S.size() != 3) throw std::invalid_argument("boundary_class: |S| must be 2 or 3");
  const bool has6 = !S.empty() && S.back() == 6;
  if (S.size() == 2) {
    if (has6) return generator_class(gen_point(S[0]));
    std::array<int, 3> abc{};
    int n = 0;
    for (int v = 1; v <= 5; ++v)
      if (v != S[0] && v != S[1]) abc[n++] = v;
    return generator_class(gen_plane(abc[0], abc[1], abc[2]));
  }
  if (has6) return generator_class(gen_line(S[0], S[1]));
  // |S| = 3 inside {1..5}: complement is {a,b,6}
  std::array<int, 2> ab{};
  int n = 0;
  for (int v = 1; v <= 5; ++v)
    if (v != S[0] && v != S[1] && v != S[2]) ab[n++] = v;
  return generator_class(gen_line(ab[0], ab[1]));
}

// ---------------------------------------------------------------------------
// permutations of {1..5}

struct Perm5 {
  std::array<int, 5> img{1, 2, 3, 4, 5};  // img[i-1] = sigma(i)

  int operator()(int i) const { return img[i - 1]; }

  static Perm5 identity() { return Perm5{}; }

  bool is_identity() const {
    for (int i = 1; i <= 5; ++i)
      if (img[i - 1] != i) return false;
    return true;
  }

  Perm5 inverse() const {
    Perm5 r;
    for (int i = 1; i <= 5; ++i) r.img[img[i - 1] - 1] = i;
    return r;
  }

  /// (a.then(b))(i) = b(a(i))
  Perm5 then(const Perm5& b) const {
    Perm5 r;
    for (int i = 1; i <= 5; ++i) r.img[i - 1] = b(img[i - 1]);
    return r;
  }

  friend bool operator==(const Perm5& a, const Perm5& b) { return a.img == b.img; }
};

inline Perm5 transposition(int a, int b) {
  Perm5 p;
  std::swap(p.img[a - 1], p.img[b - 1]);
  return p;
}

inline const std::vector<Perm5>& all_perm5() {
  static const std::vector<Perm5> perms = [] {
    std::vector<Perm5> v;
    std::array<int, 5> seq{1, 2, 3, 4, 5};
    do {
      v.push_back(Perm5{seq});
    } while (std::next_permutation(seq.begin(), seq.end()));
    return v;
  }();
  return perms;
}

/// Renumbers point indices by sigma: the image class has
/// m'_{sigma(i)} = m_i and m'_{sigma(i)sigma(j)} = m_ij; d is unchanged.
inline DivisorClassM apply_perm(const Perm5& s, const DivisorClassM& d) {
  DivisorClassM r;
  r.d = d.d;
  for (int i = 1; i <= 5; ++i) r.m[s(i) - 1] = d.m[i - 1];
  for (const auto& p : pairs5()) r.at_pair(s(p[0]), s(p[1])) = d.at_pair(p[0], p[1]);
  return r;
}

inline CurveClassM apply_perm(const Perm5& s, const CurveClassM& c) {
  CurveClassM r;
  r.cl = c.cl;
  for (int i = 1; i <= 5; ++i) r.ce[s(i) - 1] = c.ce[i - 1];
  for (const auto& p : pairs5()) r.at_pair(s(p[0]), s(p[1])) = c.at_pair(p[0], p[1]);
  return r;
}

inline GeneratorId apply_perm(const Perm5& s, const GeneratorId& g) {
  switch (g.kind) {
    case GeneratorId::Kind::ExcPoint: return gen_point(s(g.idx[0]));
    case GeneratorId::Kind::ExcLine: return gen_line(s(g.idx[0]), s(g.idx[1]));
    case GeneratorId::Kind::Plane: return gen_plane(s(g.idx[0]), s(g.idx[1]), s(g.idx[2]));
    case GeneratorId::Kind::KV:
      return gen_kv(s(g.idx[0]), s(g.idx[1]), s(g.idx[2]), s(g.idx[3]));
  }
  throw std::logic_error("apply_perm: bad generator");
}

/// Renumbering required before the reduction step: returns the
/// lexicographically smallest sigma (as the sequence sigma(1..5)) such that
/// D' = apply_perm(sigma, D) has m'_5 <= m'_i for i = 1..4, and, when all
/// m'_i are equal, the maximum of all ten m'_ij is attained at some m'_i5.
inline std::pair<Perm5, DivisorClassM> normalize(const DivisorClassM& d) {
  for (const Perm5& s : all_perm5()) {
    const DivisorClassM c = apply_perm(s, d);
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      if (c.m[4] > c.m[i]) { ok = false; break; }
    if (!ok) continue;
    bool all_equal = true;
    for (int i = 0; i < 4; ++i)
      if (c.m[i] != c.m[4]) { all_equal = false; break; }
    if (all_equal) {
      Int best = c.mline[0];
      for (int i = 1; i < 10; ++i) best = int_max(best, c.mline[i]);
      Int best5 = c.at_pair(1, 5);
      for (int i = 2; i <= 4; ++i) best5 = int_max(best5, c.at_pair(i, 5));
      if (best5 != best) continue;
    }
    return {s, c};
  }
  throw std::logic_error("normalize: no qualifying permutation");  // cannot happen
}

// ---------------------------------------------------------------------------
// special curve classes

inline CurveClassM curve_l() {
  CurveClassM c;
  c.cl = 1;
  return c;
}

inline CurveClassM curve_e(int i) {
  CurveClassM c;
  c.ce[i - 1] = 1;
  return c;
}

inline CurveClassM curve_e_pair(int i, int j) {
  CurveClassM c;
  c.at_pair(i, j) = 1;
  return c;
}

/// L_x = l - e_5 - e_13 - e_24 and its y,z companions.
inline CurveClassM curve_L(Alpha a) {
  CurveClassM c;
  c.cl = 1;
  c.ce[4] = -1;
  for (const auto& p : chi_fibre(a)) c.at_pair(p[0], p[1]) -= 1;
  return c;
}

/// The moving cubic C = 3l - e_1 - ... - e_5.
inline CurveClassM curve_C() {
  CurveClassM c;
  c.cl = 3;
  for (int i = 0; i < 5; ++i) c.ce[i] = -1;
  return c;
}

/// C_ij = 2l - e_ij - e_k - e_l, indices in {1..4}.
inline CurveClassM curve_C_pair(int i, int j) {
  const auto kl = complement4(i, j);
  CurveClassM c;
  c.cl = 2;
  c.at_pair(i, j) = -1;
  c.ce[kl[0] - 1] = c.ce[kl[1] - 1] = -1;
  return c;
}

/// C_{i;j} = 2l - e_ik - e_il - e_j with {k,l} = {1..4} \ {i,j}.
inline CurveClassM curve_C_sep(int i, int j) {
  const auto kl = complement4(i, j);
  CurveClassM c;
  c.cl = 2;
  c.at_pair(i, kl[0]) = -1;
  c.at_pair(i, kl[1]) = -1;
  c.ce[j - 1] = -1;
  return c;
}

/// C_i = 2l - e_ij - e_ik - e_il, j,k,l the other indices of {1..4}.
inline CurveClassM curve_C_pt(int i) {
  CurveClassM c;
  c.cl = 2;
  for (int j = 1; j <= 4; ++j)
    if (j != i) c.at_pair(i, j) -= 1;
  return c;
}

inline CurveClassM curve_B() {
  CurveClassM c;
  c.cl = 3;
  for (int i = 0; i < 4; ++i) c.ce[i] = -1;
  return c;
}

/// B_i = 3l - 2e_i - e_jk - e_jl - e_kl.
inline CurveClassM curve_B_pt(int i) {
  CurveClassM c;
  c.cl = 3;
  c.ce[i - 1] = -2;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b)
      if (a != i && b != i) c.at_pair(a, b) = -1;
  return c;
}

/// m_alpha = max(0, -D.L_alpha).
inline Int m_alpha(const DivisorClassM& d, Alpha a) {
  return int_max(Int(0), Int(-dot(d, curve_L(a))));
}

// ---------------------------------------------------------------------------
// textual form: "d; m1,...,m5; m12,m13,m14,m15,m23,m24,m25,m34,m35,m45"

inline std::string to_string(const DivisorClassM& c) {
  std::ostringstream os;
  os << c.d << "; ";
  for (int i = 0; i < 5; ++i) os << (i ? "," : "") << c.m[i];
  os << "; ";
  for (int i = 0; i < 10; ++i) os << (i ? "," : "") << c.mline[i];
  return os.str();
}

namespace detail {
inline std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t') continue;
    if (ch == ',') {
      if (cur.empty()) throw std::invalid_argument("empty integer in class string");
      out.emplace_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cur.empty()) throw std::invalid_argument("empty integer in class string");
  out.emplace_back(cur);
  return out;
}
}  // namespace detail

inline DivisorClassM parse_divisor(const std::string& s) {
  const auto p1 = s.find(';');
  const auto p2 = s.find(';', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw std::invalid_argument("class string needs two ';' separators");
  DivisorClassM c;
  try {
    const auto ds = detail::parse_int_list(s.substr(0, p1));
    const auto ms = detail::parse_int_list(s.substr(p1 + 1, p2 - p1 - 1));
    const auto ls = detail::parse_int_list(s.substr(p2 + 1));
    if (ds.size() != 1 || ms.size() != 5 || ls.size() != 10)
      throw std::invalid_argument("class string needs 1+5+10 integers");
    c.d = ds[0];
    for (int i = 0; i < 5; ++i) c.m[i] = ms[i];
    for (int i = 0; i < 10; ++i) c.mline[i] = ls[i];
  } catch (const std::runtime_error& e) {  // cpp_int parse failure
    throw std::invalid_argument(std::string("bad integer in class string: ") + e.what());
  }
  return c;
}

}  // namespace m06cox
