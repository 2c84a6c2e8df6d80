// Independent ground truth by exact interpolation: dimensions of spaces of
// forms with prescribed vanishing at the blown-up points and lines, the
// distinguished-monomial enumeration, concrete section polynomials, span
// ranks, and generic vanishing orders along the three transversal lines.
//
// Everything is computed over exact rationals; vanishing to order m along a
// line is imposed as all partials of total order < m at deg+1 points of the
// line, which is equivalent for forms of the given degree.
#pragma once

#include "m06cox/plane_geometry.hpp"
#include "m06cox/x_cone.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace m06cox {

using SpacePt = std::array<Int, 4>;

/// p1..p4 the coordinate points, p5 = (1:1:1:1).
inline SpacePt space_point(int i) {
  SpacePt p{0, 0, 0, 0};
  if (i >= 1 && i <= 4) {
    p[i - 1] = 1;
    return p;
  }
  if (i == 5) return {1, 1, 1, 1};
  throw std::invalid_argument("space_point: index");
}

/// The transversal through p5 meeting the two skew lines of the chi fibre:
/// spanned by u_a and v_a with u_a + v_a = p5.
inline std::pair<SpacePt, SpacePt> transversal_span(Alpha a) {
  switch (a) {
    case Alpha::x: return {{1, 0, 1, 0}, {0, 1, 0, 1}};
    case Alpha::y: return {{1, 0, 0, 1}, {0, 1, 1, 0}};
    case Alpha::z: return {{1, 1, 0, 0}, {0, 0, 1, 1}};
  }
  throw std::invalid_argument("transversal_span");
}

namespace detail {

inline Int falling(int b, int a) {
  Int r = 1;
  for (int t = 0; t < a; ++t) r *= (b - t);
  return r;
}

/// Rows imposing vanishing of all partials of total order < order at pt,
/// on the monomial basis of degree d in nvars variables.
inline void append_jet_rows(IntMat& rows, const std::vector<Expo>& basis, int nvars,
                            const std::array<Int, 4>& pt, long order) {
  if (order <= 0) return;
  for (long o = 0; o < order; ++o) {
    for (const Expo& al : monomials_of_degree(nvars, o)) {
      IntRow row(basis.size(), Int(0));
      bool nonzero = false;
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const Expo& be = basis[c];
        Int v = 1;
        bool ok = true;
        for (int t = 0; t < nvars; ++t) {
          if (be[t] < al[t]) { ok = false; break; }
          v *= falling(be[t], al[t]);
        }
        if (!ok || v == 0) continue;
        for (int t = 0; t < nvars; ++t) {
          const int e = be[t] - al[t];
          for (int k = 0; k < e; ++k) v *= pt[t];
          if (v == 0) break;
        }
        if (v == 0) continue;
        row[c] = v;
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
}

struct PointCondition {
  std::array<Int, 4> pt;
  long order;
};

struct LineCondition {
  std::array<Int, 4> a, b;  // the line spanned by a and b
  long order;
};

/// Dimension of degree-d forms satisfying all conditions; line conditions
/// are imposed at `samples` points a + t b (t = 0..samples-1).
inline Int h0_forms(int nvars, long d, const std::vector<PointCondition>& pts,
                    const std::vector<LineCondition>& lines, long samples_override = 0) {
  if (d < 0) return 0;
  const auto basis = monomials_of_degree(nvars, d);
  IntMat rows;
  for (const auto& p : pts) append_jet_rows(rows, basis, nvars, p.pt, p.order);
  const long samples = samples_override > 0 ? samples_override : d + 1;
  for (const auto& l : lines) {
    if (l.order <= 0) continue;
    for (long t = 0; t < samples; ++t) {
      std::array<Int, 4> pt;
      for (int v = 0; v < 4; ++v) pt[v] = l.a[v] + Int(t) * l.b[v];
      append_jet_rows(rows, basis, nvars, pt, l.order);
    }
  }
  return Int(static_cast<long>(basis.size())) - rank_int(std::move(rows));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// section-space dimensions

namespace detail {
inline std::vector<LineCondition> p3_line_conditions(const DivisorClassM& D) {
  std::vector<LineCondition> lines;
  for (const auto& p : pairs5()) {
    const long o = to_long(clamp0(D.at_pair(p[0], p[1])));
    if (o > 0) lines.push_back({space_point(p[0]), space_point(p[1]), o});
  }
  return lines;
}
}  // namespace detail

/// h^0 of D on the five-point model: degree-d forms with multiplicity m_i at
/// p_i and m_ij along the lines p_i p_j (negative coefficients impose
/// nothing).
inline Int h0_p3(const DivisorClassM& D, long samples_override = 0) {
  std::vector<detail::PointCondition> pts;
  for (int i = 1; i <= 5; ++i) {
    const long o = to_long(clamp0(D.m[i - 1]));
    if (o > 0) pts.push_back({space_point(i), o});
  }
  return detail::h0_forms(4, to_long(D.d), pts, detail::p3_line_conditions(D), samples_override);
}

/// h^0 on the four-point, six-line model.
inline Int h0_x(const XClass& D, long samples_override = 0) {
  std::vector<detail::PointCondition> pts;
  for (int i = 1; i <= 4; ++i) {
    const long o = to_long(clamp0(D.m[i - 1]));
    if (o > 0) pts.push_back({space_point(i), o});
  }
  std::vector<detail::LineCondition> lines;
  for (const auto& p : pairs4()) {
    const long o = to_long(clamp0(D.at_pair(p[0], p[1])));
    if (o > 0) lines.push_back({space_point(p[0]), space_point(p[1]), o});
  }
  return detail::h0_forms(4, to_long(D.d), pts, lines, samples_override);
}

enum class SurfaceConfig { Bl4, Bl4q, KV6, Y7 };

namespace detail {
inline std::array<Int, 4> plane_pt4(const PlanePt& p) { return {p[0], p[1], p[2], Int(0)}; }
}  // namespace detail

/// h^0 on the plane blow-ups.  Bl4 and Bl4q use the four standard points
/// (any four points in general position give the same dimensions); KV6 adds
/// the diagonal points x,y; Y7 adds all of x,y,z.
inline Int h0_surface(SurfaceConfig cfg, const SurfaceYClass& S) {
  std::vector<detail::PointCondition> pts;
  for (int i = 1; i <= 4; ++i) {
    const long o = to_long(clamp0(S.m[i - 1]));
    if (o > 0) pts.push_back({detail::plane_pt4(plane_point(i)), o});
  }
  auto add_diag = [&pts, &S](Alpha a) {
    const long o = to_long(clamp0(S.m_of(a)));
    if (o > 0) pts.push_back({detail::plane_pt4(diag_point(a)), o});
  };
  switch (cfg) {
    case SurfaceConfig::Bl4:
    case SurfaceConfig::Bl4q:
      if (S.mx > 0 || S.my > 0 || S.mz > 0)
        throw std::invalid_argument("h0_surface: diagonal multiplicities need KV6 or Y7");
      break;
    case SurfaceConfig::KV6:
      add_diag(Alpha::x);
      add_diag(Alpha::y);
      if (S.mz > 0) throw std::invalid_argument("h0_surface: mz unused in KV6");
      break;
    case SurfaceConfig::Y7:
      add_diag(Alpha::x);
      add_diag(Alpha::y);
      add_diag(Alpha::z);
      break;
  }
  return detail::h0_forms(3, to_long(S.d), pts, {});
}

inline Int h0_surface(SurfaceConfig cfg, const Surface4Class& S) {
  SurfaceYClass y;
  y.d = S.d;
  y.m = S.m;
  return h0_surface(cfg, y);
}

/// Dimension drop probe: the largest m such that imposing vanishing of order
/// m along the transversal L_alpha leaves h^0(D) unchanged.
inline Int generic_vanishing_order(const DivisorClassM& D, Alpha a) {
  const Int h = h0_p3(D);
  if (h <= 0) throw std::invalid_argument("generic_vanishing_order: empty section space");
  std::vector<detail::PointCondition> pts;
  for (int i = 1; i <= 5; ++i) {
    const long o = to_long(clamp0(D.m[i - 1]));
    if (o > 0) pts.push_back({space_point(i), o});
  }
  auto lines = detail::p3_line_conditions(D);
  const auto span = transversal_span(a);
  lines.push_back({span.first, span.second, 0});
  for (long m = 1; m <= to_long(D.d) + 1; ++m) {
    lines.back().order = m;
    if (detail::h0_forms(4, to_long(D.d), pts, lines) < h) return m - 1;
  }
  throw std::logic_error("generic_vanishing_order: no dimension drop");  // cannot happen
}

// ---------------------------------------------------------------------------
// distinguished monomials

struct Monomial {
  std::array<long long, 40> e{};

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

inline DivisorClassM monomial_class(const Monomial& m) {
  DivisorClassM c;
  const auto& gens = all_generators();
  for (int g = 0; g < 40; ++g)
    if (m.e[g] != 0) c += Int(m.e[g]) * generator_class(gens[g]);
  return c;
}

inline std::string monomial_name(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  const auto& gens = all_generators();
  for (int g = 0; g < 40; ++g) {
    if (m.e[g] == 0) continue;
    if (!first) os << "*";
    os << generator_name(gens[g]);
    if (m.e[g] != 1) os << "^" << m.e[g];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

/// All exponent assignments over the forty generators whose class equals D.
/// Plane and quadric exponents are enumerated subject to the degree
/// constraint; the exceptional exponents are then forced by the class
/// equation and kept when nonnegative.
inline std::vector<Monomial> enumerate_monomials(const DivisorClassM& D) {
  std::vector<Monomial> out;
  if (D.d < 0) return out;
  const long d = to_long(D.d);

  // incidence tables over the fixed generator order
  static const auto tables = [] {
    struct T {
      std::array<std::array<int, 5>, 10> plane_pt{};   // triple t contains point i
      std::array<std::array<int, 10>, 10> plane_pr{};  // triple t contains pair p
      std::array<std::array<int, 10>, 15> kv_pr{};     // kv k crosses pair p
    } t;
    const auto& gens = all_generators();
    for (int g = 15; g < 25; ++g) {
      const auto& T3 = gens[g].idx;
      for (int a = 0; a < 3; ++a) t.plane_pt[g - 15][T3[a] - 1] = 1;
      t.plane_pr[g - 15][pair5_index(T3[0], T3[1])] = 1;
      t.plane_pr[g - 15][pair5_index(T3[0], T3[2])] = 1;
      t.plane_pr[g - 15][pair5_index(T3[1], T3[2])] = 1;
    }
    for (int g = 25; g < 40; ++g) {
      const auto& K = gens[g].idx;
      t.kv_pr[g - 25][pair5_index(K[0], K[2])] = 1;
      t.kv_pr[g - 25][pair5_index(K[0], K[3])] = 1;
      t.kv_pr[g - 25][pair5_index(K[1], K[2])] = 1;
      t.kv_pr[g - 25][pair5_index(K[1], K[3])] = 1;
    }
    return t;
  }();

  std::array<long long, 15> nk{};
  std::array<long long, 10> nt{};

  auto emit = [&] {
    Monomial m;
    // forced exceptional exponents
    long long kv_total = 0;
    for (int k = 0; k < 15; ++k) kv_total += nk[k];
    for (int i = 0; i < 5; ++i) {
      long long cnt = kv_total;
      for (int t = 0; t < 10; ++t) cnt += nt[t] * tables.plane_pt[t][i];
      const Int need = Int(cnt) - D.m[i];
      if (need < 0) return;
      m.e[i] = to_long(need);
    }
    for (int p = 0; p < 10; ++p) {
      long long cnt = 0;
      for (int t = 0; t < 10; ++t) cnt += nt[t] * tables.plane_pr[t][p];
      for (int k = 0; k < 15; ++k) cnt += nk[k] * tables.kv_pr[k][p];
      const Int need = Int(cnt) - D.mline[p];
      if (need < 0) return;
      m.e[5 + p] = to_long(need);
    }
    for (int t = 0; t < 10; ++t) m.e[15 + t] = nt[t];
    for (int k = 0; k < 15; ++k) m.e[25 + k] = nk[k];
    out.push_back(m);
  };

  // enumerate compositions: quadric exponents of weight 2, then planes
  auto planes = [&](auto&& self, int slot, long rem) -> void {
    if (slot == 9) {
      nt[9] = rem;
      emit();
      nt[9] = 0;
      return;
    }
    for (long v = 0; v <= rem; ++v) {
      nt[slot] = v;
      self(self, slot + 1, rem - v);
    }
    nt[slot] = 0;
  };
  auto quads = [&](auto&& self, int slot, long rem) -> void {
    if (slot == 15) {
      planes(planes, 0, rem);
      return;
    }
    for (long v = 0; 2 * v <= rem; ++v) {
      nk[slot] = v;
      self(self, slot + 1, rem - 2 * v);
    }
    nk[slot] = 0;
  };
  quads(quads, 0, d);
  return out;
}

// ---------------------------------------------------------------------------
// concrete section polynomials

namespace detail {

inline PolyForm solve_unique_form(long degree, const std::vector<SpacePt>& through,
                                  const std::vector<std::array<SpacePt, 2>>& lines) {
  const auto basis = monomials_of_degree(4, degree);
  IntMat rows;
  for (const auto& p : through) append_jet_rows(rows, basis, 4, p, 1);
  for (const auto& l : lines) {
    for (long t = 0; t <= degree; ++t) {
      SpacePt pt;
      for (int v = 0; v < 4; ++v) pt[v] = l[0][v] + Int(t) * l[1][v];
      append_jet_rows(rows, basis, 4, pt, 1);
    }
  }
  const auto ker = kernel_int(rows, basis.size());
  if (ker.size() != 1) throw std::logic_error("solve_unique_form: section not unique");
  PolyForm f;
  f.nvars = 4;
  f.degree = degree;
  for (std::size_t c = 0; c < basis.size(); ++c) f.add_term(basis[c], ker[0][c]);
  return poly_normalize(f);
}

inline const PolyForm& plane_form(int t_index) {
  static const std::array<PolyForm, 10> forms = [] {
    std::array<PolyForm, 10> out;
    const auto& gens = all_generators();
    for (int t = 0; t < 10; ++t) {
      const auto& T = gens[15 + t].idx;
      out[t] = solve_unique_form(1, {space_point(T[0]), space_point(T[1]), space_point(T[2])}, {});
    }
    return out;
  }();
  return forms[t_index];
}

inline const PolyForm& kv_quadric(int k_index) {
  static const std::array<PolyForm, 15> forms = [] {
    std::array<PolyForm, 15> out;
    const auto& gens = all_generators();
    for (int k = 0; k < 15; ++k) {
      const auto& K = gens[25 + k].idx;
      std::vector<SpacePt> pts;
      for (int i = 1; i <= 5; ++i) pts.push_back(space_point(i));
      std::vector<std::array<SpacePt, 2>> lines = {
          {space_point(K[0]), space_point(K[2])},
          {space_point(K[0]), space_point(K[3])},
          {space_point(K[1]), space_point(K[2])},
          {space_point(K[1]), space_point(K[3])}};
      out[k] = solve_unique_form(2, pts, lines);
    }
    return out;
  }();
  return forms[k_index];
}

}  // namespace detail

/// Product of the concrete forms: planes contribute their linear form, the
/// quadrics their unique section, exceptional generators the constant 1.
inline PolyForm monomial_to_poly(const Monomial& m) {
  PolyForm p = poly_const_one(4);
  for (int t = 0; t < 10; ++t)
    for (long long k = 0; k < m.e[15 + t]; ++k) p = poly_mul(p, detail::plane_form(t));
  for (int q = 0; q < 15; ++q)
    for (long long k = 0; k < m.e[25 + q]; ++k) p = poly_mul(p, detail::kv_quadric(q));
  return p;
}

/// Checks that the concrete polynomial vanishes to the class-prescribed
/// orders at the five points and along the ten lines.
inline void assert_monomial_respects_class(const Monomial& m) {
  const DivisorClassM c = monomial_class(m);
  const PolyForm p = monomial_to_poly(m);
  if (p.degree != to_long(c.d)) throw std::logic_error("monomial poly degree mismatch");
  const auto basis = monomials_of_degree(4, p.degree);
  IntMat rows;
  for (int i = 1; i <= 5; ++i)
    detail::append_jet_rows(rows, basis, 4, space_point(i), to_long(clamp0(c.m[i - 1])));
  for (const auto& pr : pairs5()) {
    const long o = to_long(clamp0(c.at_pair(pr[0], pr[1])));
    for (long t = 0; t <= p.degree && o > 0; ++t) {
      SpacePt pt;
      for (int v = 0; v < 4; ++v) pt[v] = space_point(pr[0])[v] + Int(t) * space_point(pr[1])[v];
      detail::append_jet_rows(rows, basis, 4, pt, o);
    }
  }
  const IntRow pv = poly_int_row(p, basis);
  for (const auto& row : rows) {
    Int dotv = 0;
    for (std::size_t i = 0; i < row.size(); ++i) dotv += row[i] * pv[i];
    if (dotv != 0) throw std::logic_error("monomial poly misses a vanishing condition");
  }
}

/// Rank of the span of the given forms (all of one degree).
inline long span_rank(const std::vector<PolyForm>& polys) {
  if (polys.empty()) return 0;
  const int nv = polys[0].nvars;
  const long deg = polys[0].degree;
  for (const auto& p : polys)
    if (p.nvars != nv || p.degree != deg) throw std::invalid_argument("span_rank: mixed degrees");
  const auto basis = monomials_of_degree(nv, deg);
  IntSpan span(basis.size());
  for (const auto& p : polys) span.insert(poly_int_row(p, basis));
  return span.rank();
}

// ---------------------------------------------------------------------------
// whole-theorem check for one class

struct VerifyReport {
  DivisorClassM cls;
  Int h0{};
  long n_monomials{};
  long rank{};
  bool pass{};
};

/// Graded-piece generation check: the distinguished monomials of class D
/// must span a space of rank exactly h^0(D).
inline VerifyReport verify_theorem(const DivisorClassM& D) {
  VerifyReport rep;
  rep.cls = D;
  rep.h0 = h0_p3(D);
  const auto monos = enumerate_monomials(D);
  rep.n_monomials = static_cast<long>(monos.size());
  if (!monos.empty()) assert_monomial_respects_class(monos.front());
  const long cap = to_long(rep.h0);
  if (!monos.empty() && D.d >= 0) {
    const auto basis = monomials_of_degree(4, to_long(D.d));
    IntSpan span(basis.size());
    for (const auto& m : monos) {
      span.insert(poly_int_row(monomial_to_poly(m), basis));
      if (span.rank() == cap) break;  // rank <= h0 by construction
    }
    rep.rank = span.rank();
  }
  rep.pass = (Int(rep.rank) == rep.h0);
  return rep;
}

}  // namespace m06cox
