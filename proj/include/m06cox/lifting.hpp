// Distinguished-section exponent data on the fifth exceptional plane and on
// the seven-point surface Y, the straightforward-lift criteria, the exact
// rewriting engines that repair violating monomials, and the outer
// reduction loop over generator directions.
#pragma once

#include "m06cox/oracle.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

namespace m06cox {

// ---------------------------------------------------------------------------
// exponent data

/// Monomial exponents on the fifth exceptional plane: a_ij on the six line
/// sections, l_i on the four exceptional sections.
struct ExpE5 {
  std::array<Int, 6> a{};  // pairs4 order
  std::array<Int, 4> l{};

  Int& a_at(int i, int j) { return a[pair4_index(i, j)]; }
  const Int& a_at(int i, int j) const { return a[pair4_index(i, j)]; }

  friend bool operator==(const ExpE5& x, const ExpE5& y) { return x.a == y.a && x.l == y.l; }
  friend bool operator<(const ExpE5& x, const ExpE5& y) {
    return std::tie(x.a, x.l) < std::tie(y.a, y.l);
  }
};

/// Monomial exponents on Y: a_ij on the proper-transform lines, l_i on the
/// point exceptionals, c = (c_x, c_y, c_z) on the diagonal lines
/// (s_yz, s_xz, s_xy respectively), lxyz on the diagonal exceptionals.
struct ExpY {
  std::array<Int, 6> a{};
  std::array<Int, 4> l{};
  std::array<Int, 3> c{};
  std::array<Int, 3> lxyz{};

  Int& a_at(int i, int j) { return a[pair4_index(i, j)]; }
  const Int& a_at(int i, int j) const { return a[pair4_index(i, j)]; }
  Int& c_of(Alpha al) { return c[static_cast<int>(al)]; }
  const Int& c_of(Alpha al) const { return c[static_cast<int>(al)]; }
  Int& l_of(Alpha al) { return lxyz[static_cast<int>(al)]; }
  const Int& l_of(Alpha al) const { return lxyz[static_cast<int>(al)]; }

  friend bool operator==(const ExpY& x, const ExpY& y) {
    return x.a == y.a && x.l == y.l && x.c == y.c && x.lxyz == y.lxyz;
  }
  friend bool operator<(const ExpY& x, const ExpY& y) {
    return std::tie(x.a, x.l, x.c, x.lxyz) < std::tie(y.a, y.l, y.c, y.lxyz);
  }
};

inline bool exp_nonneg(const ExpE5& e) {
  for (const Int& v : e.a)
    if (v < 0) return false;
  for (const Int& v : e.l)
    if (v < 0) return false;
  return true;
}

inline bool exp_nonneg(const ExpY& e) {
  for (const Int& v : e.a)
    if (v < 0) return false;
  for (const Int& v : e.l)
    if (v < 0) return false;
  for (const Int& v : e.c)
    if (v < 0) return false;
  for (const Int& v : e.lxyz)
    if (v < 0) return false;
  return true;
}

/// Membership of the monomial in H0 of the restriction of D to the fifth
/// plane: sum a_ij = D.e5 and sum_j a_ij - l_i = D.e_i5.
inline bool is_member_e5(const DivisorClassM& D, const ExpE5& e) {
  if (!exp_nonneg(e)) return false;
  Int total = 0;
  for (const Int& v : e.a) total += v;
  if (total != D.m[4]) return false;
  for (int i = 1; i <= 4; ++i) {
    Int row = 0;
    for (int j = 1; j <= 4; ++j)
      if (j != i) row += e.a_at(i, j);
    if (row - e.l[i - 1] != D.at_pair(i, 5)) return false;
  }
  return true;
}

/// Membership on Y: the plane and point equations plus, for each label,
/// a_ij + a_kl + sum_{beta != chi(ij)} c_beta - l_chi(ij) = m_chi(ij).
inline bool is_member_y(const DivisorClassM& D, const ExpY& e) {
  if (!exp_nonneg(e)) return false;
  Int total = e.c[0] + e.c[1] + e.c[2];
  for (const Int& v : e.a) total += v;
  if (total != D.m[4]) return false;
  for (int i = 1; i <= 4; ++i) {
    Int row = 0;
    for (int j = 1; j <= 4; ++j)
      if (j != i) row += e.a_at(i, j);
    if (row - e.l[i - 1] != D.at_pair(i, 5)) return false;
  }
  for (Alpha al : {Alpha::x, Alpha::y, Alpha::z}) {
    const auto f = chi_fibre(al);
    Int lhs = e.a_at(f[0][0], f[0][1]) + e.a_at(f[1][0], f[1][1]) - e.l_of(al);
    for (Alpha b : {Alpha::x, Alpha::y, Alpha::z})
      if (b != al) lhs += e.c_of(b);
    if (lhs != m_alpha(D, al)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// section expressions (exact linear combinations of monomials)

template <class E>
struct SectionExpr {
  struct Term {
    Rat coeff;
    E exp;
  };
  std::vector<Term> terms;
};

using SectionExprE5 = SectionExpr<ExpE5>;
using SectionExprY = SectionExpr<ExpY>;

/// Concrete polynomial of a monomial on the plane: the line sections
/// contribute their linear forms, exceptional sections the constant 1.
inline PolyForm exp_poly(const ExpE5& e) {
  PolyForm p = poly_const_one(3);
  for (int t = 0; t < 6; ++t) {
    const auto& pr = pairs4()[t];
    for (Int k = 0; k < e.a[t]; ++k) p = poly_mul(p, line_q(pr[0], pr[1]));
  }
  return p;
}

inline PolyForm exp_poly(const ExpY& e) {
  PolyForm p = poly_const_one(3);
  for (int t = 0; t < 6; ++t) {
    const auto& pr = pairs4()[t];
    for (Int k = 0; k < e.a[t]; ++k) p = poly_mul(p, line_q(pr[0], pr[1]));
  }
  for (Int k = 0; k < e.c_of(Alpha::x); ++k) p = poly_mul(p, line_diag(Alpha::y, Alpha::z));
  for (Int k = 0; k < e.c_of(Alpha::y); ++k) p = poly_mul(p, line_diag(Alpha::x, Alpha::z));
  for (Int k = 0; k < e.c_of(Alpha::z); ++k) p = poly_mul(p, line_diag(Alpha::x, Alpha::y));
  return p;
}

template <class E>
inline PolyForm expr_poly(const SectionExpr<E>& s, long degree) {
  PolyForm total;
  total.nvars = 3;
  total.degree = degree;
  for (const auto& t : s.terms) total = poly_add(total, poly_scale(exp_poly(t.exp), t.coeff));
  return total;
}

// ---------------------------------------------------------------------------
// case split and criteria

enum class CaseSplit { CaseI, CaseII };

/// Case I when D pairs nonnegatively against all three transversals.
inline CaseSplit case_split(const DivisorClassM& D) {
  for (Alpha a : {Alpha::x, Alpha::y, Alpha::z})
    if (dot(D, curve_L(a)) < 0) return CaseSplit::CaseII;
  return CaseSplit::CaseI;
}

struct CriterionReport {
  bool ok{true};
  std::vector<Slack> slacks;
};

namespace detail {
inline Int rhs_sep(const DivisorClassM& D, int k, int l) {
  return dot(D, curve_C_sep(k, l)) - D.m[4];  // D.(C_{k;l} - e5)
}
}  // namespace detail

/// Straightforward lift test on the fifth plane: a_ij <= D.(C_{k;l} - e5)
/// for every assignment {i,j,k,l} = {1,2,3,4}.
inline CriterionReport lift_I_criterion(const DivisorClassM& D, const ExpE5& e) {
  if (!is_member_e5(D, e)) throw std::invalid_argument("lift_I_criterion: exponents not a section of the restriction");
  CriterionReport rep;
  for (const auto& p : pairs4()) {
    const auto kl = complement4(p[0], p[1]);
    for (const auto& ord : {std::array<int, 2>{kl[0], kl[1]}, std::array<int, 2>{kl[1], kl[0]}}) {
      const Int s = detail::rhs_sep(D, ord[0], ord[1]) - e.a_at(p[0], p[1]);
      rep.slacks.push_back({"a" + std::to_string(p[0]) + std::to_string(p[1]) + "<=D.(C" +
                                std::to_string(ord[0]) + ";" + std::to_string(ord[1]) + "-e5)",
                            s});
      if (s < 0) rep.ok = false;
    }
  }
  return rep;
}

struct LiftResult {
  DivisorClassM dprime;
  XClass delta;
  Monomial monomial;
};

/// Naive lift through the retraction: D' = sum a_ij L_ij5 + sum l_i E_i5;
/// the difference lives on X.
inline LiftResult delta_I(const DivisorClassM& D, const ExpE5& e) {
  if (!is_member_e5(D, e)) throw std::invalid_argument("delta_I: exponents not a section of the restriction");
  LiftResult r;
  for (const auto& p : pairs4()) {
    const Int& k = e.a_at(p[0], p[1]);
    if (k != 0) {
      r.dprime += k * generator_class(gen_plane(p[0], p[1], 5));
      r.monomial.e[generator_index(gen_plane(p[0], p[1], 5))] = to_long(k);
    }
  }
  for (int i = 1; i <= 4; ++i) {
    if (e.l[i - 1] != 0) {
      r.dprime += e.l[i - 1] * generator_class(gen_line(i, 5));
      r.monomial.e[generator_index(gen_line(i, 5))] = to_long(e.l[i - 1]);
    }
  }
  r.delta = to_xclass(D - r.dprime);  // throws when a fifth-point coefficient survives
  return r;
}

/// Straightforward lift test on Y, families (i)-(v).
inline CriterionReport lift_II_criterion(const DivisorClassM& D, const ExpY& e) {
  if (!is_member_y(D, e)) throw std::invalid_argument("lift_II_criterion: exponents not a section of the restriction");
  CriterionReport rep;
  auto push = [&rep](std::string n, Int v) {
    if (v < 0) rep.ok = false;
    rep.slacks.push_back({std::move(n), std::move(v)});
  };
  for (const auto& p : pairs4()) {
    const std::string ij = std::to_string(p[0]) + std::to_string(p[1]);
    const Alpha al = chi(p[0], p[1]);
    const Int lhs = e.c_of(al) - e.a_at(p[0], p[1]);
    push("(i)c-a" + ij, D.d - D.m[4] - D.at_pair(p[0], p[1]) - lhs);
  }
  for (Alpha al : {Alpha::x, Alpha::y, Alpha::z}) {
    push(std::string("(ii)") + alpha_name(al),
         m_alpha(D, al) + dot(D, curve_L(al)) - (e.c_of(al) - e.l_of(al)));
  }
  for (const auto& p : pairs4()) {
    const auto kl = complement4(p[0], p[1]);
    const std::string ij = std::to_string(p[0]) + std::to_string(p[1]);
    const Alpha al = chi(p[0], p[1]);
    push("(iii)c-a" + ij,
         dot(D, curve_C_pair(kl[0], kl[1])) - D.m[4] - (e.c_of(al) - e.a_at(p[0], p[1])));
  }
  for (const auto& p : pairs4()) {
    const auto kl = complement4(p[0], p[1]);
    const Alpha al = chi(p[0], p[1]);
    Int lhs = e.a_at(p[0], p[1]);
    for (Alpha b : {Alpha::x, Alpha::y, Alpha::z})
      if (b != al) lhs += e.c_of(b);
    for (const auto& ord : {std::array<int, 2>{kl[0], kl[1]}, std::array<int, 2>{kl[1], kl[0]}}) {
      push("(iv)a" + std::to_string(p[0]) + std::to_string(p[1]) + ":C" + std::to_string(ord[0]) +
               ";" + std::to_string(ord[1]),
           detail::rhs_sep(D, ord[0], ord[1]) - lhs);
    }
  }
  push("(v)sum c<=D.C", dot(D, curve_C()) - (e.c[0] + e.c[1] + e.c[2]));
  return rep;
}

/// Naive lift from Y: quadric sections pull back the diagonal lines.
inline LiftResult delta_II(const DivisorClassM& D, const ExpY& e) {
  if (!is_member_y(D, e)) throw std::invalid_argument("delta_II: exponents not a section of the restriction");
  LiftResult r;
  for (const auto& p : pairs4()) {
    const Int& k = e.a_at(p[0], p[1]);
    if (k != 0) {
      r.dprime += k * generator_class(gen_plane(p[0], p[1], 5));
      r.monomial.e[generator_index(gen_plane(p[0], p[1], 5))] = to_long(k);
    }
  }
  for (int i = 1; i <= 4; ++i) {
    if (e.l[i - 1] != 0) {
      r.dprime += e.l[i - 1] * generator_class(gen_line(i, 5));
      r.monomial.e[generator_index(gen_line(i, 5))] = to_long(e.l[i - 1]);
    }
  }
  const std::array<GeneratorId, 3> kv_of{gen_kv(1, 3, 2, 4), gen_kv(1, 4, 2, 3), gen_kv(1, 2, 3, 4)};
  for (Alpha al : {Alpha::x, Alpha::y, Alpha::z}) {
    const Int& k = e.c_of(al);
    if (k != 0) {
      const GeneratorId& g = kv_of[static_cast<int>(al)];
      r.dprime += k * generator_class(g);
      r.monomial.e[generator_index(g)] = to_long(k);
    }
  }
  // every label has exactly as many exceptional diagonal sections available
  // as the lift consumes
  for (Alpha al : {Alpha::x, Alpha::y, Alpha::z}) {
    const auto f = chi_fibre(al);
    Int need = e.a_at(f[0][0], f[0][1]) + e.a_at(f[1][0], f[1][1]);
    for (Alpha b : {Alpha::x, Alpha::y, Alpha::z})
      if (b != al) need += e.c_of(b);
    if (m_alpha(D, al) + e.l_of(al) != need)
      throw std::logic_error("delta_II: diagonal section budget violated");
  }
  r.delta = to_xclass(D - r.dprime);
  return r;
}

// ---------------------------------------------------------------------------
// classification of Y-monomials

struct CaseClass {
  enum class Kind { A, B, C, Reducible } kind{Kind::A};
  Alpha alpha{};  // Reducible: the label with l > 0; C: the active label
  Alpha beta{};   // Reducible: the label with c > 0
};

inline CaseClass classify_case(const ExpY& e) {
  for (Alpha a : {Alpha::x, Alpha::y, Alpha::z}) {
    if (e.l_of(a) <= 0) continue;
    for (Alpha b : {Alpha::x, Alpha::y, Alpha::z}) {
      if (b == a || e.c_of(b) <= 0) continue;
      return {CaseClass::Kind::Reducible, a, b};
    }
  }
  const Int csum = e.c[0] + e.c[1] + e.c[2];
  if (csum == 0) return {CaseClass::Kind::A, Alpha::x, Alpha::x};
  const Int lsum = e.lxyz[0] + e.lxyz[1] + e.lxyz[2];
  if (lsum == 0) return {CaseClass::Kind::B, Alpha::x, Alpha::x};
  for (Alpha a : {Alpha::x, Alpha::y, Alpha::z})
    if (e.c_of(a) > 0) return {CaseClass::Kind::C, a, a};
  throw std::logic_error("classify_case: unreachable");
}

// ---------------------------------------------------------------------------
// rewriting engines

namespace detail {

template <class E>
struct WorkItem {
  Rat coeff;
  E exp;
  long depth;
};

template <class E>
inline void merge_term(std::vector<typename SectionExpr<E>::Term>& out, const Rat& c, const E& e) {
  for (auto& t : out) {
    if (t.exp == e) {
      t.coeff += c;
      return;
    }
  }
  out.push_back({c, e});
}

/// Worst violating pair of the case-A / case-I inequality, or -1.
template <class E>
inline int worst_pair(const E& e, const std::array<Int, 6>& bound) {
  int best = -1;
  Int worst = 0;
  for (int t = 0; t < 6; ++t) {
    const Int excess = e.a[t] - bound[t];
    if (excess > worst) {
      worst = excess;
      best = t;
    }
  }
  return best;
}

inline std::array<Int, 6> sep_bounds(const DivisorClassM& D) {
  std::array<Int, 6> b{};
  for (int t = 0; t < 6; ++t) {
    const auto& p = pairs4()[t];
    const auto kl = complement4(p[0], p[1]);
    b[t] = int_min(rhs_sep(D, kl[0], kl[1]), rhs_sep(D, kl[1], kl[0]));
  }
  return b;
}

}  // namespace detail

/// Rewrites a monomial on the fifth plane as an exact linear combination of
/// monomials satisfying the straightforward-lift criterion.  The two moves
/// exchange a line-point or line-line product inside a one-dimensional
/// pencil; coefficients are solved from the fixed coordinates.
inline SectionExprE5 rewrite_I(const DivisorClassM& D, const ExpE5& e) {
  if (!is_member_e5(D, e)) throw std::invalid_argument("rewrite_I: exponents not a section of the restriction");
  if (!passes_assumption(D)) throw std::invalid_argument("rewrite_I: class fails the restriction inequalities");
  if (case_split(D) != CaseSplit::CaseI) throw std::invalid_argument("rewrite_I: class pairs negatively with a transversal");

  Int weight = 0;
  for (const Int& v : e.a) weight += v;
  for (const Int& v : e.l) weight += v;
  const long max_depth = to_long(weight) * 6 + 1;

  const auto bound = detail::sep_bounds(D);
  std::deque<detail::WorkItem<ExpE5>> queue{{Rat(1), e, 0}};
  SectionExprE5 done;
  while (!queue.empty()) {
    auto item = queue.front();
    queue.pop_front();
    const int t = detail::worst_pair(item.exp, bound);
    if (t < 0) {
      detail::merge_term<ExpE5>(done.terms, item.coeff, item.exp);
      continue;
    }
    if (item.depth >= max_depth) throw std::runtime_error("rewrite_I: loop variant exhausted");
    const auto& p = pairs4()[t];
    const auto kl = complement4(p[0], p[1]);
    ExpE5 cur = item.exp;
    if (cur.l[p[0] - 1] > 0 || cur.l[p[1] - 1] > 0) {
      // line-point move in the pencil through the other point of the pair
      const int i = cur.l[p[0] - 1] > 0 ? p[0] : p[1];
      const int j = i == p[0] ? p[1] : p[0];
      const auto [lam, mu] = step1_coeffs(i, j);
      cur.a_at(i, j) -= 1;
      cur.l[i - 1] -= 1;
      ExpE5 e1 = cur, e2 = cur;
      e1.a_at(j, kl[0]) += 1;
      e1.l[kl[0] - 1] += 1;
      e2.a_at(j, kl[1]) += 1;
      e2.l[kl[1] - 1] += 1;
      if (!is_member_e5(D, e1) || !is_member_e5(D, e2))
        throw std::logic_error("rewrite_I: move broke membership");
      queue.push_back({item.coeff * lam, e1, item.depth + 1});
      queue.push_back({item.coeff * mu, e2, item.depth + 1});
    } else if (cur.a_at(kl[0], kl[1]) > 0) {
      // line-line move in the conic pencil
      const auto [lam, mu] = step2_coeffs(p[0], p[1]);
      cur.a_at(p[0], p[1]) -= 1;
      cur.a_at(kl[0], kl[1]) -= 1;
      ExpE5 e1 = cur, e2 = cur;
      e1.a_at(p[0], kl[0]) += 1;
      e1.a_at(p[1], kl[1]) += 1;
      e2.a_at(p[0], kl[1]) += 1;
      e2.a_at(p[1], kl[0]) += 1;
      if (!is_member_e5(D, e1) || !is_member_e5(D, e2))
        throw std::logic_error("rewrite_I: move broke membership");
      queue.push_back({item.coeff * lam, e1, item.depth + 1});
      queue.push_back({item.coeff * mu, e2, item.depth + 1});
    } else {
      // a violating exponent always leaves one of the two moves available
      throw std::logic_error("rewrite_I: no move available for a violating pair");
    }
  }
  done.terms.erase(std::remove_if(done.terms.begin(), done.terms.end(),
                                  [](const auto& t) { return t.coeff == 0; }),
                   done.terms.end());

  // exact polynomial identity with the input
  const PolyForm in = exp_poly(e);
  const PolyForm out = expr_poly(done, in.degree);
  if (!(in == out)) throw std::logic_error("rewrite_I: output is not the input section");
  for (const auto& t : done.terms)
    if (!lift_I_criterion(D, t.exp).ok) throw std::logic_error("rewrite_I: term still violates");
  return done;
}

/// Rewrites a Y-monomial into straightforward-lift form.  Pipeline:
/// exhaust the diagonal replacements, then the all-line case runs the plane
/// algorithm, and the single-diagonal case runs the conic replacements,
/// re-classifying whenever the active exponents reach zero.
inline SectionExprY rewrite_II(const DivisorClassM& D, const ExpY& e) {
  if (!is_member_y(D, e)) throw std::invalid_argument("rewrite_II: exponents not a section of the restriction");
  if (!passes_assumption(D)) throw std::invalid_argument("rewrite_II: class fails the restriction inequalities");
  if (!normalize(D).first.is_identity()) throw std::invalid_argument("rewrite_II: class not normalized");

  Int weight = 0;
  for (const Int& v : e.a) weight += v;
  for (const Int& v : e.l) weight += v;
  for (const Int& v : e.c) weight += v;
  for (const Int& v : e.lxyz) weight += v;
  const long max_depth = to_long(weight) * 6 + 3;

  const auto bound = detail::sep_bounds(D);
  // case-C bound: a_ij <= D.(C_ij - e5) + D.(2l - e5 - off-fibre pairs)
  auto caseC_bound = [&D](int i, int j) {
    const Alpha g = chi(i, j);
    CurveClassM extra;
    extra.cl = 2;
    extra.ce[4] = -1;
    for (const auto& p : pairs4())
      if (chi(p[0], p[1]) != g) extra.at_pair(p[0], p[1]) -= 1;
    return dot(D, curve_C_pair(i, j)) - D.m[4] + dot(D, extra);
  };

  std::deque<detail::WorkItem<ExpY>> queue{{Rat(1), e, 0}};
  SectionExprY done;
  auto push2 = [&queue, &D](const Rat& c1, const ExpY& e1, const Rat& c2, const ExpY& e2, long depth) {
    if (!is_member_y(D, e1) || !is_member_y(D, e2))
      throw std::logic_error("rewrite_II: move broke membership");
    queue.push_back({c1, e1, depth});
    queue.push_back({c2, e2, depth});
  };

  while (!queue.empty()) {
    auto item = queue.front();
    queue.pop_front();
    ExpY cur = item.exp;
    const CaseClass cls = classify_case(cur);

    if (cls.kind == CaseClass::Kind::Reducible) {
      if (item.depth >= max_depth) throw std::runtime_error("rewrite_II: loop variant exhausted");
      const Alpha alpha = cls.alpha, beta = cls.beta;
      Alpha rho = Alpha::x;
      for (Alpha g : {Alpha::x, Alpha::y, Alpha::z})
        if (g != beta && g != alpha) rho = g;
      const auto f = chi_fibre(rho);
      const auto [lam, mu] = reducible_coeffs(alpha, rho);
      cur.c_of(beta) -= 1;
      cur.l_of(alpha) -= 1;
      ExpY e1 = cur, e2 = cur;
      e1.a_at(f[0][0], f[0][1]) += 1;
      e1.l[f[0][0] - 1] += 1;
      e1.l[f[0][1] - 1] += 1;
      e2.a_at(f[1][0], f[1][1]) += 1;
      e2.l[f[1][0] - 1] += 1;
      e2.l[f[1][1] - 1] += 1;
      push2(item.coeff * lam, e1, item.coeff * mu, e2, item.depth + 1);
      continue;
    }

    if (cls.kind == CaseClass::Kind::B)
      throw std::logic_error("rewrite_II: reached the impossible all-diagonal case");

    if (cls.kind == CaseClass::Kind::A) {
      const int t = detail::worst_pair(cur, bound);
      if (t < 0) {
        detail::merge_term<ExpY>(done.terms, item.coeff, cur);
        continue;
      }
      if (item.depth >= max_depth) throw std::runtime_error("rewrite_II: loop variant exhausted");
      const auto& p = pairs4()[t];
      const auto kl = complement4(p[0], p[1]);
      const Alpha g = chi(p[0], p[1]);
      if (cur.l[p[0] - 1] > 0 || cur.l[p[1] - 1] > 0) {
        const int i = cur.l[p[0] - 1] > 0 ? p[0] : p[1];
        const int j = i == p[0] ? p[1] : p[0];
        if (cur.l_of(g) < 1) throw std::logic_error("rewrite_II: missing diagonal section for move");
        const auto [lam, mu] = step1_coeffs(i, j);
        cur.a_at(i, j) -= 1;
        cur.l[i - 1] -= 1;
        cur.l_of(g) -= 1;
        ExpY e1 = cur, e2 = cur;
        e1.a_at(j, kl[0]) += 1;
        e1.l[kl[0] - 1] += 1;
        e1.l_of(chi(j, kl[0])) += 1;
        e2.a_at(j, kl[1]) += 1;
        e2.l[kl[1] - 1] += 1;
        e2.l_of(chi(j, kl[1])) += 1;
        push2(item.coeff * lam, e1, item.coeff * mu, e2, item.depth + 1);
      } else if (cur.a_at(kl[0], kl[1]) > 0) {
        if (cur.l_of(g) < 2) throw std::logic_error("rewrite_II: missing diagonal section for move");
        const auto [lam, mu] = step2_coeffs(p[0], p[1]);
        cur.a_at(p[0], p[1]) -= 1;
        cur.a_at(kl[0], kl[1]) -= 1;
        cur.l_of(g) -= 2;
        ExpY e1 = cur, e2 = cur;
        e1.a_at(p[0], kl[0]) += 1;
        e1.a_at(p[1], kl[1]) += 1;
        e1.l_of(chi(p[0], kl[0])) += 2;
        e2.a_at(p[0], kl[1]) += 1;
        e2.a_at(p[1], kl[0]) += 1;
        e2.l_of(chi(p[0], kl[1])) += 2;
        push2(item.coeff * lam, e1, item.coeff * mu, e2, item.depth + 1);
      } else {
        throw std::logic_error("rewrite_II: no move available for a violating pair");
      }
      continue;
    }

    // Case C with active label gamma
    const Alpha gamma = cls.alpha;
    const auto fib = chi_fibre(gamma);
    int vi = 0, vj = 0;
    for (const auto& pr : fib) {
      const auto kl = complement4(pr[0], pr[1]);
      const Int b1 = caseC_bound(pr[0], pr[1]);
      const Int b2 = int_min(detail::rhs_sep(D, kl[0], kl[1]), detail::rhs_sep(D, kl[1], kl[0]));
      if (cur.a_at(pr[0], pr[1]) > int_min(b1, b2)) {
        vi = pr[0];
        vj = pr[1];
        break;
      }
    }
    if (vi == 0) {
      detail::merge_term<ExpY>(done.terms, item.coeff, cur);
      continue;
    }
    if (item.depth >= max_depth) throw std::runtime_error("rewrite_II: loop variant exhausted");
    if (cur.a_at(vi, vj) <= 0) throw std::logic_error("rewrite_II: violating exponent not positive");
    const auto kl = complement4(vi, vj);
    const auto [lam, mu] = caseC_coeffs(vi, vj);
    cur.a_at(vi, vj) -= 1;
    cur.c_of(gamma) -= 1;
    cur.l_of(gamma) -= 1;
    ExpY e1 = cur, e2 = cur;
    e1.a_at(vi, kl[0]) += 1;
    e1.a_at(vj, kl[0]) += 1;
    e1.l[kl[0] - 1] += 2;
    e2.a_at(vi, kl[1]) += 1;
    e2.a_at(vj, kl[1]) += 1;
    e2.l[kl[1] - 1] += 2;
    push2(item.coeff * lam, e1, item.coeff * mu, e2, item.depth + 1);
  }

  done.terms.erase(std::remove_if(done.terms.begin(), done.terms.end(),
                                  [](const auto& t) { return t.coeff == 0; }),
                   done.terms.end());
  const PolyForm in = exp_poly(e);
  const PolyForm out = expr_poly(done, in.degree);
  if (!(in == out)) throw std::logic_error("rewrite_II: output is not the input section");
  for (const auto& t : done.terms)
    if (!lift_II_criterion(D, t.exp).ok) throw std::logic_error("rewrite_II: term still violates");
  return done;
}

// ---------------------------------------------------------------------------
// the auxiliary inequality suite

/// Slack report for the inequalities relating the transversal multiplicities
/// to the separating curves; strict entries already subtract 1.
inline std::vector<Slack> inequality_suite(const DivisorClassM& D) {
  std::vector<Slack> out;
  auto push = [&out](std::string n, Int v) { out.push_back({std::move(n), std::move(v)}); };

  // -D.L_chi(kl) <= D.(C_{k;l} - e5)
  for (int k = 1; k <= 4; ++k)
    for (int l = 1; l <= 4; ++l) {
      if (k == l) continue;
      push("C" + std::to_string(k) + ";" + std::to_string(l) + "+L",
           detail::rhs_sep(D, k, l) + dot(D, curve_L(chi(k, l))));
    }

  // -(1/2) D.(sum of off-fibre transversals) <= min{d-m5-m_ij, 3d-sum m}
  for (const auto& p : pairs4()) {
    const Alpha g = chi(p[0], p[1]);
    Int lsum = 0;
    for (Alpha b : {Alpha::x, Alpha::y, Alpha::z})
      if (b != g) lsum += dot(D, curve_L(b));
    const std::string ij = std::to_string(p[0]) + std::to_string(p[1]);
    push("2(d-m5-m" + ij + ")+L.sum", 2 * (D.d - D.m[4] - D.at_pair(p[0], p[1])) + lsum);
    push("2(D.C)+L.sum(" + ij + ")", 2 * dot(D, curve_C()) + lsum);
  }

  // m_x + m_y + m_z <= D.e5, and strictly -D.(Lx+Ly+Lz) < D.e5 when D != 0
  {
    Int msum = 0, lsum = 0;
    for (Alpha b : {Alpha::x, Alpha::y, Alpha::z}) {
      msum += m_alpha(D, b);
      lsum += dot(D, curve_L(b));
    }
    push("sum m_a<=D.e5", D.m[4] - msum);
    if (!D.is_zero()) push("-D.(Lx+Ly+Lz)<D.e5 (strict)", D.m[4] + lsum - 1);
  }

  // D.(C_{k;l} + C_{v;w} - 2e5) >= D.(e5 - e_{u'5})
  {
    std::array<int, 4> perm{1, 2, 3, 4};
    std::sort(perm.begin(), perm.end());
    do {
      const int j = perm[1], k = perm[2], l = perm[3];
      for (int u : {k, l}) {
        const int up = (u == k) ? l : k;
        std::array<int, 2> vw{};
        int n = 0;
        for (int t : {j, k, l})
          if (t != u) vw[n++] = t;
        for (const auto& ord : {std::array<int, 2>{vw[0], vw[1]}, std::array<int, 2>{vw[1], vw[0]}}) {
          push("C" + std::to_string(k) + ";" + std::to_string(l) + "+C" + std::to_string(ord[0]) +
                   ";" + std::to_string(ord[1]) + ">=e5-e" + std::to_string(up) + "5",
               detail::rhs_sep(D, k, l) + detail::rhs_sep(D, ord[0], ord[1]) -
                   (D.m[4] - D.at_pair(up, 5)));
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// the outer reduction loop

/// h^0 of the restriction of D to one generator divisor, by the exact
/// surface oracles (the ruled case is a closed formula).
inline Int h0_restriction(const DivisorClassM& D, const GeneratorId& g) {
  switch (g.kind) {
    case GeneratorId::Kind::ExcPoint:
      return h0_surface(SurfaceConfig::Bl4, restrict_to_Ei(D, g.idx[0]));
    case GeneratorId::Kind::ExcLine:
      return h0_bidegree(restrict_to_Eij(D, g.idx[0], g.idx[1]));
    case GeneratorId::Kind::Plane:
      return h0_surface(SurfaceConfig::Bl4q, restrict_to_plane(D, g.idx[0], g.idx[1], g.idx[2]));
    case GeneratorId::Kind::KV:
      return h0_surface(SurfaceConfig::KV6, restrict_to_KV(D, g));
  }
  throw std::logic_error("h0_restriction: bad generator");
}

struct ReduceStep {
  GeneratorId gen;
  DivisorClassM after;
};

/// Strips generator directions with sectionless restrictions, then repeats
/// the renumber-and-subtract step in the fifth-point direction; the pairing
/// with the moving cubic strictly drops on every point subtraction and the
/// loop stops at zero or at negative pairing.
inline std::vector<ReduceStep> reduce_loop(DivisorClassM D) {
  std::vector<ReduceStep> trace;
  Int abs_sum = int_abs(D.d);
  for (const Int& v : D.m) abs_sum += int_abs(v);
  for (const Int& v : D.mline) abs_sum += int_abs(v);
  const long bound = to_long(int_max(dot(D, curve_C()), Int(0))) + 4 * to_long(abs_sum) + 50;

  while (!D.is_zero() && dot(D, curve_C()) >= 0) {
    if (static_cast<long>(trace.size()) > bound)
      throw std::runtime_error("reduce_loop: trace exceeded its bound");
    bool stripped = false;
    for (const GeneratorId& g : all_generators()) {
      if (h0_restriction(D, g) == 0) {
        const Int before = dot(D, curve_C());
        D -= generator_class(g);
        if (dot(D, curve_C()) > before) throw std::logic_error("reduce_loop: pairing increased");
        trace.push_back({g, D});
        stripped = true;
        break;
      }
    }
    if (stripped) continue;
    // every restriction has sections: renumber and subtract the point class
    const auto [sigma, Dn] = normalize(D);
    const int target = sigma.inverse()(5);
    const Int before = dot(D, curve_C());
    D -= generator_class(gen_point(target));
    if (!(dot(D, curve_C()) < before)) throw std::logic_error("reduce_loop: pairing did not drop");
    trace.push_back({gen_point(target), D});
    (void)Dn;
  }
  return trace;
}

}  // namespace m06cox
