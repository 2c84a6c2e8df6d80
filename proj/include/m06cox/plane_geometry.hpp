// Fixed coordinates for the plane configurations: the four projected points,
// the three diagonal points, the lines joining them, and exact pencil
// relations between products of line forms.  All relation coefficients are
// solved from the coordinates, never hard-coded.
#pragma once

#include "m06cox/lattice.hpp"
#include "m06cox/polynomials.hpp"

#include <utility>

namespace m06cox {

using PlanePt = std::array<Int, 3>;

/// q1=(1:0:0), q2=(0:1:0), q3=(0:0:1), q4=(1:1:1).
inline PlanePt plane_point(int i) {
  switch (i) {
    case 1: return {1, 0, 0};
    case 2: return {0, 1, 0};
    case 3: return {0, 0, 1};
    case 4: return {1, 1, 1};
  }
  throw std::invalid_argument("plane_point: index");
}

/// x = l13 /\ l24, y = l14 /\ l23, z = l12 /\ l34.
inline PlanePt diag_point(Alpha a) {
  switch (a) {
    case Alpha::x: return {1, 0, 1};
    case Alpha::y: return {0, 1, 1};
    case Alpha::z: return {1, 1, 0};
  }
  throw std::invalid_argument("diag_point");
}

inline std::array<Rat, 4> to_rat_point(const PlanePt& p) {
  return {Rat(p[0]), Rat(p[1]), Rat(p[2]), Rat(0)};
}

/// Linear form vanishing at two plane points, lex-normalized.
inline PolyForm line_form(const PlanePt& p, const PlanePt& q) {
  PolyForm f;
  f.nvars = 3;
  f.degree = 1;
  const Int c0 = p[1] * q[2] - p[2] * q[1];
  const Int c1 = p[2] * q[0] - p[0] * q[2];
  const Int c2 = p[0] * q[1] - p[1] * q[0];
  f.add_term({1, 0, 0, 0}, Rat(c0));
  f.add_term({0, 1, 0, 0}, Rat(c1));
  f.add_term({0, 0, 1, 0}, Rat(c2));
  if (f.is_zero()) throw std::invalid_argument("line_form: coincident points");
  return poly_normalize(f);
}

/// l_ij, the line through q_i and q_j.
inline const PolyForm& line_q(int i, int j) {
  static const std::array<PolyForm, 6> lines = [] {
    std::array<PolyForm, 6> out;
    for (int t = 0; t < 6; ++t) {
      const auto& p = pairs4()[t];
      out[t] = line_form(plane_point(p[0]), plane_point(p[1]));
    }
    return out;
  }();
  return lines[pair4_index(i, j)];
}

/// The line through two diagonal points.
inline const PolyForm& line_diag(Alpha a, Alpha b) {
  static const std::array<PolyForm, 3> lines = [] {
    std::array<PolyForm, 3> out;
    out[0] = line_form(diag_point(Alpha::x), diag_point(Alpha::y));  // key z
    out[1] = line_form(diag_point(Alpha::x), diag_point(Alpha::z));  // key y
    out[2] = line_form(diag_point(Alpha::y), diag_point(Alpha::z));  // key x
    return out;
  }();
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  if (ia == ib) throw std::invalid_argument("line_diag: equal labels");
  const int missing = 3 - ia - ib;
  return lines[2 - missing];
}

/// Coefficients expressing `target` in the pencil spanned by u and v.
inline std::pair<Rat, Rat> pencil_coeffs(const PolyForm& target, const PolyForm& u,
                                         const PolyForm& v) {
  const auto basis = monomials_of_degree(target.nvars, target.degree);
  auto ratrow = [&basis](const PolyForm& p) {
    RatRow r(basis.size(), Rat(0));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto it = p.coeff.find(basis[i]);
      if (it != p.coeff.end()) r[i] = it->second;
    }
    return r;
  };
  const auto sol = solve_pencil(ratrow(u), ratrow(v), ratrow(target));
  if (!sol) throw std::logic_error("pencil_coeffs: target outside the pencil");
  return *sol;
}

/// Line-pencil relation through q_j: l_ij = x*l_jk + y*l_jl with {k,l} the
/// complement of {i,j} (k < l).
inline std::pair<Rat, Rat> step1_coeffs(int i, int j) {
  const auto kl = complement4(i, j);
  return pencil_coeffs(line_q(i, j), line_q(j, kl[0]), line_q(j, kl[1]));
}

/// Degenerate-conic relation: l_ij*l_kl = x*(l_ik*l_jl) + y*(l_il*l_jk).
inline std::pair<Rat, Rat> step2_coeffs(int i, int j) {
  const auto kl = complement4(i, j);
  return pencil_coeffs(poly_mul(line_q(i, j), line_q(kl[0], kl[1])),
                       poly_mul(line_q(i, kl[0]), line_q(j, kl[1])),
                       poly_mul(line_q(i, kl[1]), line_q(j, kl[0])));
}

/// Pencil through the diagonal point rho: the diagonal line through
/// {alpha, rho} against the two q-lines whose chi label is rho.
inline std::pair<Rat, Rat> reducible_coeffs(Alpha alpha, Alpha rho) {
  const auto f = chi_fibre(rho);
  return pencil_coeffs(line_diag(alpha, rho), line_q(f[0][0], f[0][1]), line_q(f[1][0], f[1][1]));
}

/// Conic-pencil relation through q_i, q_j and the two diagonal points other
/// than gamma = chi(ij):
/// l_ij * l_diag = x*(l_ik*l_jk) + y*(l_il*l_jl), {k,l} complement, k < l.
inline std::pair<Rat, Rat> caseC_coeffs(int i, int j) {
  const Alpha gamma = chi(i, j);
  const Alpha a = gamma == Alpha::x ? Alpha::y : Alpha::x;
  const Alpha b = gamma == Alpha::z ? Alpha::y : Alpha::z;
  const auto kl = complement4(i, j);
  return pencil_coeffs(poly_mul(line_q(i, j), line_diag(a, b)),
                       poly_mul(line_q(i, kl[0]), line_q(j, kl[0])),
                       poly_mul(line_q(i, kl[1]), line_q(j, kl[1])));
}

}  // namespace m06cox
