#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "pmo/polymatrix.hpp"
#include "pmo/simplex_rational.hpp"

namespace pmo {

using MonomialBasis = std::vector<Exponent>;

// All alpha with |alpha| <= d, graded-lex sorted; C(n+d, d) of them.
inline MonomialBasis full_basis(int n, int d) {
  MonomialBasis out;
  Exponent cur(n);
  // depth-first enumeration, then canonical sort
  std::vector<int> stack;
  std::function<void(int, int)> rec = [&](int var, int rem) {
    if (var == n) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= rem; ++k) {
      cur.e[var] = k;
      rec(var + 1, rem - k);
    }
    cur.e[var] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

// Monomials of exact total degree d.
inline MonomialBasis homogeneous_basis(int n, int d) {
  MonomialBasis all = full_basis(n, d), out;
  for (auto& a : all)
    if (a.degree() == d) out.push_back(a);
  return out;
}

// point in conv(vertices)? Exact rational LP on the convexity system.
inline bool hull_membership(const Exponent& point, const std::set<Exponent>& vertices) {
  if (vertices.empty()) return false;
  int n = point.nvars();
  int k = (int)vertices.size();
  std::vector<std::vector<Rational>> A(n + 1, std::vector<Rational>(k));
  std::vector<Rational> b(n + 1);
  int col = 0;
  for (auto& v : vertices) {
    for (int i = 0; i < n; ++i) A[i][col] = Rational(v.e[i]);
    A[n][col] = Rational(1);
    ++col;
  }
  for (int i = 0; i < n; ++i) b[i] = Rational(point.e[i]);
  b[n] = Rational(1);
  return rational_lp_feasible(A, b);
}

struct NotSosError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton-polytope bases: v^j = { alpha : 2*alpha in New(F_jj) }.
// A zero diagonal with a nonzero row certifies "not SOS" (PSD matrices with a
// zero diagonal entry have a zero row).
inline std::vector<MonomialBasis> newton_bases(const SymPolyMatrix& F) {
  int n = F.nvars(), p = F.dim();
  std::vector<MonomialBasis> bases(p);
  for (int j = 0; j < p; ++j) {
    Poly fjj = F.entry(j, j);
    if (fjj.empty()) {
      bool row_zero = true;
      for (int i = 0; i < p; ++i)
        if (i != j && !F.entry_is_zero(i, j)) row_zero = false;
      if (!row_zero)
        throw NotSosError("empty Newton polytope on diagonal " + std::to_string(j + 1));
      continue;  // entire row is zero: empty basis
    }
    std::set<Exponent> verts = fjj.support();
    int d = half_degree(fjj.degree());
    for (auto& a : full_basis(n, d)) {
      Exponent twice(n);
      for (int v = 0; v < n; ++v) twice.e[v] = 2 * a.e[v];
      if (hull_membership(twice, verts)) bases[j].push_back(a);
    }
  }
  return bases;
}

}  // namespace pmo
