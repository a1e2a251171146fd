#pragma once

#include <vector>

#include "pmo/rational.hpp"

namespace pmo {

// Phase-1 simplex with exact rational arithmetic and Bland's rule.
// Decides feasibility of  A x = b, x >= 0  (b must be >= 0).
// Small dense tableaus only; this backs the Newton-polytope membership LP.
inline bool rational_lp_feasible(const std::vector<std::vector<Rational>>& A,
                                 const std::vector<Rational>& b) {
  int m = (int)A.size();
  if (m == 0) return true;
  int n = (int)A[0].size();

  // tableau: columns = structural vars, artificial vars, rhs
  int cols = n + m + 1;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = Rational(1);
    t[i][cols - 1] = b[i];
    basis[i] = n + i;
  }

  // objective row: minimize sum of artificials, expressed in reduced costs
  std::vector<Rational> z(cols);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < cols; ++j) z[j] += t[i][j];

  while (true) {
    int enter = -1;
    for (int j = 0; j < n; ++j) {  // artificials never re-enter
      if (z[j] > Rational(0)) { enter = j; break; }  // Bland: smallest index
    }
    if (enter < 0) break;

    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (!(t[i][enter] > Rational(0))) continue;
      Rational ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded cannot happen in phase 1

    // pivot
    Rational piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      Rational f = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= t[leave][j] * f;
    }
    Rational fz = z[enter];
    if (!fz.is_zero())
      for (int j = 0; j < cols; ++j) z[j] -= t[leave][j] * fz;
    basis[leave] = enter;
  }

  return z[cols - 1].is_zero();
}

}  // namespace pmo
