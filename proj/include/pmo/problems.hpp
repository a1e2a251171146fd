#pragma once

#include "pmo/polymatrix.hpp"

namespace pmo {
namespace problems {

// The worked examples shipped with the library. Naming follows the bundled
// problem files in problems/.
PMOProblem example_1();                // 5x5 objective, two 2x2 constraints
PMOProblem example_2(int n);           // chain problem, 3x3 objective
PMOProblem example_3(int p, unsigned seed);  // random A,B family
PMOProblem example_4();                // 2x2 objective, one 5x5 constraint
PMOProblem example_6();                // example_1 variant with 0.5 corners
PMOProblem example_7();                // example_6 variant with zero corners
PMOProblem example_9(int n);           // arrow constraint family
PMOProblem block_two_moment();         // 2x2 with x1+x2 coupling (two-block TS fixture)
PMOProblem bivariate_pair();           // unconstrained 2x2 bivariate fixture
PMOProblem cs_merge_a();               // CS extraction fixture with equality circle
PMOProblem cs_merge_b();               // CS extraction fixture, matched atoms
PMOProblem cs_counterexample();        // separable 2x2 with box constraints
SymPolyMatrix newton_threevar();       // 3x3 unconstrained SOS fixture

// Tridiagonal homogeneous family with free multipliers (lam1, lam2):
// minimize lam2 - 10*lam1 subject to P(x; lam) PSD everywhere.
struct ParametricPmi {
  int n = 0;
  SymPolyMatrix base;                   // P0
  std::vector<SymPolyMatrix> params;    // P_u
  std::vector<double> cost;             // minimize cost . theta
};
ParametricPmi tridiag_band(int omega);

}  // namespace problems
}  // namespace pmo
