#pragma once

#include <string>

#include "pmo/polymatrix.hpp"

namespace pmo {

// Problem files: {"n": int, "objective": {"dim": p, "terms": [{"exponent":
// [n ints], "coeffs": [p(p+1)/2 upper-triangle row-major]}]},
// "constraints": [{"dim": q, "kind": "ineq"|"eq", "terms": [...]}]}.
PMOProblem load_problem(const std::string& path);
void save_problem(const PMOProblem& prob, const std::string& path);

}  // namespace pmo
