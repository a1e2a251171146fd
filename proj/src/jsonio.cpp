#include "pmo/jsonio.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace pmo {

using nlohmann::json;

namespace {

SymPolyMatrix parse_matrix(const json& j, int n, const std::string& where) {
  if (!j.contains("dim")) throw std::runtime_error(where + ": missing \"dim\"");
  int p = j.at("dim").get<int>();
  if (p < 1) throw std::runtime_error(where + ": dim must be >= 1");
  SymPolyMatrix M(n, p);
  int expected = p * (p + 1) / 2;
  for (auto& term : j.value("terms", json::array())) {
    auto exps = term.at("exponent").get<std::vector<int>>();
    if ((int)exps.size() != n)
      throw std::runtime_error(where + ": exponent length " + std::to_string(exps.size()) +
                               " does not match n=" + std::to_string(n));
    for (int e : exps)
      if (e < 0) throw std::runtime_error(where + ": negative exponent");
    auto coeffs = term.at("coeffs").get<std::vector<double>>();
    if ((int)coeffs.size() != expected)
      throw std::runtime_error(where + ": coeffs must hold the " + std::to_string(expected) +
                               " upper-triangle entries");
    Exponent alpha(exps);
    int idx = 0;
    for (int u = 0; u < p; ++u)
      for (int v = u; v < p; ++v) M.add_term(alpha, u, v, coeffs[idx++]);
  }
  return M;
}

json dump_matrix(const SymPolyMatrix& M) {
  json out;
  out["dim"] = M.dim();
  json terms = json::array();
  int p = M.dim();
  for (auto& [alpha, coeffs] : M.terms()) {
    json t;
    t["exponent"] = alpha.e;
    std::vector<double> upper;
    for (int u = 0; u < p; ++u)
      for (int v = u; v < p; ++v) upper.push_back(coeffs[u * p + v]);
    t["coeffs"] = upper;
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

}  // namespace

PMOProblem load_problem(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open problem file " + path);
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  PMOProblem prob;
  if (!j.contains("n")) throw std::runtime_error(path + ": missing \"n\"");
  prob.n = j.at("n").get<int>();
  if (prob.n < 1) throw std::runtime_error(path + ": n must be >= 1");
  prob.objective = parse_matrix(j.at("objective"), prob.n, path + ":objective");
  int k = 0;
  for (auto& jc : j.value("constraints", json::array())) {
    std::string where = path + ":constraints[" + std::to_string(k++) + "]";
    Constraint c;
    c.mat = parse_matrix(jc, prob.n, where);
    std::string kind = jc.value("kind", "ineq");
    if (kind == "ineq")
      c.kind = ConstraintKind::inequality;
    else if (kind == "eq")
      c.kind = ConstraintKind::equality;
    else
      throw std::runtime_error(where + ": kind must be \"ineq\" or \"eq\"");
    prob.constraints.push_back(std::move(c));
  }
  return prob;
}

void save_problem(const PMOProblem& prob, const std::string& path) {
  json j;
  j["n"] = prob.n;
  j["objective"] = dump_matrix(prob.objective);
  json cons = json::array();
  for (auto& c : prob.constraints) {
    json jc = dump_matrix(c.mat);
    jc["kind"] = c.kind == ConstraintKind::inequality ? "ineq" : "eq";
    cons.push_back(jc);
  }
  j["constraints"] = cons;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << j.dump(2) << "\n";
}

}  // namespace pmo
