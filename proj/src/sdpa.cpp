#include "pmo/sdpa.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pmo {

void export_sdpa(const BlockSDP& sdp, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.precision(17);

  int neq = (int)sdp.equalities.size();
  int nblocks = (int)sdp.blocks.size() + (neq ? 1 : 0);
  os << sdp.num_vars << "\n";
  os << nblocks << "\n";
  for (size_t b = 0; b < sdp.blocks.size(); ++b) os << sdp.blocks[b].dim << " ";
  if (neq) os << -(2 * neq);
  os << "\n";
  for (int i = 0; i < sdp.num_vars; ++i) os << sdp.objective[i] << (i + 1 < sdp.num_vars ? " " : "");
  os << "\n";

  // F_0 = constants, F_i = coefficient matrices; entries "matno blk i j val"
  for (size_t b = 0; b < sdp.blocks.size(); ++b) {
    for (auto& e : sdp.blocks[b].constants)
      if (e.val != 0.0)
        os << 0 << " " << b + 1 << " " << std::min(e.row, e.col) + 1 << " "
           << std::max(e.row, e.col) + 1 << " " << e.val << "\n";
    for (auto& e : sdp.blocks[b].coeffs)
      if (e.val != 0.0)
        os << e.var + 1 << " " << b + 1 << " " << std::min(e.row, e.col) + 1 << " "
           << std::max(e.row, e.col) + 1 << " " << e.val << "\n";
  }
  // equality t: slots 2t (e'x - f >= 0) and 2t+1 (f - e'x >= 0)
  int eqblk = (int)sdp.blocks.size() + 1;
  for (int t = 0; t < neq; ++t) {
    const EqRow& row = sdp.equalities[t];
    if (row.rhs != 0.0) {
      os << 0 << " " << eqblk << " " << 2 * t + 1 << " " << 2 * t + 1 << " " << row.rhs << "\n";
      os << 0 << " " << eqblk << " " << 2 * t + 2 << " " << 2 * t + 2 << " " << -row.rhs << "\n";
    }
    for (auto& [v, c] : row.terms) {
      os << v + 1 << " " << eqblk << " " << 2 * t + 1 << " " << 2 * t + 1 << " " << c << "\n";
      os << v + 1 << " " << eqblk << " " << 2 * t + 2 << " " << 2 * t + 2 << " " << -c << "\n";
    }
  }
}

SdpaSolutionFragment import_sdpa_solution(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  SdpaSolutionFragment frag;
  std::string line;
  while (std::getline(is, line)) {
    auto read_value = [&](const char* tag, double& out) {
      auto pos = line.find(tag);
      if (pos == std::string::npos) return false;
      auto eq = line.find_first_of("=", pos);
      if (eq == std::string::npos) return false;
      out = std::strtod(line.c_str() + eq + 1, nullptr);
      return true;
    };
    if (read_value("objValPrimal", frag.primal_obj)) {
      frag.has_primal = true;
      continue;
    }
    if (read_value("objValDual", frag.dual_obj)) {
      frag.has_dual = true;
      continue;
    }
    if (line.find("xVec") != std::string::npos) {
      // values listed inside { ... }, possibly on following lines
      std::string buf = line;
      while (buf.find('}') == std::string::npos && std::getline(is, line)) buf += line;
      auto lb = buf.find('{');
      auto rb = buf.find('}');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw std::runtime_error("malformed xVec in " + path);
      std::string inner = buf.substr(lb + 1, rb - lb - 1);
      for (auto& ch : inner)
        if (ch == ',') ch = ' ';
      std::istringstream iss(inner);
      double v;
      while (iss >> v) frag.x.push_back(v);
      frag.has_x = true;
    }
  }
  if (!frag.has_primal && !frag.has_dual && !frag.has_x)
    throw std::runtime_error("no recognizable solution content in " + path);
  return frag;
}

void write_sdpa_solution(const SdpSolution& sol, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.precision(17);
  os << "phase.value  = " << to_string(sol.status) << "\n";
  os << "objValPrimal = " << sol.primal_obj << "\n";
  os << "objValDual   = " << sol.dual_obj << "\n";
  os << "xVec = {";
  for (size_t i = 0; i < sol.x.size(); ++i) os << sol.x[i] << (i + 1 < sol.x.size() ? "," : "");
  os << "}\n";
}

}  // namespace pmo
