#pragma once

#include <map>
#include <string>
#include <vector>

namespace pmo {

// Entry of one A_i in   block(x) = sum_i x_i A_i - C  (upper triangle only;
// the symmetric mirror is implied).
struct SdpCoeff {
  int var;
  int row, col;
  double val;
};

struct SdpConst {
  int row, col;
  double val;
};

struct SdpBlock {
  int dim = 0;
  std::vector<SdpCoeff> coeffs;
  std::vector<SdpConst> constants;
  std::string tag;
};

struct EqRow {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
};

// Block-diagonal standard-form SDP (SDPA orientation):
//   minimize  c'x + offset
//   s.t.      sum_i x_i A_i^b - C^b  PSD   for every block b
//             E x = f
struct BlockSDP {
  int num_vars = 0;
  std::vector<double> objective;
  double obj_offset = 0.0;
  std::vector<SdpBlock> blocks;
  std::vector<EqRow> equalities;

  int new_var() {
    objective.push_back(0.0);
    return num_vars++;
  }
};

struct BlockStats {
  int mb = 0;                    // maximal PSD block dimension
  std::map<int, int> histogram;  // dimension -> count
  int num_vars = 0;
  int num_equalities = 0;
};

inline BlockStats block_stats(const BlockSDP& sdp) {
  BlockStats st;
  st.num_vars = sdp.num_vars;
  st.num_equalities = (int)sdp.equalities.size();
  for (auto& b : sdp.blocks) {
    st.mb = std::max(st.mb, b.dim);
    st.histogram[b.dim]++;
  }
  return st;
}

}  // namespace pmo
