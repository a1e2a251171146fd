#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "pmo/polymatrix.hpp"

namespace pmo {

// GF(2) row vectors packed into 64-bit words.
struct Gf2Vec {
  std::vector<uint64_t> w;
  explicit Gf2Vec(int nbits) : w((nbits + 63) / 64, 0) {}
  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void flip(int i) { w[i >> 6] ^= (1ull << (i & 63)); }
  void set(int i, bool v) {
    if (get(i) != v) flip(i);
  }
  void operator^=(const Gf2Vec& o) {
    for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
  }
  bool empty() const {
    for (uint64_t x : w)
      if (x) return false;
    return true;
  }
};

// Basis of { z : M z = 0 over GF(2) } where the rows of M are `equations`.
std::vector<Gf2Vec> gf2_nullspace(int nbits, const std::vector<Gf2Vec>& equations);

// Common sign symmetries of F, G_1..G_m: a GF(2) basis of
// { theta : theta' alpha = 0 mod 2 for every alpha in supp(F) u supp(G_k) }.
std::vector<std::vector<int>> sign_symmetries(const PMOProblem& prob);

// Entry-level symmetry: theta acts on variables, eps flips objective
// rows/columns by conjugation. Every plain sign symmetry appears with
// eps = 0; the extra solutions are exactness-preserving reductions for the
// moment SDPs (the symmetrized optimal solution attains the same value).
struct EntrySymmetry {
  std::vector<int> theta;  // n bits
  std::vector<int> eps;    // p bits
};

// Supports of the problem, entry by entry, in the form the detector needs.
struct EntrySupports {
  int n = 0;
  int p = 0;
  // objective: supports per entry (u <= v)
  std::vector<std::vector<std::set<Exponent>>> obj;  // obj[u][v - u]
  // one block per constraint: q_k and entry supports
  struct ConstraintSupports {
    int q;
    std::vector<std::vector<std::set<Exponent>>> entries;
  };
  std::vector<ConstraintSupports> cons;
};

EntrySupports collect_entry_supports(const PMOProblem& prob);

std::vector<EntrySymmetry> entry_symmetries(const EntrySupports& sup);

// True when (delta, u, v) survives every symmetry in the list:
// theta' delta + eps_u + eps_v = 0 (mod 2) for each generator.
bool entry_retained(const std::vector<EntrySymmetry>& syms, const Exponent& delta, int u, int v);

}  // namespace pmo
