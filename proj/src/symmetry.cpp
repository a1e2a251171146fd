#include "pmo/symmetry.hpp"

namespace pmo {

std::vector<Gf2Vec> gf2_nullspace(int nbits, const std::vector<Gf2Vec>& equations) {
  // Gaussian elimination, tracking pivot columns; free columns generate the
  // nullspace basis.
  std::vector<Gf2Vec> rows = equations;
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (int col = 0; col < nbits && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && !rows[piv].get(col)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(nbits, false);
  for (int c : pivot_col) is_pivot[c] = true;

  std::vector<Gf2Vec> basis;
  for (int free_col = 0; free_col < nbits; ++free_col) {
    if (is_pivot[free_col]) continue;
    Gf2Vec v(nbits);
    v.set(free_col, true);
    for (size_t r = 0; r < rank; ++r)
      if (rows[r].get(free_col)) v.set(pivot_col[r], true);
    basis.push_back(v);
  }
  return basis;
}

std::vector<std::vector<int>> sign_symmetries(const PMOProblem& prob) {
  int n = prob.n;
  std::vector<Gf2Vec> eqs;
  auto add_support = [&](const std::set<Exponent>& supp) {
    for (auto& a : supp) {
      Gf2Vec row(n);
      for (int i = 0; i < n; ++i)
        if (a.e[i] & 1) row.set(i, true);
      if (!row.empty()) eqs.push_back(row);
    }
  };
  add_support(prob.objective.support());
  for (auto& c : prob.constraints) add_support(c.mat.support());

  std::vector<std::vector<int>> out;
  for (auto& v : gf2_nullspace(n, eqs)) {
    std::vector<int> theta(n, 0);
    for (int i = 0; i < n; ++i) theta[i] = v.get(i) ? 1 : 0;
    out.push_back(theta);
  }
  return out;
}

EntrySupports collect_entry_supports(const PMOProblem& prob) {
  EntrySupports s;
  s.n = prob.n;
  s.p = prob.objective.dim();
  s.obj.resize(s.p);
  for (int u = 0; u < s.p; ++u) {
    s.obj[u].resize(s.p - u);
    for (int v = u; v < s.p; ++v) s.obj[u][v - u] = prob.objective.entry(u, v).support();
  }
  for (auto& c : prob.constraints) {
    EntrySupports::ConstraintSupports cs;
    cs.q = c.mat.dim();
    cs.entries.resize(cs.q);
    for (int a = 0; a < cs.q; ++a) {
      cs.entries[a].resize(cs.q - a);
      for (int b = a; b < cs.q; ++b) cs.entries[a][b - a] = c.mat.entry(a, b).support();
    }
    s.cons.push_back(std::move(cs));
  }
  return s;
}

std::vector<EntrySymmetry> entry_symmetries(const EntrySupports& sup) {
  // Bit layout: theta (n) | eps_2..eps_p (p-1, eps_1 gauged to 0) | per
  // constraint delta_2..delta_q. Each support exponent of each entry yields
  // one linear equation over GF(2).
  int n = sup.n, p = sup.p;
  int nbits = n + (p - 1);
  std::vector<int> cons_off;
  for (auto& c : sup.cons) {
    cons_off.push_back(nbits);
    nbits += c.q - 1;
  }

  std::vector<Gf2Vec> eqs;
  auto theta_bits = [&](const Exponent& a, Gf2Vec& row) {
    for (int i = 0; i < n; ++i)
      if (a.e[i] & 1) row.set(i, true);
  };
  auto add_entry_eqs = [&](const std::set<Exponent>& supp, int bit_u, int bit_v) {
    for (auto& a : supp) {
      Gf2Vec row(nbits);
      theta_bits(a, row);
      if (bit_u >= 0) row.flip(bit_u);
      if (bit_v >= 0) row.flip(bit_v);
      if (!row.empty()) eqs.push_back(row);
    }
  };
  for (int u = 0; u < p; ++u)
    for (int v = u; v < p; ++v)
      add_entry_eqs(sup.obj[u][v - u], u == 0 ? -1 : n + u - 1, v == 0 ? -1 : n + v - 1);
  for (size_t k = 0; k < sup.cons.size(); ++k) {
    auto& c = sup.cons[k];
    for (int a = 0; a < c.q; ++a)
      for (int b = a; b < c.q; ++b)
        add_entry_eqs(c.entries[a][b - a], a == 0 ? -1 : cons_off[k] + a - 1,
                      b == 0 ? -1 : cons_off[k] + b - 1);
  }

  std::vector<EntrySymmetry> out;
  for (auto& v : gf2_nullspace(nbits, eqs)) {
    EntrySymmetry es;
    es.theta.assign(n, 0);
    es.eps.assign(p, 0);
    for (int i = 0; i < n; ++i) es.theta[i] = v.get(i) ? 1 : 0;
    for (int u = 1; u < p; ++u) es.eps[u] = v.get(n + u - 1) ? 1 : 0;
    bool trivial = true;
    for (int b : es.theta) trivial = trivial && b == 0;
    for (int b : es.eps) trivial = trivial && b == 0;
    if (!trivial) out.push_back(es);
  }
  return out;
}

bool entry_retained(const std::vector<EntrySymmetry>& syms, const Exponent& delta, int u, int v) {
  for (auto& s : syms) {
    int parity = s.eps[u] ^ s.eps[v];
    for (int i = 0; i < delta.nvars(); ++i)
      if ((delta.e[i] & 1) && s.theta[i]) parity ^= 1;
    if (parity) return false;
  }
  return true;
}

}  // namespace pmo
