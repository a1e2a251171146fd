#include "pmo/relax.hpp"

#include <cassert>
#include <set>
#include <stdexcept>

namespace pmo {

std::vector<int> all_rows(int p) {
  std::vector<int> r(p);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

namespace {

struct VarTable {
  MomentLayout& layout;
  BlockSDP* sdp;
  const std::vector<EntrySymmetry>* syms;

  // variable id of (S_delta)_{uv}, creating it if needed; -1 when the entry
  // vanishes under the symmetry reduction
  int var(const Exponent& delta, int u, int v) {
    if (u > v) std::swap(u, v);
    auto it = layout.delta_id.find(delta);
    int id;
    if (it == layout.delta_id.end()) {
      id = (int)layout.deltas.size();
      layout.delta_id.emplace(delta, id);
      layout.deltas.push_back(delta);
      layout.slots.emplace_back(layout.p * (layout.p + 1) / 2, -2);  // -2 = unseen
    } else {
      id = it->second;
    }
    int& slot = layout.slots[id][layout.slot_index(u, v)];
    if (slot == -2) {
      bool keep = syms->empty() || entry_retained(*syms, delta, u, v);
      slot = keep ? sdp->new_var() : -1;
    }
    return slot;
  }
};

}  // namespace

BlockSpec moment_block_spec(const MonomialBasis& basis, const std::vector<int>& prows,
                            std::string tag) {
  BlockSpec spec;
  spec.constraint = -1;
  spec.tag = std::move(tag);
  for (auto& a : basis)
    for (int j : prows) spec.rows.push_back({a, j, -1});
  return spec;
}

BlockSpec localizing_block_spec(int k, int qk, const MonomialBasis& basis,
                                const std::vector<int>& prows, std::string tag) {
  BlockSpec spec;
  spec.constraint = k;
  spec.tag = std::move(tag);
  for (auto& a : basis)
    for (int j : prows)
      for (int qa = 0; qa < qk; ++qa) spec.rows.push_back({a, j, qa});
  return spec;
}

AssembledSdp assemble(const AssemblyInput& in, const AssemblyOptions& opts) {
  const PMOProblem& prob = *in.prob;
  int p = prob.objective.dim();

  AssembledSdp out;
  out.specs = in.blocks;
  out.eqspecs = in.eqspecs;
  out.layout.n = prob.n;
  out.layout.p = p;

  std::vector<EntrySymmetry> syms;
  if (opts.exploit_symmetry) {
    EntrySupports sup =
        in.symmetry_supports ? *in.symmetry_supports : collect_entry_supports(prob);
    syms = entry_symmetries(sup);
  }

  VarTable vt{out.layout, &out.sdp, &syms};

  // pre-expanded constraint entry supports
  std::vector<std::vector<std::vector<std::vector<std::pair<Exponent, double>>>>> gterms;
  for (auto& c : prob.constraints) {
    int q = c.mat.dim();
    std::vector<std::vector<std::vector<std::pair<Exponent, double>>>> t(
        q, std::vector<std::vector<std::pair<Exponent, double>>>(q));
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        {
          Poly eab = c.mat.entry(a, b);
          for (auto& [g, v] : eab.terms()) t[a][b].push_back({g, v});
        }
    gterms.push_back(std::move(t));
  }

  for (auto& spec : in.blocks) {
    SdpBlock blk;
    blk.dim = (int)spec.rows.size();
    blk.tag = spec.tag;
    for (int ra = 0; ra < blk.dim; ++ra)
      for (int rb = ra; rb < blk.dim; ++rb) {
        const SpecRow& A = spec.rows[ra];
        const SpecRow& B = spec.rows[rb];
        Exponent ab = A.alpha + B.alpha;
        if (spec.constraint < 0) {
          int v = vt.var(ab, A.pj, B.pj);
          if (v >= 0) blk.coeffs.push_back({v, ra, rb, 1.0});
        } else {
          for (auto& [g, coef] : gterms[spec.constraint][A.qa][B.qa]) {
            int v = vt.var(ab + g, A.pj, B.pj);
            if (v >= 0) blk.coeffs.push_back({v, ra, rb, coef});
          }
        }
      }
    out.sdp.blocks.push_back(std::move(blk));
  }

  // equality-kind constraints: localizing entries pinned to zero
  for (auto& spec : in.eqspecs) {
    int nr = (int)spec.rows.size();
    for (int ra = 0; ra < nr; ++ra)
      for (int rb = ra; rb < nr; ++rb) {
        const SpecRow& A = spec.rows[ra];
        const SpecRow& B = spec.rows[rb];
        Exponent ab = A.alpha + B.alpha;
        EqRow row;
        std::map<int, double> acc;
        for (auto& [g, coef] : gterms[spec.constraint][A.qa][B.qa]) {
          int v = vt.var(ab + g, A.pj, B.pj);
          if (v >= 0) acc[v] += coef;
        }
        for (auto& [v, coef] : acc)
          if (std::abs(coef) > 1e-15) row.terms.push_back({v, coef});
        row.rhs = 0.0;
        if (!row.terms.empty()) out.sdp.equalities.push_back(std::move(row));
      }
  }

  // objective: min L_S(F)
  const SymPolyMatrix& F = in.objective_override ? *in.objective_override : prob.objective;
  {
    std::map<int, double> acc;
    for (auto& [delta, coeffs] : F.terms())
      for (int u = 0; u < p; ++u)
        for (int v = u; v < p; ++v) {
          double cv = coeffs[u * p + v];
          if (cv == 0.0) continue;
          int var = vt.var(delta, u, v);
          if (var < 0)
            throw std::logic_error("assemble: objective coefficient dropped by symmetry");
          acc[var] += (u == v ? 1.0 : 2.0) * cv;
        }
    for (auto& [v, cv] : acc) out.sdp.objective[v] = cv;
  }

  // normalization tr S_0 = 1
  if (in.normalize) {
    EqRow row;
    Exponent zero(prob.n);
    for (int u = 0; u < p; ++u) {
      int v = vt.var(zero, u, u);
      assert(v >= 0);
      row.terms.push_back({v, 1.0});
    }
    row.rhs = 1.0;
    out.sdp.equalities.push_back(std::move(row));
  }

  // functional equalities L_S(H) = rhs
  for (auto& [H, rhs] : in.functional_eqs) {
    EqRow row;
    std::map<int, double> acc;
    for (auto& [delta, coeffs] : H->terms())
      for (int u = 0; u < p; ++u)
        for (int v = u; v < p; ++v) {
          double cv = coeffs[u * p + v];
          if (cv == 0.0) continue;
          int var = vt.var(delta, u, v);
          if (var < 0)
            throw std::logic_error("assemble: functional equality entry dropped by symmetry");
          acc[var] += (u == v ? 1.0 : 2.0) * cv;
        }
    for (auto& [v, cv] : acc) row.terms.push_back({v, cv});
    row.rhs = rhs;
    out.sdp.equalities.push_back(std::move(row));
  }

  return out;
}

AssembledSdp assemble_dense(const PMOProblem& prob, int r, const AssemblyOptions& opts,
                            const std::vector<MonomialBasis>* column_bases) {
  if (r < min_relaxation_order(prob))
    throw std::invalid_argument("relaxation order below r_min");
  int p = prob.objective.dim();
  AssemblyInput in;
  in.prob = &prob;

  BlockSpec mom;
  mom.constraint = -1;
  mom.tag = "moment";
  if (column_bases) {
    for (int j = 0; j < p; ++j)
      for (auto& a : (*column_bases)[j]) mom.rows.push_back({a, j, -1});
    std::sort(mom.rows.begin(), mom.rows.end(), [](const SpecRow& x, const SpecRow& y) {
      if (x.alpha != y.alpha) return x.alpha < y.alpha;
      return x.pj < y.pj;
    });
  } else {
    mom = moment_block_spec(full_basis(prob.n, r), all_rows(p), "moment");
  }
  in.blocks.push_back(mom);

  for (int k = 0; k < prob.num_constraints(); ++k) {
    auto& c = prob.constraints[k];
    int dk = half_degree(c.mat.degree());
    MonomialBasis basis = full_basis(prob.n, r - dk);
    if (c.kind == ConstraintKind::inequality) {
      in.blocks.push_back(localizing_block_spec(k, c.mat.dim(), basis, all_rows(p),
                                                "localizing_g" + std::to_string(k + 1)));
    } else {
      EqualitySpec eq;
      eq.constraint = k;
      for (auto& a : basis)
        for (int j = 0; j < p; ++j)
          for (int qa = 0; qa < c.mat.dim(); ++qa) eq.rows.push_back({a, j, qa});
      in.eqspecs.push_back(std::move(eq));
    }
  }
  return assemble(in, opts);
}

namespace {

// PSD blocks from the cliques of the TS graphs of a (sub)problem.
void ts_blocks_into(const PMOProblem& prob, const TsState& ts, ClosureKind closure,
                    AssemblyInput& in, const std::string& tag_prefix) {
  int m = prob.num_constraints();
  for (int k = 0; k <= m; ++k) {
    int q = k == 0 ? 1 : prob.constraints[k - 1].mat.dim();
    bool is_eq = k > 0 && prob.constraints[k - 1].kind == ConstraintKind::equality;
    auto cliques = ts.cliques(k, closure);
    std::set<std::pair<int, int>> eq_pairs_seen;
    int ci = 0;
    for (auto& clique : cliques) {
      if (is_eq) {
        // equality rows: entries over all clique pairs, deduplicated
        for (size_t a = 0; a < clique.size(); ++a)
          for (size_t b = a; b < clique.size(); ++b)
            eq_pairs_seen.insert({std::min(clique[a], clique[b]),
                                  std::max(clique[a], clique[b])});
        continue;
      }
      BlockSpec spec;
      spec.constraint = k - 1;
      spec.tag = tag_prefix + (k == 0 ? "moment" : "g" + std::to_string(k)) + "_c" +
                 std::to_string(ci++);
      for (int node : clique) {
        auto info = ts.node_info(k, node);
        if (k == 0)
          spec.rows.push_back({info.monomial, info.copy_index, -1});
        else
          spec.rows.push_back({info.monomial, info.copy_index / q, info.copy_index % q});
      }
      in.blocks.push_back(std::move(spec));
    }
    if (is_eq) {
      // emit one equality spec per seen pair as 2x2-free rows: reuse the
      // generic path by materializing pair rows directly
      for (auto& [na, nb] : eq_pairs_seen) {
        auto ia = ts.node_info(k, na);
        auto ib = ts.node_info(k, nb);
        EqualitySpec es;
        es.constraint = k - 1;
        es.rows.push_back({ia.monomial, ia.copy_index / q, ia.copy_index % q});
        if (nb != na)
          es.rows.push_back({ib.monomial, ib.copy_index / q, ib.copy_index % q});
        in.eqspecs.push_back(std::move(es));
      }
    }
  }
}

}  // namespace

AssembledSdp assemble_ts(const PMOProblem& prob, int r, const TsState& ts, ClosureKind closure,
                         const AssemblyOptions& opts) {
  if (r < min_relaxation_order(prob))
    throw std::invalid_argument("relaxation order below r_min");
  AssemblyInput in;
  in.prob = &prob;
  ts_blocks_into(prob, ts, closure, in, "ts_");
  return assemble(in, opts);
}

AssembledSdp assemble_cs(const PMOProblem& prob, int r, const CliqueDecomposition& dec,
                         const AssemblyOptions& opts) {
  if (r < min_relaxation_order(prob))
    throw std::invalid_argument("relaxation order below r_min");
  int p = prob.objective.dim();
  AssemblyInput in;
  in.prob = &prob;
  for (size_t l = 0; l < dec.cliques.size(); ++l) {
    auto& I = dec.cliques[l];
    MonomialBasis basis;
    for (auto& a : full_basis((int)I.size(), r)) basis.push_back(embed_exponent(a, I, prob.n));
    std::sort(basis.begin(), basis.end());
    in.blocks.push_back(
        moment_block_spec(basis, all_rows(p), "cs_moment_I" + std::to_string(l + 1)));
  }
  for (int k = 0; k < prob.num_constraints(); ++k) {
    auto& c = prob.constraints[k];
    int l = dec.assignment[k];
    auto& I = dec.cliques[l];
    int dk = half_degree(c.mat.degree());
    MonomialBasis basis;
    for (auto& a : full_basis((int)I.size(), r - dk))
      basis.push_back(embed_exponent(a, I, prob.n));
    std::sort(basis.begin(), basis.end());
    if (c.kind == ConstraintKind::inequality) {
      in.blocks.push_back(localizing_block_spec(k, c.mat.dim(), basis, all_rows(p),
                                                "cs_localizing_g" + std::to_string(k + 1)));
    } else {
      EqualitySpec eq;
      eq.constraint = k;
      for (auto& a : basis)
        for (int j = 0; j < p; ++j)
          for (int qa = 0; qa < c.mat.dim(); ++qa) eq.rows.push_back({a, j, qa});
      in.eqspecs.push_back(std::move(eq));
    }
  }
  return assemble(in, opts);
}

AssembledSdp assemble_cs_ts(const PMOProblem& prob, int r, const CliqueDecomposition& dec,
                            ClosureKind closure, int sparse_order,
                            std::vector<TsState>* states_out, const AssemblyOptions& opts) {
  if (r < min_relaxation_order(prob))
    throw std::invalid_argument("relaxation order below r_min");
  AssemblyInput in;
  in.prob = &prob;
  if (states_out) states_out->clear();

  for (size_t l = 0; l < dec.cliques.size(); ++l) {
    // subproblem on clique l: same objective, constraints assigned to l
    PMOProblem sub;
    sub.n = prob.n;
    sub.objective = prob.objective;
    std::vector<int> orig_k;
    for (int k = 0; k < prob.num_constraints(); ++k)
      if (dec.assignment[k] == (int)l) {
        sub.constraints.push_back(prob.constraints[k]);
        orig_k.push_back(k);
      }
    TsState ts = ts_iterate(sub, r, closure, sparse_order, dec.cliques[l]);
    if (states_out) states_out->push_back(ts);

    AssemblyInput tmp;
    tmp.prob = &sub;
    ts_blocks_into(sub, ts, closure, tmp, "csts_I" + std::to_string(l + 1) + "_");
    // remap constraint indices back to the parent problem
    for (auto& spec : tmp.blocks) {
      if (spec.constraint >= 0) spec.constraint = orig_k[spec.constraint];
      in.blocks.push_back(std::move(spec));
    }
    for (auto& eq : tmp.eqspecs) {
      eq.constraint = orig_k[eq.constraint];
      in.eqspecs.push_back(std::move(eq));
    }
  }
  return assemble(in, opts);
}

MomentSolution extract_moments(const AssembledSdp& asm_sdp, const SdpSolution& sol) {
  MomentSolution ms;
  ms.n = asm_sdp.layout.n;
  ms.p = asm_sdp.layout.p;
  int p = ms.p;
  for (size_t d = 0; d < asm_sdp.layout.deltas.size(); ++d) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(p, p);
    bool any = false;
    for (int u = 0; u < p; ++u)
      for (int v = u; v < p; ++v) {
        int slot = asm_sdp.layout.slots[d][asm_sdp.layout.slot_index(u, v)];
        if (slot >= 0) {
          M(u, v) = M(v, u) = sol.x[slot];
          any = true;
        }
      }
    if (any) ms.S[asm_sdp.layout.deltas[d]] = M;
  }
  return ms;
}

Eigen::MatrixXd moment_matrix(const MomentSolution& ms, const MonomialBasis& basis,
                              const std::vector<int>& prows) {
  int nb = (int)basis.size(), np = (int)prows.size();
  Eigen::MatrixXd M(nb * np, nb * np);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) {
      Eigen::MatrixXd S = ms.value(basis[a] + basis[b]);
      for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) M(a * np + i, b * np + j) = S(prows[i], prows[j]);
    }
  return M;
}

Eigen::MatrixXd localizing_matrix(const MomentSolution& ms, const SymPolyMatrix& G,
                                  const MonomialBasis& basis, const std::vector<int>& prows) {
  int nb = (int)basis.size(), np = (int)prows.size(), q = G.dim();
  int dim = nb * np * q;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) {
      Exponent ab = basis[a] + basis[b];
      for (auto& [g, coeffs] : G.terms()) {
        Eigen::MatrixXd S = ms.value(ab + g);
        for (int i = 0; i < np; ++i)
          for (int j = 0; j < np; ++j)
            for (int qa = 0; qa < q; ++qa)
              for (int qb = 0; qb < q; ++qb)
                M((a * np + i) * q + qa, (b * np + j) * q + qb) +=
                    S(prows[i], prows[j]) * coeffs[qa * q + qb];
      }
    }
  return M;
}

double riesz_functional(const MomentSolution& ms, const SymPolyMatrix& F) {
  double v = 0;
  int p = F.dim();
  for (auto& [delta, coeffs] : F.terms()) {
    Eigen::MatrixXd S = ms.value(delta);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) v += coeffs[i * p + j] * S(i, j);
  }
  return v;
}

}  // namespace pmo
