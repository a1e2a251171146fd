#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pmo/csp.hpp"
#include "pmo/relax.hpp"

namespace pmo {

// Singular values above tol * sigma_max.
int numeric_rank(const Eigen::MatrixXd& M, double tol);

struct FlatnessReport {
  bool flat = false;
  int rank_high = 0;  // rank M_r
  int rank_low = 0;   // rank M_{r-d_K}
};

// Flatness on the moment block over one variable clique (all variables =
// the global check). d_K is the max half-degree over the clique's
// constraints (1 when unconstrained).
FlatnessReport flatness_check(const MomentSolution& ms, const std::vector<int>& clique_vars,
                              int r, int d_K, double rank_tol);

struct Atom {
  Eigen::VectorXd x;   // coordinates over the clique's variables
  Eigen::MatrixXd W;   // PSD weight matrix
};

struct ExtractionResult {
  bool ok = false;
  std::vector<Atom> atoms;
  double residual = 0.0;  // max_alpha || sum_i x_i^alpha W_i - S_alpha ||_F
  std::string message;
};

// Block-moment-matrix extraction: shift operators on the column space of
// M_r(S, I), simultaneous diagonalization through a (seeded) random
// combination, weights by least squares on the moment equations.
ExtractionResult extract_atoms(const MomentSolution& ms, const std::vector<int>& clique_vars,
                               int r, double rank_tol);

enum class CertStatus { dirac, product_merge, matched_merge, not_certified };

struct Certificate {
  CertStatus status = CertStatus::not_certified;
  std::vector<Eigen::VectorXd> minimizers;  // full-space points
  std::vector<Eigen::MatrixXd> weights;
  double lambda = 0.0;
  std::string detail;
};

// Merge per-clique atomic measures into a global optimality certificate,
// trying in order: global Dirac (all clique moment matrices rank one),
// product merge (rank-one overlaps, weights proportional to S_0), and
// matched merge (atoms identified across cliques by overlap coordinates and
// equal weights).
Certificate merge_cliques(const PMOProblem& prob, const MomentSolution& ms,
                          const CliqueDecomposition& dec,
                          const std::vector<ExtractionResult>& per_clique, int r, double bound,
                          double rank_tol);

inline const char* to_string(CertStatus s) {
  switch (s) {
    case CertStatus::dirac: return "certified-dirac";
    case CertStatus::product_merge: return "certified-product-merge";
    case CertStatus::matched_merge: return "certified-matched-merge";
    default: return "bound only (not certified)";
  }
}

}  // namespace pmo
