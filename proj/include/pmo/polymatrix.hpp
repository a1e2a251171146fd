#pragma once

#include <Eigen/Dense>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "pmo/poly.hpp"

namespace pmo {

// Symmetric p x p polynomial matrix stored as a sparse map
// exponent -> dense symmetric coefficient matrix F_alpha. Coefficient
// matrices are kept symmetric and all-zero ones are pruned.
template <typename T>
class SymPolyMatrixT {
 public:
  SymPolyMatrixT() : n_(0), p_(0) {}
  SymPolyMatrixT(int nvars, int dim) : n_(nvars), p_(dim) {}

  int nvars() const { return n_; }
  int dim() const { return p_; }

  void add_term(const Exponent& a, int i, int j, const T& c) {
    if (CoeffTraits<T>::is_negligible(c)) return;
    auto& m = coeff_mut(a);
    m[i * p_ + j] += c;
    if (i != j) m[j * p_ + i] += c;
    prune(a);
  }

  void set_entry(int i, int j, const PolyT<T>& poly) {
    for (auto& [a, c] : poly.terms()) add_term(a, i, j, c);
  }

  T coeff(const Exponent& a, int i, int j) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? CoeffTraits<T>::zero() : it->second[i * p_ + j];
  }

  const std::map<Exponent, std::vector<T>>& terms() const { return terms_; }

  PolyT<T> entry(int i, int j) const {
    PolyT<T> p(n_);
    for (auto& [a, m] : terms_) p.add_term(a, m[i * p_ + j]);
    return p;
  }

  std::set<Exponent> support() const {
    std::set<Exponent> s;
    for (auto& [a, m] : terms_) s.insert(a);
    return s;
  }

  int degree() const {
    int d = 0;
    for (auto& [a, m] : terms_) d = std::max(d, a.degree());
    return d;
  }

  bool entry_is_zero(int i, int j) const {
    for (auto& [a, m] : terms_)
      if (!CoeffTraits<T>::is_negligible(m[i * p_ + j])) return false;
    return true;
  }

  // Variables that actually occur somewhere in the matrix.
  std::vector<int> used_vars() const {
    std::vector<bool> used(n_, false);
    for (auto& [a, m] : terms_)
      for (int v = 0; v < n_; ++v)
        if (a.e[v] != 0) used[v] = true;
    std::vector<int> r;
    for (int v = 0; v < n_; ++v)
      if (used[v]) r.push_back(v);
    return r;
  }

  Eigen::MatrixXd eval(const std::vector<double>& x) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p_, p_);
    for (auto& [a, coeffs] : terms_) {
      double mono = 1;
      for (int i = 0; i < a.nvars(); ++i)
        for (int k = 0; k < a.e[i]; ++k) mono *= x[i];
      for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j) m(i, j) += mono * PolyT<T>::to_double(coeffs[i * p_ + j]);
    }
    return m;
  }

  friend SymPolyMatrixT operator+(const SymPolyMatrixT& a, const SymPolyMatrixT& b) {
    SymPolyMatrixT r = a;
    for (auto& [alpha, m] : b.terms_)
      for (int i = 0; i < b.p_; ++i)
        for (int j = i; j < b.p_; ++j) r.add_term(alpha, i, j, m[i * b.p_ + j]);
    return r;
  }

 private:
  std::vector<T>& coeff_mut(const Exponent& a) {
    auto it = terms_.find(a);
    if (it == terms_.end())
      it = terms_.emplace(a, std::vector<T>(p_ * p_, CoeffTraits<T>::zero())).first;
    return it->second;
  }
  void prune(const Exponent& a) {
    auto it = terms_.find(a);
    if (it == terms_.end()) return;
    for (auto& c : it->second)
      if (!CoeffTraits<T>::is_negligible(c)) return;
    terms_.erase(it);
  }

  int n_, p_;
  std::map<Exponent, std::vector<T>> terms_;
};

using SymPolyMatrix = SymPolyMatrixT<double>;
using SymPolyMatrixQ = SymPolyMatrixT<Rational>;

enum class ConstraintKind { inequality, equality };

struct Constraint {
  SymPolyMatrix mat;
  ConstraintKind kind = ConstraintKind::inequality;
};

// minimize lambda_min(F(x)) subject to G_k(x) >= 0 (PSD) / == 0.
struct PMOProblem {
  int n = 0;
  SymPolyMatrix objective;
  std::vector<Constraint> constraints;

  int num_constraints() const { return (int)constraints.size(); }
};

inline int half_degree(int deg) { return (deg + 1) / 2; }

// max(ceil(deg F / 2), d_1, ..., d_m)
inline int min_relaxation_order(const PMOProblem& prob) {
  int r = half_degree(prob.objective.degree());
  for (auto& c : prob.constraints) r = std::max(r, half_degree(c.mat.degree()));
  return r;
}

// y' F(x) y as a polynomial in (x, y); the y block occupies the last p slots.
template <typename T>
PolyT<T> scalarize(const SymPolyMatrixT<T>& F) {
  int n = F.nvars(), p = F.dim();
  PolyT<T> r(n + p);
  for (auto& [a, m] : F.terms()) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        if (CoeffTraits<T>::is_negligible(m[i * p + j])) continue;
        Exponent e(n + p);
        for (int v = 0; v < n; ++v) e.e[v] = a.e[v];
        e.e[n + i] += 1;
        e.e[n + j] += 1;
        r.add_term(e, m[i * p + j]);
      }
  }
  return r;
}

// diag(v^1,...,v^p)' Q diag(v^1,...,v^p) expanded as a polynomial matrix.
// Q rows/cols are ordered column-block-wise: all monomials of v^1, then v^2...
template <typename T, typename Mat>
SymPolyMatrixT<T> gram_reconstruct(const Mat& Q, const std::vector<std::vector<Exponent>>& bases,
                                   int nvars) {
  int p = (int)bases.size();
  int total = 0;
  std::vector<int> offset(p);
  for (int j = 0; j < p; ++j) {
    offset[j] = total;
    total += (int)bases[j].size();
  }
  if ((int)Q.rows() != total || (int)Q.cols() != total)
    throw std::invalid_argument("gram_reconstruct: Q side does not match the bases");

  SymPolyMatrixT<T> F(nvars, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j)
      for (size_t a = 0; a < bases[i].size(); ++a)
        for (size_t b = 0; b < bases[j].size(); ++b) {
          T q = Q(offset[i] + (int)a, offset[j] + (int)b);
          if (CoeffTraits<T>::is_negligible(q)) continue;
          if (i == j) {
            // both (a,b) and (b,a) of the symmetric Q land on entry (i,i)
            if (a > b) continue;
            T val = (a == b) ? q : q + q;
            F.add_term(bases[i][a] + bases[j][b], i, j, val);
          } else {
            F.add_term(bases[i][a] + bases[j][b], i, j, q);
          }
        }
  return F;
}

}  // namespace pmo
