#pragma once

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "pmo/exponent.hpp"
#include "pmo/rational.hpp"

namespace pmo {

// Sparse multivariate polynomial, exponent -> coefficient. Zero coefficients
// are pruned on insertion (below 1e-14 in float mode, exact zero in rational
// mode). Iteration order is graded lex, so everything downstream is
// deterministic.
template <typename T>
class PolyT {
 public:
  PolyT() : n_(0) {}
  explicit PolyT(int nvars) : n_(nvars) {}

  int nvars() const { return n_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const Exponent& a, const T& c) {
    auto it = terms_.find(a);
    if (it == terms_.end()) {
      if (!CoeffTraits<T>::is_negligible(c)) terms_.emplace(a, c);
    } else {
      it->second += c;
      if (CoeffTraits<T>::is_negligible(it->second)) terms_.erase(it);
    }
  }

  T coeff(const Exponent& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? CoeffTraits<T>::zero() : it->second;
  }

  const std::map<Exponent, T>& terms() const { return terms_; }

  std::set<Exponent> support() const {
    std::set<Exponent> s;
    for (auto& [a, c] : terms_) s.insert(a);
    return s;
  }

  int degree() const {
    int d = 0;
    for (auto& [a, c] : terms_) d = std::max(d, a.degree());
    return d;
  }

  PolyT& operator+=(const PolyT& o) {
    for (auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }

  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }

  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    PolyT r(a.n_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  PolyT scaled(const T& s) const {
    PolyT r(n_);
    for (auto& [a, c] : terms_) r.add_term(a, c * s);
    return r;
  }

  double eval(const std::vector<double>& x) const {
    double v = 0;
    for (auto& [a, c] : terms_) {
      double m = 1;
      for (int i = 0; i < a.nvars(); ++i)
        for (int k = 0; k < a.e[i]; ++k) m *= x[i];
      v += to_double(c) * m;
    }
    return v;
  }

  static double to_double(double c) { return c; }
  static double to_double(const Rational& c) { return c.to_double(); }

 private:
  int n_;
  std::map<Exponent, T> terms_;
};

using Poly = PolyT<double>;

inline Poly monomial(int n, const Exponent& a, double c = 1.0) {
  Poly p(n);
  p.add_term(a, c);
  return p;
}

inline Poly constant(int n, double c) { return monomial(n, Exponent(n), c); }

}  // namespace pmo
