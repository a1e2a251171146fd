#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace pmo {

// Multi-index alpha in N^n. Ordered graded-lexicographically: lower total
// degree first, ties broken so that x1-heavy monomials precede x2-heavy ones
// (1, x1, x2, x1^2, x1*x2, x2^2, ...).
struct Exponent {
  std::vector<int> e;

  Exponent() = default;
  explicit Exponent(int n) : e(n, 0) {}
  Exponent(std::initializer_list<int> init) : e(init) {}
  explicit Exponent(std::vector<int> v) : e(std::move(v)) {}

  int nvars() const { return (int)e.size(); }
  int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
  int operator[](int i) const { return e[i]; }
  int& operator[](int i) { return e[i]; }

  // Indices of the variables actually present.
  std::vector<int> support_vars() const {
    std::vector<int> s;
    for (int i = 0; i < nvars(); ++i)
      if (e[i] != 0) s.push_back(i);
    return s;
  }

  bool all_even() const {
    for (int v : e)
      if (v & 1) return false;
    return true;
  }

  bool is_zero() const {
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
  }

  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    Exponent r(a.nvars());
    for (int i = 0; i < a.nvars(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.e == b.e; }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return a.e != b.e; }

  friend bool operator<(const Exponent& a, const Exponent& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // x1-major tie break: the lexicographically larger vector comes first
    return a.e > b.e;
  }

  std::string str() const {
    if (is_zero()) return "1";
    std::string s;
    for (int i = 0; i < nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Exponent& a) { return os << a.str(); }
};

struct ExponentHash {
  size_t operator()(const Exponent& a) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (int v : a.e) h = h * 1099511628211ull + (size_t)(v + 7);
    return h;
  }
};

// Restriction/embedding between the full variable set and a clique of it.
inline Exponent project_exponent(const Exponent& a, const std::vector<int>& vars) {
  Exponent r((int)vars.size());
  for (size_t i = 0; i < vars.size(); ++i) r.e[i] = a.e[vars[i]];
  return r;
}

inline Exponent embed_exponent(const Exponent& a, const std::vector<int>& vars, int n) {
  Exponent r(n);
  for (size_t i = 0; i < vars.size(); ++i) r.e[vars[i]] = a.e[i];
  return r;
}

inline bool supported_on(const Exponent& a, const std::vector<bool>& mask) {
  for (int i = 0; i < a.nvars(); ++i)
    if (a.e[i] != 0 && !mask[i]) return false;
  return true;
}

}  // namespace pmo
