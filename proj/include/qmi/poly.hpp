#pragma once

// Sparse multivariate polynomials over the rationals.  Used for two jobs:
// section components (variables = coordinates of the linear space) and the
// relation generators of sector rings (variables = torus characters).

#include <map>
#include <string>
#include <vector>

#include "qmi/rational.hpp"

namespace qmi {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

struct Poly {
  int nvars = 0;
  // exponent vector (length nvars) -> nonzero coefficient
  std::map<Exponents, Rational> terms;

  Poly() = default;
  explicit Poly(int nv) : nvars(nv) {}

  static Poly zero(int nv) { return Poly(nv); }

  static Poly constant(int nv, const Rational& c) {
    Poly p(nv);
    if (c != 0) p.terms.emplace(Exponents(nv, 0), c);
    return p;
  }

  static Poly monomial(int nv, const Exponents& e, const Rational& c) {
    Poly p(nv);
    if (c != 0) p.terms.emplace(e, c);
    return p;
  }

  // sum_a w[a] * t_a
  template <typename Weights>
  static Poly linear_form(int nv, const Weights& w) {
    Poly p(nv);
    for (int a = 0; a < nv; ++a) {
      Rational c(w[a]);
      if (c == 0) continue;
      Exponents e(nv, 0);
      e[a] = 1;
      p.terms.emplace(e, c);
    }
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Exponents& e, const Rational& c) {
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (c != 0) terms.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
  }

  Poly operator*(const Poly& o) const {
    Poly r(nvars);
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        Exponents e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, Rational(c1 * c2));
      }
    return r;
  }

  Poly operator*(const Rational& c) const {
    Poly r(nvars);
    if (c == 0) return r;
    for (const auto& [e, k] : terms) r.terms.emplace(e, Rational(k * c));
    return r;
  }

  bool operator==(const Poly& o) const {
    return nvars == o.nvars && terms == o.terms;
  }

  int degree() const {  // max total degree, -1 for the zero polynomial
    int d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, total_degree(e));
    return d;
  }

  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms) {
      const int t = total_degree(e);
      if (d >= 0 && t != d) return false;
      d = t;
    }
    return true;
  }

  // Set every variable outside `keep` to zero (keep[i] == true retains t_i).
  Poly restricted_to(const std::vector<bool>& keep) const {
    Poly r(nvars);
    for (const auto& [e, c] : terms) {
      bool survives = true;
      for (int i = 0; i < nvars; ++i)
        if (e[i] > 0 && !keep[i]) {
          survives = false;
          break;
        }
      if (survives) r.terms.emplace(e, c);
    }
    return r;
  }

  std::string str(const std::string& var = "t") const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms) {
      std::string mono;
      for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += " ";
        mono += var + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coef;
      if (mono.empty())
        coef = to_string(c);
      else if (c == 1)
        coef = "";
      else if (c == -1)
        coef = "-";
      else
        coef = to_string(c) + " ";
      if (!first) out += " + ";
      out += coef + mono;
      first = false;
    }
    return out;
  }
};

}  // namespace qmi
