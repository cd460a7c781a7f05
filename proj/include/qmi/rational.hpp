#pragma once

// Exact integer / rational layer on top of GMP.  Everything in the engine
// is exact; no floating point appears anywhere in the library.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <vector>

#include "qmi/errors.hpp"

namespace qmi {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Int(num), Int(den));
}

inline const Int num(const Rational& q) { return q.get_num(); }
inline const Int den(const Rational& q) { return q.get_den(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool is_nonnegative_integer(const Rational& q) {
  return is_integer(q) && q >= 0;
}

inline bool is_negative_integer(const Rational& q) {
  return is_integer(q) && q < 0;
}

// Floor of an exact rational (round toward -inf).
inline Int floor_int(const Rational& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

inline Int ceil_int(const Rational& q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c;
}

// Fractional part in [0, 1):  q - floor(q).
inline Rational fractional_part(const Rational& q) {
  return Rational(q - Rational(floor_int(q)));
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Canonical text form: "p" or "p/q" with q > 0, gcd(p,q)=1.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& n) { return n.get_str(); }

// Parse "p" or "p/q" (optional leading '-'); anything else is a ParseError.
inline Rational parse_rational(const std::string& text) {
  auto is_int_token = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num_part = text.substr(0, slash);
  std::string den_part = (slash == std::string::npos)
                             ? std::string("1")
                             : text.substr(slash + 1);
  if (!is_int_token(num_part) || !is_int_token(den_part))
    throw ParseError("cannot parse rational from '" + text + "'");
  Int n(num_part), d(den_part);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  return make_rational(n, d);
}

// Deterministic total order usable as a std::map comparator.
inline int compare(const Rational& a, const Rational& b) { return cmp(a, b); }

using QVector = std::vector<Rational>;

inline int compare(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

// lcm of denominators of a rational vector (1 for the empty vector).
inline Int denominator_lcm(const QVector& v) {
  Int l = 1;
  for (const auto& q : v) l = lcm_int(l, q.get_den());
  return l;
}

inline std::string to_string(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  out += ")";
  return out;
}

}  // namespace qmi
