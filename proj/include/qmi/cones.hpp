#pragma once

// Effectivity combinatorics: which supports capture the stability
// character, which fractional classes are effective, exact enumeration of
// the effective set below a degree bound, and the squarefree relation
// generators presenting each stratum's graded model.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "qmi/linear.hpp"
#include "qmi/presentation.hpp"

namespace qmi {

// Coordinate subsets as bitmasks; presentation.n() is capped at 30.
using Support = std::uint32_t;

inline Support full_support(int n) {
  return (n >= 32) ? ~Support(0) : ((Support(1) << n) - 1);
}
inline bool support_contains(Support s, int i) { return (s >> i) & 1u; }
inline int support_size(Support s) { return __builtin_popcount(s); }
inline std::vector<int> support_elements(Support s, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (support_contains(s, i)) out.push_back(i);
  return out;
}
inline std::string support_str(Support s, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (support_contains(s, i)) {
      if (!first) out += ",";
      out += std::to_string(i + 1);
      first = false;
    }
  return out + "}";
}

// Memo for the (pure, frequently re-asked) cone queries of one presentation.
struct ConeCache {
  std::map<Support, bool> theta_memo;
  std::map<Support, Int> order_memo;
};

// Does theta lie in the rational cone spanned by the weights indexed by s?
// s = {} answers "is theta zero".
inline bool theta_in_cone(const Presentation& p, ConeCache& cache, Support s) {
  auto it = cache.theta_memo.find(s);
  if (it != cache.theta_memo.end()) return it->second;
  std::vector<QVector> gens;
  for (int i = 0; i < p.n(); ++i)
    if (support_contains(s, i)) gens.push_back(p.weight_q(i));
  const bool ans = in_cone(gens, detail::to_q(p.theta));
  cache.theta_memo.emplace(s, ans);
  return ans;
}

// Coordinates pairing to a nonnegative integer: the coordinates that do not
// have to vanish at the distinguished point of a quasimap of class b.
inline Support fixed_support(const Presentation& p, const RationalClass& b) {
  Support s = 0;
  for (int i = 0; i < p.n(); ++i)
    if (is_nonnegative_integer(pairing(b, p.x_weights[i]))) s |= Support(1) << i;
  return s;
}

// Coordinates pairing integrally: the coordinates fixed by the sector's
// group element.
inline Support integral_support(const Presentation& p, const RationalClass& b) {
  Support s = 0;
  for (int i = 0; i < p.n(); ++i)
    if (is_integer(pairing(b, p.x_weights[i]))) s |= Support(1) << i;
  return s;
}

// Order of the generic stabilizer of the stratum with coordinates s: the
// index of the lattice spanned by its weight rows, i.e. the gcd of the
// absolute k x k minors.  Returns 0 when the rows do not span (infinite).
inline Int stabilizer_order(const Presentation& p, ConeCache& cache, Support s) {
  auto it = cache.order_memo.find(s);
  if (it != cache.order_memo.end()) return it->second;
  const int k = p.k();
  const auto rows = support_elements(s, p.n());
  Int g = 0;
  if (static_cast<int>(rows.size()) >= k) {
    std::vector<int> idx(k);
    // iterate over k-subsets of rows
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      QMatrix m;
      for (int i = 0; i < k; ++i) {
        QVector r(k);
        for (int j = 0; j < k; ++j)
          r[j] = Rational(p.x_weights[rows[comb[i]]][j]);
        m.push_back(std::move(r));
      }
      Rational d = determinant(m);
      if (d != 0) g = gcd_int(g, Int(abs(d.get_num())));
      // next combination
      int pos = k - 1;
      while (pos >= 0 && comb[pos] == static_cast<int>(rows.size()) - k + pos)
        --pos;
      if (pos < 0) break;
      ++comb[pos];
      for (int i = pos + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
  }
  cache.order_memo.emplace(s, g);
  return g;
}

// b is effective iff theta lies in the cone of the weights it pairs
// nonnegative-integrally with.  The denominator bound (stabilizer order of
// that support clears b to the integer lattice) is implied by full rank +
// Cramer, but checked cheaply as a guard.
inline bool is_i_effective(const Presentation& p, ConeCache& cache,
                           const RationalClass& b) {
  if (b.dim() != p.k()) throw Error("is_i_effective: dimension mismatch");
  const Support s = fixed_support(p, b);
  if (!theta_in_cone(p, cache, s)) return false;
  const Int order = stabilizer_order(p, cache, s);
  if (order != 0)
    for (const auto& q : b.c)
      if (!is_integer(Rational(q * Rational(order)))) return false;
  return true;
}

inline Rational novikov_degree(const Presentation& p, const RationalClass& b) {
  return pairing(b, p.degree_character());
}

namespace detail {

// Search outward in the (1/order)-lattice for a nonzero effective class of
// non-positive degree (used to attach a witness to the enumeration error).
// Returns the canonically smallest such class in the first box that
// contains one, so witnesses are deterministic.
inline std::optional<RationalClass> nonpositive_degree_witness(
    const Presentation& p, ConeCache& cache, const Int& order, int max_radius) {
  const int k = p.k();
  for (int radius = 1; radius <= max_radius; ++radius) {
    const Int bound = order * radius;
    std::optional<RationalClass> best;
    std::vector<Int> counter(k, -bound);
    while (true) {
      QVector v(k);
      for (int i = 0; i < k; ++i) v[i] = make_rational(counter[i], order);
      RationalClass b(std::move(v));
      if (!b.is_zero() && is_i_effective(p, cache, b) &&
          novikov_degree(p, b) <= 0 && (!best || b < *best))
        best = b;
      int pos = k - 1;
      while (pos >= 0 && counter[pos] == bound) --pos;
      if (pos < 0) break;
      ++counter[pos];
      for (int i = pos + 1; i < k; ++i) counter[i] = -bound;
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace detail

// All effective classes of Novikov degree <= max_degree, sorted by
// (degree, lex).  Throws NonPositiveDegreeError when a nonzero effective
// class of degree <= 0 exists (the set would be infinite).
inline std::vector<RationalClass> enumerate_effective(const Presentation& p,
                                                      ConeCache& cache,
                                                      const Rational& max_degree) {
  const int n = p.n(), k = p.k();
  const IVector deg_char = p.degree_character();
  const QVector deg_q = detail::to_q(deg_char);

  std::set<RationalClass> found;
  const Support full = full_support(n);

  for (Support s = 0; s <= full; ++s) {
    if (!theta_in_cone(p, cache, s)) continue;
    const Int order = stabilizer_order(p, cache, s);
    if (order == 0) continue;  // validation rejects these; defensive skip

    // The cone of classes with nonnegative pairings on s, intersected with
    // the degree slab.  First make sure its recession cone meets degree <= 0
    // only at the origin; otherwise enumeration would be infinite.
    Polyhedron cone(k);
    for (int i : support_elements(s, n)) cone.add_ge(p.weight_q(i), Rational(0));

    {
      Polyhedron recession = cone;
      recession.add_le(deg_q, Rational(0));
      // nonzero direction <=> some coordinate can be pushed to +-1
      for (int j = 0; j < k; ++j)
        for (int sign : {1, -1}) {
          Polyhedron probe = recession;
          QVector unit(k);
          unit[j] = Rational(1);
          probe.add_eq(unit, Rational(-sign));  // y_j = sign
          if (probe.feasible()) {
            auto witness =
                detail::nonpositive_degree_witness(p, cache, order, 16);
            throw NonPositiveDegreeError(
                "effective classes of non-positive degree exist" +
                std::string(witness ? ": witness " + witness->str() : ""));
          }
        }
    }

    // Bounded slab 0 <= deg <= max_degree over the support's cone.
    Polyhedron box = cone;
    box.add_ge(deg_q, Rational(0));
    box.add_le(deg_q, Rational(-max_degree));

    std::vector<std::pair<Int, Int>> ranges(k);  // numerators over `order`
    bool empty = false;
    for (int j = 0; j < k; ++j) {
      const auto b = box.bounds(j);
      if (!b.feasible) {
        empty = true;
        break;
      }
      if (!b.lower || !b.upper)
        throw Error("enumeration box unexpectedly unbounded");
      ranges[j] = {ceil_int(Rational(*b.lower * Rational(order))),
                   floor_int(Rational(*b.upper * Rational(order)))};
      if (ranges[j].first > ranges[j].second) {
        empty = true;
        break;
      }
    }
    if (empty) continue;

    std::vector<Int> counter(k);
    for (int j = 0; j < k; ++j) counter[j] = ranges[j].first;
    while (true) {
      QVector v(k);
      for (int j = 0; j < k; ++j) v[j] = make_rational(counter[j], order);
      RationalClass b(std::move(v));
      const Rational deg = novikov_degree(p, b);
      if (deg >= 0 && deg <= max_degree && is_i_effective(p, cache, b))
        found.insert(b);
      int pos = k - 1;
      while (pos >= 0 && counter[pos] == ranges[pos].second) --pos;
      if (pos < 0) break;
      ++counter[pos];
      for (int j = pos + 1; j < k; ++j) counter[j] = ranges[j].first;
    }
  }

  std::vector<RationalClass> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [&p](const RationalClass& a, const RationalClass& b) {
                     const int c = compare(novikov_degree(p, a), novikov_degree(p, b));
                     if (c != 0) return c < 0;
                     return a < b;
                   });
  return out;
}

// Squarefree relation generators of the stratum's graded model: one product
// prod_{i in S} l_{xi_i} for every inclusion-minimal S inside `support`
// whose removal makes the cone lose theta.  Linear generators appear when a
// singleton qualifies.  Polynomials live in k variables t_1..t_k.
inline std::vector<Poly> sr_relations(const Presentation& p, ConeCache& cache,
                                      Support support) {
  if (!theta_in_cone(p, cache, support))
    throw Error("sr_relations: support does not capture theta");
  const int n = p.n(), k = p.k();
  const auto members = support_elements(support, n);
  const int m = static_cast<int>(members.size());
  if (m > 22) throw Error("sr_relations: support too large");

  std::vector<Support> minimal;
  // subsets of `members` in increasing popcount order
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t sub = 1; sub < (1u << m); ++sub) subsets.push_back(sub);
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
                     if (pa != pb) return pa < pb;
                     return a < b;
                   });
  for (std::uint32_t sub : subsets) {
    Support S = 0;
    for (int i = 0; i < m; ++i)
      if ((sub >> i) & 1u) S |= Support(1) << members[i];
    bool dominated = false;
    for (Support seen : minimal)
      if ((seen & S) == seen) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    if (!theta_in_cone(p, cache, support & ~S)) minimal.push_back(S);
  }

  std::vector<Poly> out;
  for (Support S : minimal) {
    Poly rel = Poly::constant(k, Rational(1));
    for (int i : support_elements(S, n))
      rel = rel * Poly::linear_form(k, p.x_weights[i]);
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace qmi
