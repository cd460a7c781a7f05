#pragma once

// Verdict-level analyses: I-convexity with exact Farkas certification,
// nonequivariant-limit scans, the weighted-line h^1 and classical-convexity
// baselines, the four-way equivalence battery, and the positivity
// criterion used for quantum-period computations.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmi/cones.hpp"
#include "qmi/ifunc.hpp"
#include "qmi/presentation.hpp"
#include "qmi/sectors.hpp"

namespace qmi {

// ---------------------------------------------------------------------------
// I-convexity
// ---------------------------------------------------------------------------

struct ConvexityReport {
  bool convex = true;
  // The verdict is certified globally (not just inside the scanned ball):
  // for every theta-passing support and summand, the exact dual system
  // {y.xi_i >= 0 on the support, y.e <= -1} is infeasible; feasible points
  // scale to effective witnesses through the stabilizer order.
  bool unconditional = true;
  std::optional<RationalClass> witness;
  int witness_summand = -1;          // index into e_weights
  bool enumeration_failed = false;   // witness found by lattice search instead
};

namespace detail {

// Smallest-box effective class with an integral negative pairing against
// some summand, searched over the support's own denominator lattice.
inline std::optional<std::pair<RationalClass, int>> bad_pairing_witness(
    const Presentation& p, ConeCache& cache, Support s, int max_radius) {
  const Int order = stabilizer_order(p, cache, s);
  if (order == 0) return std::nullopt;
  const int k = p.k();
  for (int radius = 1; radius <= max_radius; ++radius) {
    const Int bound = order * radius;
    std::optional<std::pair<RationalClass, int>> best;
    std::vector<Int> counter(k, -bound);
    while (true) {
      QVector v(k);
      for (int i = 0; i < k; ++i) v[i] = make_rational(counter[i], order);
      RationalClass b(std::move(v));
      if (!b.is_zero() && is_i_effective(p, cache, b)) {
        for (int j = 0; j < p.r(); ++j)
          if (is_negative_integer(pairing(b, p.e_weights[j]))) {
            if (!best || b < best->first) best = {b, j};
            break;
          }
      }
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

inline ConvexityReport is_i_convex(Session& s, const Rational& max_degree) {
  ConvexityReport rep;
  const Presentation& p = s.p;
  const int n = p.n(), k = p.k();

  // Exact global test.
  std::optional<Support> feasible_support;
  for (Support sup = 0; sup <= full_support(n) && !feasible_support; ++sup) {
    if (!theta_in_cone(p, s.cones, sup)) continue;
    for (int j = 0; j < p.r(); ++j) {
      Polyhedron dual(k);
      for (int i : support_elements(sup, n))
        dual.add_ge(p.weight_q(i), Rational(0));
      QVector neg(k);
      for (int i = 0; i < k; ++i) neg[i] = Rational(-p.e_weights[j][i]);
      dual.add_ge(neg, Rational(-1));  // y.e <= -1
      if (dual.feasible()) {
        feasible_support = sup;
        break;
      }
    }
  }
  if (!feasible_support) return rep;  // convex, unconditional

  rep.convex = false;

  // Witness: prefer the first bad class in (degree, lex) order within the
  // ball; fall back to a lattice search when enumeration cannot run.
  try {
    for (const auto& b : enumerate_effective(p, s.cones, max_degree))
      for (int j = 0; j < p.r(); ++j)
        if (is_negative_integer(pairing(b, p.e_weights[j]))) {
          rep.witness = b;
          rep.witness_summand = j;
          return rep;
        }
  } catch (const NonPositiveDegreeError&) {
    rep.enumeration_failed = true;
  }
  const auto w =
      detail::bad_pairing_witness(p, s.cones, *feasible_support, 16);
  if (w) {
    rep.witness = w->first;
    rep.witness_summand = w->second;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Limit existence scan (ambient twisted coefficients)
// ---------------------------------------------------------------------------

struct LimitScanEntry {
  RationalClass b;
  bool exists = true;
  std::string principal;  // rendering of the obstruction when it fails
};

struct LimitScanReport {
  std::vector<LimitScanEntry> entries;
  int failures = 0;
};

inline LimitScanReport limit_existence_scan(Session& s,
                                            const Rational& max_degree,
                                            int kappa_order = 1) {
  LimitScanReport rep;
  for (const auto& b : enumerate_effective(s.p, s.cones, max_degree)) {
    const SeriesElement tw = twisted_coefficient(s, b, kappa_order);
    const KappaLimit lim = kappa_limit(tw);
    LimitScanEntry e;
    e.b = b;
    e.exists = lim.exists;
    if (!lim.exists) {
      e.principal = lim.principal.str();
      ++rep.failures;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weighted-line cohomology and classical convexity baselines
// ---------------------------------------------------------------------------

// h^1 of the degree-d line bundle on the one-stacky-point weighted line
// P(a,1): d must lie in (1/a)Z; the value is max(0, -floor(d) - 1).
inline int h1_weighted_p1(const Rational& d, int a) {
  if (a < 1) throw Error("h1_weighted_p1: stacky index must be positive");
  if (!is_integer(Rational(d * a)))
    throw Error("h1_weighted_p1: degree " + to_string(d) +
                " is not a multiple of 1/" + std::to_string(a));
  const Int f = floor_int(d);
  const Int h1 = -f - 1;
  return h1 > 0 ? static_cast<int>(h1.get_si()) : 0;
}

// Classical convexity of O(k) on P(a_0..a_m): nonnegative and divisible by
// every weight (so every orbifold line pulls back without higher cohomology).
inline bool convex_line_bundle_wps(const std::vector<Int>& weights,
                                   const Int& k) {
  if (k < 0) return false;
  for (const auto& a : weights) {
    if (a <= 0) throw Error("convex_line_bundle_wps: weights must be positive");
    if (!mpz_divisible_p(k.get_mpz_t(), a.get_mpz_t())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Four-way equivalence battery
// ---------------------------------------------------------------------------

struct BatteryRow {
  RationalClass b;
  bool in_ball = true;        // false for saturation multiples
  bool i_nonneg = true;       // no negative-integral bundle pairing
  bool e_nonneg = true;       // no negative bundle pairing at all
  bool h1_zero = true;        // all pulled-back summands have h^1 = 0
  bool limit_exists = true;   // ambient twisted limit exists
};

struct BatteryReport {
  // Global verdicts over the saturated scan set ("true" = property holds).
  bool i_convex = true;
  bool e_nonnegative = true;
  bool h1_vanishes = true;
  bool limits_exist = true;
  bool agree = true;
  std::vector<BatteryRow> rows;
  std::optional<RationalClass> first_witness;
  // Exact global convexity for context; can be false while the scan set is
  // clean when the degree bound is too small to contain any witness.
  bool global_convex = true;
  bool ball_matches_global = true;
};

inline BatteryReport equivalence_battery(Session& s, const Rational& max_degree,
                                   int kappa_order = 1) {
  BatteryReport rep;
  const Presentation& p = s.p;

  const auto ball = enumerate_effective(p, s.cones, max_degree);

  // Monoid saturation: the equivalence is a statement about the effective
  // monoid, so each scanned class also contributes the multiples that make
  // fractional pairings integral (and double them for the h^1 threshold).
  std::set<RationalClass> scan_set;
  std::set<RationalClass> ball_set(ball.begin(), ball.end());
  for (const auto& b : ball) {
    if (b.is_zero()) {
      scan_set.insert(b);
      continue;
    }
    const long a = static_cast<long>(denominator_lcm(b.c).get_si());
    for (long m = 1; m <= 2 * a; ++m)
      scan_set.insert(b * Rational(m));
  }

  for (const auto& b : scan_set) {
    BatteryRow row;
    row.b = b;
    row.in_ball = ball_set.count(b) > 0;
    for (int j = 0; j < p.r(); ++j) {
      const Rational v = pairing(b, p.e_weights[j]);
      if (is_negative_integer(v)) row.i_nonneg = false;
      if (v < 0) row.e_nonneg = false;
      if (h1_weighted_p1(v, static_cast<int>(v.get_den().get_si())) > 0)
        row.h1_zero = false;
    }
    const KappaLimit lim = kappa_limit(twisted_coefficient(s, b, kappa_order));
    row.limit_exists = lim.exists;

    if (!row.i_nonneg) rep.i_convex = false;
    if (!row.e_nonneg) rep.e_nonnegative = false;
    if (!row.h1_zero) rep.h1_vanishes = false;
    if (!row.limit_exists) rep.limits_exist = false;
    if ((!row.i_nonneg || !row.e_nonneg || !row.h1_zero || !row.limit_exists) &&
        !rep.first_witness)
      rep.first_witness = b;
    rep.rows.push_back(std::move(row));
  }

  rep.agree = (rep.i_convex == rep.e_nonnegative) &&
              (rep.i_convex == rep.h1_vanishes) &&
              (rep.i_convex == rep.limits_exist);

  rep.global_convex = is_i_convex(s, max_degree).convex;
  rep.ball_matches_global = (rep.i_convex == rep.global_convex);
  return rep;
}

// ---------------------------------------------------------------------------
// Positivity criterion for quantum-period computations
// ---------------------------------------------------------------------------

enum class CriterionVerdict { Pass, Fail, Inconclusive };

struct CriterionInstance {
  RationalClass b;
  // condition (1): the restricted twisted limit exists and vanishes
  bool limit_exists = true;
  bool value_model_zero = true;
  // condition (2): sector age plus pushforward codimension is >= 1
  Rational age_plus_codim;
  bool age_codim_ok = true;
  CriterionVerdict verdict = CriterionVerdict::Pass;
};

struct CriterionReport {
  CriterionVerdict verdict = CriterionVerdict::Pass;
  bool hypothesis_ok = true;        // every nonzero effective has deg > 0
  std::string hypothesis_detail;
  bool conditional = false;         // Fano-type input not asserted
  std::vector<CriterionInstance> instances;
  std::optional<RationalClass> witness;
  std::string note =
      "classes indexed by torus characters; degrees taken against "
      "det(X) - det(E)";
};

inline CriterionReport positivity_criterion(Session& s, const Rational& max_degree,
                                         int kappa_order = 1) {
  CriterionReport rep;
  rep.conditional = !s.p.fano_asserted;

  std::vector<RationalClass> ball;
  try {
    ball = enumerate_effective(s.p, s.cones, max_degree);
  } catch (const NonPositiveDegreeError& e) {
    rep.hypothesis_ok = false;
    rep.hypothesis_detail = e.what();
    rep.verdict = CriterionVerdict::Fail;
    return rep;
  }

  for (const auto& b : ball) {
    if (b.is_zero() || is_i_nonnegative(s.p, b)) continue;
    CriterionInstance inst;
    inst.b = b;

    const SectorDescriptor& d = sector_descriptor(s, b);
    inst.age_plus_codim = Rational(d.age_sector + Rational(d.f_codim_in_y));
    inst.age_codim_ok = inst.age_plus_codim >= 1;

    const SeriesElement tw = twisted_coefficient(s, b, kappa_order);
    const KappaLimit lim = kappa_limit(restrict_to_y(s, b, tw));
    inst.limit_exists = lim.exists;
    inst.value_model_zero = lim.exists && lim.value.entries.empty();

    if (!inst.limit_exists || !inst.age_codim_ok)
      inst.verdict = CriterionVerdict::Fail;
    else if (!inst.value_model_zero)
      // The truncated model is a quotient of the restriction's image, so a
      // nonzero model value cannot certify failure: inconclusive.
      inst.verdict = CriterionVerdict::Inconclusive;

    if (inst.verdict == CriterionVerdict::Fail &&
        rep.verdict != CriterionVerdict::Fail) {
      rep.verdict = CriterionVerdict::Fail;
      rep.witness = inst.b;
    } else if (inst.verdict == CriterionVerdict::Inconclusive &&
               rep.verdict == CriterionVerdict::Pass) {
      rep.verdict = CriterionVerdict::Inconclusive;
      rep.witness = inst.b;
    }
    rep.instances.push_back(std::move(inst));
  }
  return rep;
}

}  // namespace qmi
