#pragma once

// Coefficient assembly: the factor products attached to an effective class,
// their equivariant twist, restriction to the hypersurface side, the mirror
// transformations, and the exact homogeneity audit.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmi/cones.hpp"
#include "qmi/presentation.hpp"
#include "qmi/sectors.hpp"
#include "qmi/series.hpp"

namespace qmi {

// No negative-integral pairing against any bundle summand: the coefficient
// is given by the unconditional product formula.
inline bool is_i_nonnegative(const Presentation& p, const RationalClass& b) {
  for (const auto& w : p.e_weights)
    if (is_negative_integer(pairing(b, w))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Linear factor lists of one weight's contribution.
//
// For pairing v and line class l (+kappa when shifted):
//   v <= 0:  numerator factors  (l [+kappa] + k z)  over k in (v,0), k = v mod 1
//   v  > 0:  denominator factors over k in (0,v], k = v mod 1
// and, unless `reduced`, an extra numerator factor (l [+kappa]) when v is a
// negative integer.  The reduced form is the one the supported-on-stratum
// branch uses.
// ---------------------------------------------------------------------------

struct CFactor {
  std::vector<LinFactor> num, den;
};

inline CFactor c_factor(const RationalClass& b, const IVector& w,
                        const SectorRing& ring, bool kappa_shift,
                        bool reduced) {
  CFactor out;
  const Rational v = pairing(b, w);
  GradedClass l = GradedClass::linear(ring, w);
  const Rational kq = kappa_shift ? Rational(1) : Rational(0);
  if (v <= 0) {
    for (Rational k(v + 1); k < 0; k += 1)
      out.num.push_back({l, k, kq});
    if (!reduced && is_negative_integer(v))
      out.num.push_back({l, Rational(0), kq});
  } else {
    Rational start = fractional_part(v);
    if (start == 0) start = 1;
    for (Rational k = start; k <= v; k += 1)
      out.den.push_back({l, k, kq});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Product assembly with window management
// ---------------------------------------------------------------------------

namespace detail {

// Largest m with c^m != 0 (bounded by the ring's top degree).
inline int nilpotency_steps(const GradedClass& c) {
  int m = 0;
  GradedClass power = c;
  while (!power.is_zero()) {
    ++m;
    power = power * c;
  }
  return m;
}

}  // namespace detail

// Multiply out numerator factors and inverted denominator factors.  Exact
// whenever no denominator mixes z and kappa; otherwise computed in a window
// wide enough that everything below kappa^kappa_order is exact, then trimmed.
inline SeriesElement assemble_product(const SectorTag& tag,
                                      const std::vector<CFactor>& direct,
                                      const std::vector<CFactor>& inverted,
                                      std::optional<int> kappa_order) {
  std::vector<LinFactor> nums, dens;
  for (const auto& f : direct) {
    nums.insert(nums.end(), f.num.begin(), f.num.end());
    dens.insert(dens.end(), f.den.begin(), f.den.end());
  }
  for (const auto& f : inverted) {
    nums.insert(nums.end(), f.den.begin(), f.den.end());
    dens.insert(dens.end(), f.num.begin(), f.num.end());
  }

  bool mixed = false;
  int pole_budget = 0;
  for (const auto& f : dens) {
    const bool has_z = f.a != 0, has_k = f.b != 0;
    if (has_z && has_k) mixed = true;
    if (!has_z && has_k) pole_budget += 1 + detail::nilpotency_steps(f.c);
  }
  std::optional<int> window;
  if (mixed) {
    if (!kappa_order)
      throw Error("mixed denominators require a kappa order");
    window = *kappa_order + pole_budget;
  }

  SeriesElement acc = SeriesElement::one(tag);
  for (const auto& f : nums) acc = acc * factor_series(tag, f);
  for (const auto& f : dens) acc = acc * invert_factor(tag, f, window);
  if (mixed) acc = acc.trimmed_to_kappa(*kappa_order);
  return acc;
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

// A coefficient the engine cannot certify with the implemented formulas is
// a first-class outcome, not an error.
struct Unsupported {
  std::string reason;
};

using Coefficient = std::variant<SeriesElement, Unsupported>;

inline bool is_supported(const Coefficient& c) {
  return std::holds_alternative<SeriesElement>(c);
}
inline const SeriesElement& value_of(const Coefficient& c) {
  return std::get<SeriesElement>(c);
}

inline void require_effective(Session& s, const RationalClass& b) {
  if (!is_i_effective(s.p, s.cones, b))
    throw NotEffectiveError("class " + b.str() + " is not effective");
}

// Untwisted coefficient on the hypersurface side.
inline Coefficient quasimap_coefficient(Session& s, const RationalClass& b) {
  require_effective(s, b);
  const SectorDescriptor& d = sector_descriptor(s, b);
  const Presentation& p = s.p;

  if (is_i_nonnegative(p, b)) {
    SectorTag tag{d.y_ring, d.g_sector, d.age_sector, ClassKind::Fundamental, 0};
    std::vector<CFactor> direct, inverted;
    for (const auto& w : p.x_weights)
      direct.push_back(c_factor(b, w, *d.y_ring, false, false));
    for (const auto& w : p.e_weights)
      inverted.push_back(c_factor(b, w, *d.y_ring, false, false));
    return assemble_product(tag, direct, inverted, std::nullopt);
  }

  // Supported-on-stratum branch: certified only when the section vanishes
  // on the stratum (so it coincides with its ambient counterpart) and the
  // local-complete-intersection count is zero.
  if (!d.section_vanishes_on_f)
    return Unsupported{
        "the section does not vanish on the distinguished stratum; "
        "the supported-on-stratum formula is not certified here"};
  if (d.e_nonneg_count != 0)
    return Unsupported{
        "nonnegative integral bundle pairings present; the expected "
        "intersection codimension does not match the stratum"};

  SectorTag tag{d.f_ring, d.g_sector, d.age_sector, ClassKind::SupportedOnF,
                d.f_codim_in_y};
  std::vector<CFactor> direct, inverted;
  for (const auto& w : p.x_weights)
    direct.push_back(c_factor(b, w, *d.f_ring, false, true));
  for (const auto& w : p.e_weights)
    inverted.push_back(c_factor(b, w, *d.f_ring, false, true));
  return assemble_product(tag, direct, inverted, std::nullopt);
}

// Equivariantly twisted coefficient on the ambient side; exact below
// kappa^kappa_order (fully exact when no denominator mixes z and kappa).
inline SeriesElement twisted_coefficient(Session& s, const RationalClass& b,
                                         int kappa_order = 1) {
  require_effective(s, b);
  const SectorDescriptor& d = sector_descriptor(s, b);
  const Presentation& p = s.p;
  SectorTag tag{d.ambient_ring, d.g_sector, d.age_sector,
                ClassKind::Fundamental, 0};
  std::vector<CFactor> direct, inverted;
  for (const auto& w : p.x_weights)
    direct.push_back(c_factor(b, w, *d.ambient_ring, false, false));
  for (const auto& w : p.e_weights)
    inverted.push_back(c_factor(b, w, *d.ambient_ring, true, false));
  return assemble_product(tag, direct, inverted, kappa_order);
}

// Push an ambient-side series to the hypersurface side: same relations,
// dimension-bound truncation.
inline SeriesElement restrict_to_y(Session& s, const RationalClass& b,
                                   const SeriesElement& x) {
  const SectorDescriptor& d = sector_descriptor(s, b);
  if (x.tag.kind != ClassKind::Fundamental)
    throw Error("restriction applies to ambient fundamental-class series");
  if (!x.tag.ring->same_relations(*d.y_ring))
    throw Error("series does not live on this class's ambient sector");
  SeriesElement out{SectorTag{d.y_ring, x.tag.g, x.tag.age,
                              ClassKind::Fundamental, 0}};
  out.kappa_cutoff = x.kappa_cutoff;
  for (const auto& [key, c] : x.entries) {
    GradedClass mapped = c.mapped_to(*d.y_ring);
    if (!mapped.is_zero()) out.entries.emplace(key, std::move(mapped));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mirror transformations
// ---------------------------------------------------------------------------

struct MirrorEntry {
  RationalClass b;
  std::optional<SeriesElement> mu;     // hypersurface-side coordinate
  std::optional<SeriesElement> mu_tw;  // twisted-limit coordinate
  std::optional<std::string> hole;     // why a side is missing
  bool equal = false;
};

struct MirrorReport {
  std::vector<MirrorEntry> entries;
  enum class Verdict { Equal, Differs, Undetermined } verdict = Verdict::Equal;
  std::optional<RationalClass> witness;
  // Fixed context note for reports (grading/indexing conventions).
  std::string note =
      "classes indexed by torus characters; degrees taken against "
      "det(X) - det(E)";
};

namespace detail {

inline SeriesElement z_shifted(const SeriesElement& x, int by) {
  SeriesElement r(x.tag);
  r.kappa_cutoff = x.kappa_cutoff;
  for (const auto& [key, c] : x.entries)
    r.entries.emplace(std::make_pair(key.first + by, key.second), c);
  return r;
}

// Mirror coordinates may live on different models (stratum-supported vs
// fundamental); they compare equal iff both vanish or both live on the same
// model and agree.
inline bool mirror_equal(const SeriesElement& a, const SeriesElement& b) {
  if (a.entries.empty() && b.entries.empty()) return true;
  if (!a.tag.compatible(b.tag)) return false;
  return a == b;
}

}  // namespace detail

inline MirrorReport mirror_map(Session& s, const Rational& max_degree) {
  MirrorReport rep;
  bool any_hole = false;
  for (const auto& b : enumerate_effective(s.p, s.cones, max_degree)) {
    MirrorEntry e;
    e.b = b;

    const Coefficient q = quasimap_coefficient(s, b);
    if (is_supported(q)) {
      SeriesElement m = detail::z_shifted(value_of(q), 1);
      if (b.is_zero())
        m = m - SeriesElement::monomial(m.tag, 1, 0,
                                        GradedClass::one(*m.tag.ring));
      e.mu = m.z_nonnegative_part();
    } else {
      e.hole = std::get<Unsupported>(q).reason;
    }

    const SeriesElement tw = twisted_coefficient(s, b, 1);
    const SeriesElement restricted = restrict_to_y(s, b, tw);
    const KappaLimit lim = kappa_limit(restricted);
    if (lim.exists) {
      SeriesElement m = detail::z_shifted(lim.value, 1);
      if (b.is_zero())
        m = m - SeriesElement::monomial(m.tag, 1, 0,
                                        GradedClass::one(*m.tag.ring));
      e.mu_tw = m.z_nonnegative_part();
    } else {
      std::string why = "restricted twisted coefficient has no limit";
      e.hole = e.hole ? *e.hole + "; " + why : why;
    }

    if (e.mu && e.mu_tw) {
      e.equal = detail::mirror_equal(*e.mu, *e.mu_tw);
      if (!e.equal && rep.verdict == MirrorReport::Verdict::Equal) {
        rep.verdict = MirrorReport::Verdict::Differs;
        rep.witness = b;
      }
    } else {
      any_hole = true;
    }
    rep.entries.push_back(std::move(e));
  }
  if (any_hole && rep.verdict == MirrorReport::Verdict::Equal)
    rep.verdict = MirrorReport::Verdict::Undetermined;
  return rep;
}

// ---------------------------------------------------------------------------
// Homogeneity audit: every term of a coefficient must sit in total degree
// zero once the sector age, the pushforward shift, the z/kappa exponents
// and the class degree are added up.
// ---------------------------------------------------------------------------

struct HomogeneityResult {
  bool ok = true;
  std::string detail;
};

inline HomogeneityResult homogeneity_check(const Presentation& p,
                                           const SeriesElement& x,
                                           const RationalClass& b) {
  HomogeneityResult out;
  const Rational deg_b = novikov_degree(p, b);
  for (const auto& [key, cls] : x.entries)
    for (const auto& [d, coords] : cls.comps) {
      bool nonzero = false;
      for (const auto& q : coords)
        if (q != 0) nonzero = true;
      if (!nonzero) continue;
      const Rational total = Rational(
          Rational(d + x.tag.codim + key.first + key.second) + x.tag.age +
          deg_b);
      if (total != 0) {
        out.ok = false;
        out.detail = "term at z^" + std::to_string(key.first) + " k^" +
                     std::to_string(key.second) + " degree " +
                     std::to_string(d) + " has total degree " +
                     to_string(total) + " for class " + b.str();
        return out;
      }
    }
  return out;
}

}  // namespace qmi
