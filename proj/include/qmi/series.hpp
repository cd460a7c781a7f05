#pragma once

// Finite Laurent data in z and the equivariant parameter kappa with graded
// coefficients, plus the controlled-window arithmetic needed when a factor
// mixes z and kappa (such factors have no finite expansion; everything
// below the window's kappa cutoff stays exact).

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmi/errors.hpp"
#include "qmi/sector_ring.hpp"
#include "qmi/sectors.hpp"

namespace qmi {

enum class ClassKind {
  Fundamental,   // multiples of the sector's fundamental class
  SupportedOnF,  // classes pushed forward from the distinguished stratum
};

struct SectorTag {
  RingPtr ring;
  GroupElement g;        // sector label (inverse group element of the class)
  Rational age;          // age of g, bundle-corrected
  ClassKind kind = ClassKind::Fundamental;
  int codim = 0;         // pushforward degree shift for SupportedOnF

  bool compatible(const SectorTag& o) const {
    return ring && o.ring && ring->same_model(*o.ring) && g == o.g &&
           kind == o.kind && codim == o.codim;
  }
};

namespace detail {
inline constexpr int kInf = std::numeric_limits<int>::max() / 4;
}

struct SeriesElement {
  SectorTag tag;
  // (z exponent, kappa exponent) -> graded coefficient class
  std::map<std::pair<int, int>, GradedClass> entries;
  // Terms with kappa exponent >= cutoff are unknown (dropped); everything
  // below is exact.  No value = fully exact object.
  std::optional<int> kappa_cutoff;

  SeriesElement() = default;
  explicit SeriesElement(SectorTag t) : tag(std::move(t)) {}

  static SeriesElement zero(SectorTag t) { return SeriesElement(std::move(t)); }

  static SeriesElement monomial(SectorTag t, int zexp, int kexp,
                                GradedClass c) {
    SeriesElement s(std::move(t));
    if (!c.is_zero()) s.entries.emplace(std::make_pair(zexp, kexp), std::move(c));
    return s;
  }

  static SeriesElement one(SectorTag t) {
    GradedClass u = GradedClass::one(*t.ring);
    return monomial(std::move(t), 0, 0, std::move(u));
  }

  bool is_zero() const { return entries.empty() && !kappa_cutoff; }

  int min_kexp_or(int fallback) const {
    int m = detail::kInf;
    for (const auto& [key, c] : entries) m = std::min(m, key.second);
    return m == detail::kInf ? fallback : m;
  }

  void normalize() {
    for (auto it = entries.begin(); it != entries.end();) {
      const bool beyond =
          kappa_cutoff && it->first.second >= *kappa_cutoff;
      it = (beyond || it->second.is_zero()) ? entries.erase(it) : std::next(it);
    }
  }

  SeriesElement operator+(const SeriesElement& o) const {
    require_compatible(o);
    SeriesElement r = *this;
    for (const auto& [key, c] : o.entries) {
      auto it = r.entries.find(key);
      if (it == r.entries.end())
        r.entries.emplace(key, c);
      else
        it->second = it->second + c;
    }
    if (kappa_cutoff || o.kappa_cutoff)
      r.kappa_cutoff = std::min(kappa_cutoff.value_or(detail::kInf),
                                o.kappa_cutoff.value_or(detail::kInf));
    r.normalize();
    return r;
  }

  SeriesElement operator-() const {
    SeriesElement r = *this;
    for (auto& [key, c] : r.entries) c = -c;
    return r;
  }

  SeriesElement operator-(const SeriesElement& o) const { return *this + (-o); }

  SeriesElement operator*(const Rational& s) const {
    SeriesElement r = *this;
    if (s == 0) {
      r.entries.clear();
      return r;  // cutoff kept: unknown tail scales to unknown-zero, still bounded
    }
    for (auto& [key, c] : r.entries) c = c * s;
    return r;
  }

  SeriesElement operator*(const SeriesElement& o) const {
    require_compatible(o);
    SeriesElement r(tag);
    // Window bookkeeping: the unknown tail of one side meets the smallest
    // kappa exponent of the other.
    std::optional<int> cut;
    if (kappa_cutoff)
      cut = *kappa_cutoff + o.min_kexp_or(o.kappa_cutoff.value_or(0));
    if (o.kappa_cutoff) {
      const int c2 = *o.kappa_cutoff + min_kexp_or(kappa_cutoff.value_or(0));
      cut = cut ? std::min(*cut, c2) : c2;
    }
    for (const auto& [k1, c1] : entries)
      for (const auto& [k2, c2] : o.entries) {
        const auto key = std::make_pair(k1.first + k2.first,
                                        k1.second + k2.second);
        if (cut && key.second >= *cut) continue;
        GradedClass prod = c1 * c2;
        if (prod.is_zero()) continue;
        auto it = r.entries.find(key);
        if (it == r.entries.end())
          r.entries.emplace(key, std::move(prod));
        else
          it->second = it->second + prod;
      }
    r.kappa_cutoff = cut;
    r.normalize();
    return r;
  }

  // Shrink an existing window to `order`.  Exact objects stay exact: a
  // window is only ever narrowed, never invented.
  SeriesElement trimmed_to_kappa(int order) const {
    SeriesElement r = *this;
    if (r.kappa_cutoff && *r.kappa_cutoff > order) r.kappa_cutoff = order;
    r.normalize();
    return r;
  }

  bool kind_is_f() const { return tag.kind == ClassKind::SupportedOnF; }

  // Entries with nonnegative z exponent (same window).
  SeriesElement z_nonnegative_part() const {
    SeriesElement r(tag);
    r.kappa_cutoff = kappa_cutoff;
    for (const auto& [key, c] : entries)
      if (key.first >= 0) r.entries.emplace(key, c);
    return r;
  }

  bool operator==(const SeriesElement& o) const {
    if (!tag.compatible(o.tag)) return false;
    if (!kappa_cutoff && !o.kappa_cutoff) return entries == o.entries;
    // Windowed comparison: agree strictly below the smaller cutoff.
    const int w = std::min(kappa_cutoff.value_or(detail::kInf),
                           o.kappa_cutoff.value_or(detail::kInf));
    auto below = [w](const SeriesElement& s) {
      std::map<std::pair<int, int>, GradedClass> out;
      for (const auto& [key, c] : s.entries)
        if (key.second < w) out.emplace(key, c);
      return out;
    };
    return below(*this) == below(o);
  }
  bool operator!=(const SeriesElement& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void require_compatible(const SeriesElement& o) const {
    if (!tag.compatible(o.tag))
      throw Error("series arithmetic across incompatible sectors");
  }
};

// ---------------------------------------------------------------------------
// Factor inversion
// ---------------------------------------------------------------------------

// One linear building block  c + a z + b kappa  with c a positive-degree
// graded class and a, b scalars.
struct LinFactor {
  GradedClass c;
  Rational a;  // z coefficient
  Rational b;  // kappa coefficient
};

inline SeriesElement factor_series(const SectorTag& tag, const LinFactor& f) {
  SeriesElement s(tag);
  if (!f.c.is_zero()) s.entries.emplace(std::make_pair(0, 0), f.c);
  if (f.a != 0)
    s.entries.emplace(std::make_pair(1, 0),
                      GradedClass::one(*tag.ring) * f.a);
  if (f.b != 0)
    s.entries.emplace(std::make_pair(0, 1),
                      GradedClass::one(*tag.ring) * f.b);
  return s;
}

// Exact inverse of c + a z (a != 0): nilpotency of c makes the geometric
// series finite.
namespace detail {

inline SeriesElement invert_pure(const SectorTag& tag, const GradedClass& c,
                                 const Rational& coef, bool kappa) {
  // Only nilpotent ring parts admit a finite Laurent inverse; a unit
  // constant component would make the geometric series below infinite.
  if (const auto it = c.comps.find(0); it != c.comps.end())
    for (const auto& q : it->second)
      if (q != 0)
        throw NonInvertibleError(
            "factor has a unit constant part; no finite Laurent inverse");
  SeriesElement r(tag);
  const Rational inv(1 / coef);
  GradedClass power = GradedClass::one(*tag.ring);
  Rational scale = inv;
  for (int m = 0;; ++m) {
    GradedClass term = power * scale;
    if (!term.is_zero()) {
      const auto key = kappa ? std::make_pair(0, -(m + 1))
                             : std::make_pair(-(m + 1), 0);
      r.entries.emplace(key, std::move(term));
    }
    power = power * (-c);
    if (power.is_zero()) break;
    scale = Rational(scale * inv);
  }
  return r;
}

}  // namespace detail

// Inverse of a linear factor.  Pure factors (a=0 or b=0) invert exactly;
// mixed ones have no finite expansion and require a kappa window, supplied
// by the caller.
inline SeriesElement invert_factor(const SectorTag& tag, const LinFactor& f,
                                   std::optional<int> window = std::nullopt) {
  const bool has_z = f.a != 0, has_k = f.b != 0;
  if (!has_z && !has_k)
    throw NonInvertibleError("factor has neither z nor kappa part");
  if (has_z && !has_k) return detail::invert_pure(tag, f.c, f.a, false);
  if (!has_z && has_k) return detail::invert_pure(tag, f.c, f.b, true);
  if (!window)
    throw Error("mixed z/kappa factor needs an explicit window to invert");
  // (c + az + bk)^-1 = sum_{m>=0} (-b)^m k^m (c + az)^-(m+1): kappa-ascending.
  SeriesElement r(tag);
  r.kappa_cutoff = *window;
  if (*window <= 0) return r;
  const SeriesElement base = detail::invert_pure(tag, f.c, f.a, false);
  SeriesElement power = base;  // (c+az)^-(m+1)
  Rational scale = 1;          // (-b)^m
  for (int m = 0; m < *window; ++m) {
    for (const auto& [key, c] : power.entries) {
      const auto shifted = std::make_pair(key.first, key.second + m);
      GradedClass term = c * scale;
      if (term.is_zero()) continue;
      auto it = r.entries.find(shifted);
      if (it == r.entries.end())
        r.entries.emplace(shifted, std::move(term));
      else
        it->second = it->second + term;
    }
    if (m + 1 < *window) {
      power = power * base;
      scale = Rational(scale * Rational(-f.b));
    }
  }
  r.normalize();
  return r;
}

// ---------------------------------------------------------------------------
// Limits and slices
// ---------------------------------------------------------------------------

struct KappaLimit {
  bool exists = false;
  SeriesElement value;      // kappa^0 slice when the limit exists
  SeriesElement principal;  // strictly negative kappa part otherwise
};

// Nonequivariant limit kappa -> 0.  Needs the window to cover exponent 0.
inline KappaLimit kappa_limit(const SeriesElement& x) {
  if (x.kappa_cutoff && *x.kappa_cutoff < 1)
    throw Error("kappa window too small to evaluate the limit");
  KappaLimit out;
  out.value = SeriesElement(x.tag);
  out.principal = SeriesElement(x.tag);
  for (const auto& [key, c] : x.entries) {
    if (key.second < 0)
      out.principal.entries.emplace(key, c);
    else if (key.second == 0)
      out.value.entries.emplace(key, c);
  }
  out.exists = out.principal.entries.empty();
  return out;
}

// The coefficient of z^e: kappa exponent -> class.  `exact` is false when a
// window may hide higher kappa terms.
struct ZCoefficient {
  std::map<int, GradedClass> by_kappa;
  bool exact = true;
  std::optional<int> kappa_cutoff;
};

inline ZCoefficient z_coefficient(const SeriesElement& x, int e) {
  ZCoefficient out;
  out.exact = !x.kappa_cutoff.has_value();
  out.kappa_cutoff = x.kappa_cutoff;
  for (const auto& [key, c] : x.entries)
    if (key.first == e) out.by_kappa.emplace(key.second, c);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical rendering: terms sorted by (z exponent, kappa exponent, degree,
// basis position); exact-window suffix when present.
// ---------------------------------------------------------------------------

inline std::string SeriesElement::str() const {
  std::vector<std::pair<bool, std::string>> terms;  // (negative, body)
  for (const auto& [key, cls] : entries) {
    for (const auto& [d, coords] : cls.comps) {
      const auto basis = tag.ring->basis(d);
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        Rational coef = coords[i];
        const bool neg = coef < 0;
        if (neg) coef = Rational(-coef);
        std::string body;
        std::string mono;
        for (int a = 0; a < tag.ring->nvars(); ++a) {
          if (basis[i][a] == 0) continue;
          if (!mono.empty()) mono += " ";
          mono += "t" + std::to_string(a + 1);
          if (basis[i][a] > 1) mono += "^" + std::to_string(basis[i][a]);
        }
        std::vector<std::string> pieces;
        if (!mono.empty()) pieces.push_back(mono);
        if (key.first != 0)
          pieces.push_back(key.first == 1
                               ? "z"
                               : "z^" + std::to_string(key.first));
        if (key.second != 0)
          pieces.push_back(key.second == 1
                               ? "k"
                               : "k^" + std::to_string(key.second));
        if (kind_is_f()) pieces.push_back("[F]");
        std::string tail;
        for (std::size_t t = 0; t < pieces.size(); ++t)
          tail += (t ? " " : "") + pieces[t];
        if (tail.empty())
          body = to_string(coef);
        else if (coef == 1)
          body = tail;
        else
          body = to_string(coef) + " " + tail;
        terms.emplace_back(neg, body);
      }
    }
  }
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0)
      out += (terms[i].first ? "-" : "") + terms[i].second;
    else
      out += (terms[i].first ? " - " : " + ") + terms[i].second;
  }
  if (kappa_cutoff) {
    if (!out.empty()) out += " + ";
    out += "O(k^" + std::to_string(*kappa_cutoff) + ")";
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace qmi
