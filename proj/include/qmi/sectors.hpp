#pragma once

// Twisted-sector bookkeeping: the finite-order group element a fractional
// class lands in, its age, and the descriptor bundling every ring and
// dimension the coefficient formulas need.  A Session owns one
// presentation plus all the memoized combinatorial / ring state.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmi/cones.hpp"
#include "qmi/presentation.hpp"
#include "qmi/sector_ring.hpp"

namespace qmi {

// An element of the compact torus up to deck transformations: fractional
// parts of the class components, each in [0,1).
struct GroupElement {
  QVector fracs;

  static GroupElement from_class(const RationalClass& b) {
    GroupElement g;
    g.fracs.reserve(b.dim());
    for (const auto& q : b.c) g.fracs.push_back(fractional_part(q));
    return g;
  }

  bool is_identity() const {
    for (const auto& f : fracs)
      if (f != 0) return false;
    return true;
  }

  GroupElement inverse() const {
    GroupElement g;
    g.fracs.reserve(fracs.size());
    for (const auto& f : fracs) g.fracs.push_back(fractional_part(Rational(-f)));
    return g;
  }

  GroupElement compose(const GroupElement& o) const {
    GroupElement g;
    g.fracs.reserve(fracs.size());
    for (std::size_t i = 0; i < fracs.size(); ++i)
      g.fracs.push_back(fractional_part(Rational(fracs[i] + o.fracs[i])));
    return g;
  }

  // Fractional part of the pairing with an integer character.
  Rational frac_pairing(const IVector& w) const {
    Rational acc = 0;
    for (std::size_t i = 0; i < fracs.size(); ++i)
      acc += Rational(fracs[i] * Rational(w[i]));
    return fractional_part(acc);
  }

  bool operator==(const GroupElement& o) const { return compare(fracs, o.fracs) == 0; }
  bool operator<(const GroupElement& o) const { return compare(fracs, o.fracs) < 0; }

  std::string str() const { return to_string(fracs); }
};

// Coordinates fixed by g: weights pairing integrally against it.
inline Support g_fixed_support(const Presentation& p, const GroupElement& g) {
  Support s = 0;
  for (int i = 0; i < p.n(); ++i)
    if (g.frac_pairing(p.x_weights[i]) == 0) s |= Support(1) << i;
  return s;
}

// Age of g on the presentation: sum of weight fractions minus the bundle's
// fractions.  Requires the fixed stratum to meet the semistable locus.
inline Rational age(const Presentation& p, ConeCache& cache,
                    const GroupElement& g) {
  if (!theta_in_cone(p, cache, g_fixed_support(p, g)))
    throw EmptyFixedLocusError(
        "age undefined: the fixed locus of " + g.str() +
        " does not meet the semistable locus");
  Rational acc = 0;
  for (const auto& w : p.x_weights) acc += g.frac_pairing(w);
  for (const auto& w : p.e_weights) acc -= g.frac_pairing(w);
  return acc;
}

// Everything the coefficient formulas need to know about the sector that a
// fractional class b contributes to.
struct SectorDescriptor {
  RationalClass b;
  GroupElement g_class;   // group element attached to b
  GroupElement g_sector;  // its inverse: the sector carrying the class
  Rational age_sector;    // age(g_sector)

  Support g_support = 0;  // coordinates with integral pairing (fixed by g)
  int x_dim = 0;          // dim of the ambient sector quotient
  int e_fixed_cut = 0;    // integral E-summands whose section survives there
  int y_dim = 0;          // x_dim - e_fixed_cut, floored at -1 semantics kept

  Support f_support = 0;  // coordinates with nonnegative-integral pairing
  int f_x_dim = 0;
  int f_cut = 0;          // section components alive on the b-fixed stratum
  int f_y_dim = 0;
  int f_codim_in_y = 0;   // codim of F(Y) inside the Y-sector

  bool section_vanishes_on_f = true;  // all components die on the b-stratum
  int e_nonneg_count = 0;             // #{j : b(e_j) nonnegative integer}

  RingPtr ambient_ring;  // model of the ambient sector, untruncated
  RingPtr y_ring;        // same relations truncated at max(y_dim, 0)
  RingPtr f_ring;        // model of the b-fixed stratum, untruncated
};

// Memoized ring/descriptor store for one presentation.
struct SectorTable {
  // (support, truncation or -1) -> ring
  std::map<std::pair<Support, int>, RingPtr> rings;
  std::map<RationalClass, SectorDescriptor> descriptors;
};

struct Session {
  Presentation p;
  ConeCache cones;
  SectorTable sectors;

  explicit Session(Presentation pres, bool check = true) : p(std::move(pres)) {
    if (check) require_valid(p);
  }
};

inline RingPtr stratum_ring(Session& s, Support support,
                            std::optional<int> trunc) {
  const auto key = std::make_pair(support, trunc ? *trunc : -1);
  auto it = s.sectors.rings.find(key);
  if (it != s.sectors.rings.end()) return it->second;
  auto ring = std::make_shared<const SectorRing>(
      s.p.k(), sr_relations(s.p, s.cones, support), trunc);
  s.sectors.rings.emplace(key, ring);
  return ring;
}

inline const SectorDescriptor& sector_descriptor(Session& s,
                                                 const RationalClass& b) {
  auto it = s.sectors.descriptors.find(b);
  if (it != s.sectors.descriptors.end()) return it->second;
  const Presentation& p = s.p;

  SectorDescriptor d;
  d.b = b;
  d.g_class = GroupElement::from_class(b);
  d.g_sector = d.g_class.inverse();
  d.age_sector = age(p, s.cones, d.g_sector);

  d.g_support = integral_support(p, b);
  d.x_dim = support_size(d.g_support) - p.k();

  std::vector<bool> keep_g(p.n(), false), keep_f(p.n(), false);
  for (int i = 0; i < p.n(); ++i) {
    keep_g[i] = support_contains(d.g_support, i);
  }
  d.f_support = fixed_support(p, b);
  for (int i = 0; i < p.n(); ++i) keep_f[i] = support_contains(d.f_support, i);
  d.f_x_dim = support_size(d.f_support) - p.k();

  for (int j = 0; j < p.r(); ++j) {
    const Rational v = pairing(b, p.e_weights[j]);
    if (is_nonnegative_integer(v)) ++d.e_nonneg_count;
    const Poly* sj = p.section ? &(*p.section)[j] : nullptr;
    const bool alive_on_g = sj && !sj->restricted_to(keep_g).is_zero();
    const bool alive_on_f = sj && !sj->restricted_to(keep_f).is_zero();
    if (is_integer(v) && alive_on_g) ++d.e_fixed_cut;
    if (alive_on_f) {
      ++d.f_cut;
      d.section_vanishes_on_f = false;
    }
  }
  d.y_dim = d.x_dim - d.e_fixed_cut;
  d.f_y_dim = d.f_x_dim - d.f_cut;
  d.f_codim_in_y = d.y_dim - d.f_y_dim;

  d.ambient_ring = stratum_ring(s, d.g_support, std::nullopt);
  d.y_ring = stratum_ring(s, d.g_support, std::max(d.y_dim, 0));
  d.f_ring = stratum_ring(s, d.f_support, std::nullopt);

  return s.sectors.descriptors.emplace(b, std::move(d)).first->second;
}

}  // namespace qmi
