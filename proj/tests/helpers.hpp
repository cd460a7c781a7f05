#pragma once

// Shared presentation builders and small utilities for the test suite.

#include <optional>
#include <random>
#include <string>

#include "qmi/analysis.hpp"

namespace th {

using namespace qmi;

// Total space of O(-4) over a quartic-containing weighted projective
// 3-space presented as A^5 // (Gm)^2; the running counterexample input.
inline Presentation quartic_bundle() {
  Presentation p;
  p.x_weights = {{1, 0}, {1, 0}, {1, 0}, {3, 1}, {0, 1}};
  p.e_weights = {{4, 1}};
  p.theta = {1, 1};
  Poly s(5);
  s.add_term({0, 4, 0, 0, 1}, Rational(1));
  s.add_term({0, 0, 4, 0, 1}, Rational(1));
  s.add_term({1, 0, 0, 1, 0}, Rational(1));
  p.section = std::vector<Poly>{s};
  p.fano_asserted = true;
  return p;
}

// Same torus data with the weight-(6,1) summand and no section: the
// convex-but-not-I-convex example.
inline Presentation convex_not_iconvex() {
  Presentation p;
  p.x_weights = {{1, 0}, {1, 0}, {1, 0}, {3, 1}, {0, 1}};
  p.e_weights = {{6, 1}};
  p.theta = {1, 1};
  p.fano_asserted = false;
  return p;
}

// P(1,1,3) with a single summand O(k); no section.
inline Presentation p113(long k) {
  Presentation p;
  p.x_weights = {{1}, {1}, {3}};
  p.e_weights = {{Int(k)}};
  p.theta = {1};
  p.fano_asserted = false;
  return p;
}

// P(1,1,3) with no bundle at all.
inline Presentation p113_plain() {
  Presentation p;
  p.x_weights = {{1}, {1}, {3}};
  p.theta = {1};
  p.fano_asserted = false;
  return p;
}

// Non-proper quotient: no character pairs positively with every coordinate.
// The four-way equivalence legitimately breaks here (see the battery tests).
inline Presentation improper() {
  Presentation p;
  p.x_weights = {{1}, {1}, {-1}, {-1}};
  p.e_weights = {{-1}};
  p.theta = {1};
  p.fano_asserted = false;
  return p;
}

inline RationalClass cls(long a, long b, long den) {
  return RationalClass({make_rational(a, den), make_rational(b, den)});
}

inline RationalClass cls1(long a, long den) {
  return RationalClass({make_rational(a, den)});
}

inline std::string data_path(const std::string& name) {
  return std::string(QMI_DATA_DIR) + "/" + name;
}

// A quotient is proper here when some rational character pairs strictly
// positively with every coordinate weight.
inline bool is_proper(const Presentation& p) {
  Polyhedron lp(p.k());
  for (int i = 0; i < p.n(); ++i) lp.add_ge(p.weight_q(i), Rational(-1));
  return lp.feasible();
}

// Deterministic random presentation generator for the battery sweep.
// Draws small torus data, then filters to inputs where the scan is
// meaningful: valid, proper, enumerable, and with a small class ball.
// Uses rng() % m directly so the stream is identical across platforms.
inline std::optional<Presentation> random_presentation(std::mt19937& rng) {
  const int k = 1 + static_cast<int>(rng() % 2);
  const int n = k + 1 + static_cast<int>(rng() % (6 - k));
  const int r = static_cast<int>(rng() % 3);
  Presentation p;
  for (int i = 0; i < n; ++i) {
    IVector row;
    for (int j = 0; j < k; ++j)
      row.push_back(Int(static_cast<long>(rng() % 7) - 3));
    p.x_weights.push_back(row);
  }
  for (int j = 0; j < r; ++j) {
    IVector row;
    for (int c = 0; c < k; ++c)
      row.push_back(Int(static_cast<long>(rng() % 7) - 3));
    p.e_weights.push_back(row);
  }
  p.theta.assign(k, Int(0));
  bool nonzero = false;
  for (int i = 0; i < n; ++i) {
    const long c = static_cast<long>(rng() % 3);
    for (int j = 0; j < k; ++j) p.theta[j] += Int(c) * p.x_weights[i][j];
  }
  for (int j = 0; j < k; ++j)
    if (p.theta[j] != 0) nonzero = true;
  if (!nonzero) return std::nullopt;
  p.fano_asserted = false;

  if (!validate(p).ok()) return std::nullopt;
  if (!is_proper(p)) return std::nullopt;
  try {
    ConeCache cache;
    const auto ball = enumerate_effective(p, cache, Rational(3));
    if (ball.size() > 60) return std::nullopt;
  } catch (const NonPositiveDegreeError&) {
    return std::nullopt;
  }
  return p;
}

}  // namespace th
