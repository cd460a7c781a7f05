#pragma once

// Exact linear algebra over the rationals: reduced row echelon form,
// determinants/minors, and Fourier–Motzkin elimination for deciding
// feasibility and extracting variable bounds of rational polyhedra.
// Sizes here are tiny (rank <= number of torus factors), so clarity wins
// over asymptotics.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "qmi/rational.hpp"

namespace qmi {

using QMatrix = std::vector<QVector>;

// In-place reduced row echelon form; returns the pivot column indices.
inline std::vector<int> rref(QMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < static_cast<int>(m.size()); ++col) {
    int sel = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r)
      if (m[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    const Rational inv_pivot(1 / m[row][col]);
    for (int c = col; c < cols; ++c) m[row][c] *= inv_pivot;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int c = col; c < cols; ++c)
        m[r][c] -= Rational(f * m[row][c]);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

// Exact determinant of a square matrix by fraction-friendly elimination.
inline Rational determinant(QMatrix m) {
  const int n = static_cast<int>(m.size());
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) return Rational(0);
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv_pivot(1 / m[col][col]);
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f(m[r][col] * inv_pivot);
      for (int c = col; c < n; ++c) m[r][c] -= Rational(f * m[col][c]);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin elimination.
//
// A constraint over y in Q^n is stored as a vector of length n+1:
//   (a_0, ..., a_{n-1}, b)   meaning   a.y + b >= 0.
// Eliminating a variable combines positive/negative pairs with positive
// multipliers, which preserves the solution set's projection exactly.
// ---------------------------------------------------------------------------

namespace detail {

// Scale a constraint by a positive rational so its entries are coprime
// integers; canonical form for deduplication.
inline QVector normalize_constraint(QVector row) {
  Int l = 1;
  for (const auto& q : row) l = lcm_int(l, q.get_den());
  Int g = 0;
  for (auto& q : row) {
    q *= Rational(l);
    g = gcd_int(g, q.get_num());
  }
  if (g > 1)
    for (auto& q : row) q /= Rational(g);
  return row;
}

}  // namespace detail

class Polyhedron {
 public:
  explicit Polyhedron(int nvars) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  const std::vector<QVector>& rows() const { return rows_; }

  // a.y + b >= 0
  void add_ge(const QVector& a, const Rational& b) {
    QVector row = a;
    row.push_back(b);
    rows_.push_back(std::move(row));
  }

  // a.y + b <= 0
  void add_le(const QVector& a, const Rational& b) {
    QVector row(nvars_ + 1);
    for (int i = 0; i < nvars_; ++i) row[i] = Rational(-a[i]);
    row[nvars_] = Rational(-b);
    rows_.push_back(std::move(row));
  }

  void add_eq(const QVector& a, const Rational& b) {
    add_ge(a, b);
    add_le(a, b);
  }

  bool feasible() const {
    std::vector<QVector> sys = canonical(rows_);
    for (int v = 0; v < nvars_; ++v) sys = eliminate(sys, v);
    return constants_consistent(sys);
  }

  struct Bounds {
    bool feasible = false;
    std::optional<Rational> lower, upper;  // nullopt = unbounded that way
  };

  // Exact projection of the polyhedron onto variable `var`.
  Bounds bounds(int var) const {
    std::vector<QVector> sys = canonical(rows_);
    for (int v = 0; v < nvars_; ++v)
      if (v != var) sys = eliminate(sys, v);
    Bounds out;
    if (!constants_consistent(sys)) return out;
    out.feasible = true;
    for (const auto& row : sys) {
      const Rational& a = row[var];
      const Rational& b = row[nvars_];
      if (a == 0) continue;
      const Rational bound(-b / a);
      if (a > 0) {  // y >= -b/a
        if (!out.lower || bound > *out.lower) out.lower = bound;
      } else {  // y <= -b/a
        if (!out.upper || bound < *out.upper) out.upper = bound;
      }
    }
    if (out.lower && out.upper && *out.lower > *out.upper) {
      out.feasible = false;
      out.lower.reset();
      out.upper.reset();
    }
    return out;
  }

 private:
  static std::vector<QVector> canonical(const std::vector<QVector>& in) {
    std::set<QVector, Less> seen;
    for (const auto& r : in) seen.insert(detail::normalize_constraint(r));
    return {seen.begin(), seen.end()};
  }

  struct Less {
    bool operator()(const QVector& a, const QVector& b) const {
      return compare(a, b) < 0;
    }
  };

  static std::vector<QVector> eliminate(const std::vector<QVector>& sys,
                                        int var) {
    std::vector<QVector> pos, neg;
    std::set<QVector, Less> out;
    for (const auto& row : sys) {
      if (row[var] > 0)
        pos.push_back(row);
      else if (row[var] < 0)
        neg.push_back(row);
      else
        out.insert(row);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        // p[var] > 0 > n[var]; combine with positive multipliers so the
        // variable cancels:  (-n[var])*p + p[var]*n.
        QVector row(p.size());
        const Rational cp(-n[var]), cn(p[var]);
        for (std::size_t i = 0; i < row.size(); ++i)
          row[i] = Rational(cp * p[i] + cn * n[i]);
        out.insert(detail::normalize_constraint(std::move(row)));
      }
    return {out.begin(), out.end()};
  }

  static bool constants_consistent(const std::vector<QVector>& sys) {
    for (const auto& row : sys) {
      bool all_zero = true;
      for (std::size_t i = 0; i + 1 < row.size(); ++i)
        if (row[i] != 0) {
          all_zero = false;
          break;
        }
      if (all_zero && row.back() < 0) return false;
    }
    return true;
  }

  int nvars_;
  std::vector<QVector> rows_;
};

// Is `target` in the convex cone generated by `generators` (over Q>=0)?
// By Farkas: target lies in the (closed, finitely generated) cone iff the
// dual system { y.g >= 0 for all generators, y.target <= -1 } is infeasible.
inline bool in_cone(const std::vector<QVector>& generators,
                    const QVector& target) {
  const int n = static_cast<int>(target.size());
  Polyhedron dual(n);
  for (const auto& g : generators) dual.add_ge(g, Rational(0));
  QVector neg(n);
  for (int i = 0; i < n; ++i) neg[i] = Rational(-target[i]);
  dual.add_ge(neg, Rational(-1));  // y.target <= -1
  return !dual.feasible();
}

}  // namespace qmi
