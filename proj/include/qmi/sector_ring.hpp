#pragma once

// Graded quotient model of a stratum: Q[t_1..t_k] modulo a homogeneous
// ideal (the squarefree relation products), optionally truncated above a
// dimension bound.  Degree pieces are computed once by exact row reduction
// and cached as normal-form tables; elements are coordinate vectors over
// the per-degree monomial bases.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmi/errors.hpp"
#include "qmi/linear.hpp"
#include "qmi/poly.hpp"
#include "qmi/rational.hpp"

namespace qmi {

// Hard cap: a model whose dimension has not reached zero by this degree
// (with no truncation configured) is rejected rather than built forever.
inline constexpr int kMaxModelDegree = 48;

class SectorRing {
 public:
  SectorRing(int nvars, std::vector<Poly> relations,
             std::optional<int> truncation = std::nullopt)
      : nvars_(nvars), relations_(std::move(relations)), trunc_(truncation) {
    for (const auto& g : relations_) {
      if (g.nvars != nvars_) throw Error("relation variable count mismatch");
      if (!g.is_homogeneous()) throw Error("relations must be homogeneous");
      if (g.is_zero()) throw Error("zero relation");
    }
    if (trunc_ && *trunc_ < 0) throw Error("negative truncation");
    build();
  }

  int nvars() const { return nvars_; }
  const std::vector<Poly>& relations() const { return relations_; }
  std::optional<int> truncation() const { return trunc_; }

  // Last degree with a nonzero piece.
  int top_degree() const { return top_; }

  int dim(int d) const {
    if (d < 0 || d > top_) return 0;
    return static_cast<int>(tables_[d].normal.size());
  }

  std::vector<int> hilbert() const {
    std::vector<int> h;
    for (int d = 0; d <= top_; ++d) h.push_back(dim(d));
    return h;
  }

  // Exponent vectors of the normal-basis monomials in degree d.
  std::vector<Exponents> basis(int d) const {
    std::vector<Exponents> out;
    if (d < 0 || d > top_) return out;
    for (int i : tables_[d].normal) out.push_back(tables_[d].mons[i]);
    return out;
  }

  // Coordinates of a monomial over the normal basis of its degree
  // (zero vector if the degree vanishes in the model).
  QVector reduce_monomial(const Exponents& exps) const {
    const int d = total_degree(exps);
    if (d < 0 || d > top_) return {};
    const auto& t = tables_[d];
    const auto it = t.index.find(exps);
    if (it == t.index.end()) throw Error("monomial outside table");
    return t.reduce[it->second];
  }

  // Two rings are interchangeable for element arithmetic iff they have the
  // same presentation and truncation.
  bool same_model(const SectorRing& o) const {
    return nvars_ == o.nvars_ && trunc_ == o.trunc_ &&
           relations_ == o.relations_;
  }

  // The graded pieces of `o` agree with ours below min(top, o.top) whenever
  // the relations agree (truncation only cuts from above); used by the
  // ambient -> hypersurface-side restriction.
  bool same_relations(const SectorRing& o) const {
    return nvars_ == o.nvars_ && relations_ == o.relations_;
  }

 private:
  struct DegreeTable {
    std::vector<Exponents> mons;      // all monomials, lex-descending
    std::map<Exponents, int> index;
    std::vector<int> normal;          // column indices of basis monomials
    std::vector<QVector> reduce;      // per monomial: coords over `normal`
  };

  static void monomials_rec(int nvars, int var, int left, Exponents& cur,
                            std::vector<Exponents>& out) {
    if (var == nvars - 1) {
      cur[var] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[var] = e;
      monomials_rec(nvars, var + 1, left - e, cur, out);
    }
  }

  static std::vector<Exponents> monomials_of_degree(int nvars, int d) {
    std::vector<Exponents> out;
    Exponents cur(nvars, 0);
    monomials_rec(nvars, 0, d, cur, out);
    return out;
  }

  void build() {
    for (int d = 0;; ++d) {
      if (trunc_ && d > *trunc_) {
        top_ = *trunc_;
        break;
      }
      if (d > kMaxModelDegree)
        throw ModelError(
            "graded model did not close up below the degree cap; "
            "configure a truncation or check the relations");
      DegreeTable t;
      t.mons = monomials_of_degree(nvars_, d);
      for (int i = 0; i < static_cast<int>(t.mons.size()); ++i)
        t.index.emplace(t.mons[i], i);

      // Degree-d slice of the ideal: all m * g with deg m + deg g = d.
      QMatrix rows;
      for (const auto& g : relations_) {
        const int dg = g.degree();
        if (dg > d) continue;
        for (const auto& m : monomials_of_degree(nvars_, d - dg)) {
          QVector row(t.mons.size());
          for (const auto& [e, c] : g.terms) {
            Exponents prod(nvars_);
            for (int i = 0; i < nvars_; ++i) prod[i] = e[i] + m[i];
            row[t.index.at(prod)] += c;
          }
          rows.push_back(std::move(row));
        }
      }
      std::vector<int> pivots = rref(rows);

      std::vector<bool> is_pivot(t.mons.size(), false);
      std::vector<int> pivot_row(t.mons.size(), -1);
      for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
        is_pivot[pivots[r]] = true;
        pivot_row[pivots[r]] = r;
      }
      for (int i = 0; i < static_cast<int>(t.mons.size()); ++i)
        if (!is_pivot[i]) t.normal.push_back(i);

      std::map<int, int> normal_pos;
      for (int j = 0; j < static_cast<int>(t.normal.size()); ++j)
        normal_pos.emplace(t.normal[j], j);

      for (int i = 0; i < static_cast<int>(t.mons.size()); ++i) {
        QVector coords(t.normal.size());
        if (!is_pivot[i]) {
          coords[normal_pos.at(i)] = 1;
        } else {
          // pivot monomial = -sum of non-pivot entries of its RREF row
          const QVector& row = rows[pivot_row[i]];
          for (int j = 0; j < static_cast<int>(t.normal.size()); ++j)
            coords[j] = Rational(-row[t.normal[j]]);
        }
        t.reduce.push_back(std::move(coords));
      }

      const bool dead = t.normal.empty();
      tables_.push_back(std::move(t));
      if (dead) {
        top_ = d - 1;
        break;
      }
    }
    // drop tables above top_ (the empty one, or those past a truncation)
    if (static_cast<int>(tables_.size()) > top_ + 1) tables_.resize(top_ + 1);
  }

  int nvars_;
  std::vector<Poly> relations_;
  std::optional<int> trunc_;
  int top_ = -1;
  std::vector<DegreeTable> tables_;
};

using RingPtr = std::shared_ptr<const SectorRing>;

// A homogeneous-by-degree element of a SectorRing.
struct GradedClass {
  const SectorRing* ring = nullptr;
  std::map<int, QVector> comps;  // degree -> coordinates, no zero vectors

  GradedClass() = default;
  explicit GradedClass(const SectorRing* r) : ring(r) {}

  static GradedClass zero(const SectorRing& r) { return GradedClass(&r); }

  static GradedClass one(const SectorRing& r) {
    GradedClass g(&r);
    if (r.dim(0) > 0) g.comps.emplace(0, QVector{Rational(1)});
    return g;
  }

  static GradedClass from_poly(const SectorRing& r, const Poly& p) {
    if (p.nvars != r.nvars()) throw Error("from_poly: variable mismatch");
    GradedClass g(&r);
    for (const auto& [e, c] : p.terms) {
      const int d = total_degree(e);
      if (d > r.top_degree()) continue;
      const QVector red = r.reduce_monomial(e);
      auto& acc = g.component(d);
      for (std::size_t i = 0; i < red.size(); ++i)
        acc[i] += Rational(c * red[i]);
    }
    g.normalize();
    return g;
  }

  static GradedClass linear(const SectorRing& r, const IVector& w) {
    return from_poly(r, Poly::linear_form(r.nvars(), w));
  }

  bool is_zero() const { return comps.empty(); }

  QVector& component(int d) {
    auto it = comps.find(d);
    if (it == comps.end())
      it = comps.emplace(d, QVector(ring->dim(d))).first;
    return it->second;
  }

  void normalize() {
    for (auto it = comps.begin(); it != comps.end();) {
      bool zero = true;
      for (const auto& q : it->second)
        if (q != 0) {
          zero = false;
          break;
        }
      it = zero ? comps.erase(it) : std::next(it);
    }
  }

  GradedClass operator+(const GradedClass& o) const {
    check_ring(o);
    GradedClass g = *this;
    for (const auto& [d, v] : o.comps) {
      auto& acc = g.component(d);
      for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
    }
    g.normalize();
    return g;
  }

  GradedClass operator-() const {
    GradedClass g = *this;
    for (auto& [d, v] : g.comps)
      for (auto& q : v) q = Rational(-q);
    return g;
  }

  GradedClass operator-(const GradedClass& o) const { return *this + (-o); }

  GradedClass operator*(const Rational& s) const {
    GradedClass g(ring);
    if (s == 0) return g;
    for (const auto& [d, v] : comps) {
      QVector w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rational(v[i] * s);
      g.comps.emplace(d, std::move(w));
    }
    return g;
  }

  GradedClass operator*(const GradedClass& o) const {
    check_ring(o);
    GradedClass g(ring);
    const int top = ring->top_degree();
    for (const auto& [d1, v1] : comps) {
      const auto b1 = ring->basis(d1);
      for (const auto& [d2, v2] : o.comps) {
        const int d = d1 + d2;
        if (d > top) continue;
        const auto b2 = ring->basis(d2);
        auto& acc = g.component(d);
        for (std::size_t i = 0; i < v1.size(); ++i) {
          if (v1[i] == 0) continue;
          for (std::size_t j = 0; j < v2.size(); ++j) {
            if (v2[j] == 0) continue;
            Exponents prod(ring->nvars());
            for (int a = 0; a < ring->nvars(); ++a)
              prod[a] = b1[i][a] + b2[j][a];
            const QVector red = ring->reduce_monomial(prod);
            const Rational f(v1[i] * v2[j]);
            for (std::size_t t = 0; t < red.size(); ++t)
              acc[t] += Rational(f * red[t]);
          }
        }
      }
    }
    g.normalize();
    return g;
  }

  GradedClass pow(int e) const {
    if (e < 0) throw Error("negative power of a graded class");
    GradedClass acc = GradedClass::one(*ring);
    for (int i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
  }

  bool operator==(const GradedClass& o) const {
    check_ring(o);
    return comps == o.comps;
  }
  bool operator!=(const GradedClass& o) const { return !(*this == o); }

  // Degrees strictly above D dropped (same ring).
  GradedClass truncated(int D) const {
    GradedClass g(ring);
    for (const auto& [d, v] : comps)
      if (d <= D) g.comps.emplace(d, v);
    return g;
  }

  // Reinterpret in a ring with the same relations but tighter truncation:
  // coordinates transfer verbatim degree by degree.
  GradedClass mapped_to(const SectorRing& other) const {
    if (!ring->same_relations(other))
      throw Error("mapped_to: rings have different relations");
    GradedClass g(&other);
    for (const auto& [d, v] : comps) {
      if (d > other.top_degree()) continue;
      if (static_cast<int>(v.size()) != other.dim(d))
        throw Error("mapped_to: degree piece mismatch");
      g.comps.emplace(d, v);
    }
    return g;
  }

  std::string str(const std::string& var = "t") const {
    if (comps.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, v] : comps) {
      const auto b = ring->basis(d);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        std::string mono;
        for (int a = 0; a < ring->nvars(); ++a) {
          if (b[i][a] == 0) continue;
          if (!mono.empty()) mono += " ";
          mono += var + std::to_string(a + 1);
          if (b[i][a] > 1) mono += "^" + std::to_string(b[i][a]);
        }
        std::string coef;
        if (mono.empty())
          coef = to_string(v[i]);
        else if (v[i] == 1)
          coef = "";
        else if (v[i] == -1)
          coef = "-";
        else
          coef = to_string(v[i]) + " ";
        out += (first ? "" : " + ") + coef + mono;
        first = false;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check_ring(const GradedClass& o) const {
    if (ring == nullptr || o.ring == nullptr)
      throw Error("operation on default-constructed class");
    if (ring != o.ring && !ring->same_model(*o.ring))
      throw Error("classes live in different rings");
  }
};

}  // namespace qmi
