#pragma once

// Input data model: a linear space with a torus action (given by integer
// weight rows), a stability character, an optional split bundle E with a
// section cutting out the complete intersection, and validation of the
// combinatorial invariants every other module relies on.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmi/errors.hpp"
#include "qmi/linear.hpp"
#include "qmi/poly.hpp"
#include "qmi/rational.hpp"

namespace qmi {

using IVector = std::vector<Int>;

// A fractional curve class: an element of Hom(characters, Q), stored in the
// coordinates dual to the standard character basis.
struct RationalClass {
  QVector c;

  RationalClass() = default;
  explicit RationalClass(QVector v) : c(std::move(v)) {}
  static RationalClass zero(int k) { return RationalClass(QVector(k)); }

  int dim() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (const auto& q : c)
      if (q != 0) return false;
    return true;
  }

  RationalClass operator+(const RationalClass& o) const {
    RationalClass r = *this;
    for (int i = 0; i < dim(); ++i) r.c[i] += o.c[i];
    return r;
  }
  RationalClass operator*(const Rational& s) const {
    RationalClass r = *this;
    for (auto& q : r.c) q *= s;
    return r;
  }
  bool operator==(const RationalClass& o) const { return compare(c, o.c) == 0; }
  bool operator!=(const RationalClass& o) const { return !(*this == o); }
  bool operator<(const RationalClass& o) const { return compare(c, o.c) < 0; }

  std::string str() const { return to_string(c); }
};

// <b, w> for an integer character w.
inline Rational pairing(const RationalClass& b, const IVector& w) {
  if (b.dim() != static_cast<int>(w.size()))
    throw Error("pairing: dimension mismatch");
  Rational acc = 0;
  for (int i = 0; i < b.dim(); ++i) acc += Rational(b.c[i] * Rational(w[i]));
  return acc;
}

struct Presentation {
  // One row per coordinate of the linear space / per summand of E.
  std::vector<IVector> x_weights;
  std::vector<IVector> e_weights;
  IVector theta;
  // section[j] = the j-th component, a polynomial in the n coordinates.
  std::optional<std::vector<Poly>> section;
  bool fano_asserted = false;

  int n() const { return static_cast<int>(x_weights.size()); }
  int k() const { return static_cast<int>(theta.size()); }
  int r() const { return static_cast<int>(e_weights.size()); }

  IVector det_x() const { return column_sum(x_weights); }
  IVector det_e() const { return column_sum(e_weights); }

  // Character against which Novikov degrees are computed: det(X) - det(E)
  // (the adjoint contribution vanishes for torus inputs).
  IVector degree_character() const {
    IVector d = det_x();
    const IVector e = det_e();
    for (int i = 0; i < k(); ++i) d[i] -= e[i];
    return d;
  }

  // Weight of a monomial in the coordinates: sum exps[i] * x_weights[i].
  IVector monomial_weight(const Exponents& exps) const {
    IVector w(k(), 0);
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < k(); ++j) w[j] += Int(exps[i]) * x_weights[i][j];
    return w;
  }

  QVector weight_q(int i) const {
    QVector v(k());
    for (int j = 0; j < k(); ++j) v[j] = Rational(x_weights[i][j]);
    return v;
  }

 private:
  IVector column_sum(const std::vector<IVector>& rows) const {
    IVector s(k(), 0);
    for (const auto& row : rows)
      for (int j = 0; j < k(); ++j) s[j] += row[j];
    return s;
  }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string str() const {
    std::string out;
    for (const auto& i : issues) out += "[" + i.code + "] " + i.message + "\n";
    return out;
  }
};

namespace detail {

inline QVector to_q(const IVector& v) {
  QVector q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rational(v[i]);
  return q;
}

}  // namespace detail

// Semantic invariants.  Shape defects of hand-built structs are reported
// here too; JSON loading reports them as ParseError before this runs.
inline ValidationReport validate(const Presentation& p) {
  ValidationReport rep;
  auto issue = [&rep](const std::string& code, const std::string& msg) {
    rep.issues.push_back({code, msg});
  };

  const int n = p.n(), k = p.k(), r = p.r();
  if (k < 1) issue("shape", "torus rank must be at least 1");
  if (n < 1) issue("shape", "need at least one coordinate");
  if (n > 30) issue("shape", "more than 30 coordinates is unsupported");
  for (const auto& row : p.x_weights)
    if (static_cast<int>(row.size()) != k)
      issue("shape", "x_weights row length differs from rank of theta");
  for (const auto& row : p.e_weights)
    if (static_cast<int>(row.size()) != k)
      issue("shape", "e_weights row length differs from rank of theta");
  if (p.section && static_cast<int>(p.section->size()) != r)
    issue("shape", "section has a different number of components than E");
  if (p.section)
    for (const auto& comp : *p.section)
      if (comp.nvars != n)
        issue("shape", "section component has wrong number of variables");
  if (!rep.ok()) return rep;  // later checks assume consistent shapes

  if (k > n) issue("rank", "torus rank exceeds the number of coordinates");

  bool theta_zero = true;
  for (const auto& t : p.theta)
    if (t != 0) theta_zero = false;
  if (theta_zero) issue("theta", "stability character is zero");

  // Each section component must be homogeneous of weight equal to the
  // corresponding E-summand.
  if (p.section) {
    for (int j = 0; j < r; ++j) {
      for (const auto& [exps, coeff] : (*p.section)[j].terms) {
        const IVector w = p.monomial_weight(exps);
        if (w != p.e_weights[j]) {
          issue("section_weight",
                "section component " + std::to_string(j + 1) +
                    " has a monomial of weight different from its E-summand");
          break;
        }
      }
    }
  }

  // Nonempty semistable locus: theta lies in the cone of all weights.
  std::vector<QVector> gens;
  for (int i = 0; i < n; ++i) gens.push_back(p.weight_q(i));
  const QVector theta_q = detail::to_q(p.theta);
  if (!in_cone(gens, theta_q))
    issue("semistable_empty",
          "theta is not in the cone spanned by the weights: "
          "semistable locus is empty");

  // Finite stabilizers: every support whose cone captures theta must span
  // Q^k.  2^n subsets; n is capped above.
  if (rep.ok()) {
    const int limit = 1 << n;
    for (int mask = 1; mask < limit; ++mask) {
      std::vector<QVector> sub;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) sub.push_back(p.weight_q(i));
      if (!in_cone(sub, theta_q)) continue;
      if (rank(QMatrix(sub.begin(), sub.end())) < k) {
        issue("positive_dim_stabilizer",
              "a theta-semistable stratum has a positive-dimensional "
              "stabilizer (its weights do not span)");
        break;
      }
    }
  }

  return rep;
}

inline void require_valid(const Presentation& p) {
  const ValidationReport rep = validate(p);
  if (!rep.ok()) throw ValidationError("invalid presentation:\n" + rep.str());
}

// ---------------------------------------------------------------------------
// JSON I/O
//
// {
//   "x_weights": [[1,0],[1,0],[1,0],[3,1],[0,1]],
//   "e_weights": [[4,1]],
//   "theta": [1,1],
//   "section": [[ {"coeff":"1","exponents":[0,4,0,0,1]}, ... ]],
//   "fano": true
// }
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<IVector> parse_weight_rows(const nlohmann::json& j,
                                              const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array of arrays");
  std::vector<IVector> rows;
  std::size_t width = 0;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError(what + " rows must be arrays");
    IVector out;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw ParseError(what + " entries must be integers");
      out.push_back(Int(static_cast<long>(v.get<long long>())));
    }
    if (rows.empty())
      width = out.size();
    else if (out.size() != width)
      throw ParseError(what + " is ragged");
    rows.push_back(std::move(out));
  }
  return rows;
}

}  // namespace detail

inline Presentation presentation_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("presentation must be a JSON object");
  for (const auto& key : {"x_weights", "theta"})
    if (!j.contains(key))
      throw ParseError(std::string("missing required key '") + key + "'");

  Presentation p;
  p.x_weights = detail::parse_weight_rows(j.at("x_weights"), "x_weights");
  if (j.contains("e_weights"))
    p.e_weights = detail::parse_weight_rows(j.at("e_weights"), "e_weights");

  const auto& th = j.at("theta");
  if (!th.is_array()) throw ParseError("theta must be an array");
  for (const auto& v : th) {
    if (!v.is_number_integer()) throw ParseError("theta entries must be integers");
    p.theta.push_back(Int(static_cast<long>(v.get<long long>())));
  }
  if (!p.x_weights.empty() &&
      p.x_weights[0].size() != p.theta.size())
    throw ParseError("x_weights row length differs from theta length");
  if (!p.e_weights.empty() && p.e_weights[0].size() != p.theta.size())
    throw ParseError("e_weights row length differs from theta length");

  if (j.contains("section") && !j.at("section").is_null()) {
    const auto& sec = j.at("section");
    if (!sec.is_array()) throw ParseError("section must be an array");
    std::vector<Poly> comps;
    for (const auto& comp : sec) {
      if (!comp.is_array())
        throw ParseError("section components must be arrays of terms");
      Poly poly(p.n());
      for (const auto& term : comp) {
        if (!term.is_object() || !term.contains("coeff") ||
            !term.contains("exponents"))
          throw ParseError("section terms need 'coeff' and 'exponents'");
        Rational coeff;
        const auto& cj = term.at("coeff");
        if (cj.is_string())
          coeff = parse_rational(cj.get<std::string>());
        else if (cj.is_number_integer())
          coeff = Rational(static_cast<long>(cj.get<long long>()));
        else
          throw ParseError("section coefficients must be strings or integers");
        const auto& ej = term.at("exponents");
        if (!ej.is_array() || ej.size() != static_cast<std::size_t>(p.n()))
          throw ParseError("section exponent vectors must have length n");
        Exponents exps;
        for (const auto& e : ej) {
          if (!e.is_number_integer() || e.get<long long>() < 0)
            throw ParseError("section exponents must be nonnegative integers");
          exps.push_back(static_cast<int>(e.get<long long>()));
        }
        poly.add_term(exps, coeff);
      }
      comps.push_back(std::move(poly));
    }
    p.section = std::move(comps);
  }

  if (j.contains("fano")) {
    if (!j.at("fano").is_boolean()) throw ParseError("fano must be a boolean");
    p.fano_asserted = j.at("fano").get<bool>();
  }
  return p;
}

inline Presentation presentation_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return presentation_from_json(j);
}

inline nlohmann::json presentation_to_json(const Presentation& p) {
  nlohmann::json j;
  auto rows = [](const std::vector<IVector>& ws) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : ws) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& v : row) r.push_back(v.get_si());
      out.push_back(r);
    }
    return out;
  };
  j["x_weights"] = rows(p.x_weights);
  j["e_weights"] = rows(p.e_weights);
  nlohmann::json th = nlohmann::json::array();
  for (const auto& v : p.theta) th.push_back(v.get_si());
  j["theta"] = th;
  if (p.section) {
    nlohmann::json sec = nlohmann::json::array();
    for (const auto& comp : *p.section) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [exps, coeff] : comp.terms) {
        nlohmann::json t;
        t["coeff"] = to_string(coeff);
        t["exponents"] = exps;
        terms.push_back(t);
      }
      sec.push_back(terms);
    }
    j["section"] = sec;
  }
  j["fano"] = p.fano_asserted;
  return j;
}

// Canonical text for classes used across reports: "(p/q, r/s)".
inline std::string class_str(const RationalClass& b) { return b.str(); }

// Parse "(p/q, r/s)" (parens optional, separators ',' or whitespace).
inline RationalClass parse_class(const std::string& text, int k) {
  std::string cur;
  QVector out;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.push_back(parse_rational(cur));
      cur.clear();
    }
  };
  for (char ch : text) {
    if (ch == '(' || ch == ')' || ch == ',' || ch == ' ' || ch == '\t')
      flush();
    else
      cur += ch;
  }
  flush();
  if (static_cast<int>(out.size()) != k)
    throw ParseError("class '" + text + "' does not have " +
                     std::to_string(k) + " components");
  return RationalClass(std::move(out));
}

}  // namespace qmi
