// Command-line front end: list effective classes, evaluate quasimap and
// equivariant twisted coefficients, and run the decision procedures.
//
// Exit codes:
//   0  success / property holds
//   1  property fails (a witness is reported)
//   2  usage, parse, or validation error
//   3  enumeration impossible (effective classes of non-positive degree)
//   4  requested class is not effective
//   5  inconclusive / undetermined verdict

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qmi/analysis.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qmi;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kNonPositive = 3;
constexpr int kNotEffective = 4;
constexpr int kInconclusive = 5;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json json_or_null(const std::optional<RationalClass>& c) {
  return c ? json(c->str()) : json(nullptr);
}

// ---------------------------------------------------------------------------
// effective
// ---------------------------------------------------------------------------

int run_effective(Session& s, const Rational& max_degree, bool as_json) {
  const auto classes = enumerate_effective(s.p, s.cones, max_degree);
  json out;
  out["command"] = "effective";
  out["max_degree"] = to_string(max_degree);
  out["count"] = classes.size();
  out["classes"] = json::array();
  for (const auto& b : classes) {
    const GroupElement g = GroupElement::from_class(b).inverse();
    const Rational a = age(s.p, s.cones, g);
    if (as_json) {
      json row;
      row["class"] = b.str();
      row["degree"] = to_string(novikov_degree(s.p, b));
      row["sector"] = g.str();
      row["age"] = to_string(a);
      out["classes"].push_back(row);
    } else {
      std::cout << b.str() << "  degree " << to_string(novikov_degree(s.p, b))
                << "  sector " << g.str() << "  age " << to_string(a) << "\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// ifun
// ---------------------------------------------------------------------------

struct IfunOptions {
  bool twisted = false;
  bool restrict_y = false;
  bool limit = false;
  int kappa_order = 1;
};

json series_json(const SeriesElement& x) {
  json j;
  j["value"] = x.str();
  j["exact"] = !x.kappa_cutoff.has_value();
  j["kappa_cutoff"] = x.kappa_cutoff ? json(*x.kappa_cutoff) : json(nullptr);
  return j;
}

void ifun_one(Session& s, const RationalClass& b, const IfunOptions& opt,
              bool as_json, json& entries) {
  std::string label;
  json row;
  row["class"] = b.str();
  row["degree"] = to_string(novikov_degree(s.p, b));

  if (!opt.twisted) {
    label = "I" + b.str();
    row["label"] = label;
    const Coefficient c = quasimap_coefficient(s, b);
    if (!is_supported(c)) {
      row["supported"] = false;
      row["reason"] = std::get<Unsupported>(c).reason;
      if (!as_json)
        std::cout << label
                  << ": unsupported: " << std::get<Unsupported>(c).reason
                  << "\n";
    } else {
      const SeriesElement& v = value_of(c);
      row["supported"] = true;
      row.update(series_json(v));
      if (!as_json) std::cout << label << " = " << v.str() << "\n";
    }
    entries.push_back(row);
    return;
  }

  SeriesElement v = twisted_coefficient(s, b, opt.kappa_order);
  label = "Itw";
  if (opt.restrict_y) {
    v = restrict_to_y(s, b, v);
    label += "|Y";
  }
  label += b.str();
  if (opt.limit) {
    const KappaLimit lim = kappa_limit(v);
    row["label"] = "lim " + label;
    row["limit_exists"] = lim.exists;
    if (lim.exists) {
      row.update(series_json(lim.value));
      if (!as_json)
        std::cout << "lim " << label << " = " << lim.value.str() << "\n";
    } else {
      row["value"] = nullptr;
      row["principal"] = lim.principal.str();
      if (!as_json)
        std::cout << "lim " << label << " = DNE (principal "
                  << lim.principal.str() << ")\n";
    }
  } else {
    row["label"] = label;
    row.update(series_json(v));
    if (!as_json) std::cout << label << " = " << v.str() << "\n";
  }
  entries.push_back(row);
}

int run_ifun(Session& s, const std::optional<std::string>& cls,
             const std::optional<Rational>& max_degree, const IfunOptions& opt,
             bool as_json) {
  json out;
  out["command"] = "ifun";
  out["entries"] = json::array();
  if (cls) {
    ifun_one(s, parse_class(*cls, s.p.k()), opt, as_json, out["entries"]);
  } else {
    for (const auto& b : enumerate_effective(s.p, s.cones, *max_degree))
      ifun_one(s, b, opt, as_json, out["entries"]);
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int check_iconvex(Session& s, const Rational& max_degree, bool as_json) {
  const ConvexityReport rep = is_i_convex(s, max_degree);
  json out;
  out["command"] = "check";
  out["which"] = "iconvex";
  out["pass"] = rep.convex;
  out["unconditional"] = rep.unconditional;
  out["witness"] = json_or_null(rep.witness);
  out["witness_summand"] = rep.witness ? json(rep.witness_summand) : json(nullptr);
  out["enumeration_failed"] = rep.enumeration_failed;
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else if (rep.convex) {
    std::cout << "iconvex: PASS (unconditional)\n";
  } else {
    std::cout << "iconvex: FAIL  witness "
              << (rep.witness ? rep.witness->str() : std::string("unknown"))
              << "  summand " << rep.witness_summand << "\n";
  }
  return rep.convex ? kOk : kFail;
}

int check_battery(Session& s, const Rational& max_degree, bool as_json) {
  const BatteryReport rep = equivalence_battery(s, max_degree);
  json out;
  out["command"] = "check";
  out["which"] = "battery";
  out["i_convex"] = rep.i_convex;
  out["e_nonnegative"] = rep.e_nonnegative;
  out["h1_vanishes"] = rep.h1_vanishes;
  out["limits_exist"] = rep.limits_exist;
  out["agree"] = rep.agree;
  out["global_convex"] = rep.global_convex;
  out["ball_matches_global"] = rep.ball_matches_global;
  out["first_witness"] = json_or_null(rep.first_witness);
  out["classes_scanned"] = rep.rows.size();
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "battery: i_convex=" << rep.i_convex
              << " e_nonnegative=" << rep.e_nonnegative
              << " h1_vanishes=" << rep.h1_vanishes
              << " limits_exist=" << rep.limits_exist << "\n";
    std::cout << "battery: " << (rep.agree ? "PASS" : "FAIL")
              << " (criteria " << (rep.agree ? "agree" : "disagree") << ", "
              << rep.rows.size() << " classes scanned)\n";
    if (!rep.ball_matches_global)
      std::cout << "battery: note: scan set is clean but the exact global "
                   "verdict differs; raise --max-degree\n";
  }
  return rep.agree ? kOk : kFail;
}

int check_positivity(Session& s, const Rational& max_degree, bool as_json) {
  const CriterionReport rep = positivity_criterion(s, max_degree);
  json out;
  out["command"] = "check";
  out["which"] = "positivity";
  const char* verdict = rep.verdict == CriterionVerdict::Pass ? "pass"
                        : rep.verdict == CriterionVerdict::Fail
                            ? "fail"
                            : "inconclusive";
  out["verdict"] = verdict;
  out["hypothesis_ok"] = rep.hypothesis_ok;
  out["hypothesis_detail"] =
      rep.hypothesis_ok ? json(nullptr) : json(rep.hypothesis_detail);
  out["conditional"] = rep.conditional;
  out["witness"] = json_or_null(rep.witness);
  out["instances"] = json::array();
  for (const auto& i : rep.instances) {
    json row;
    row["class"] = i.b.str();
    row["limit_exists"] = i.limit_exists;
    row["value_zero"] = i.value_model_zero;
    row["age_plus_codim"] = to_string(i.age_plus_codim);
    row["ok"] = i.verdict == CriterionVerdict::Pass;
    out["instances"].push_back(row);
  }
  out["note"] = rep.note;
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "positivity: ";
    if (rep.verdict == CriterionVerdict::Pass)
      std::cout << "PASS" << (rep.conditional ? " (conditional)" : "") << "\n";
    else if (rep.verdict == CriterionVerdict::Fail)
      std::cout << "FAIL  "
                << (rep.hypothesis_ok
                        ? "witness " + rep.witness->str()
                        : "hypothesis: " + rep.hypothesis_detail)
                << "\n";
    else
      std::cout << "INCONCLUSIVE  witness " << rep.witness->str() << "\n";
    for (const auto& i : rep.instances)
      std::cout << "  " << i.b.str() << "  limit_zero="
                << (i.limit_exists && i.value_model_zero)
                << "  age+codim=" << to_string(i.age_plus_codim) << "\n";
  }
  if (rep.verdict == CriterionVerdict::Pass) return kOk;
  if (rep.verdict == CriterionVerdict::Fail) return kFail;
  return kInconclusive;
}

int check_homogeneity(Session& s, const Rational& max_degree, bool as_json) {
  int checked = 0;
  std::optional<std::string> failure;
  std::optional<RationalClass> where;
  for (const auto& b : enumerate_effective(s.p, s.cones, max_degree)) {
    const Coefficient q = quasimap_coefficient(s, b);
    if (is_supported(q)) {
      const HomogeneityResult h = homogeneity_check(s.p, value_of(q), b);
      ++checked;
      if (!h.ok && !failure) {
        failure = h.detail;
        where = b;
      }
    }
    const SeriesElement tw = twisted_coefficient(s, b, 1);
    const HomogeneityResult h = homogeneity_check(s.p, tw, b);
    ++checked;
    if (!h.ok && !failure) {
      failure = h.detail;
      where = b;
    }
  }
  json out;
  out["command"] = "check";
  out["which"] = "homogeneity";
  out["pass"] = !failure.has_value();
  out["series_checked"] = checked;
  out["witness"] = json_or_null(where);
  out["detail"] = failure ? json(*failure) : json(nullptr);
  if (as_json)
    std::cout << out.dump(2) << "\n";
  else if (!failure)
    std::cout << "homogeneity: PASS (" << checked << " series)\n";
  else
    std::cout << "homogeneity: FAIL at " << where->str() << ": " << *failure
              << "\n";
  return failure ? kFail : kOk;
}

int check_mirror(Session& s, const Rational& max_degree, bool as_json) {
  const MirrorReport rep = mirror_map(s, max_degree);
  json out;
  out["command"] = "check";
  out["which"] = "mirror";
  const char* verdict = rep.verdict == MirrorReport::Verdict::Equal ? "equal"
                        : rep.verdict == MirrorReport::Verdict::Differs
                            ? "differs"
                            : "undetermined";
  out["verdict"] = verdict;
  out["witness"] = json_or_null(rep.witness);
  out["entries"] = json::array();
  for (const auto& e : rep.entries) {
    json row;
    row["class"] = e.b.str();
    row["mu"] = e.mu ? json(e.mu->str()) : json(nullptr);
    row["mu_tw"] = e.mu_tw ? json(e.mu_tw->str()) : json(nullptr);
    row["hole"] = e.hole ? json(*e.hole) : json(nullptr);
    row["equal"] = e.equal;
    out["entries"].push_back(row);
  }
  out["note"] = rep.note;
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    if (rep.verdict == MirrorReport::Verdict::Equal)
      std::cout << "mirror: EQUAL (" << rep.entries.size() << " classes)\n";
    else if (rep.verdict == MirrorReport::Verdict::Differs)
      std::cout << "mirror: DIFFERS  witness " << rep.witness->str() << "\n";
    else
      std::cout << "mirror: UNDETERMINED\n";
    std::cout << "note: " << rep.note << "\n";
  }
  if (rep.verdict == MirrorReport::Verdict::Equal) return kOk;
  if (rep.verdict == MirrorReport::Verdict::Differs) return kFail;
  return kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qmi: exact quasimap and equivariant twisted I-function calculator "
      "for abelian GIT presentations"};
  app.require_subcommand(1);

  std::string eff_file, eff_deg;
  bool eff_json = false;
  auto* eff = app.add_subcommand(
      "effective", "List effective classes up to a degree bound");
  eff->add_option("file", eff_file, "presentation JSON file")->required();
  eff->add_option("--max-degree", eff_deg, "rational degree bound")->required();
  eff->add_flag("--json", eff_json, "emit JSON");

  std::string if_file, if_cls, if_deg;
  bool if_json = false;
  IfunOptions if_opt;
  auto* ifn = app.add_subcommand(
      "ifun", "Evaluate I-function coefficients at classes");
  ifn->add_option("file", if_file, "presentation JSON file")->required();
  ifn->add_option("--class", if_cls, "single class, e.g. \"(-1/3, 1)\"");
  ifn->add_option("--max-degree", if_deg, "evaluate at all classes in a ball");
  ifn->add_flag("--twisted", if_opt.twisted,
                "equivariant twisted coefficient on the ambient quotient");
  ifn->add_flag("--restrict", if_opt.restrict_y,
                "restrict to the hypersurface model (requires --twisted)");
  ifn->add_flag("--limit", if_opt.limit,
                "nonequivariant limit (requires --twisted)");
  ifn->add_option("--kappa-order", if_opt.kappa_order,
                  "window for equivariant expansions (default 1)");
  ifn->add_flag("--json", if_json, "emit JSON");

  std::string ck_file, ck_which, ck_deg;
  bool ck_json = false;
  auto* ck = app.add_subcommand("check", "Run a decision procedure");
  ck->add_option("file", ck_file, "presentation JSON file")->required();
  ck->add_option("which", ck_which, "iconvex|battery|positivity|homogeneity|mirror")
      ->required()
      ->check(CLI::IsMember(
          {"iconvex", "battery", "positivity", "homogeneity", "mirror"}));
  ck->add_option("--max-degree", ck_deg, "rational degree bound")->required();
  ck->add_flag("--json", ck_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eff->parsed()) {
      Session s(presentation_from_string(slurp(eff_file)));
      return run_effective(s, parse_rational(eff_deg), eff_json);
    }
    if (ifn->parsed()) {
      if (if_cls.empty() == if_deg.empty())
        throw ParseError("ifun needs exactly one of --class or --max-degree");
      if ((if_opt.restrict_y || if_opt.limit) && !if_opt.twisted)
        throw ParseError("--restrict and --limit require --twisted");
      if (if_opt.kappa_order < 1)
        throw ParseError("--kappa-order must be at least 1");
      Session s(presentation_from_string(slurp(if_file)));
      std::optional<std::string> cls;
      std::optional<Rational> deg;
      if (!if_cls.empty())
        cls = if_cls;
      else
        deg = parse_rational(if_deg);
      return run_ifun(s, cls, deg, if_opt, if_json);
    }
    Session s(presentation_from_string(slurp(ck_file)));
    const Rational deg = parse_rational(ck_deg);
    if (ck_which == "iconvex") return check_iconvex(s, deg, ck_json);
    if (ck_which == "battery") return check_battery(s, deg, ck_json);
    if (ck_which == "positivity") return check_positivity(s, deg, ck_json);
    if (ck_which == "homogeneity") return check_homogeneity(s, deg, ck_json);
    return check_mirror(s, deg, ck_json);
  } catch (const NonPositiveDegreeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonPositive;
  } catch (const NotEffectiveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotEffective;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
