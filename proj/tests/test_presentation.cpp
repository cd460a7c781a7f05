#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"

using namespace qmi;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("rational helpers") {
  CHECK(to_string(make_rational(3, 6)) == "1/2");
  CHECK(to_string(make_rational(-4, 2)) == "-2");
  CHECK(parse_rational("5/3") == make_rational(5, 3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0") == 0);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("a"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);

  CHECK(floor_int(make_rational(-4, 3)) == -2);
  CHECK(ceil_int(make_rational(-4, 3)) == -1);
  CHECK(fractional_part(make_rational(-1, 3)) == make_rational(2, 3));
  CHECK(fractional_part(Rational(2)) == 0);
  CHECK(is_negative_integer(Rational(-1)));
  CHECK_FALSE(is_negative_integer(make_rational(-1, 3)));
  CHECK(is_nonnegative_integer(Rational(0)));
  CHECK_FALSE(is_nonnegative_integer(Rational(-2)));
}

TEST_CASE("polynomials") {
  Poly s(3);
  s.add_term({1, 0, 2}, Rational(2));
  s.add_term({0, 3, 0}, Rational(1));
  CHECK(s.degree() == 3);
  CHECK(s.is_homogeneous());
  s.add_term({1, 0, 0}, Rational(5));
  CHECK_FALSE(s.is_homogeneous());

  // Restriction kills monomials that use banned variables.
  Poly t(2);
  t.add_term({2, 0}, Rational(1));
  t.add_term({0, 1}, Rational(1));
  const Poly only_second = t.restricted_to({false, true});
  CHECK(only_second.terms.size() == 1);
  CHECK(only_second.terms.count({0, 1}) == 1);
  CHECK(t.restricted_to({false, false}).is_zero());
}

TEST_CASE("pairing is bilinear") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    auto rnd_class = [&] {
      QVector v;
      for (int i = 0; i < k; ++i)
        v.push_back(make_rational(static_cast<long>(rng() % 11) - 5,
                                  1 + static_cast<long>(rng() % 4)));
      return RationalClass(v);
    };
    IVector w;
    for (int i = 0; i < k; ++i)
      w.push_back(Int(static_cast<long>(rng() % 11) - 5));
    const RationalClass b1 = rnd_class(), b2 = rnd_class();
    const Rational q = make_rational(static_cast<long>(rng() % 9) - 4, 3);
    CHECK(pairing(b1 + b2, w) == Rational(pairing(b1, w) + pairing(b2, w)));
    CHECK(pairing(b1 * q, w) == Rational(q * pairing(b1, w)));
  }
}

TEST_CASE("class parsing and ordering") {
  CHECK(parse_class("(-1/3, 1)", 2) == th::cls(-1, 3, 3));
  CHECK(parse_class("(-1/3, 1)", 2).str() == "(-1/3, 1)");
  CHECK(parse_class("(2)", 1) == th::cls1(2, 1));
  CHECK_THROWS_AS(parse_class("(1, 2)", 1), ParseError);
  CHECK(parse_class("1, 2", 2) == th::cls(1, 2, 1));  // parens optional
  CHECK_THROWS_AS(parse_class("(a, 2)", 2), ParseError);
  CHECK(th::cls(-1, 3, 3) < th::cls(0, 1, 1));
  CHECK_FALSE(th::cls(0, 1, 1) < th::cls(0, 1, 1));
}

TEST_CASE("presentation accessors") {
  const Presentation p = th::quartic_bundle();
  CHECK(p.n() == 5);
  CHECK(p.k() == 2);
  CHECK(p.r() == 1);
  const IVector dx = p.det_x();
  CHECK((dx[0] == 6 && dx[1] == 2));
  const IVector dc = p.degree_character();
  CHECK((dc[0] == 2 && dc[1] == 1));
  CHECK(validate(p).ok());
}

TEST_CASE("json round trip matches the builder") {
  const Presentation from_file =
      presentation_from_string(slurp(th::data_path("sec4.json")));
  const Presentation built = th::quartic_bundle();
  CHECK(presentation_to_json(from_file) == presentation_to_json(built));
  CHECK(validate(from_file).ok());

  // to_json -> from_json is the identity on the serialized form
  const auto j = presentation_to_json(built);
  CHECK(presentation_to_json(presentation_from_json(j)) == j);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(presentation_from_string("not json"), ParseError);
  CHECK_THROWS_AS(presentation_from_string("[1,2]"), ParseError);
  CHECK_THROWS_AS(presentation_from_string(R"({"theta":[1]})"), ParseError);
  CHECK_THROWS_AS(
      presentation_from_string(R"({"x_weights":[[1],[1,2]],"theta":[1]})"),
      ParseError);
  CHECK_THROWS_AS(
      presentation_from_string(R"({"x_weights":[[1,0]],"theta":[1]})"),
      ParseError);
  CHECK_THROWS_AS(
      presentation_from_string(
          R"({"x_weights":[[1]],"theta":[1],"section":[[{"coeff":"1","exponents":[0,0]}]]})"),
      ParseError);
  CHECK_THROWS_AS(
      presentation_from_string(
          R"({"x_weights":[[1]],"theta":[1],"section":[[{"coeff":"x","exponents":[1]}]]})"),
      ParseError);
}

TEST_CASE("validation rejects bad inputs") {
  SECTION("zero theta") {
    Presentation p = th::p113_plain();
    p.theta = {0};
    const auto rep = validate(p);
    CHECK_FALSE(rep.ok());
    CHECK_THROWS_AS(Session(p), ValidationError);
  }
  SECTION("positive dimensional stabilizer") {
    Presentation p;
    p.x_weights = {{1, 0}, {1, 0}, {0, 1}};
    p.theta = {1, 0};
    const auto rep = validate(p);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& issue : rep.issues)
      if (issue.code == "positive_dim_stabilizer") found = true;
    CHECK(found);
  }
  SECTION("section weight mismatch") {
    Presentation p = th::quartic_bundle();
    Poly bad(5);
    bad.add_term({1, 0, 0, 0, 0}, Rational(1));  // weight (1,0), not (4,1)
    p.section = std::vector<Poly>{bad};
    CHECK_FALSE(validate(p).ok());
  }
  SECTION("section arity mismatch") {
    Presentation p = th::quartic_bundle();
    p.section = std::vector<Poly>{};
    CHECK_FALSE(validate(p).ok());
  }
  SECTION("empty semistable locus") {
    Presentation p;
    p.x_weights = {{1}, {2}};
    p.theta = {-1};
    CHECK_FALSE(validate(p).ok());
  }
  SECTION("good inputs pass") {
    CHECK(validate(th::quartic_bundle()).ok());
    CHECK(validate(th::convex_not_iconvex()).ok());
    CHECK(validate(th::p113(-1)).ok());
    CHECK(validate(th::p113_plain()).ok());
    CHECK(validate(th::improper()).ok());
  }
}
