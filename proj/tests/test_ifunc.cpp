#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qmi;

TEST_CASE("integrality of bundle pairings") {
  const Presentation p = th::quartic_bundle();
  CHECK_FALSE(is_i_nonnegative(p, th::cls(-1, 3, 1)));   // pairing -1
  CHECK(is_i_nonnegative(p, th::cls(0, 0, 1)));
  CHECK(is_i_nonnegative(p, th::cls(-1, 3, 3)));         // pairing -1/3
  CHECK_FALSE(is_i_nonnegative(p, th::cls(-2, 6, 1)));   // pairing -2
  CHECK(is_i_nonnegative(p, th::cls(0, 1, 1)));          // pairing 1
}

TEST_CASE("coefficient values in the quartic-bundle data") {
  Session s(th::quartic_bundle());

  auto str_of = [&](long a, long b, long den) {
    const Coefficient c = quasimap_coefficient(s, th::cls(a, b, den));
    REQUIRE(is_supported(c));
    return value_of(c).str();
  };

  CHECK(str_of(0, 0, 1) == "1");
  CHECK(str_of(-1, 3, 3) == "z^-1");
  CHECK(str_of(-2, 6, 3) == "1/2 z^-2");
  CHECK(str_of(1, 0, 3) == "12 z^-2");
  CHECK(str_of(0, 1, 1) == "-3 t1^2 z^-3 + t1 z^-2 + z^-1");
  CHECK(str_of(-1, 3, 1) == "1/6 z^-3 [F]");
  CHECK(str_of(-2, 6, 1) == "1/720 z^-4 [F]");

  SECTION("structure of the pushforward-supported value") {
    const Coefficient c = quasimap_coefficient(s, th::cls(-1, 3, 1));
    const SeriesElement& v = value_of(c);
    CHECK(v.tag.kind == ClassKind::SupportedOnF);
    CHECK(v.tag.codim == 2);
    CHECK(v.tag.age == 0);
    CHECK_FALSE(v.kappa_cutoff.has_value());
    REQUIRE(v.entries.size() == 1);
    const auto& [key, stored] = *v.entries.begin();
    CHECK(key.first == -3);
    CHECK(key.second == 0);
    GradedClass cls = stored;
    CHECK(cls.component(0)[0] == make_rational(1, 6));
  }

  SECTION("fundamental-kind values live on the sector's ring") {
    const Coefficient c = quasimap_coefficient(s, th::cls(-1, 3, 3));
    const SeriesElement& v = value_of(c);
    CHECK(v.tag.kind == ClassKind::Fundamental);
    CHECK(v.tag.age == make_rational(2, 3));
    CHECK(v.tag.ring->top_degree() == 0);
  }

  SECTION("ineffective classes are rejected") {
    CHECK_THROWS_AS(quasimap_coefficient(s, th::cls(1, 0, 2)),
                    NotEffectiveError);
    CHECK_THROWS_AS(twisted_coefficient(s, th::cls(-1, 0, 1), 1),
                    NotEffectiveError);
  }
}

TEST_CASE("equivariant twisted coefficients") {
  Session s(th::quartic_bundle());

  SECTION("exact pole at the counterexample class") {
    const SeriesElement tw = twisted_coefficient(s, th::cls(-1, 3, 1), 1);
    CHECK(tw.str() == "1/6 t1^3 z^-3 k^-1");
    CHECK_FALSE(tw.kappa_cutoff.has_value());  // exact, no window needed

    const KappaLimit ambient = kappa_limit(tw);
    CHECK_FALSE(ambient.exists);
    CHECK(ambient.principal.str() == "1/6 t1^3 z^-3 k^-1");

    const SeriesElement restricted = restrict_to_y(s, th::cls(-1, 3, 1), tw);
    CHECK(restricted.is_zero());
    const KappaLimit lim = kappa_limit(restricted);
    CHECK(lim.exists);
    CHECK(lim.value.entries.empty());
  }

  SECTION("windowed value at the degree-two pole") {
    const SeriesElement tw = twisted_coefficient(s, th::cls(-2, 6, 1), 1);
    CHECK(tw.str() ==
          "1/720 t1^3 z^-5 + 1/720 t1^3 z^-4 k^-1 + O(k^1)");
    REQUIRE(tw.kappa_cutoff.has_value());
    CHECK(*tw.kappa_cutoff == 1);
    CHECK_FALSE(kappa_limit(tw).exists);
    const KappaLimit lim =
        kappa_limit(restrict_to_y(s, th::cls(-2, 6, 1), tw));
    CHECK(lim.exists);
    CHECK(lim.value.entries.empty());
  }

  SECTION("limits agree with the untwisted values at friendly classes") {
    ConeCache cache;
    for (const auto& b : enumerate_effective(s.p, s.cones, Rational(2))) {
      if (!is_i_nonnegative(s.p, b)) continue;
      const Coefficient q = quasimap_coefficient(s, b);
      REQUIRE(is_supported(q));
      const SeriesElement tw = twisted_coefficient(s, b, 1);
      const KappaLimit lim = kappa_limit(restrict_to_y(s, b, tw));
      REQUIRE(lim.exists);
      CHECK(lim.value == value_of(q));
    }
  }

  SECTION("restriction requires a fundamental-kind value") {
    const Coefficient c = quasimap_coefficient(s, th::cls(-1, 3, 1));
    CHECK_THROWS_AS(restrict_to_y(s, th::cls(-1, 3, 1), value_of(c)), Error);
  }
}

TEST_CASE("uncertified pushforward cases are flagged, not faked") {
  // A bundle summand pairing in Z_{>=0} alongside a negative-integral one
  // leaves the stratum contribution uncertified.
  Presentation p;
  p.x_weights = {{1}, {1}};
  p.e_weights = {{-1}, {0}};
  p.theta = {1};
  Poly zero(2);
  Poly constant(2);
  constant.add_term({0, 0}, Rational(1));
  p.section = std::vector<Poly>{zero, constant};
  p.fano_asserted = false;
  REQUIRE(validate(p).ok());

  Session s(p);
  const RationalClass b = th::cls1(1, 1);
  const Coefficient c = quasimap_coefficient(s, b);
  REQUIRE_FALSE(is_supported(c));
  CHECK_FALSE(std::get<Unsupported>(c).reason.empty());
}

TEST_CASE("mirror transformation through degree two") {
  Session s(th::quartic_bundle());
  const MirrorReport rep = mirror_map(s, Rational(2));
  CHECK(rep.verdict == MirrorReport::Verdict::Equal);
  CHECK_FALSE(rep.witness.has_value());
  REQUIRE(rep.entries.size() == 16);
  int nonzero = 0;
  for (const auto& e : rep.entries) {
    CHECK(e.equal);
    REQUIRE(e.mu.has_value());
    REQUIRE(e.mu_tw.has_value());
    if (!e.mu->is_zero()) {
      ++nonzero;
      CHECK(e.mu->str() == "1");
      const bool expected = e.b == th::cls(-1, 3, 3) || e.b == th::cls(0, 1, 1);
      CHECK(expected);
    }
  }
  CHECK(nonzero == 2);
  CHECK(rep.note.find("det(X) - det(E)") != std::string::npos);
}

TEST_CASE("grading identity on computed coefficients") {
  Session s(th::quartic_bundle());
  for (const auto& b : enumerate_effective(s.p, s.cones, Rational(2))) {
    const Coefficient q = quasimap_coefficient(s, b);
    if (is_supported(q)) CHECK(homogeneity_check(s.p, value_of(q), b).ok);
    const SeriesElement tw = twisted_coefficient(s, b, 1);
    CHECK(homogeneity_check(s.p, tw, b).ok);
    CHECK(homogeneity_check(s.p, restrict_to_y(s, b, tw), b).ok);
  }
}

TEST_CASE("ambient model has the expected dimensions") {
  Session s(th::quartic_bundle());
  const SectorDescriptor& d = sector_descriptor(s, th::cls(0, 0, 1));
  REQUIRE(d.ambient_ring->top_degree() == 3);
  for (int i = 0; i <= 3; ++i) CHECK(d.ambient_ring->dim(i) == 1);
  CHECK(d.y_ring->top_degree() == 2);
}
