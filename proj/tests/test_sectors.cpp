#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>

#include "helpers.hpp"

using namespace qmi;

TEST_CASE("group elements from classes") {
  const GroupElement g = GroupElement::from_class(th::cls(-1, 3, 3));
  CHECK(g.str() == "(2/3, 0)");
  CHECK(g.inverse().str() == "(1/3, 0)");
  CHECK(g.compose(g.inverse()).is_identity());
  CHECK(GroupElement::from_class(th::cls(0, 5, 1)).is_identity());

  // from_class is a homomorphism
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    auto rnd = [&] {
      return th::cls(static_cast<long>(rng() % 13) - 6,
                     static_cast<long>(rng() % 13) - 6,
                     1 + static_cast<long>(rng() % 3));
    };
    const RationalClass a = rnd(), b = rnd();
    CHECK(GroupElement::from_class(a + b) ==
          GroupElement::from_class(a).compose(GroupElement::from_class(b)));
  }
}

TEST_CASE("ages in the quartic-bundle data") {
  const Presentation p = th::quartic_bundle();
  ConeCache cache;
  const GroupElement id = GroupElement::from_class(th::cls(0, 0, 1));
  const GroupElement g1 = GroupElement::from_class(th::cls(1, 0, 3));
  const GroupElement g2 = GroupElement::from_class(th::cls(2, 0, 3));
  CHECK(age(p, cache, id) == 0);
  CHECK(age(p, cache, g1) == make_rational(2, 3));
  CHECK(age(p, cache, g2) == make_rational(4, 3));
  // age(g) + age(g^-1) counts the moving coordinates minus the moving
  // bundle summands; here 3 - 1 = 2.
  CHECK(Rational(age(p, cache, g1) + age(p, cache, g1.inverse())) == 2);

  // a group element whose fixed locus is unstable has no age
  const GroupElement bad = GroupElement::from_class(
      RationalClass({Rational(0), make_rational(1, 2)}));
  CHECK_THROWS_AS(age(p, cache, bad), EmptyFixedLocusError);
}

TEST_CASE("graded model of the ambient quotient") {
  const Presentation p = th::quartic_bundle();
  ConeCache cache;
  SectorRing ring(2, sr_relations(p, cache, full_support(5)), std::nullopt);
  REQUIRE(ring.top_degree() == 3);
  for (int d = 0; d <= 3; ++d) CHECK(ring.dim(d) == 1);
  // normal form: t2 reduces away, t1 spans each degree
  REQUIRE(ring.basis(1).size() == 1);
  CHECK(ring.basis(1)[0] == Exponents{1, 0});
  const QVector red = ring.reduce_monomial({0, 1});
  REQUIRE(red.size() == 1);
  CHECK(red[0] == 0);  // t2 is itself a relation here
}

TEST_CASE("graded model of the weighted projective space") {
  const Presentation p = th::p113_plain();
  ConeCache cache;
  SectorRing ring(1, sr_relations(p, cache, full_support(3)), std::nullopt);
  REQUIRE(ring.top_degree() == 2);
  CHECK(ring.dim(0) == 1);
  CHECK(ring.dim(1) == 1);
  CHECK(ring.dim(2) == 1);
  CHECK(ring.dim(3) == 0);
}

TEST_CASE("truncation and transfer between models") {
  const Presentation p = th::quartic_bundle();
  ConeCache cache;
  const auto rels = sr_relations(p, cache, full_support(5));
  auto big = std::make_shared<const SectorRing>(2, rels, std::nullopt);
  auto small = std::make_shared<const SectorRing>(2, rels, 1);
  CHECK(small->top_degree() == 1);
  CHECK(big->same_relations(*small));
  CHECK_FALSE(big->same_model(*small));

  GradedClass x = GradedClass::linear(*big, {Int(1), Int(0)});
  GradedClass one = GradedClass::one(*big);
  GradedClass y = (one + x).pow(3);  // 1 + 3t + 3t^2 + t^3
  GradedClass moved = y.mapped_to(*small);
  CHECK(moved.component(0)[0] == 1);
  CHECK(moved.component(1)[0] == 3);
  CHECK(moved.comps.count(2) == 0);  // beyond the truncation
}

TEST_CASE("graded class arithmetic") {
  const Presentation p = th::quartic_bundle();
  ConeCache cache;
  SectorRing ring(2, sr_relations(p, cache, full_support(5)), std::nullopt);
  const GradedClass one = GradedClass::one(ring);
  const GradedClass h = GradedClass::linear(ring, {Int(1), Int(0)});

  GradedClass sq = (one + h) * (one + h);
  CHECK(sq.component(0)[0] == 1);
  CHECK(sq.component(1)[0] == 2);
  CHECK(sq.component(2)[0] == 1);

  CHECK((h.pow(2) * h.pow(2)).is_zero());  // degree 4 vanishes
  CHECK((h * Rational(0)).is_zero());
  CHECK(((h - h)).is_zero());
  CHECK(h.pow(3) == h * h * h);

  // from_poly agrees with explicit products: t2 dies, so (t1 + t2)^2 = t1^2
  Poly q(2);
  q.add_term({1, 0}, Rational(1));
  q.add_term({0, 1}, Rational(1));
  const GradedClass viaPoly =
      GradedClass::from_poly(ring, q) * GradedClass::from_poly(ring, q);
  CHECK(viaPoly == h * h);
}

TEST_CASE("model growth is capped") {
  // a free polynomial ring never reaches dimension zero
  CHECK_THROWS_AS(SectorRing(1, {}, std::nullopt), ModelError);
  SectorRing capped(1, {}, 5);
  CHECK(capped.top_degree() == 5);
  for (int d = 0; d <= 5; ++d) CHECK(capped.dim(d) == 1);
}

TEST_CASE("sector descriptors") {
  Session s(th::quartic_bundle());

  SECTION("the counterexample class") {
    const SectorDescriptor& d = sector_descriptor(s, th::cls(-1, 3, 1));
    CHECK(d.g_sector.is_identity());
    CHECK(d.age_sector == 0);
    CHECK(d.g_support == full_support(5));
    CHECK(d.x_dim == 3);
    CHECK(d.e_fixed_cut == 1);
    CHECK(d.y_dim == 2);
    CHECK(d.f_support == 0b11000u);
    CHECK(d.f_x_dim == 0);
    CHECK(d.f_y_dim == 0);
    CHECK(d.f_codim_in_y == 2);
    CHECK(d.section_vanishes_on_f);
    CHECK(d.e_nonneg_count == 0);
    CHECK(d.ambient_ring->top_degree() == 3);
    CHECK(d.y_ring->top_degree() == 2);
    CHECK(d.f_ring->top_degree() == 0);
  }

  SECTION("a fractional class on the orbifold sector") {
    const SectorDescriptor& d = sector_descriptor(s, th::cls(-1, 3, 3));
    CHECK(d.g_sector.str() == "(1/3, 0)");
    CHECK(d.age_sector == make_rational(2, 3));
    CHECK(d.g_support == 0b11000u);
    CHECK(d.x_dim == 0);
    CHECK(d.y_dim == 0);
    CHECK(d.f_support == 0b11000u);
    CHECK(d.f_codim_in_y == 0);
    CHECK(d.section_vanishes_on_f);
    CHECK(d.e_nonneg_count == 0);
    CHECK(d.ambient_ring->top_degree() == 0);
  }

  SECTION("descriptors are cached") {
    const SectorDescriptor& a = sector_descriptor(s, th::cls(0, 1, 1));
    const SectorDescriptor& b = sector_descriptor(s, th::cls(0, 1, 1));
    CHECK(&a == &b);
  }
}

TEST_CASE("sessions validate on construction") {
  Presentation bad;
  bad.x_weights = {{1, 0}, {1, 0}, {0, 1}};
  bad.theta = {1, 0};
  CHECK_THROWS_AS(Session(bad), ValidationError);
}
