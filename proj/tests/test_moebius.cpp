#include "doctest.h"
#include "moebius.hpp"

#include <cmath>

using namespace kdim;

TEST_CASE("construction normalizes the determinant") {
  Moebius m(Complex(2.0), Complex(0.0), Complex(0.0), Complex(2.0));
  CHECK(m.is_identity());
  CHECK(m.a() == Complex(1.0));
  Moebius t(Complex(3.0), Complex(3.0), Complex(0.0), Complex(3.0));
  Complex det = t.a() * t.d() - t.b() * t.c();
  CHECK(std::abs(det - Complex(1.0)) < 1e-12);
}

TEST_CASE("singular matrices are rejected") {
  CHECK_THROWS_AS(Moebius(Complex(1.0), Complex(2.0), Complex(2.0),
                          Complex(4.0)),
                  std::invalid_argument);
}

TEST_CASE("canonical sign identifies m and -m") {
  Moebius m(Complex(1.0), Complex(2.0), Complex(0.5), Complex(2.0));
  Moebius neg(-m.a() * 3.0, -m.b() * 3.0, -m.c() * 3.0, -m.d() * 3.0);
  CHECK(m.dist(neg) < 1e-12);
  CHECK(m.a() == neg.a());
}

TEST_CASE("serialize round trips exactly") {
  Moebius m(Complex(0.3, -1.2), Complex(2.0, 0.25), Complex(-0.5, 0.75),
            Complex(1.0, 0.125));
  Moebius back = Moebius::parse(m.serialize());
  CHECK(m.dist(back) == 0.0);
  CHECK_THROWS_AS(Moebius::parse("1 2 3"), std::invalid_argument);
}

TEST_CASE("compose agrees with the sphere action") {
  Moebius m1 = moebius_translation(Complex(1.0, 2.0));
  Moebius m2 = moebius_scaling(Complex(0.5, 0.25));
  Complex z(0.7, -0.3);
  auto lhs = apply(compose(m1, m2), SpherePoint(z));
  auto rhs = apply(m1, apply(m2, SpherePoint(z)));
  CHECK(chordal(lhs, rhs) < 1e-12);
}

TEST_CASE("inverse composes to the identity") {
  Moebius m(Complex(1.0, 0.5), Complex(-2.0), Complex(0.25), Complex(1.0));
  CHECK(compose(m, m.inverse()).is_identity());
  CHECK(compose(m.inverse(), m).is_identity());
}

TEST_CASE("infinity conventions") {
  Moebius t = moebius_translation(1.0);
  CHECK(apply(t, SpherePoint::infinity()).is_infinity());
  Moebius s(Complex(0.0), Complex(-1.0), Complex(1.0), Complex(0.0));  // -1/z
  CHECK(apply(s, SpherePoint(Complex(0.0))).is_infinity());
  auto w = apply(s, SpherePoint::infinity());
  CHECK(!w.is_infinity());
  CHECK(std::abs(w.value()) < 1e-12);
}

TEST_CASE("chordal metric oracle values") {
  CHECK(chordal(SpherePoint(Complex(0.0)), SpherePoint::infinity()) ==
        doctest::Approx(2.0));
  CHECK(chordal(SpherePoint(Complex(0.0)), SpherePoint(Complex(1.0))) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(chordal(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
}

TEST_CASE("displacement oracles") {
  CHECK(displacement(Moebius::identity()) == doctest::Approx(0.0));
  // frob2 of the unit translation is 3: rho = arccosh(3/2).
  CHECK(displacement(moebius_translation(1.0)) ==
        doctest::Approx(0.9624236501192069).epsilon(1e-12));
  // z -> 4z has axis through the basepoint: rho = 2 log 2.
  CHECK(displacement(moebius_scaling(4.0)) ==
        doctest::Approx(1.3862943611198906).epsilon(1e-12));
}

TEST_CASE("displacement is symmetric under inverse") {
  Moebius m(Complex(1.2, 0.1), Complex(0.3), Complex(-0.2, 0.4), Complex(1.0));
  CHECK(displacement(m) == doctest::Approx(displacement(m.inverse())));
}

TEST_CASE("classification") {
  CHECK(classify(Moebius::identity()) == TransformClass::Identity);
  CHECK(classify(moebius_translation(1.0)) == TransformClass::Parabolic);
  CHECK(classify(moebius_scaling(4.0)) == TransformClass::Loxodromic);
  // Rotation by 1 radian: diag(e^{i/2}, e^{-i/2}).
  Complex r = std::polar(1.0, 0.5);
  CHECK(classify(Moebius(r, Complex(0.0), Complex(0.0), 1.0 / r)) ==
        TransformClass::Elliptic);
  // Loxodromic with complex trace.
  CHECK(classify(moebius_scaling(Complex(2.0, 1.0))) ==
        TransformClass::Loxodromic);
}

TEST_CASE("fixed points") {
  auto fp_t = fixed_points(moebius_translation(1.0));
  REQUIRE(fp_t.size() == 1);
  CHECK(fp_t[0].is_infinity());

  auto fp_s = fixed_points(moebius_scaling(4.0));
  REQUIRE(fp_s.size() == 2);
  bool has_zero = false, has_inf = false;
  for (const auto& p : fp_s) {
    if (p.is_infinity()) has_inf = true;
    else if (std::abs(p.value()) < 1e-12) has_zero = true;
  }
  CHECK(has_zero);
  CHECK(has_inf);

  CHECK_THROWS_AS(fixed_points(Moebius::identity()), std::invalid_argument);

  // Fixed points actually are fixed.
  Moebius m(Complex(1.25), Complex(0.75), Complex(0.75), Complex(1.25));
  for (const auto& p : fixed_points(m))
    CHECK(chordal(apply(m, p), p) < 1e-9);
}

TEST_CASE("pairing map sends exterior to interior") {
  Complex c1(-2.0, 0.0), c2(2.0, 0.0);
  Moebius g = moebius_pairing(c1, 1.0, c2, 1.0);
  for (int k = 0; k < 8; ++k) {
    double th = 2.0 * M_PI * k / 8.0;
    Complex z = c1 + 1.5 * Complex(std::cos(th), std::sin(th));
    auto w = apply(g, SpherePoint(z));
    REQUIRE(!w.is_infinity());
    CHECK(std::abs(w.value() - c2) < 1.0);
  }
  // Boundary maps to boundary.
  Complex zb = c1 + Complex(1.0, 0.0);
  CHECK(std::abs(std::abs(apply(g, SpherePoint(zb)).value() - c2) - 1.0) <
        1e-12);
}
