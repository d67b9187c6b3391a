#include "doctest.h"
#include "groups.hpp"

#include <cmath>
#include <limits>

using namespace kdim;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

GroupPresentation free_two_gen() {
  return GroupPresentation::make(
      {moebius_translation(1.0), moebius_scaling(4.0)});
}

}  // namespace

TEST_CASE("presentation rejects identity generators") {
  CHECK_THROWS_AS(GroupPresentation::make({Moebius::identity()}),
                  std::invalid_argument);
}

TEST_CASE("presentation serialize round trip") {
  auto g = free_two_gen();
  auto back = GroupPresentation::parse(g.serialize());
  REQUIRE(back.generators.size() == 2);
  CHECK(back.mode == RelationMode::Free);
  CHECK(back.generators[0].dist(g.generators[0]) == 0.0);
  CHECK_THROWS_AS(GroupPresentation::parse("generators 2 free\n1 0 0 0 0 0 1 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(GroupPresentation::parse("generators 1 weird\n"),
                  std::invalid_argument);
}

TEST_CASE("free group ball sizes are 2*3^L - 1") {
  auto g = free_two_gen();
  // Depth L ball of the free group on two generators.
  for (int L : {1, 2, 3, 4, 5}) {
    auto orbit = enumerate_orbit(g, L, kInf, 1u << 20);
    CHECK(orbit.points.size() ==
          static_cast<std::size_t>(2 * std::pow(3, L) - 1));
    CHECK(orbit.max_depth_reached == L);
    CHECK(!orbit.budget_hit);
    CHECK(orbit.depth_hit);
  }
}

TEST_CASE("words are freely reduced and reconstructible") {
  auto g = free_two_gen();
  auto orbit = enumerate_orbit(g, 4, kInf, 1u << 20);
  for (std::size_t i = 0; i < orbit.points.size(); ++i) {
    auto w = orbit.word(i);
    CHECK(static_cast<int>(w.size()) == orbit.points[i].depth);
    for (std::size_t k = 1; k < w.size(); ++k) CHECK(w[k] != -w[k - 1]);
    // The stored matrix is the product of the word letters.
    Moebius prod;
    for (int s : w) {
      const Moebius& gen = g.generators[std::abs(s) - 1];
      prod = compose(prod, s > 0 ? gen : gen.inverse());
    }
    CHECK(prod.dist(orbit.points[i].matrix) < 1e-9);
  }
}

TEST_CASE("budget flag fires") {
  auto g = free_two_gen();
  auto orbit = enumerate_orbit(g, 10, kInf, 100);
  CHECK(orbit.budget_hit);
  CHECK(orbit.points.size() == 100);
}

TEST_CASE("dedupe collapses coinciding elements") {
  // Two copies of the same translation: the free group would grow like
  // 4*3^(L-1), the quotient is just the powers of T.
  auto g = GroupPresentation::make(
      {moebius_translation(1.0), moebius_translation(1.0)},
      RelationMode::Dedupe);
  auto orbit = enumerate_orbit(g, 3, kInf, 1u << 16);
  CHECK(orbit.points.size() == 7);  // T^-3 .. T^3
}

TEST_CASE("pruning keeps the parabolic orbit ball complete") {
  auto g = GroupPresentation::make({moebius_translation(1.0)});
  double R = 10.0;
  auto orbit = enumerate_orbit(g, 100000, R, 1u << 22);
  // rho(T^n) = arccosh(1 + n^2/2) <= R iff n <= sqrt(2 cosh R - 2).
  auto nmax = static_cast<long>(std::sqrt(2.0 * std::cosh(R) - 2.0));
  std::size_t expect = 0;
  for (const auto& p : orbit.points)
    if (p.rho <= R) ++expect;
  CHECK(expect == static_cast<std::size_t>(2 * nmax + 1));

  // Counts match e^{R/2} growth: N(R)/e^{R/2} -> 2.
  auto t = orbit_counts(orbit.points, {R});
  double ratio = static_cast<double>(t.counts[0]) / std::exp(R / 2.0);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("orbit_counts is monotone and validates input") {
  auto g = free_two_gen();
  auto orbit = enumerate_orbit(g, 6, kInf, 1u << 20);
  auto t = orbit_counts(orbit.points, {1.0, 2.0, 4.0, 8.0});
  for (std::size_t i = 1; i < t.counts.size(); ++i)
    CHECK(t.counts[i] >= t.counts[i - 1]);
  CHECK_THROWS_AS(orbit_counts(orbit.points, {2.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("sphere orbit applies every word to the basepoint") {
  auto g = free_two_gen();
  auto pts = sphere_orbit(g, SpherePoint(Complex(0.5, 0.5)), 3, 1u << 16);
  CHECK(pts.size() == 2 * 27 - 1);
  CHECK(pts[0].depth == 0);
  CHECK(std::abs(pts[0].point.value() - Complex(0.5, 0.5)) < 1e-15);
}
