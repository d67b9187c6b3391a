#include "doctest.h"
#include "limitset.hpp"

#include <cmath>
#include <random>

#include "families.hpp"

using namespace kdim;

TEST_CASE("from_points dedups and flags elementary clouds") {
  auto two = PointCloud::from_points({{0, 0}, {1, 0}, {0, 0}}, "two");
  CHECK(two.points.size() == 2);
  CHECK(two.elementary);
  std::vector<Vec2> grid;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) grid.emplace_back(i * 0.1, j * 0.1);
  auto c = PointCloud::from_points(grid, "grid");
  CHECK(!c.elementary);
  CHECK(c.resolution == doctest::Approx(0.1));
  CHECK_THROWS_AS(PointCloud::from_points({}, ""), std::invalid_argument);
}

TEST_CASE("normalize scales the diameter to one") {
  auto c = PointCloud::from_points({{2, 1}, {6, 4}, {3, 1}}, "t");
  c.normalize();
  CHECK(c.normalized);
  CHECK(c.diameter() == doctest::Approx(1.0));
  CHECK(c.bbox.xmin == doctest::Approx(0.0));
  CHECK(c.bbox.ymin == doctest::Approx(0.0));
}

TEST_CASE("convex hull and diameter") {
  std::vector<Vec2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1},
                           {0.5, 0.5}, {0.2, 0.8}};
  auto hull = convex_hull(pts);
  CHECK(hull.size() == 4);
  CHECK(point_set_diameter(pts) == doctest::Approx(std::sqrt(2.0)));

  // Against brute force on random sets.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<Vec2> rp;
    for (int i = 0; i < 80; ++i) rp.emplace_back(u(rng), u(rng));
    double brute = 0.0;
    for (std::size_t i = 0; i < rp.size(); ++i)
      for (std::size_t j = i + 1; j < rp.size(); ++j)
        brute = std::max(brute, dist(rp[i], rp[j]));
    CHECK(point_set_diameter(rp) == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("schottky construction validates geometry") {
  CHECK_NOTHROW(schottky_from_circles(schottky4_circles()));
  // Overlapping circles are rejected.
  CHECK_THROWS_AS(schottky_from_circles(
                      {{Disk({0, 0}, 1.0), Disk({1.5, 0}, 1.0)}}),
                  std::invalid_argument);
}

TEST_CASE("conjugate_into_disk moves the unit circle") {
  auto g = family_group("modular");
  Disk target({3.0, -1.0}, 0.5);
  auto h = conjugate_into_disk(g, target);
  // The conjugated group fixes the target circle: images of boundary
  // points stay on it.
  for (const auto& m : h.generators) {
    for (int k = 0; k < 12; ++k) {
      double th = 2.0 * M_PI * k / 12.0;
      Complex z(target.center.x + target.radius * std::cos(th),
                target.center.y + target.radius * std::sin(th));
      auto w = apply(m, SpherePoint(z));
      REQUIRE(!w.is_infinity());
      CHECK(std::abs(std::abs(w.value() -
                              Complex(target.center.x, target.center.y)) -
                     target.radius) < 1e-9);
    }
  }
}

TEST_CASE("free product packing requires separated doubles") {
  auto g = family_group("modular");
  CHECK_THROWS_AS(
      free_product_packing(g, Disk({-1.5, 0}, 1.0), g, Disk({1.5, 0}, 1.0)),
      std::invalid_argument);
  auto fp = free_product_packing(g, Disk({-2.5, 0}, 1.0), g,
                                 Disk({2.5, 0}, 1.0));
  CHECK(fp.generators.size() == 4);
  CHECK(fp.mode == RelationMode::Dedupe);
}

TEST_CASE("modular limit samples land on the unit circle") {
  auto g = family_group("modular");
  auto cloud = sample_limit_set(g, 4000, SampleMethod::WordFixedPoints,
                                SpherePoint(Complex(0.0)));
  REQUIRE(cloud.points.size() > 200);
  CHECK(cloud.normalized);
  // Normalized circle: all samples at distance 1/2 from the center.
  Vec2 center(cloud.bbox.xmin + cloud.bbox.width() / 2.0,
              cloud.bbox.ymin + cloud.bbox.height() / 2.0);
  for (const auto& p : cloud.points)
    CHECK(std::abs(dist(p, center) - 0.5) < 1e-6);
}

TEST_CASE("orbit accumulation sampling works on schottky4") {
  auto g = family_group("schottky4");
  auto cloud = sample_limit_set(g, 5000, SampleMethod::OrbitAccumulation,
                                SpherePoint(Complex(0.0)));
  CHECK(cloud.points.size() > 100);
  CHECK(cloud.normalized);
}

TEST_CASE("uniform perfectness of a circle vs a two-point set") {
  std::vector<Vec2> circ;
  for (int i = 0; i < 4000; ++i) {
    double th = 2.0 * M_PI * i / 4000.0;
    circ.emplace_back(std::cos(th), std::sin(th));
  }
  auto cloud = PointCloud::from_points(circ, "circle");
  auto rep = uniformly_perfect(cloud, {0.5, 0.25}, {0.05, 0.1, 0.2, 0.3});
  CHECK(rep.eps_hat >= 0.2);

  auto two = PointCloud::from_points({{0, 0}, {2, 0}}, "pair");
  auto rep2 = uniformly_perfect(two, {0.5}, {0.05, 0.1});
  CHECK(rep2.eps_hat == 0.0);

  CHECK_THROWS_AS(uniformly_perfect(cloud, {5.0}, {0.1}),
                  std::invalid_argument);
}

TEST_CASE("horoball construction and classification") {
  // Synthetic limit set: the unit circle, normalized.
  std::vector<Vec2> circ;
  for (int i = 0; i < 5000; ++i) {
    double th = 2.0 * M_PI * i / 5000.0;
    circ.emplace_back(std::cos(th), std::sin(th));
  }
  auto cloud = PointCloud::from_points(circ, "circle");
  cloud.normalize();  // center (1/2, 1/2), radius 1/2

  // Parabolic fixing z0: I + t [[z0, -z0^2], [1, -z0]].
  Complex z0(1.0, 0.5);
  Moebius par(1.0 + z0, -z0 * z0, 1.0, 1.0 - z0);
  Vec2 tangency(1.0, 0.5);
  auto ball = Disk({0.75, 0.5}, 0.25);  // interior horoball
  auto h = make_horoball(ball, tangency, par);
  auto [eta, good] = classify_horoball(h, cloud, 0.1);
  CHECK(eta > 0.3);
  CHECK(good);

  // Against an area-dense cloud every boundary point is near the set:
  // the same construction is eta-bad.
  std::vector<Vec2> grid;
  for (int i = 0; i <= 150; ++i)
    for (int j = 0; j <= 150; ++j)
      grid.emplace_back(i / 150.0, j / 150.0);
  auto dense = PointCloud::from_points(grid, "grid");
  dense.normalize();
  Complex z1(0.45, 0.35);
  Moebius par2(1.0 + z1, -z1 * z1, 1.0, 1.0 - z1);
  auto buried = make_horoball(Disk({0.35, 0.35}, 0.1), {0.45, 0.35}, par2);
  auto [eta2, good2] = classify_horoball(buried, dense, 0.1);
  CHECK(eta2 < 0.1);
  CHECK(!good2);

  CHECK_THROWS_AS(make_horoball(Disk({0, 0}, 1.0), {5, 5}, par),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_horoball(ball, tangency, moebius_scaling(4.0)),
                  std::invalid_argument);
}
