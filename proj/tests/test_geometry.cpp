#include "doctest.h"
#include "geometry.hpp"

#include <limits>
#include <random>

using namespace kdim;

namespace {

std::vector<Vec2> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
  return pts;
}

}  // namespace

TEST_CASE("bbox and rect distance") {
  auto box = BBox::of({{0, 0}, {2, 1}, {-1, 3}});
  CHECK(box.xmin == -1);
  CHECK(box.xmax == 2);
  CHECK(box.ymax == 3);
  CHECK(rect_point_dist(0, 0, 1, 1, {0.5, 0.5}) == 0.0);
  CHECK(rect_point_dist(0, 0, 1, 1, {2.0, 0.5}) == doctest::Approx(1.0));
  CHECK(rect_point_dist(0, 0, 1, 1, {2.0, 2.0}) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("disk gap") {
  CHECK(disk_gap({{0, 0}, 1}, {{3, 0}, 1}) == doctest::Approx(1.0));
  CHECK(disk_gap({{0, 0}, 1}, {{1, 0}, 1}) < 0.0);
}

TEST_CASE("kd-tree nearest matches brute force") {
  auto pts = random_points(500, 11);
  PointIndex index(pts);
  auto queries = random_points(200, 12);
  for (const auto& q : queries) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, dist(p, q));
    CHECK(index.nearest(q) == doctest::Approx(best).epsilon(1e-12));
  }
  // skip_self ignores one zero-distance copy.
  CHECK(index.nearest(pts[42]) == 0.0);
  CHECK(index.nearest(pts[42], /*skip_self=*/true) > 0.0);
}

TEST_CASE("kd-tree rect distance matches brute force") {
  auto pts = random_points(400, 21);
  PointIndex index(pts);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int t = 0; t < 100; ++t) {
    double x0 = u(rng), y0 = u(rng);
    double x1 = x0 + 0.3, y1 = y0 + 0.2;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts)
      best = std::min(best, rect_point_dist(x0, y0, x1, y1, p));
    CHECK(index.rect_dist(x0, y0, x1, y1) ==
          doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("kd-tree annulus and max-dist queries match brute force") {
  auto pts = random_points(300, 31);
  PointIndex index(pts);
  auto queries = random_points(100, 32);
  for (const auto& q : queries) {
    double lo = 0.2, hi = 0.6;
    bool brute_hit = false;
    double brute_max = -1.0;
    for (const auto& p : pts) {
      double d = dist(p, q);
      if (d >= lo && d <= hi) brute_hit = true;
      if (d <= hi && d > brute_max) brute_max = d;
    }
    CHECK(index.annulus_hit(q, lo, hi) == brute_hit);
    double got = index.max_dist_within(q, hi, /*skip_self=*/false);
    if (brute_max < 0.0)
      CHECK(got < 0.0);
    else
      CHECK(got == doctest::Approx(brute_max).epsilon(1e-12));
  }
}
