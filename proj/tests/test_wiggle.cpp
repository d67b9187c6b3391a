#include "doctest.h"
#include "wiggle.hpp"

#include <cmath>
#include <random>

using namespace kdim;

TEST_CASE("beta vanishes on collinear clouds") {
  std::vector<Vec2> pts;
  for (int i = 0; i <= 200; ++i) pts.emplace_back(i / 200.0 * 3.0, 1.0);
  auto cloud = PointCloud::from_points(pts, "line");
  DyadicSquare q{0, 1, 0};  // [1,2] x [0,1]; 3Q covers the strip
  auto entry = beta_number(q, cloud);
  CHECK(entry.beta < 1e-12);
  CHECK(entry.witness.dist_to({0.5, 1.0}) < 1e-9);
}

TEST_CASE("beta of two parallel rows is half the gap") {
  std::vector<Vec2> pts;
  for (int i = 0; i <= 90; ++i) {
    pts.emplace_back(i / 30.0, 0.4);
    pts.emplace_back(i / 30.0, 0.6);
  }
  auto cloud = PointCloud::from_points(pts, "rows");
  DyadicSquare q{0, 1, 0};
  auto entry = beta_number(q, cloud);
  CHECK(entry.beta == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("beta for a diagonal line whose strip midline misses Q") {
  // All points in the upper-left corner of 3Q, far from Q itself: the
  // optimal unconstrained strip midline misses Q and the constrained
  // sweep must take over.
  std::vector<Vec2> pts;
  for (int i = 0; i <= 60; ++i) pts.emplace_back(-0.9, -0.9 + i / 30.0);
  pts.emplace_back(-0.8, 0.0);
  auto cloud = PointCloud::from_points(pts, "corner");
  DyadicSquare q{0, 0, 0};
  auto entry = beta_number(q, cloud);
  CHECK(entry.beta > 0.0);
  // Witness line still meets Q (corner sign test: the corners do not
  // all lie strictly on one side).
  Vec2 corners[4] = {{q.xmin(), q.ymin()},
                     {q.xmax(), q.ymin()},
                     {q.xmax(), q.ymax()},
                     {q.xmin(), q.ymax()}};
  int pos = 0, neg = 0;
  for (const auto& c : corners) {
    double s = entry.witness.dir.cross(c - entry.witness.point);
    if (s > 1e-9) ++pos;
    if (s < -1e-9) ++neg;
  }
  CHECK((pos < 4 && neg < 4));
}

TEST_CASE("tsp sum is tiny for a segment and positive for a snowflake") {
  std::vector<Vec2> seg;
  for (int i = 0; i <= 4096; ++i) seg.emplace_back(i / 4096.0, 0.0);
  auto line_cloud = PointCloud::from_points(seg, "segment");
  auto flat = tsp_sum(line_cloud, 1, 8);
  CHECK(flat.total < 1e-9);

  auto snow = snowflake({0.3, 7});
  auto bent = tsp_sum(snow, 1, 8);
  CHECK(bent.total > 0.1);
  CHECK(bent.levels.size() == bent.per_level.size());
}

TEST_CASE("snowflake vertex count and construction") {
  auto c = snowflake({0.3, 8});
  CHECK(c.points.size() ==
        static_cast<std::size_t>(std::pow(4, 8)) + 1);
  CHECK_THROWS_AS(snowflake({0.5, 4}), std::invalid_argument);
  CHECK_THROWS_AS(snowflake({0.3, 13}), std::invalid_argument);
  // beta = 0 degenerates to the segment.
  auto flat = snowflake({0.0, 5});
  for (const auto& p : flat.points) CHECK(std::abs(p.y) < 1e-12);
}

TEST_CASE("moran dimension oracle values") {
  // Roots of 2(1/4)^d + 2(1/4+b^2)^d = 1.
  CHECK(snowflake_moran_dimension(0.0) == doctest::Approx(1.0));
  CHECK(snowflake_moran_dimension(0.1) ==
        doctest::Approx(1.0144936508065723).epsilon(1e-10));
  CHECK(snowflake_moran_dimension(0.2) ==
        doctest::Approx(1.0589096045606022).epsilon(1e-10));
  CHECK(snowflake_moran_dimension(0.3) ==
        doctest::Approx(1.1370696098286903).epsilon(1e-10));
  CHECK(snowflake_moran_dimension(0.4) ==
        doctest::Approx(1.2590803484960239).epsilon(1e-10));
  CHECK(snowflake_moran_dimension(std::sqrt(1.0 / 12.0)) ==
        doctest::Approx(1.1262881039516677).epsilon(1e-10));
}

TEST_CASE("wiggliness certificates grow with beta") {
  double prev = -1.0;
  for (double b : {0.1, 0.2, 0.3}) {
    auto cloud = snowflake({b, 6});
    auto cert = wiggliness(cloud, 2, 8);
    CHECK(cert.beta0 > prev);
    CHECK(cert.lower_bound ==
          doctest::Approx(1.0 + cert.bound_c * cert.beta0 * cert.beta0));
    CHECK(cert.proof_alpha > 1.0);
    CHECK(cert.proof_k >= 20.0 / cert.beta0);
    prev = cert.beta0;
  }
}

TEST_CASE("occupied squares match the box count") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec2> pts;
  for (int i = 0; i < 300; ++i) pts.emplace_back(u(rng), u(rng));
  auto cloud = PointCloud::from_points(pts, "random");
  for (int level : {1, 2, 3}) {
    auto sq = occupied_squares(cloud, level);
    auto t = box_count(cloud, level, level);
    REQUIRE(t.counts.size() == 1);
    CHECK(sq.size() == t.counts[0]);
  }
}
