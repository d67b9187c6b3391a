#include "doctest.h"
#include "dimension.hpp"

#include <cmath>
#include <random>

#include "families.hpp"

using namespace kdim;

TEST_CASE("box count of a full grid doubles per level") {
  std::vector<Vec2> pts;
  const int k = 7;
  const int n = 1 << k;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pts.emplace_back((i + 0.5) / n, (j + 0.5) / n);
  auto cloud = PointCloud::from_points(pts, "grid");
  auto t = box_count(cloud, 0, k);
  for (std::size_t i = 0; i < t.levels.size(); ++i)
    CHECK(t.counts[i] ==
          static_cast<std::size_t>(1) << (2 * t.levels[i]));
  auto e = mdim_fit(t, std::ldexp(1.0, -k), 1.0);
  CHECK(e.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(e.method == FitMethod::BoxCount);
}

TEST_CASE("box count drops sub-resolution levels") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 100; ++i) pts.emplace_back(i / 100.0, 0.0);
  auto cloud = PointCloud::from_points(pts, "coarse");  // h = 0.01
  auto t = box_count(cloud, 0, 16);
  CHECK(t.levels_dropped);
  CHECK(t.scales.back() >= cloud.resolution / 10.0);
}

TEST_CASE("mdim of the middle-thirds Cantor set") {
  auto cloud = family_cloud("cantor");
  auto e = mdim_fit(box_count(cloud, 0, 19));
  CHECK(e.value == doctest::Approx(0.6309297535714574).epsilon(0.03));
}

TEST_CASE("mdim_fit needs at least four scales") {
  std::vector<Vec2> pts = {{0, 0}, {1, 0}, {0.5, 0.3}, {0.2, 0.9}};
  auto cloud = PointCloud::from_points(pts, "few");
  auto t = box_count(cloud, 0, 2);
  CHECK_THROWS_AS(mdim_fit(t, 0.25, 1.0), std::invalid_argument);
}

TEST_CASE("whitney decomposition brackets and counts for a segment") {
  std::vector<Vec2> pts;
  for (int i = 0; i <= 200000; ++i) pts.emplace_back(i / 200000.0, 0.0);
  auto cloud = PointCloud::from_points(pts, "segment");
  cloud.normalized = true;  // already [0,1] x {0}
  auto cells = whitney_decompose(cloud, 15);
  REQUIRE(!cells.empty());
  for (const auto& c : cells) {
    double s = c.square.side();
    CHECK(s >= c.dist_to_set / 10.0 - 1e-12);
    CHECK(s <= 10.0 * c.dist_to_set + 1e-12);
  }
  // W_n grows like 2^n for a line: kappa ~ 1 (coarse levels are a
  // transient from the surrounding annulus, so fit deep).
  auto e = kappa_fit(cells, 8, 14);
  CHECK(e.value == doctest::Approx(1.0).epsilon(0.05));
  CHECK(e.method == FitMethod::WhitneyKappa);
}

TEST_CASE("whitney rejects unnormalized clouds") {
  auto cloud = PointCloud::from_points({{0, 0}, {5, 0}, {2, 1}}, "raw");
  CHECK_THROWS_AS(whitney_decompose(cloud, 8), std::invalid_argument);
}

TEST_CASE("delta_fit recovers a synthetic exponent from shells") {
  OrbitCountTable t;
  const double d = 0.7;
  for (double r = 6.0; r <= 26.0; r += 2.0) {
    t.radii.push_back(r);
    t.counts.push_back(static_cast<std::size_t>(std::exp(d * r)));
  }
  auto e = delta_fit(t, 8.0, 24.0);
  CHECK(e.value == doctest::Approx(d).epsilon(0.01));
  CHECK(e.method == FitMethod::PoincareExponent);
  CHECK_THROWS_AS(delta_fit(t, 8.0, 10.0), std::invalid_argument);
}

namespace {

MassTree uniform_tree(int depth, int fanout, double ratio) {
  MassTree tree;
  tree.depth = depth;
  tree.root.disk = Disk({0, 0}, 1.0);
  tree.root.mass = 1.0;
  std::vector<MassNode*> frontier = {&tree.root};
  for (int g = 0; g < depth; ++g) {
    std::vector<MassNode*> next;
    for (auto* n : frontier) {
      for (int k = 0; k < fanout; ++k) {
        MassNode c;
        double th = 2.0 * M_PI * k / fanout;
        // Children on a ring inside the doubled parent, doubles disjoint.
        c.disk = Disk({n->disk.center.x + 1.4 * n->disk.radius * std::cos(th),
                       n->disk.center.y + 1.4 * n->disk.radius * std::sin(th)},
                      ratio * n->disk.radius);
        c.mass = n->mass / fanout;
        n->children.push_back(c);
      }
      for (auto& c : n->children) next.push_back(&c);
    }
    frontier = std::move(next);
  }
  tree.min_child_ratio = ratio;
  tree.max_children = fanout;
  return tree;
}

}  // namespace

TEST_CASE("mass tree validation catches broken invariants") {
  auto tree = uniform_tree(2, 3, 0.05);
  CHECK_NOTHROW(tree.validate());
  CHECK(tree.generation(1).size() == 3);
  CHECK(tree.generation(2).size() == 9);

  auto broken = uniform_tree(1, 3, 0.05);
  broken.root.children[0].mass += 0.1;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  auto overlap = uniform_tree(1, 3, 0.05);
  overlap.root.children[1].disk = overlap.root.children[0].disk;
  CHECK_THROWS_AS(overlap.validate(), std::invalid_argument);

  auto escape = uniform_tree(1, 3, 0.05);
  escape.root.children[0].disk.center = {5.0, 0.0};
  CHECK_THROWS_AS(escape.validate(), std::invalid_argument);
}

TEST_CASE("frostman fit and verification on a self-similar tree") {
  // fanout 3, ratio 1/20: alpha = log 3 / log 20.
  auto tree = uniform_tree(3, 3, 0.05);
  double alpha = std::log(3.0) / std::log(20.0);
  CHECK(frostman_alpha_fit(tree) == doctest::Approx(alpha).epsilon(1e-9));
  auto res = frostman_verify(tree, 4000, alpha, 42);
  CHECK(res.ok);
  CHECK(res.c > 0.0);
  CHECK(res.per_generation_max.size() == 4);

  // Demanding a much larger exponent breaks stability.
  auto bad = frostman_verify(tree, 4000, alpha + 0.5, 42);
  CHECK(!bad.ok);
}

TEST_CASE("serialized mass tree lists every generation") {
  auto tree = uniform_tree(2, 2, 0.05);
  auto text = tree.serialize();
  CHECK(text.find("0 0 0 1") == 0);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + 2 + 4);
}

TEST_CASE("mass_tree_cloud samples all node boundaries") {
  auto tree = uniform_tree(2, 3, 0.05);
  auto cloud = mass_tree_cloud(tree, 5000);
  CHECK(cloud.normalized);
  CHECK(cloud.points.size() >= 13 * 24);
}
