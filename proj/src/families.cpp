#include "families.hpp"

#include <cmath>
#include <stdexcept>

#include "wiggle.hpp"

namespace kdim {

namespace {

// Conjugate a half-plane group into the unit-disk model by the Cayley
// map z -> (z - i)/(z + i).
GroupPresentation cayley_to_disk(const GroupPresentation& g) {
  const Complex i(0.0, 1.0);
  Moebius cay(1.0, -i, 1.0, i);
  Moebius inv = cay.inverse();
  std::vector<Moebius> gens;
  for (const auto& m : g.generators)
    gens.push_back(compose(compose(cay, m), inv));
  return GroupPresentation::make(std::move(gens), g.mode);
}

GroupPresentation modular_disk() {
  // PSL(2,Z) = <S, T>, moved to the disk model so the limit circle is
  // the unit circle.
  Moebius s(0.0, -1.0, 1.0, 0.0);
  Moebius t = moebius_translation(1.0);
  auto g = GroupPresentation::make({s, t}, RelationMode::Dedupe);
  return cayley_to_disk(g);
}

}  // namespace

FamilyKind family_kind(const std::string& name) {
  if (name == "cyclic-parabolic" || name == "cyclic-loxodromic" ||
      name == "modular" || name == "schottky4")
    return FamilyKind::Group;
  if (name == "snowflake" || name == "cantor" || name == "one-over-n")
    return FamilyKind::Cloud;
  if (name == "packing") return FamilyKind::Packing;
  throw std::invalid_argument("unknown family: " + name);
}

std::vector<std::pair<Disk, Disk>> schottky4_circles() {
  const double c = 2.0, r = 1.0;
  return {{Disk({-c, 0.0}, r), Disk({c, 0.0}, r)},
          {Disk({0.0, -c}, r), Disk({0.0, c}, r)}};
}

GroupPresentation family_group(const std::string& name) {
  if (name == "cyclic-parabolic")
    return GroupPresentation::make({moebius_translation(1.0)});
  if (name == "cyclic-loxodromic") {
    // The scaling z -> 4z moved to fix -1 and 1 (both finite, so the
    // elementary limit set is visible in the plane).
    Moebius m(1.25, 0.75, 0.75, 1.25);
    return GroupPresentation::make({m});
  }
  if (name == "modular") return modular_disk();
  if (name == "schottky4") return schottky_from_circles(schottky4_circles());
  throw std::invalid_argument("not a group family: " + name);
}

PointCloud family_cloud(const std::string& name, const FamilyParams& p) {
  if (name == "snowflake") return snowflake({p.beta, p.depth});
  if (name == "cantor") {
    if (p.depth < 1 || p.depth > 20)
      throw std::invalid_argument("cantor: depth out of range");
    // Endpoints of the level-depth middle-thirds intervals.
    std::vector<double> lefts = {0.0};
    double len = 1.0;
    for (int d = 0; d < p.depth; ++d) {
      len /= 3.0;
      std::vector<double> next;
      next.reserve(2 * lefts.size());
      for (double l : lefts) {
        next.push_back(l);
        next.push_back(l + 2.0 * len);
      }
      lefts = std::move(next);
    }
    std::vector<Vec2> pts;
    pts.reserve(2 * lefts.size());
    for (double l : lefts) {
      pts.emplace_back(l, 0.0);
      pts.emplace_back(l + len, 0.0);
    }
    auto cloud = PointCloud::from_points(
        std::move(pts), "cantor depth=" + std::to_string(p.depth));
    cloud.normalized = true;  // already diameter 1 with corner at 0
    return cloud;
  }
  if (name == "one-over-n") {
    if (p.n < 4) throw std::invalid_argument("one-over-n: n too small");
    std::vector<Vec2> pts = {{0.0, 0.0}};
    for (int k = 2; k <= p.n; ++k)
      pts.emplace_back(1.0 / static_cast<double>(k), 0.0);
    return PointCloud::from_points(std::move(pts),
                                   "one-over-n n=" + std::to_string(p.n));
  }
  if (name == "cyclic-loxodromic") {
    // Elementary: the two fixed points of the generator.
    auto g = family_group(name);
    std::vector<Vec2> pts;
    for (const auto& f : fixed_points(g.generators[0]))
      pts.emplace_back(f.value().real(), f.value().imag());
    return PointCloud::from_points(std::move(pts),
                                   "cyclic-loxodromic fixed points");
  }
  if (name == "packing") {
    // Depth beyond 3 explodes the node count; out-of-range requests get
    // the default.
    int depth = (p.depth >= 1 && p.depth <= 3) ? p.depth : 2;
    return mass_tree_cloud(family_packing(depth).tree, 100000);
  }
  throw std::invalid_argument("not a cloud family: " + name);
}

PackingSpec packing_spec() {
  PackingSpec s;
  s.d1 = Disk({-2.5, 0.0}, 1.0);
  s.d2 = Disk({2.5, 0.0}, 1.0);
  s.seed1 = modular_disk();
  s.seed2 = modular_disk();
  return s;
}

RoundConstructionResult family_packing(int depth, std::size_t orbit_budget) {
  auto s = packing_spec();
  return round_construction(s.d1, s.d2, s.seed1, s.seed2, depth, orbit_budget);
}

}  // namespace kdim
