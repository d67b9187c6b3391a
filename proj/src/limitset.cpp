#include "limitset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kdim {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower &&
           (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_set_diameter(const std::vector<Vec2>& pts) {
  auto hull = convex_hull(pts);
  std::size_t n = hull.size();
  if (n == 0) return 0.0;
  if (n == 1) return 0.0;
  if (n == 2) return dist(hull[0], hull[1]);
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 e = hull[(i + 1) % n] - hull[i];
    while (e.cross(hull[(j + 1) % n] - hull[i]) >
           e.cross(hull[j % n] - hull[i]))
      ++j;
    best = std::max(best, dist(hull[i], hull[j % n]));
    best = std::max(best, dist(hull[(i + 1) % n], hull[j % n]));
  }
  return best;
}

namespace {

// 99th percentile of nearest-neighbor distances.
double resolution_estimate(const std::vector<Vec2>& pts) {
  if (pts.size() < 2) return 1.0;
  PointIndex index(pts);
  std::vector<double> nn;
  nn.reserve(pts.size());
  for (const auto& p : pts) nn.push_back(index.nearest(p, /*skip_self=*/true));
  std::size_t k = static_cast<std::size_t>(0.99 * (nn.size() - 1));
  std::nth_element(nn.begin(), nn.begin() + k, nn.end());
  double h = nn[k];
  return h > 0.0 ? h : 1e-15;
}

std::size_t distinct_count(const std::vector<Vec2>& pts, double tol) {
  std::vector<Vec2> reps;
  for (const auto& p : pts) {
    bool found = false;
    for (const auto& r : reps)
      if (dist(p, r) <= tol) {
        found = true;
        break;
      }
    if (!found) {
      reps.push_back(p);
      if (reps.size() > 2) return reps.size();
    }
  }
  return reps.size();
}

}  // namespace

PointCloud PointCloud::from_points(std::vector<Vec2> pts,
                                   std::string provenance) {
  if (pts.empty())
    throw std::invalid_argument("PointCloud: empty sample");
  // Drop exact duplicates so the resolution estimate is meaningful.
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  PointCloud c;
  c.points = std::move(pts);
  c.bbox = BBox::of(c.points);
  c.resolution = resolution_estimate(c.points);
  c.elementary = distinct_count(c.points, 1e-9) <= 2;
  c.provenance = std::move(provenance);
  return c;
}

double PointCloud::diameter() const { return point_set_diameter(points); }

void PointCloud::normalize() {
  double d = diameter();
  if (d <= 0.0)
    throw std::invalid_argument("PointCloud::normalize: zero diameter");
  double s = 1.0 / d;
  Vec2 corner(bbox.xmin, bbox.ymin);
  for (auto& p : points) p = (p - corner) * s;
  bbox = BBox::of(points);
  resolution *= s;
  normalized = true;
}

GroupPresentation schottky_from_circles(
    const std::vector<std::pair<Disk, Disk>>& pairs) {
  if (pairs.empty())
    throw std::invalid_argument("schottky_from_circles: no pairs");
  std::vector<Disk> all;
  for (const auto& [c1, c2] : pairs) {
    all.push_back(c1);
    all.push_back(c2);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (disk_gap(all[i], all[j]) <= 0.0)
        throw std::invalid_argument(
            "schottky_from_circles: disks overlap or touch");

  std::vector<Moebius> gens;
  for (const auto& [c1, c2] : pairs)
    gens.push_back(moebius_pairing({c1.center.x, c1.center.y}, c1.radius,
                                   {c2.center.x, c2.center.y}, c2.radius));

  // Ping-pong check: boundary samples of every disk land in the paired
  // disk under the generator (exterior of C1 -> interior of C2) and in
  // C1 under the inverse.
  const int samples = 100;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Disk& c1 = pairs[k].first;
    const Disk& c2 = pairs[k].second;
    for (int s = 0; s < samples; ++s) {
      double th = 2.0 * M_PI * s / samples;
      // Slightly outside C1 (exterior) must map inside C2.
      Complex z1(c1.center.x + 1.001 * c1.radius * std::cos(th),
                 c1.center.y + 1.001 * c1.radius * std::sin(th));
      SpherePoint img = apply(gens[k], SpherePoint(z1));
      if (img.is_infinity() ||
          std::abs(img.value() - Complex(c2.center.x, c2.center.y)) >=
              c2.radius)
        throw std::invalid_argument(
            "schottky_from_circles: ping-pong validation failed");
      Complex z2(c2.center.x + 1.001 * c2.radius * std::cos(th),
                 c2.center.y + 1.001 * c2.radius * std::sin(th));
      SpherePoint img2 = apply(gens[k].inverse(), SpherePoint(z2));
      if (img2.is_infinity() ||
          std::abs(img2.value() - Complex(c1.center.x, c1.center.y)) >=
              c1.radius)
        throw std::invalid_argument(
            "schottky_from_circles: ping-pong validation failed");
    }
  }
  return GroupPresentation::make(std::move(gens), RelationMode::Free);
}

GroupPresentation conjugate_into_disk(const GroupPresentation& g,
                                      const Disk& disk) {
  Moebius h(Complex(std::sqrt(disk.radius)),
            Complex(disk.center.x, disk.center.y) / std::sqrt(disk.radius),
            Complex(0.0), Complex(1.0 / std::sqrt(disk.radius)));
  std::vector<Moebius> gens;
  for (const auto& m : g.generators)
    gens.push_back(compose(compose(h, m), h.inverse()));
  return GroupPresentation::make(std::move(gens), g.mode);
}

GroupPresentation free_product_packing(const GroupPresentation& seed1,
                                       const Disk& disk1,
                                       const GroupPresentation& seed2,
                                       const Disk& disk2) {
  // Doubles of the disks must be disjoint so each limit circle lies in
  // a fundamental domain of the other factor (Klein-Maskit combination).
  if (dist(disk1.center, disk2.center) <=
      2.0 * (disk1.radius + disk2.radius))
    throw std::invalid_argument(
        "free_product_packing: disk doubles are not disjoint");
  auto g1 = conjugate_into_disk(seed1, disk1);
  auto g2 = conjugate_into_disk(seed2, disk2);
  std::vector<Moebius> gens = g1.generators;
  gens.insert(gens.end(), g2.generators.begin(), g2.generators.end());
  return GroupPresentation::make(std::move(gens), RelationMode::Dedupe);
}

PointCloud sample_limit_set(const GroupPresentation& g, std::size_t budget,
                            SampleMethod method,
                            const SpherePoint& basepoint) {
  if (budget < 100)
    throw std::invalid_argument("sample_limit_set: budget < 100");
  std::vector<Vec2> pts;
  std::string prov;
  if (method == SampleMethod::WordFixedPoints) {
    auto orbit = enumerate_orbit(g, /*max_depth=*/1000,
                                 std::numeric_limits<double>::infinity(),
                                 budget);
    for (const auto& p : orbit.points) {
      if (p.depth == 0) continue;
      auto cls = classify(p.matrix);
      if (cls == TransformClass::Elliptic || cls == TransformClass::Identity)
        continue;
      auto fps = fixed_points(p.matrix);
      if (cls == TransformClass::Parabolic) {
        if (!fps[0].is_infinity())
          pts.emplace_back(fps[0].value().real(), fps[0].value().imag());
        continue;
      }
      // Attracting fixed point: |g'(z)| = 1/|c z + d|^2 < 1.
      for (const auto& fp : fps) {
        if (fp.is_infinity()) continue;
        Complex den = p.matrix.c() * fp.value() + p.matrix.d();
        if (std::abs(den) > 1.0)
          pts.emplace_back(fp.value().real(), fp.value().imag());
      }
    }
    prov = "word-fixed-points budget=" + std::to_string(budget);
  } else {
    auto orbit = sphere_orbit(g, basepoint, /*max_depth=*/1000, budget);
    int deepest = 0;
    for (const auto& p : orbit) deepest = std::max(deepest, p.depth);
    // Deepest enumerated shell; fall back one level if it is tiny.
    int cut = deepest;
    std::size_t at_cut = 0;
    for (const auto& p : orbit)
      if (p.depth == cut) ++at_cut;
    if (at_cut < budget / 10 && cut > 0) --cut;
    for (const auto& p : orbit) {
      if (p.depth < cut || p.point.is_infinity()) continue;
      pts.emplace_back(p.point.value().real(), p.point.value().imag());
    }
    prov = "orbit-accumulation budget=" + std::to_string(budget);
  }
  if (pts.empty())
    throw std::invalid_argument("sample_limit_set: no finite samples");
  auto cloud = PointCloud::from_points(std::move(pts), prov);
  if (!cloud.elementary) cloud.normalize();
  return cloud;
}

PerfectnessReport uniformly_perfect(const PointCloud& cloud,
                                    const std::vector<double>& scales,
                                    const std::vector<double>& eps_grid,
                                    std::size_t max_centers) {
  double diam = cloud.diameter();
  for (double r : scales) {
    // The floor is meaningless for elementary clouds (their resolution
    // is the gap between the two points); they report eps = 0 anyway.
    if (!cloud.elementary && r < 10.0 * cloud.resolution)
      throw std::invalid_argument(
          "uniformly_perfect: scale below resolution floor");
    if (r > diam)
      throw std::invalid_argument("uniformly_perfect: scale above diameter");
  }
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end());

  PointIndex index(cloud.points);
  // Deterministic subsample of centers.
  std::size_t stride = std::max<std::size_t>(1, cloud.points.size() / max_centers);

  PerfectnessReport rep;
  rep.scales = scales;
  rep.eps_hat = std::numeric_limits<double>::infinity();
  for (double r : scales) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cloud.points.size(); i += stride) {
      const Vec2& x = cloud.points[i];
      double dmax = index.max_dist_within(x, r, /*skip_self=*/true);
      double best_eps = 0.0;
      if (dmax > 0.0) {
        // Largest grid eps with eps * r <= dmax.
        for (auto it = grid.rbegin(); it != grid.rend(); ++it)
          if (*it * r <= dmax) {
            best_eps = *it;
            break;
          }
      }
      worst = std::min(worst, best_eps);
      if (worst == 0.0) break;
    }
    rep.worst_eps.push_back(worst);
    rep.eps_hat = std::min(rep.eps_hat, worst);
  }
  return rep;
}

Horoball make_horoball(Disk ball, Vec2 tangency, Moebius parabolic) {
  if (std::abs(dist(tangency, ball.center) - ball.radius) > 1e-9)
    throw std::invalid_argument("make_horoball: tangency not on boundary");
  if (classify(parabolic) != TransformClass::Parabolic)
    throw std::invalid_argument("make_horoball: element is not parabolic");
  auto img = apply(parabolic, SpherePoint(Complex(tangency.x, tangency.y)));
  if (img.is_infinity() ||
      std::abs(img.value() - Complex(tangency.x, tangency.y)) > 1e-7)
    throw std::invalid_argument("make_horoball: parabolic does not fix tangency");
  return Horoball{ball, tangency, parabolic, -1.0};
}

std::pair<double, bool> classify_horoball(const Horoball& b,
                                          const PointCloud& cloud,
                                          double threshold) {
  if (!cloud.normalized)
    throw std::invalid_argument("classify_horoball: cloud not normalized");
  if (b.ball.diam() < cloud.resolution)
    throw std::invalid_argument(
        "classify_horoball: ball below resolution floor");
  PointIndex index(cloud.points);
  // Boundary sampling density 4 diam / h, capped.
  std::size_t n = static_cast<std::size_t>(
      std::clamp(4.0 * b.ball.diam() / cloud.resolution, 64.0, 200000.0));
  double eta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
    Vec2 z(b.ball.center.x + b.ball.radius * std::cos(th),
           b.ball.center.y + b.ball.radius * std::sin(th));
    eta = std::max(eta, index.nearest(z));
  }
  eta /= b.ball.diam();
  return {eta, eta > threshold};
}

}  // namespace kdim
