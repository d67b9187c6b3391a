#include "wiggle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace kdim {

namespace {

constexpr int kDirectionGrid = 512;

// Does the infinite line meet the square?
bool line_meets_square(const Line& line, const DyadicSquare& q) {
  Vec2 corners[4] = {{q.xmin(), q.ymin()},
                     {q.xmax(), q.ymin()},
                     {q.xmax(), q.ymax()},
                     {q.xmin(), q.ymax()}};
  int sign = 0;
  for (const auto& c : corners) {
    double s = line.dir.cross(c - line.point);
    if (std::abs(s) < 1e-15) return true;  // touches a corner
    int cur = s > 0 ? 1 : -1;
    if (sign == 0)
      sign = cur;
    else if (cur != sign)
      return true;
  }
  return false;
}

// Sup distance to the best line meeting Q, over a direction sweep with
// the offset clamped to the projection interval of Q.
std::pair<double, Line> sweep_best_line(const std::vector<Vec2>& pts,
                                        const DyadicSquare& q) {
  Vec2 corners[4] = {{q.xmin(), q.ymin()},
                     {q.xmax(), q.ymin()},
                     {q.xmax(), q.ymax()},
                     {q.xmin(), q.ymax()}};
  double best = std::numeric_limits<double>::infinity();
  Line best_line;
  for (int k = 0; k < kDirectionGrid; ++k) {
    double th = M_PI * k / kDirectionGrid;
    Vec2 u(std::cos(th), std::sin(th));
    Vec2 nrm(-u.y, u.x);
    double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
    for (const auto& p : pts) {
      double t = nrm.dot(p);
      pmin = std::min(pmin, t);
      pmax = std::max(pmax, t);
    }
    double qmin = std::numeric_limits<double>::infinity(), qmax = -qmin;
    for (const auto& c : corners) {
      double t = nrm.dot(c);
      qmin = std::min(qmin, t);
      qmax = std::max(qmax, t);
    }
    double c = std::clamp((pmin + pmax) / 2.0, qmin, qmax);
    double sup = std::max(pmax - c, c - pmin);
    if (sup < best) {
      best = sup;
      best_line = Line{nrm * c, u};
    }
  }
  return {best, best_line};
}

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double t = ab.norm2() > 0 ? std::clamp((p - a).dot(ab) / ab.norm2(), 0.0, 1.0)
                            : 0.0;
  return dist(p, a + ab * t);
}

// Clip an infinite line to the tripled square; empty if it misses.
bool clip_line(const Line& line, double xmin, double ymin, double xmax,
               double ymax, Vec2& a, Vec2& b) {
  double tmin = -std::numeric_limits<double>::infinity();
  double tmax = std::numeric_limits<double>::infinity();
  double p0[2] = {line.point.x, line.point.y};
  double d[2] = {line.dir.x, line.dir.y};
  double lo[2] = {xmin, ymin}, hi[2] = {xmax, ymax};
  for (int ax = 0; ax < 2; ++ax) {
    if (std::abs(d[ax]) < 1e-15) {
      if (p0[ax] < lo[ax] || p0[ax] > hi[ax]) return false;
      continue;
    }
    double t1 = (lo[ax] - p0[ax]) / d[ax];
    double t2 = (hi[ax] - p0[ax]) / d[ax];
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
  }
  if (tmin > tmax) return false;
  a = line.point + line.dir * tmin;
  b = line.point + line.dir * tmax;
  return true;
}

BetaEntry beta_for_points(const DyadicSquare& q, const std::vector<Vec2>& pts) {
  if (pts.empty())
    throw std::invalid_argument("beta_number: no cloud points in 3Q");
  const double side = q.side();
  BetaEntry entry;
  entry.square = q;

  auto hull = convex_hull(pts);
  bool have_strip = false;
  double sup = 0.0;
  Line mid;
  if (hull.size() >= 3) {
    double best_width = std::numeric_limits<double>::infinity();
    std::size_t n = hull.size();
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 e = hull[(i + 1) % n] - hull[i];
      double len = e.norm();
      if (len < 1e-300) continue;
      Vec2 u = e * (1.0 / len);
      Vec2 nrm(-u.y, u.x);
      double pmin = 0.0, pmax = 0.0;
      for (const auto& p : hull) {
        double t = nrm.dot(p - hull[i]);
        pmin = std::min(pmin, t);
        pmax = std::max(pmax, t);
      }
      double width = pmax - pmin;
      if (width < best_width) {
        best_width = width;
        mid = Line{hull[i] + nrm * ((pmin + pmax) / 2.0), u};
      }
    }
    sup = best_width / 2.0;
    have_strip = std::isfinite(best_width);
  } else if (hull.size() == 2) {
    Vec2 e = hull[1] - hull[0];
    mid = Line{hull[0], e * (1.0 / e.norm())};
    sup = 0.0;
    have_strip = true;
  } else {
    mid = Line{hull.empty() ? pts[0] : hull[0], Vec2(1.0, 0.0)};
    sup = 0.0;
    have_strip = true;
  }

  if (!have_strip || !line_meets_square(mid, q)) {
    auto [s, line] = sweep_best_line(pts, q);
    sup = s;
    mid = line;
  }
  entry.beta = sup / side;
  entry.witness = mid;

  // Hausdorff-distance statistic against the witness clipped to 3Q.
  double cx = q.xmin() + side / 2.0, cy = q.ymin() + side / 2.0;
  Vec2 a, b;
  if (clip_line(mid, cx - 1.5 * side, cy - 1.5 * side, cx + 1.5 * side,
                cy + 1.5 * side, a, b)) {
    double h1 = 0.0;
    for (const auto& p : pts) h1 = std::max(h1, point_segment_dist(p, a, b));
    double h2 = 0.0;
    PointIndex idx(pts);
    for (int i = 0; i <= 32; ++i) {
      Vec2 s = a + (b - a) * (i / 32.0);
      h2 = std::max(h2, idx.nearest(s));
    }
    entry.delta = (h1 + h2) / side;
  }
  return entry;
}

// Points bucketed by level-n cell; 3Q lookups take the 3x3 neighborhood.
struct LevelBuckets {
  std::unordered_map<std::uint64_t, std::vector<Vec2>> cells;
  int level;

  static std::uint64_t key(std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(ix) << 32) ^
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)) *
               0x9e3779b97f4a7c15ull;
  }

  LevelBuckets(const PointCloud& cloud, int n) : level(n) {
    double scale = std::ldexp(1.0, n);
    for (const auto& p : cloud.points) {
      auto ix = static_cast<std::int64_t>(std::floor(p.x * scale));
      auto iy = static_cast<std::int64_t>(std::floor(p.y * scale));
      cells[key(ix, iy)].push_back(p);
    }
  }

  std::vector<Vec2> tripled(const DyadicSquare& q) const {
    std::vector<Vec2> out;
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells.find(key(q.ix + dx, q.iy + dy));
        if (it == cells.end()) continue;
        out.insert(out.end(), it->second.begin(), it->second.end());
      }
    // The 3x3 cell neighborhood is exactly 3Q for dyadic grids.
    return out;
  }
};

}  // namespace

BetaEntry beta_number(const DyadicSquare& q, const PointCloud& cloud) {
  if (q.side() < 10.0 * cloud.resolution)
    throw std::invalid_argument("beta_number: square below resolution floor");
  LevelBuckets buckets(cloud, q.level);
  return beta_for_points(q, buckets.tripled(q));
}

std::vector<DyadicSquare> occupied_squares(const PointCloud& cloud,
                                           int level) {
  double scale = std::ldexp(1.0, level);
  std::unordered_map<std::uint64_t, DyadicSquare> seen;
  for (const auto& p : cloud.points) {
    auto ix = static_cast<std::int64_t>(std::floor(p.x * scale));
    auto iy = static_cast<std::int64_t>(std::floor(p.y * scale));
    seen.emplace(LevelBuckets::key(ix, iy), DyadicSquare{level, ix, iy});
  }
  std::vector<DyadicSquare> out;
  out.reserve(seen.size());
  for (const auto& [k, q] : seen) out.push_back(q);
  std::sort(out.begin(), out.end(), [](const DyadicSquare& a,
                                       const DyadicSquare& b) {
    return a.ix < b.ix || (a.ix == b.ix && a.iy < b.iy);
  });
  return out;
}

TspSum tsp_sum(const PointCloud& cloud, int min_level, int max_level) {
  TspSum s;
  for (int n = min_level; n <= max_level; ++n) {
    if (std::ldexp(1.0, -n) < 10.0 * cloud.resolution) continue;
    LevelBuckets buckets(cloud, n);
    double level_sum = 0.0;
    for (const auto& q : occupied_squares(cloud, n)) {
      auto entry = beta_for_points(q, buckets.tripled(q));
      level_sum += entry.beta * entry.beta * q.side();
    }
    s.levels.push_back(n);
    s.per_level.push_back(level_sum);
    s.total += level_sum;
  }
  return s;
}

WiggleCertificate wiggliness(const PointCloud& cloud, int min_level,
                             int max_level, double bound_c, double k0) {
  WiggleCertificate cert;
  cert.bound_c = bound_c;
  cert.beta0 = std::numeric_limits<double>::infinity();
  cert.scale_min = std::ldexp(1.0, -max_level);
  cert.scale_max = std::ldexp(1.0, -min_level);
  for (int n = min_level; n <= max_level; ++n) {
    if (std::ldexp(1.0, -n) < 10.0 * cloud.resolution) continue;
    LevelBuckets buckets(cloud, n);
    for (const auto& q : occupied_squares(cloud, n)) {
      auto entry = beta_for_points(q, buckets.tripled(q));
      cert.beta0 = std::min(cert.beta0, entry.beta);
      ++cert.qualifying_square_count;
    }
  }
  if (cert.qualifying_square_count == 0)
    throw std::invalid_argument("wiggliness: no qualifying squares in window");
  cert.lower_bound = 1.0 + bound_c * cert.beta0 * cert.beta0;
  if (cert.beta0 > 0.0) {
    cert.proof_k = std::ceil(
        std::max(20.0 / cert.beta0, k0 / (cert.beta0 * cert.beta0)));
    cert.proof_alpha = 1.0 + std::log(1000.0) / (cert.proof_k * std::log(2.0));
  }
  return cert;
}

double snowflake_moran_dimension(double beta) {
  double mid = 0.25 + beta * beta;
  auto f = [&](double d) {
    return 2.0 * std::pow(0.25, d) + 2.0 * std::pow(mid, d) - 1.0;
  };
  double lo = 1.0, hi = 2.0;
  if (f(lo) <= 0.0) return 1.0;  // beta == 0 degenerates to a segment
  for (int i = 0; i < 200; ++i) {
    double m = (lo + hi) / 2.0;
    (f(m) > 0.0 ? lo : hi) = m;
  }
  return (lo + hi) / 2.0;
}

PointCloud snowflake(const SnowflakeParams& p) {
  if (!(p.beta >= 0.0 && p.beta < 0.5))
    throw std::invalid_argument("snowflake: beta outside [0, 1/2)");
  if (p.depth < 0 || p.depth > 12)
    throw std::invalid_argument("snowflake: depth outside [0, 12]");
  const double mid = 0.25 + p.beta * p.beta;
  const double height = std::sqrt(std::max(0.0, mid * mid - 1.0 / 16.0));
  std::vector<Vec2> verts = {{0.0, 0.0}, {1.0, 0.0}};
  for (int it = 0; it < p.depth; ++it) {
    std::vector<Vec2> next;
    next.reserve((verts.size() - 1) * 4 + 1);
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      Vec2 a = verts[i], b = verts[i + 1];
      Vec2 e = b - a;
      Vec2 nrm(-e.y, e.x);  // apex on the left
      Vec2 p1 = a + e * 0.25;
      Vec2 p3 = a + e * 0.75;
      Vec2 apex = a + e * 0.5 + nrm * height;
      next.push_back(a);
      next.push_back(p1);
      next.push_back(apex);
      next.push_back(p3);
    }
    next.push_back(verts.back());
    verts = std::move(next);
  }
  return PointCloud::from_points(
      std::move(verts), "snowflake beta=" + std::to_string(p.beta) +
                            " depth=" + std::to_string(p.depth));
}

}  // namespace kdim
