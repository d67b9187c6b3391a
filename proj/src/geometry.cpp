#include "geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace kdim {

BBox BBox::of(const std::vector<Vec2>& pts) {
  if (pts.empty()) throw std::invalid_argument("BBox::of: empty point set");
  BBox b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

PointIndex::PointIndex(const std::vector<Vec2>& pts) : pts_(pts) {
  if (pts_.empty()) throw std::invalid_argument("PointIndex: empty point set");
  nodes_.reserve(2 * pts_.size() / 8 + 4);
  build(0, pts_.size());
}

int PointIndex::build(std::size_t begin, std::size_t end) {
  Node n;
  n.begin = begin;
  n.end = end;
  n.xmin = n.ymin = std::numeric_limits<double>::infinity();
  n.xmax = n.ymax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = begin; i < end; ++i) {
    n.xmin = std::min(n.xmin, pts_[i].x);
    n.xmax = std::max(n.xmax, pts_[i].x);
    n.ymin = std::min(n.ymin, pts_[i].y);
    n.ymax = std::max(n.ymax, pts_[i].y);
  }
  int id = static_cast<int>(nodes_.size());
  if (end - begin <= 16) {
    n.axis = -1;
    n.split = 0.0;
    nodes_.push_back(n);
    return id;
  }
  n.axis = (n.xmax - n.xmin >= n.ymax - n.ymin) ? 0 : 1;
  std::size_t mid = (begin + end) / 2;
  auto cmp = n.axis == 0
                 ? [](const Vec2& a, const Vec2& b) { return a.x < b.x; }
                 : [](const Vec2& a, const Vec2& b) { return a.y < b.y; };
  std::nth_element(pts_.begin() + begin, pts_.begin() + mid,
                   pts_.begin() + end, cmp);
  n.split = n.axis == 0 ? pts_[mid].x : pts_[mid].y;
  nodes_.push_back(n);
  int l = build(begin, mid);
  int r = build(mid, end);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

void PointIndex::nearest_rec(int node, const Vec2& p, bool skip_self,
                             bool& skipped, double& best) const {
  const Node& n = nodes_[node];
  if (rect_point_dist(n.xmin, n.ymin, n.xmax, n.ymax, p) >= best) return;
  if (n.axis == -1) {
    for (std::size_t i = n.begin; i < n.end; ++i) {
      double d = dist(pts_[i], p);
      if (skip_self && !skipped && d == 0.0) {
        skipped = true;
        continue;
      }
      best = std::min(best, d);
    }
    return;
  }
  double v = n.axis == 0 ? p.x : p.y;
  int first = v < n.split ? n.left : n.right;
  int second = v < n.split ? n.right : n.left;
  nearest_rec(first, p, skip_self, skipped, best);
  nearest_rec(second, p, skip_self, skipped, best);
}

double PointIndex::nearest(const Vec2& p, bool skip_self) const {
  double best = std::numeric_limits<double>::infinity();
  bool skipped = false;
  nearest_rec(0, p, skip_self, skipped, best);
  return best;
}

void PointIndex::rect_rec(int node, double xmin, double ymin, double xmax,
                          double ymax, double& best) const {
  const Node& n = nodes_[node];
  // Separation between the query rect and the node's bounding rect.
  double dx = std::max({n.xmin - xmax, 0.0, xmin - n.xmax});
  double dy = std::max({n.ymin - ymax, 0.0, ymin - n.ymax});
  if (std::hypot(dx, dy) >= best) return;
  if (n.axis == -1) {
    for (std::size_t i = n.begin; i < n.end; ++i)
      best = std::min(best, rect_point_dist(xmin, ymin, xmax, ymax, pts_[i]));
    return;
  }
  rect_rec(n.left, xmin, ymin, xmax, ymax, best);
  rect_rec(n.right, xmin, ymin, xmax, ymax, best);
}

double PointIndex::rect_dist(double xmin, double ymin, double xmax,
                             double ymax) const {
  double best = std::numeric_limits<double>::infinity();
  rect_rec(0, xmin, ymin, xmax, ymax, best);
  return best;
}

bool PointIndex::annulus_rec(int node, const Vec2& p, double lo,
                             double hi) const {
  const Node& n = nodes_[node];
  double dmin = rect_point_dist(n.xmin, n.ymin, n.xmax, n.ymax, p);
  if (dmin > hi) return false;
  // Max distance from p to the node's rect.
  double fx = std::max(std::abs(p.x - n.xmin), std::abs(p.x - n.xmax));
  double fy = std::max(std::abs(p.y - n.ymin), std::abs(p.y - n.ymax));
  double dmax = std::hypot(fx, fy);
  if (dmax < lo) return false;
  if (n.axis == -1) {
    for (std::size_t i = n.begin; i < n.end; ++i) {
      double d = dist(pts_[i], p);
      if (d >= lo && d <= hi) return true;
    }
    return false;
  }
  return annulus_rec(n.left, p, lo, hi) || annulus_rec(n.right, p, lo, hi);
}

bool PointIndex::annulus_hit(const Vec2& p, double lo, double hi) const {
  return annulus_rec(0, p, lo, hi);
}

void PointIndex::maxdist_rec(int node, const Vec2& p, double hi,
                             bool skip_self, bool& skipped,
                             double& best) const {
  const Node& n = nodes_[node];
  double dmin = rect_point_dist(n.xmin, n.ymin, n.xmax, n.ymax, p);
  if (dmin > hi) return;
  double fx = std::max(std::abs(p.x - n.xmin), std::abs(p.x - n.xmax));
  double fy = std::max(std::abs(p.y - n.ymin), std::abs(p.y - n.ymax));
  double dmax = std::hypot(fx, fy);
  if (dmax <= best) return;
  if (n.axis == -1) {
    for (std::size_t i = n.begin; i < n.end; ++i) {
      double d = dist(pts_[i], p);
      if (skip_self && !skipped && d == 0.0) {
        skipped = true;
        continue;
      }
      if (d <= hi) best = std::max(best, d);
    }
    return;
  }
  maxdist_rec(n.left, p, hi, skip_self, skipped, best);
  maxdist_rec(n.right, p, hi, skip_self, skipped, best);
}

double PointIndex::max_dist_within(const Vec2& p, double hi,
                                   bool skip_self) const {
  double best = -1.0;
  bool skipped = false;
  maxdist_rec(0, p, hi, skip_self, skipped, best);
  return best;
}

}  // namespace kdim
