#ifndef KDIM_GEOMETRY_HPP_
#define KDIM_GEOMETRY_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

namespace kdim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
};

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diag() const { return std::hypot(width(), height()); }
  bool contains(const Vec2& p, double slack = 0.0) const {
    return p.x >= xmin - slack && p.x <= xmax + slack && p.y >= ymin - slack &&
           p.y <= ymax + slack;
  }
  static BBox of(const std::vector<Vec2>& pts);
};

struct Disk {
  Vec2 center;
  double radius = 0.0;
  Disk() = default;
  Disk(Vec2 c, double r) : center(c), radius(r) {}
  double diam() const { return 2.0 * radius; }
};

inline double disk_gap(const Disk& a, const Disk& b) {
  return dist(a.center, b.center) - a.radius - b.radius;
}

// Distance from an axis-aligned rectangle to a point (0 inside).
inline double rect_point_dist(double xmin, double ymin, double xmax,
                              double ymax, const Vec2& p) {
  double dx = std::max({xmin - p.x, 0.0, p.x - xmax});
  double dy = std::max({ymin - p.y, 0.0, p.y - ymax});
  return std::hypot(dx, dy);
}

// Static kd-tree over a point set for nearest-neighbor and
// rectangle-distance queries.
class PointIndex {
 public:
  explicit PointIndex(const std::vector<Vec2>& pts);

  // Distance from p to the nearest indexed point; if skip_self, a point
  // at zero distance is ignored (one copy of it).
  double nearest(const Vec2& p, bool skip_self = false) const;

  // Distance from the rectangle to the nearest indexed point.
  double rect_dist(double xmin, double ymin, double xmax, double ymax) const;

  // True iff some indexed point y satisfies lo <= |y - p| <= hi.
  bool annulus_hit(const Vec2& p, double lo, double hi) const;

  // Largest |y - p| over indexed points with |y - p| <= hi (-1 if none,
  // excluding the zero-distance copy when skip_self).
  double max_dist_within(const Vec2& p, double hi, bool skip_self) const;

  std::size_t size() const { return pts_.size(); }

 private:
  struct Node {
    double split;
    int axis;       // -1 for leaf
    std::size_t begin, end;
    int left = -1, right = -1;
    double xmin, ymin, xmax, ymax;
  };
  std::vector<Vec2> pts_;
  std::vector<Node> nodes_;
  int build(std::size_t begin, std::size_t end);
  void nearest_rec(int node, const Vec2& p, bool skip_self, bool& skipped,
                   double& best) const;
  void rect_rec(int node, double xmin, double ymin, double xmax, double ymax,
                double& best) const;
  bool annulus_rec(int node, const Vec2& p, double lo, double hi) const;
  void maxdist_rec(int node, const Vec2& p, double hi, bool skip_self,
                   bool& skipped, double& best) const;
};

}  // namespace kdim

#endif  // KDIM_GEOMETRY_HPP_
