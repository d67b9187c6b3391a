#ifndef KDIM_LIMITSET_HPP_
#define KDIM_LIMITSET_HPP_

#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "groups.hpp"

namespace kdim {

// A finite sample of a planar set with a resolution floor.
struct PointCloud {
  std::vector<Vec2> points;
  double resolution = 0.0;  // statistical covering radius (99th pct NN gap)
  BBox bbox;
  bool normalized = false;  // diameter scaled to 1
  bool elementary = false;  // <= 2 distinct points
  std::string provenance;

  static PointCloud from_points(std::vector<Vec2> pts,
                                std::string provenance = "");
  // Scale/translate so the diameter is 1 and the bbox corner sits at 0.
  void normalize();
  double diameter() const;
};

// Diameter of a point set (convex hull + antipodal scan).
double point_set_diameter(const std::vector<Vec2>& pts);

// Convex hull, counterclockwise, no repeated endpoint.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

enum class SampleMethod { OrbitAccumulation, WordFixedPoints };

// Schottky group from pairing circles: for each pair (C1, C2) emits the
// map sending the exterior of C1 onto the interior of C2.  Validates
// disjointness and the ping-pong property by boundary sampling.
GroupPresentation schottky_from_circles(
    const std::vector<std::pair<Disk, Disk>>& pairs);

// Free product of two disk-preserving (Fuchsian) seeds conjugated into
// disjoint disks.  Requires the doubles of the disks to be disjoint.
GroupPresentation free_product_packing(const GroupPresentation& seed1,
                                       const Disk& disk1,
                                       const GroupPresentation& seed2,
                                       const Disk& disk2);

// Conjugate of g by the map unit-disk -> disk (z -> center + radius z).
GroupPresentation conjugate_into_disk(const GroupPresentation& g,
                                      const Disk& disk);

PointCloud sample_limit_set(const GroupPresentation& g, std::size_t budget,
                            SampleMethod method,
                            const SpherePoint& basepoint);

struct PerfectnessReport {
  std::vector<double> scales;
  std::vector<double> worst_eps;  // per scale: min over centers of best eps
  double eps_hat = 0.0;           // min over all (x, r)
};

// For each sample x and scale r, the largest grid eps such that the
// annulus {y: eps r <= |x-y| <= r} contains a sample point.
PerfectnessReport uniformly_perfect(const PointCloud& cloud,
                                    const std::vector<double>& scales,
                                    const std::vector<double>& eps_grid,
                                    std::size_t max_centers = 2000);

struct Horoball {
  Disk ball;
  Vec2 tangency;      // on the boundary circle
  Moebius parabolic;  // fixes the tangency point
  double eta = -1.0;  // filled by classify_horoball
};

Horoball make_horoball(Disk ball, Vec2 tangency, Moebius parabolic);

// eta = (max over sampled z on the ball boundary of dist(z, cloud)) /
// diam(ball); good iff eta > threshold.  Cloud must be normalized.
std::pair<double, bool> classify_horoball(const Horoball& b,
                                          const PointCloud& cloud,
                                          double threshold);

}  // namespace kdim

#endif  // KDIM_LIMITSET_HPP_
