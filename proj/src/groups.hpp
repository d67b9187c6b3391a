#ifndef KDIM_GROUPS_HPP_
#define KDIM_GROUPS_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "moebius.hpp"

namespace kdim {

enum class RelationMode { Free, Dedupe };

// A finite generating set.  Inverses are derived on the fly; generator
// indices in words are signed (1-based, negative for inverses).
struct GroupPresentation {
  std::vector<Moebius> generators;
  std::vector<std::string> labels;
  RelationMode mode = RelationMode::Free;

  static GroupPresentation make(std::vector<Moebius> gens,
                                RelationMode mode = RelationMode::Free);

  // Header "generators m mode" followed by m transform lines.
  std::string serialize() const;
  static GroupPresentation parse(const std::string& text);
};

// Orbit points store their freely reduced word as a parent link plus
// last letter; full words are reconstructed on demand (deep cyclic
// enumerations would otherwise cost quadratic memory).
struct OrbitPoint {
  std::int64_t parent = -1;  // index into the result, -1 for the identity
  int last = 0;              // signed 1-based generator index, 0 at identity
  Moebius matrix;
  double rho = 0.0;
  int depth = 0;
};

struct OrbitResult {
  std::vector<OrbitPoint> points;
  int max_depth_reached = 0;
  bool budget_hit = false;   // max_points exhausted
  bool depth_hit = false;    // frontier still alive at max_depth
  double max_rho = std::numeric_limits<double>::infinity();
  double prune_slack = 0.0;

  // Freely reduced word of points[i], identity-first order.
  std::vector<int> word(std::size_t i) const;
};

// Breadth-first enumeration of freely reduced words.  A branch is cut
// when rho(prefix) > max_rho + prune_slack; slack defaults to the max
// generator displacement (rho is not monotone along words, but
// rho(wg) >= rho(w) - rho(g) bounds the backtrack).  In Dedupe mode
// matrices equal up to sign within 1e-8 are merged, keeping the
// shortest word.
OrbitResult enumerate_orbit(const GroupPresentation& g, int max_depth,
                            double max_rho, std::size_t max_points,
                            double prune_slack = -1.0);

struct OrbitCountTable {
  std::vector<double> radii;    // increasing
  std::vector<std::size_t> counts;  // N(R) = #{rho <= R}
  bool truncated = false;
};

OrbitCountTable orbit_counts(const std::vector<OrbitPoint>& points,
                             const std::vector<double>& radii);

struct SphereOrbitPoint {
  SpherePoint point;
  int depth;
};

std::vector<SphereOrbitPoint> sphere_orbit(const GroupPresentation& g,
                                           const SpherePoint& basepoint,
                                           int max_depth,
                                           std::size_t max_points);

}  // namespace kdim

#endif  // KDIM_GROUPS_HPP_
