#ifndef KDIM_DIMENSION_HPP_
#define KDIM_DIMENSION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "groups.hpp"
#include "limitset.hpp"

namespace kdim {

struct DyadicSquare {
  int level = 0;       // side 2^-level
  std::int64_t ix = 0;
  std::int64_t iy = 0;
  double side() const { return std::ldexp(1.0, -level); }
  double xmin() const { return ix * side(); }
  double ymin() const { return iy * side(); }
  double xmax() const { return (ix + 1) * side(); }
  double ymax() const { return (iy + 1) * side(); }
  Vec2 center() const { return {xmin() + side() / 2, ymin() + side() / 2}; }
};

struct BoxCountTable {
  std::vector<double> scales;        // decreasing epsilon = 2^-level
  std::vector<int> levels;
  std::vector<std::size_t> counts;   // occupied grid cells
  bool levels_dropped = false;       // some requested levels were below h/10
};

enum class FitMethod { BoxCount, WhitneyKappa, PoincareExponent, FrostmanLower };

struct DimensionEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  FitMethod method = FitMethod::BoxCount;
  double window_min = 0.0;  // scale (or radius/level) window actually used
  double window_max = 0.0;
  bool truncated = false;
  bool interpolated = false;  // empty levels inside the window were skipped
};

// Occupied dyadic cells per level over the normalized cloud.  Levels
// with 2^-level < resolution/10 are dropped (flagged).
BoxCountTable box_count(const PointCloud& cloud, int min_level, int max_level);

// Least-squares slope of log N against log 1/eps over the window
// [eps_min, eps_max], with regression stderr.
DimensionEstimate mdim_fit(const BoxCountTable& table, double eps_min,
                           double eps_max);
// Default window: all usable levels minus the two coarsest and the two
// finest.
DimensionEstimate mdim_fit(const BoxCountTable& table);

struct WhitneyCell {
  DyadicSquare square;
  double dist_to_set = 0.0;
};

// Whitney decomposition of the near-complement of the sampled set:
// dyadic squares within distance 1 of the cloud satisfying the
// (1/10, 10) side-vs-distance bracket.  Cells with side < 10 h are
// untrusted and not emitted.
std::vector<WhitneyCell> whitney_decompose(const PointCloud& cloud,
                                           int max_level);

// Per-level Whitney cell counts W_n (index = level).
std::vector<std::size_t> whitney_level_counts(
    const std::vector<WhitneyCell>& cells);

// kappa-hat = slope of log2 W_n against n over [level_min, level_max].
DimensionEstimate kappa_fit(const std::vector<WhitneyCell>& cells,
                            int level_min, int level_max);

// delta-hat from shell increments of the cumulative orbit counts:
// slope of log(N(R_i) - N(R_{i-1})) against R_i.  Empty shells are
// skipped (flagged); needs >= 4 usable shells.
DimensionEstimate delta_fit(const OrbitCountTable& table, double r_min,
                            double r_max);

struct MassNode {
  Disk disk;
  double mass = 0.0;
  std::vector<MassNode> children;
};

struct MassTree {
  MassNode root;
  double min_child_ratio = 0.0;   // realized delta_r
  std::size_t max_children = 0;   // realized N_max
  int depth = 0;

  // Throws std::invalid_argument when the nesting/mass invariants fail.
  void validate() const;
  std::vector<const MassNode*> generation(int g) const;
  // Indented text: generation, center, radius, mass.
  std::string serialize() const;
};

struct FrostmanResult {
  double c = 0.0;  // max observed mu(D(x,r)) / r^alpha
  bool ok = false;
  std::vector<double> per_generation_max;
};

// Evaluates mu(D(x,r))/r^alpha over random disks centered near the
// support with r across all generation scales; ok iff the
// per-generation maxima are stable (last growth <= 10%).
FrostmanResult frostman_verify(const MassTree& tree, std::size_t trials,
                               double alpha, std::uint64_t seed = 1);

// Slope of log mass against log diam over all nodes.
double frostman_alpha_fit(const MassTree& tree);

struct RoundConstructionResult {
  MassTree tree;
  double alpha = 0.0;       // fitted Frostman exponent
  // Per-node realized sums of child diameters relative to the parent.
  double min_diameter_sum_ratio = 0.0;
};

// The disk-replacement Cantor construction: children of each node are
// orbit images of the opposite seed disk, filtered to satisfy
//   (1) D_j inside 2D with disjoint doubles,
//   (2) diam(D)/ratio_cap <= diam(D_j) <= diam(D)/100,
//   (3) sum_j diam(D_j) >= 2 diam(D).
// Aborts (throws) naming the offending node if (3) fails.
RoundConstructionResult round_construction(const Disk& d1, const Disk& d2,
                                           const GroupPresentation& seed1,
                                           const GroupPresentation& seed2,
                                           int depth,
                                           std::size_t orbit_budget = 200000);

// Boundary samples of every disk in the tree (the visible part of the
// limit set of the packing).
PointCloud mass_tree_cloud(const MassTree& tree, std::size_t points_per_node);

}  // namespace kdim

#endif  // KDIM_DIMENSION_HPP_
