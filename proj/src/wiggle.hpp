#ifndef KDIM_WIGGLE_HPP_
#define KDIM_WIGGLE_HPP_

#include <vector>

#include "dimension.hpp"
#include "limitset.hpp"

namespace kdim {

struct Line {
  Vec2 point;
  Vec2 dir;  // unit
  double dist_to(const Vec2& p) const {
    return std::abs(dir.cross(p - point));
  }
};

struct BetaEntry {
  DyadicSquare square;
  double beta = 0.0;
  Line witness;
  // Secondary statistic: normalized Hausdorff distance between the
  // cloud in 3Q and the witness line clipped to 3Q.
  double delta = 0.0;
};

// beta(Q) = inf over lines meeting Q of sup dist(cloud in 3Q, L),
// normalized by the side of Q.  Minimum-width strip via rotating
// calipers when its midline meets Q, otherwise a direction sweep with
// the offset clamped so the line meets Q.
BetaEntry beta_number(const DyadicSquare& q, const PointCloud& cloud);

struct TspSum {
  std::vector<int> levels;
  std::vector<double> per_level;  // sum of beta^2 l(Q) at that level
  double total = 0.0;
};

TspSum tsp_sum(const PointCloud& cloud, int min_level, int max_level);

struct WiggleCertificate {
  double beta0 = 0.0;
  std::size_t qualifying_square_count = 0;
  double scale_min = 0.0, scale_max = 0.0;
  double bound_c = 1.0;
  double lower_bound = 1.0;     // 1 + bound_c beta0^2
  // Proof-faithful exponent alpha(k) = 1 + log 1000 / (k log 2) with
  // k = ceil(max(20/beta0, K0/beta0^2)); reported alongside.
  double proof_alpha = 1.0;
  double proof_k = 0.0;
};

WiggleCertificate wiggliness(const PointCloud& cloud, int min_level,
                             int max_level, double bound_c = 1.0,
                             double k0 = 60000.0);

struct SnowflakeParams {
  double beta = 0.0;  // in (0, 1/2)
  int depth = 0;      // <= 12
};

// Vertices of the four-segment replacement snowflake; 4^depth + 1
// points on [0,1].
PointCloud snowflake(const SnowflakeParams& p);

// Root of the Moran equation 2 (1/4)^d + 2 (1/4 + beta^2)^d = 1.
double snowflake_moran_dimension(double beta);

// Occupied dyadic squares at one level (keys of the level grid).
std::vector<DyadicSquare> occupied_squares(const PointCloud& cloud, int level);

}  // namespace kdim

#endif  // KDIM_WIGGLE_HPP_
