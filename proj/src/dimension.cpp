#include "dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace kdim {

namespace {

struct LinearFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  if (n > 2) {
    double intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] - (intercept + f.slope * x[i]);
      ss += r * r;
    }
    f.stderr_ = std::sqrt(ss / (n - 2) / sxx);
  }
  return f;
}

std::uint64_t cell_key(std::int64_t ix, std::int64_t iy) {
  return (static_cast<std::uint64_t>(ix) << 32) ^
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)) * 0x9e3779b97f4a7c15ull;
}

}  // namespace

BoxCountTable box_count(const PointCloud& cloud, int min_level, int max_level) {
  if (min_level > max_level)
    throw std::invalid_argument("box_count: bad level range");
  BoxCountTable t;
  for (int n = min_level; n <= max_level; ++n) {
    double eps = std::ldexp(1.0, -n);
    if (eps < cloud.resolution / 10.0) {
      t.levels_dropped = true;
      continue;
    }
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(cloud.points.size() / 4 + 8);
    double scale = std::ldexp(1.0, n);
    for (const auto& p : cloud.points) {
      auto ix = static_cast<std::int64_t>(std::floor(p.x * scale));
      auto iy = static_cast<std::int64_t>(std::floor(p.y * scale));
      cells.insert(cell_key(ix, iy));
    }
    t.levels.push_back(n);
    t.scales.push_back(eps);
    t.counts.push_back(cells.size());
  }
  return t;
}

DimensionEstimate mdim_fit(const BoxCountTable& table, double eps_min,
                           double eps_max) {
  std::vector<double> x, y;
  double wmin = std::numeric_limits<double>::infinity(), wmax = 0.0;
  for (std::size_t i = 0; i < table.scales.size(); ++i) {
    double eps = table.scales[i];
    if (eps < eps_min || eps > eps_max) continue;
    x.push_back(std::log(1.0 / eps));
    y.push_back(std::log(static_cast<double>(table.counts[i])));
    wmin = std::min(wmin, eps);
    wmax = std::max(wmax, eps);
  }
  if (x.size() < 4)
    throw std::invalid_argument("mdim_fit: fewer than 4 scales in window");
  auto f = linear_fit(x, y);
  DimensionEstimate e;
  e.value = f.slope;
  e.stderr_ = f.stderr_;
  e.method = FitMethod::BoxCount;
  e.window_min = wmin;
  e.window_max = wmax;
  e.truncated = table.levels_dropped;
  return e;
}

DimensionEstimate mdim_fit(const BoxCountTable& table) {
  if (table.scales.size() < 8)
    throw std::invalid_argument("mdim_fit: too few levels for default window");
  // Drop the two coarsest and two finest usable levels.
  double eps_max = table.scales[2];
  double eps_min = table.scales[table.scales.size() - 3];
  return mdim_fit(table, eps_min, eps_max);
}

std::vector<WhitneyCell> whitney_decompose(const PointCloud& cloud,
                                           int max_level) {
  if (!cloud.normalized)
    throw std::invalid_argument("whitney_decompose: cloud not normalized");
  PointIndex index(cloud.points);
  std::vector<WhitneyCell> out;
  const double floor_side = 10.0 * cloud.resolution;

  struct Item {
    DyadicSquare q;
  };
  std::vector<Item> stack;
  // Root squares, side 4, covering [-4,4]^2 around the normalized cloud.
  for (std::int64_t ix = -1; ix <= 0; ++ix)
    for (std::int64_t iy = -1; iy <= 0; ++iy)
      stack.push_back({DyadicSquare{-2, ix, iy}});

  while (!stack.empty()) {
    DyadicSquare q = stack.back().q;
    stack.pop_back();
    double d = index.rect_dist(q.xmin(), q.ymin(), q.xmax(), q.ymax());
    if (d > 1.0) continue;  // only squares within distance 1 of the set
    double side = q.side();
    if (d >= 2.0 * side) {
      out.push_back({q, d});
      continue;
    }
    if (q.level >= max_level || side / 2.0 < floor_side) continue;
    for (int cx = 0; cx <= 1; ++cx)
      for (int cy = 0; cy <= 1; ++cy)
        stack.push_back({DyadicSquare{q.level + 1, 2 * q.ix + cx,
                                      2 * q.iy + cy}});
  }
  // Bracket sanity: (1/10) dist <= side <= 10 dist for every cell.
  for (const auto& c : out) {
    double s = c.square.side();
    if (!(s >= c.dist_to_set / 10.0 - 1e-12 && s <= 10.0 * c.dist_to_set + 1e-12))
      throw std::logic_error("whitney_decompose: bracket violated");
  }
  return out;
}

std::vector<std::size_t> whitney_level_counts(
    const std::vector<WhitneyCell>& cells) {
  int max_level = 0;
  for (const auto& c : cells) max_level = std::max(max_level, c.square.level);
  std::vector<std::size_t> w(max_level + 1, 0);
  for (const auto& c : cells)
    if (c.square.level >= 0) ++w[c.square.level];
  return w;
}

DimensionEstimate kappa_fit(const std::vector<WhitneyCell>& cells,
                            int level_min, int level_max) {
  auto w = whitney_level_counts(cells);
  std::vector<double> x, y;
  bool gaps = false;
  for (int n = level_min; n <= level_max && n < static_cast<int>(w.size());
       ++n) {
    if (w[n] == 0) {
      gaps = true;
      continue;
    }
    x.push_back(n);
    y.push_back(std::log2(static_cast<double>(w[n])));
  }
  if (x.size() < 4)
    throw std::invalid_argument("kappa_fit: fewer than 4 levels in window");
  auto f = linear_fit(x, y);
  DimensionEstimate e;
  e.value = f.slope;
  e.stderr_ = f.stderr_;
  e.method = FitMethod::WhitneyKappa;
  e.window_min = level_min;
  e.window_max = level_max;
  e.interpolated = gaps;
  return e;
}

DimensionEstimate delta_fit(const OrbitCountTable& table, double r_min,
                            double r_max) {
  std::vector<double> x, y;
  bool gaps = false;
  double wmin = std::numeric_limits<double>::infinity(), wmax = 0.0;
  for (std::size_t i = 1; i < table.radii.size(); ++i) {
    double r = table.radii[i];
    if (r < r_min || r > r_max) continue;
    std::size_t shell = table.counts[i] - table.counts[i - 1];
    if (shell == 0) {
      gaps = true;
      continue;
    }
    x.push_back(r);
    y.push_back(std::log(static_cast<double>(shell)));
    wmin = std::min(wmin, r);
    wmax = std::max(wmax, r);
  }
  if (x.size() < 4)
    throw std::invalid_argument("delta_fit: fewer than 4 usable radii");
  auto f = linear_fit(x, y);
  DimensionEstimate e;
  e.value = f.slope;
  e.stderr_ = f.stderr_;
  e.method = FitMethod::PoincareExponent;
  e.window_min = wmin;
  e.window_max = wmax;
  e.truncated = table.truncated;
  e.interpolated = gaps;
  return e;
}

namespace {

// Uniform-grid index over doubled disks: clashes(d) is true iff some
// inserted disk k has dist(centers) < 2 (r_d + r_k).  Two such disks
// have overlapping doubled squares, which then share a grid cell, so a
// cell-local exact check is exhaustive.
class DiskGrid {
 public:
  explicit DiskGrid(double cell) : h_(std::max(cell, 1e-300)) {}

  bool clashes(const Disk& d) const {
    bool hit = false;
    scan(d, [&](long long key) {
      auto it = cells_.find(key);
      if (it == cells_.end()) return;
      for (int i : it->second) {
        const Disk& k = disks_[i];
        if (dist(d.center, k.center) < 2.0 * (d.radius + k.radius) - 1e-12)
          hit = true;
      }
    });
    return hit;
  }

  void insert(const Disk& d) {
    int idx = static_cast<int>(disks_.size());
    disks_.push_back(d);
    scan(d, [&](long long key) {
      auto& cell = cells_[key];
      if (cell.empty() || cell.back() != idx) cell.push_back(idx);
    });
  }

 private:
  template <typename F>
  void scan(const Disk& d, F&& f) const {
    double r = 2.0 * d.radius;
    auto lo_x = static_cast<long long>(std::floor((d.center.x - r) / h_));
    auto hi_x = static_cast<long long>(std::floor((d.center.x + r) / h_));
    auto lo_y = static_cast<long long>(std::floor((d.center.y - r) / h_));
    auto hi_y = static_cast<long long>(std::floor((d.center.y + r) / h_));
    for (long long ix = lo_x; ix <= hi_x; ++ix)
      for (long long iy = lo_y; iy <= hi_y; ++iy)
        f((ix << 32) ^ (iy & 0xffffffffLL));
  }

  double h_;
  std::vector<Disk> disks_;
  std::unordered_map<long long, std::vector<int>> cells_;
};

void validate_node(const MassNode& n) {
  if (n.children.empty()) return;
  double mass_sum = 0.0;
  double r_max = 0.0;
  for (const auto& c : n.children) {
    mass_sum += c.mass;
    r_max = std::max(r_max, c.disk.radius);
    // child inside doubled parent
    if (dist(c.disk.center, n.disk.center) + c.disk.radius >
        2.0 * n.disk.radius + 1e-9)
      throw std::invalid_argument("MassTree: child escapes doubled parent");
  }
  if (std::abs(mass_sum - n.mass) > 1e-12 * std::max(1.0, n.mass))
    throw std::invalid_argument("MassTree: child masses do not sum to parent");
  DiskGrid grid(4.0 * r_max);
  for (const auto& c : n.children) {
    if (grid.clashes(c.disk))
      throw std::invalid_argument("MassTree: sibling doubles overlap");
    grid.insert(c.disk);
  }
  for (const auto& c : n.children) validate_node(c);
}

void collect_generation(const MassNode& n, int g,
                        std::vector<const MassNode*>& out) {
  if (g == 0) {
    out.push_back(&n);
    return;
  }
  for (const auto& c : n.children) collect_generation(c, g - 1, out);
}

double disk_mass(const MassNode& n, const Vec2& x, double r) {
  // The node's mass is supported inside its doubled disk (children may
  // poke out of the disk itself but never out of the double).
  double d = dist(n.disk.center, x);
  if (d > r + 2.0 * n.disk.radius) return 0.0;       // disjoint
  if (d + 2.0 * n.disk.radius <= r) return n.mass;   // contained
  if (n.children.empty()) return n.mass;             // partial leaf: upper bound
  double s = 0.0;
  for (const auto& c : n.children) s += disk_mass(c, x, r);
  return s;
}

void serialize_node(const MassNode& n, int g, std::ostringstream& os) {
  for (int i = 0; i < g; ++i) os << "  ";
  os << g << ' ' << n.disk.center.x << ' ' << n.disk.center.y << ' '
     << n.disk.radius << ' ' << n.mass << '\n';
  for (const auto& c : n.children) serialize_node(c, g + 1, os);
}

}  // namespace

void MassTree::validate() const { validate_node(root); }

std::vector<const MassNode*> MassTree::generation(int g) const {
  std::vector<const MassNode*> out;
  collect_generation(root, g, out);
  return out;
}

std::string MassTree::serialize() const {
  std::ostringstream os;
  os.precision(17);
  serialize_node(root, 0, os);
  return os.str();
}

FrostmanResult frostman_verify(const MassTree& tree, std::size_t trials,
                               double alpha, std::uint64_t seed) {
  tree.validate();
  FrostmanResult res;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (int g = 0; g <= tree.depth; ++g) {
    auto nodes = tree.generation(g);
    if (nodes.empty()) break;
    double gen_max = 0.0;
    std::size_t per_gen = std::max<std::size_t>(1, trials / (tree.depth + 1));
    for (std::size_t t = 0; t < per_gen; ++t) {
      const MassNode* n = nodes[rng() % nodes.size()];
      double r = n->disk.diam() * std::pow(4.0, unif(rng));  // up to 4x scale
      double jitter = n->disk.radius * unif(rng);
      double th = 2.0 * M_PI * unif(rng);
      Vec2 x = n->disk.center + Vec2(std::cos(th), std::sin(th)) * jitter;
      double mu = disk_mass(tree.root, x, r);
      if (mu > 0.0) gen_max = std::max(gen_max, mu / std::pow(r, alpha));
    }
    res.per_generation_max.push_back(gen_max);
    res.c = std::max(res.c, gen_max);
  }
  res.ok = std::isfinite(res.c) && res.c > 0.0;
  if (res.per_generation_max.size() >= 2) {
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < res.per_generation_max.size(); ++i)
      prev = std::max(prev, res.per_generation_max[i]);
    double last = res.per_generation_max.back();
    if (prev > 0.0 && last > 1.1 * prev) res.ok = false;
  }
  return res;
}

namespace {

void min_edge_exponent(const MassNode& n, double& best, bool& any) {
  for (const auto& c : n.children) {
    double dm = std::log(n.mass / c.mass);
    double dd = std::log(n.disk.diam() / c.disk.diam());
    if (dd > 0.0 && dm > 0.0) {
      best = std::min(best, dm / dd);
      any = true;
    }
    min_edge_exponent(c, best, any);
  }
}

}  // namespace

double frostman_alpha_fit(const MassTree& tree) {
  // The exponent the tree certifies: the minimum over parent->child
  // edges of log(mass ratio) / log(diameter ratio).  A pooled per-node
  // regression would be dominated by the within-generation slope (mass
  // proportional to diameter) and misses the branch that actually
  // bounds mu(D(x,r)) / r^alpha.
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  min_edge_exponent(tree.root, best, any);
  if (!any)
    throw std::invalid_argument("frostman_alpha_fit: single-node tree");
  return best;
}

namespace {

// Image of a circle under a Moebius map via three boundary points.
Disk map_disk(const Moebius& m, const Disk& d) {
  Complex c(d.center.x, d.center.y);
  Complex imgs[3];
  for (int k = 0; k < 3; ++k) {
    double th = 2.0 * M_PI * k / 3.0 + 0.1;
    Complex z = c + d.radius * Complex(std::cos(th), std::sin(th));
    auto w = apply(m, SpherePoint(z));
    if (w.is_infinity())
      throw std::invalid_argument("map_disk: image is unbounded");
    imgs[k] = w.value();
  }
  // Circumcenter of the three image points.
  Complex a = imgs[0], b = imgs[1], cc = imgs[2];
  double d2 = 2.0 * (a.real() * (b.imag() - cc.imag()) +
                     b.real() * (cc.imag() - a.imag()) +
                     cc.real() * (a.imag() - b.imag()));
  if (std::abs(d2) < 1e-30)
    throw std::invalid_argument("map_disk: degenerate image circle");
  double ux = (std::norm(a) * (b.imag() - cc.imag()) +
               std::norm(b) * (cc.imag() - a.imag()) +
               std::norm(cc) * (a.imag() - b.imag())) / d2;
  double uy = (std::norm(a) * (cc.real() - b.real()) +
               std::norm(b) * (a.real() - cc.real()) +
               std::norm(cc) * (b.real() - a.real())) / d2;
  Vec2 center(ux, uy);
  return Disk(center, std::abs(a - Complex(ux, uy)));
}

struct ChildTemplate {
  Moebius word;   // element of the stabilizer of this base disk
  int other;      // index of the seed disk it maps (0 or 1)
};

}  // namespace

RoundConstructionResult round_construction(const Disk& d1, const Disk& d2,
                                           const GroupPresentation& seed1,
                                           const GroupPresentation& seed2,
                                           int depth,
                                           std::size_t orbit_budget) {
  // Validates separation as in free_product_packing.
  (void)free_product_packing(seed1, d1, seed2, d2);
  const Disk base[2] = {d1, d2};
  GroupPresentation conj[2] = {conjugate_into_disk(seed1, d1),
                               conjugate_into_disk(seed2, d2)};
  conj[0].mode = RelationMode::Dedupe;
  conj[1].mode = RelationMode::Dedupe;

  RoundConstructionResult res;
  res.min_diameter_sum_ratio = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t max_children = 0;

  // Candidate child maps for each base disk: orbit elements of its
  // stabilizer applied to the opposite disk.
  std::vector<ChildTemplate> tmpl[2];
  for (int b = 0; b < 2; ++b) {
    auto orbit = enumerate_orbit(conj[b], 60,
                                 std::numeric_limits<double>::infinity(),
                                 orbit_budget);
    int other = 1 - b;
    struct Cand {
      Moebius w;
      Disk img;
    };
    std::vector<Cand> cands;
    for (const auto& p : orbit.points) {
      if (p.depth == 0) continue;
      Disk img;
      try {
        img = map_disk(p.matrix, base[other]);
      } catch (const std::invalid_argument&) {
        continue;
      }
      // Conditions (1) and (2) against the base disk.
      if (img.diam() > base[b].diam() / 100.0) continue;
      if (dist(img.center, base[b].center) + img.radius >
          2.0 * base[b].radius)
        continue;
      cands.push_back({p.matrix, img});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) {
                return a.img.radius > b.img.radius;
              });
    // Greedy selection with disjoint doubles, until the diameter sum
    // clears condition (3) with some margin.  The template keeps a
    // larger pool (2.4 diam) than any single node needs, so child nodes
    // can afford to lose some candidates to distortion.
    double target = 2.4 * base[b].diam();
    double sum = 0.0;
    DiskGrid grid(base[b].diam() / 50.0);
    for (const auto& c : cands) {
      if (grid.clashes(c.img)) continue;
      grid.insert(c.img);
      tmpl[b].push_back({c.w, other});
      sum += c.img.diam();
      if (sum >= target) break;
    }
    if (sum < 2.0 * base[b].diam()) {
      std::ostringstream os;
      os << "round_construction: condition (3) fails at seed disk " << b + 1
         << " (sum " << sum / base[b].diam() << " diam, need 2)";
      throw std::invalid_argument(os.str());
    }
  }

  // Recursive tree construction: a node is (map, base index).
  struct Frame {
    MassNode* node;
    Moebius map;
    int b;
    int gen;
  };
  res.tree.root.disk = d1;
  res.tree.root.mass = 1.0;
  res.tree.depth = depth;

  std::vector<Frame> stack{{&res.tree.root, Moebius::identity(), 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.gen >= depth) continue;
    const Disk& parent_disk = f.node->disk;
    struct Built {
      Moebius map;
      int b;
      Disk disk;
    };
    std::vector<Built> built;
    double sum = 0.0;
    // Stop once condition (3) holds with a small margin: extra children
    // only multiply the node count of the next generation.
    double node_target = 2.05 * parent_disk.diam();
    DiskGrid grid(parent_disk.diam() / 50.0);
    for (const auto& t : tmpl[f.b]) {
      Moebius child_map = compose(f.map, t.word);
      Disk img;
      try {
        img = map_disk(child_map, base[t.other]);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (img.diam() > parent_disk.diam() / 100.0) continue;
      if (dist(img.center, parent_disk.center) + img.radius >
          2.0 * parent_disk.radius)
        continue;
      if (grid.clashes(img)) continue;
      grid.insert(img);
      built.push_back({child_map, t.other, img});
      sum += img.diam();
      if (sum >= node_target) break;
    }
    double ratio = sum / parent_disk.diam();
    if (ratio < 2.0) {
      std::ostringstream os;
      os << "round_construction: condition (3) fails at generation "
         << f.gen + 1 << " node (center " << parent_disk.center.x << ','
         << parent_disk.center.y << "; sum " << ratio << " diam)";
      throw std::invalid_argument(os.str());
    }
    res.min_diameter_sum_ratio = std::min(res.min_diameter_sum_ratio, ratio);
    max_children = std::max(max_children, built.size());
    f.node->children.reserve(built.size());
    for (const auto& bnode : built) {
      MassNode child;
      child.disk = bnode.disk;
      child.mass = f.node->mass * bnode.disk.diam() / sum;
      min_ratio = std::min(min_ratio,
                           bnode.disk.diam() / parent_disk.diam());
      f.node->children.push_back(std::move(child));
    }
    // Fix rounding so the masses sum exactly.
    double msum = 0.0;
    for (auto& c : f.node->children) msum += c.mass;
    if (!f.node->children.empty())
      f.node->children.back().mass += f.node->mass - msum;
    for (std::size_t i = 0; i < f.node->children.size(); ++i)
      stack.push_back({&f.node->children[i], built[i].map, built[i].b,
                       f.gen + 1});
  }

  res.tree.min_child_ratio = min_ratio;
  res.tree.max_children = max_children;
  res.tree.validate();
  if (depth > 0) {
    // Report the certified exponent with a 20% margin on its excess
    // over 1: the edge bound is asymptotic and finite-depth sampling in
    // frostman_verify overshoots it slightly.
    double fit = frostman_alpha_fit(res.tree);
    res.alpha = fit > 1.0 ? 1.0 + 0.8 * (fit - 1.0) : fit;
  } else {
    res.alpha = 1.0;
  }
  return res;
}

PointCloud mass_tree_cloud(const MassTree& tree, std::size_t budget) {
  // Distribute samples over all node boundary circles in proportion to
  // diameter, with a per-node floor.
  std::vector<const MassNode*> nodes;
  for (int g = 0; g <= tree.depth; ++g)
    for (const auto* n : tree.generation(g)) nodes.push_back(n);
  double total_diam = 0.0;
  for (const auto* n : nodes) total_diam += n->disk.diam();
  std::vector<Vec2> pts;
  pts.reserve(budget + 64);
  // The floor degrades gracefully on huge trees: once 24 points per node
  // would blow past the budget, tiny nodes get zero samples instead.
  double floor_k =
      std::min(24.0, static_cast<double>(budget) /
                         static_cast<double>(nodes.size()));
  for (const auto* n : nodes) {
    auto k = static_cast<std::size_t>(
        std::max(floor_k, budget * n->disk.diam() / total_diam));
    for (std::size_t i = 0; i < k; ++i) {
      double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(k);
      pts.emplace_back(n->disk.center.x + n->disk.radius * std::cos(th),
                       n->disk.center.y + n->disk.radius * std::sin(th));
    }
  }
  auto cloud = PointCloud::from_points(std::move(pts), "mass-tree boundary");
  cloud.normalize();
  return cloud;
}

}  // namespace kdim
