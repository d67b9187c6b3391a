#include "groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kdim {

GroupPresentation GroupPresentation::make(std::vector<Moebius> gens,
                                          RelationMode mode) {
  GroupPresentation g;
  for (const auto& m : gens)
    if (m.is_identity())
      throw std::invalid_argument("GroupPresentation: generator is identity");
  g.generators = std::move(gens);
  for (std::size_t i = 0; i < g.generators.size(); ++i)
    g.labels.push_back("g" + std::to_string(i + 1));
  g.mode = mode;
  return g;
}

std::string GroupPresentation::serialize() const {
  std::ostringstream os;
  os << "generators " << generators.size() << ' '
     << (mode == RelationMode::Free ? "free" : "dedupe") << '\n';
  for (const auto& m : generators) os << m.serialize() << '\n';
  return os.str();
}

GroupPresentation GroupPresentation::parse(const std::string& text) {
  std::istringstream is(text);
  std::string kw, modeword;
  std::size_t m;
  if (!(is >> kw >> m >> modeword) || kw != "generators")
    throw std::invalid_argument("group spec: bad header");
  RelationMode mode;
  if (modeword == "free")
    mode = RelationMode::Free;
  else if (modeword == "dedupe")
    mode = RelationMode::Dedupe;
  else
    throw std::invalid_argument("group spec: unknown mode " + modeword);
  std::string line;
  std::getline(is, line);  // end of header
  std::vector<Moebius> gens;
  while (gens.size() < m && std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    gens.push_back(Moebius::parse(line));
  }
  if (gens.size() != m)
    throw std::invalid_argument("group spec: transform count mismatch");
  return make(std::move(gens), mode);
}

namespace {

// Quantized hash of a canonical-sign matrix; candidate collisions are
// re-checked with the exact matrix-distance test.
struct MatrixKey {
  std::array<std::int64_t, 8> q;
  bool operator==(const MatrixKey&) const = default;
};

struct MatrixKeyHash {
  std::size_t operator()(const MatrixKey& k) const {
    std::size_t h = 14695981039346656037ull;
    for (auto v : k.q) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

MatrixKey quantize(const Moebius& m, double grid) {
  auto q = [&](double x) {
    return static_cast<std::int64_t>(std::llround(x / grid));
  };
  return MatrixKey{{q(m.a().real()), q(m.a().imag()), q(m.b().real()),
                    q(m.b().imag()), q(m.c().real()), q(m.c().imag()),
                    q(m.d().real()), q(m.d().imag())}};
}

}  // namespace

OrbitResult enumerate_orbit(const GroupPresentation& g, int max_depth,
                            double max_rho, std::size_t max_points,
                            double prune_slack) {
  if (max_depth < 0) throw std::invalid_argument("enumerate_orbit: max_depth < 0");
  if (max_points == 0) throw std::invalid_argument("enumerate_orbit: max_points == 0");
  const int m = static_cast<int>(g.generators.size());

  if (prune_slack < 0.0) {
    prune_slack = 0.0;
    for (const auto& gen : g.generators)
      prune_slack = std::max(prune_slack, displacement(gen));
  }
  const double rho_cut = max_rho + prune_slack;
  const bool dedupe = g.mode == RelationMode::Dedupe;

  // Letters: +i / -i for generator i and its inverse.
  std::vector<Moebius> letter(2 * m + 1);
  for (int i = 1; i <= m; ++i) {
    letter[m + i - 1 + 1] = g.generators[i - 1];  // index m+i for +i
    letter[m - i] = g.generators[i - 1].inverse();  // index m-i for -i
  }
  auto letter_of = [&](int s) -> const Moebius& { return letter[m + s]; };

  OrbitResult result;
  result.max_rho = max_rho;
  result.prune_slack = prune_slack;

  std::unordered_multimap<MatrixKey, std::size_t, MatrixKeyHash> seen;
  auto try_insert = [&](const OrbitPoint& p) -> bool {
    MatrixKey key = quantize(p.matrix, 1e-6);
    auto [lo, hi] = seen.equal_range(key);
    for (auto it = lo; it != hi; ++it)
      if (result.points[it->second].matrix.dist(p.matrix) <=
          Tolerances::dedupe)
        return false;
    seen.emplace(key, result.points.size());
    return true;
  };

  OrbitPoint id;
  id.matrix = Moebius::identity();
  id.rho = 0.0;
  id.depth = 0;
  result.points.push_back(id);
  if (dedupe) seen.emplace(quantize(id.matrix, 1e-6), 0);

  // Frontier holds indices into result.points.
  std::vector<std::size_t> frontier = {0};
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      // Copy: result.points may reallocate while we append.
      const OrbitPoint parent = result.points[idx];
      for (int s = -m; s <= m; ++s) {
        if (s == 0 || s == -parent.last) continue;  // free reduction
        OrbitPoint child;
        try {
          child.matrix = compose(parent.matrix, letter_of(s));
        } catch (const std::invalid_argument&) {
          // Very deep words lose the determinant to cancellation (entries
          // ~ 2^n); such branches are numerically spent, prune them.
          continue;
        }
        child.rho = displacement(child.matrix);
        if (!std::isfinite(child.rho)) continue;
        if (child.rho > rho_cut) continue;
        child.parent = static_cast<std::int64_t>(idx);
        child.last = s;
        child.depth = depth;
        if (dedupe) {
          if (!try_insert(child)) continue;
          result.points.push_back(std::move(child));
        } else {
          result.points.push_back(std::move(child));
        }
        next.push_back(result.points.size() - 1);
        if (result.points.size() >= max_points) {
          result.budget_hit = true;
          result.max_depth_reached = depth;
          return result;
        }
      }
    }
    result.max_depth_reached = depth;
    frontier = std::move(next);
    if (depth == max_depth && !frontier.empty()) result.depth_hit = true;
  }
  return result;
}

std::vector<int> OrbitResult::word(std::size_t i) const {
  std::vector<int> w;
  for (std::int64_t j = static_cast<std::int64_t>(i); j > 0;
       j = points[static_cast<std::size_t>(j)].parent)
    w.push_back(points[static_cast<std::size_t>(j)].last);
  std::reverse(w.begin(), w.end());
  return w;
}

OrbitCountTable orbit_counts(const std::vector<OrbitPoint>& points,
                             const std::vector<double>& radii) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("orbit_counts: radii must be increasing");
  std::vector<double> rhos;
  rhos.reserve(points.size());
  for (const auto& p : points) rhos.push_back(p.rho);
  std::sort(rhos.begin(), rhos.end());
  OrbitCountTable t;
  t.radii = radii;
  for (double r : radii) {
    auto it = std::upper_bound(rhos.begin(), rhos.end(), r);
    t.counts.push_back(static_cast<std::size_t>(it - rhos.begin()));
  }
  return t;
}

std::vector<SphereOrbitPoint> sphere_orbit(const GroupPresentation& g,
                                           const SpherePoint& basepoint,
                                           int max_depth,
                                           std::size_t max_points) {
  auto orbit = enumerate_orbit(g, max_depth,
                               std::numeric_limits<double>::infinity(),
                               max_points);
  std::vector<SphereOrbitPoint> out;
  out.reserve(orbit.points.size());
  for (const auto& p : orbit.points)
    out.push_back({apply(p.matrix, basepoint), p.depth});
  return out;
}

}  // namespace kdim
