#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dimension.hpp"
#include "families.hpp"
#include "io.hpp"
#include "limitset.hpp"
#include "schwarzian.hpp"
#include "wiggle.hpp"

namespace kdim {

namespace {

struct Ctx {
  double scale = 1.0;
  std::uint64_t seed = 1;
  bool corrupt = false;
  // Filled by the check body.
  std::ostringstream measured;
  bool budget_limited = false;  // reduced budget => miss becomes a skip
};

std::vector<double> delta_radii(double lo, double hi, double step) {
  std::vector<double> r;
  for (double v = lo; v <= hi + 1e-9; v += step) r.push_back(v);
  return r;
}

std::size_t scaled(double scale, double full, double floor) {
  return static_cast<std::size_t>(std::max(floor, full * scale));
}

bool check_parabolic_delta(Ctx& c) {
  auto g = family_group(c.corrupt ? "cyclic-loxodromic" : "cyclic-parabolic");
  std::size_t budget = scaled(c.scale, 2e6, 2e4);
  auto orbit = enumerate_orbit(g, 400000, 24.0, budget);
  c.budget_limited = orbit.budget_hit;
  auto e = delta_fit(orbit_counts(orbit.points, delta_radii(8, 24, 2)), 8, 24);
  c.measured << "delta=" << e.value << " n=" << orbit.points.size();
  return std::abs(e.value - 0.5) <= 0.03;
}

bool check_loxodromic_delta(Ctx& c) {
  auto g = family_group(c.corrupt ? "cyclic-parabolic" : "cyclic-loxodromic");
  auto orbit = enumerate_orbit(g, 400000, 24.0, scaled(c.scale, 2e6, 2e4));
  c.budget_limited = orbit.budget_hit;
  auto e = delta_fit(orbit_counts(orbit.points, delta_radii(8, 24, 2)), 8, 24);
  c.measured << "delta=" << e.value;
  return e.value <= 0.05;
}

bool check_modular_circle(Ctx& c) {
  auto g = family_group(c.corrupt ? "schottky4" : "modular");
  std::size_t budget = scaled(c.scale, 2.4e5, 2e3);
  c.budget_limited = c.scale < 1.0;
  auto cloud = sample_limit_set(g, budget, SampleMethod::WordFixedPoints,
                                SpherePoint::infinity());
  // Counts double reliably through level 10 at this budget; deeper levels
  // are starved and drag the slope down.
  auto e = mdim_fit(box_count(cloud, 0, 16), std::ldexp(1.0, -10), 0.25);
  c.measured << "mdim=" << e.value << " points=" << cloud.points.size();
  bool enough = c.scale < 1.0 || cloud.points.size() >= 100000;
  return enough && std::abs(e.value - 1.0) <= 0.03;
}

bool check_one_over_n(Ctx& c) {
  auto cloud = c.corrupt ? family_cloud("cantor") : family_cloud("one-over-n");
  auto e = mdim_fit(box_count(cloud, 5, 17), std::ldexp(1.0, -16),
                    std::ldexp(1.0, -6));
  c.measured << "mdim=" << e.value;
  return std::abs(e.value - 0.5) <= 0.05;
}

bool check_cantor(Ctx& c) {
  FamilyParams p;
  p.depth = c.corrupt ? 4 : 12;
  auto cloud = family_cloud("cantor", p);
  auto md = mdim_fit(box_count(cloud, 0, 19));
  auto cells = whitney_decompose(cloud, 18);
  auto kp = kappa_fit(cells, 3, 15);
  const double target = std::log(2.0) / std::log(3.0);
  c.measured << "mdim=" << md.value << " kappa=" << kp.value;
  return std::abs(md.value - target) <= 0.02 &&
         std::abs(kp.value - target) <= 0.05;
}

bool check_schottky_agreement(Ctx& c) {
  auto g = family_group("schottky4");
  std::size_t budget = scaled(c.scale, 1.6e6, 1e4);
  c.budget_limited = c.scale < 1.0;
  // rho <= 26 is the largest complete ball inside the element budget;
  // a truncated ball would drag the count fit down.
  auto orbit = enumerate_orbit(g, 200, 26.0, budget);
  c.budget_limited = c.budget_limited || orbit.budget_hit;
  auto de = delta_fit(orbit_counts(orbit.points, delta_radii(8, 24, 2)),
                      8, 24);
  auto cloud = sample_limit_set(g, scaled(c.scale, 4e5, 2e3),
                                SampleMethod::WordFixedPoints,
                                SpherePoint::infinity());
  auto md = mdim_fit(box_count(cloud, 0, 14), std::ldexp(1.0, -12), 0.25);
  auto kp = kappa_fit(whitney_decompose(cloud, 14), 4, 12);
  double mdv = c.corrupt ? md.value + 0.2 : md.value;
  c.measured << "delta=" << de.value << " mdim=" << mdv
             << " kappa=" << kp.value << " n=" << orbit.points.size();
  bool enough = c.scale < 1.0 || orbit.points.size() >= 1000000;
  return enough && std::abs(de.value - mdv) <= 0.05 &&
         std::abs(kp.value - mdv) <= 0.05;
}

// A unit circle sampled densely (the corrupted stand-in for the packing
// cloud: dimension exactly 1).
PointCloud sample_circle_cloud() {
  std::vector<Vec2> pts;
  for (int i = 0; i < 100000; ++i) {
    double th = 2.0 * M_PI * i / 100000.0;
    pts.emplace_back(std::cos(th), std::sin(th));
  }
  auto cloud = PointCloud::from_points(std::move(pts), "circle");
  cloud.normalize();
  return cloud;
}

bool check_packing(Ctx& c) {
  c.budget_limited = c.scale < 1.0;
  auto res = family_packing(2, scaled(c.scale, 2e5, 2e4));
  PointCloud cloud =
      c.corrupt ? sample_circle_cloud() : mass_tree_cloud(res.tree, 200000);
  auto md = mdim_fit(box_count(cloud, 0, 14));
  auto fr = frostman_verify(res.tree, scaled(c.scale, 2e4, 2e3), res.alpha,
                            c.seed);
  c.measured << "mdim=" << md.value << " alpha=" << res.alpha
             << " frostman_c=" << fr.c;
  return md.value >= 1.02 && res.alpha > 1.0 && fr.ok;
}

bool check_snowflake(Ctx& c) {
  double prev_beta0 = -1.0;
  bool ok = true;
  for (double beta : {0.1, 0.2, 0.3}) {
    FamilyParams p;
    p.beta = beta;
    p.depth = 8;
    auto cloud = family_cloud("snowflake", p);
    auto md = mdim_fit(box_count(cloud, 0, 15));
    double moran = snowflake_moran_dimension(beta) + (c.corrupt ? 0.1 : 0.0);
    auto cert = wiggliness(cloud, 2, 10);
    c.measured << "beta=" << beta << ":(mdim=" << md.value
               << ",moran=" << moran << ",beta0=" << cert.beta0 << ") ";
    ok = ok && std::abs(md.value - moran) <= 0.03 && cert.beta0 > prev_beta0;
    prev_beta0 = cert.beta0;
  }
  return ok;
}

bool check_schwarzian(Ctx& c) {
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  auto rc = [&] { return Complex(nd(rng), nd(rng)); };

  double worst_moebius = 0.0;
  int done = 0;
  while (done < 1000) {
    Complex a = rc(), b = rc(), cc = rc(), d = rc();
    if (std::abs(a * d - b * cc) < 1e-3) continue;
    Moebius m(a, b, cc, d);
    // Keep the pole well outside the sampling disk around 0.
    if (std::abs(m.c()) > 1e-9 && std::abs(-m.d() / m.c()) < 1.0) continue;
    auto f = AnalyticMap::moebius(m, 0.0, 0.5);
    if (c.corrupt)
      f = AnalyticMap::numeric(
          [m](Complex z) {
            return apply(m, SpherePoint(z)).value() + 1e-3 * z * z;
          },
          0.0, 0.5);
    Complex z = 0.25 * rc();
    if (std::abs(z) > 0.3) continue;
    try {
      worst_moebius = std::max(worst_moebius,
                               std::abs(schwarzian_at(f, z).value));
    } catch (const std::invalid_argument&) {
      continue;  // near-critical sample, resample
    }
    ++done;
  }

  // Composition law on random quadratics, numeric and exact.
  double worst_num = 0.0, worst_exact = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Complex> gc = {0.05 * rc(), 1.0 + 0.1 * rc(), 0.05 * rc()};
    std::vector<Complex> fc = {0.05 * rc(), 1.0 + 0.1 * rc(), 0.05 * rc()};
    auto ge = AnalyticMap::polynomial(gc, 0.0, 1.0);
    auto fe = AnalyticMap::polynomial(fc, 0.0, 8.0);
    Complex z = 0.1 * rc();
    worst_exact = std::max(worst_exact, composition_residual(fe, ge, z));
    auto gn = AnalyticMap::numeric(ge.eval, 0.0, 1.0);
    auto fn = AnalyticMap::numeric(fe.eval, 0.0, 8.0);
    worst_num = std::max(worst_num, composition_residual(fn, gn, z));
  }
  c.measured << "moebius_res=" << worst_moebius << " comp_num=" << worst_num
             << " comp_exact=" << worst_exact;
  return worst_moebius < 1e-9 && worst_num < 1e-6 && worst_exact < 1e-12;
}

bool check_uniformly_perfect(Ctx& c) {
  const std::vector<double> eps_grid = {0.02, 0.05, 0.1, 0.2, 0.3};
  const std::vector<double> scales = {0.25, 0.125, 0.0625};
  double min_eps = 1.0;
  for (const char* fam : {"schottky4", "cantor"}) {
    PointCloud cloud;
    if (std::string(fam) == "schottky4")
      cloud = sample_limit_set(family_group("schottky4"),
                               scaled(c.scale, 6e4, 2e3),
                               SampleMethod::WordFixedPoints,
                               SpherePoint::infinity());
    else
      cloud = family_cloud(c.corrupt ? "one-over-n" : "cantor");
    auto rep = uniformly_perfect(cloud, scales, eps_grid);
    c.measured << fam << ":eps=" << rep.eps_hat << ' ';
    min_eps = std::min(min_eps, rep.eps_hat);
  }
  auto two = family_cloud("cyclic-loxodromic");
  auto rep2 = uniformly_perfect(two, {two.diameter() / 4.0}, eps_grid);
  c.measured << "elementary:eps=" << rep2.eps_hat;
  return min_eps >= 0.05 && rep2.eps_hat == 0.0;
}

double brute_force_beta(const DyadicSquare& q, const PointCloud& cloud);

bool check_property_suites(Ctx& c) {
  std::mt19937_64 rng(c.seed + 7);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  auto rc = [&] { return Complex(nd(rng), nd(rng)); };

  // Matrix identities.
  for (int t = 0; t < 200; ++t) {
    Complex a = rc(), b = rc(), cc = rc(), d = rc();
    if (std::abs(a * d - b * cc) < 1e-3) continue;
    Moebius m1(a, b, cc, d);
    Moebius m2(rc(), rc(), rc(), 1.0 + rc() * 0.1);
    if (!compose(m1, m1.inverse()).is_identity()) {
      c.measured << "matrix inverse identity failed";
      return false;
    }
    if (compose(m1, m2).inverse().dist(
            compose(m2.inverse(), m1.inverse())) > 1e-9) {
      c.measured << "anti-homomorphism of inverse failed";
      return false;
    }
    Complex z = rc();
    auto lhs = apply(compose(m1, m2), SpherePoint(z));
    auto rhs = apply(m1, apply(m2, SpherePoint(z)));
    if (chordal(lhs, rhs) > 1e-9) {
      c.measured << "action compatibility failed";
      return false;
    }
  }

  // Frostman mass conservation on a synthetic tree.
  MassTree tree;
  tree.depth = 1;
  tree.root.disk = Disk({0.0, 0.0}, 1.0);
  tree.root.mass = 1.0;
  for (int k = 0; k < 3; ++k) {
    MassNode n;
    double th = 2.0 * M_PI * k / 3.0;
    n.disk = Disk({1.5 * std::cos(th), 1.5 * std::sin(th)}, 0.2);
    n.mass = k == 2 ? 1.0 - 2.0 / 3.0 : 1.0 / 3.0;
    tree.root.children.push_back(n);
  }
  tree.validate();
  double gsum = 0.0;
  for (const auto* n : tree.generation(1)) gsum += n->mass;
  if (std::abs(gsum - 1.0) > 1e-12) {
    c.measured << "mass conservation failed";
    return false;
  }

  // Beta brute-force equivalence on random clouds.  Enough points that
  // a side-1 square clears the resolution floor of beta_number.
  for (int t = 0; t < 10; ++t) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 3000; ++i)
      pts.emplace_back(ud(rng) * 3.0, ud(rng) * 3.0);
    auto cloud = PointCloud::from_points(pts, "random");
    DyadicSquare q{0, 1, 1};
    double fast = beta_number(q, cloud).beta;
    double brute = brute_force_beta(q, cloud);
    if (std::abs(fast - brute) > 0.02 + (c.corrupt ? -1.0 : 0.0)) {
      c.measured << "beta mismatch fast=" << fast << " brute=" << brute;
      return false;
    }
  }

  // Monotone box counts.
  {
    std::vector<Vec2> pts;
    for (int i = 0; i < 500; ++i) pts.emplace_back(ud(rng), ud(rng));
    auto cloud = PointCloud::from_points(pts, "random");
    auto t = box_count(cloud, 0, 8);
    for (std::size_t i = 1; i < t.counts.size(); ++i)
      if (t.counts[i] < t.counts[i - 1]) {
        c.measured << "box counts not monotone";
        return false;
      }
  }

  // Whitney bracket on a random cloud.
  {
    std::vector<Vec2> pts;
    for (int i = 0; i < 400; ++i) pts.emplace_back(ud(rng), ud(rng) * 0.2);
    auto cloud = PointCloud::from_points(pts, "random");
    cloud.normalize();
    for (const auto& cell : whitney_decompose(cloud, 12)) {
      double s = cell.square.side();
      if (s < cell.dist_to_set / 10.0 - 1e-12 ||
          s > 10.0 * cell.dist_to_set + 1e-12) {
        c.measured << "whitney bracket violated";
        return false;
      }
    }
  }

  // Determinism: identical config => byte-identical CSV.
  {
    auto cfg = parse_config("family=cantor\ndepth=10\n");
    FamilyParams p;
    p.depth = 10;
    auto c1 = cloud_to_csv(family_cloud("cantor", p), config_hash(cfg));
    auto c2 = cloud_to_csv(family_cloud("cantor", p), config_hash(cfg));
    if (c.corrupt) c2 += "tail";
    if (c1 != c2) {
      c.measured << "determinism failed";
      return false;
    }
  }
  c.measured << "all invariants hold";
  return true;
}

// Dense direction x offset sweep; slow but independent of the hull code.
double brute_force_beta(const DyadicSquare& q, const PointCloud& cloud) {
  double side = q.side();
  Vec2 lo(q.xmin() - side, q.ymin() - side);
  std::vector<Vec2> in3q;
  for (const auto& p : cloud.points)
    if (p.x >= lo.x && p.x <= lo.x + 3 * side && p.y >= lo.y &&
        p.y <= lo.y + 3 * side)
      in3q.push_back(p);
  if (in3q.size() < 2) return 0.0;
  Vec2 qc = q.center();
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 360; ++a) {
    double th = M_PI * a / 360.0;
    Vec2 dir(std::cos(th), std::sin(th));
    Vec2 nrm(-dir.y, dir.x);
    // Offsets across Q so the line still meets Q.
    double c0 = qc.dot(nrm);
    double half = side * (std::abs(nrm.x) + std::abs(nrm.y)) / 2.0;
    for (int o = -40; o <= 40; ++o) {
      double off = c0 + half * o / 40.0;
      double sup = 0.0;
      for (const auto& p : in3q)
        sup = std::max(sup, std::abs(p.dot(nrm) - off));
      best = std::min(best, sup);
    }
  }
  return best / side;
}

struct CheckSpec {
  const char* id;
  const char* name;
  const char* tolerance;
  double time_limit;
  std::function<bool(Ctx&)> run;
};

}  // namespace

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass && !c.skipped) return false;
  return true;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os.precision(6);
  for (const auto& c : checks) {
    os << c.id << ' ' << c.name << ' '
       << (c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL")) << " ["
       << c.measured << "; tol " << c.tolerance << "; " << c.seconds
       << "s/" << c.time_limit << "s]\n";
  }
  os << (all_pass() ? "ALL CHECKS PASS" : "CHECK FAILURES PRESENT") << '\n';
  return os.str();
}

VerifyReport run_verify(const VerifyOptions& opt) {
  const std::vector<CheckSpec> specs = {
      {"A1", "cyclic-parabolic-delta", "0.50+-0.03", 1.0,
       check_parabolic_delta},
      {"A2", "cyclic-loxodromic-delta", "<=0.05", 1.0,
       check_loxodromic_delta},
      {"A3", "modular-circle-mdim", "1.00+-0.03", 30.0, check_modular_circle},
      {"A4", "one-over-n-mdim", "0.50+-0.05", 5.0, check_one_over_n},
      {"A5", "cantor-mdim-kappa", "0.6309+-0.02/0.05", 30.0, check_cantor},
      {"A6", "schottky4-agreement", "pairwise<=0.05", 120.0,
       check_schottky_agreement},
      {"A7", "packing-dimension", ">=1.02, alpha>1", 120.0, check_packing},
      {"A8", "snowflake-sharpness", "moran+-0.03, beta0 increasing", 60.0,
       check_snowflake},
      {"A9", "schwarzian-identities", "<1e-9 / <1e-6 / <1e-12", 5.0,
       check_schwarzian},
      {"A10", "uniform-perfectness", "eps>=0.05, elementary=0", 10.0,
       check_uniformly_perfect},
      {"A11", "property-suites", "all invariants", 120.0,
       check_property_suites},
  };

  VerifyReport report;
  report.budget_scale = opt.budget_scale;
  for (const auto& spec : specs) {
    Ctx ctx;
    ctx.scale = opt.budget_scale;
    ctx.seed = opt.seed;
    ctx.corrupt = opt.corrupt == spec.id;
    CheckResult res;
    res.id = spec.id;
    res.name = spec.name;
    res.tolerance = spec.tolerance;
    res.time_limit = spec.time_limit;
    auto t0 = std::chrono::steady_clock::now();
    try {
      res.pass = spec.run(ctx);
    } catch (const std::exception& e) {
      res.pass = false;
      ctx.measured << "exception: " << e.what();
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (opt.enforce_time && res.seconds > spec.time_limit) res.pass = false;
    // Reduced-budget policy: a miss under a scaled budget is a skip.
    if (!res.pass && opt.budget_scale < 1.0 && ctx.budget_limited)
      res.skipped = true;
    res.measured = ctx.measured.str();
    report.checks.push_back(std::move(res));
  }
  return report;
}

}  // namespace kdim
