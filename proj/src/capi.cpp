#include "kdim/kdim.h"

#include <cstring>
#include <string>

#include "dimension.hpp"
#include "families.hpp"
#include "io.hpp"
#include "limitset.hpp"
#include "verify.hpp"
#include "wiggle.hpp"

struct kdim_group {
  kdim::GroupPresentation g;
};
struct kdim_cloud {
  kdim::PointCloud c;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
  g_last_error = what;
  return code;
}

// Runs the body, mapping exceptions onto status codes.
template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    return fail(KDIM_EINVAL, e.what());
  } catch (const std::exception& e) {
    return fail(KDIM_EFAIL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill(kdim_estimate* out, const kdim::DimensionEstimate& e) {
  out->value = e.value;
  out->stderr_ = e.stderr_;
  out->window_min = e.window_min;
  out->window_max = e.window_max;
  out->truncated = e.truncated ? 1 : 0;
  out->interpolated = e.interpolated ? 1 : 0;
}

}  // namespace

extern "C" {

const char* kdim_last_error(void) { return g_last_error.c_str(); }

void kdim_string_free(char* s) { delete[] s; }

int kdim_group_parse(const char* text, kdim_group** out) {
  if (!text || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    *out = new kdim_group{kdim::GroupPresentation::parse(text)};
    return KDIM_OK;
  });
}

int kdim_group_family(const char* name, kdim_group** out) {
  if (!name || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    *out = new kdim_group{kdim::family_group(name)};
    return KDIM_OK;
  });
}

int kdim_group_serialize(const kdim_group* g, char** out) {
  if (!g || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    *out = dup_string(g->g.serialize());
    return KDIM_OK;
  });
}

void kdim_group_free(kdim_group* g) { delete g; }

int kdim_cloud_family(const char* name, double beta, int depth, int n,
                      kdim_cloud** out) {
  if (!name || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    kdim::FamilyParams p;
    if (beta > 0.0) p.beta = beta;
    if (depth > 0) p.depth = depth;
    if (n > 0) p.n = n;
    *out = new kdim_cloud{kdim::family_cloud(name, p)};
    return KDIM_OK;
  });
}

int kdim_cloud_from_csv(const char* text, kdim_cloud** out) {
  if (!text || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    *out = new kdim_cloud{kdim::cloud_from_csv(text)};
    return KDIM_OK;
  });
}

int kdim_cloud_limit_set(const kdim_group* g, size_t budget, int method,
                         kdim_cloud** out) {
  if (!g || !out) return fail(KDIM_EINVAL, "null argument");
  if (method != 0 && method != 1)
    return fail(KDIM_EINVAL, "method must be 0 or 1");
  return guarded([&] {
    auto m = method == 0 ? kdim::SampleMethod::OrbitAccumulation
                         : kdim::SampleMethod::WordFixedPoints;
    *out = new kdim_cloud{kdim::sample_limit_set(
        g->g, budget, m, kdim::SpherePoint(kdim::Complex(0.0, 0.0)))};
    return KDIM_OK;
  });
}

int kdim_cloud_to_csv(const kdim_cloud* c, uint64_t config_hash, char** out) {
  if (!c || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    *out = dup_string(kdim::cloud_to_csv(c->c, config_hash));
    return KDIM_OK;
  });
}

int kdim_cloud_to_svg(const kdim_cloud* c, char** out) {
  if (!c || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    *out = dup_string(kdim::cloud_to_svg(c->c));
    return KDIM_OK;
  });
}

size_t kdim_cloud_size(const kdim_cloud* c) { return c ? c->c.points.size() : 0; }

int kdim_cloud_point(const kdim_cloud* c, size_t i, double* x, double* y) {
  if (!c || !x || !y) return fail(KDIM_EINVAL, "null argument");
  if (i >= c->c.points.size()) return fail(KDIM_EINVAL, "index out of range");
  *x = c->c.points[i].x;
  *y = c->c.points[i].y;
  return KDIM_OK;
}

int kdim_cloud_is_elementary(const kdim_cloud* c) {
  return c && c->c.elementary ? 1 : 0;
}

void kdim_cloud_free(kdim_cloud* c) { delete c; }

int kdim_estimate_mdim(const kdim_cloud* c, int min_level, int max_level,
                       double eps_min, double eps_max, kdim_estimate* out) {
  if (!c || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    auto t = kdim::box_count(c->c, min_level, max_level);
    auto e = (eps_min > 0.0 && eps_max > 0.0)
                 ? kdim::mdim_fit(t, eps_min, eps_max)
                 : kdim::mdim_fit(t);
    fill(out, e);
    return KDIM_OK;
  });
}

int kdim_estimate_kappa(const kdim_cloud* c, int max_level, int fit_min,
                        int fit_max, kdim_estimate* out) {
  if (!c || !out) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    auto cells = kdim::whitney_decompose(c->c, max_level);
    fill(out, kdim::kappa_fit(cells, fit_min, fit_max));
    return KDIM_OK;
  });
}

int kdim_estimate_delta(const kdim_group* g, double r_min, double r_max,
                        double r_step, size_t budget, kdim_estimate* out) {
  if (!g || !out) return fail(KDIM_EINVAL, "null argument");
  if (r_step <= 0.0) return fail(KDIM_EINVAL, "r_step must be positive");
  return guarded([&] {
    auto orbit = kdim::enumerate_orbit(g->g, 400000, r_max, budget);
    std::vector<double> radii;
    for (double r = r_min; r <= r_max + 1e-9; r += r_step) radii.push_back(r);
    auto e = kdim::delta_fit(kdim::orbit_counts(orbit.points, radii), r_min,
                             r_max);
    e.truncated = e.truncated || orbit.budget_hit;
    fill(out, e);
    return KDIM_OK;
  });
}

int kdim_estimate_beta0(const kdim_cloud* c, int min_level, int max_level,
                        double* beta0, size_t* square_count) {
  if (!c || !beta0 || !square_count)
    return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    auto cert = kdim::wiggliness(c->c, min_level, max_level);
    *beta0 = cert.beta0;
    *square_count = cert.qualifying_square_count;
    return KDIM_OK;
  });
}

int kdim_estimate_tsp_sum(const kdim_cloud* c, int min_level, int max_level,
                          double* total) {
  if (!c || !total) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    *total = kdim::tsp_sum(c->c, min_level, max_level).total;
    return KDIM_OK;
  });
}

int kdim_perfectness(const kdim_cloud* c, const double* scales,
                     size_t n_scales, double* eps_hat) {
  if (!c || !scales || !eps_hat || n_scales == 0)
    return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    std::vector<double> s(scales, scales + n_scales);
    const std::vector<double> grid = {0.02, 0.05, 0.1, 0.2, 0.3, 0.5};
    *eps_hat = kdim::uniformly_perfect(c->c, s, grid).eps_hat;
    return KDIM_OK;
  });
}

int kdim_verify(double budget_scale, uint64_t seed, const char* corrupt,
                char** report_text, int* all_pass) {
  if (!report_text || !all_pass) return fail(KDIM_EINVAL, "null argument");
  return guarded([&] {
    kdim::VerifyOptions opt;
    opt.budget_scale = budget_scale;
    opt.seed = seed;
    if (corrupt) opt.corrupt = corrupt;
    auto report = kdim::run_verify(opt);
    *report_text = dup_string(report.to_text());
    *all_pass = report.all_pass() ? 1 : 0;
    return KDIM_OK;
  });
}

}  // extern "C"
