// Batch front door over the kdim C API: generate / estimate / verify /
// render.  Exit codes: 0 success, 1 check or estimator failure, 2
// usage/config error.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kdim/kdim.h"

namespace {

using Config = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config " + path);
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

std::uint64_t config_hash(const Config& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : cfg) {
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  return h;
}

std::string get(const Config& c, const std::string& k,
                const std::string& fallback = "") {
  auto it = c.find(k);
  return it == c.end() ? fallback : it->second;
}

double get_d(const Config& c, const std::string& k, double fallback) {
  auto it = c.find(k);
  return it == c.end() ? fallback : std::stod(it->second);
}

int get_i(const Config& c, const std::string& k, int fallback) {
  auto it = c.find(k);
  return it == c.end() ? fallback : std::stoi(it->second);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

// RAII over API-owned strings.
struct ApiString {
  char* s = nullptr;
  ~ApiString() { kdim_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

[[noreturn]] void die_api(int code) {
  std::cerr << "error: " << kdim_last_error() << "\n";
  std::exit(code == KDIM_EINVAL ? 2 : 1);
}

// Builds the cloud a config describes: an input csv, a cloud family, or
// a group family / spec file sampled at the configured budget.
kdim_cloud* make_cloud(const Config& cfg) {
  kdim_cloud* cloud = nullptr;
  if (auto path = get(cfg, "cloud"); !path.empty()) {
    auto text = read_file(path);
    if (int rc = kdim_cloud_from_csv(text.c_str(), &cloud)) die_api(rc);
    return cloud;
  }
  std::string family = get(cfg, "family");
  std::string group_file = get(cfg, "group_file");
  if (family.empty() && group_file.empty())
    throw std::runtime_error("config needs family=, group_file=, or cloud=");

  kdim_group* group = nullptr;
  if (!group_file.empty()) {
    auto text = read_file(group_file);
    if (int rc = kdim_group_parse(text.c_str(), &group)) die_api(rc);
  } else if (kdim_group_family(family.c_str(), &group) != KDIM_OK) {
    group = nullptr;  // not a group family; try the cloud families
  }
  if (group) {
    auto budget = static_cast<size_t>(get_d(cfg, "budget", 100000));
    int method = get(cfg, "method", "fixed-points") == "orbit" ? 0 : 1;
    int rc = kdim_cloud_limit_set(group, budget, method, &cloud);
    kdim_group_free(group);
    if (rc) die_api(rc);
    return cloud;
  }
  if (int rc = kdim_cloud_family(family.c_str(), get_d(cfg, "beta", 0),
                                 get_i(cfg, "depth", 0), get_i(cfg, "n", 0),
                                 &cloud))
    die_api(rc);
  return cloud;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_generate(const Config& cfg, const std::string& out_dir) {
  kdim_cloud* cloud = make_cloud(cfg);
  ApiString csv, svg;
  if (int rc = kdim_cloud_to_csv(cloud, config_hash(cfg), &csv.s)) die_api(rc);
  if (int rc = kdim_cloud_to_svg(cloud, &svg.s)) die_api(rc);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/cloud.csv", csv.str());
  write_file(out_dir + "/cloud.svg", svg.str());
  std::cout << "wrote " << out_dir << "/cloud.csv (" << kdim_cloud_size(cloud)
            << " points) and cloud.svg\n";
  kdim_cloud_free(cloud);
  return 0;
}

int cmd_estimate(const Config& cfg, const std::string& out_dir) {
  std::string which = get(cfg, "estimators", "mdim");
  std::ostringstream report;
  report << "# kdim 1.0 config=" << std::hex << config_hash(cfg) << std::dec
         << "\nmethod,value,stderr,window_min,window_max,flags\n";

  kdim_cloud* cloud = nullptr;
  auto need_cloud = [&]() {
    if (!cloud) cloud = make_cloud(cfg);
    return cloud;
  };
  auto row = [&](const std::string& name, const kdim_estimate& e) {
    report << name << ',' << fmt(e.value) << ',' << fmt(e.stderr_) << ','
           << fmt(e.window_min) << ',' << fmt(e.window_max) << ','
           << (e.truncated ? "truncated;" : "")
           << (e.interpolated ? "interpolated;" : "") << '\n';
  };

  std::stringstream ss(which);
  std::string name;
  while (std::getline(ss, name, ',')) {
    name = trim(name);
    if (name == "mdim") {
      kdim_estimate e;
      if (int rc = kdim_estimate_mdim(need_cloud(), get_i(cfg, "min_level", 0),
                                      get_i(cfg, "max_level", 16),
                                      get_d(cfg, "eps_min", 0),
                                      get_d(cfg, "eps_max", 0), &e))
        die_api(rc);
      row("mdim", e);
    } else if (name == "kappa") {
      kdim_estimate e;
      if (int rc = kdim_estimate_kappa(need_cloud(),
                                       get_i(cfg, "max_level", 16),
                                       get_i(cfg, "fit_min", 2),
                                       get_i(cfg, "fit_max", 12), &e))
        die_api(rc);
      row("kappa", e);
    } else if (name == "delta") {
      std::string fam = get(cfg, "family");
      kdim_group* group = nullptr;
      if (auto path = get(cfg, "group_file"); !path.empty()) {
        auto text = read_file(path);
        if (int rc = kdim_group_parse(text.c_str(), &group)) die_api(rc);
      } else if (int rc = kdim_group_family(fam.c_str(), &group)) {
        die_api(rc);
      }
      kdim_estimate e;
      int rc = kdim_estimate_delta(group, get_d(cfg, "r_min", 8),
                                   get_d(cfg, "r_max", 24),
                                   get_d(cfg, "r_step", 2),
                                   static_cast<size_t>(
                                       get_d(cfg, "budget", 2000000)),
                                   &e);
      kdim_group_free(group);
      if (rc) die_api(rc);
      row("delta", e);
    } else if (name == "beta0") {
      double beta0 = 0;
      size_t count = 0;
      if (int rc = kdim_estimate_beta0(need_cloud(),
                                       get_i(cfg, "min_level", 2),
                                       get_i(cfg, "max_level", 10), &beta0,
                                       &count))
        die_api(rc);
      kdim_estimate e{beta0, 0, double(get_i(cfg, "min_level", 2)),
                      double(get_i(cfg, "max_level", 10)), 0, 0};
      row("beta0", e);
    } else if (name == "tsp-sum") {
      double total = 0;
      if (int rc = kdim_estimate_tsp_sum(need_cloud(),
                                         get_i(cfg, "min_level", 2),
                                         get_i(cfg, "max_level", 10), &total))
        die_api(rc);
      kdim_estimate e{total, 0, double(get_i(cfg, "min_level", 2)),
                      double(get_i(cfg, "max_level", 10)), 0, 0};
      row("tsp-sum", e);
    } else if (name == "perfectness") {
      double scales[3] = {0.25, 0.125, 0.0625};
      double eps_hat = 0;
      if (int rc = kdim_perfectness(need_cloud(), scales, 3, &eps_hat))
        die_api(rc);
      kdim_estimate e{eps_hat, 0, scales[2], scales[0], 0, 0};
      row("perfectness", e);
    } else {
      std::cerr << "error: unknown estimator " << name << "\n";
      return 2;
    }
  }
  kdim_cloud_free(cloud);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/fits.csv", report.str());
  std::cout << report.str();
  return 0;
}

int cmd_verify(const Config& cfg, const std::string& out_dir,
               std::uint64_t seed) {
  ApiString report;
  int all_pass = 0;
  std::string corrupt = get(cfg, "corrupt");
  int rc = kdim_verify(get_d(cfg, "budget_scale", 1.0), seed,
                       corrupt.empty() ? nullptr : corrupt.c_str(), &report.s,
                       &all_pass);
  if (rc) die_api(rc);
  std::cout << report.str();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/verify.txt", report.str());
  }
  return all_pass ? 0 : 1;
}

int cmd_render(const Config& cfg, const std::string& out_dir) {
  kdim_cloud* cloud = make_cloud(cfg);
  ApiString svg;
  if (int rc = kdim_cloud_to_svg(cloud, &svg.s)) die_api(rc);
  kdim_cloud_free(cloud);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/render.svg", svg.str());
  std::cout << "wrote " << out_dir << "/render.svg\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kdim: dimension estimators for Moebius-group limit sets"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads (reserved)");

  auto* gen = app.add_subcommand("generate", "construct a cloud + SVG");
  auto* est = app.add_subcommand("estimate", "run estimators, write fits.csv");
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  auto* ren = app.add_subcommand("render", "render a cloud to SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Config cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (gen->parsed()) return cmd_generate(cfg, out_dir);
    if (est->parsed()) return cmd_estimate(cfg, out_dir);
    if (ver->parsed()) return cmd_verify(cfg, out_dir, seed);
    if (ren->parsed()) return cmd_render(cfg, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
