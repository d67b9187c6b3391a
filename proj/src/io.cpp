#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kdim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Shortest decimal that round-trips a double.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    cfg[key] = val;
  }
  return cfg;
}

Config load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::uint64_t config_hash(const Config& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : cfg) {  // std::map iterates sorted
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  return h;
}

std::string config_get(const Config& cfg, const std::string& key,
                       const std::string& fallback) {
  auto it = cfg.find(key);
  return it == cfg.end() ? fallback : it->second;
}

double config_get_double(const Config& cfg, const std::string& key,
                         double fallback) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": not a number: " +
                                it->second);
  }
}

int config_get_int(const Config& cfg, const std::string& key, int fallback) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": not an integer: " +
                                it->second);
  }
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
  if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

std::string header(std::uint64_t cfg_hash) {
  std::ostringstream os;
  os << "# kdim 1.0 config=" << std::hex << cfg_hash << std::dec << '\n';
  return os.str();
}

}  // namespace

std::string cloud_to_csv(const PointCloud& cloud, std::uint64_t cfg_hash) {
  std::ostringstream os;
  os << header(cfg_hash);
  os << "# provenance: " << cloud.provenance << '\n';
  os << "# resolution: " << fmt(cloud.resolution) << '\n';
  os << "# bbox: " << fmt(cloud.bbox.xmin) << ' ' << fmt(cloud.bbox.ymin)
     << ' ' << fmt(cloud.bbox.xmax) << ' ' << fmt(cloud.bbox.ymax) << '\n';
  os << "# normalized: " << (cloud.normalized ? 1 : 0)
     << " elementary: " << (cloud.elementary ? 1 : 0) << '\n';
  os << "x,y\n";
  for (const auto& p : cloud.points)
    os << fmt(p.x) << ',' << fmt(p.y) << '\n';
  return os.str();
}

PointCloud cloud_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<Vec2> pts;
  std::string provenance;
  bool normalized = false;
  bool saw_columns = false;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# provenance: ", 0) == 0)
        provenance = line.substr(14);
      else if (line.rfind("# normalized: ", 0) == 0)
        normalized = line[14] == '1';
      continue;
    }
    if (line == "x,y") {
      saw_columns = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("cloud csv: bad row: " + line);
    pts.emplace_back(std::stod(line.substr(0, comma)),
                     std::stod(line.substr(comma + 1)));
  }
  if (!saw_columns)
    throw std::invalid_argument("cloud csv: missing x,y column line");
  auto cloud = PointCloud::from_points(std::move(pts), std::move(provenance));
  cloud.normalized = normalized;
  return cloud;
}

std::string orbit_to_csv(const OrbitResult& orbit, std::uint64_t cfg_hash) {
  std::ostringstream os;
  os << header(cfg_hash);
  os << "depth,rho,a.re,a.im,b.re,b.im,c.re,c.im,d.re,d.im\n";
  for (const auto& p : orbit.points) {
    const Moebius& m = p.matrix;
    os << p.depth << ',' << fmt(p.rho) << ',' << fmt(m.a().real()) << ','
       << fmt(m.a().imag()) << ',' << fmt(m.b().real()) << ','
       << fmt(m.b().imag()) << ',' << fmt(m.c().real()) << ','
       << fmt(m.c().imag()) << ',' << fmt(m.d().real()) << ','
       << fmt(m.d().imag()) << '\n';
  }
  return os.str();
}

std::string box_table_to_csv(const BoxCountTable& t, std::uint64_t cfg_hash) {
  std::ostringstream os;
  os << header(cfg_hash) << "epsilon,count\n";
  for (std::size_t i = 0; i < t.scales.size(); ++i)
    os << fmt(t.scales[i]) << ',' << t.counts[i] << '\n';
  return os.str();
}

std::string orbit_counts_to_csv(const OrbitCountTable& t,
                                std::uint64_t cfg_hash) {
  std::ostringstream os;
  os << header(cfg_hash) << "R,N\n";
  for (std::size_t i = 0; i < t.radii.size(); ++i)
    os << fmt(t.radii[i]) << ',' << t.counts[i] << '\n';
  return os.str();
}

std::string whitney_levels_to_csv(const std::vector<std::size_t>& w,
                                  std::uint64_t cfg_hash) {
  std::ostringstream os;
  os << header(cfg_hash) << "level,count\n";
  for (std::size_t n = 0; n < w.size(); ++n) os << n << ',' << w[n] << '\n';
  return os.str();
}

FitRow fit_row(const std::string& name, const DimensionEstimate& e) {
  FitRow r;
  r.name = name;
  r.value = e.value;
  r.stderr_ = e.stderr_;
  r.window_min = e.window_min;
  r.window_max = e.window_max;
  if (e.truncated) r.flags += "truncated;";
  if (e.interpolated) r.flags += "interpolated;";
  return r;
}

std::string fit_report_to_csv(const std::vector<FitRow>& rows,
                              std::uint64_t cfg_hash) {
  std::ostringstream os;
  os << header(cfg_hash)
     << "method,value,stderr,window_min,window_max,flags\n";
  for (const auto& r : rows)
    os << r.name << ',' << fmt(r.value) << ',' << fmt(r.stderr_) << ','
       << fmt(r.window_min) << ',' << fmt(r.window_max) << ',' << r.flags
       << '\n';
  return os.str();
}

std::string cloud_to_svg(const PointCloud& cloud, const SvgOptions& opt) {
  // Frame: the cloud bbox (plus any disks) with a 5% margin.
  BBox box = cloud.bbox;
  for (const auto& d : opt.disks) {
    box.xmin = std::min(box.xmin, d.center.x - d.radius);
    box.xmax = std::max(box.xmax, d.center.x + d.radius);
    box.ymin = std::min(box.ymin, d.center.y - d.radius);
    box.ymax = std::max(box.ymax, d.center.y + d.radius);
  }
  double span = std::max({box.width(), box.height(), 1e-12});
  double margin = 0.05 * span;
  double scale = opt.width / (span + 2.0 * margin);
  double w = (box.width() + 2.0 * margin) * scale;
  double h = (box.height() + 2.0 * margin) * scale;
  auto sx = [&](double x) { return (x - box.xmin + margin) * scale; };
  auto sy = [&](double y) { return h - (y - box.ymin + margin) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w)
     << "\" height=\"" << fmt(h) << "\">\n";
  double dot = std::max(0.4, scale * cloud.resolution / 4.0);
  for (const auto& p : cloud.points)
    os << "<circle cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y))
       << "\" r=\"" << fmt(dot) << "\" fill=\"black\"/>\n";
  for (const auto& d : opt.disks)
    os << "<circle cx=\"" << fmt(sx(d.center.x)) << "\" cy=\""
       << fmt(sy(d.center.y)) << "\" r=\"" << fmt(d.radius * scale)
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n";
  for (const auto& l : opt.lines) {
    // Clip the witness line to the frame diagonal length.
    double len = std::hypot(box.width(), box.height()) + 2.0 * margin;
    Vec2 a = l.point - l.dir * len;
    Vec2 b = l.point + l.dir * len;
    os << "<line x1=\"" << fmt(sx(a.x)) << "\" y1=\"" << fmt(sy(a.y))
       << "\" x2=\"" << fmt(sx(b.x)) << "\" y2=\"" << fmt(sy(b.y))
       << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace kdim
