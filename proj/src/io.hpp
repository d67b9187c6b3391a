#ifndef KDIM_IO_HPP_
#define KDIM_IO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dimension.hpp"
#include "groups.hpp"
#include "limitset.hpp"
#include "wiggle.hpp"

namespace kdim {

// Flat key=value configs with '#' comments.
using Config = std::map<std::string, std::string>;

Config parse_config(const std::string& text);
Config load_config(const std::string& path);
// FNV-1a over the sorted canonical key=value lines.
std::uint64_t config_hash(const Config& cfg);

std::string config_get(const Config& cfg, const std::string& key,
                       const std::string& fallback);
double config_get_double(const Config& cfg, const std::string& key,
                         double fallback);
int config_get_int(const Config& cfg, const std::string& key, int fallback);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Cloud CSV: comment header (provenance, resolution, bbox, flags,
// config hash), a "x,y" column line, then one row per point.  All
// floats use max_digits10 so round trips are exact.
std::string cloud_to_csv(const PointCloud& cloud, std::uint64_t cfg_hash);
PointCloud cloud_from_csv(const std::string& text);

// Orbit dump CSV: depth, rho, then the 8 matrix floats.
std::string orbit_to_csv(const OrbitResult& orbit, std::uint64_t cfg_hash);

std::string box_table_to_csv(const BoxCountTable& t, std::uint64_t cfg_hash);
std::string orbit_counts_to_csv(const OrbitCountTable& t,
                                std::uint64_t cfg_hash);
std::string whitney_levels_to_csv(const std::vector<std::size_t>& w,
                                  std::uint64_t cfg_hash);

struct FitRow {
  std::string name;
  double value = 0.0;
  double stderr_ = 0.0;
  double window_min = 0.0, window_max = 0.0;
  std::string flags;
};
std::string fit_report_to_csv(const std::vector<FitRow>& rows,
                              std::uint64_t cfg_hash);
FitRow fit_row(const std::string& name, const DimensionEstimate& e);

// Deterministic SVG: the cloud as dots, optional disks and witness
// lines on top.
struct SvgOptions {
  double width = 800.0;
  std::vector<Disk> disks;
  std::vector<Line> lines;
};
std::string cloud_to_svg(const PointCloud& cloud, const SvgOptions& opt = {});

}  // namespace kdim

#endif  // KDIM_IO_HPP_
