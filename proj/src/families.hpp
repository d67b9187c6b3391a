#ifndef KDIM_FAMILIES_HPP_
#define KDIM_FAMILIES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "dimension.hpp"
#include "groups.hpp"
#include "limitset.hpp"

namespace kdim {

// Built-in families: cyclic-parabolic, cyclic-loxodromic, modular,
// schottky4, packing, snowflake, cantor, one-over-n.
enum class FamilyKind { Group, Cloud, Packing };

FamilyKind family_kind(const std::string& name);  // throws on unknown name

struct FamilyParams {
  double beta = 0.3;  // snowflake
  int depth = 12;     // snowflake (<=12), cantor
  int n = 10000;      // one-over-n
};

GroupPresentation family_group(const std::string& name);
PointCloud family_cloud(const std::string& name, const FamilyParams& p = {});

// The pairing circles behind the schottky4 built-in.
std::vector<std::pair<Disk, Disk>> schottky4_circles();

// Seed data of the packing built-in: two separated disks, each carrying
// a Fuchsian group on the unit disk to be conjugated in.
struct PackingSpec {
  Disk d1, d2;
  GroupPresentation seed1, seed2;
};
PackingSpec packing_spec();

RoundConstructionResult family_packing(int depth = 2,
                                       std::size_t orbit_budget = 200000);

}  // namespace kdim

#endif  // KDIM_FAMILIES_HPP_
