#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "littlewood/exponents.hpp"

namespace littlewood::tools {

inline constexpr std::string_view kRegionMapHeader =
    "a,b,inv_a,inv_b,region,real_constant,complex_lower,complex_upper,complex_exact";

/// One grid point of the (1/a, 1/b) map. Constants are empty in R0.
struct RegionMapRow {
  ExtExponent a = ExtExponent::infinity();
  ExtExponent b = ExtExponent::infinity();
  Region region = Region::R0;
  std::optional<double> real_constant;
  std::optional<double> complex_lower;
  std::optional<double> complex_upper;
  std::optional<double> complex_exact;

  friend bool operator==(const RegionMapRow&, const RegionMapRow&) = default;
};

/// Row for a single pair, from the exponents module.
RegionMapRow region_map_row(const ExponentPair& pair);

/// resolution x resolution points with 1/a = i/(resolution-1), 1/b = j/(resolution-1),
/// inv_a outer. Throws std::invalid_argument for resolution < 2.
std::vector<RegionMapRow> region_map(int resolution);

std::string region_map_csv(const std::vector<RegionMapRow>& rows);
/// Inverse of region_map_csv; throws ParseError naming the column.
std::vector<RegionMapRow> parse_region_map_csv(std::string_view csv);

/// Static figure in reciprocal coordinates: one cell per grid point coloured
/// by the real constant, region outlines, and the hyperbola b = 2a/(3a-2).
std::string region_map_svg(const std::vector<RegionMapRow>& rows, int resolution);

}  // namespace littlewood::tools
