#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace littlewood::tools {

enum class Suite { fast, full };
std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view text);

/// Names of the checks, in run order; one per acceptance criterion.
const std::vector<std::string>& check_names();

/// Overrides read from --config: {"ceiling_scale": {"<check>": factor}} multiplies
/// the ceiling (or target) a check compares against. Used for fault injection.
struct VerifyOverrides {
  std::map<std::string, double> ceiling_scale;
};
/// Throws ParseError on unknown keys or check names.
VerifyOverrides parse_overrides(const nlohmann::json& doc);

/// One check. `margin` is the smallest slack found (negative means failure
/// beyond tolerance); a failing check carries its falsifying witness.
nlohmann::json run_check(std::string_view name, Suite suite, std::uint64_t seed,
                         const VerifyOverrides& overrides = {});

/// All checks in order: {"suite", "seed", "passed", "checks": [...]}. Contains
/// no timings, so equal inputs give byte-identical canonical dumps.
nlohmann::json run_verify(Suite suite, std::uint64_t seed, const VerifyOverrides& overrides = {});

}  // namespace littlewood::tools
