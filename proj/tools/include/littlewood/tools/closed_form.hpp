#pragma once

#include <optional>
#include <string>

namespace littlewood::tools {

/// A closed-form spelling of `value` ("2^(1/2)", "2/sqrt(pi)", "(4/pi)^(1/3)",
/// ...) when one matches within `tolerance` relative, else nullopt.
std::optional<std::string> closed_form(double value, double tolerance = 1e-12);

}  // namespace littlewood::tools
