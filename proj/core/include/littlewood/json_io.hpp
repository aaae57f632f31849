#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace littlewood {

/// Canonical serialization: sorted keys, two-space indent, floating values at
/// 17 significant digits. Equal documents produce identical bytes.
std::string canonical_dump(const nlohmann::json& doc);

/// 17-significant-digit decimal ("%.17g"), "inf"/"nan" spelled out.
std::string format_double(double value);

/// Writes to a sibling temporary file, then renames over `path`.
/// Throws std::runtime_error when the file cannot be written.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

}  // namespace littlewood
