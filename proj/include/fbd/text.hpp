#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

namespace fbd {

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split(std::string_view s, char sep);

// Strict parsers: the whole (trimmed) field must be consumed.
int parse_int(std::string_view s);
std::uint64_t parse_u64(std::string_view s);
double parse_double(std::string_view s);

/// `x,value` per line, `#` comments and blank lines skipped; x strictly
/// increasing.
std::vector<std::pair<double, double>> read_function_file(const std::filesystem::path& path);

/// Real numbers separated by newlines, commas or whitespace.
std::vector<double> read_samples(const std::filesystem::path& path);

}  // namespace fbd
