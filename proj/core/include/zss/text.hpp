#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zss {

std::string_view trim(std::string_view s);

/// Splits on runs of ASCII spaces/tabs; no empty fields.
std::vector<std::string_view> split_whitespace(std::string_view s);

std::string ascii_lower(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Fixed-point rendering, e.g. format_fixed(0.75171, 4) == "0.7517".
std::string format_fixed(double value, int decimals);

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 of a file's contents; throws Error(kIo) when unreadable.
std::string sha256_file(const std::string& path);

}  // namespace zss
