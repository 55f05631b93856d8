#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sfncast {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

uint64_t fnv1a64(std::string_view bytes);

}  // namespace sfncast
