#pragma once

#include <string>
#include <string_view>

namespace renyi {

/// Shortest text that parses back to the same double; locale independent.
std::string format_real(double value);

/// Strict full-string parse of a decimal real; throws ParameterError.
double parse_real(std::string_view text);

}  // namespace renyi
