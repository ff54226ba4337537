#pragma once

#include <string>
#include <string_view>

namespace purdyn {

/// Shortest decimal representation that parses back to the same double.
/// Non-finite values render as "inf", "-inf" or "nan".
std::string format_double(double value);

/// Parses the whole of `text` as a double; false on any trailing garbage.
bool parse_double(std::string_view text, double& out);

}  // namespace purdyn
