#pragma once

#include <string>

namespace fpc {

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] std::string format_double(double value);

/// Fixed-point text with `digits` decimals.
[[nodiscard]] std::string format_fixed(double value, int digits);

/// `value` rounded to `digits` significant digits.
[[nodiscard]] double round_significant(double value, int digits);

}  // namespace fpc
