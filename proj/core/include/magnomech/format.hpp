#pragma once

#include <string>

namespace magnomech {

inline constexpr int kSignificantDigits = 12;

/// Fixed textual form used by every tabular writer: at most 12 significant
/// digits, trailing zeros dropped, "NaN" / "inf" / "-inf" for non-finite values.
std::string format_double(double x);

/// format_double(x) parsed back, so JSON output carries the same digits as CSV.
double rounded(double x);

}  // namespace magnomech
