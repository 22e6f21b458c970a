#include "magnomech/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace magnomech {

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kSignificantDigits);
  return std::string(buf, res.ptr);
}

double rounded(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_double(x);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

}  // namespace magnomech
