#include "hdro/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "hdro/error.hpp"

namespace hdro {

std::string FormatReal(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double ParseReal(const std::string& text) {
  if (text.empty()) Fail(ErrorCode::kParseError, "empty number");
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    Fail(ErrorCode::kParseError, "bad number '" + text + "'");
  }
  return v;
}

}  // namespace hdro
