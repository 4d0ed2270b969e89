#pragma once

#include <string>

namespace hdro {

// Shortest-ish decimal with 12 significant digits; "inf"/"-inf"/"nan" for
// non-finite values.
std::string FormatReal(double v);

// Strict decimal parse: the whole string must be consumed.
double ParseReal(const std::string& text);

}  // namespace hdro
