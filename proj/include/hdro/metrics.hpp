#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdro/measure.hpp"

namespace hdro {

enum class DistanceKind { kKolmogorov, kTotalVariation, kWasserstein };

// "kolmogorov", "tv" (or "total_variation"), "wasserstein".
DistanceKind ParseDistanceKind(const std::string& text);
std::string DistanceKindName(DistanceKind kind);

double Kolmogorov(const FiniteMeasure& a, const FiniteMeasure& b);
double TotalVariation(const FiniteMeasure& a, const FiniteMeasure& b);
double Wasserstein1(const FiniteMeasure& a, const FiniteMeasure& b);
double Distance(DistanceKind kind, const FiniteMeasure& a, const FiniteMeasure& b);

// distance(center, m) <= eps + 1e-12.
bool InBall(const FiniteMeasure& center, const FiniteMeasure& m,
            DistanceKind kind, double eps);

// One draw xi_i ~ rows[i] per row, then the Kolmogorov distance between the
// empirical measure of the draws and the uniform mixture of the rows.
double TriangularArrayDeviation(const std::vector<FiniteMeasure>& rows,
                                uint64_t seed);

}  // namespace hdro
