#include "hdro/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hdro/error.hpp"

namespace hdro {

namespace {

void CheckSameInterval(const FiniteMeasure& a, const FiniteMeasure& b) {
  if (a.upper() != b.upper()) {
    Fail(ErrorCode::kMismatchedInterval, "measures live on different intervals");
  }
}

// Walks the union support; visit(t, wa, wb, Fa, Fb) gets the point, the atom
// weights there and both CDFs just after t.
template <typename Visit>
void MergedWalk(const FiniteMeasure& a, const FiniteMeasure& b, Visit visit) {
  const auto& sa = a.support();
  const auto& sb = b.support();
  size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double t, wa = 0.0, wb = 0.0;
    bool take_a, take_b;
    if (i < sa.size() && j < sb.size()) {
      if (std::abs(sa[i] - sb[j]) <= FiniteMeasure::kMergeTol) {
        take_a = take_b = true;
      } else {
        take_a = sa[i] < sb[j];
        take_b = !take_a;
      }
    } else {
      take_a = i < sa.size();
      take_b = !take_a;
    }
    t = take_a ? sa[i] : sb[j];
    if (take_a) wa = a.weights()[i++];
    if (take_b) wb = b.weights()[j++];
    fa = i == sa.size() ? 1.0 : fa + wa;
    fb = j == sb.size() ? 1.0 : fb + wb;
    visit(t, wa, wb, fa, fb);
  }
}

}  // namespace

DistanceKind ParseDistanceKind(const std::string& text) {
  if (text == "kolmogorov" || text == "k") return DistanceKind::kKolmogorov;
  if (text == "tv" || text == "total_variation") return DistanceKind::kTotalVariation;
  if (text == "wasserstein" || text == "w") return DistanceKind::kWasserstein;
  Fail(ErrorCode::kParseError, "unknown distance '" + text + "'");
}

std::string DistanceKindName(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kKolmogorov: return "kolmogorov";
    case DistanceKind::kTotalVariation: return "tv";
    case DistanceKind::kWasserstein: return "wasserstein";
  }
  return "unknown";
}

double Kolmogorov(const FiniteMeasure& a, const FiniteMeasure& b) {
  CheckSameInterval(a, b);
  double best = 0.0;
  MergedWalk(a, b, [&](double, double, double, double fa, double fb) {
    best = std::max(best, std::abs(fa - fb));
  });
  return best;
}

double TotalVariation(const FiniteMeasure& a, const FiniteMeasure& b) {
  CheckSameInterval(a, b);
  double acc = 0.0;
  MergedWalk(a, b, [&](double, double wa, double wb, double, double) {
    acc += std::abs(wa - wb);
  });
  return std::min(1.0, 0.5 * acc);
}

double Wasserstein1(const FiniteMeasure& a, const FiniteMeasure& b) {
  CheckSameInterval(a, b);
  double acc = 0.0;
  double prev_t = 0.0, prev_gap = 0.0;
  bool first = true;
  MergedWalk(a, b, [&](double t, double, double, double fa, double fb) {
    if (!first) acc += prev_gap * (t - prev_t);
    first = false;
    prev_t = t;
    prev_gap = std::abs(fa - fb);
  });
  return acc;
}

double Distance(DistanceKind kind, const FiniteMeasure& a, const FiniteMeasure& b) {
  switch (kind) {
    case DistanceKind::kKolmogorov: return Kolmogorov(a, b);
    case DistanceKind::kTotalVariation: return TotalVariation(a, b);
    case DistanceKind::kWasserstein: return Wasserstein1(a, b);
  }
  return 0.0;
}

bool InBall(const FiniteMeasure& center, const FiniteMeasure& m,
            DistanceKind kind, double eps) {
  return Distance(kind, center, m) <= eps + 1e-12;
}

double TriangularArrayDeviation(const std::vector<FiniteMeasure>& rows,
                                uint64_t seed) {
  if (rows.empty()) Fail(ErrorCode::kEmptyInput, "no rows");
  std::vector<double> draws;
  draws.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    draws.push_back(rows[i].Sample(seed ^ (static_cast<uint64_t>(i) << 20), 1)[0]);
  }
  FiniteMeasure emp = EmpiricalFrom(draws, rows[0].upper());
  std::vector<double> coef(rows.size(), 1.0 / static_cast<double>(rows.size()));
  return Kolmogorov(emp, Mixture(rows, coef));
}

}  // namespace hdro
