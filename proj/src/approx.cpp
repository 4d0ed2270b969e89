#include "hdro/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hdro/error.hpp"
#include "hdro/format.hpp"

namespace hdro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ObjectiveStats ObjectiveStatsAt(const ProblemSpec& p, double x) {
  if (!(x >= 0.0 && x <= p.M)) {
    Fail(ErrorCode::kOutOfRange, "x=" + FormatReal(x));
  }
  const double M = p.M;
  ObjectiveStats s;
  switch (p.kind) {
    case ProblemKind::kNewsvendor:
      s.total_variation = p.co * x + p.cu * (M - x);
      if (x == 0.0) {
        s.lipschitz = p.cu;
      } else if (x == M) {
        s.lipschitz = p.co;
      } else {
        s.lipschitz = std::max(p.cu, p.co);
      }
      s.span = std::max(p.co * x, p.cu * (M - x));
      break;
    case ProblemKind::kPricing:
      s.total_variation = x;
      s.lipschitz = x > 0.0 ? kInf : 0.0;
      s.span = x;
      break;
    case ProblemKind::kSkiRental:
      if (x == M) {
        // Never buying: g(M, xi) = xi.
        s.total_variation = M;
        s.lipschitz = 1.0;
        s.span = M;
      } else {
        s.total_variation = x + p.b;
        s.lipschitz = kInf;
        s.span = x + p.b;
      }
      break;
    case ProblemKind::kHolder:
      s.total_variation = std::pow(x, p.alpha) + std::pow(M - x, p.alpha);
      s.lipschitz = p.alpha < 1.0 ? kInf : 1.0;
      s.span = std::pow(std::max(x, M - x), p.alpha);
      break;
  }
  return s;
}

ObjectiveStats ObjectiveStatsNumeric(const ProblemSpec& p, double x, int grid_n) {
  if (grid_n < 2) Fail(ErrorCode::kConfigInvalid, "grid_n must be at least 2");
  double prev = Objective(p, x, 0.0);
  double lo = prev, hi = prev;
  ObjectiveStats s;
  for (int i = 1; i <= grid_n; ++i) {
    double xi = i == grid_n ? p.M : p.M * i / grid_n;
    double v = Objective(p, x, xi);
    double d = std::abs(v - prev);
    s.total_variation += d;
    s.lipschitz = std::max(s.lipschitz, d * grid_n / p.M);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    prev = v;
  }
  s.span = hi - lo;
  return s;
}

SaaDiagnostic SaaDiagnosticFor(const ProblemSpec& p, DistanceKind kind) {
  const double M = p.M;
  double sup = kInf;
  switch (p.kind) {
    case ProblemKind::kNewsvendor: {
      double c = std::max(p.cu, p.co);
      sup = kind == DistanceKind::kWasserstein ? c : c * M;
      break;
    }
    case ProblemKind::kPricing:
      sup = kind == DistanceKind::kWasserstein ? kInf : M;
      break;
    case ProblemKind::kSkiRental:
      sup = kind == DistanceKind::kWasserstein ? kInf : M + p.b;
      break;
    case ProblemKind::kHolder:
      if (kind == DistanceKind::kKolmogorov) {
        sup = 2.0 * std::pow(M / 2.0, p.alpha);
      } else if (kind == DistanceKind::kTotalVariation) {
        sup = std::pow(M, p.alpha);
      } else {
        sup = p.alpha == 1.0 ? 1.0 : kInf;
      }
      break;
  }
  SaaDiagnostic d;
  d.finite = std::isfinite(sup);
  d.coefficient = d.finite ? 2.0 * sup : kInf;
  return d;
}

double BernsteinEval(const std::function<double(double)>& f, int q, double y) {
  if (q < 1) Fail(ErrorCode::kDegreeZero, "Bernstein degree must be positive");
  if (!(y >= 0.0 && y <= 1.0)) Fail(ErrorCode::kOutOfRange, "y=" + FormatReal(y));
  if (y == 0.0) return f(0.0);
  if (y == 1.0) return f(1.0);
  const double ly = std::log(y), l1y = std::log1p(-y);
  const double lq = std::lgamma(q + 1.0);
  double acc = 0.0;
  for (int k = 0; k <= q; ++k) {
    double lw = lq - std::lgamma(k + 1.0) - std::lgamma(q - k + 1.0) + k * ly + (q - k) * l1y;
    acc += f(static_cast<double>(k) / q) * std::exp(lw);
  }
  return acc;
}

BernsteinCheck BernsteinErrorCheck(const std::function<double(double)>& f,
                                   const std::function<double(double)>& omega, int q) {
  constexpr int kGrid = 10000;
  BernsteinCheck c;
  for (int i = 0; i <= kGrid; ++i) {
    double y = static_cast<double>(i) / kGrid;
    c.max_error = std::max(c.max_error, std::abs(BernsteinEval(f, q, y) - f(y)));
  }
  c.bound = 1.25 * omega(1.0 / std::sqrt(static_cast<double>(q)));
  c.passed = c.max_error <= c.bound + 1e-9;
  return c;
}

}  // namespace hdro
