#pragma once

#include <string>

#include "hdro/measure.hpp"

namespace hdro {

enum class ProblemKind { kNewsvendor, kPricing, kSkiRental, kHolder };

// Decision problem on X = Xi = [0, M].
//   newsvendor  g = c_u (xi - x)^+ + c_o (x - xi)^+      (minimize)
//   pricing     g = x 1{xi >= x}                         (maximize)
//   ski rental  g = xi if xi <= x, b + x otherwise       (minimize)
//   holder      g = |xi - x|^alpha, 0 < alpha <= 1       (minimize)
struct ProblemSpec {
  ProblemKind kind = ProblemKind::kNewsvendor;
  double M = 1.0;
  double cu = 0.0;
  double co = 0.0;
  double b = 0.0;
  double alpha = 0.0;

  static ProblemSpec Newsvendor(double cu, double co, double M);
  static ProblemSpec Pricing(double M);
  static ProblemSpec SkiRental(double b, double M);
  static ProblemSpec Holder(double alpha, double M);

  bool maximize() const { return kind == ProblemKind::kPricing; }
  std::string Name() const;
  // newsvendor:cu,co,M | pricing:M | ski:b,M | holder:alpha,M
  std::string ToString() const;
  static ProblemSpec Parse(const std::string& text);
};

double Objective(const ProblemSpec& p, double x, double xi);

// E_{xi ~ m} g(x, xi), summed over atoms.
double ExpectedObjective(const ProblemSpec& p, double x, const FiniteMeasure& m);

// b (1 - F(x)) + x - int_0^x F.
double SkiClosedFormCost(double b, double x, const FiniteMeasure& m);

// sum_{i=1}^k P(xi >= i) + b P(xi >= k+1), integer support only.
double SkiDiscreteCost(long k, const FiniteMeasure& m, double b);

// Optimal action for m. Newsvendor uses the critical-fractile quantile,
// pricing the best support point (smallest on ties), holder the best of
// {0} u support u {M} (smallest on ties). Ski rental searches the same set
// but breaks ties toward the largest action, i.e. toward renting longer.
double Oracle(const ProblemSpec& p, const FiniteMeasure& m);

double OptValue(const ProblemSpec& p, const FiniteMeasure& m);

// Relative tolerance under which two expected costs count as tied.
double TieTolerance(const ProblemSpec& p);

}  // namespace hdro
