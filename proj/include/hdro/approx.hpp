#pragma once

#include <functional>

#include "hdro/metrics.hpp"
#include "hdro/problem.hpp"

namespace hdro {

// Total variation, Lipschitz constant and span (sup - inf) of xi -> g(x, xi)
// on [0, M]. Unbounded quantities are +infinity.
struct ObjectiveStats {
  double total_variation = 0.0;
  double lipschitz = 0.0;
  double span = 0.0;
};

ObjectiveStats ObjectiveStatsAt(const ProblemSpec& p, double x);

// Same quantities from grid_n uniform cells (grid_n + 1 points). V and span
// are underestimates; a jump shows up as a slope of order grid_n.
ObjectiveStats ObjectiveStatsNumeric(const ProblemSpec& p, double x, int grid_n);

// eps-coefficient of the generic SAA bound: 2 sup_x V (kolmogorov),
// 2 sup_x Lip (wasserstein), 2 sup_x span (tv).
struct SaaDiagnostic {
  bool finite = false;
  double coefficient = 0.0;
};

SaaDiagnostic SaaDiagnosticFor(const ProblemSpec& p, DistanceKind kind);

// sum_{p=0}^q f(p/q) C(q,p) y^p (1-y)^(q-p).
double BernsteinEval(const std::function<double(double)>& f, int q, double y);

struct BernsteinCheck {
  double max_error = 0.0;
  double bound = 0.0;
  bool passed = false;
};

// Max |B_q f - f| over 10^4 + 1 grid points against (5/4) omega(q^-1/2).
BernsteinCheck BernsteinErrorCheck(const std::function<double(double)>& f,
                                   const std::function<double(double)>& omega, int q);

}  // namespace hdro
