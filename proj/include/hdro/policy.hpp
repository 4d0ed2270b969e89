#pragma once

#include <string>

#include "hdro/measure.hpp"
#include "hdro/metrics.hpp"
#include "hdro/problem.hpp"

namespace hdro {

enum class PolicyKind { kSaa, kDeltaSaa, kCapped };

struct PolicySpec {
  PolicyKind kind = PolicyKind::kSaa;
  double delta = 0.0;
  double cap = 0.0;

  static PolicySpec Saa();
  static PolicySpec DeltaSaa(double delta);
  static PolicySpec Capped(double cap);

  // saa | dsaa:<delta> | cap:<C>
  std::string ToString() const;
  static PolicySpec Parse(const std::string& text);
};

// saa: oracle; dsaa: clamp(oracle + delta, 0, M); capped: min(C, oracle).
double ApplyPolicy(const PolicySpec& pol, const ProblemSpec& p,
                   const FiniteMeasure& m_hat);

// Robustified policy for a heterogeneity radius eps:
//   pricing + wasserstein      dsaa(-sqrt(M eps))
//   ski + wasserstein          dsaa(+sqrt(b eps))
//   ski + kolmogorov/tv        cap(b ln(1/eps))
//   anything else              saa
PolicySpec RecommendedPolicy(const ProblemSpec& p, DistanceKind kind, double eps);

}  // namespace hdro
