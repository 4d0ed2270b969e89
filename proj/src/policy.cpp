#include "hdro/policy.hpp"

#include <algorithm>
#include <cmath>

#include "hdro/error.hpp"
#include "hdro/format.hpp"

namespace hdro {

PolicySpec PolicySpec::Saa() { return PolicySpec{}; }

PolicySpec PolicySpec::DeltaSaa(double delta) {
  if (!std::isfinite(delta)) Fail(ErrorCode::kConfigInvalid, "delta must be finite");
  PolicySpec pol;
  pol.kind = PolicyKind::kDeltaSaa;
  pol.delta = delta;
  return pol;
}

PolicySpec PolicySpec::Capped(double cap) {
  if (!(cap >= 0.0) || !std::isfinite(cap)) {
    Fail(ErrorCode::kConfigInvalid, "cap must be finite and nonnegative");
  }
  PolicySpec pol;
  pol.kind = PolicyKind::kCapped;
  pol.cap = cap;
  return pol;
}

std::string PolicySpec::ToString() const {
  switch (kind) {
    case PolicyKind::kSaa: return "saa";
    case PolicyKind::kDeltaSaa: return "dsaa:" + FormatReal(delta);
    case PolicyKind::kCapped: return "cap:" + FormatReal(cap);
  }
  return "unknown";
}

PolicySpec PolicySpec::Parse(const std::string& text) {
  if (text == "saa") return Saa();
  if (text.rfind("dsaa:", 0) == 0) return DeltaSaa(ParseReal(text.substr(5)));
  if (text.rfind("cap:", 0) == 0) return Capped(ParseReal(text.substr(4)));
  Fail(ErrorCode::kParseError, "unknown policy '" + text + "'");
}

double ApplyPolicy(const PolicySpec& pol, const ProblemSpec& p,
                   const FiniteMeasure& m_hat) {
  if (pol.kind == PolicyKind::kCapped && p.kind != ProblemKind::kSkiRental) {
    Fail(ErrorCode::kCappedOnNonSki, "capped policy applies to ski rental only");
  }
  double x = Oracle(p, m_hat);
  switch (pol.kind) {
    case PolicyKind::kSaa: return x;
    case PolicyKind::kDeltaSaa: return std::clamp(x + pol.delta, 0.0, p.M);
    case PolicyKind::kCapped: return std::min(pol.cap, x);
  }
  return x;
}

PolicySpec RecommendedPolicy(const ProblemSpec& p, DistanceKind kind, double eps) {
  if (!(eps > 0.0)) Fail(ErrorCode::kEpsNonPositive, "eps=" + FormatReal(eps));
  if (p.kind == ProblemKind::kPricing && kind == DistanceKind::kWasserstein) {
    return PolicySpec::DeltaSaa(-std::sqrt(p.M * eps));
  }
  if (p.kind == ProblemKind::kSkiRental) {
    if (kind == DistanceKind::kWasserstein) return PolicySpec::DeltaSaa(std::sqrt(p.b * eps));
    return PolicySpec::Capped(p.b * std::log(1.0 / eps));
  }
  return PolicySpec::Saa();
}

}  // namespace hdro
