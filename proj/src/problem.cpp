#include "hdro/problem.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hdro/error.hpp"
#include "hdro/format.hpp"

namespace hdro {

namespace {

double CheckPoint(const ProblemSpec& p, double v, const char* what) {
  if (!(v >= -1e-12 && v <= p.M + 1e-12)) {
    Fail(ErrorCode::kOutOfRange, std::string(what) + "=" + FormatReal(v) +
                                     " outside [0, " + FormatReal(p.M) + "]");
  }
  return std::clamp(v, 0.0, p.M);
}

void CheckInterval(const ProblemSpec& p, const FiniteMeasure& m) {
  if (m.upper() != p.M) {
    Fail(ErrorCode::kMismatchedInterval,
         "measure on [0, " + FormatReal(m.upper()) + "], problem on [0, " +
             FormatReal(p.M) + "]");
  }
}

void CheckPositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    Fail(ErrorCode::kInvalidProblem, std::string(what) + " must be positive");
  }
}

std::vector<double> SplitNumbers(const std::string& text) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(ParseReal(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

// Candidate set {0} u support u {M}, sorted.
std::vector<double> EndpointCandidates(const ProblemSpec& p, const FiniteMeasure& m) {
  std::vector<double> c;
  c.reserve(m.size() + 2);
  if (m.support().front() > 0.0) c.push_back(0.0);
  c.insert(c.end(), m.support().begin(), m.support().end());
  if (m.support().back() < p.M) c.push_back(p.M);
  return c;
}

}  // namespace

ProblemSpec ProblemSpec::Newsvendor(double cu, double co, double M) {
  CheckPositive(cu, "c_u");
  CheckPositive(co, "c_o");
  CheckPositive(M, "M");
  ProblemSpec p;
  p.kind = ProblemKind::kNewsvendor;
  p.cu = cu;
  p.co = co;
  p.M = M;
  return p;
}

ProblemSpec ProblemSpec::Pricing(double M) {
  CheckPositive(M, "M");
  ProblemSpec p;
  p.kind = ProblemKind::kPricing;
  p.M = M;
  return p;
}

ProblemSpec ProblemSpec::SkiRental(double b, double M) {
  CheckPositive(b, "b");
  CheckPositive(M, "M");
  if (!(b < M)) Fail(ErrorCode::kInvalidProblem, "ski rental needs b < M");
  ProblemSpec p;
  p.kind = ProblemKind::kSkiRental;
  p.b = b;
  p.M = M;
  return p;
}

ProblemSpec ProblemSpec::Holder(double alpha, double M) {
  CheckPositive(M, "M");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    Fail(ErrorCode::kInvalidProblem, "holder exponent must lie in (0, 1]");
  }
  ProblemSpec p;
  p.kind = ProblemKind::kHolder;
  p.alpha = alpha;
  p.M = M;
  return p;
}

std::string ProblemSpec::Name() const {
  switch (kind) {
    case ProblemKind::kNewsvendor: return "newsvendor";
    case ProblemKind::kPricing: return "pricing";
    case ProblemKind::kSkiRental: return "ski";
    case ProblemKind::kHolder: return "holder";
  }
  return "unknown";
}

std::string ProblemSpec::ToString() const {
  switch (kind) {
    case ProblemKind::kNewsvendor:
      return "newsvendor:" + FormatReal(cu) + "," + FormatReal(co) + "," + FormatReal(M);
    case ProblemKind::kPricing:
      return "pricing:" + FormatReal(M);
    case ProblemKind::kSkiRental:
      return "ski:" + FormatReal(b) + "," + FormatReal(M);
    case ProblemKind::kHolder:
      return "holder:" + FormatReal(alpha) + "," + FormatReal(M);
  }
  return "unknown";
}

ProblemSpec ProblemSpec::Parse(const std::string& text) {
  size_t colon = text.find(':');
  if (colon == std::string::npos) {
    Fail(ErrorCode::kParseError, "problem '" + text + "' lacks ':'");
  }
  std::string name = text.substr(0, colon);
  std::vector<double> v = SplitNumbers(text.substr(colon + 1));
  auto need = [&](size_t k) {
    if (v.size() != k) {
      Fail(ErrorCode::kParseError, "problem '" + name + "' takes " +
                                       std::to_string(k) + " parameters");
    }
  };
  if (name == "newsvendor") {
    need(3);
    return Newsvendor(v[0], v[1], v[2]);
  }
  if (name == "pricing") {
    need(1);
    return Pricing(v[0]);
  }
  if (name == "ski" || name == "ski_rental") {
    need(2);
    return SkiRental(v[0], v[1]);
  }
  if (name == "holder") {
    need(2);
    return Holder(v[0], v[1]);
  }
  Fail(ErrorCode::kParseError, "unknown problem '" + name + "'");
}

double Objective(const ProblemSpec& p, double x, double xi) {
  x = CheckPoint(p, x, "x");
  xi = CheckPoint(p, xi, "xi");
  switch (p.kind) {
    case ProblemKind::kNewsvendor:
      return xi >= x ? p.cu * (xi - x) : p.co * (x - xi);
    case ProblemKind::kPricing:
      return xi >= x ? x : 0.0;
    case ProblemKind::kSkiRental:
      return xi <= x ? xi : p.b + x;
    case ProblemKind::kHolder:
      return std::pow(std::abs(xi - x), p.alpha);
  }
  return 0.0;
}

double ExpectedObjective(const ProblemSpec& p, double x, const FiniteMeasure& m) {
  CheckInterval(p, m);
  x = CheckPoint(p, x, "x");
  if (p.kind == ProblemKind::kPricing) return x * m.Tail(x);
  double acc = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    acc += m.weights()[i] * Objective(p, x, m.support()[i]);
  }
  return acc;
}

double SkiClosedFormCost(double b, double x, const FiniteMeasure& m) {
  double integral = 0.0;
  for (size_t i = 0; i < m.size() && m.support()[i] <= x; ++i) {
    integral += m.weights()[i] * (x - m.support()[i]);
  }
  return b * (1.0 - m.Cdf(x)) + x - integral;
}

double SkiDiscreteCost(long k, const FiniteMeasure& m, double b) {
  for (double s : m.support()) {
    if (s != std::round(s)) {
      Fail(ErrorCode::kNonIntegerSupport, "atom " + FormatReal(s));
    }
  }
  if (k < 0) Fail(ErrorCode::kOutOfRange, "negative day count");
  double acc = 0.0;
  for (long i = 1; i <= k; ++i) acc += m.Tail(static_cast<double>(i));
  return acc + b * m.Tail(static_cast<double>(k + 1));
}

double TieTolerance(const ProblemSpec& p) {
  double scale = p.M + p.b + p.cu * p.M + p.co * p.M;
  return 1e-12 * std::max(1.0, scale);
}

double Oracle(const ProblemSpec& p, const FiniteMeasure& m) {
  CheckInterval(p, m);
  switch (p.kind) {
    case ProblemKind::kNewsvendor:
      return m.Quantile(p.cu / (p.cu + p.co));
    case ProblemKind::kPricing: {
      double best_x = 0.0, best_v = 0.0;
      for (size_t i = 0; i < m.size(); ++i) {
        double s = m.support()[i];
        double v = s * m.Tail(s);
        if (v > best_v) {
          best_v = v;
          best_x = s;
        }
      }
      return best_x;
    }
    case ProblemKind::kSkiRental: {
      const double tol = TieTolerance(p);
      double best_x = 0.0, best_v = 0.0;
      bool first = true;
      for (double c : EndpointCandidates(p, m)) {
        double v = ExpectedObjective(p, c, m);
        if (first || v <= best_v + tol) {
          if (first || v < best_v) best_v = v;
          best_x = c;
          first = false;
        }
      }
      return best_x;
    }
    case ProblemKind::kHolder: {
      double best_x = 0.0, best_v = 0.0;
      bool first = true;
      for (double c : EndpointCandidates(p, m)) {
        double v = ExpectedObjective(p, c, m);
        if (first || v < best_v) {
          best_v = v;
          best_x = c;
          first = false;
        }
      }
      return best_x;
    }
  }
  return 0.0;
}

double OptValue(const ProblemSpec& p, const FiniteMeasure& m) {
  return ExpectedObjective(p, Oracle(p, m), m);
}

}  // namespace hdro
