#include "hdro/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hdro/error.hpp"
#include "hdro/format.hpp"

namespace hdro {

namespace {

constexpr double kRenormTol = 1e-14;

}  // namespace

double Uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t MixSeed(uint64_t seed) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FiniteMeasure::FiniteMeasure(std::vector<double> points,
                             std::vector<double> weights, double upper)
    : upper_(upper) {
  if (points.empty() || points.size() != weights.size()) {
    Fail(ErrorCode::kEmptyInput, "points and weights must be nonempty and of equal length");
  }
  if (!std::isfinite(upper) || upper <= 0.0) {
    Fail(ErrorCode::kPointOutOfRange, "upper must be positive and finite");
  }
  double total = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      Fail(ErrorCode::kNegativeWeight, "weight " + FormatReal(weights[i]));
    }
    double p = points[i];
    if (!std::isfinite(p) || p < -kMergeTol || p > upper + kMergeTol) {
      Fail(ErrorCode::kPointOutOfRange,
           "point " + FormatReal(p) + " outside [0, " + FormatReal(upper) + "]");
    }
    points[i] = std::clamp(p, 0.0, upper);
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kNormTol) {
    Fail(ErrorCode::kWeightsNotNormalized, "sum of weights " + FormatReal(total));
  }

  std::vector<size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return points[a] < points[b]; });

  for (size_t idx : order) {
    double p = points[idx];
    double w = weights[idx];
    if (!support_.empty() && p - support_.back() <= kMergeTol) {
      weights_.back() += w;
    } else {
      support_.push_back(p);
      weights_.push_back(w);
    }
  }
  size_t keep = 0;
  for (size_t i = 0; i < support_.size(); ++i) {
    if (weights_[i] > 0.0) {
      support_[keep] = support_[i];
      weights_[keep] = weights_[i];
      ++keep;
    }
  }
  support_.resize(keep);
  weights_.resize(keep);

  double sum = 0.0;
  for (double w : weights_) sum += w;
  if (std::abs(sum - 1.0) > kRenormTol) {
    for (double& w : weights_) w /= sum;
  }
  cum_.resize(weights_.size());
  double acc = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cum_[i] = acc;
  }
  cum_.back() = 1.0;
  // Summed from the right so tails of small upper atoms stay exact.
  tail_.resize(weights_.size());
  acc = 0.0;
  for (size_t i = weights_.size(); i-- > 0;) {
    acc += weights_[i];
    tail_[i] = acc;
  }
  tail_.front() = 1.0;
}

FiniteMeasure FiniteMeasure::PointMass(double x, double upper) {
  return FiniteMeasure({x}, {1.0}, upper);
}

double FiniteMeasure::Cdf(double t) const {
  auto it = std::upper_bound(support_.begin(), support_.end(), t);
  if (it == support_.begin()) return 0.0;
  return cum_[static_cast<size_t>(it - support_.begin()) - 1];
}

double FiniteMeasure::Tail(double t) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), t);
  size_t i = static_cast<size_t>(it - support_.begin());
  if (i == 0) return 1.0;
  if (i == support_.size()) return 0.0;
  return tail_[i];
}

double FiniteMeasure::Quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    Fail(ErrorCode::kQOutOfRange, "q=" + FormatReal(q));
  }
  if (q == 0.0) return support_.front();
  auto it = std::lower_bound(cum_.begin(), cum_.end(), q);
  return support_[static_cast<size_t>(it - cum_.begin())];
}

double FiniteMeasure::Mean() const {
  double acc = 0.0;
  for (size_t i = 0; i < support_.size(); ++i) acc += support_[i] * weights_[i];
  return acc;
}

int64_t FiniteMeasure::IndexOf(double x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x - kMergeTol);
  if (it != support_.end() && std::abs(*it - x) <= kMergeTol) {
    return it - support_.begin();
  }
  return -1;
}

uint32_t FiniteMeasure::IndexForUniform(double u) const {
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  if (it == cum_.end()) --it;
  return static_cast<uint32_t>(it - cum_.begin());
}

std::vector<uint32_t> FiniteMeasure::SampleIndices(uint64_t seed, size_t n) const {
  std::mt19937_64 rng(MixSeed(seed));
  std::vector<uint32_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = IndexForUniform(Uniform53(rng));
  return out;
}

std::vector<double> FiniteMeasure::Sample(uint64_t seed, size_t n) const {
  std::vector<uint32_t> idx = SampleIndices(seed, n);
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = support_[idx[i]];
  return out;
}

std::string FiniteMeasure::ToString() const {
  std::string s;
  for (size_t i = 0; i < support_.size(); ++i) {
    if (i) s += ',';
    s += FormatReal(support_[i]) + ':' + FormatReal(weights_[i]);
  }
  s += '@' + FormatReal(upper_);
  return s;
}

FiniteMeasure FiniteMeasure::Parse(const std::string& text) {
  size_t at = text.rfind('@');
  if (at == std::string::npos) {
    Fail(ErrorCode::kParseError, "measure '" + text + "' lacks '@upper'");
  }
  double upper = ParseReal(text.substr(at + 1));
  std::vector<double> pts, wts;
  std::stringstream ss(text.substr(0, at));
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t colon = item.find(':');
    if (colon == std::string::npos) {
      Fail(ErrorCode::kParseError, "atom '" + item + "' is not point:weight");
    }
    pts.push_back(ParseReal(item.substr(0, colon)));
    wts.push_back(ParseReal(item.substr(colon + 1)));
  }
  return FiniteMeasure(std::move(pts), std::move(wts), upper);
}

bool FiniteMeasure::operator==(const FiniteMeasure& other) const {
  return upper_ == other.upper_ && support_ == other.support_ &&
         weights_ == other.weights_;
}

FiniteMeasure MakeFiniteMeasure(const std::vector<double>& points,
                                const std::vector<double>& weights,
                                double upper) {
  return FiniteMeasure(points, weights, upper);
}

FiniteMeasure EmpiricalFrom(std::span<const double> samples, double upper) {
  if (samples.empty()) Fail(ErrorCode::kEmptyInput, "no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> pts;
  std::vector<double> counts;
  for (double s : sorted) {
    if (!pts.empty() && s == pts.back()) {
      counts.back() += 1.0;
    } else {
      pts.push_back(s);
      counts.push_back(1.0);
    }
  }
  double n = static_cast<double>(samples.size());
  for (double& c : counts) c /= n;
  return FiniteMeasure(std::move(pts), std::move(counts), upper);
}

FiniteMeasure Mixture(const std::vector<FiniteMeasure>& parts,
                      const std::vector<double>& coef) {
  if (parts.empty() || parts.size() != coef.size()) {
    Fail(ErrorCode::kEmptyInput, "mixture needs matching parts and coefficients");
  }
  std::vector<double> pts, wts;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].upper() != parts[0].upper()) {
      Fail(ErrorCode::kMismatchedInterval, "mixture parts on different intervals");
    }
    if (coef[i] < 0.0) Fail(ErrorCode::kNegativeWeight, "mixture coefficient");
    for (size_t j = 0; j < parts[i].size(); ++j) {
      pts.push_back(parts[i].support()[j]);
      wts.push_back(coef[i] * parts[i].weights()[j]);
    }
  }
  return FiniteMeasure(std::move(pts), std::move(wts), parts[0].upper());
}

}  // namespace hdro
