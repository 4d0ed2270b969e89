#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hdro {

// Probability measure with finitely many atoms on [0, upper].
//
// Construction canonicalizes: atoms are sorted, points closer than
// kMergeTol are merged, zero weights are dropped and weights are
// renormalized. Two canonical measures compare equal iff all fields are
// bitwise equal.
class FiniteMeasure {
 public:
  static constexpr double kMergeTol = 1e-12;
  static constexpr double kNormTol = 1e-9;

  FiniteMeasure(std::vector<double> points, std::vector<double> weights,
                double upper);

  static FiniteMeasure PointMass(double x, double upper);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  double upper() const { return upper_; }
  size_t size() const { return support_.size(); }

  // P(xi <= t).
  double Cdf(double t) const;
  // P(xi >= t).
  double Tail(double t) const;
  // inf{x : F(x) >= q}.
  double Quantile(double q) const;
  double Mean() const;

  // Index into support() of the atom at x, or -1.
  int64_t IndexOf(double x) const;

  // n i.i.d. draws by inverse CDF; depends only on (seed, n, *this).
  std::vector<double> Sample(uint64_t seed, size_t n) const;
  // Atom index hit by a uniform u in [0, 1) under inverse-CDF sampling.
  uint32_t IndexForUniform(double u) const;
  // Atom indices instead of values.
  std::vector<uint32_t> SampleIndices(uint64_t seed, size_t n) const;

  std::string ToString() const;
  static FiniteMeasure Parse(const std::string& text);

  bool operator==(const FiniteMeasure& other) const;
  bool operator!=(const FiniteMeasure& other) const { return !(*this == other); }

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
  std::vector<double> cum_;
  std::vector<double> tail_;
  double upper_;
};

FiniteMeasure MakeFiniteMeasure(const std::vector<double>& points,
                                const std::vector<double>& weights,
                                double upper);

FiniteMeasure EmpiricalFrom(std::span<const double> samples, double upper);

// Convex combination sum_i coef[i] * parts[i]; parts share `upper`.
FiniteMeasure Mixture(const std::vector<FiniteMeasure>& parts,
                      const std::vector<double>& coef);

// Uniform on [0, 1) with 53 random bits.
double Uniform53(std::mt19937_64& rng);

// splitmix64 finalizer, used to decorrelate nearby seeds.
uint64_t MixSeed(uint64_t seed);

}  // namespace hdro
