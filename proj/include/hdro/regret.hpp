#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdro/measure.hpp"
#include "hdro/metrics.hpp"
#include "hdro/policy.hpp"
#include "hdro/problem.hpp"

namespace hdro {

// A named worst-case construction: out-of-sample mu, historical nus.
//
// Two-point constructions also carry a rival out-of-sample measure that
// shares nus[0]; no policy can do well on both, and `target` is then the
// minimax floor rather than the regret of one policy.
struct AdversarialPair {
  std::string name;
  ProblemSpec problem;
  DistanceKind kind = DistanceKind::kKolmogorov;
  double eps = 0.0;
  FiniteMeasure mu;
  std::vector<FiniteMeasure> nus;
  std::vector<FiniteMeasure> rivals;
  PolicySpec policy;  // the policy the construction is aimed at
  std::optional<double> target;
  bool target_is_floor = false;
  std::string target_note;
};

struct RegretReport {
  double estimate = 0.0;
  double ci_half_width = 0.0;
  std::optional<double> analytic_lower;
  std::optional<double> analytic_upper;
  std::optional<AdversarialPair> witness;
  size_t n = 0;
  size_t trials = 0;
  uint64_t seed = 0;
};

using Params = std::map<std::string, double>;

// |opt(mu) - G(pi(nu) | mu)|.
double ExactRegret(const ProblemSpec& p, const PolicySpec& pol,
                   const FiniteMeasure& mu, const FiniteMeasure& nu);

// Regret of playing action x when the truth is mu.
double ActionRegret(const ProblemSpec& p, double x, const FiniteMeasure& mu);

// Averages |G(pi(mu_hat)|mu) - opt(mu)| over `trials` draws of
// xi_i ~ nus[i], i = 1..n. Trial t uses seed ^ t.
RegretReport MonteCarloRegret(const ProblemSpec& p, const PolicySpec& pol,
                              const FiniteMeasure& mu,
                              const std::vector<FiniteMeasure>& nus,
                              size_t trials, uint64_t seed);

// Exact expectation over both samples of a size-two history.
double ExhaustiveRegretN2(const ProblemSpec& p, const PolicySpec& pol,
                          const FiniteMeasure& mu, const FiniteMeasure& nu1,
                          const FiniteMeasure& nu2);

// Families: nv_tv_pair, pr_k_pair, pr_w_saa_fail, pr_w_lower,
// ski_k_saa_fail, ski_k_lower, ski_w_saa_fail, ski_w_lower, hetero_helps.
// `kind` overrides the family's default distance where that makes sense.
AdversarialPair AdversarialInstance(const std::string& name, const Params& params,
                                    std::optional<DistanceKind> kind = std::nullopt);

std::vector<std::string> AdversarialNames();

// Regret of `pol` on the family: exhaustive for two-sample histories,
// otherwise the larger of the exact regrets on mu and the rivals.
double FamilyRegret(const AdversarialPair& pair, const PolicySpec& pol);

// min over actions of the average regret on the two out-of-sample measures;
// actions are an (grid_n+1)-point grid on [0, M] plus both supports.
double TwoPointFloor(const ProblemSpec& p, const FiniteMeasure& a,
                     const FiniteMeasure& b, size_t grid_n = 1000);

// Geometric-tail ski-rental measure on {1..M-b} u {M} for which renting
// k in {0..M-b} days or forever all cost b.
FiniteMeasure SkiIndifferenceMeasure(long M, long b);

struct ScanGrid {
  std::vector<double> locations;
  int max_atoms = 2;
  int weight_resolution = 10;
  uint64_t max_pairs = 10'000'000;
};

// All measures with at most max_atoms atoms on grid.locations and weights
// in multiples of 1/weight_resolution.
std::vector<FiniteMeasure> EnumerateGridMeasures(const ScanGrid& grid, double upper);

// max over grid pairs (mu, nu) with nu in the eps-ball of mu of the exact
// regret of `pol`. A lower bound on the uniform DRO regret.
RegretReport DroRegretScan(const ProblemSpec& p, const PolicySpec& pol,
                           DistanceKind kind, double eps, const ScanGrid& grid);

enum class BoundPolicy { kSaa, kBest };

// Closed-form (lower, upper) pair for the uniform DRO regret of SAA or of the
// best policy in the given cell.
std::pair<double, double> AnalyticBounds(const ProblemSpec& p, DistanceKind kind,
                                         BoundPolicy pol, double eps);

// If the oracle of nu exceeds C, checks 1 - F(C) <= exp(-C / b).
bool CappedTailHolds(double b, double C, const ProblemSpec& p,
                     const FiniteMeasure& nu);

}  // namespace hdro
