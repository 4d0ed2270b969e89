#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdro/metrics.hpp"
#include "hdro/policy.hpp"
#include "hdro/problem.hpp"
#include "hdro/regret.hpp"

namespace hdro {

enum class ExperimentMode { kAdversarial, kDroScan, kMonteCarlo };

ExperimentMode ParseExperimentMode(const std::string& text);
std::string ExperimentModeName(ExperimentMode mode);

struct ExperimentConfig {
  ProblemSpec problem;
  DistanceKind kind = DistanceKind::kKolmogorov;
  std::optional<PolicySpec> policy;  // empty: RecommendedPolicy per eps
  std::vector<double> eps_grid;
  size_t n = 10000;
  size_t trials = 2000;
  uint64_t seed = 42;
  ExperimentMode mode = ExperimentMode::kAdversarial;
  ScanGrid grid;
  Params params;       // extra family parameters such as eta or alpha
  std::string family;  // empty: the family matching the cell
};

struct ExperimentRow {
  double eps = 0.0;
  PolicySpec policy;
  RegretReport report;
  bool skipped = false;  // eps outside the construction's validity range
  std::string note;
};

// Family that attacks (problem, kind, policy class); empty if none.
std::string DefaultFamily(const ProblemSpec& p, DistanceKind kind, BoundPolicy pol);

BoundPolicy BoundPolicyFor(const PolicySpec& pol);

// One row per eps, in the order of cfg.eps_grid.
std::vector<ExperimentRow> RunExperiment(const ExperimentConfig& cfg);

// Whether the estimate respects the analytic bounds (upper only for scans,
// which are lower bounds on the worst case). Tolerances 1e-9 + 3 CI.
bool SandwichOk(const ExperimentRow& row, ExperimentMode mode);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// OLS of ln(regret) on ln(eps) over points with regret > 0.
RateFit FitRate(const std::vector<std::pair<double, double>>& points);

// CSV layer. Every field is text; numbers use 12 significant digits.
inline constexpr const char* kCsvHeader =
    "mode,problem,distance,policy,eps,M,param1,param2,n,trials,seed,regret_est,"
    "ci_half,analytic_lo,analytic_hi,witness,slope_note";

struct CsvRow {
  std::string mode, problem, distance, policy, eps, M, param1, param2, n, trials,
      seed, regret_est, ci_half, analytic_lo, analytic_hi, witness, slope_note;

  bool operator==(const CsvRow&) const = default;
};

CsvRow MakeCsvRow(const std::string& mode, const ProblemSpec& p, DistanceKind kind,
                  const ExperimentRow& row);
CsvRow MakeFitRow(const std::string& mode, const ProblemSpec& p, DistanceKind kind,
                  const std::string& policy, const RateFit& fit, size_t points);

std::string ToCsvLine(const CsvRow& row);
CsvRow ParseCsvLine(const std::string& line);

// Numeric view of a row; empty optionals for blank fields.
RegretReport ReportFromCsv(const CsvRow& row);

std::string WitnessText(const AdversarialPair& pair);

}  // namespace hdro
