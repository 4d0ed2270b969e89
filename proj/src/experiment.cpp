#include "hdro/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "hdro/error.hpp"
#include "hdro/format.hpp"

namespace hdro {

namespace {

bool IsBlank(const std::string& s) { return s.empty(); }

std::string OptReal(const std::optional<double>& v) {
  return v ? FormatReal(*v) : std::string();
}

std::optional<double> ParseOpt(const std::string& s) {
  if (IsBlank(s)) return std::nullopt;
  return ParseReal(s);
}

Params FamilyParams(const ExperimentConfig& cfg, double eps) {
  Params params = cfg.params;
  const ProblemSpec& p = cfg.problem;
  params["eps"] = eps;
  params["M"] = p.M;
  switch (p.kind) {
    case ProblemKind::kNewsvendor:
      params["cu"] = p.cu;
      params["co"] = p.co;
      break;
    case ProblemKind::kSkiRental:
      params["b"] = p.b;
      break;
    default:
      break;
  }
  return params;
}

std::vector<FiniteMeasure> History(const AdversarialPair& pair, size_t n) {
  if (pair.nus.size() > 1) return pair.nus;
  return std::vector<FiniteMeasure>(n, pair.nus[0]);
}

}  // namespace

ExperimentMode ParseExperimentMode(const std::string& text) {
  if (text == "adversarial" || text == "adversarial-named") return ExperimentMode::kAdversarial;
  if (text == "dro-scan" || text == "scan") return ExperimentMode::kDroScan;
  if (text == "monte-carlo" || text == "mc") return ExperimentMode::kMonteCarlo;
  Fail(ErrorCode::kParseError, "unknown mode '" + text + "'");
}

std::string ExperimentModeName(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::kAdversarial: return "adversarial";
    case ExperimentMode::kDroScan: return "dro-scan";
    case ExperimentMode::kMonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

std::string DefaultFamily(const ProblemSpec& p, DistanceKind kind, BoundPolicy pol) {
  const bool w = kind == DistanceKind::kWasserstein;
  const bool saa = pol == BoundPolicy::kSaa;
  switch (p.kind) {
    case ProblemKind::kNewsvendor:
      return "nv_tv_pair";
    case ProblemKind::kPricing:
      if (!w) return "pr_k_pair";
      return saa ? "pr_w_saa_fail" : "pr_w_lower";
    case ProblemKind::kSkiRental:
      if (!w) return saa ? "ski_k_saa_fail" : "ski_k_lower";
      return saa ? "ski_w_saa_fail" : "ski_w_lower";
    case ProblemKind::kHolder:
      return "";
  }
  return "";
}

BoundPolicy BoundPolicyFor(const PolicySpec& pol) {
  return pol.kind == PolicyKind::kSaa ? BoundPolicy::kSaa : BoundPolicy::kBest;
}

std::vector<ExperimentRow> RunExperiment(const ExperimentConfig& cfg) {
  if (cfg.eps_grid.empty()) Fail(ErrorCode::kConfigInvalid, "empty eps grid");
  if (!std::is_sorted(cfg.eps_grid.begin(), cfg.eps_grid.end())) {
    Fail(ErrorCode::kConfigInvalid, "eps grid must be ascending");
  }
  for (double e : cfg.eps_grid) {
    if (!(e > 0.0)) Fail(ErrorCode::kEpsNonPositive, "eps=" + FormatReal(e));
  }
  if (cfg.trials == 0 || cfg.n == 0) {
    Fail(ErrorCode::kConfigInvalid, "n and trials must be positive");
  }

  std::vector<ExperimentRow> rows;
  for (double eps : cfg.eps_grid) {
    ExperimentRow row;
    row.eps = eps;
    row.policy = cfg.policy ? *cfg.policy : RecommendedPolicy(cfg.problem, cfg.kind, eps);
    BoundPolicy bp = BoundPolicyFor(row.policy);

    if (cfg.mode == ExperimentMode::kDroScan) {
      row.report = DroRegretScan(cfg.problem, row.policy, cfg.kind, eps, cfg.grid);
    } else {
      std::string family = cfg.family.empty() ? DefaultFamily(cfg.problem, cfg.kind, bp)
                                              : cfg.family;
      if (family.empty()) {
        Fail(ErrorCode::kConfigInvalid,
             "no adversarial family for " + cfg.problem.Name() + "/" +
                 DistanceKindName(cfg.kind));
      }
      std::optional<AdversarialPair> pair;
      try {
        pair = AdversarialInstance(family, FamilyParams(cfg, eps), cfg.kind);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kEpsTooLarge) throw;
        row.skipped = true;
        row.note = std::string("skipped: ") + e.what();
      }
      if (pair) {
        if (cfg.mode == ExperimentMode::kAdversarial) {
          row.report.estimate = FamilyRegret(*pair, row.policy);
        } else {
          std::vector<FiniteMeasure> nus = History(*pair, cfg.n);
          std::vector<const FiniteMeasure*> outs = {&pair->mu};
          for (const auto& r : pair->rivals) outs.push_back(&r);
          bool first = true;
          for (const FiniteMeasure* out : outs) {
            RegretReport rep = MonteCarloRegret(cfg.problem, row.policy, *out, nus,
                                                cfg.trials, cfg.seed);
            if (first || rep.estimate > row.report.estimate) row.report = rep;
            first = false;
          }
        }
        row.report.witness = *pair;
      }
    }
    if (cfg.mode != ExperimentMode::kMonteCarlo) {
      row.report.n = 0;
      row.report.trials = 0;
    }
    row.report.seed = cfg.seed;
    try {
      auto [lo, hi] = AnalyticBounds(cfg.problem, cfg.kind, bp, eps);
      row.report.analytic_lower = lo;
      row.report.analytic_upper = hi;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoKnownBound && e.code() != ErrorCode::kEpsTooLarge) throw;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool SandwichOk(const ExperimentRow& row, ExperimentMode mode) {
  if (row.skipped) return true;
  const RegretReport& r = row.report;
  const double slack = 1e-9 + 3.0 * r.ci_half_width;
  if (r.analytic_upper && r.estimate > *r.analytic_upper + slack) return false;
  if (mode != ExperimentMode::kDroScan && r.analytic_lower &&
      r.estimate < *r.analytic_lower - slack) {
    return false;
  }
  return true;
}

RateFit FitRate(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> xs, ys;
  for (const auto& [eps, regret] : points) {
    if (eps > 0.0 && regret > 0.0 && std::isfinite(regret)) {
      xs.push_back(std::log(eps));
      ys.push_back(std::log(regret));
    }
  }
  if (xs.size() < 3) {
    Fail(ErrorCode::kNoPositivePoints,
         "need at least 3 points with positive regret, got " + std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 1e-300) Fail(ErrorCode::kDegeneratePoints, "all eps are equal");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

std::string WitnessText(const AdversarialPair& pair) {
  if (pair.name != "scan") return pair.name;
  std::string s = "mu=" + pair.mu.ToString();
  for (const auto& nu : pair.nus) s += ";nu=" + nu.ToString();
  return s;
}

namespace {

void FillProblem(CsvRow& c, const ProblemSpec& p, DistanceKind kind) {
  c.problem = p.Name();
  c.distance = DistanceKindName(kind);
  c.M = FormatReal(p.M);
  switch (p.kind) {
    case ProblemKind::kNewsvendor:
      c.param1 = FormatReal(p.cu);
      c.param2 = FormatReal(p.co);
      break;
    case ProblemKind::kSkiRental:
      c.param1 = FormatReal(p.b);
      break;
    case ProblemKind::kHolder:
      c.param1 = FormatReal(p.alpha);
      break;
    case ProblemKind::kPricing:
      break;
  }
}

}  // namespace

CsvRow MakeCsvRow(const std::string& mode, const ProblemSpec& p, DistanceKind kind,
                  const ExperimentRow& row) {
  CsvRow c;
  c.mode = mode;
  FillProblem(c, p, kind);
  c.policy = row.policy.ToString();
  c.eps = FormatReal(row.eps);
  const RegretReport& r = row.report;
  c.n = std::to_string(r.n);
  c.trials = std::to_string(r.trials);
  c.seed = std::to_string(r.seed);
  if (!row.skipped) {
    c.regret_est = FormatReal(r.estimate);
    c.ci_half = FormatReal(r.ci_half_width);
  }
  c.analytic_lo = OptReal(r.analytic_lower);
  c.analytic_hi = OptReal(r.analytic_upper);
  if (r.witness) c.witness = WitnessText(*r.witness);
  c.slope_note = row.note;
  return c;
}

CsvRow MakeFitRow(const std::string& mode, const ProblemSpec& p, DistanceKind kind,
                  const std::string& policy, const RateFit& fit, size_t points) {
  CsvRow c;
  c.mode = mode;
  FillProblem(c, p, kind);
  c.policy = policy;
  c.slope_note = "slope=" + FormatReal(fit.slope) + ";intercept=" +
                 FormatReal(fit.intercept) + ";r2=" + FormatReal(fit.r_squared) +
                 ";points=" + std::to_string(points);
  return c;
}

namespace {

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string*> Fields(CsvRow& c) {
  return {&c.mode,    &c.problem,   &c.distance,    &c.policy,      &c.eps,  &c.M,
          &c.param1,  &c.param2,    &c.n,           &c.trials,      &c.seed, &c.regret_est,
          &c.ci_half, &c.analytic_lo, &c.analytic_hi, &c.witness,  &c.slope_note};
}

}  // namespace

std::string ToCsvLine(const CsvRow& row) {
  CsvRow copy = row;
  std::string line;
  bool first = true;
  for (std::string* f : Fields(copy)) {
    if (!first) line += ',';
    line += Quote(*f);
    first = false;
  }
  return line;
}

CsvRow ParseCsvLine(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cells.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  CsvRow c;
  auto fields = Fields(c);
  if (quoted || cells.size() != fields.size()) {
    Fail(ErrorCode::kParseError, "CSV row has " + std::to_string(cells.size()) + " fields");
  }
  for (size_t i = 0; i < fields.size(); ++i) *fields[i] = cells[i];
  return c;
}

RegretReport ReportFromCsv(const CsvRow& row) {
  RegretReport r;
  r.estimate = ParseOpt(row.regret_est).value_or(0.0);
  r.ci_half_width = ParseOpt(row.ci_half).value_or(0.0);
  r.analytic_lower = ParseOpt(row.analytic_lo);
  r.analytic_upper = ParseOpt(row.analytic_hi);
  r.n = row.n.empty() ? 0 : std::stoull(row.n);
  r.trials = row.trials.empty() ? 0 : std::stoull(row.trials);
  r.seed = row.seed.empty() ? 0 : std::stoull(row.seed);
  return r;
}

}  // namespace hdro
