#include "hdro/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "hdro/approx.hpp"
#include "hdro/error.hpp"
#include "hdro/experiment.hpp"
#include "hdro/format.hpp"
#include "hdro/metrics.hpp"
#include "hdro/policy.hpp"
#include "hdro/problem.hpp"
#include "hdro/regret.hpp"

namespace hdro {

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitSandwich = 3;

struct GlobalOpts {
  uint64_t seed = 42;
  size_t trials = 2000;
  std::string out_path;
  bool strict = false;
};

struct ScanOpts {
  std::vector<double> locations;
  int loc_count = 5;
  int atoms = 2;
  int resolution = 10;
  uint64_t max_pairs = 10'000'000;

  ScanGrid Build(double M) const {
    ScanGrid g;
    g.locations = locations;
    if (g.locations.empty()) {
      for (int i = 0; i < loc_count; ++i) g.locations.push_back(M * i / (loc_count - 1));
    }
    g.max_atoms = atoms;
    g.weight_resolution = resolution;
    g.max_pairs = max_pairs;
    return g;
  }
};

void AddScanOptions(CLI::App* cmd, ScanOpts& s) {
  cmd->add_option("--locations", s.locations, "Grid support points")->delimiter(',');
  cmd->add_option("--loc-count", s.loc_count, "Uniform grid points on [0, M] if no --locations")
      ->check(CLI::Range(2, 1000));
  cmd->add_option("--atoms", s.atoms, "Max atoms per measure")->check(CLI::Range(1, 4));
  cmd->add_option("--resolution", s.resolution, "Weight grid denominator")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-pairs", s.max_pairs, "Cap on enumerated pairs");
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) Fail(ErrorCode::kConfigInvalid, "cannot open " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void WriteRows(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << ToCsvLine(r) << '\n';
}

std::optional<PolicySpec> PolicyOrRecommended(const std::string& text) {
  if (text == "recommended") return std::nullopt;
  return PolicySpec::Parse(text);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regret of data-driven policies under heterogeneous data", "hetero-dro"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Monte-Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", g.out_path, "Write output to this file instead of stdout");
  app.add_flag("--strict", g.strict, "Exit 3 when an estimate leaves its analytic bounds");
  app.fallthrough();

  // distance
  std::string kind_text, a_text, b_text;
  auto* distance = app.add_subcommand("distance", "Distance between two measures");
  distance->add_option("--kind", kind_text)->required();
  distance->add_option("--a", a_text)->required();
  distance->add_option("--b", b_text)->required();

  // oracle
  std::string problem_text, measure_text;
  auto* oracle = app.add_subcommand("oracle", "Optimal action and value for a measure");
  oracle->add_option("--problem", problem_text)->required();
  oracle->add_option("--measure", measure_text)->required();

  // regret
  std::string policy_text = "saa", mu_text;
  std::vector<std::string> nu_texts;
  size_t n = 0;
  auto* regret = app.add_subcommand("regret", "Regret of one policy on one instance");
  regret->add_option("--problem", problem_text)->required();
  regret->add_option("--policy", policy_text);
  regret->add_option("--mu", mu_text)->required();
  regret->add_option("--nu", nu_texts, "History measure; repeat for heterogeneous data")
      ->required();
  regret->add_option("--n", n, "Sample size; enables Monte-Carlo with n copies of --nu");

  // dro-scan
  std::vector<double> eps_list;
  ScanOpts scan;
  auto* dro = app.add_subcommand("dro-scan", "Grid lower bound on the uniform DRO regret");
  dro->add_option("--problem", problem_text)->required();
  dro->add_option("--kind", kind_text)->required();
  dro->add_option("--policy", policy_text, "saa | dsaa:<d> | cap:<C> | recommended");
  dro->add_option("--eps", eps_list)->required()->delimiter(',');
  AddScanOptions(dro, scan);

  // adversarial
  std::string name;
  Params fam;
  std::optional<std::string> adv_kind, adv_policy;
  auto* adv = app.add_subcommand("adversarial", "Exact regret on a named construction");
  adv->add_option("--name", name)->required();
  adv->add_option("--kind", adv_kind);
  adv->add_option("--policy", adv_policy, "Defaults to the construction's policy");
  adv->add_option("--n", n, "Sample size; switches to Monte-Carlo");
  for (const char* key : {"eps", "M", "cu", "co", "b", "eta", "alpha", "k"}) {
    adv->add_option_function<double>(std::string("--") + key,
                                     [&fam, key](const double& v) { fam[key] = v; });
  }

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "Whether the generic SAA bound is finite");
  diag->add_option("--problem", problem_text)->required();
  diag->add_option("--kind", kind_text)->required();

  // rates
  std::string mode_text = "adversarial";
  Params rate_extra;
  size_t rate_n = 10000;
  auto* rates = app.add_subcommand("rates", "Sweep eps and fit the log-log slope");
  rates->add_option("--problem", problem_text)->required();
  rates->add_option("--kind", kind_text)->required();
  rates->add_option("--policy", policy_text, "saa | dsaa:<d> | cap:<C> | recommended");
  rates->add_option("--eps-grid", eps_list)->required()->delimiter(',');
  rates->add_option("--mode", mode_text, "adversarial | dro-scan | monte-carlo");
  rates->add_option("--n", rate_n);
  for (const char* key : {"eta", "alpha"}) {
    rates->add_option_function<double>(std::string("--") + key,
                                       [&rate_extra, key](const double& v) { rate_extra[key] = v; });
  }
  AddScanOptions(rates, scan);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("hetero-dro");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return e.get_exit_code() == 0 ? 0 : kExitInvalid;
  }

  try {
    Output output(g.out_path, out);
    std::ostream& os = output.get();

    if (*distance) {
      DistanceKind kind = ParseDistanceKind(kind_text);
      os << FormatReal(Distance(kind, FiniteMeasure::Parse(a_text),
                                FiniteMeasure::Parse(b_text)))
         << '\n';
      return 0;
    }
    if (*oracle) {
      ProblemSpec p = ProblemSpec::Parse(problem_text);
      FiniteMeasure m = FiniteMeasure::Parse(measure_text);
      double x = Oracle(p, m);
      os << "action " << FormatReal(x) << "\nvalue " << FormatReal(ExpectedObjective(p, x, m))
         << '\n';
      return 0;
    }
    if (*diag) {
      SaaDiagnostic d = SaaDiagnosticFor(ProblemSpec::Parse(problem_text),
                                         ParseDistanceKind(kind_text));
      os << (d.finite ? "finite " + FormatReal(d.coefficient) : std::string("infinite"))
         << '\n';
      return 0;
    }
    if (*regret) {
      ProblemSpec p = ProblemSpec::Parse(problem_text);
      PolicySpec pol = PolicySpec::Parse(policy_text);
      FiniteMeasure mu = FiniteMeasure::Parse(mu_text);
      std::vector<FiniteMeasure> nus;
      for (const auto& t : nu_texts) nus.push_back(FiniteMeasure::Parse(t));
      ExperimentRow row;
      row.policy = pol;
      row.report.seed = g.seed;
      if (nus.size() == 1 && n == 0) {
        row.report.estimate = ExactRegret(p, pol, mu, nus[0]);
      } else {
        if (nus.size() == 1) nus.assign(n, nus[0]);
        row.report = MonteCarloRegret(p, pol, mu, nus, g.trials, g.seed);
      }
      AdversarialPair w{"scan", p, DistanceKind::kKolmogorov, 0.0, mu, {}, {}, pol,
                        std::nullopt, false, ""};
      if (nu_texts.size() == 1) w.nus = {FiniteMeasure::Parse(nu_texts[0])};
      row.report.witness = w;
      row.eps = 0.0;
      CsvRow c = MakeCsvRow("regret", p, DistanceKind::kKolmogorov, row);
      c.distance.clear();
      c.eps.clear();
      WriteRows(os, {c});
      return 0;
    }
    if (*adv) {
      std::optional<DistanceKind> kind;
      if (adv_kind) kind = ParseDistanceKind(*adv_kind);
      AdversarialPair pair = AdversarialInstance(name, fam, kind);
      PolicySpec pol = adv_policy ? PolicySpec::Parse(*adv_policy) : pair.policy;
      ExperimentRow row;
      row.eps = pair.eps;
      row.policy = pol;
      row.report.seed = g.seed;
      if (n > 0) {
        std::vector<FiniteMeasure> nus =
            pair.nus.size() > 1 ? pair.nus : std::vector<FiniteMeasure>(n, pair.nus[0]);
        row.report = MonteCarloRegret(pair.problem, pol, pair.mu, nus, g.trials, g.seed);
        for (const auto& r : pair.rivals) {
          RegretReport alt = MonteCarloRegret(pair.problem, pol, r, nus, g.trials, g.seed);
          if (alt.estimate > row.report.estimate) row.report = alt;
        }
      } else {
        row.report.estimate = FamilyRegret(pair, pol);
      }
      row.report.witness = pair;
      if (name != "hetero_helps") {
        try {
          auto [lo, hi] = AnalyticBounds(pair.problem, pair.kind, BoundPolicyFor(pol), pair.eps);
          row.report.analytic_lower = lo;
          row.report.analytic_upper = hi;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNoKnownBound && e.code() != ErrorCode::kEpsTooLarge) throw;
        }
      }
      if (pair.target) {
        row.note = (pair.target_is_floor ? "floor=" : "target=") + FormatReal(*pair.target);
      }
      WriteRows(os, {MakeCsvRow("adversarial", pair.problem, pair.kind, row)});
      ExperimentMode mode = ExperimentMode::kAdversarial;
      if (g.strict && !SandwichOk(row, mode)) {
        err << "estimate outside analytic bounds\n";
        return kExitSandwich;
      }
      return 0;
    }
    if (*dro || *rates) {
      ExperimentConfig cfg;
      cfg.problem = ProblemSpec::Parse(problem_text);
      cfg.kind = ParseDistanceKind(kind_text);
      cfg.policy = PolicyOrRecommended(policy_text);
      cfg.eps_grid = eps_list;
      cfg.seed = g.seed;
      cfg.trials = g.trials;
      cfg.n = rate_n;
      cfg.grid = scan.Build(cfg.problem.M);
      cfg.params = rate_extra;
      cfg.mode = *dro ? ExperimentMode::kDroScan : ParseExperimentMode(mode_text);
      std::string mode_name = ExperimentModeName(cfg.mode);

      std::vector<ExperimentRow> rows = RunExperiment(cfg);
      std::vector<CsvRow> csv;
      std::vector<std::pair<double, double>> points;
      bool sandwich = true;
      for (const auto& r : rows) {
        csv.push_back(MakeCsvRow(mode_name, cfg.problem, cfg.kind, r));
        if (!r.skipped) points.emplace_back(r.eps, r.report.estimate);
        sandwich = sandwich && SandwichOk(r, cfg.mode);
      }
      if (*rates) {
        std::string pol_name = cfg.policy ? cfg.policy->ToString() : "recommended";
        try {
          csv.push_back(MakeFitRow("fit", cfg.problem, cfg.kind, pol_name,
                                   FitRate(points), points.size()));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNoPositivePoints &&
              e.code() != ErrorCode::kDegeneratePoints) {
            throw;
          }
          CsvRow c = MakeFitRow("fit", cfg.problem, cfg.kind, pol_name, RateFit{}, 0);
          c.slope_note = std::string("no fit: ") + e.what();
          csv.push_back(c);
        }
      }
      WriteRows(os, csv);
      if (g.strict && !sandwich) {
        err << "estimate outside analytic bounds\n";
        return kExitSandwich;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace hdro
