// Acceptance checks. One PASS/FAIL line per criterion; exit 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hdro/approx.hpp"
#include "hdro/cli.hpp"
#include "hdro/error.hpp"
#include "hdro/experiment.hpp"
#include "hdro/format.hpp"
#include "hdro/measure.hpp"
#include "hdro/metrics.hpp"
#include "hdro/policy.hpp"
#include "hdro/problem.hpp"
#include "hdro/regret.hpp"

using namespace hdro;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<CsvRow> Rows(const CliRun& r) {
  std::istringstream in(r.out);
  std::string line;
  std::vector<CsvRow> rows;
  std::getline(in, line);
  while (std::getline(in, line)) rows.push_back(ParseCsvLine(line));
  return rows;
}

double Num(const std::string& s) { return ParseReal(s); }

double SlopeOf(const CsvRow& fit) {
  const std::string& s = fit.slope_note;
  if (s.rfind("slope=", 0) != 0) return std::nan("");
  return ParseReal(s.substr(6, s.find(';') - 6));
}

std::string F(double v) { return FormatReal(v); }

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared by criteria 1 and 12.
const std::vector<std::string> kNewsvendorRates = {
    "rates",        "--problem", "newsvendor:1,1,1",       "--kind",      "k",
    "--policy",     "saa",       "--mode",                 "dro-scan",    "--eps-grid",
    "0.01,0.02,0.05,0.1",        "--locations",            "0,0.25,0.5,0.75,1",
    "--resolution", "100"};

const std::vector<std::string> kSkiMonteCarlo = {
    "--seed", "42", "--trials", "500", "adversarial", "--name", "ski_w_saa_fail",
    "--b",    "2",  "--M",      "10",  "--eps",       "0.1",    "--n",
    "10000"};

Outcome NewsvendorSandwich() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  CliRun r = Cli(kNewsvendorRates);
  o.Check(r.code == 0, "exit " + std::to_string(r.code) + " " + r.err);
  auto rows = Rows(r);
  o.Check(rows.size() == 5, "expected 4 rows and a fit");
  if (rows.size() != 5) return o;
  for (size_t i = 0; i < 4; ++i) {
    double eps = Num(rows[i].eps), v = Num(rows[i].regret_est);
    o.Check(v >= eps && v <= 2 * eps + 1e-9, "eps=" + F(eps) + " value " + F(v));
    o.detail += (i ? " " : "values ") + F(v);
  }
  double slope = SlopeOf(rows[4]);
  o.Check(slope >= 0.9 && slope <= 1.1, "slope " + F(slope));
  double t = Seconds(t0);
  o.Check(t < 60, "runtime " + F(t));
  o.detail += "; slope " + F(slope) + " time " + F(t) + "s";
  return o;
}

Outcome PricingSaaFailure() {
  Outcome o;
  CliRun r = Cli({"adversarial", "--name", "pr_w_saa_fail", "--M", "1", "--eps", "0.01", "--eta",
                  "0.001"});
  o.Check(r.code == 0, "exit " + std::to_string(r.code) + " " + r.err);
  auto rows = Rows(r);
  o.Check(rows.size() == 1, "one row");
  if (rows.size() != 1) return o;
  o.Check(Num(rows[0].regret_est) == 0.999, "regret " + rows[0].regret_est);
  AdversarialPair pair =
      AdversarialInstance("pr_w_saa_fail", {{"M", 1}, {"eps", 0.01}, {"eta", 0.001}});
  o.Check(FamilyRegret(pair, PolicySpec::Saa()) == 0.999, "in-process regret differs");
  o.detail += "regret " + rows[0].regret_est;
  return o;
}

Outcome PricingDeflatedRate() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  CliRun r = Cli({"rates", "--problem", "pricing:1", "--kind", "w", "--policy", "recommended",
                  "--mode", "dro-scan", "--eps-grid", "0.0025,0.01,0.04", "--locations",
                  "0,0.25,0.5,0.75,0.8,0.9,0.95,1", "--atoms", "2", "--resolution", "20"});
  o.Check(r.code == 0, "exit " + std::to_string(r.code) + " " + r.err);
  auto rows = Rows(r);
  o.Check(rows.size() == 4, "expected 3 rows and a fit");
  if (rows.size() != 4) return o;
  for (size_t i = 0; i < 3; ++i) {
    double eps = Num(rows[i].eps), v = Num(rows[i].regret_est);
    o.Check(rows[i].policy == "dsaa:" + F(-std::sqrt(eps)), "policy " + rows[i].policy + " ");
    o.Check(v <= 4 * std::sqrt(eps) + 1e-9, "eps=" + F(eps) + " scan " + F(v));
    AdversarialPair w = AdversarialInstance("pr_w_lower", {{"M", 1}, {"eps", eps}});
    double floor = TwoPointFloor(w.problem, w.mu, w.rivals[0], 1000);
    o.Check(floor >= std::sqrt(eps) / 4 - 1e-9, "eps=" + F(eps) + " floor " + F(floor));
    o.detail += "eps=" + F(eps) + " scan " + F(v) + " floor " + F(floor) + "; ";
  }
  double slope = SlopeOf(rows[3]);
  o.Check(slope >= 0.4 && slope <= 0.6, "slope " + F(slope));
  double t = Seconds(t0);
  o.Check(t < 120, "runtime " + F(t));
  o.detail += "slope " + F(slope) + " time " + F(t) + "s";
  return o;
}

Outcome SkiWassersteinMonteCarlo() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  CliRun r = Cli(kSkiMonteCarlo);
  o.Check(r.code == 0, "exit " + std::to_string(r.code) + " " + r.err);
  auto rows = Rows(r);
  o.Check(rows.size() == 1, "one row");
  if (rows.size() != 1) return o;
  const double b = 2, eps = 0.1;
  double v = Num(rows[0].regret_est), ci = Num(rows[0].ci_half);
  o.Check(v >= b / 2 - 3 * ci, "below b/2");
  o.Check(v <= 2 * (b + eps) + 3 * ci, "above 2(b+eps)");
  o.Check(rows[0].n == "10000" && rows[0].trials == "500", "n/trials not recorded");
  double t = Seconds(t0);
  o.Check(t < 120, "runtime " + F(t));
  o.detail += "regret " + F(v) + " +- " + F(ci) + " time " + F(t) + "s";
  return o;
}

Outcome CappedPolicy() {
  Outcome o;
  CliRun r = Cli({"dro-scan", "--problem", "ski:1,10", "--kind", "k", "--policy", "recommended",
                  "--eps", "0.01,0.05", "--max-pairs", "100000000",
                  "--locations", "0,0.25,0.5,0.75,1,1.25,1.5,2,3,4.6,5,10", "--resolution",
                  "100"});
  o.Check(r.code == 0, "exit " + std::to_string(r.code) + " " + r.err);
  auto rows = Rows(r);
  o.Check(rows.size() == 2, "two rows");
  const double b = 1;
  for (const auto& row : rows) {
    double eps = Num(row.eps), v = Num(row.regret_est);
    o.Check(row.policy == "cap:" + F(b * std::log(1 / eps)), "policy " + row.policy);
    double bound = b * (std::log(1 / eps) + 2) * eps;
    o.Check(v <= bound + 1e-9, "eps=" + F(eps) + " scan " + F(v) + " > " + F(bound));
    AdversarialPair w = AdversarialInstance("ski_k_lower", {{"b", b}, {"M", 10}, {"eps", eps}});
    double floor = TwoPointFloor(w.problem, w.mu, w.rivals[0], 1000);
    o.Check(floor >= eps * b / 8 - 1e-9, "eps=" + F(eps) + " floor " + F(floor));
    o.detail += "eps=" + F(eps) + " scan " + F(v) + " bound " + F(bound) + " floor " + F(floor) +
                "; ";
  }
  return o;
}

Outcome SkiInflatedWasserstein() {
  Outcome o;
  CliRun r = Cli({"dro-scan", "--problem", "ski:1,4", "--kind", "w", "--policy", "recommended",
                  "--eps", "0.01,0.04",
                  "--locations", "0,0.1,0.2,0.3,0.4,0.5,0.6,0.8,0.9,1,1.1,1.2,1.5,2,4",
                  "--resolution", "20"});
  o.Check(r.code == 0, "exit " + std::to_string(r.code) + " " + r.err);
  auto rows = Rows(r);
  o.Check(rows.size() == 2, "two rows");
  const double b = 1;
  for (const auto& row : rows) {
    double eps = Num(row.eps), v = Num(row.regret_est);
    o.Check(row.policy == "dsaa:" + F(std::sqrt(b * eps)), "policy " + row.policy + " ");
    double bound = 4 * std::sqrt(b * eps) + 2 * eps;
    o.Check(v <= bound + 1e-9, "eps=" + F(eps) + " scan " + F(v));
    AdversarialPair w = AdversarialInstance("ski_w_lower", {{"b", b}, {"M", 4}, {"eps", eps}});
    double floor = TwoPointFloor(w.problem, w.mu, w.rivals[0], 1000);
    o.Check(floor >= std::sqrt(b * eps) / 4 - 1e-9, "eps=" + F(eps) + " floor " + F(floor));
    o.detail += "eps=" + F(eps) + " scan " + F(v) + " bound " + F(bound) + " floor " + F(floor) +
                "; ";
  }
  return o;
}

// Best SAA regret against mu with two iid samples from one nu, over nu on a
// 1/50 weight grid of {k, k+1, 3k+2}.
double BestHomogeneous(const ProblemSpec& p, const FiniteMeasure& mu, double k) {
  const double pts[3] = {k, k + 1, 3 * k + 2};
  const int res = 50;
  const double opt = OptValue(p, mu);
  // Regret for each ordered sample pair.
  double r[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double xs[2] = {pts[i], pts[j]};
      double x = ApplyPolicy(PolicySpec::Saa(), p, EmpiricalFrom(xs, p.M));
      r[i][j] = std::abs(opt - ExpectedObjective(p, x, mu));
    }
  }
  double best = 0;
  for (int a = 0; a <= res; ++a) {
    for (int b = 0; a + b <= res; ++b) {
      const double w[3] = {double(a) / res, double(b) / res, double(res - a - b) / res};
      double acc = 0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) acc += w[i] * w[j] * r[i][j];
      }
      best = std::max(best, acc);
    }
  }
  return best;
}

Outcome HeterogeneityHelps() {
  Outcome o;
  for (long k : {1L, 2L, 5L}) {
    AdversarialPair pair = AdversarialInstance("hetero_helps", {{"k", double(k)}});
    double het = ExhaustiveRegretN2(pair.problem, PolicySpec::Saa(), pair.mu, pair.nus[0],
                                    pair.nus[1]);
    o.Check(het == 2.0 * k, "k=" + std::to_string(k) + " regret " + F(het));
    double hom = BestHomogeneous(pair.problem, pair.mu, double(k));
    o.Check(het - hom > 0, "k=" + std::to_string(k) + " homogeneous " + F(hom));
    o.detail += "k=" + std::to_string(k) + " het " + F(het) + " hom " + F(hom) + "; ";
  }
  return o;
}

Outcome Indifference() {
  Outcome o;
  FiniteMeasure nu = SkiIndifferenceMeasure(10, 3);
  double worst = 0;
  for (long k : {0L, 1L, 2L, 3L, 4L, 5L, 6L, 10L}) {
    double g = SkiDiscreteCost(k, nu, 3);
    worst = std::max(worst, std::abs(g - 3));
    o.Check(std::abs(g - 3) <= 1e-10, "k=" + std::to_string(k) + " cost " + F(g));
  }
  o.Check(std::abs(nu.Mean() - 3) <= 1e-10, "mean " + F(nu.Mean()));
  o.detail += "max cost deviation " + F(worst) + " mean " + F(nu.Mean());
  return o;
}

FiniteMeasure RandomMeasure(std::mt19937_64& rng, double M, int grid) {
  std::uniform_int_distribution<int> count(1, 6), loc(0, grid);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  int m = count(rng);
  std::vector<double> pts, ws;
  double total = 0;
  for (int i = 0; i < m; ++i) {
    pts.push_back(M * loc(rng) / grid);
    ws.push_back(w(rng));
    total += ws.back();
  }
  for (double& x : ws) x /= total;
  return MakeFiniteMeasure(pts, ws, M);
}

Outcome MetricSuite() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  const double M = 3.0, tol = 1e-9;
  const DistanceKind kinds[] = {DistanceKind::kKolmogorov, DistanceKind::kTotalVariation,
                                DistanceKind::kWasserstein};
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    FiniteMeasure a = RandomMeasure(rng, M, 30), b = RandomMeasure(rng, M, 30),
                  c = RandomMeasure(rng, M, 30);
    double l = lam(rng);
    FiniteMeasure mix = Mixture({a, b}, {l, 1 - l});
    for (DistanceKind k : kinds) {
      double ab = Distance(k, a, b), ba = Distance(k, b, a);
      double ac = Distance(k, a, c), bc = Distance(k, b, c);
      bool ok = Distance(k, a, a) <= tol && ab >= 0 && std::abs(ab - ba) <= tol &&
                ac <= ab + bc + tol && Distance(k, mix, c) <= l * ac + (1 - l) * bc + tol;
      if (!ok) ++bad;
    }
    double w = Wasserstein1(a, b), kd = Kolmogorov(a, b), tv = TotalVariation(a, b);
    if (!(w <= M * kd + tol && kd <= tv + tol)) ++bad;
  }
  o.Check(bad == 0, std::to_string(bad) + " axiom violations");
  o.detail += "axiom violations " + std::to_string(bad);

  // Rows: distinct measures inside a Kolmogorov ball around a common center.
  for (size_t n : {size_t(1000), size_t(10000)}) {
    std::mt19937_64 row_rng(n);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    std::vector<FiniteMeasure> rows;
    for (size_t i = 0; i < n; ++i) {
      double d = u(row_rng);
      rows.emplace_back(std::vector<double>{0, 0.3, 0.6, 1.0},
                        std::vector<double>{0.25 + d, 0.25 - d, 0.25 + d / 2, 0.25 - d / 2},
                        1.0);
    }
    int failures = 0;
    const double threshold = 2 * 1.63 / std::sqrt(double(n));
    for (uint64_t s = 0; s < 100; ++s) {
      if (TriangularArrayDeviation(rows, s) > threshold) ++failures;
    }
    o.Check(failures <= 3, "n=" + std::to_string(n) + " failures " + std::to_string(failures));
    o.detail += "; n=" + std::to_string(n) + " failures " + std::to_string(failures);
  }
  return o;
}

Outcome OracleBruteForce() {
  Outcome o;
  const std::vector<ProblemSpec> problems = {
      ProblemSpec::Newsvendor(2, 1, 5), ProblemSpec::Newsvendor(1, 3, 1),
      ProblemSpec::Pricing(4), ProblemSpec::SkiRental(3, 10), ProblemSpec::Holder(0.5, 1)};
  const int grid = 10000;
  std::mt19937_64 rng(77);
  for (const auto& p : problems) {
    double worst = 0;
    for (int t = 0; t < 500; ++t) {
      // Supports on a 1/100 lattice so they lie on the search grid.
      FiniteMeasure m = RandomMeasure(rng, p.M, 100);
      double best = p.maximize() ? -INFINITY : INFINITY;
      for (int i = 0; i <= grid; ++i) {
        double v = ExpectedObjective(p, p.M * i / grid, m);
        best = p.maximize() ? std::max(best, v) : std::min(best, v);
      }
      worst = std::max(worst, std::abs(OptValue(p, m) - best));
    }
    o.Check(worst <= 1e-9, p.ToString() + " gap " + F(worst));
    o.detail += p.ToString() + " gap " + F(worst) + "; ";
  }
  return o;
}

Outcome BernsteinBoundary() {
  Outcome o;
  const ProblemSpec p = ProblemSpec::Holder(0.5, 1);
  const double G = 1.0;
  ScanGrid grid;
  for (int i = 0; i <= 10; ++i) grid.locations.push_back(i / 10.0);
  grid.max_atoms = 2;
  grid.weight_resolution = 100;
  grid.max_pairs = 100000000;
  for (double eps : {0.01, 0.1}) {
    RegretReport r = DroRegretScan(p, PolicySpec::Saa(), DistanceKind::kKolmogorov, eps, grid);
    double bound = 5 * std::pow(G * eps, 0.2) + 4 * G * eps;
    o.Check(r.estimate <= bound, "eps=" + F(eps) + " scan " + F(r.estimate));
    o.detail += "eps=" + F(eps) + " scan " + F(r.estimate) + " bound " + F(bound) + "; ";
  }
  for (int q : {25, 100, 400}) {
    double worst = 0;
    for (double x : {0.0, 0.3, 0.5, 1.0}) {
      BernsteinCheck c = BernsteinErrorCheck([x](double y) { return std::sqrt(std::abs(y - x)); },
                                             [](double t) { return std::sqrt(t); }, q);
      o.Check(c.passed, "q=" + std::to_string(q) + " x=" + F(x) + " error " + F(c.max_error));
      worst = std::max(worst, c.max_error / c.bound);
    }
    o.detail += "q=" + std::to_string(q) + " error/bound " + F(worst) + "; ";
  }
  return o;
}

Outcome Determinism() {
  Outcome o;
  for (const auto* args : {&kNewsvendorRates, &kSkiMonteCarlo}) {
    CliRun a = Cli(*args), b = Cli(*args);
    o.Check(a.code == 0 && b.code == 0, "nonzero exit");
    o.Check(!a.out.empty() && a.out == b.out, "outputs differ for " + (*args)[0]);
  }
  o.detail += "rates and monte-carlo output identical across runs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"newsvendor kolmogorov sandwich", NewsvendorSandwich},
      {"pricing wasserstein saa failure", PricingSaaFailure},
      {"pricing deflated saa rate", PricingDeflatedRate},
      {"ski wasserstein saa monte-carlo", SkiWassersteinMonteCarlo},
      {"ski capped policy", CappedPolicy},
      {"ski inflated saa wasserstein", SkiInflatedWasserstein},
      {"heterogeneity strictly helps", HeterogeneityHelps},
      {"ski indifference measure", Indifference},
      {"metric and domination suite", MetricSuite},
      {"oracle brute-force equivalence", OracleBruteForce},
      {"bernstein boundary case", BernsteinBoundary},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) {
      o.detail.pop_back();
    }
    std::printf("C%zu %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
