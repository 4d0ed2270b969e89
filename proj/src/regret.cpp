#include "hdro/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdro/error.hpp"
#include "hdro/format.hpp"

namespace hdro {

namespace {

double Get(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    Fail(ErrorCode::kConfigInvalid, "missing parameter '" + key + "'");
  }
  return it->second;
}

double Get(const Params& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

long GetInt(const Params& params, const std::string& key) {
  double v = Get(params, key);
  if (v != std::round(v)) {
    Fail(ErrorCode::kConfigInvalid, "parameter '" + key + "' must be an integer");
  }
  return static_cast<long>(v);
}

void Require(bool ok, const std::string& name, const std::string& what) {
  if (!ok) Fail(ErrorCode::kEpsTooLarge, name + ": " + what);
}

double PositiveEps(const Params& params) {
  double eps = Get(params, "eps");
  if (!(eps > 0.0)) Fail(ErrorCode::kEpsNonPositive, "eps=" + FormatReal(eps));
  return eps;
}

FiniteMeasure TwoPoint(double x0, double w0, double x1, double upper) {
  return FiniteMeasure({x0, x1}, {w0, 1.0 - w0}, upper);
}

AdversarialPair MakePair(std::string name, ProblemSpec problem, DistanceKind kind,
                         double eps, FiniteMeasure mu, std::vector<FiniteMeasure> nus,
                         std::vector<FiniteMeasure> rivals, PolicySpec policy,
                         double target, bool is_floor, std::string note) {
  AdversarialPair pair{std::move(name), problem,          kind,   eps,
                       std::move(mu),   std::move(nus),   std::move(rivals),
                       policy,          target,           is_floor,
                       std::move(note)};
  // The history has to be reachable from every out-of-sample measure.
  for (const auto& nu : pair.nus) {
    if (!InBall(pair.mu, nu, kind, eps)) {
      Fail(ErrorCode::kEpsTooLarge, pair.name + ": history leaves the eps-ball");
    }
    for (const auto& r : pair.rivals) {
      if (!InBall(r, nu, kind, eps)) {
        Fail(ErrorCode::kEpsTooLarge, pair.name + ": history leaves the rival's eps-ball");
      }
    }
  }
  return pair;
}

}  // namespace

double ActionRegret(const ProblemSpec& p, double x, const FiniteMeasure& mu) {
  return std::abs(OptValue(p, mu) - ExpectedObjective(p, x, mu));
}

double ExactRegret(const ProblemSpec& p, const PolicySpec& pol,
                   const FiniteMeasure& mu, const FiniteMeasure& nu) {
  return ActionRegret(p, ApplyPolicy(pol, p, nu), mu);
}

RegretReport MonteCarloRegret(const ProblemSpec& p, const PolicySpec& pol,
                              const FiniteMeasure& mu,
                              const std::vector<FiniteMeasure>& nus,
                              size_t trials, uint64_t seed) {
  if (nus.empty()) Fail(ErrorCode::kEmptyInput, "no historical measures");
  if (trials == 0) Fail(ErrorCode::kConfigInvalid, "trials must be positive");

  // Group identical history measures and map their atoms onto one union
  // support so a trial only has to count atom hits.
  std::vector<const FiniteMeasure*> distinct;
  std::vector<uint32_t> group(nus.size());
  for (size_t i = 0; i < nus.size(); ++i) {
    size_t g = 0;
    while (g < distinct.size() && !(*distinct[g] == nus[i])) ++g;
    if (g == distinct.size()) distinct.push_back(&nus[i]);
    group[i] = static_cast<uint32_t>(g);
  }
  std::vector<double> uni;
  for (const auto* m : distinct) uni.insert(uni.end(), m->support().begin(), m->support().end());
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  std::vector<std::vector<uint32_t>> to_uni(distinct.size());
  for (size_t g = 0; g < distinct.size(); ++g) {
    for (double s : distinct[g]->support()) {
      to_uni[g].push_back(static_cast<uint32_t>(
          std::lower_bound(uni.begin(), uni.end(), s) - uni.begin()));
    }
  }

  const double opt = OptValue(p, mu);
  const double n = static_cast<double>(nus.size());
  std::vector<uint32_t> counts(uni.size());
  double mean = 0.0, m2 = 0.0;
  for (size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(MixSeed(seed ^ static_cast<uint64_t>(t)));
    std::fill(counts.begin(), counts.end(), 0);
    for (size_t i = 0; i < nus.size(); ++i) {
      uint32_t g = group[i];
      ++counts[to_uni[g][distinct[g]->IndexForUniform(Uniform53(rng))]];
    }
    std::vector<double> pts, wts;
    for (size_t u = 0; u < uni.size(); ++u) {
      if (counts[u]) {
        pts.push_back(uni[u]);
        wts.push_back(counts[u] / n);
      }
    }
    FiniteMeasure emp(std::move(pts), std::move(wts), mu.upper());
    double r = std::abs(opt - ExpectedObjective(p, ApplyPolicy(pol, p, emp), mu));
    double d = r - mean;
    mean += d / static_cast<double>(t + 1);
    m2 += d * (r - mean);
  }
  RegretReport rep;
  rep.estimate = mean;
  if (trials > 1) {
    double sd = std::sqrt(m2 / static_cast<double>(trials - 1));
    rep.ci_half_width = 1.96 * sd / std::sqrt(static_cast<double>(trials));
  }
  rep.n = nus.size();
  rep.trials = trials;
  rep.seed = seed;
  return rep;
}

double ExhaustiveRegretN2(const ProblemSpec& p, const PolicySpec& pol,
                          const FiniteMeasure& mu, const FiniteMeasure& nu1,
                          const FiniteMeasure& nu2) {
  const double opt = OptValue(p, mu);
  double acc = 0.0;
  for (size_t i = 0; i < nu1.size(); ++i) {
    for (size_t j = 0; j < nu2.size(); ++j) {
      double xs[2] = {nu1.support()[i], nu2.support()[j]};
      FiniteMeasure emp = EmpiricalFrom(xs, mu.upper());
      double x = ApplyPolicy(pol, p, emp);
      acc += nu1.weights()[i] * nu2.weights()[j] *
             std::abs(opt - ExpectedObjective(p, x, mu));
    }
  }
  return acc;
}

std::vector<std::string> AdversarialNames() {
  return {"nv_tv_pair",     "pr_k_pair",   "pr_w_saa_fail",
          "pr_w_lower",     "ski_k_saa_fail", "ski_k_lower",
          "ski_w_saa_fail", "ski_w_lower", "hetero_helps"};
}

AdversarialPair AdversarialInstance(const std::string& name, const Params& params,
                                    std::optional<DistanceKind> kind_override) {
  if (name == "nv_tv_pair") {
    double cu = Get(params, "cu", 1.0), co = Get(params, "co", 1.0);
    double M = Get(params, "M", 1.0);
    double eps = PositiveEps(params);
    DistanceKind kind = kind_override.value_or(DistanceKind::kTotalVariation);
    ProblemSpec p = ProblemSpec::Newsvendor(cu, co, M);
    double q = cu / (cu + co);
    // Mass moved between 0 and M; under W that costs M per unit.
    double s = kind == DistanceKind::kWasserstein ? eps / M : eps;
    Require(s <= std::min(q, 1.0 - q), name, "needs eps <= min(q, 1-q)");
    auto bern = [&](double pm) { return TwoPoint(0.0, 1.0 - pm, M, M); };
    return MakePair(name, p, kind, eps, bern(1.0 - q + s), {bern(1.0 - q)},
                    {bern(1.0 - q - s)}, PolicySpec::Saa(), (cu + co) / 2.0 * M * s,
                    true, "two-point minimax floor");
  }
  if (name == "pr_k_pair") {
    double M = Get(params, "M", 1.0);
    double eps = PositiveEps(params);
    DistanceKind kind = kind_override.value_or(DistanceKind::kKolmogorov);
    double s = kind == DistanceKind::kWasserstein ? 2.0 * eps / M : eps;
    Require(s <= 0.5, name, "needs eps <= 1/2");
    ProblemSpec p = ProblemSpec::Pricing(M);
    return MakePair(name, p, kind, eps, TwoPoint(M / 2, 0.5 - s, M, M),
                    {TwoPoint(M / 2, 0.5, M, M)}, {TwoPoint(M / 2, 0.5 + s, M, M)},
                    PolicySpec::Saa(), M * s / 2.0, true, "two-point minimax floor");
  }
  if (name == "pr_w_saa_fail") {
    double M = Get(params, "M", 1.0);
    double eps = PositiveEps(params);
    double eta = Get(params, "eta", 1e-10 * M);
    Require(eta > 0.0 && eta <= M, name, "needs 0 < eta <= M");
    ProblemSpec p = ProblemSpec::Pricing(M);
    double lo = M - eta;
    double hi = std::min(M, M - eta + eps);
    return MakePair(name, p, kind_override.value_or(DistanceKind::kWasserstein), eps,
                    FiniteMeasure::PointMass(lo, M), {FiniteMeasure::PointMass(hi, M)},
                    {}, PolicySpec::Saa(), lo, false, "saa regret M - eta");
  }
  if (name == "pr_w_lower") {
    double M = Get(params, "M", 1.0);
    double eps = PositiveEps(params);
    Require(eps <= M / 4.0, name, "needs eps <= M/4");
    ProblemSpec p = ProblemSpec::Pricing(M);
    double shift = std::sqrt(M * eps) / 2.0;
    double mass = 2.0 * std::sqrt(eps / M);
    FiniteMeasure nu = FiniteMeasure::PointMass(M / 2, M);
    FiniteMeasure mu({M / 2 - shift, M / 2}, {mass, 1.0 - mass}, M);
    return MakePair(name, p, DistanceKind::kWasserstein, eps, mu, {nu}, {nu},
                    RecommendedPolicy(p, DistanceKind::kWasserstein, eps),
                    std::sqrt(M * eps) / 4.0, true, "two-point minimax floor");
  }
  if (name == "ski_k_saa_fail") {
    long M = GetInt(params, "M");
    long b = GetInt(params, "b");
    double eps = PositiveEps(params);
    double alpha = Get(params, "alpha", 1e-3 * eps);
    ProblemSpec p = ProblemSpec::SkiRental(static_cast<double>(b), static_cast<double>(M));
    FiniteMeasure nu = SkiIndifferenceMeasure(M, b);
    double w1 = nu.weights().front();
    double wm = nu.weights().back();
    Require(alpha >= 0.0 && alpha <= eps, name, "needs 0 <= alpha <= eps");
    Require(eps <= w1, name, "needs eps <= nu(1)");
    Require(alpha <= wm, name, "needs alpha <= nu(M)");
    // nu_alpha: alpha moved from M to 0, so every rental day gets cheaper
    // by alpha and SAA never buys. mu: eps moved from 1 to M.
    std::vector<double> pts = nu.support(), wa = nu.weights();
    pts.insert(pts.begin(), 0.0);
    wa.insert(wa.begin(), alpha);
    wa.back() -= alpha;
    std::vector<double> wm_ = wa;
    wm_[1] -= eps;
    wm_.back() += eps;
    FiniteMeasure nu_alpha(pts, wa, static_cast<double>(M));
    FiniteMeasure mu(pts, wm_, static_cast<double>(M));
    double target = eps * (M - 1) - alpha * (M - b);
    return MakePair(name, p, kind_override.value_or(DistanceKind::kKolmogorov), eps,
                    mu, {nu_alpha}, {}, PolicySpec::Saa(), target, false,
                    "saa regret eps(M-1) - alpha(M-b)");
  }
  if (name == "ski_k_lower") {
    double b = Get(params, "b", 1.0);
    double M = Get(params, "M");
    double eps = PositiveEps(params);
    Require(eps <= 0.5, name, "needs eps <= 1/2");
    Require(b >= 1.0, name, "needs b >= 1");
    Require(5.0 * b / 4.0 < M, name, "needs 5b/4 < M");
    ProblemSpec p = ProblemSpec::SkiRental(b, M);
    DistanceKind kind = kind_override.value_or(DistanceKind::kKolmogorov);
    FiniteMeasure nu = TwoPoint(0.75 * b, 0.5 + eps / 2, 1.25 * b, M);
    FiniteMeasure mu = TwoPoint(0.75 * b, 0.5 - eps / 2, 1.25 * b, M);
    return MakePair(name, p, kind, eps, mu, {nu}, {nu},
                    RecommendedPolicy(p, kind, eps), eps * b / 8.0, true,
                    "two-point minimax floor");
  }
  if (name == "ski_w_saa_fail") {
    double b = Get(params, "b", 1.0);
    double M = Get(params, "M");
    double eps = PositiveEps(params);
    Require(M > 2.0 * b, name, "needs M > 2b");
    Require(eps <= b / 4.0, name, "needs eps <= b/4");
    ProblemSpec p = ProblemSpec::SkiRental(b, M);
    return MakePair(name, p, DistanceKind::kWasserstein, eps,
                    TwoPoint(b / 2 + eps, 0.75, M, M), {TwoPoint(b / 2, 0.75, M, M)}, {},
                    PolicySpec::Saa(), 0.75 * b - eps, false, "saa regret 3b/4 - eps");
  }
  if (name == "ski_w_lower") {
    double b = Get(params, "b", 1.0);
    double M = Get(params, "M");
    double eps = PositiveEps(params);
    Require(eps <= b / 4.0, name, "needs eps <= b/4");
    double s = std::sqrt(b * eps);
    Require(b / 2 + s / 2 < M, name, "needs b/2 + sqrt(b eps)/2 < M");
    ProblemSpec p = ProblemSpec::SkiRental(b, M);
    double w = std::sqrt(eps / b);
    FiniteMeasure nu = TwoPoint(b / 2 - s / 2, 0.5, M, M);
    FiniteMeasure mu({b / 2 - s / 2, b / 2 + s / 2, M}, {0.5 - w, w, 0.5}, M);
    return MakePair(name, p, DistanceKind::kWasserstein, eps, mu, {nu}, {nu},
                    RecommendedPolicy(p, DistanceKind::kWasserstein, eps), s / 4.0,
                    true, "two-point minimax floor");
  }
  if (name == "hetero_helps") {
    long k = GetInt(params, "k");
    if (k < 1) Fail(ErrorCode::kConfigInvalid, "hetero_helps needs k >= 1");
    double kd = static_cast<double>(k);
    double M = 3 * kd + 2;
    ProblemSpec p = ProblemSpec::SkiRental(2 * kd + 1, M);
    return MakePair(name, p, DistanceKind::kKolmogorov, 1.0,
                    FiniteMeasure::PointMass(kd + 1, M),
                    {FiniteMeasure::PointMass(kd, M), FiniteMeasure::PointMass(M, M)}, {},
                    PolicySpec::Saa(), 2 * kd, false, "saa regret 2k, n = 2");
  }
  Fail(ErrorCode::kUnknownName, "no adversarial family '" + name + "'");
}

double FamilyRegret(const AdversarialPair& pair, const PolicySpec& pol) {
  if (pair.nus.size() == 2) {
    return ExhaustiveRegretN2(pair.problem, pol, pair.mu, pair.nus[0], pair.nus[1]);
  }
  double best = ExactRegret(pair.problem, pol, pair.mu, pair.nus[0]);
  for (const auto& r : pair.rivals) {
    best = std::max(best, ExactRegret(pair.problem, pol, r, pair.nus[0]));
  }
  return best;
}

double TwoPointFloor(const ProblemSpec& p, const FiniteMeasure& a,
                     const FiniteMeasure& b, size_t grid_n) {
  std::vector<double> xs;
  for (size_t i = 0; i <= grid_n; ++i) {
    xs.push_back(p.M * static_cast<double>(i) / static_cast<double>(grid_n));
  }
  xs.insert(xs.end(), a.support().begin(), a.support().end());
  xs.insert(xs.end(), b.support().begin(), b.support().end());
  const double opt_a = OptValue(p, a), opt_b = OptValue(p, b);
  double best = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    double r = 0.5 * (std::abs(opt_a - ExpectedObjective(p, x, a)) +
                      std::abs(opt_b - ExpectedObjective(p, x, b)));
    best = std::min(best, r);
  }
  return best;
}

FiniteMeasure SkiIndifferenceMeasure(long M, long b) {
  if (b < 2 || b > M - 1) {
    Fail(ErrorCode::kInvalidBRange, "needs 2 <= b <= M-1");
  }
  const double r = static_cast<double>(b) / static_cast<double>(b - 1);
  std::vector<double> pts, wts;
  // P(xi >= k) = r^-(k-1) for k = 1..M-b, the rest sits at M.
  for (long k = 1; k <= M - b; ++k) {
    pts.push_back(static_cast<double>(k));
    wts.push_back(std::pow(r, -static_cast<double>(k - 1)) / static_cast<double>(b));
  }
  pts.push_back(static_cast<double>(M));
  wts.push_back(std::pow(r, -static_cast<double>(M - b)));
  return FiniteMeasure(pts, wts, static_cast<double>(M));
}

std::vector<FiniteMeasure> EnumerateGridMeasures(const ScanGrid& grid, double upper) {
  std::vector<double> locs = grid.locations;
  std::sort(locs.begin(), locs.end());
  locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
  if (locs.empty() || grid.max_atoms < 1 || grid.max_atoms > 4 ||
      grid.weight_resolution < 1) {
    Fail(ErrorCode::kConfigInvalid, "scan grid needs locations, 1..4 atoms, resolution >= 1");
  }
  const int R = grid.weight_resolution;
  const size_t L = locs.size();

  auto choose = [](double n, double k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
  };
  double count = 0.0;
  for (int s = 1; s <= grid.max_atoms; ++s) {
    count += choose(static_cast<double>(L), s) * choose(R - 1, s - 1);
  }
  if (count * count > static_cast<double>(grid.max_pairs)) {
    Fail(ErrorCode::kGridTooLarge, FormatReal(count * count) + " pairs exceed the cap of " +
                                       std::to_string(grid.max_pairs));
  }

  std::vector<FiniteMeasure> out;
  out.reserve(static_cast<size_t>(count));
  std::vector<size_t> idx;
  std::vector<int> parts;
  // Positive compositions of R into s parts, recursively.
  auto emit_compositions = [&](auto&& self, int left, int slots) -> void {
    if (slots == 1) {
      parts.push_back(left);
      std::vector<double> pts, wts;
      for (size_t i = 0; i < idx.size(); ++i) {
        pts.push_back(locs[idx[i]]);
        wts.push_back(static_cast<double>(parts[i]) / R);
      }
      out.emplace_back(std::move(pts), std::move(wts), upper);
      parts.pop_back();
      return;
    }
    for (int w = 1; w <= left - slots + 1; ++w) {
      parts.push_back(w);
      self(self, left - w, slots - 1);
      parts.pop_back();
    }
  };
  auto emit_subsets = [&](auto&& self, size_t start, int s) -> void {
    if (static_cast<int>(idx.size()) == s) {
      if (s <= R) emit_compositions(emit_compositions, R, s);
      return;
    }
    for (size_t i = start; i < L; ++i) {
      idx.push_back(i);
      self(self, i + 1, s);
      idx.pop_back();
    }
  };
  for (int s = 1; s <= grid.max_atoms; ++s) emit_subsets(emit_subsets, 0, s);
  return out;
}

RegretReport DroRegretScan(const ProblemSpec& p, const PolicySpec& pol,
                           DistanceKind kind, double eps, const ScanGrid& grid) {
  if (!(eps >= 0.0)) Fail(ErrorCode::kEpsNonPositive, "eps=" + FormatReal(eps));
  std::vector<FiniteMeasure> ms = EnumerateGridMeasures(grid, p.M);
  std::vector<double> opt(ms.size()), act(ms.size());
  for (size_t i = 0; i < ms.size(); ++i) {
    opt[i] = OptValue(p, ms[i]);
    act[i] = ApplyPolicy(pol, p, ms[i]);
  }
  double best = 0.0;
  size_t best_mu = 0, best_nu = 0;
  for (size_t i = 0; i < ms.size(); ++i) {
    for (size_t j = 0; j < ms.size(); ++j) {
      if (!InBall(ms[i], ms[j], kind, eps)) continue;
      double r = std::abs(opt[i] - ExpectedObjective(p, act[j], ms[i]));
      if (r > best) {
        best = r;
        best_mu = i;
        best_nu = j;
      }
    }
  }
  RegretReport rep;
  rep.estimate = best;
  rep.witness = AdversarialPair{"scan", p, kind, eps, ms[best_mu], {ms[best_nu]}, {},
                                pol, std::nullopt, false, "grid maximizer"};
  return rep;
}

std::pair<double, double> AnalyticBounds(const ProblemSpec& p, DistanceKind kind,
                                         BoundPolicy pol, double eps) {
  if (!(eps > 0.0)) Fail(ErrorCode::kEpsNonPositive, "eps=" + FormatReal(eps));
  const bool w = kind == DistanceKind::kWasserstein;
  const bool saa = pol == BoundPolicy::kSaa;
  const double M = p.M;
  switch (p.kind) {
    case ProblemKind::kNewsvendor: {
      double scale = w ? eps : M * eps;
      return {(p.cu + p.co) / 2.0 * scale, 2.0 * std::max(p.cu, p.co) * scale};
    }
    case ProblemKind::kPricing:
      if (!w) return {M * eps / 2.0, 2.0 * M * eps};
      if (saa) return {M, M};
      return {std::sqrt(M * eps) / 4.0, 4.0 * std::sqrt(M * eps)};
    case ProblemKind::kSkiRental: {
      const double b = p.b;
      if (!w) {
        if (saa) return {M * eps, 2.0 * (M + b) * eps};
        if (eps >= 1.0) Fail(ErrorCode::kEpsTooLarge, "capped bound needs eps < 1");
        return {eps * b / 8.0, b * (std::log(1.0 / eps) + 2.0) * eps};
      }
      if (saa) return {b / 2.0, 2.0 * (b + eps)};
      return {std::sqrt(b * eps) / 4.0, 4.0 * std::sqrt(b * eps) + 2.0 * eps};
    }
    case ProblemKind::kHolder: {
      // TV balls sit inside Kolmogorov balls, so the Kolmogorov bound covers TV.
      if (w) Fail(ErrorCode::kNoKnownBound, "holder objective under wasserstein");
      double G = std::pow(M, p.alpha);
      double a = p.alpha;
      return {0.0, 5.0 * std::pow(G * eps, a / (a + 2.0)) + 4.0 * G * eps};
    }
  }
  Fail(ErrorCode::kNoKnownBound, "no bound for this cell");
}

bool CappedTailHolds(double b, double C, const ProblemSpec& p,
                     const FiniteMeasure& nu) {
  if (!(Oracle(p, nu) > C)) return true;
  return 1.0 - nu.Cdf(C) <= std::exp(-C / b) + 1e-12;
}

}  // namespace hdro
