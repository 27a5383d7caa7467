// End-to-end acceptance gate: one PASS/FAIL line per criterion.

#include "offo/bench.hpp"
#include "offo/driver.hpp"
#include "offo/model.hpp"
#include "offo/sharpness.hpp"
#include "offo/step.hpp"
#include "offo/theory.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

using namespace offo;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const VariantStats& stat(const std::vector<VariantStats>& s, const std::string& v,
                         double level) {
  for (const auto& x : s) {
    if (x.variant == v && x.noise_level == level) return x;
  }
  throw Error(ErrorCode::EmptyResults, "no stats for " + v);
}

long bench_violations(const BenchResults& r) {
  long total = 0;
  for (const auto& c : r.runs) total += c.violations.total();
  return total;
}

void sharpness(int id, SharpKind kind, long K, double time_limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const KnotSequence knots = build_counterexample(kind, SharpParams{}, K);
  const HermiteCheck h = check_hermite(knots);
  const SharpnessReport r = run_sharpness(knots);
  const double elapsed = seconds_since(t0);
  const bool ok = h.ok && r.compared == static_cast<long>(knots.size()) &&
                  r.max_gradient_deviation <= 1e-8 && r.max_decay_deviation <= 1e-8 &&
                  elapsed < time_limit;
  report(id, ok,
         fmt("%s K=%ld compared=%ld max rel |g| err=%.2e decay err=%.2e hermite=%d (%.1fs)",
             to_string(kind), K, r.compared, r.max_gradient_deviation,
             r.max_decay_deviation, h.ok ? 1 : 0, elapsed));
}

RunConfig testbed_config(const std::string& tag, long iters) {
  RunConfig c = config_for_variant(tag);
  c.max_iter = iters;
  c.eps = std::numeric_limits<double>::min();
  c.keep_trace = true;
  return c;
}

void fdecrease() {
  long violations = 0, checked = 0;
  double worst = 0.0;
  for (const char* tag : {"adag1", "adagi1", "adag2", "adagi2", "maxg01", "maxgi01"}) {
    for (int n : {1, 5, 20}) {
      const Problem p = quadratic_testbed(n, 7 + n);
      RunConfig c = testbed_config(tag, 10000);
      c.instrument = true;
      const RunRecord rec = astr1(p, c);
      const TheoryInputs in = testbed_inputs(p, rec, c);
      const DecreaseReport d = check_decrease(rec, c, in.kappa_B, empirical_lipschitz(rec));
      violations += d.violations;
      checked += d.checked;
      worst = std::min(worst, d.worst_gap);
    }
  }
  report(3, violations == 0,
         fmt("6 variants x n{1,5,20}: %ld iterations checked, %ld violations, worst gap %.2e",
             checked, violations, worst));
}

void bounds() {
  long violations = 0, checked = 0, ming_applicable = 0;
  double worst = 0.0, worst_residual = 0.0;
  const double branch = lambert_wm1(-std::exp(-1.0));
  for (const auto& [tag, mu] : {std::pair<const char*, double>{"adagi1", 0.25},
                                {"adagi1", 0.5},
                                {"adagi1", 0.75},
                                {"maxgi01", 0.1}}) {
    for (int n : {1, 5, 20}) {
      const Problem p = quadratic_testbed(n, 7 + n);
      RunConfig c = testbed_config(tag, 10000);
      c.scaling.mu = mu;
      const RunRecord rec = astr1(p, c);
      const Regime regime = regime_for(c.scaling);
      const TheoryConstants k = theory_constants(testbed_inputs(p, rec, c), regime);
      const TheoryReport r = theory_check(rec, k, regime);
      checked += r.checked;
      violations += r.korder_violations + r.ming_violations;
      ming_applicable += r.ming_applicable;
      worst = std::max(worst, r.worst_korder_ratio);
      if (regime == Regime::MuEqHalf) worst_residual = std::max(worst_residual, k.lambert_residual);
    }
  }
  const bool ok = violations == 0 && worst_residual <= 1e-12 && branch == -1.0;
  report(4, ok,
         fmt("%ld iterates checked, %ld violations, worst min|g|sqrt(k+1)/kappa=%.2e, "
             "ming iterates past j_theta=%ld, W residual %.1e, W(-1/e)=%g",
             checked, violations, worst, ming_applicable, worst_residual, branch));
}

void series() {
  const auto t0 = std::chrono::steady_clock::now();
  const SeriesReport r = series_property_suite(1000, 7, 1e-12);
  const double elapsed = seconds_since(t0);
  report(5, r.violations == 0 && elapsed < 5.0,
         fmt("%ld sequences, %ld checks, %ld violations (%.2fs)", r.sequences, r.checks,
             r.violations, elapsed));
}

void oracles() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst_step = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    Vector g(n), w(n), d(n), star(n);
    for (int i = 0; i < n; ++i) {
      g[i] = 10.0 * unif(rng);
      w[i] = std::pow(10.0, 1.5 * unif(rng));
      d[i] = 4.0 * unif(rng);
    }
    const TrustRegion tr = make_trust_region(Norm::Inf, g, w);
    for (int i = 0; i < n; ++i) {
      star[i] = d[i] > 0.0 ? std::clamp(-g[i] / d[i], -tr.radii[i], tr.radii[i])
                           : (g[i] > 0.0 ? -tr.radii[i] : tr.radii[i]);
    }
    const Matrix B = d.asDiagonal();
    const Operator op = [&B](const Vector& v) -> Vector { return B * v; };
    const StepResult r = solve_tr_step(g, op, tr, 0.1, 5 * n);
    worst_step = std::max(worst_step, (r.s - star).cwiseAbs().maxCoeff() /
                                          std::max(1.0, star.cwiseAbs().maxCoeff()));
  }

  double worst_model = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    std::normal_distribution<double> normal;
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = normal(rng);
    const Matrix A = M * M.transpose() + Matrix::Identity(n, n);
    HessianModel model(ModelKind::LBFGS, n, 1e12, 3);
    std::vector<std::pair<Vector, Vector>> pairs;
    for (int k = 0; k < 1 + trial % 5; ++k) {
      Vector s(n);
      for (int i = 0; i < n; ++i) s[i] = normal(rng);
      pairs.emplace_back(s, A * s);
      model.update(s, A * s);
    }
    const std::size_t keep = std::min<std::size_t>(3, pairs.size());
    const auto& last = pairs.back();
    const double sigma = last.first.squaredNorm() / last.second.dot(last.first);
    Matrix ref = sigma * Matrix::Identity(n, n);
    for (std::size_t j = pairs.size() - keep; j < pairs.size(); ++j) {
      const Vector& s = pairs[j].first;
      const Vector& y = pairs[j].second;
      const Vector Bs = ref * s;
      ref += -(Bs * Bs.transpose()) / s.dot(Bs) + (y * y.transpose()) / y.dot(s);
    }
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    worst_model = std::max(worst_model, (model.apply(v) - ref * v).norm() /
                                            std::max(1.0, (ref * v).norm()));
  }
  report(9, worst_step <= 1e-8 && worst_model <= 1e-10,
         fmt("box step max rel err %.2e over 200 separable instances; "
             "lbfgs max rel err %.2e over 100 instances",
             worst_step, worst_model));
}

}  // namespace

int main() {
  try {
    sharpness(1, SharpKind::Sharp1, 10000, 10.0);
    sharpness(2, SharpKind::Sharp2, 50000, std::numeric_limits<double>::infinity());
    fdecrease();
    bounds();
    series();

    // Noiseless comparison feeding criteria 6 and 8.
    BenchConfig quiet;
    quiet.variants = {"adagi1", "adag1", "adagi2", "adag2"};
    quiet.noise_levels = {0.0};
    quiet.max_iter = 100000;
    quiet.seed = 1;
    const auto t_quiet = std::chrono::steady_clock::now();
    const BenchResults quiet_runs = run_matrix(quiet);
    const double quiet_time = seconds_since(t_quiet);
    const auto quiet_stats = aggregate(quiet_runs);

    // Noise sweep feeding criteria 6 and 7.
    BenchConfig noisy;
    noisy.variants = {"sdba", "adagi1", "maxgi01", "b1adagi1"};
    noisy.noise_levels = {0.0, 0.25};
    noisy.reps = 10;
    noisy.max_iter = 10000;
    noisy.seed = 2;
    const auto t_noisy = std::chrono::steady_clock::now();
    const BenchResults noisy_runs = run_matrix(noisy);
    const double noisy_time = seconds_since(t_noisy);
    const auto noisy_stats = aggregate(noisy_runs);

    const long step_violations = bench_violations(quiet_runs) + bench_violations(noisy_runs);
    report(6, step_violations == 0,
           fmt("%zu benchmark runs, %ld step-bound/Cauchy-fraction/floor violations",
               quiet_runs.runs.size() + noisy_runs.runs.size(), step_violations));

    {
      const double sd0 = stat(noisy_stats, "sdba", 0.0).rho;
      const double sd1 = stat(noisy_stats, "sdba", 0.25).rho;
      bool ok = sd0 - sd1 >= 20.0 && noisy_time < 1800.0;
      std::string detail = fmt("rho sdba %.1f -> %.1f", sd0, sd1);
      for (const char* v : {"adagi1", "maxgi01", "b1adagi1"}) {
        const double a = stat(noisy_stats, v, 0.0).rho;
        const double b = stat(noisy_stats, v, 0.25).rho;
        ok = ok && std::abs(a - b) <= 10.0;
        detail += fmt("; %s %.1f -> %.1f", v, a, b);
      }
      report(7, ok, detail + fmt(" (%.0fs)", noisy_time));
    }

    {
      const auto& i1 = stat(quiet_stats, "adagi1", 0.0);
      const auto& a1 = stat(quiet_stats, "adag1", 0.0);
      const auto& i2 = stat(quiet_stats, "adagi2", 0.0);
      const auto& a2 = stat(quiet_stats, "adag2", 0.0);
      const bool ok = i1.pi > a1.pi && a1.pi > i2.pi && i1.rho > i2.rho && i1.rho > a2.rho;
      report(8, ok,
             fmt("pi adagi1 %.3f, adag1 %.3f, adagi2 %.3f, adag2 %.3f; "
                 "rho adagi1 %.1f, adag1 %.1f, adagi2 %.1f, adag2 %.1f (%.0fs)",
                 i1.pi, a1.pi, i2.pi, a2.pi, i1.rho, a1.rho, i2.rho, a2.rho, quiet_time));
    }

    oracles();
  } catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
