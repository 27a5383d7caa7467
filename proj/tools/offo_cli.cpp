// Command-line front end; talks to the library only through offo.h.

#include "offo/offo.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int fail(offo_status status) {
  std::cerr << "offo: " << offo_status_string(status) << ": " << offo_last_error()
            << '\n';
  return 1;
}

bool write_text(const std::string& path, const char* text) {
  std::ofstream out(path);
  out << text << '\n';
  return static_cast<bool>(out);
}

struct SolveArgs {
  std::string problem, variant = "adagi1", model, norm, trace;
  double eps = 1e-6, noise = 0.0;
  long max_iter = 100000;
  std::uint64_t seed = 0;
};

int solve(const SolveArgs& a) {
  offo_problem* problem = nullptr;
  offo_status st = offo_problem_load(a.problem.c_str(), &problem);
  if (st != OFFO_OK) return fail(st);
  offo_run_options opt;
  offo_run_options_default(&opt);
  opt.variant = a.variant.c_str();
  opt.model = a.model.empty() ? nullptr : a.model.c_str();
  opt.norm = a.norm.empty() ? nullptr : a.norm.c_str();
  opt.eps = a.eps;
  opt.max_iter = a.max_iter;
  opt.noise = a.noise;
  opt.seed = a.seed;
  opt.keep_trace = a.trace.empty() ? 0 : 1;
  offo_run* run = nullptr;
  st = offo_solve(problem, &opt, &run);
  offo_problem_free(problem);
  if (st != OFFO_OK) return fail(st);
  char* json = nullptr;
  st = offo_run_json(run, 0, &json);
  if (st == OFFO_OK) {
    std::cout << json << '\n';
    offo_string_free(json);
  }
  if (st == OFFO_OK && !a.trace.empty()) {
    st = offo_run_json(run, 1, &json);
    if (st == OFFO_OK) {
      const bool ok = write_text(a.trace, json);
      offo_string_free(json);
      if (!ok) {
        std::cerr << "offo: cannot write " << a.trace << '\n';
        offo_run_free(run);
        return 1;
      }
    }
  }
  offo_run_free(run);
  return st == OFFO_OK ? 0 : fail(st);
}

struct BenchArgs {
  std::string suite = "all", variants, noise = "0", out, stats;
  int reps = 1, threads = 0;
  std::uint64_t seed = 0;
  long max_iter = 100000;
  bool log_pi = false;
};

int bench(const BenchArgs& a) {
  offo_bench_options opt;
  offo_bench_options_default(&opt);
  opt.suite = a.suite.c_str();
  opt.variants = a.variants.c_str();
  opt.noise_levels = a.noise.c_str();
  opt.reps = a.reps;
  opt.seed = a.seed;
  opt.max_iter = a.max_iter;
  opt.threads = a.threads;
  opt.log_pi = a.log_pi ? 1 : 0;
  offo_bench* b = nullptr;
  offo_status st = offo_bench_run(&opt, &b);
  if (st != OFFO_OK) return fail(st);
  if (!a.out.empty() && (st = offo_bench_write_results(b, a.out.c_str())) != OFFO_OK) {
    offo_bench_free(b);
    return fail(st);
  }
  if (!a.stats.empty() && (st = offo_bench_write_stats(b, a.stats.c_str())) != OFFO_OK) {
    offo_bench_free(b);
    return fail(st);
  }
  std::printf("%-10s %6s %6s %7s\n", "variant", "noise", "pi", "rho");
  for (const auto& v : CLI::detail::split(a.variants, ',')) {
    for (const auto& l : CLI::detail::split(a.noise, ',')) {
      double pi = 0, rho = 0;
      if (offo_bench_stat(b, CLI::detail::trim_copy(v).c_str(), std::stod(l), &pi,
                          &rho) == OFFO_OK) {
        std::printf("%-10s %6.2f %6.2f %7.2f\n", CLI::detail::trim_copy(v).c_str(),
                    std::stod(l), pi, rho);
      }
    }
  }
  std::printf("cells %zu, step-contract violations %ld\n", offo_bench_cells(b),
              offo_bench_violations(b));
  offo_bench_free(b);
  return 0;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"offo: objective-function-free trust-region optimizers"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* s = app.add_subcommand("solve", "run one variant on one suite problem");
  s->add_option("--problem", sa.problem, "suite problem name")->required();
  s->add_option("--variant", sa.variant, "variant tag")->capture_default_str();
  s->add_option("--model", sa.model, "none|bb|lbfgs3|exact");
  s->add_option("--norm", sa.norm, "inf|2");
  s->add_option("--eps", sa.eps, "gradient tolerance")->capture_default_str();
  s->add_option("--max-iter", sa.max_iter, "iteration budget")->capture_default_str();
  s->add_option("--noise", sa.noise, "relative noise level")->capture_default_str();
  s->add_option("--seed", sa.seed, "noise seed")->capture_default_str();
  s->add_option("--trace", sa.trace, "write the run with its trace as JSON");

  BenchArgs ba;
  auto* b = app.add_subcommand("bench", "run the variant x problem x noise matrix");
  b->add_option("--suite", ba.suite, "all or comma-separated names")->capture_default_str();
  b->add_option("--variants", ba.variants, "comma-separated tags")->required();
  b->add_option("--noise", ba.noise, "comma-separated levels")->capture_default_str();
  b->add_option("--reps", ba.reps, "replications per noisy cell")->capture_default_str();
  b->add_option("--seed", ba.seed, "master seed")->capture_default_str();
  b->add_option("--max-iter", ba.max_iter, "iteration budget")->capture_default_str();
  b->add_option("--threads", ba.threads, "worker threads (0: all cores)");
  b->add_option("--out", ba.out, "results CSV");
  b->add_option("--stats", ba.stats, "pi/rho CSV");
  b->add_flag("--log-pi", ba.log_pi, "profile area on a log abscissa");

  offo_sharpness_options so;
  offo_sharpness_options_default(&so);
  std::string kind = "sharp1", knots_out, grid_out;
  auto* h = app.add_subcommand("sharpness", "build and verify a slow-convergence example");
  h->add_option("--kind", kind, "sharp1|sharp2")->capture_default_str();
  h->add_option("--mu", so.mu)->capture_default_str();
  h->add_option("--eta", so.eta)->capture_default_str();
  h->add_option("--varsigma", so.varsigma)->capture_default_str();
  h->add_option("--nu", so.nu)->capture_default_str();
  h->add_option("--omega", so.omega)->capture_default_str();
  h->add_option("--iters", so.iters, "last knot index K")->capture_default_str();
  h->add_option("--grid", so.grid, "grid points per decade of k (0: none)");
  h->add_option("--out", knots_out, "knot table CSV");
  h->add_option("--grid-out", grid_out, "grid CSV (default: <out>.grid.csv)");
  bool shift = false;
  h->add_flag("--shift-f0", shift, "shift f so that f0 = 100");

  bool theory = false;
  long theory_iters = 10000;
  std::string report = "report.json";
  auto* c = app.add_subcommand("check", "verify the complexity bounds on the quadratic testbed");
  c->add_flag("--theory", theory, "run the theory checks")->required();
  c->add_option("--out", report, "JSON report")->capture_default_str();
  c->add_option("--iters", theory_iters, "iterations per run")->capture_default_str();

  std::string manifest_out;
  auto* m = app.add_subcommand("manifest", "write the problem registry as JSON");
  m->add_option("--out", manifest_out, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*s) return solve(sa);
  if (*b) return bench(ba);
  if (*h) {
    so.kind = kind.c_str();
    so.knots_path = knots_out.empty() ? nullptr : knots_out.c_str();
    if (so.grid > 0 && grid_out.empty()) {
      grid_out = knots_out.empty() ? std::string("grid.csv") : knots_out + ".grid.csv";
    }
    so.grid_path = grid_out.empty() ? nullptr : grid_out.c_str();
    so.shift_f0 = shift ? 1 : 0;
    offo_sharpness_report r;
    const offo_status st = offo_sharpness(&so, &r);
    if (st != OFFO_OK) return fail(st);
    std::printf("knots compared        %ld\n", r.compared);
    std::printf("max knot deviation    %.3e\n", r.max_knot_deviation);
    std::printf("max gradient mismatch %.3e\n", r.max_gradient_deviation);
    std::printf("max decay-law error   %.3e\n", r.max_decay_deviation);
    std::printf("hermite admissible    %s\n", r.hermite_ok ? "yes" : "no");
    return 0;
  }
  if (*c) {
    char* json = nullptr;
    long violations = 0;
    const offo_status st = offo_theory_check(theory_iters, &json, &violations);
    if (st != OFFO_OK) return fail(st);
    const bool ok = write_text(report, json);
    offo_string_free(json);
    if (!ok) {
      std::cerr << "offo: cannot write " << report << '\n';
      return 1;
    }
    std::printf("theory checks: %ld violation(s), report in %s\n", violations,
                report.c_str());
    return violations > 0 ? 2 : 0;
  }
  if (*m) {
    char* json = nullptr;
    const offo_status st = offo_suite_manifest(&json);
    if (st != OFFO_OK) return fail(st);
    bool ok = true;
    if (manifest_out.empty()) {
      std::cout << json << '\n';
    } else {
      ok = write_text(manifest_out, json);
    }
    offo_string_free(json);
    return ok ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return main_impl(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "offo: " << e.what() << '\n';
    return 1;
  }
}
