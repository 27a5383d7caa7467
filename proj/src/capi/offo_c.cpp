#include "offo/offo.h"

#include "offo/bench.hpp"
#include "offo/driver.hpp"
#include "offo/problem.hpp"
#include "offo/sharpness.hpp"
#include "offo/theory.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

struct offo_problem {
  offo::Problem problem;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

struct offo_run {
  offo::RunRecord record;
};

struct offo_bench {
  offo::BenchResults results;
  std::vector<offo::VariantStats> stats;
};

namespace {

thread_local std::string last_error;

offo_status map_code(offo::ErrorCode code) {
  using offo::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidParameter: return OFFO_ERR_INVALID_PARAMETER;
    case ErrorCode::DimensionMismatch: return OFFO_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NonFiniteValue: return OFFO_ERR_NON_FINITE_VALUE;
    case ErrorCode::NonFiniteInput: return OFFO_ERR_NON_FINITE_INPUT;
    case ErrorCode::UnknownProblem: return OFFO_ERR_UNKNOWN_PROBLEM;
    case ErrorCode::ConfigMismatch: return OFFO_ERR_CONFIG_MISMATCH;
    case ErrorCode::OutOfDomain: return OFFO_ERR_OUT_OF_DOMAIN;
    case ErrorCode::MissingReference: return OFFO_ERR_MISSING_REFERENCE;
    case ErrorCode::MissingConstants: return OFFO_ERR_MISSING_CONSTANTS;
    case ErrorCode::EmptyResults: return OFFO_ERR_EMPTY_RESULTS;
    case ErrorCode::Io: return OFFO_ERR_IO;
  }
  return OFFO_ERR_INTERNAL;
}

template <typename F>
offo_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return OFFO_OK;
  } catch (const offo::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return OFFO_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return OFFO_ERR_INTERNAL;
  }
}

offo_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return OFFO_ERR_INVALID_PARAMETER;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  offo::require(used == text.size() && used > 0,
                offo::ErrorCode::InvalidParameter,
                "not a number: '" + text + "'");
  return v;
}

}  // namespace

extern "C" {

const char* offo_status_string(offo_status status) {
  switch (status) {
    case OFFO_OK: return "ok";
    case OFFO_ERR_INVALID_PARAMETER: return "InvalidParameter";
    case OFFO_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case OFFO_ERR_NON_FINITE_VALUE: return "NonFiniteValue";
    case OFFO_ERR_NON_FINITE_INPUT: return "NonFiniteInput";
    case OFFO_ERR_UNKNOWN_PROBLEM: return "UnknownProblem";
    case OFFO_ERR_CONFIG_MISMATCH: return "ConfigMismatch";
    case OFFO_ERR_OUT_OF_DOMAIN: return "OutOfDomain";
    case OFFO_ERR_MISSING_REFERENCE: return "MissingReference";
    case OFFO_ERR_MISSING_CONSTANTS: return "MissingConstants";
    case OFFO_ERR_EMPTY_RESULTS: return "EmptyResults";
    case OFFO_ERR_IO: return "Io";
    case OFFO_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* offo_last_error(void) { return last_error.c_str(); }

void offo_string_free(char* s) { std::free(s); }

size_t offo_suite_size(void) { return offo::suite_names().size(); }

const char* offo_suite_name(size_t index) {
  static const std::vector<std::string> names = offo::suite_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

offo_status offo_suite_manifest(char** json) {
  if (!json) return null_argument("json");
  return guarded([&] {
    *json = duplicate(offo::suite_manifest_json(offo::load_suite()));
  });
}

offo_status offo_problem_load(const char* name, offo_problem** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new offo_problem{offo::load_problem(name)}; });
}

void offo_problem_free(offo_problem* problem) { delete problem; }

size_t offo_problem_dim(const offo_problem* problem) {
  return problem ? static_cast<size_t>(problem->problem.n()) : 0;
}

const char* offo_problem_name(const offo_problem* problem) {
  return problem ? problem->problem.name.c_str() : nullptr;
}

offo_status offo_problem_x0(const offo_problem* problem, double* x0, size_t n) {
  if (!problem) return null_argument("problem");
  if (!x0) return null_argument("x0");
  return guarded([&] {
    offo::require(n == static_cast<size_t>(problem->problem.n()),
                  offo::ErrorCode::DimensionMismatch, "x0 buffer length differs from n");
    for (size_t i = 0; i < n; ++i) x0[i] = problem->problem.x0[i];
  });
}

offo_status offo_problem_set_noise(offo_problem* problem, double level,
                                   uint64_t seed) {
  if (!problem) return null_argument("problem");
  return guarded([&] {
    offo::NoisyProblem check(problem->problem, level, seed);
    problem->noise = level;
    problem->seed = seed;
  });
}

offo_status offo_problem_evaluate(const offo_problem* problem, const double* x,
                                  size_t n, int want, uint64_t query, double* f,
                                  double* g, double* H) {
  if (!problem) return null_argument("problem");
  if (!x) return null_argument("x");
  if ((want & OFFO_WANT_VALUE) && !f) return null_argument("f");
  if ((want & OFFO_WANT_GRADIENT) && !g) return null_argument("g");
  if ((want & OFFO_WANT_HESSIAN) && !H) return null_argument("H");
  return guarded([&] {
    const offo::Vector xv = Eigen::Map<const offo::Vector>(x, static_cast<Eigen::Index>(n));
    offo::Want w{(want & OFFO_WANT_VALUE) != 0, (want & OFFO_WANT_GRADIENT) != 0,
                 (want & OFFO_WANT_HESSIAN) != 0};
    const offo::NoisyProblem np(problem->problem, problem->noise, problem->seed);
    const offo::Evaluation ev = np.evaluate(xv, w, query);
    if (ev.f) *f = *ev.f;
    if (ev.g) std::memcpy(g, ev.g->data(), sizeof(double) * n);
    if (ev.H) std::memcpy(H, ev.H->data(), sizeof(double) * n * n);
  });
}

void offo_run_options_default(offo_run_options* options) {
  if (!options) return;
  options->variant = "adagi1";
  options->model = nullptr;
  options->norm = nullptr;
  options->eps = 1e-6;
  options->max_iter = 100000;
  options->noise = 0.0;
  options->seed = 0;
  options->keep_trace = 0;
  options->instrument = 0;
}

offo_status offo_solve(const offo_problem* problem,
                       const offo_run_options* options, offo_run** out) {
  if (!problem) return null_argument("problem");
  if (!options) return null_argument("options");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const std::string tag = options->variant ? options->variant : "adagi1";
    offo::RunConfig c = offo::config_for_variant(tag);
    if (options->model && *options->model) {
      offo::require(tag != "sdba", offo::ErrorCode::InvalidParameter,
                    "sdba takes no Hessian model");
      c.model = offo::model_kind_from_tag(options->model);
    }
    if (options->norm && *options->norm) c.norm = offo::norm_from_tag(options->norm);
    c.eps = options->eps;
    c.max_iter = options->max_iter;
    c.noise = options->noise;
    c.seed = options->seed;
    c.keep_trace = options->keep_trace != 0;
    c.instrument = options->instrument != 0;
    auto run = std::make_unique<offo_run>();
    run->record = offo::run(problem->problem, c);
    offo::finalize(run->record, problem->problem);
    *out = run.release();
  });
}

void offo_run_free(offo_run* run) { delete run; }

const char* offo_run_status(const offo_run* run) {
  return run ? offo::to_string(run->record.status) : nullptr;
}

long offo_run_iterations(const offo_run* run) { return run ? run->record.iters : -1; }

long offo_run_value_calls(const offo_run* run) {
  return run ? run->record.value_calls : -1;
}

long offo_run_violations(const offo_run* run) {
  return run ? run->record.violations.total() : -1;
}

double offo_run_final_gnorm(const offo_run* run) {
  return run ? run->record.final_gnorm : std::numeric_limits<double>::quiet_NaN();
}

double offo_run_final_f(const offo_run* run) {
  return run && run->record.final_f ? *run->record.final_f
                                    : std::numeric_limits<double>::quiet_NaN();
}

offo_status offo_run_x(const offo_run* run, double* x, size_t n) {
  if (!run) return null_argument("run");
  if (!x) return null_argument("x");
  return guarded([&] {
    offo::require(n == static_cast<size_t>(run->record.x.size()),
                  offo::ErrorCode::DimensionMismatch, "x buffer length differs from n");
    std::memcpy(x, run->record.x.data(), sizeof(double) * n);
  });
}

offo_status offo_run_json(const offo_run* run, int with_trace, char** json) {
  if (!run) return null_argument("run");
  if (!json) return null_argument("json");
  return guarded([&] {
    *json = duplicate(offo::run_record_json(run->record, with_trace != 0));
  });
}

void offo_bench_options_default(offo_bench_options* options) {
  if (!options) return;
  options->suite = "all";
  options->variants = "adagi1";
  options->noise_levels = "0";
  options->reps = 1;
  options->seed = 0;
  options->max_iter = 100000;
  options->threads = 0;
  options->log_pi = 0;
}

offo_status offo_bench_run(const offo_bench_options* options, offo_bench** out) {
  if (!options) return null_argument("options");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    offo::BenchConfig c;
    const std::string suite = options->suite ? options->suite : "all";
    if (suite != "all") c.problems = split(suite);
    c.variants = split(options->variants ? options->variants : "");
    c.noise_levels.clear();
    for (const auto& s : split(options->noise_levels ? options->noise_levels : "0")) {
      c.noise_levels.push_back(parse_double(s));
    }
    c.reps = options->reps;
    c.seed = options->seed;
    c.max_iter = options->max_iter;
    c.threads = options->threads;
    auto bench = std::make_unique<offo_bench>();
    bench->results = offo::run_matrix(c);
    bench->stats = offo::aggregate(
        bench->results, options->log_pi ? offo::PiScale::Log : offo::PiScale::Linear);
    *out = bench.release();
  });
}

void offo_bench_free(offo_bench* bench) { delete bench; }

size_t offo_bench_cells(const offo_bench* bench) {
  return bench ? bench->results.runs.size() : 0;
}

long offo_bench_violations(const offo_bench* bench) {
  if (!bench) return -1;
  long total = 0;
  for (const auto& r : bench->results.runs) total += r.violations.total();
  return total;
}

offo_status offo_bench_write_results(const offo_bench* bench, const char* path) {
  if (!bench) return null_argument("bench");
  if (!path) return null_argument("path");
  return guarded([&] { offo::write_results_csv(bench->results, path); });
}

offo_status offo_bench_write_stats(const offo_bench* bench, const char* path) {
  if (!bench) return null_argument("bench");
  if (!path) return null_argument("path");
  return guarded([&] { offo::write_stats_csv(bench->stats, path); });
}

offo_status offo_bench_stat(const offo_bench* bench, const char* variant,
                            double noise_level, double* pi, double* rho) {
  if (!bench) return null_argument("bench");
  if (!variant) return null_argument("variant");
  return guarded([&] {
    for (const auto& s : bench->stats) {
      if (s.variant == variant && s.noise_level == noise_level) {
        if (pi) *pi = s.pi;
        if (rho) *rho = s.rho;
        return;
      }
    }
    throw offo::Error(offo::ErrorCode::EmptyResults, "no such variant/level");
  });
}

void offo_sharpness_options_default(offo_sharpness_options* options) {
  if (!options) return;
  const offo::SharpParams p;
  options->kind = "sharp1";
  options->mu = p.mu;
  options->eta = p.eta;
  options->varsigma = p.varsigma;
  options->nu = p.nu;
  options->omega = p.omega;
  options->iters = 100;
  options->grid = 0;
  options->knots_path = nullptr;
  options->grid_path = nullptr;
  options->shift_f0 = 0;
}

offo_status offo_sharpness(const offo_sharpness_options* options,
                           offo_sharpness_report* report) {
  if (!options) return null_argument("options");
  return guarded([&] {
    offo::SharpParams p;
    p.mu = options->mu;
    p.eta = options->eta;
    p.varsigma = options->varsigma;
    p.nu = options->nu;
    p.omega = options->omega;
    const auto kind = offo::sharp_kind_from_tag(options->kind ? options->kind : "");
    const offo::KnotSequence knots = offo::build_counterexample(kind, p, options->iters);
    if (options->knots_path) {
      offo::write_knots_csv(knots, options->knots_path, options->shift_f0 != 0);
    }
    if (options->grid > 0 && options->grid_path) {
      offo::write_grid_csv(offo::hermite_fn(knots), options->grid,
                           options->grid_path, options->shift_f0 != 0);
    }
    const offo::SharpnessReport r = offo::run_sharpness(knots);
    if (report) {
      report->compared = r.compared;
      report->max_knot_deviation = r.max_knot_deviation;
      report->max_gradient_deviation = r.max_gradient_deviation;
      report->max_decay_deviation = r.max_decay_deviation;
      report->hermite_ok = offo::check_hermite(knots).ok ? 1 : 0;
    }
  });
}

offo_status offo_theory_check(long iterations, char** json, long* violations) {
  if (!json) return null_argument("json");
  return guarded([&] {
    offo::TheorySuiteOptions opt;
    opt.iterations = iterations;
    long v = 0;
    *json = duplicate(offo::theory_suite_json(opt, v));
    if (violations) *violations = v;
  });
}

offo_status offo_lambert_wm1(double y, double* w) {
  if (!w) return null_argument("w");
  return guarded([&] { *w = offo::lambert_wm1(y); });
}

offo_status offo_zeta(double s, double* value) {
  if (!value) return null_argument("value");
  return guarded([&] { *value = offo::riemann_zeta(s); });
}

}  // extern "C"
