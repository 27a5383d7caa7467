#pragma once

#include "offo/model.hpp"
#include "offo/problem.hpp"
#include "offo/scaling.hpp"
#include "offo/step.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace offo {

enum class RunStatus {
  Converged,
  BudgetExhausted,
  OverflowFailure,
  LinesearchFailure,
};

const char* to_string(RunStatus status);

struct RunConfig {
  std::string variant = "adagi1";
  ScalingStrategy scaling;
  ModelKind model = ModelKind::Zero;
  Norm norm = Norm::Inf;
  double tau = 0.1;
  double eps = 1e-6;
  long max_iter = 100000;
  double kappa_B = 1e6;
  int cg_max = 0;  // 0 means 5n

  double noise = 0.0;
  std::uint64_t seed = 0;

  bool instrument = false;  // record f(x_k); never used for decisions
  bool assertions = true;
  bool keep_trace = false;

  // sdba only
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;
};

/// Every variant tag the driver understands.
const std::vector<std::string>& variant_tags();

/// Default configuration for one of the tags above.
RunConfig config_for_variant(const std::string& tag);

void validate(const RunConfig& config);

struct Trace {
  std::vector<Vector> x, g, w, radii, s;
  std::vector<double> gnorm;
  std::vector<double> q_step;     // q(s_k)
  std::vector<double> q_cauchy;   // q(sQ_k)
  std::vector<double> model_norm; // ||B_k||_2
  std::vector<double> f;          // instrumented runs only
};

struct Violations {
  long step_bound = 0;
  long cauchy_fraction = 0;
  long scaling_floor = 0;

  long total() const { return step_bound + cauchy_fraction + scaling_floor; }
};

struct RunRecord {
  std::string problem;
  std::string variant;
  RunStatus status = RunStatus::BudgetExhausted;
  long iters = 0;
  long evals = 0;
  double final_gnorm = 0.0;
  std::optional<double> final_f;
  Vector x;
  long value_calls = 0;
  long gradient_calls = 0;
  long hessian_calls = 0;
  Violations violations;
  std::optional<Trace> trace;
  std::string message;
};

RunRecord astr1(const Problem& problem, const RunConfig& config);
RunRecord sdba(const Problem& problem, const RunConfig& config);

/// Dispatches on config.variant.
RunRecord run(const Problem& problem, const RunConfig& config);

/// Sets final_f to the noise-free objective at the last iterate.
void finalize(RunRecord& record, const Problem& problem);

/// {problem, variant, status, iters, final_gnorm, final_f, trace?}; the trace
/// is downsampled to at most `max_points` iterations.
std::string run_record_json(const RunRecord& record, bool with_trace,
                            std::size_t max_points = 1000);

}  // namespace offo
