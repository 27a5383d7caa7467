#pragma once

#include "offo/driver.hpp"
#include "offo/problem.hpp"

#include <cstdint>
#include <string>

namespace offo {

enum class Regime { MuLtHalf, MuEqHalf, MuGtHalf, Ming };

const char* to_string(Regime regime);
Regime regime_for(const ScalingStrategy& strategy);

struct TheoryInputs {
  int n = 1;
  double mu = 0.5;
  double nu = 0.1;
  double varsigma = 0.01;
  double vartheta = 1.0;
  double tau = 0.1;
  double kappa_B = 1.0;
  double L = 1.0;
  double kappa_g = 1.0;
  double Gamma0 = 0.0;
};

struct TheoryConstants {
  TheoryInputs in;
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0, k5 = 0, k6 = 0, k7 = 0, k8 = 0;
  double lambert = 0;  // W_{-1} value inside k6
  double lambert_residual = 0;
  // ming regime
  double varsigma_min = 0, theta = 0, j_theta = 0, k_diamond = 0;

  double kappa_circ(Regime regime) const;
};

/// Derives every constant meaningful for the regime; the others stay 0.
TheoryConstants theory_constants(const TheoryInputs& in, Regime regime);

struct TheoryReport {
  Regime regime = Regime::MuEqHalf;
  long checked = 0;
  double kappa_circ = 0.0;
  long korder_violations = 0;   // min ||g_j|| sqrt(k+1) <= kappa_circ
  long average_violations = 0;  // mean ||g_j||^2 <= first term of the min
  long second_term_violations = 0;
  double worst_korder_ratio = 0.0;  // max of min||g|| sqrt(k+1) / kappa_circ
  // ming regime
  double j_theta = 0.0;
  long ming_applicable = 0;
  long ming_violations = 0;
};

/// Checks the k-order bounds along a recorded trace (record.trace required).
TheoryReport theory_check(const RunRecord& record, const TheoryConstants& c,
                          Regime regime);

/// Separable quadratic 0.5 x' diag(lambda) x, lambda in [0.1, 1], x0 with
/// entries in [-1, 1] (deterministic in seed).
Problem quadratic_testbed(int n, std::uint64_t seed);

/// Inputs for a run of `record` on the testbed: exact L = max lambda,
/// kappa_B = max(1, observed ||B||), Gamma0 = f(x0), kappa_g from the trace.
TheoryInputs testbed_inputs(const Problem& testbed, const RunRecord& record,
                            const RunConfig& config);

struct DecreaseReport {
  long checked = 0;
  long violations = 0;
  double worst_gap = 0.0;  // most negative (lhs - rhs)
};

/// f(x0) - f(x_{k+1}) >= sum_{j<=k} sum_i g_ij^2/(2 kB w_ij) (tau s_min -
/// kB (kB + L)/w_ij), with 1e-8 absolute slack. Needs an instrumented trace.
DecreaseReport check_decrease(const RunRecord& record, const RunConfig& config,
                              double kappa_B, double L, double slack = 1e-8);

/// Largest ||g_{j+1} - g_j|| / ||s_j|| along the trace.
double empirical_lipschitz(const RunRecord& record);

struct SeriesReport {
  long sequences = 0;
  long checks = 0;
  long violations = 0;
};

/// Random nonnegative sequences a_j, b_j = sum_{l<=j} a_l, xi in {0.01, 1};
/// checks the four series inequalities (alpha = 0.3 and 1.7 general form,
/// alpha = 1 log form, and the two alpha != 1 corollaries).
SeriesReport series_property_suite(long sequences, std::uint64_t seed,
                                   double rel_slack = 1e-12);

struct TheorySuiteOptions {
  long iterations = 10000;
  std::uint64_t seed = 7;
};

/// Everything `offo check --theory` runs, as a JSON document; `violations`
/// receives the total count of failed assertions.
std::string theory_suite_json(const TheorySuiteOptions& options,
                              long& violations);

}  // namespace offo
