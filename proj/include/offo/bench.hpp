#pragma once

#include "offo/driver.hpp"
#include "offo/problem.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace offo {

struct BenchConfig {
  std::vector<std::string> variants;
  std::vector<std::string> problems;  // empty: whole suite
  std::vector<double> noise_levels = {0.0};
  int reps = 1;
  std::uint64_t seed = 0;
  long max_iter = 100000;
  double eps = 1e-6;
  int threads = 0;  // 0: hardware concurrency
};

struct CellResult {
  std::string variant;
  std::string problem;
  double noise_level = 0.0;
  int rep = 0;
  RunStatus status = RunStatus::BudgetExhausted;
  long evals = 0;
  double final_gnorm = 0.0;
  std::optional<double> final_f;
  bool success = false;
  Violations violations;
};

struct BenchResults {
  std::vector<std::string> variants;
  std::vector<std::string> problems;
  std::vector<double> noise_levels;
  int reps = 1;
  std::vector<CellResult> runs;
};

/// Seed of one cell; depends only on its coordinates, not on run order.
std::uint64_t cell_seed(std::uint64_t master, const std::string& variant,
                        const std::string& problem, double level, int rep);

/// Runs every (variant, problem, level, rep) cell. Noiseless cells are
/// deterministic, so level 0 runs a single replication.
BenchResults run_matrix(const BenchConfig& config,
                        const std::function<void(std::size_t, std::size_t)>&
                            progress = {});

/// Three-clause success rule: ||g|| <= 1e-6, or relative f error <= 1e-7, or
/// |f_ref| < 1e-7 and |f| <= 1e-7. Throws MissingReference when the gradient
/// clause fails and f_ref is absent.
bool success(double final_gnorm, std::optional<double> final_f,
             std::optional<double> f_ref);

/// Problems on which two successful noiseless variants end at values that
/// differ by more than 1e-3 * max(1, |fa|, |fb|).
std::vector<std::string> incomparable_problems(const BenchResults& results);

enum class PiScale { Linear, Log };

struct ProfileCurve {
  std::string variant;
  double noise_level = 0.0;
  std::vector<double> ratios;  // one per profile instance, +inf on failure

  /// Fraction of instances with ratio <= t.
  double theta(double t) const;
};

struct VariantStats {
  std::string variant;
  double noise_level = 0.0;
  double pi = 0.0;
  double rho = 0.0;
  long attempts = 0;
  long successes = 0;
};

std::vector<ProfileCurve> profiles(const BenchResults& results);

/// pi = (1/50) * integral of theta over [1, 50] (linear abscissa), or the
/// same area on a log abscissa normalized by log(50). rho = 100 * successes /
/// attempts. Throws EmptyResults when there is nothing to aggregate.
std::vector<VariantStats> aggregate(const BenchResults& results,
                                    PiScale scale = PiScale::Linear);

double profile_area(const ProfileCurve& curve, PiScale scale = PiScale::Linear);

void write_results_csv(const BenchResults& results, const std::string& path);
void write_stats_csv(const std::vector<VariantStats>& stats,
                     const std::string& path);

}  // namespace offo
