#pragma once

#include "offo/driver.hpp"
#include "offo/problem.hpp"

#include <string>
#include <vector>

namespace offo {

/// Riemann zeta for real s > 1 (direct sum plus Euler-Maclaurin tail).
double riemann_zeta(double s);

/// Lower branch W_{-1} of the Lambert function on [-1/e, 0). Throws
/// OutOfDomain elsewhere.
double lambert_wm1(double y);

enum class SharpKind { Sharp1, Sharp2 };

const char* to_string(SharpKind kind);
SharpKind sharp_kind_from_tag(const std::string& tag);

struct SharpParams {
  double mu = 0.5;  // sharp1
  double eta = 0.01;
  double varsigma = 0.01;
  double nu = 1.0 / 9.0;  // sharp2
  double omega = 4.0 / 9.0 + 0.01;
};

/// Knot data of a slow-convergence example. sharp1 knots are indexed
/// k = 0..K, sharp2 knots k = 1..K; `first` holds the first index.
struct KnotSequence {
  SharpKind kind = SharpKind::Sharp1;
  SharpParams params;
  long first = 0;
  std::vector<double> x, f, g, s;
  double kappa_f = 0.0;

  std::size_t size() const { return x.size(); }
  long index(std::size_t i) const { return first + static_cast<long>(i); }
};

KnotSequence build_counterexample(SharpKind kind, const SharpParams& params,
                                  long K);

struct HermiteCheck {
  double max_value_gap = 0.0;  // max |f_{k+1} - f_k - g_k s_k| / s_k^2
  double max_slope_gap = 0.0;  // max |g_{k+1} - g_k| / |s_k|
  bool ok = false;             // both <= kappa_f
};

HermiteCheck check_hermite(const KnotSequence& knots);

struct HermitePoint {
  double f = 0.0, g = 0.0, h = 0.0;
};

/// Piecewise cubic Hermite interpolant of the knots, extended linearly past
/// the last knot.
class Interpolant {
 public:
  explicit Interpolant(KnotSequence knots);

  const KnotSequence& knots() const { return knots_; }
  HermitePoint eval(double x) const;

  /// One-dimensional Problem backed by this interpolant (x0 = first knot).
  Problem as_problem() const;

 private:
  KnotSequence knots_;
  std::vector<double> c2_, c3_;
};

Interpolant hermite_fn(const KnotSequence& knots);

/// ASTR1 configuration under which the run reproduces the knots: B = 0,
/// inf norm, adagrad-comp (sharp1) or maxg-comp with the knot nu (sharp2).
RunConfig sharpness_config(const KnotSequence& knots);

struct SharpnessReport {
  long compared = 0;
  double max_knot_deviation = 0.0;      // max |x_k(run) - x_k|
  double max_gradient_deviation = 0.0;  // max |g(run) - g_k| / |g_k|
  double max_decay_deviation = 0.0;     // max ||g|| k^rate - 1| for k >= 1
};

/// Compares a run on hermite_fn(knots) with the knots themselves. Throws
/// ConfigMismatch when `config` is not the reproducing configuration.
SharpnessReport verify_sharpness(const KnotSequence& knots,
                                 const RunRecord& record,
                                 const RunConfig& config);

/// Runs ASTR1 on the interpolant for every knot and verifies it.
SharpnessReport run_sharpness(const KnotSequence& knots);

void write_knots_csv(const KnotSequence& knots, const std::string& path,
                     bool shift_f0 = false);

/// Samples (x, f, f', f'') at `per_decade` points per decade of k.
void write_grid_csv(const Interpolant& fn, int per_decade,
                    const std::string& path, bool shift_f0 = false);

}  // namespace offo
