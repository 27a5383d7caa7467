#pragma once

#include "offo/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace offo {

enum class RefProvenance { Literature, ReferenceRun };

const char* to_string(RefProvenance provenance);

/// A smooth unconstrained test problem. Oracles are plain callables so that
/// problems stay cheap to copy and safe to share between concurrent runs.
struct Problem {
  std::string name;
  Vector x0;
  std::optional<double> f_ref;
  RefProvenance provenance = RefProvenance::Literature;

  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  /// Optional analytic Hessian; when empty, `hessian_at` falls back to
  /// central differences of the gradient.
  std::function<Matrix(const Vector&)> hessian;

  int n() const { return static_cast<int>(x0.size()); }
  Matrix hessian_at(const Vector& x) const;
};

/// Which oracle outputs a caller needs.
struct Want {
  bool value = false;
  bool gradient = false;
  bool hessian = false;

  bool any() const { return value || gradient || hessian; }

  static Want f() { return {true, false, false}; }
  static Want g() { return {false, true, false}; }
  static Want fg() { return {true, true, false}; }
  static Want all() { return {true, true, true}; }
};

struct Evaluation {
  std::optional<double> f;
  std::optional<Vector> g;
  std::optional<Matrix> H;
};

/// Evaluates the requested oracles. Throws DimensionMismatch on a wrong-size
/// x and NonFiniteValue if any requested output overflows.
Evaluation evaluate(const Problem& problem, const Vector& x, Want want);

/// Five-point differences of `gradient` with step 1e-4 * (1 + |x_i|),
/// symmetrized.
Matrix fd_hessian(const std::function<Vector(const Vector&)>& gradient,
                  const Vector& x);

/// Standard normal deviate addressed by (seed, query, component). Stateless:
/// the same triple always yields the same value, whatever the call order.
double counter_normal(std::uint64_t seed, std::uint64_t query,
                      std::uint64_t component);

/// Problem whose oracle outputs carry multiplicative Gaussian noise,
/// y * (1 + level * xi). The query index is supplied by the caller, so the
/// wrapper holds no mutable state.
///
/// Component addressing inside one query: the value is component 0, gradient
/// entry i is 1 + i, Hessian entry (i, j) with i <= j is 1 + n + j(j+1)/2 + i
/// (both triangles share one draw, keeping the Hessian symmetric).
class NoisyProblem {
 public:
  NoisyProblem(Problem base, double level, std::uint64_t seed);

  const Problem& base() const { return base_; }
  double level() const { return level_; }
  std::uint64_t seed() const { return seed_; }

  Evaluation evaluate(const Vector& x, Want want, std::uint64_t query) const;

 private:
  Problem base_;
  double level_;
  std::uint64_t seed_;
};

NoisyProblem with_noise(Problem problem, double level, std::uint64_t seed);

/// Names of every problem in the built-in suite, in registry order.
std::vector<std::string> suite_names();

/// Loads the requested problems (all of them when `names` is empty). Throws
/// UnknownProblem for names not in the registry.
std::vector<Problem> load_suite(const std::vector<std::string>& names = {});

Problem load_problem(const std::string& name);

/// Separable quadratic 0.5 * sum(lambda_i x_i^2), minimum 0 at the origin.
Problem make_diagonal_quadratic(const Vector& lambda, const Vector& x0,
                                std::string name = "diagquad");

/// Versioned JSON manifest: name, n, x0, f_ref and its provenance.
std::string suite_manifest_json(const std::vector<Problem>& problems);

}  // namespace offo
