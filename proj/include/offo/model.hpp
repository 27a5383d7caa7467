#pragma once

#include "offo/types.hpp"

#include <deque>
#include <optional>
#include <string>

namespace offo {

enum class ModelKind { Zero, BB, LBFGS, Exact };

const char* to_string(ModelKind kind);

/// Accepts none|zero, bb, lbfgs3 (or lbfgs), exact.
ModelKind model_kind_from_tag(const std::string& tag);

/// Symmetric Hessian approximation B_k, capped so that ||B||_2 <= kappa_B.
///
/// Every kind starts as B = 0. BB and L-BFGS only change after the first
/// accepted secant pair; the exact kind is fed Hessians by its owner.
class HessianModel {
 public:
  static constexpr double kCurvatureSafeguard = 1e-15;

  HessianModel() = default;
  HessianModel(ModelKind kind, int n, double kappa_B = 1e6, int pairs = 3);

  ModelKind kind() const { return kind_; }
  int n() const { return n_; }
  double kappa_B() const { return kappa_B_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }

  /// Folds in the secant pair (s, y = g_{k+1} - g_k). No-op for the zero and
  /// exact kinds.
  void update(const Vector& s, const Vector& y);

  /// Replaces B by H (exact kind).
  void set_matrix(const Matrix& H);

  /// Pins the L-BFGS base scalar instead of taking it from the latest pair.
  void fix_base(double sigma);

  Vector apply(const Vector& v) const;
  Matrix dense() const;

  /// ||B||_2 after the cap.
  double norm() const { return norm_; }
  /// Multiplier applied by the cap; 1 when the cap was not active.
  double cap_scale() const { return scale_; }

 private:
  struct Pair {
    Vector s, y, a;  // a = B_{j-1} s_j
    double ys = 0.0, sa = 0.0;
  };

  Vector apply_uncapped(const Vector& v, std::size_t upto) const;
  void rebuild();
  void enforce_cap();

  ModelKind kind_ = ModelKind::Zero;
  int n_ = 0;
  double kappa_B_ = 1e6;
  std::size_t max_pairs_ = 3;
  double sigma_ = 0.0;  // BB scalar or L-BFGS base
  std::optional<double> fixed_base_;
  std::deque<Pair> pairs_;
  Matrix H_;
  double scale_ = 1.0;
  double norm_ = 0.0;
};

/// Model pieces evaluated consistently everywhere: q(s) = g's + s'Bs/2.
double model_value(const Vector& g, const Vector& s, const Vector& Bs);

}  // namespace offo
