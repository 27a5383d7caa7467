#pragma once

#include "offo/types.hpp"

#include <string>

namespace offo {

enum class ScalingKind {
  AdagradAgg,
  AdagradComp,
  EwmaAgg,
  EwmaComp,
  MaxgAgg,
  MaxgComp,
};

const char* to_string(ScalingKind kind);

struct ScalingStrategy {
  ScalingKind kind = ScalingKind::AdagradComp;
  double mu = 0.5;
  double nu = 0.1;  // maxg kinds only
  double varsigma = 0.01;
  double vartheta = 1.0;
  double beta2 = 0.9;  // ewma kinds only

  bool aggregate() const;
  bool is_maxg() const;

  /// Proven lower bound on every w_{i,k}.
  double floor(long k) const;
  /// The constant varsigma_min entering the model-decrease lemma.
  double varsigma_min() const;
};

/// Maps the variant names adag1, adagi1, adag2, adagi2, maxg01, maxgi01 (and
/// the model-carrying b1adagi1, lmadagi3b, Eadagi1) to their scaling rule.
/// Throws InvalidParameter for anything else.
ScalingStrategy strategy_for_tag(const std::string& tag);

void validate(const ScalingStrategy& strategy);

struct ScalingState {
  ScalingStrategy strategy;
  int n = 0;
  long k = 0;  // index expected by the next update
  Vector acc;  // per-coordinate sum of squares, EWMA or running max
  double agg = 0.0;
};

ScalingState init_scaling(const ScalingStrategy& strategy, int n);

/// Folds g_k into the accumulators and returns w_k. Calls must arrive with
/// k = 0, 1, 2, ... in order.
Vector update_scaling(ScalingState& state, const Vector& g, long k);

}  // namespace offo
