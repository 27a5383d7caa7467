#include "offo/scaling.hpp"

#include <cmath>

namespace offo {

const char* to_string(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::AdagradAgg: return "adagrad-agg";
    case ScalingKind::AdagradComp: return "adagrad-comp";
    case ScalingKind::EwmaAgg: return "ewma-agg";
    case ScalingKind::EwmaComp: return "ewma-comp";
    case ScalingKind::MaxgAgg: return "maxg-agg";
    case ScalingKind::MaxgComp: return "maxg-comp";
  }
  return "unknown";
}

bool ScalingStrategy::aggregate() const {
  return kind == ScalingKind::AdagradAgg || kind == ScalingKind::EwmaAgg ||
         kind == ScalingKind::MaxgAgg;
}

bool ScalingStrategy::is_maxg() const {
  return kind == ScalingKind::MaxgAgg || kind == ScalingKind::MaxgComp;
}

double ScalingStrategy::floor(long k) const {
  if (is_maxg()) return varsigma * std::pow(static_cast<double>(k + 1), nu);
  return std::pow(varsigma, mu) * std::sqrt(vartheta);
}

double ScalingStrategy::varsigma_min() const {
  return is_maxg() ? varsigma : std::pow(varsigma, mu);
}

ScalingStrategy strategy_for_tag(const std::string& tag) {
  ScalingStrategy s;
  if (tag == "adag1") {
    s.kind = ScalingKind::AdagradAgg;
  } else if (tag == "adagi1" || tag == "b1adagi1" || tag == "lmadagi3b" ||
             tag == "Eadagi1") {
    s.kind = ScalingKind::AdagradComp;
  } else if (tag == "adag2") {
    s.kind = ScalingKind::EwmaAgg;
  } else if (tag == "adagi2") {
    s.kind = ScalingKind::EwmaComp;
  } else if (tag == "maxg01" || tag == "maxgi01") {
    s.kind = tag == "maxg01" ? ScalingKind::MaxgAgg : ScalingKind::MaxgComp;
    s.mu = 0.1;
    s.nu = 0.1;
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown scaling tag '" + tag + "'");
  }
  return s;
}

void validate(const ScalingStrategy& s) {
  require(s.mu > 0.0 && s.mu < 1.0, ErrorCode::InvalidParameter,
          "scaling: mu must lie in (0,1)");
  require(s.varsigma > 0.0 && std::isfinite(s.varsigma),
          ErrorCode::InvalidParameter, "scaling: varsigma must be positive");
  require(s.vartheta > 0.0 && s.vartheta <= 1.0, ErrorCode::InvalidParameter,
          "scaling: vartheta must lie in (0,1]");
  if (s.kind == ScalingKind::EwmaAgg || s.kind == ScalingKind::EwmaComp) {
    require(s.beta2 > 0.0 && s.beta2 < 1.0, ErrorCode::InvalidParameter,
            "scaling: beta2 must lie in (0,1)");
  }
  if (s.is_maxg()) {
    require(s.nu > 0.0 && s.nu <= s.mu, ErrorCode::InvalidParameter,
            "scaling: need 0 < nu <= mu for maxg kinds");
  }
}

ScalingState init_scaling(const ScalingStrategy& strategy, int n) {
  validate(strategy);
  require(n >= 1, ErrorCode::InvalidParameter, "scaling: n must be >= 1");
  ScalingState state;
  state.strategy = strategy;
  state.n = n;
  state.k = 0;
  if (strategy.is_maxg()) {
    state.acc = Vector::Constant(n, strategy.varsigma);
    state.agg = strategy.varsigma;
  } else {
    state.acc = Vector::Zero(n);
    state.agg = 0.0;
  }
  return state;
}

Vector update_scaling(ScalingState& state, const Vector& g, long k) {
  require(g.size() == state.n, ErrorCode::DimensionMismatch,
          "update_scaling: gradient length differs from n");
  require(g.allFinite(), ErrorCode::NonFiniteInput,
          "update_scaling: non-finite gradient");
  require(k == state.k, ErrorCode::InvalidParameter,
          "update_scaling: expected k=" + std::to_string(state.k) + ", got " +
              std::to_string(k));
  const ScalingStrategy& s = state.strategy;
  const int n = state.n;
  Vector w(n);
  switch (s.kind) {
    case ScalingKind::AdagradComp:
      for (int i = 0; i < n; ++i) {
        state.acc[i] += g[i] * g[i];
        w[i] = std::pow(s.varsigma + state.acc[i], s.mu);
      }
      break;
    case ScalingKind::AdagradAgg:
      state.agg += g.squaredNorm();
      w.setConstant(std::pow(s.varsigma + state.agg, s.mu));
      break;
    case ScalingKind::EwmaComp:
      for (int i = 0; i < n; ++i) {
        state.acc[i] = s.beta2 * state.acc[i] + g[i] * g[i];
        w[i] = std::pow(s.varsigma + state.acc[i], s.mu);
      }
      break;
    case ScalingKind::EwmaAgg:
      state.agg = s.beta2 * state.agg + g.squaredNorm();
      w.setConstant(std::pow(s.varsigma + state.agg, s.mu));
      break;
    case ScalingKind::MaxgComp: {
      const double growth = std::pow(static_cast<double>(k + 1), s.nu);
      for (int i = 0; i < n; ++i) {
        state.acc[i] = std::max(state.acc[i], std::abs(g[i]));
        w[i] = growth * state.acc[i];
      }
      break;
    }
    case ScalingKind::MaxgAgg: {
      const double growth = std::pow(static_cast<double>(k + 1), s.nu);
      state.agg = std::max(state.agg, g.norm());
      w.setConstant(growth * state.agg);
      break;
    }
  }
  ++state.k;
  return w;
}

}  // namespace offo
