#pragma once

#include "offo/model.hpp"
#include "offo/types.hpp"

#include <functional>

namespace offo {

enum class Norm { Inf, Two };

const char* to_string(Norm norm);
Norm norm_from_tag(const std::string& tag);

struct TrustRegion {
  Norm norm = Norm::Inf;
  Vector radii;         // inf norm: Delta_i = |g_i| / w_i
  double radius = 0.0;  // two norm: ||(g_i / w_i)_i||_2
};

TrustRegion make_trust_region(Norm norm, const Vector& g, const Vector& w);

using Operator = std::function<Vector(const Vector&)>;

Operator as_operator(const HessianModel& model);

struct CauchyData {
  Vector sL;
  double gamma = 1.0;
  Vector sQ;
  double qdec = 0.0;  // -(g'sQ + sQ'B sQ / 2)
};

CauchyData cauchy_point(const Vector& g, const Operator& B,
                        const TrustRegion& tr);

struct StepResult {
  Vector s;
  double q = 0.0;  // model value at s
  int cg_iterations = 0;
  bool fallback = false;  // the Cauchy step was returned
};

/// Truncated CG step inside the trust region. Inf norm: projected CG with
/// face fixing, restarts and release of multipliers of the wrong sign.
/// Two norm: Steihaug-Toint. The result always satisfies the box/ball bound
/// and q(s) <= tau q(sQ).
StepResult solve_tr_step(const Vector& g, const Operator& B,
                         const TrustRegion& tr, const CauchyData& cauchy,
                         double tau, int cg_max);

StepResult solve_tr_step(const Vector& g, const Operator& B,
                         const TrustRegion& tr, double tau, int cg_max);

/// Scales s down until ||s||_2 <= radius holds in floating point.
void clamp_to_ball(Vector& s, double radius);

}  // namespace offo
