#include "offo/step.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace offo {

const char* to_string(Norm norm) { return norm == Norm::Inf ? "inf" : "2"; }

Norm norm_from_tag(const std::string& tag) {
  if (tag == "inf") return Norm::Inf;
  if (tag == "2" || tag == "two") return Norm::Two;
  throw Error(ErrorCode::InvalidParameter, "unknown norm '" + tag + "'");
}

TrustRegion make_trust_region(Norm norm, const Vector& g, const Vector& w) {
  require(g.size() == w.size(), ErrorCode::DimensionMismatch,
          "trust region: g and w differ in length");
  TrustRegion tr;
  tr.norm = norm;
  tr.radii = g.cwiseAbs().cwiseQuotient(w);
  tr.radius = tr.radii.norm();
  return tr;
}

Operator as_operator(const HessianModel& model) {
  return [&model](const Vector& v) { return model.apply(v); };
}

void clamp_to_ball(Vector& s, double radius) {
  double nrm = s.norm();
  if (nrm <= radius) return;
  if (radius <= 0.0) {
    s.setZero();
    return;
  }
  s *= radius / nrm;
  while (s.norm() > radius) s *= std::nextafter(1.0, 0.0);
}

CauchyData cauchy_point(const Vector& g, const Operator& B,
                        const TrustRegion& tr) {
  require(g.allFinite(), ErrorCode::NonFiniteInput,
          "cauchy_point: non-finite gradient");
  const auto n = g.size();
  CauchyData c;
  c.sL = Vector::Zero(n);
  if (tr.norm == Norm::Inf) {
    require(tr.radii.size() == n && tr.radii.allFinite(),
            ErrorCode::NonFiniteInput, "cauchy_point: bad radii");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (g[i] > 0.0) c.sL[i] = -tr.radii[i];
      if (g[i] < 0.0) c.sL[i] = tr.radii[i];
    }
  } else {
    require(std::isfinite(tr.radius), ErrorCode::NonFiniteInput,
            "cauchy_point: bad radius");
    const double gn = g.norm();
    if (gn > 0.0) {
      c.sL = -(tr.radius / gn) * g;
      clamp_to_ball(c.sL, tr.radius);
    }
  }
  const Vector BsL = B(c.sL);
  const double curv = c.sL.dot(BsL);
  const double slope = g.dot(c.sL);
  c.gamma = curv > 0.0 ? std::min(1.0, std::abs(slope) / curv) : 1.0;
  c.sQ = c.gamma * c.sL;
  c.qdec = -model_value(g, c.sQ, c.gamma * BsL);
  return c;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Projected truncated CG on the box |s_i| <= Delta_i.
Vector box_cg(const Vector& g, const Operator& B, const Vector& delta,
              double tol, int cg_max, int& iterations) {
  const auto n = g.size();
  Vector s = Vector::Zero(n);
  // 0: free, +1 / -1: held at +Delta_i / -Delta_i, 2: Delta_i = 0.
  std::vector<int> state(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(delta[i] > 0.0)) state[i] = 2;
  }
  const auto mask = [&](Vector v) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (state[i] != 0) v[i] = 0.0;
    }
    return v;
  };
  const auto fix = [&](Eigen::Index i, double direction) {
    state[i] = direction > 0.0 ? 1 : -1;
    s[i] = state[i] * delta[i];
  };

  Vector r = g;  // g + B s
  int restarts = 0;
  while (iterations < cg_max && restarts <= 4 * n + 4) {
    ++restarts;
    Vector rf = mask(r);
    if (rf.norm() <= tol) {
      // Release held coordinates whose multiplier has the wrong sign.
      bool released = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        if ((state[i] == 1 && r[i] > 0.0) || (state[i] == -1 && r[i] < 0.0)) {
          state[i] = 0;
          released = true;
        }
      }
      if (!released) break;
      rf = mask(r);
      if (rf.norm() <= tol) break;
    }
    Vector p = -rf;
    double rr = rf.squaredNorm();
    bool hit = false;
    while (iterations < cg_max) {
      ++iterations;
      const Vector Bp = B(p);
      const double curv = p.dot(Bp);
      double amax = kInf;
      Eigen::Index blocker = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (state[i] != 0 || p[i] == 0.0) continue;
        const double bound = p[i] > 0.0 ? delta[i] - s[i] : -delta[i] - s[i];
        const double a = std::max(0.0, bound / p[i]);
        if (a < amax) {
          amax = a;
          blocker = i;
        }
      }
      if (curv <= 0.0 || rr / curv >= amax) {
        if (blocker < 0) break;
        s += amax * p;
        fix(blocker, p[blocker]);
        for (Eigen::Index i = 0; i < n; ++i) {
          if (state[i] == 0) s[i] = std::clamp(s[i], -delta[i], delta[i]);
        }
        r = g + B(s);
        hit = true;
        break;
      }
      const double alpha = rr / curv;
      s += alpha * p;
      r += alpha * Bp;
      rf = mask(r);
      const double rr_new = rf.squaredNorm();
      if (std::sqrt(rr_new) <= tol) break;
      p = -rf + (rr_new / rr) * p;
      rr = rr_new;
    }
    if (!hit) r = g + B(s);
  }
  for (Eigen::Index i = 0; i < n; ++i) s[i] = std::clamp(s[i], -delta[i], delta[i]);
  return s;
}

double boundary_step(const Vector& s, const Vector& p, double radius) {
  const double pp = p.squaredNorm();
  const double sp = s.dot(p);
  const double ss = s.squaredNorm();
  const double disc = std::max(0.0, sp * sp + pp * (radius * radius - ss));
  return (-sp + std::sqrt(disc)) / pp;
}

// Steihaug-Toint truncated CG on ||s||_2 <= radius.
Vector ball_cg(const Vector& g, const Operator& B, double radius, double tol,
               int cg_max, int& iterations) {
  Vector s = Vector::Zero(g.size());
  Vector r = g;
  Vector p = -r;
  double rr = r.squaredNorm();
  if (std::sqrt(rr) <= tol || radius <= 0.0) return s;
  while (iterations < cg_max) {
    ++iterations;
    const Vector Bp = B(p);
    const double curv = p.dot(Bp);
    if (curv <= 0.0) {
      s += boundary_step(s, p, radius) * p;
      break;
    }
    const double alpha = rr / curv;
    const Vector next = s + alpha * p;
    if (next.norm() >= radius) {
      s += boundary_step(s, p, radius) * p;
      break;
    }
    s = next;
    r += alpha * Bp;
    const double rr_new = r.squaredNorm();
    if (std::sqrt(rr_new) <= tol) break;
    p = -r + (rr_new / rr) * p;
    rr = rr_new;
  }
  clamp_to_ball(s, radius);
  return s;
}

}  // namespace

StepResult solve_tr_step(const Vector& g, const Operator& B,
                         const TrustRegion& tr, const CauchyData& cauchy,
                         double tau, int cg_max) {
  require(tau > 0.0 && tau <= 1.0, ErrorCode::InvalidParameter,
          "solve_tr_step: tau must lie in (0,1]");
  require(g.allFinite(), ErrorCode::NonFiniteInput,
          "solve_tr_step: non-finite gradient");
  const double tol = std::max(1e-12, 1e-5 * g.norm());
  StepResult out;
  out.s = tr.norm == Norm::Inf
              ? box_cg(g, B, tr.radii, tol, cg_max, out.cg_iterations)
              : ball_cg(g, B, tr.radius, tol, cg_max, out.cg_iterations);
  out.q = model_value(g, out.s, B(out.s));
  const double qQ = model_value(g, cauchy.sQ, B(cauchy.sQ));
  if (out.s.allFinite() && out.q <= tau * qQ) return out;
  out.fallback = true;
  if (qQ <= tau * qQ) {
    out.s = cauchy.sQ;
    out.q = qQ;
  } else {
    // q(sQ) > 0 can only come from rounding when g is tiny.
    out.s = Vector::Zero(g.size());
    out.q = 0.0;
  }
  return out;
}

StepResult solve_tr_step(const Vector& g, const Operator& B,
                         const TrustRegion& tr, double tau, int cg_max) {
  return solve_tr_step(g, B, tr, cauchy_point(g, B, tr), tau, cg_max);
}

}  // namespace offo
