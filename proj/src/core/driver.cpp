#include "offo/driver.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>

namespace offo {

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::BudgetExhausted: return "budget-exhausted";
    case RunStatus::OverflowFailure: return "overflow-failure";
    case RunStatus::LinesearchFailure: return "linesearch-failure";
  }
  return "unknown";
}

const std::vector<std::string>& variant_tags() {
  static const std::vector<std::string> tags = {
      "adag1",  "adagi1",   "adag2",     "adagi2",  "maxg01",
      "maxgi01", "sdba",    "b1adagi1",  "lmadagi3b", "Eadagi1"};
  return tags;
}

RunConfig config_for_variant(const std::string& tag) {
  RunConfig c;
  c.variant = tag;
  if (tag == "sdba") return c;
  c.scaling = strategy_for_tag(tag);
  c.norm = c.scaling.aggregate() ? Norm::Two : Norm::Inf;
  if (tag == "b1adagi1") c.model = ModelKind::BB;
  if (tag == "lmadagi3b") c.model = ModelKind::LBFGS;
  if (tag == "Eadagi1") c.model = ModelKind::Exact;
  return c;
}

void validate(const RunConfig& c) {
  require(c.eps > 0.0, ErrorCode::InvalidParameter, "eps must be > 0");
  require(c.max_iter >= 1, ErrorCode::InvalidParameter, "max_iter must be >= 1");
  require(c.tau > 0.0 && c.tau <= 1.0, ErrorCode::InvalidParameter,
          "tau must lie in (0,1]");
  require(c.noise >= 0.0 && std::isfinite(c.noise), ErrorCode::InvalidParameter,
          "noise level must be finite and >= 0");
  require(c.cg_max >= 0, ErrorCode::InvalidParameter, "cg_max must be >= 0");
  if (c.variant == "sdba") {
    require(c.armijo_c > 0.0 && c.armijo_c < 1.0, ErrorCode::InvalidParameter,
            "armijo constant must lie in (0,1)");
    require(c.backtrack > 0.0 && c.backtrack < 1.0,
            ErrorCode::InvalidParameter, "backtrack factor must lie in (0,1)");
  } else {
    validate(c.scaling);
  }
}

namespace {

void start_record(RunRecord& rec, const Problem& problem,
                  const RunConfig& config) {
  rec.problem = problem.name;
  rec.variant = config.variant;
  rec.x = problem.x0;
  if (config.keep_trace) rec.trace.emplace();
}

}  // namespace

RunRecord astr1(const Problem& problem, const RunConfig& config) {
  validate(config);
  require(problem.n() > 0, ErrorCode::InvalidParameter, "empty problem");
  const int n = problem.n();
  const NoisyProblem oracle(problem, config.noise, config.seed);
  const bool exact = config.model == ModelKind::Exact;
  const int cg_max = config.cg_max > 0 ? config.cg_max : 5 * n;

  RunRecord rec;
  start_record(rec, problem, config);
  ScalingState scaling = init_scaling(config.scaling, n);
  HessianModel model(config.model, n, config.kappa_B);
  const Operator B = as_operator(model);

  Vector& x = rec.x;
  Vector g_prev, s_prev;
  std::uint64_t query = 0;
  for (long k = 0;; ++k) {
    Evaluation ev;
    const std::uint64_t q = query++;
    try {
      ev = oracle.evaluate(x, Want{false, true, exact}, q);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonFiniteValue) throw;
      rec.status = RunStatus::OverflowFailure;
      rec.message = e.what();
      rec.iters = k;
      return rec;
    }
    rec.evals = k + 1;
    ++rec.gradient_calls;
    if (ev.H) ++rec.hessian_calls;
    if (config.instrument) {
      // Same query index, so the value shares the draw it would have had if
      // requested together with the gradient.
      try {
        ev.f = oracle.evaluate(x, Want::f(), q).f;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonFiniteValue) throw;
        ev.f = std::numeric_limits<double>::quiet_NaN();
      }
      ++rec.value_calls;
    }
    const Vector& g = *ev.g;
    if (k > 0) model.update(s_prev, g - g_prev);
    if (exact) model.set_matrix(*ev.H);

    const double gnorm = g.norm();
    rec.final_gnorm = gnorm;
    rec.iters = k;
    if (rec.trace) {
      rec.trace->x.push_back(x);
      rec.trace->g.push_back(g);
      rec.trace->gnorm.push_back(gnorm);
      if (ev.f) rec.trace->f.push_back(*ev.f);
    }
    if (gnorm <= config.eps) {
      rec.status = RunStatus::Converged;
      return rec;
    }
    if (k >= config.max_iter) {
      rec.status = RunStatus::BudgetExhausted;
      return rec;
    }

    const Vector w = update_scaling(scaling, g, k);
    const TrustRegion tr = make_trust_region(config.norm, g, w);
    const CauchyData cauchy = cauchy_point(g, B, tr);
    const StepResult step = solve_tr_step(g, B, tr, cauchy, config.tau, cg_max);
    const Vector& s = step.s;

    const double q_step = model_value(g, s, B(s));
    const double q_cauchy = model_value(g, cauchy.sQ, B(cauchy.sQ));
    if (config.assertions) {
      bool inside = true;
      if (config.norm == Norm::Inf) {
        for (int i = 0; i < n; ++i) inside = inside && std::abs(s[i]) <= tr.radii[i];
      } else {
        inside = s.norm() <= tr.radius;
      }
      if (!inside) ++rec.violations.step_bound;
      if (!(q_step <= config.tau * q_cauchy)) ++rec.violations.cauchy_fraction;
      if (!(w.minCoeff() >= config.scaling.floor(k))) ++rec.violations.scaling_floor;
    }
    if (rec.trace) {
      rec.trace->w.push_back(w);
      rec.trace->radii.push_back(config.norm == Norm::Inf
                                     ? tr.radii
                                     : Vector::Constant(1, tr.radius));
      rec.trace->s.push_back(s);
      rec.trace->q_step.push_back(q_step);
      rec.trace->q_cauchy.push_back(q_cauchy);
      rec.trace->model_norm.push_back(model.norm());
    }

    x += s;
    g_prev = g;
    s_prev = s;
  }
}

RunRecord sdba(const Problem& problem, const RunConfig& config) {
  validate(config);
  require(problem.n() > 0, ErrorCode::InvalidParameter, "empty problem");
  const NoisyProblem oracle(problem, config.noise, config.seed);
  RunRecord rec;
  start_record(rec, problem, config);
  Vector& x = rec.x;
  std::uint64_t query = 0;

  const auto overflow = [&](const Error& e, long k) {
    if (e.code() != ErrorCode::NonFiniteValue) throw e;
    rec.status = RunStatus::OverflowFailure;
    rec.message = e.what();
    rec.iters = k;
  };

  double f = 0.0;
  Vector g;
  try {
    Evaluation ev = oracle.evaluate(x, Want::fg(), query++);
    f = *ev.f;
    g = *ev.g;
  } catch (const Error& e) {
    overflow(e, 0);
    return rec;
  }
  ++rec.value_calls;
  ++rec.gradient_calls;

  for (long k = 0;; ++k) {
    rec.evals = k + 1;
    rec.iters = k;
    const double gnorm = g.norm();
    rec.final_gnorm = gnorm;
    if (rec.trace) {
      rec.trace->x.push_back(x);
      rec.trace->g.push_back(g);
      rec.trace->gnorm.push_back(gnorm);
      rec.trace->f.push_back(f);
    }
    if (gnorm <= config.eps) {
      rec.status = RunStatus::Converged;
      return rec;
    }
    if (k >= config.max_iter) {
      rec.status = RunStatus::BudgetExhausted;
      return rec;
    }

    const double slope = gnorm * gnorm;
    double alpha = 1.0;
    bool accepted = false;
    Vector trial;
    double f_trial = 0.0;
    for (int t = 0; t <= config.max_backtracks; ++t) {
      trial = x - alpha * g;
      bool finite = true;
      try {
        f_trial = *oracle.evaluate(trial, Want::f(), query++).f;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonFiniteValue) throw;
        finite = false;
      }
      ++rec.value_calls;
      if (finite && f_trial <= f - config.armijo_c * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= config.backtrack;
    }
    if (!accepted) {
      rec.status = RunStatus::LinesearchFailure;
      return rec;
    }
    if (rec.trace) rec.trace->s.push_back(trial - x);
    x = trial;
    f = f_trial;
    try {
      g = *oracle.evaluate(x, Want::g(), query++).g;
    } catch (const Error& e) {
      overflow(e, k + 1);
      return rec;
    }
    ++rec.gradient_calls;
  }
}

RunRecord run(const Problem& problem, const RunConfig& config) {
  return config.variant == "sdba" ? sdba(problem, config)
                                  : astr1(problem, config);
}

void finalize(RunRecord& record, const Problem& problem) {
  const double f = problem.value(record.x);
  record.final_f = std::isfinite(f) ? std::optional<double>(f) : std::nullopt;
}

namespace {

nlohmann::json to_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::string run_record_json(const RunRecord& record, bool with_trace,
                            std::size_t max_points) {
  nlohmann::json doc;
  doc["problem"] = record.problem;
  doc["variant"] = record.variant;
  doc["status"] = to_string(record.status);
  doc["iters"] = record.iters;
  doc["final_gnorm"] = record.final_gnorm;
  doc["final_f"] = record.final_f ? nlohmann::json(*record.final_f)
                                  : nlohmann::json(nullptr);
  if (with_trace && record.trace) {
    const Trace& t = *record.trace;
    const std::size_t len = t.x.size();
    const std::size_t stride =
        max_points == 0 ? 1 : std::max<std::size_t>(1, (len + max_points - 1) / max_points);
    nlohmann::json tr;
    tr["k"] = nlohmann::json::array();
    tr["x"] = nlohmann::json::array();
    tr["g"] = nlohmann::json::array();
    tr["gnorm"] = nlohmann::json::array();
    for (std::size_t i = 0; i < len; i += stride) {
      tr["k"].push_back(i);
      tr["x"].push_back(to_json(t.x[i]));
      tr["g"].push_back(to_json(t.g[i]));
      tr["gnorm"].push_back(t.gnorm[i]);
      if (i < t.f.size()) tr["f"].push_back(t.f[i]);
      if (i < t.w.size()) tr["w"].push_back(to_json(t.w[i]));
      if (i < t.radii.size()) tr["radii"].push_back(to_json(t.radii[i]));
      if (i < t.s.size()) tr["s"].push_back(to_json(t.s[i]));
      if (i < t.q_step.size()) tr["model_decrease"].push_back(-t.q_step[i]);
    }
    doc["trace"] = std::move(tr);
  }
  return doc.dump(2);
}

}  // namespace offo
