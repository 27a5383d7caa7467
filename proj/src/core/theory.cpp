#include "offo/theory.hpp"
#include "offo/sharpness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace offo {

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::MuLtHalf: return "mu_lt_half";
    case Regime::MuEqHalf: return "mu_eq_half";
    case Regime::MuGtHalf: return "mu_gt_half";
    case Regime::Ming: return "ming";
  }
  return "unknown";
}

Regime regime_for(const ScalingStrategy& s) {
  if (s.is_maxg()) return Regime::Ming;
  if (s.mu < 0.5) return Regime::MuLtHalf;
  if (s.mu > 0.5) return Regime::MuGtHalf;
  return Regime::MuEqHalf;
}

double TheoryConstants::kappa_circ(Regime regime) const {
  switch (regime) {
    case Regime::MuLtHalf: return k3;
    case Regime::MuEqHalf: return k6;
    case Regime::MuGtHalf: return k7;
    case Regime::Ming: return 0.0;
  }
  return 0.0;
}

TheoryConstants theory_constants(const TheoryInputs& in, Regime regime) {
  require(in.n >= 1 && in.mu > 0.0 && in.mu < 1.0 && in.varsigma > 0.0 &&
              in.vartheta > 0.0 && in.vartheta <= 1.0 && in.tau > 0.0 &&
              in.kappa_B >= 1.0 && in.L >= 0.0 && in.kappa_g > 0.0 &&
              in.Gamma0 >= 0.0,
          ErrorCode::MissingConstants, "theory: incomplete or invalid inputs");
  TheoryConstants c;
  c.in = in;
  const double n = in.n, mu = in.mu, vs = in.varsigma, vt = in.vartheta;
  const double kB = in.kappa_B, L = in.L, tau = in.tau, G0 = in.Gamma0;
  const double kBBL = kB * (kB + L);
  c.k1 = std::pow(in.kappa_g, 2.0 * mu) * kB / (tau * std::pow(vs, mu) * std::sqrt(vt));
  c.k2 = n * c.k1 * (kB + L) / vt;
  c.k4 = 2.0 * c.k1 * G0;
  switch (regime) {
    case Regime::MuLtHalf: {
      const double a = std::pow(
          4.0 * n * kBBL / ((1.0 - 2.0 * mu) * tau * std::pow(vs, mu) * std::pow(vt, 1.5)),
          1.0 / mu);
      const double b = std::pow(
          std::pow(2.0, 2.0 * mu) * vt * (1.0 - 2.0 * mu) * G0 / (n * (kB + L)),
          1.0 / (1.0 - 2.0 * mu));
      c.k3 = std::max({vs, a, b});
      c.k5 = c.k2 / (1.0 - 2.0 * mu) *
             (std::pow(vs + in.kappa_g * in.kappa_g, 1.0 - 2.0 * mu) -
              std::pow(vs, 1.0 - 2.0 * mu));
      break;
    }
    case Regime::MuEqHalf: {
      const double big = 8.0 * n * kBBL / (tau * std::sqrt(vs) * std::pow(vt, 1.5));
      const double y = -1.0 / big;
      c.lambert = lambert_wm1(y);
      c.lambert_residual = std::abs(c.lambert * std::exp(c.lambert) - y) / std::abs(y);
      c.k6 = std::max({vs, 0.5 * std::exp(2.0 * G0 * vt / (n * (kB + L))),
                       0.5 * big * big * c.lambert * c.lambert});
      break;
    }
    case Regime::MuGtHalf: {
      const double inner =
          G0 + n * (kB + L) * std::pow(vs, 1.0 - 2.0 * mu) / (2.0 * vt * (2.0 * mu - 1.0));
      c.k7 = std::pow(std::pow(2.0, 1.0 + mu) * kB / (tau * std::pow(vs, mu) * std::sqrt(vt)) * inner,
                      1.0 / (1.0 - mu));
      c.k8 = c.k4 + c.k2 * std::pow(vs, 1.0 - 2.0 * mu) / (2.0 * mu - 1.0);
      break;
    }
    case Regime::Ming: {
      c.varsigma_min = vs;
      c.theta = tau * vs / 2.0;
      c.j_theta = std::pow(kBBL / (vs * (tau * vs - c.theta)), 1.0 / in.nu);
      c.k_diamond = 2.0 * in.kappa_g * kB / c.theta *
                    (G0 + n * (c.j_theta + 1.0) * in.kappa_g * in.kappa_g * (kB + L) /
                              (2.0 * vs * vs));
      break;
    }
  }
  return c;
}

TheoryReport theory_check(const RunRecord& record, const TheoryConstants& c,
                          Regime regime) {
  require(record.trace.has_value(), ErrorCode::MissingConstants,
          "theory_check: the run carries no trace");
  TheoryReport rep;
  rep.regime = regime;
  rep.kappa_circ = c.kappa_circ(regime);
  rep.j_theta = c.j_theta;
  const auto& gn = record.trace->gnorm;
  const double mu = c.in.mu;
  double min_g = std::numeric_limits<double>::infinity();
  double sum_sq = 0.0;
  double tail_sq = 0.0;  // sum over j > j_theta
  for (std::size_t j = 0; j < gn.size(); ++j) {
    const double k1 = static_cast<double>(j) + 1.0;  // k + 1
    min_g = std::min(min_g, gn[j]);
    sum_sq += gn[j] * gn[j];
    ++rep.checked;
    if (regime == Regime::Ming) {
      if (static_cast<double>(j) > c.j_theta) {
        tail_sq += gn[j] * gn[j];
        ++rep.ming_applicable;
        const double avg = tail_sq / static_cast<double>(rep.ming_applicable);
        const double bound = c.k_diamond * std::pow(k1, mu) / (static_cast<double>(j) - c.j_theta);
        if (!(avg <= bound)) ++rep.ming_violations;
      }
      continue;
    }
    const double kc = rep.kappa_circ;
    const double ratio = min_g * std::sqrt(k1) / kc;
    rep.worst_korder_ratio = std::max(rep.worst_korder_ratio, ratio);
    if (!(ratio <= 1.0)) ++rep.korder_violations;
    const double avg = sum_sq / k1;
    if (!(avg <= kc / k1)) ++rep.average_violations;
    double second = 0.0;
    switch (regime) {
      case Regime::MuLtHalf:
        second = c.k4 / std::pow(k1, 1.0 - mu) + c.k5 / std::pow(k1, mu);
        break;
      case Regime::MuEqHalf:
        second = (c.k4 + c.k2 * std::log(1.0 + k1 * c.in.kappa_g * c.in.kappa_g /
                                                   c.in.varsigma)) / std::sqrt(k1);
        break;
      case Regime::MuGtHalf:
        second = c.k8 / std::pow(k1, 1.0 - mu);
        break;
      case Regime::Ming: break;
    }
    if (!(avg <= second)) ++rep.second_term_violations;
  }
  return rep;
}

Problem quadratic_testbed(int n, std::uint64_t seed) {
  require(n >= 1, ErrorCode::InvalidParameter, "testbed: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam(0.1, 1.0), start(-1.0, 1.0);
  Vector lambda(n), x0(n);
  for (int i = 0; i < n; ++i) lambda[i] = lam(rng);
  for (int i = 0; i < n; ++i) x0[i] = start(rng);
  lambda[0] = 1.0;  // L = 1 exactly
  if (x0[0] == 0.0) x0[0] = 1.0;
  return make_diagonal_quadratic(lambda, x0, "testbed" + std::to_string(n));
}

TheoryInputs testbed_inputs(const Problem& testbed, const RunRecord& record,
                            const RunConfig& config) {
  require(record.trace.has_value() && !record.trace->g.empty(),
          ErrorCode::MissingConstants, "testbed_inputs: run has no trace");
  const Trace& t = *record.trace;
  TheoryInputs in;
  in.n = testbed.n();
  in.mu = config.scaling.mu;
  in.nu = config.scaling.nu;
  in.varsigma = config.scaling.varsigma;
  in.vartheta = config.scaling.vartheta;
  in.tau = config.tau;
  double kB = 1.0;
  for (double b : t.model_norm) kB = std::max(kB, b);
  in.kappa_B = kB;
  in.L = testbed.hessian_at(testbed.x0).diagonal().cwiseAbs().maxCoeff();
  double kg2 = t.g.front().cwiseAbs2().maxCoeff() + in.varsigma;
  double gmax = 0.0;
  for (const auto& g : t.g) gmax = std::max(gmax, g.cwiseAbs().maxCoeff());
  in.kappa_g = std::max(std::sqrt(kg2), gmax);
  in.Gamma0 = testbed.value(testbed.x0);
  return in;
}

DecreaseReport check_decrease(const RunRecord& record, const RunConfig& config,
                              double kappa_B, double L, double slack) {
  require(record.trace.has_value(), ErrorCode::MissingConstants,
          "check_decrease: the run carries no trace");
  const Trace& t = *record.trace;
  require(t.f.size() == t.x.size(), ErrorCode::MissingConstants,
          "check_decrease: run was not instrumented");
  DecreaseReport rep;
  const double smin = config.scaling.floor(0);
  const double kB = std::max(1.0, kappa_B);
  double rhs = 0.0;
  for (std::size_t j = 0; j + 1 < t.f.size() && j < t.w.size(); ++j) {
    const Vector& g = t.g[j];
    const Vector& w = t.w[j];
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      rhs += g[i] * g[i] / (2.0 * kB * w[i]) * (config.tau * smin - kB * (kB + L) / w[i]);
    }
    const double lhs = t.f.front() - t.f[j + 1];
    ++rep.checked;
    const double gap = lhs - rhs;
    rep.worst_gap = std::min(rep.worst_gap, gap);
    if (!(gap >= -slack)) ++rep.violations;
  }
  return rep;
}

double empirical_lipschitz(const RunRecord& record) {
  require(record.trace.has_value(), ErrorCode::MissingConstants,
          "empirical_lipschitz: the run carries no trace");
  const Trace& t = *record.trace;
  double L = 0.0;
  for (std::size_t j = 0; j + 1 < t.g.size() && j < t.s.size(); ++j) {
    const double sn = t.s[j].norm();
    if (sn > 0.0) L = std::max(L, (t.g[j + 1] - t.g[j]).norm() / sn);
  }
  return L;
}

SeriesReport series_property_suite(long sequences, std::uint64_t seed,
                                   double rel_slack) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, 200);
  std::uniform_real_distribution<double> expo(-6.0, 3.0), unit(0.0, 1.0);
  SeriesReport rep;
  const auto holds = [&](double lhs, double rhs) {
    ++rep.checks;
    if (!(lhs <= rhs + rel_slack * std::abs(rhs))) ++rep.violations;
  };
  for (long q = 0; q < sequences; ++q) {
    ++rep.sequences;
    const double xi = (q % 2 == 0) ? 0.01 : 1.0;
    const int len = length(rng);
    double b = 0.0;
    double lo = 0.0, hi = 0.0, one = 0.0;  // partial sums for alpha 0.3, 1.7, 1
    for (int j = 0; j < len; ++j) {
      const double a = unit(rng) < 0.1 ? 0.0 : std::pow(10.0, expo(rng));
      b += a;
      lo += a / std::pow(xi + b, 0.3);
      hi += a / std::pow(xi + b, 1.7);
      one += a / (xi + b);
      const double ratio = std::log1p(b / xi);
      // ((xi+b)^(1-alpha) - xi^(1-alpha)) / (1-alpha), cancellation-free.
      const auto general = [&](double alpha) {
        return std::pow(xi, 1.0 - alpha) * std::expm1((1.0 - alpha) * ratio) / (1.0 - alpha);
      };
      holds(lo, general(0.3));
      holds(hi, general(1.7));
      holds(one, ratio);
      holds(lo, std::pow(xi + b, 0.7) / 0.7);
      holds(hi, std::pow(xi, -0.7) / 0.7);
    }
  }
  return rep;
}

namespace {

RunConfig testbed_config(const std::string& tag, long iterations) {
  RunConfig c = config_for_variant(tag);
  c.max_iter = iterations;
  c.eps = std::numeric_limits<double>::min();
  c.keep_trace = true;
  return c;
}

}  // namespace

std::string theory_suite_json(const TheorySuiteOptions& opt, long& violations) {
  using nlohmann::json;
  violations = 0;
  json doc;
  doc["version"] = 1;
  doc["iterations"] = opt.iterations;
  const std::vector<int> dims = {1, 5, 20};

  // Lambert W at the branch point and the sample points.
  {
    json lw;
    const double branch = lambert_wm1(-std::exp(-1.0));
    lw["branch_point"] = branch;
    const bool ok = branch == -1.0;
    if (!ok) ++violations;
    lw["branch_point_ok"] = ok;
    doc["lambert"] = lw;
  }

  {
    const SeriesReport s = series_property_suite(1000, opt.seed);
    violations += s.violations;
    doc["series"] = {{"sequences", s.sequences}, {"checks", s.checks},
                     {"violations", s.violations}};
  }

  json decrease = json::array();
  for (const char* tag : {"adag1", "adagi1", "adag2", "adagi2", "maxg01", "maxgi01"}) {
    for (int n : dims) {
      const Problem p = quadratic_testbed(n, opt.seed + n);
      RunConfig c = testbed_config(tag, opt.iterations);
      c.instrument = true;
      const RunRecord rec = astr1(p, c);
      const TheoryInputs in = testbed_inputs(p, rec, c);
      const double L = empirical_lipschitz(rec);
      const DecreaseReport d = check_decrease(rec, c, in.kappa_B, L);
      violations += d.violations + rec.violations.total();
      decrease.push_back({{"variant", tag},
                          {"n", n},
                          {"L", L},
                          {"checked", d.checked},
                          {"violations", d.violations},
                          {"worst_gap", d.worst_gap},
                          {"step_violations", rec.violations.total()}});
    }
  }
  doc["fdecrease"] = decrease;

  json bounds = json::array();
  const std::vector<std::pair<std::string, double>> cases = {
      {"adagi1", 0.25}, {"adagi1", 0.5}, {"adagi1", 0.75}, {"maxgi01", 0.1}};
  for (const auto& [tag, mu] : cases) {
    for (int n : dims) {
      const Problem p = quadratic_testbed(n, opt.seed + n);
      RunConfig c = testbed_config(tag, opt.iterations);
      c.scaling.mu = mu;
      const RunRecord rec = astr1(p, c);
      const Regime regime = regime_for(c.scaling);
      const TheoryConstants k = theory_constants(testbed_inputs(p, rec, c), regime);
      const TheoryReport r = theory_check(rec, k, regime);
      json entry = {{"variant", tag},
                    {"mu", mu},
                    {"n", n},
                    {"regime", to_string(regime)},
                    {"checked", r.checked}};
      if (regime == Regime::Ming) {
        entry["j_theta"] = r.j_theta;
        entry["kappa_diamond"] = k.k_diamond;
        entry["applicable"] = r.ming_applicable;
        entry["violations"] = r.ming_violations;
        violations += r.ming_violations;
      } else {
        entry["kappa_circ"] = r.kappa_circ;
        entry["worst_ratio"] = r.worst_korder_ratio;
        entry["violations"] = r.korder_violations;
        entry["average_violations"] = r.average_violations;
        entry["second_term_violations"] = r.second_term_violations;
        violations += r.korder_violations + r.average_violations;
        if (regime == Regime::MuEqHalf) {
          entry["lambert_wm1"] = k.lambert;
          entry["lambert_residual"] = k.lambert_residual;
          if (!(k.lambert_residual <= 1e-12)) ++violations;
        }
      }
      bounds.push_back(entry);
    }
  }
  doc["bounds"] = bounds;
  doc["violations"] = violations;
  return doc.dump(2);
}

}  // namespace offo
