#include "offo/sharpness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>

namespace offo {

double riemann_zeta(double s) {
  require(s > 1.0 && std::isfinite(s), ErrorCode::OutOfDomain,
          "riemann_zeta: need s > 1");
  constexpr int N = 64;
  // B_{2j} / (2j)!
  static constexpr std::array<double, 7> b = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
      7.0 / 6.0 / 87178291200.0};
  const double Nd = N;
  double tail = std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
  double rising = s;  // s (s+1) ... (s+2j-2)
  double power = std::pow(Nd, -s - 1.0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    tail += b[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= Nd * Nd;
  }
  double sum = tail;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  return sum;
}

double lambert_wm1(double y) {
  const double branch = -std::exp(-1.0);
  require(std::isfinite(y) && y >= branch && y < 0.0, ErrorCode::OutOfDomain,
          "lambert_wm1: argument must lie in [-1/e, 0)");
  if (y == branch) return -1.0;
  // Solve h(w) = w + log(-w) - log(-y) = 0 on w < -1, where h is increasing.
  const double target = std::log(-y);
  const auto h = [&](double w) { return w + std::log(-w) - target; };
  double w;
  const double p2 = 2.0 * (1.0 + std::numbers::e * y);
  if (p2 < 0.5) {
    const double p = -std::sqrt(std::max(0.0, p2));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    const double l1 = std::log(-y);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  double lo = std::min(w, -1.0) - 1.0;  // h(lo) < 0 sought
  while (h(lo) >= 0.0) lo = 2.0 * lo - 1.0;
  double hi = -1.0;  // h(-1) >= 0 for y >= -1/e
  w = std::clamp(w, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double hw = h(w);
    if (hw < 0.0) lo = w; else hi = w;
    const double dh = 1.0 + 1.0 / w;
    double next = dh != 0.0 ? w - hw / dh : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == w || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(lo)) {
      w = next;
      break;
    }
    w = next;
  }
  return std::min(w, -1.0);
}

const char* to_string(SharpKind kind) {
  return kind == SharpKind::Sharp1 ? "sharp1" : "sharp2";
}

SharpKind sharp_kind_from_tag(const std::string& tag) {
  if (tag == "sharp1") return SharpKind::Sharp1;
  if (tag == "sharp2") return SharpKind::Sharp2;
  throw Error(ErrorCode::InvalidParameter, "unknown example kind '" + tag + "'");
}

KnotSequence build_counterexample(SharpKind kind, const SharpParams& p, long K) {
  require(K >= 2, ErrorCode::InvalidParameter, "need K >= 2");
  KnotSequence out;
  out.kind = kind;
  out.params = p;
  if (kind == SharpKind::Sharp1) {
    require(p.mu > 0.0 && p.mu < 1.0, ErrorCode::InvalidParameter,
            "sharp1: mu must lie in (0,1)");
    require(p.eta > 0.0 && p.eta <= 1.0, ErrorCode::InvalidParameter,
            "sharp1: eta must lie in (0,1]");
    require(p.varsigma > 0.0, ErrorCode::InvalidParameter,
            "sharp1: varsigma must be positive");
    out.first = 0;
    const double rate = 0.5 + p.eta;
    double x = 0.0;
    double f = 4.0 / std::pow(p.varsigma + 4.0, p.mu) + riemann_zeta(1.0 + 2.0 * p.eta);
    double acc = 0.0;
    for (long k = 0; k <= K; ++k) {
      const double g = k == 0 ? -2.0 : -std::pow(static_cast<double>(k), -rate);
      acc += g * g;
      const double s = std::abs(g) / std::pow(p.varsigma + acc, p.mu);
      out.x.push_back(x);
      out.f.push_back(f);
      out.g.push_back(g);
      out.s.push_back(s);
      x += s;
      f += g * s;
    }
    out.kappa_f = std::max({1.5 * std::pow(p.varsigma + 5.0, p.mu), out.f[0], 2.0});
  } else {
    require(p.nu > 0.0 && p.nu <= 1.0, ErrorCode::InvalidParameter,
            "sharp2: nu must lie in (0,1]");
    require(p.omega > 0.5 * (1.0 - p.nu) && p.omega <= 1.0,
            ErrorCode::InvalidParameter,
            "sharp2: omega must lie in ((1-nu)/2, 1]");
    out.first = 1;
    double x = 0.0;
    double f = riemann_zeta(2.0 * p.omega + p.nu);
    double running = p.varsigma;
    for (long k = 1; k <= K; ++k) {
      const double g = -std::pow(static_cast<double>(k), -p.omega);
      running = std::max(running, std::abs(g));
      const double w = std::pow(static_cast<double>(k), p.nu) * running;
      const double s = std::abs(g) / w;
      out.x.push_back(x);
      out.f.push_back(f);
      out.g.push_back(g);
      out.s.push_back(s);
      x += s;
      f += g * s;
    }
    out.kappa_f = p.omega;
  }
  return out;
}

HermiteCheck check_hermite(const KnotSequence& knots) {
  HermiteCheck c;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double s = knots.s[i];
    c.max_value_gap = std::max(
        c.max_value_gap,
        std::abs(knots.f[i + 1] - knots.f[i] - knots.g[i] * s) / (s * s));
    c.max_slope_gap = std::max(c.max_slope_gap,
                               std::abs(knots.g[i + 1] - knots.g[i]) / std::abs(s));
  }
  c.ok = c.max_value_gap <= knots.kappa_f && c.max_slope_gap <= knots.kappa_f;
  return c;
}

Interpolant::Interpolant(KnotSequence knots) : knots_(std::move(knots)) {
  require(knots_.size() >= 2, ErrorCode::InvalidParameter,
          "interpolant: need at least two knots");
  const std::size_t m = knots_.size() - 1;
  c2_.resize(m);
  c3_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double h = knots_.x[i + 1] - knots_.x[i];
    require(h > 0.0, ErrorCode::InvalidParameter,
            "interpolant: knots must be strictly increasing");
    const double secant = (knots_.f[i + 1] - knots_.f[i]) / h;
    c2_[i] = (3.0 * secant - 2.0 * knots_.g[i] - knots_.g[i + 1]) / h;
    c3_[i] = (knots_.g[i] + knots_.g[i + 1] - 2.0 * secant) / (h * h);
  }
}

HermitePoint Interpolant::eval(double x) const {
  const auto& xs = knots_.x;
  require(x >= xs.front(), ErrorCode::OutOfDomain,
          "interpolant: query left of the first knot");
  HermitePoint out;
  const std::size_t last = xs.size() - 1;
  if (x >= xs[last]) {
    out.f = knots_.f[last] + knots_.g[last] * (x - xs[last]);
    out.g = knots_.g[last];
    out.h = 0.0;
    return out;
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double t = x - xs[i];
  out.f = knots_.f[i] + t * (knots_.g[i] + t * (c2_[i] + t * c3_[i]));
  out.g = knots_.g[i] + t * (2.0 * c2_[i] + 3.0 * t * c3_[i]);
  out.h = 2.0 * c2_[i] + 6.0 * t * c3_[i];
  return out;
}

Problem Interpolant::as_problem() const {
  auto self = std::make_shared<Interpolant>(*this);
  Problem p;
  p.name = to_string(knots_.kind);
  p.x0 = Vector::Constant(1, knots_.x.front());
  p.f_ref = 0.0;
  p.value = [self](const Vector& x) { return self->eval(x[0]).f; };
  p.gradient = [self](const Vector& x) -> Vector {
    return Vector::Constant(1, self->eval(x[0]).g);
  };
  p.hessian = [self](const Vector& x) -> Matrix {
    return Matrix::Constant(1, 1, self->eval(x[0]).h);
  };
  return p;
}

Interpolant hermite_fn(const KnotSequence& knots) { return Interpolant(knots); }

RunConfig sharpness_config(const KnotSequence& knots) {
  RunConfig c = config_for_variant(knots.kind == SharpKind::Sharp1 ? "adagi1"
                                                                   : "maxgi01");
  if (knots.kind == SharpKind::Sharp1) {
    c.scaling.mu = knots.params.mu;
    c.scaling.varsigma = knots.params.varsigma;
    c.scaling.vartheta = 1.0;
  } else {
    c.scaling.nu = knots.params.nu;
    c.scaling.mu = std::max(c.scaling.mu, knots.params.nu);
    c.scaling.varsigma = knots.params.varsigma;
  }
  c.model = ModelKind::Zero;
  c.norm = Norm::Inf;
  c.eps = std::numeric_limits<double>::min();
  c.max_iter = static_cast<long>(knots.size()) - 1;
  c.keep_trace = true;
  return c;
}

SharpnessReport verify_sharpness(const KnotSequence& knots,
                                 const RunRecord& record,
                                 const RunConfig& config) {
  const RunConfig want = sharpness_config(knots);
  const bool same =
      config.variant != "sdba" && config.scaling.kind == want.scaling.kind &&
      config.model == ModelKind::Zero && config.norm == Norm::Inf &&
      config.scaling.vartheta == 1.0 &&
      (knots.kind == SharpKind::Sharp1
           ? config.scaling.mu == want.scaling.mu &&
                 config.scaling.varsigma == want.scaling.varsigma
           : config.scaling.nu == want.scaling.nu &&
                 config.scaling.varsigma <= 1.0);
  require(same, ErrorCode::ConfigMismatch,
          "verify_sharpness: run configuration does not reproduce " +
              std::string(to_string(knots.kind)));
  SharpnessReport rep;
  if (!record.trace) return rep;
  const Trace& t = *record.trace;
  const double rate = knots.kind == SharpKind::Sharp1 ? 0.5 + knots.params.eta
                                                      : knots.params.omega;
  const std::size_t m = std::min(knots.size(), t.x.size());
  for (std::size_t i = 0; i < m; ++i) {
    const double gk = knots.g[i];
    const double grun = t.g[i][0];
    rep.max_knot_deviation =
        std::max(rep.max_knot_deviation, std::abs(t.x[i][0] - knots.x[i]));
    rep.max_gradient_deviation =
        std::max(rep.max_gradient_deviation, std::abs(grun - gk) / std::abs(gk));
    const long k = knots.index(i);
    if (k >= 1) {
      const double scaled = std::abs(grun) * std::pow(static_cast<double>(k), rate);
      rep.max_decay_deviation = std::max(rep.max_decay_deviation, std::abs(scaled - 1.0));
    }
    ++rep.compared;
  }
  return rep;
}

SharpnessReport run_sharpness(const KnotSequence& knots) {
  const Interpolant fn(knots);
  const RunConfig config = sharpness_config(knots);
  const RunRecord rec = astr1(fn.as_problem(), config);
  return verify_sharpness(knots, rec, config);
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_knots_csv(const KnotSequence& knots, const std::string& path,
                     bool shift_f0) {
  std::ofstream out = open_csv(path);
  const double shift = shift_f0 ? 100.0 - knots.f.front() : 0.0;
  out << "k,x,f,g,s\n";
  for (std::size_t i = 0; i < knots.size(); ++i) {
    out << knots.index(i) << ',' << knots.x[i] << ',' << knots.f[i] + shift
        << ',' << knots.g[i] << ',' << knots.s[i] << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::Io, "write failed: '" + path + "'");
}

void write_grid_csv(const Interpolant& fn, int per_decade,
                    const std::string& path, bool shift_f0) {
  require(per_decade >= 1, ErrorCode::InvalidParameter,
          "grid: need at least one point per decade");
  const KnotSequence& kn = fn.knots();
  const double shift = shift_f0 ? 100.0 - kn.f.front() : 0.0;
  std::ofstream out = open_csv(path);
  out << "x,f,df,d2f\n";
  // Fractional knot positions u in [0, size-1], log-spaced in the knot index.
  const double span = static_cast<double>(kn.size() - 1);
  std::vector<double> us;
  for (int j = 0; j < per_decade; ++j) us.push_back(static_cast<double>(j) / per_decade);
  const double decades = std::log10(std::max(1.0, span));
  const long count = static_cast<long>(std::ceil(decades * per_decade));
  for (long j = 0; j <= count; ++j) {
    us.push_back(std::min(span, std::pow(10.0, static_cast<double>(j) / per_decade)));
  }
  double prev = -1.0;
  for (double u : us) {
    if (u <= prev) continue;
    prev = u;
    const std::size_t i = std::min(static_cast<std::size_t>(u), kn.size() - 1);
    const double x = i + 1 < kn.size() ? kn.x[i] + (u - i) * (kn.x[i + 1] - kn.x[i])
                                       : kn.x[i];
    const HermitePoint p = fn.eval(x);
    out << x << ',' << p.f + shift << ',' << p.g << ',' << p.h << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::Io, "write failed: '" + path + "'");
}

}  // namespace offo
