#include "offo/problem.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace offo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::UnknownProblem: return "UnknownProblem";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::MissingReference: return "MissingReference";
    case ErrorCode::MissingConstants: return "MissingConstants";
    case ErrorCode::EmptyResults: return "EmptyResults";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

const char* to_string(RefProvenance provenance) {
  return provenance == RefProvenance::Literature ? "literature"
                                                 : "reference-run";
}

Matrix fd_hessian(const std::function<Vector(const Vector&)>& gradient,
                  const Vector& x) {
  const auto n = x.size();
  // Truncation is O(h^4), so a step well above sqrt(eps) keeps rounding in
  // g / h small without resolving away oscillatory terms.
  const double step = 1e-4;
  Matrix H(n, n);
  Vector xp = x;
  const auto at = [&](Eigen::Index i, double t) {
    xp[i] = x[i] + t;
    Vector g = gradient(xp);
    xp[i] = x[i];
    return g;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = step * (1.0 + std::abs(x[i]));
    H.col(i) = (8.0 * (at(i, h) - at(i, -h)) - (at(i, 2 * h) - at(i, -2 * h))) /
               (12.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

Matrix Problem::hessian_at(const Vector& x) const {
  return hessian ? hessian(x) : fd_hessian(gradient, x);
}

Evaluation evaluate(const Problem& problem, const Vector& x, Want want) {
  require(want.any(), ErrorCode::InvalidParameter,
          "evaluate: no quantity requested");
  require(x.size() == problem.n(), ErrorCode::DimensionMismatch,
          "evaluate: x has length " + std::to_string(x.size()) + ", problem " +
              problem.name + " has n=" + std::to_string(problem.n()));
  Evaluation out;
  if (want.value) {
    const double f = problem.value(x);
    require(std::isfinite(f), ErrorCode::NonFiniteValue,
            problem.name + ": non-finite objective value");
    out.f = f;
  }
  if (want.gradient) {
    Vector g = problem.gradient(x);
    require(g.size() == problem.n(), ErrorCode::DimensionMismatch,
            problem.name + ": gradient oracle returned wrong length");
    require(g.allFinite(), ErrorCode::NonFiniteValue,
            problem.name + ": non-finite gradient");
    out.g = std::move(g);
  }
  if (want.hessian) {
    Matrix H = problem.hessian_at(x);
    require(H.rows() == problem.n() && H.cols() == problem.n(),
            ErrorCode::DimensionMismatch,
            problem.name + ": Hessian oracle returned wrong shape");
    require(H.allFinite(), ErrorCode::NonFiniteValue,
            problem.name + ": non-finite Hessian");
    out.H = std::move(H);
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t query,
                      std::uint64_t component) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ query);
  h = splitmix64(h ^ component);
  const double u1 = to_unit(h);
  const double u2 = to_unit(splitmix64(h));
  // Box-Muller; 1 - u1 lies in (0, 1].
  return std::sqrt(-2.0 * std::log(1.0 - u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

NoisyProblem::NoisyProblem(Problem base, double level, std::uint64_t seed)
    : base_(std::move(base)), level_(level), seed_(seed) {
  require(level >= 0.0 && std::isfinite(level), ErrorCode::InvalidParameter,
          "noise level must be finite and >= 0");
}

Evaluation NoisyProblem::evaluate(const Vector& x, Want want,
                                  std::uint64_t query) const {
  Evaluation out = offo::evaluate(base_, x, want);
  if (level_ == 0.0) return out;
  const auto factor = [&](std::uint64_t component) {
    return 1.0 + level_ * counter_normal(seed_, query, component);
  };
  const auto n = static_cast<std::uint64_t>(base_.n());
  if (out.f) *out.f *= factor(0);
  if (out.g) {
    for (std::uint64_t i = 0; i < n; ++i) (*out.g)[i] *= factor(1 + i);
  }
  if (out.H) {
    Matrix& H = *out.H;
    for (std::uint64_t j = 0; j < n; ++j) {
      for (std::uint64_t i = 0; i <= j; ++i) {
        const double xi = factor(1 + n + j * (j + 1) / 2 + i);
        H(i, j) *= xi;
        if (i != j) H(j, i) *= xi;
      }
    }
  }
  return out;
}

NoisyProblem with_noise(Problem problem, double level, std::uint64_t seed) {
  return NoisyProblem(std::move(problem), level, seed);
}

Problem make_diagonal_quadratic(const Vector& lambda, const Vector& x0,
                                std::string name) {
  require(lambda.size() == x0.size() && lambda.size() > 0,
          ErrorCode::DimensionMismatch,
          "make_diagonal_quadratic: lambda and x0 differ in length");
  Problem p;
  p.name = std::move(name);
  p.x0 = x0;
  p.f_ref = 0.0;
  p.value = [lambda](const Vector& x) {
    return 0.5 * (lambda.array() * x.array().square()).sum();
  };
  p.gradient = [lambda](const Vector& x) -> Vector {
    return lambda.array() * x.array();
  };
  p.hessian = [lambda](const Vector&) -> Matrix {
    return lambda.asDiagonal();
  };
  return p;
}

std::string suite_manifest_json(const std::vector<Problem>& problems) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["problems"] = nlohmann::json::array();
  for (const auto& p : problems) {
    nlohmann::json entry;
    entry["name"] = p.name;
    entry["n"] = p.n();
    entry["x0"] = std::vector<double>(p.x0.data(), p.x0.data() + p.x0.size());
    if (p.f_ref) {
      entry["f_ref"] = *p.f_ref;
    } else {
      entry["f_ref"] = nullptr;
    }
    entry["provenance"] = to_string(p.provenance);
    doc["problems"].push_back(std::move(entry));
  }
  return doc.dump(2);
}

}  // namespace offo
