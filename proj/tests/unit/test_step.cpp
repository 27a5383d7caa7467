#include "offo/step.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace offo;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Operator dense(const Matrix& B) {
  return [B](const Vector& v) -> Vector { return B * v; };
}

double q(const Vector& g, const Matrix& B, const Vector& s) {
  return g.dot(s) + 0.5 * s.dot(B * s);
}

Matrix random_symmetric(int n, std::mt19937_64& rng, double shift) {
  std::normal_distribution<double> normal;
  Matrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = normal(rng);
  return 0.5 * (M + M.transpose()) + shift * Matrix::Identity(n, n);
}

}  // namespace

TEST(Cauchy, CurvatureShortensStep) {
  const Vector g = vec({2.0});
  const TrustRegion tr = make_trust_region(Norm::Inf, g, vec({1.0}));
  const CauchyData c = cauchy_point(g, dense(Matrix::Constant(1, 1, 4.0)), tr);
  EXPECT_DOUBLE_EQ(c.sL[0], -2.0);
  EXPECT_DOUBLE_EQ(c.gamma, 0.25);
  EXPECT_DOUBLE_EQ(c.sQ[0], -0.5);
  EXPECT_DOUBLE_EQ(c.qdec, 0.5);
}

TEST(Cauchy, NegativeCurvatureKeepsFullStep) {
  const Vector g = vec({1.0, -3.0});
  const TrustRegion tr = make_trust_region(Norm::Inf, g, vec({2.0, 3.0}));
  const CauchyData c = cauchy_point(g, dense(-Matrix::Identity(2, 2)), tr);
  EXPECT_EQ(c.gamma, 1.0);
  EXPECT_DOUBLE_EQ(c.sQ[0], -0.5);
  EXPECT_DOUBLE_EQ(c.sQ[1], 1.0);
  EXPECT_DOUBLE_EQ(c.qdec, 3.5 + 0.5 * 1.25);
}

TEST(Cauchy, TwoNormPointsDownhill) {
  const Vector g = vec({3.0, 4.0});
  const TrustRegion tr = make_trust_region(Norm::Two, g, vec({1.0, 2.0}));
  EXPECT_DOUBLE_EQ(tr.radius, std::sqrt(13.0));
  const CauchyData c = cauchy_point(g, dense(Matrix::Zero(2, 2)), tr);
  EXPECT_LE(c.sL.norm(), tr.radius);
  EXPECT_NEAR(c.sL[0], -0.6 * std::sqrt(13.0), 1e-14);
  EXPECT_NEAR(c.sL[1], -0.8 * std::sqrt(13.0), 1e-14);
}

TEST(Step, ZeroModelGivesSignStep) {
  const Vector g = vec({1.0, -2.0, 0.0});
  const Vector w = vec({4.0, 1.0, 1.0});
  const TrustRegion tr = make_trust_region(Norm::Inf, g, w);
  const StepResult r = solve_tr_step(g, dense(Matrix::Zero(3, 3)), tr, 0.1, 15);
  EXPECT_EQ(r.s, vec({-0.25, 2.0, 0.0}));
}

TEST(Step, InteriorNewtonPoint) {
  const Vector g = vec({1.0, 1.0});
  const TrustRegion tr = make_trust_region(Norm::Inf, g, vec({0.1, 0.1}));
  const StepResult r = solve_tr_step(g, dense(Matrix::Identity(2, 2)), tr, 0.1, 10);
  EXPECT_NEAR(r.s[0], -1.0, 1e-12);
  EXPECT_NEAR(r.s[1], -1.0, 1e-12);
  EXPECT_FALSE(r.fallback);
}

TEST(Step, OneActiveFace) {
  const Vector g = vec({1.0, 1.0});
  const TrustRegion tr = make_trust_region(Norm::Inf, g, vec({2.0, 0.1}));
  const StepResult r = solve_tr_step(g, dense(Matrix::Identity(2, 2)), tr, 0.1, 10);
  EXPECT_DOUBLE_EQ(r.s[0], -0.5);
  EXPECT_NEAR(r.s[1], -1.0, 1e-12);
}

TEST(Step, TwoNormInteriorAndBoundary) {
  const Vector g = vec({1.0, 1.0});
  const Matrix B = Matrix::Identity(2, 2);
  StepResult r = solve_tr_step(g, dense(B), make_trust_region(Norm::Two, g, vec({0.1, 0.1})),
                               0.1, 10);
  EXPECT_NEAR((r.s - vec({-1.0, -1.0})).norm(), 0.0, 1e-12);
  const TrustRegion small = make_trust_region(Norm::Two, g, vec({10.0, 10.0}));
  r = solve_tr_step(g, dense(B), small, 0.1, 10);
  EXPECT_LE(r.s.norm(), small.radius);
  EXPECT_NEAR(r.s.norm(), small.radius, 1e-12);
}

TEST(Step, SeparableBoxMatchesClosedForm) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    Vector g(n), w(n), d(n), star(n);
    for (int i = 0; i < n; ++i) {
      g[i] = unif(rng) * 10.0;
      w[i] = std::pow(10.0, 1.5 * unif(rng));
      d[i] = (trial % 3 == 0 ? unif(rng) : 0.5 + std::abs(unif(rng))) * 4.0;
    }
    const TrustRegion tr = make_trust_region(Norm::Inf, g, w);
    for (int i = 0; i < n; ++i) {
      const double lo = -tr.radii[i], hi = tr.radii[i];
      if (d[i] > 0.0) {
        star[i] = std::clamp(-g[i] / d[i], lo, hi);
      } else {
        star[i] = g[i] > 0.0 ? lo : hi;
      }
    }
    const Matrix B = d.asDiagonal();
    const StepResult r = solve_tr_step(g, dense(B), tr, 0.1, 5 * n);
    const double q_star = q(g, B, star);
    EXPECT_LE(q(g, B, r.s) - q_star, 1e-8 * (1.0 + std::abs(q_star))) << trial;
    EXPECT_LE((r.s - star).cwiseAbs().maxCoeff(), 1e-4 * (1.0 + star.norm())) << trial;
  }
}

TEST(Step, ContractHoldsOnRandomModels) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + trial % 12;
    const Norm norm = trial % 2 ? Norm::Two : Norm::Inf;
    Vector g(n), w(n);
    for (int i = 0; i < n; ++i) {
      g[i] = normal(rng) * std::pow(10.0, normal(rng));
      w[i] = std::pow(10.0, normal(rng));
    }
    if (trial % 5 == 0) g[0] = 0.0;
    const Matrix B = random_symmetric(n, rng, trial % 3 - 1.0) * std::pow(10.0, normal(rng));
    const TrustRegion tr = make_trust_region(norm, g, w);
    const CauchyData c = cauchy_point(g, dense(B), tr);
    EXPECT_GE(c.qdec, 0.0);
    const StepResult r = solve_tr_step(g, dense(B), tr, c, 0.1, 5 * n);
    ASSERT_TRUE(r.s.allFinite());
    if (norm == Norm::Inf) {
      EXPECT_TRUE((r.s.cwiseAbs().array() <= tr.radii.array()).all()) << trial;
    } else {
      EXPECT_LE(r.s.norm(), tr.radius) << trial;
    }
    EXPECT_LE(r.q, 0.1 * q(g, B, c.sQ) + 1e-12 * std::abs(r.q)) << trial;
    EXPECT_NEAR(r.q, q(g, B, r.s), 1e-10 * (1.0 + std::abs(r.q)));
  }
}

TEST(Step, ClampToBall) {
  Vector s = vec({3.0, 4.0});
  clamp_to_ball(s, 1.0);
  EXPECT_LE(s.norm(), 1.0);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  clamp_to_ball(s, 0.0);
  EXPECT_EQ(s.norm(), 0.0);
}

TEST(Step, RejectsBadTau) {
  const Vector g = vec({1.0});
  const TrustRegion tr = make_trust_region(Norm::Inf, g, vec({1.0}));
  EXPECT_THROW(solve_tr_step(g, dense(Matrix::Zero(1, 1)), tr, 0.0, 5), Error);
  EXPECT_THROW(norm_from_tag("l1"), Error);
}
