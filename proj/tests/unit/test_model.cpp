#include "offo/model.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace offo;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Textbook dense BFGS recursion from sigma * I.
Matrix dense_bfgs(double sigma, const std::vector<std::pair<Vector, Vector>>& pairs,
                  int n) {
  Matrix B = sigma * Matrix::Identity(n, n);
  for (const auto& [s, y] : pairs) {
    const Vector Bs = B * s;
    B += -(Bs * Bs.transpose()) / s.dot(Bs) + (y * y.transpose()) / y.dot(s);
  }
  return B;
}

// Secant pairs from a random SPD quadratic, so every y's > 0.
std::vector<std::pair<Vector, Vector>> spd_pairs(int n, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = normal(rng);
  const Matrix A = M * M.transpose() + Matrix::Identity(n, n);
  std::vector<std::pair<Vector, Vector>> out;
  for (int k = 0; k < count; ++k) {
    Vector s(n);
    for (int i = 0; i < n; ++i) s[i] = normal(rng);
    out.emplace_back(s, A * s);
  }
  return out;
}

}  // namespace

TEST(Model, EveryKindStartsAtZero) {
  for (ModelKind k : {ModelKind::Zero, ModelKind::BB, ModelKind::LBFGS,
                      ModelKind::Exact}) {
    const HessianModel m(k, 3);
    EXPECT_EQ(m.dense(), Matrix::Zero(3, 3)) << to_string(k);
    EXPECT_EQ(m.norm(), 0.0);
  }
}

TEST(Model, BarzilaiBorweinScalar) {
  HessianModel m(ModelKind::BB, 2);
  m.update(vec({1.0, 0.0}), vec({2.0, 0.0}));
  EXPECT_EQ(m.dense(), 0.5 * Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(m.norm(), 0.5);
}

TEST(Model, TinyCurvatureIsSkipped) {
  HessianModel bb(ModelKind::BB, 2), lb(ModelKind::LBFGS, 2);
  bb.update(vec({1.0, 0.0}), vec({1e-20, 5.0}));
  lb.update(vec({1.0, 0.0}), vec({1e-20, 5.0}));
  EXPECT_EQ(bb.dense(), Matrix::Zero(2, 2));
  EXPECT_EQ(lb.pair_count(), 0);
  lb.update(vec({1.0, 0.0}), vec({-1.0, 0.0}));
  EXPECT_EQ(lb.pair_count(), 0);
}

TEST(Model, LbfgsMatchesDenseRecursion) {
  const int n = 6;
  const auto pairs = spd_pairs(n, 5, 3);
  HessianModel m(ModelKind::LBFGS, n, 1e12, 3);
  for (const auto& [s, y] : pairs) m.update(s, y);
  ASSERT_EQ(m.pair_count(), 3);
  const std::vector<std::pair<Vector, Vector>> last(pairs.end() - 3, pairs.end());
  const double sigma = last.back().first.squaredNorm() /
                       last.back().second.dot(last.back().first);
  const Matrix ref = dense_bfgs(sigma, last, n);
  EXPECT_LE((m.dense() - ref).cwiseAbs().maxCoeff(), 1e-10 * ref.norm());
}

TEST(Model, LbfgsFixedBase) {
  const int n = 4;
  const auto pairs = spd_pairs(n, 2, 8);
  HessianModel m(ModelKind::LBFGS, n, 1e12, 3);
  m.fix_base(2.5);
  EXPECT_EQ(m.dense(), 2.5 * Matrix::Identity(n, n));
  for (const auto& [s, y] : pairs) m.update(s, y);
  const Matrix ref = dense_bfgs(2.5, pairs, n);
  EXPECT_LE((m.dense() - ref).cwiseAbs().maxCoeff(), 1e-10 * ref.norm());
}

TEST(Model, LbfgsSymmetricAndSecant) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const int n = 2 + seed % 7;
    const auto pairs = spd_pairs(n, 1 + seed % 4, seed);
    HessianModel m(ModelKind::LBFGS, n, 1e12, 3);
    for (const auto& [s, y] : pairs) m.update(s, y);
    const Matrix B = m.dense();
    EXPECT_LE((B - B.transpose()).cwiseAbs().maxCoeff(), 1e-10 * B.norm());
    const auto& [s, y] = pairs.back();
    EXPECT_LE((m.apply(s) - y).norm(), 1e-9 * y.norm()) << seed;
  }
}

TEST(Model, CapScalesDown) {
  HessianModel m(ModelKind::Exact, 2, 1e6);
  Matrix H = Matrix::Zero(2, 2);
  H(0, 0) = 2e6;
  H(1, 1) = -1.0;
  m.set_matrix(H);
  EXPECT_DOUBLE_EQ(m.norm(), 1e6);
  EXPECT_DOUBLE_EQ(m.cap_scale(), 0.5);
  EXPECT_DOUBLE_EQ(m.apply(vec({1.0, 1.0}))[0], 1e6);
  EXPECT_DOUBLE_EQ(m.apply(vec({1.0, 1.0}))[1], -0.5);

  HessianModel bb(ModelKind::BB, 1, 10.0);
  bb.update(vec({1.0}), vec({1e-3}));
  EXPECT_DOUBLE_EQ(bb.norm(), 10.0);
  EXPECT_DOUBLE_EQ(bb.apply(vec({1.0}))[0], 10.0);
}

TEST(Model, CapHoldsForRandomLbfgs) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const int n = 5;
    HessianModel m(ModelKind::LBFGS, n, 3.0, 3);
    for (const auto& [s, y] : spd_pairs(n, 4, seed)) m.update(s, y);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m.dense());
    EXPECT_LE(eig.eigenvalues().cwiseAbs().maxCoeff(), 3.0 * (1 + 1e-12));
  }
}

TEST(Model, ExactIsSymmetrized) {
  HessianModel m(ModelKind::Exact, 2);
  Matrix H(2, 2);
  H << 1.0, 2.0, 0.0, 3.0;
  m.set_matrix(H);
  EXPECT_EQ(m.dense()(0, 1), 1.0);
  EXPECT_EQ(m.dense()(1, 0), 1.0);
}

TEST(Model, ModelValue) {
  EXPECT_DOUBLE_EQ(model_value(vec({1.0, -2.0}), vec({0.5, 1.0}), vec({2.0, 0.0})),
                   -1.5 + 0.5);
}

TEST(Model, Tags) {
  EXPECT_EQ(model_kind_from_tag("none"), ModelKind::Zero);
  EXPECT_EQ(model_kind_from_tag("lbfgs3"), ModelKind::LBFGS);
  EXPECT_THROW(model_kind_from_tag("sr1"), Error);
  EXPECT_THROW(HessianModel(ModelKind::BB, 2, 0.5), Error);
}
