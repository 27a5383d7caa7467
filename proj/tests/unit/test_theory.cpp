#include "offo/theory.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace offo;

namespace {

TheoryInputs sample_inputs(double mu) {
  TheoryInputs in;
  in.n = 3;
  in.mu = mu;
  in.varsigma = 0.01;
  in.vartheta = 1.0;
  in.tau = 0.1;
  in.kappa_B = 1.0;
  in.L = 1.0;
  in.kappa_g = 2.0;
  in.Gamma0 = 1.5;
  return in;
}

RunRecord synthetic(std::vector<double> gnorms) {
  RunRecord r;
  r.trace.emplace();
  r.trace->gnorm = std::move(gnorms);
  return r;
}

RunConfig testbed_run(const std::string& tag, long iters) {
  RunConfig c = config_for_variant(tag);
  c.max_iter = iters;
  c.eps = 1e-300;
  c.keep_trace = true;
  c.instrument = true;
  return c;
}

}  // namespace

// Reference values from arbitrary-precision evaluation of the closed forms.
TEST(Constants, MatchClosedForms) {
  const auto lt = theory_constants(sample_inputs(0.25), Regime::MuLtHalf);
  EXPECT_NEAR(lt.k3 / 5308416000000.0, 1.0, 1e-12);
  EXPECT_NEAR(lt.k5 / 1020.9878010474344, 1.0, 1e-12);
  EXPECT_EQ(lt.kappa_circ(Regime::MuLtHalf), lt.k3);

  const auto eq = theory_constants(sample_inputs(0.5), Regime::MuEqHalf);
  EXPECT_NEAR(eq.lambert, -10.861605319998592, 1e-12);
  EXPECT_NEAR(eq.k6 / 1359065895.8678981, 1.0, 1e-12);
  EXPECT_LE(eq.lambert_residual, 1e-12);

  const auto gt = theory_constants(sample_inputs(0.75), Regime::MuGtHalf);
  EXPECT_NEAR(gt.k7 / 1.831093128e19, 1.0, 1e-9);
  EXPECT_NEAR(gt.k8 / 110014.54449298965, 1.0, 1e-12);
}

TEST(Constants, MingThresholdIsFinite) {
  TheoryInputs in = sample_inputs(0.1);
  in.nu = 0.1;
  const auto c = theory_constants(in, Regime::Ming);
  EXPECT_DOUBLE_EQ(c.theta, 0.0005);
  EXPECT_TRUE(std::isfinite(c.j_theta));
  EXPECT_GT(c.j_theta, 1e40);
  EXPECT_GT(c.k_diamond, 0.0);
}

TEST(Constants, IncompleteInputsRejected) {
  TheoryInputs in = sample_inputs(0.5);
  in.kappa_g = 0.0;
  try {
    theory_constants(in, Regime::MuEqHalf);
    FAIL() << "expected MissingConstants";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingConstants);
  }
}

TEST(Check, FirstIterateAgainstKappa) {
  TheoryConstants c;
  c.k6 = 5.0;
  EXPECT_EQ(theory_check(synthetic({4.9}), c, Regime::MuEqHalf).korder_violations, 0);
  EXPECT_EQ(theory_check(synthetic({5.1}), c, Regime::MuEqHalf).korder_violations, 1);
}

TEST(Check, StalledGradientEventuallyViolates) {
  TheoryConstants c;
  c.k6 = 10.0;
  const TheoryReport r = theory_check(synthetic(std::vector<double>(200, 1.0)), c,
                                      Regime::MuEqHalf);
  // min ||g|| sqrt(k+1) = sqrt(k+1) exceeds 10 from k = 100 on.
  EXPECT_EQ(r.korder_violations, 100);
  EXPECT_DOUBLE_EQ(r.worst_korder_ratio, std::sqrt(200.0) / 10.0);
}

TEST(Testbed, DeterministicAndInRange) {
  const Problem a = quadratic_testbed(20, 3), b = quadratic_testbed(20, 3);
  EXPECT_EQ(a.x0, b.x0);
  const Vector lambda = a.hessian_at(a.x0).diagonal();
  EXPECT_EQ(lambda.maxCoeff(), 1.0);
  EXPECT_GE(lambda.minCoeff(), 0.1);
  EXPECT_LE(a.x0.cwiseAbs().maxCoeff(), 1.0);
}

TEST(Decrease, HoldsAlongTestbedRuns) {
  for (const char* tag : {"adagi1", "adag1", "maxgi01", "adagi2"}) {
    const Problem p = quadratic_testbed(5, 11);
    const RunConfig c = testbed_run(tag, 2000);
    const RunRecord rec = astr1(p, c);
    const double L = empirical_lipschitz(rec);
    EXPECT_LE(L, 1.0 + 1e-12) << tag;
    const DecreaseReport d = check_decrease(rec, c, 1.0, L);
    EXPECT_EQ(d.checked, 2000) << tag;
    EXPECT_EQ(d.violations, 0) << tag << " worst " << d.worst_gap;
  }
}

TEST(Decrease, NeedsInstrumentation) {
  RunConfig c = testbed_run("adagi1", 10);
  c.instrument = false;
  const RunRecord rec = astr1(quadratic_testbed(2, 1), c);
  EXPECT_THROW(check_decrease(rec, c, 1.0, 1.0), Error);
}

TEST(Bounds, AdagradRunsStayInsideKOrder) {
  for (double mu : {0.25, 0.5, 0.75}) {
    const Problem p = quadratic_testbed(5, 2);
    RunConfig c = testbed_run("adagi1", 3000);
    c.scaling.mu = mu;
    const RunRecord rec = astr1(p, c);
    const Regime regime = regime_for(c.scaling);
    const TheoryReport r =
        theory_check(rec, theory_constants(testbed_inputs(p, rec, c), regime), regime);
    EXPECT_EQ(r.checked, rec.iters + 1);
    EXPECT_EQ(r.korder_violations, 0) << mu;
    EXPECT_EQ(r.average_violations, 0) << mu;
    EXPECT_LT(r.worst_korder_ratio, 1.0);
  }
}

TEST(Series, RandomSequencesSatisfyAllBounds) {
  const SeriesReport r = series_property_suite(1000, 7);
  EXPECT_EQ(r.sequences, 1000);
  EXPECT_GT(r.checks, 1000 * 5);
  EXPECT_EQ(r.violations, 0);
}

TEST(Series, TightSlackStillPassesOtherSeeds) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    EXPECT_EQ(series_property_suite(300, seed, 1e-13).violations, 0) << seed;
  }
}
