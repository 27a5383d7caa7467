// Exercises the shared library through its C header only.
#include "offo/offo.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace {

struct ProblemHandle {
  offo_problem* p = nullptr;
  ~ProblemHandle() { offo_problem_free(p); }
};

struct RunHandle {
  offo_run* r = nullptr;
  ~RunHandle() { offo_run_free(r); }
};

}  // namespace

TEST(CApi, SuiteListing) {
  ASSERT_EQ(offo_suite_size(), 41u);
  EXPECT_STREQ(offo_suite_name(0), "argauss");
  EXPECT_EQ(offo_suite_name(1000), nullptr);
  char* json = nullptr;
  ASSERT_EQ(offo_suite_manifest(&json), OFFO_OK);
  EXPECT_NE(std::string(json).find("\"rosenbr\""), std::string::npos);
  offo_string_free(json);
}

TEST(CApi, EvaluateBeale) {
  ProblemHandle h;
  ASSERT_EQ(offo_problem_load("beale", &h.p), OFFO_OK);
  ASSERT_EQ(offo_problem_dim(h.p), 2u);
  EXPECT_STREQ(offo_problem_name(h.p), "beale");
  const double x[2] = {1.0, 1.0};
  double f = 0.0, g[2] = {0, 0}, H[4] = {0, 0, 0, 0};
  ASSERT_EQ(offo_problem_evaluate(h.p, x, 2, OFFO_WANT_VALUE | OFFO_WANT_GRADIENT |
                                                 OFFO_WANT_HESSIAN,
                                  0, &f, g, H),
            OFFO_OK);
  EXPECT_DOUBLE_EQ(f, 14.203125);
  EXPECT_DOUBLE_EQ(g[1], 27.75);
  EXPECT_NEAR(H[1], H[2], 1e-9);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  offo_problem* p = nullptr;
  EXPECT_EQ(offo_problem_load("nosuch", &p), OFFO_ERR_UNKNOWN_PROBLEM);
  EXPECT_EQ(p, nullptr);
  EXPECT_NE(std::string(offo_last_error()).find("nosuch"), std::string::npos);
  EXPECT_STREQ(offo_status_string(OFFO_ERR_UNKNOWN_PROBLEM), "UnknownProblem");

  ProblemHandle h;
  ASSERT_EQ(offo_problem_load("beale", &h.p), OFFO_OK);
  const double x[3] = {0, 0, 0};
  double f = 0.0;
  EXPECT_EQ(offo_problem_evaluate(h.p, x, 3, OFFO_WANT_VALUE, 0, &f, nullptr, nullptr),
            OFFO_ERR_DIMENSION_MISMATCH);
  EXPECT_EQ(offo_problem_set_noise(h.p, -1.0, 0), OFFO_ERR_INVALID_PARAMETER);
  EXPECT_EQ(offo_problem_load(nullptr, &p), OFFO_ERR_INVALID_PARAMETER);

  double w = 0.0;
  EXPECT_EQ(offo_lambert_wm1(0.5, &w), OFFO_ERR_OUT_OF_DOMAIN);
}

TEST(CApi, NoiseIsReproducible) {
  ProblemHandle h;
  ASSERT_EQ(offo_problem_load("rosenbr", &h.p), OFFO_OK);
  std::vector<double> x(10);
  ASSERT_EQ(offo_problem_x0(h.p, x.data(), x.size()), OFFO_OK);
  ASSERT_EQ(offo_problem_set_noise(h.p, 0.1, 9), OFFO_OK);
  std::vector<double> g1(10), g2(10), g3(10);
  offo_problem_evaluate(h.p, x.data(), 10, OFFO_WANT_GRADIENT, 4, nullptr, g1.data(), nullptr);
  offo_problem_evaluate(h.p, x.data(), 10, OFFO_WANT_GRADIENT, 4, nullptr, g2.data(), nullptr);
  offo_problem_evaluate(h.p, x.data(), 10, OFFO_WANT_GRADIENT, 5, nullptr, g3.data(), nullptr);
  EXPECT_EQ(g1, g2);
  EXPECT_NE(g1, g3);
}

TEST(CApi, SolveRosenbrock) {
  ProblemHandle h;
  ASSERT_EQ(offo_problem_load("rosenbr", &h.p), OFFO_OK);
  offo_run_options o;
  offo_run_options_default(&o);
  o.variant = "Eadagi1";
  RunHandle r;
  ASSERT_EQ(offo_solve(h.p, &o, &r.r), OFFO_OK) << offo_last_error();
  EXPECT_STREQ(offo_run_status(r.r), "converged");
  EXPECT_LE(offo_run_final_gnorm(r.r), 1e-6);
  EXPECT_NEAR(offo_run_final_f(r.r), 0.0, 1e-10);
  EXPECT_EQ(offo_run_value_calls(r.r), 0);
  EXPECT_EQ(offo_run_violations(r.r), 0);
  std::vector<double> x(10);
  ASSERT_EQ(offo_run_x(r.r, x.data(), 10), OFFO_OK);
  EXPECT_NEAR(x[9], 1.0, 1e-5);
  char* json = nullptr;
  ASSERT_EQ(offo_run_json(r.r, 0, &json), OFFO_OK);
  EXPECT_NE(std::string(json).find("\"variant\": \"Eadagi1\""), std::string::npos);
  offo_string_free(json);
}

TEST(CApi, SolveRejectsUnknownVariant) {
  ProblemHandle h;
  ASSERT_EQ(offo_problem_load("beale", &h.p), OFFO_OK);
  offo_run_options o;
  offo_run_options_default(&o);
  o.variant = "adam";
  offo_run* r = nullptr;
  EXPECT_EQ(offo_solve(h.p, &o, &r), OFFO_ERR_INVALID_PARAMETER);
  EXPECT_EQ(r, nullptr);
}

TEST(CApi, SmallBench) {
  offo_bench_options o;
  offo_bench_options_default(&o);
  o.suite = "beale,helix";
  o.variants = "adagi1,sdba";
  o.noise_levels = "0";
  o.max_iter = 5000;
  o.threads = 1;
  offo_bench* b = nullptr;
  ASSERT_EQ(offo_bench_run(&o, &b), OFFO_OK) << offo_last_error();
  EXPECT_EQ(offo_bench_cells(b), 4u);
  EXPECT_EQ(offo_bench_violations(b), 0);
  double pi = -1.0, rho = -1.0;
  ASSERT_EQ(offo_bench_stat(b, "adagi1", 0.0, &pi, &rho), OFFO_OK);
  EXPECT_GE(pi, 0.0);
  EXPECT_LE(pi, 0.98);
  EXPECT_GE(rho, 0.0);
  EXPECT_EQ(offo_bench_stat(b, "maxg01", 0.0, &pi, &rho), OFFO_ERR_EMPTY_RESULTS);
  EXPECT_EQ(offo_bench_write_results(b, "/nonexistent-dir/x.csv"), OFFO_ERR_IO);
  offo_bench_free(b);
}

TEST(CApi, SharpnessAndSpecialFunctions) {
  offo_sharpness_options o;
  offo_sharpness_options_default(&o);
  o.iters = 200;
  offo_sharpness_report rep{};
  ASSERT_EQ(offo_sharpness(&o, &rep), OFFO_OK) << offo_last_error();
  EXPECT_EQ(rep.hermite_ok, 1);
  EXPECT_EQ(rep.compared, 201);
  EXPECT_LE(rep.max_gradient_deviation, 1e-9);
  o.kind = "sharp2";
  o.omega = 0.1;
  EXPECT_EQ(offo_sharpness(&o, &rep), OFFO_ERR_INVALID_PARAMETER);

  double w = 0.0, z = 0.0;
  ASSERT_EQ(offo_lambert_wm1(-std::exp(-1.0), &w), OFFO_OK);
  EXPECT_EQ(w, -1.0);
  ASSERT_EQ(offo_zeta(2.0, &z), OFFO_OK);
  EXPECT_NEAR(z, M_PI * M_PI / 6.0, 1e-15);
}
