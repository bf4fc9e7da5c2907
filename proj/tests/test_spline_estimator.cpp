#include <doctest.h>

#include <cmath>
#include <random>

#include "schauder/spline_estimator.hpp"

using namespace schauder;

namespace {

SampleVector quadratic_F_samples(int level) {
  // F(t) = t^2 / 2, i.e. f(t) = t
  Eigen::VectorXd values((Eigen::Index(1) << level) + 1);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    double t = std::ldexp(double(i), -level);
    values[i] = 0.5 * t * t;
  }
  return SampleVector(level, std::move(values));
}

}  // namespace

TEST_CASE("estimate is exact for f(t) = t") {
  int n = 2;
  EstimateResult result = estimate(quadratic_F_samples(n + 1), 0.0);
  CHECK(result.n == n);
  CHECK_FALSE(result.truncated);
  CHECK(result.coeffs.at(-1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int m = 0; m <= n; ++m) {
    CHECK(result.coeffs.generation(m).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("estimate matches the Takagi closed form") {
  std::mt19937 rng(911);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    int M = 3 + trial * 4;
    Eigen::VectorXd c(M + 1);
    for (int m = 0; m <= M; ++m) c[m] = unif(rng) * std::exp2(-0.3 * m);
    TakagiSpec spec{c};
    int n = 2 + trial;
    SampleVector samples =
        sample_F(FunctionSpec::Takagi(spec), n + 1);
    EstimateResult result = estimate(samples, 0.0);
    CoeffSet expected = takagi_expected_estimate(spec, n);
    double scale = std::max(1.0, expected.flat().cwiseAbs().maxCoeff());
    CHECK((result.coeffs.flat() - expected.flat()).cwiseAbs().maxCoeff() <
          1e-10 * scale);
  }
}

TEST_CASE("only the final generation reacts to f0_hat") {
  int n = 4;
  SampleVector samples = sample_F(FunctionSpec::CosPi(), n + 1);
  EstimateResult base = estimate(samples, 0.0);
  double delta = 1.75;
  EstimateResult shifted = estimate(samples, delta);

  // generations -1..n-1 bit-identical
  Eigen::Index head = CoeffSet::flat_size(n - 1);
  CHECK(base.coeffs.flat().head(head) == shifted.coeffs.flat().head(head));

  // generation n shifts by -2^(n/2 + 2) * delta in every slot
  double shift = -std::exp2(0.5 * n + 2.0) * delta;
  for (Eigen::Index k = 0; k < (Eigen::Index(1) << n); ++k) {
    CHECK(shifted.coeffs.at(n, k) - base.coeffs.at(n, k) ==
          doctest::Approx(shift).epsilon(1e-12));
  }
  CHECK(base.f0_hat == 0.0);
  CHECK(shifted.f0_hat == delta);
}

TEST_CASE("truncate drops the unstable generation") {
  int n = 3;
  SampleVector samples = sample_F(FunctionSpec::CosPi(), n + 1);
  EstimateResult a = truncate(estimate(samples, 0.0));
  EstimateResult b = truncate(estimate(samples, 123.0));
  CHECK(a.truncated);
  CHECK(a.coeffs.max_generation() == n - 1);
  CHECK(a.coeffs.flat() == b.coeffs.flat());
  CHECK_THROWS_AS(truncate(a), ValidationError);
}

TEST_CASE("reconstruct_F interpolates the samples") {
  int n = 4;
  SampleVector samples = sample_F(FunctionSpec::CosPi(), n + 1);
  for (double f0 : {0.0, 1.0, -3.0}) {
    EstimateResult result = estimate(samples, f0);
    PiecewiseQuadraticFn Fhat = reconstruct_F(result, samples.values[0]);
    for (Eigen::Index i = 0; i < samples.values.size(); ++i) {
      double t = std::ldexp(double(i), -(n + 1));
      CHECK(std::abs(Fhat(t) - samples.values[i]) < 1e-9);
    }
  }
}

TEST_CASE("reconstruct_f tabulates the estimated slope") {
  int n = 3;
  EstimateResult result = estimate(quadratic_F_samples(n + 1), 0.0);
  PiecewiseLinearFn fhat = reconstruct_f(result);
  CHECK(fhat.level == n + 1);
  for (Eigen::Index i = 0; i < fhat.knot_values.size(); ++i) {
    double t = std::ldexp(double(i), -fhat.level);
    CHECK(fhat.knot_values[i] == doctest::Approx(t).epsilon(1e-12));
    CHECK(fhat(t) == doctest::Approx(t).epsilon(1e-12));
  }
  // linear interpolation between knots
  CHECK(fhat(0.3) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("coefficients only depend on their sample block") {
  int n = 4;
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd values((Eigen::Index(1) << (n + 1)) + 1);
  for (Eigen::Index i = 0; i < values.size(); ++i) values[i] = unif(rng);
  SampleVector samples(n + 1, values);
  EstimateResult base = estimate(samples, 0.5);

  // nudge one interior sample; perturbing y_j shifts every alternating
  // prefix sum S_i with i >= j by the same amount, and 2 S_b - S_a - S_c
  // cancels a common shift, so a head coefficient moves only when its
  // block [a, c] contains j
  Eigen::Index j = 3;  // inside (0, 2^(n+1))
  Eigen::VectorXd bumped = values;
  bumped[j] += 0.25;
  EstimateResult moved = estimate(SampleVector(n + 1, bumped), 0.5);

  auto near = [](double x, double y) {
    return std::abs(x - y) <= 1e-11 * std::max(1.0, std::abs(y));
  };
  bool any_inside_changed = false;
  for (int m = 0; m <= n - 1; ++m) {
    std::int64_t block = std::int64_t(1) << (n - m);  // L = 2^(n-m)
    for (std::int64_t k = 0; k < (std::int64_t(1) << m); ++k) {
      std::int64_t a = 2 * k * block, c = a + 2 * block;
      if (j < a || j > c) {
        CHECK(near(moved.coeffs.at(m, k), base.coeffs.at(m, k)));
      } else {
        any_inside_changed =
            any_inside_changed ||
            std::abs(moved.coeffs.at(m, k) - base.coeffs.at(m, k)) > 1e-6;
      }
    }
  }
  CHECK(any_inside_changed);
  // a final-generation entry k sees S_{2k} plus the two local increments,
  // so only samples beyond 2k + 2 leave it alone
  for (std::int64_t k = 0; k < (std::int64_t(1) << n); ++k) {
    if (j > 2 * k + 2) {
      CHECK(near(moved.coeffs.at(n, k), base.coeffs.at(n, k)));
    }
  }
}

TEST_CASE("estimate agrees with the dense linear solve") {
  SUBCASE("n = 1, F = t^2/2") {
    CoeffSet dense = estimate_via_linear_solve(quadratic_F_samples(2));
    CHECK(dense.at(-1, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(dense.at(0, 0)) < 1e-10);
    CHECK(std::abs(dense.at(1, 0)) < 1e-10);
    CHECK(std::abs(dense.at(1, 1)) < 1e-10);
  }
  SUBCASE("n = 2 and n = 5, F = 1 - cos(pi t)") {
    for (auto [n, tol] : {std::pair{2, 1e-6}, std::pair{5, 1e-3}}) {
      SampleVector samples = sample_F(FunctionSpec::CosPi(), n + 1);
      CoeffSet dense = estimate_via_linear_solve(samples);
      EstimateResult closed = estimate(samples, 0.0);
      double scale = closed.coeffs.flat().cwiseAbs().maxCoeff();
      CHECK((dense.flat() - closed.coeffs.flat()).cwiseAbs().maxCoeff() <
            tol * scale);
    }
  }
}

TEST_CASE("roughness estimates") {
  SUBCASE("true-coefficient formula") {
    int M = 9;
    Eigen::VectorXd c(M + 1);
    for (int m = 0; m <= M; ++m) c[m] = std::exp2(-0.5 * m);
    CoeffSet truth = takagi_true_coeffs(TakagiSpec{c}, M);
    for (int n = 2; n <= M; ++n) {
      CHECK(roughness_from_true_coeffs(truth, n) ==
            doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("zero generation is undefined") {
    CoeffSet zero(4);
    zero.at(-1, 0) = 1.0;  // linear function
    CHECK_THROWS_AS(roughness_from_true_coeffs(zero, 4), UndefinedEstimateError);
  }
  SUBCASE("robust estimate from samples") {
    Eigen::VectorXd c(16);
    for (int m = 0; m < 16; ++m) c[m] = std::exp2(-0.5 * m);
    FunctionSpec spec = FunctionSpec::Takagi(TakagiSpec{c});
    for (int n = 2; n <= 5; ++n) {
      SampleVector samples = sample_F(spec, n + 2);
      CHECK(roughness_robust(samples) == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("estimator input validation") {
  Eigen::VectorXd three(3);
  three << 0.0, 0.5, 1.0;
  // level 1 means n = 0: below the supported range
  CHECK_THROWS_AS(estimate(SampleVector(1, three), 0.0), ValidationError);
  CHECK_THROWS_AS(roughness_robust(SampleVector(1, three)), ValidationError);
}
