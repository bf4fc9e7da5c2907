#include "schauder/spline_estimator.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "schauder/matrix_lab.hpp"

namespace schauder {

namespace {

constexpr int kMaxEstimateLevel = 25;  // n capped at 24

// Alternating prefix sums S_j = sum_{i<=j} (-1)^i (y_i - y_{i-1}), S_0 = 0.
Eigen::VectorXd alternating_prefix_sums(const Eigen::VectorXd& y) {
  Eigen::VectorXd s(y.size());
  s[0] = 0.0;
  double sign = -1.0;
  for (Eigen::Index i = 1; i < y.size(); ++i) {
    s[i] = s[i - 1] + sign * (y[i] - y[i - 1]);
    sign = -sign;
  }
  return s;
}

}  // namespace

double PiecewiseLinearFn::operator()(double t) const {
  auto cells = pow2i(level);
  auto i = std::clamp<std::int64_t>(std::int64_t(std::floor(std::ldexp(t, level))),
                                    0, cells - 1);
  double s = std::ldexp(t, level) - double(i);
  return (1.0 - s) * knot_values[i] + s * knot_values[i + 1];
}

double PiecewiseQuadraticFn::operator()(double t) const {
  auto cells = pow2i(level);
  auto i = std::clamp<std::int64_t>(std::int64_t(std::floor(std::ldexp(t, level))),
                                    0, cells - 1);
  double h = std::ldexp(1.0, -level);
  double s = t - double(i) * h;
  double slope_rate = (knot_derivs[i + 1] - knot_derivs[i]) / h;
  return knot_values[i] + knot_derivs[i] * s + 0.5 * slope_rate * s * s;
}

EstimateResult estimate(const SampleVector& samples, double f0_hat) {
  samples.validate();
  int n = samples.level - 1;
  if (n < 1) throw ValidationError("estimate: need n >= 1 (level >= 2)");
  if (samples.level > kMaxEstimateLevel) {
    throw ValidationError("estimate: level exceeds the supported cap");
  }

  const Eigen::VectorXd s = alternating_prefix_sums(samples.values);
  const Eigen::VectorXd& y = samples.values;
  CoeffSet coeffs(n);

  coeffs.at(-1, 0) = pow2d(n + 2) * s[s.size() - 1];

  for (int m = 0; m <= n - 1; ++m) {
    std::int64_t block = pow2i(n - m);
    double scale = pow2d(n + 0.5 * m + 2);
    auto gen = coeffs.generation(m);
    for (std::int64_t k = 0; k < pow2i(m); ++k) {
      std::int64_t a = 2 * k * block, b = a + block, c = b + block;
      gen[k] = scale * (2.0 * s[b] - s[a] - s[c]);
    }
  }

  double scale_f0 = pow2d(0.5 * n + 2);
  double scale_sum = pow2d(1.5 * n + 4);
  double scale_local = pow2d(1.5 * n + 2);
  auto gen_n = coeffs.generation(n);
  for (std::int64_t k = 0; k < pow2i(n); ++k) {
    double w1 = y[2 * k + 1] - y[2 * k];
    double w2 = y[2 * k + 2] - y[2 * k + 1];
    gen_n[k] = -scale_f0 * f0_hat - scale_sum * s[2 * k] +
               scale_local * (3.0 * w1 - w2);
  }

  return EstimateResult{n, std::move(coeffs), f0_hat, false};
}

CoeffSet estimate_via_linear_solve(const SampleVector& samples) {
  samples.validate();
  int n = samples.level - 1;
  if (n < 1) throw ValidationError("estimate_via_linear_solve: need n >= 1");
  if (n > 10) {
    throw ValidationError("estimate_via_linear_solve: oracle limited to n <= 10");
  }
  Eigen::VectorXd y =
      samples.values.tail(samples.values.size() - 1).array() - samples.values[0];
  Eigen::MatrixXd psi = build_Psi(n, n + 1).values;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(psi);
  if (!lu.isInvertible()) {
    throw ConditioningError(
        "estimate_via_linear_solve: Psi singular to working precision at n = " +
        std::to_string(n));
  }
  return CoeffSet(n, lu.solve(y));
}

EstimateResult truncate(const EstimateResult& result) {
  if (result.truncated) {
    throw ValidationError("truncate: result already truncated");
  }
  return EstimateResult{result.n, result.coeffs.head(result.n - 1),
                        result.f0_hat, true};
}

PiecewiseLinearFn reconstruct_f(const EstimateResult& result) {
  int level = result.coeffs.max_generation() + 1;
  PiecewiseLinearFn fn;
  fn.level = level;
  fn.knot_values.resize(pow2i(level) + 1);
  for (std::int64_t i = 0; i < fn.knot_values.size(); ++i) {
    double t = std::ldexp(double(i), -level);
    fn.knot_values[i] = eval_expansion(result.coeffs, result.f0_hat, t);
  }
  return fn;
}

PiecewiseQuadraticFn reconstruct_F(const EstimateResult& result, double F0) {
  int level = result.coeffs.max_generation() + 1;
  PiecewiseQuadraticFn fn;
  fn.level = level;
  auto count = pow2i(level) + 1;
  fn.knot_values.resize(count);
  fn.knot_derivs.resize(count);

  // per-generation prefix sums: saturated cells left of the active one
  // contribute 2^{-3m/2-2} times the coefficient sum
  std::vector<Eigen::VectorXd> prefix(result.coeffs.max_generation() + 1);
  for (int m = 0; m <= result.coeffs.max_generation(); ++m) {
    auto gen = result.coeffs.generation(m);
    Eigen::VectorXd p(gen.size() + 1);
    p[0] = 0.0;
    for (Eigen::Index k = 0; k < gen.size(); ++k) p[k + 1] = p[k] + gen[k];
    prefix[m] = std::move(p);
  }

  for (std::int64_t i = 0; i < count; ++i) {
    double t = std::ldexp(double(i), -level);
    fn.knot_derivs[i] = eval_expansion(result.coeffs, result.f0_hat, t);
    double acc = F0 + result.f0_hat * t + result.coeffs.at(-1, 0) * 0.5 * t * t;
    for (int m = 0; m <= result.coeffs.max_generation(); ++m) {
      auto pos = std::clamp<std::int64_t>(
          std::int64_t(std::floor(std::ldexp(t, m))), 0, pow2i(m) - 1);
      acc += pow2d(-1.5 * m - 2) * prefix[m][pos];
      acc += result.coeffs.at(m, pos) * eval_psi(BasisIndex(m, pos), t);
    }
    fn.knot_values[i] = acc;
  }
  return fn;
}

double roughness_from_true_coeffs(const CoeffSet& coeffs, int n) {
  if (n < 1 || n > coeffs.max_generation()) {
    if (n < 1) throw ValidationError("roughness: n >= 1 required");
  }
  double norm = coeffs.generation(n).norm();
  if (norm == 0.0) {
    throw UndefinedEstimateError(
        "roughness: generation " + std::to_string(n) + " is identically zero");
  }
  return 1.0 - std::log2(norm) / double(n);
}

double roughness_robust(const SampleVector& samples) {
  samples.validate();
  int n = samples.level - 2;
  if (n < 1) throw ValidationError("roughness_robust: need level >= 3");
  // generation n of vartheta^(n+1) is independent of f0-hat
  EstimateResult est = estimate(samples, 0.0);
  return roughness_from_true_coeffs(est.coeffs, n);
}

}  // namespace schauder
