#pragma once

#include <Eigen/Core>

#include "schauder/faber_basis.hpp"
#include "schauder/generators.hpp"

namespace schauder {

/// Output of the closed-form spline estimator: the coefficients
/// vartheta^(n) of the C^1 quadratic spline interpolating F on T_{n+1}.
struct EstimateResult {
  int n = 1;
  CoeffSet coeffs;        // max generation n (or n-1 once truncated)
  double f0_hat = 0.0;
  bool truncated = false;
};

/// Piecewise linear function given by its knot values on T_level.
struct PiecewiseLinearFn {
  int level = 0;
  Eigen::VectorXd knot_values;  // length 2^level + 1

  double operator()(double t) const;
};

/// C^1 piecewise quadratic function: knot values plus knot derivatives on
/// T_level; quadratic on each cell.
struct PiecewiseQuadraticFn {
  int level = 0;
  Eigen::VectorXd knot_values;  // length 2^level + 1
  Eigen::VectorXd knot_derivs;  // length 2^level + 1

  double operator()(double t) const;
};

/// Closed-form solution of the interpolation problem: the unique
/// coefficients such that the induced quadratic spline with initial slope
/// f0_hat matches the samples (level n+1) on the whole grid. Only the
/// final generation depends on f0_hat. Works on increments, so samples
/// with F(0) != 0 are accepted as-is.
EstimateResult estimate(const SampleVector& samples, double f0_hat);

/// Brute-force oracle: solves the dense 2^{n+1}-dimensional system
/// Psi_{n+1} vartheta = y_{n+1} by pivoted elimination (f0_hat = 0,
/// samples normalized to F(0) = 0). Ill-conditioned; intended for n <= 10.
CoeffSet estimate_via_linear_solve(const SampleVector& samples);

/// Drops the unstable final generation. The result is independent of f0_hat.
EstimateResult truncate(const EstimateResult& result);

/// f-hat: f0_hat + vartheta_{-1,0} e_{-1,0} + sum vartheta_{m,k} e_{m,k},
/// tabulated on the knots of T_{max_generation + 1}.
PiecewiseLinearFn reconstruct_f(const EstimateResult& result);

/// F-hat(t) = F0 + int_0^t f-hat. Interpolates the samples exactly when the
/// result is untruncated.
PiecewiseQuadraticFn reconstruct_F(const EstimateResult& result, double F0);

/// R*_n = 1 - (1/n) log2 ||theta-bar_n||_2 from known coefficients.
double roughness_from_true_coeffs(const CoeffSet& coeffs, int n);

/// Robust roughness estimate from level-(n+2) observations of F: estimates
/// vartheta^(n+1), reads off generation n (which is f0-free), applies the
/// log formula. The unstable generation n+1 never enters.
double roughness_robust(const SampleVector& samples);

}  // namespace schauder
