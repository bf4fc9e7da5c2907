#include "schauder/faber_basis.hpp"

#include <algorithm>
#include <cmath>

namespace schauder {

namespace {

// e_{0,0}(x) = (min{x, 1-x})^+
double mother_e(double x) { return std::max(0.0, std::min(x, 1.0 - x)); }

// psi_{0,0}, the antiderivative of the mother triangle.
double mother_psi(double x) {
  if (x < 0.0) return 0.0;
  if (x < 0.5) return 0.5 * x * x;
  if (x < 1.0) return 0.25 - 0.5 * (1.0 - x) * (1.0 - x);
  return 0.25;
}

int level_from_sample_count(Eigen::Index count, const char* who) {
  // count = 2^L + 1 for some L >= 0
  Eigen::Index cells = count - 1;
  if (cells < 1 || (cells & (cells - 1)) != 0) {
    throw ValidationError(std::string(who) +
                          ": sample count must be 2^L + 1, got " +
                          std::to_string(count));
  }
  int level = 0;
  while ((Eigen::Index(1) << level) < cells) ++level;
  return level;
}

}  // namespace

double eval_e(const BasisIndex& idx, double t) {
  idx.validate();
  if (idx.generation == -1) return t;
  double x = std::ldexp(t, idx.generation) - double(idx.shift);
  return pow2d(-0.5 * idx.generation) * mother_e(x);
}

double eval_psi(const BasisIndex& idx, double t) {
  idx.validate();
  if (idx.generation == -1) return 0.5 * t * t;
  double x = std::ldexp(t, idx.generation) - double(idx.shift);
  return pow2d(-1.5 * idx.generation) * mother_psi(x);
}

InterpolationCoeffs coeffs_from_function(const Eigen::VectorXd& f_samples) {
  int level = level_from_sample_count(f_samples.size(), "coeffs_from_function");
  int max_generation = level - 1;  // samples on T_{M+1}
  CoeffSet coeffs(max_generation);
  coeffs.at(-1, 0) = f_samples[f_samples.size() - 1] - f_samples[0];
  for (int m = 0; m <= max_generation; ++m) {
    std::int64_t stride = pow2i(level - m);       // index step of k/2^m
    std::int64_t half = stride / 2;               // index step to the midpoint
    double scale = pow2d(0.5 * m);
    auto gen = coeffs.generation(m);
    for (std::int64_t k = 0; k < pow2i(m); ++k) {
      std::int64_t left = k * stride;
      gen[k] = scale * (2.0 * f_samples[left + half] - f_samples[left] -
                        f_samples[left + stride]);
    }
  }
  return InterpolationCoeffs{std::move(coeffs), f_samples[0]};
}

double eval_expansion(const CoeffSet& coeffs, double f0, double t) {
  double acc = f0 + coeffs.at(-1, 0) * t;
  for (int m = 0; m <= coeffs.max_generation(); ++m) {
    auto pos = std::int64_t(std::floor(std::ldexp(t, m)));
    pos = std::clamp<std::int64_t>(pos, 0, pow2i(m) - 1);
    double c = coeffs.at(m, pos);
    if (c != 0.0) acc += c * eval_e(BasisIndex(m, pos), t);
  }
  return acc;
}

double second_order_modulus(const Eigen::VectorXd& f_samples, int j) {
  int level = level_from_sample_count(f_samples.size(), "second_order_modulus");
  if (j < 0 || j > level) {
    throw ValidationError("second_order_modulus: step 2^-j needs 0 <= j <= L");
  }
  std::int64_t window = pow2i(level - j);
  std::int64_t count = pow2i(level);
  double sup = 0.0;
  for (std::int64_t a = 0; a <= count; ++a) {
    std::int64_t b_max = std::min(a + window, count);
    // midpoint must be a grid point, so a and b share parity
    for (std::int64_t b = a + 2; b <= b_max; b += 2) {
      double d = std::abs(f_samples[a] + f_samples[b] -
                          2.0 * f_samples[(a + b) / 2]);
      sup = std::max(sup, d);
    }
  }
  return sup;
}

}  // namespace schauder
