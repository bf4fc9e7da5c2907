#include "schauder/generators.hpp"

#include <cmath>
#include <numbers>

namespace schauder {

namespace {

// tent map: distance to the nearest integer
double tent(double x) { return std::abs(x - std::round(x)); }

// sum_k psi_{m,k}(t): saturated cells contribute 2^{-3m/2-2} each, the
// active cell a partial mother value.
double psi_generation_sum(int m, double t) {
  double x = std::ldexp(t, m);
  double full = std::floor(x);
  full = std::min(full, std::ldexp(1.0, m) - 1.0);
  double partial =
      (x < 0.5 + full) ? 0.5 * (x - full) * (x - full)
                       : (x < 1.0 + full)
                             ? 0.25 - 0.5 * (1.0 + full - x) * (1.0 + full - x)
                             : 0.25;
  return pow2d(-1.5 * m) * (0.25 * full + partial);
}

}  // namespace

double takagi_f(const TakagiSpec& spec, double t) {
  double acc = 0.0;
  for (int m = 0; m <= spec.max_index(); ++m) {
    acc += spec.c[m] * tent(std::ldexp(t, m));
  }
  return acc;
}

double takagi_F(const TakagiSpec& spec, const DyadicIndex& t) {
  double tv = t.value();
  double acc = 0.0;
  for (int m = 0; m <= spec.max_index(); ++m) {
    acc += pow2d(0.5 * m) * spec.c[m] * psi_generation_sum(m, tv);
  }
  return acc;
}

CoeffSet takagi_true_coeffs(const TakagiSpec& spec, int up_to_generation) {
  CoeffSet coeffs(up_to_generation);
  for (int m = 0; m <= std::min(up_to_generation, spec.max_index()); ++m) {
    coeffs.generation(m).setConstant(pow2d(0.5 * m) * spec.c[m]);
  }
  return coeffs;
}

CoeffSet takagi_expected_estimate(const TakagiSpec& spec, int n) {
  if (n < 1) throw ValidationError("takagi_expected_estimate: n >= 1 required");
  CoeffSet coeffs(n);
  for (int m = 0; m <= std::min(n - 1, spec.max_index()); ++m) {
    coeffs.generation(m).setConstant(pow2d(0.5 * m) * spec.c[m]);
  }
  double tail = 0.0;
  for (int m = spec.max_index(); m >= n; --m) tail += spec.c[m];
  coeffs.generation(n).setConstant(pow2d(0.5 * n) * tail);
  return coeffs;
}

FunctionSpec FunctionSpec::Takagi(TakagiSpec spec, std::string name) {
  FunctionSpec s;
  s.kind = Kind::takagi;
  s.name = std::move(name);
  s.takagi = std::move(spec);
  return s;
}

FunctionSpec FunctionSpec::CosPi() {
  FunctionSpec s;
  s.kind = Kind::cos_pi;
  s.name = "cos_pi";
  return s;
}

FunctionSpec FunctionSpec::SinPi() {
  FunctionSpec s;
  s.kind = Kind::sin_pi;
  s.name = "sin_pi";
  return s;
}

FunctionSpec FunctionSpec::Poly(Eigen::VectorXd f_coeffs, std::string name) {
  FunctionSpec s;
  s.kind = Kind::poly;
  s.name = std::move(name);
  s.poly = std::move(f_coeffs);
  return s;
}

FunctionSpec FunctionSpec::Custom(SampleVector samples) {
  FunctionSpec s;
  s.kind = Kind::custom;
  s.name = "custom";
  s.custom = std::move(samples);
  return s;
}

double FunctionSpec::f(double t) const {
  switch (kind) {
    case Kind::takagi:
      return takagi_f(takagi, t);
    case Kind::cos_pi:
      return std::numbers::pi * std::sin(std::numbers::pi * t);
    case Kind::sin_pi:
      return std::cos(std::numbers::pi * t);
    case Kind::poly: {
      double acc = 0.0;
      for (Eigen::Index j = poly.size() - 1; j >= 0; --j)
        acc = acc * t + poly[j];
      return acc;
    }
    case Kind::custom:
      throw ValidationError("FunctionSpec: custom data has no derivative");
  }
  return 0.0;
}

double FunctionSpec::F(const DyadicIndex& t) const {
  switch (kind) {
    case Kind::takagi:
      return takagi_F(takagi, t);
    case Kind::cos_pi:
      return 1.0 - std::cos(std::numbers::pi * t.value());
    case Kind::sin_pi:
      return std::sin(std::numbers::pi * t.value()) / std::numbers::pi;
    case Kind::poly: {
      double tv = t.value();
      double acc = 0.0;
      for (Eigen::Index j = poly.size() - 1; j >= 0; --j) {
        acc = acc * tv + poly[j] / double(j + 1);
      }
      return acc * tv;
    }
    case Kind::custom: {
      DyadicIndex q = t.at_level(custom.level);
      return custom.values[q.numerator];
    }
  }
  return 0.0;
}

CoeffSet FunctionSpec::true_coeffs(int up_to_generation) const {
  if (kind == Kind::takagi) {
    return takagi_true_coeffs(takagi, up_to_generation);
  }
  if (!has_exact_derivative()) {
    throw ValidationError("FunctionSpec: no exact coefficients for " + name);
  }
  int level = up_to_generation + 1;
  Eigen::Index count = Eigen::Index(pow2i(level)) + 1;
  Eigen::VectorXd samples(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    samples[i] = f(std::ldexp(double(i), -level));
  }
  return coeffs_from_function(samples).coeffs;
}

std::optional<double> FunctionSpec::generation_coefficient(int m) const {
  if (m < 0) return std::nullopt;
  if (kind == Kind::takagi) {
    return m <= takagi.max_index() ? pow2d(0.5 * m) * takagi.c[m] : 0.0;
  }
  if (kind == Kind::poly && poly.size() <= 3) {
    // second difference of a quadratic is translation invariant
    double a2 = poly.size() == 3 ? poly[2] : 0.0;
    return -a2 * pow2d(0.5 * m - 2.0 * m - 1.0);
  }
  return std::nullopt;
}

SampleVector sample_F(const FunctionSpec& spec, int level) {
  if (level < 1 || level > kMaxLevel) {
    throw ValidationError("sample_F: level out of range");
  }
  Eigen::Index count = Eigen::Index(pow2i(level)) + 1;
  Eigen::VectorXd values(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    values[i] = spec.F(DyadicIndex(i, level));
  }
  return SampleVector(level, std::move(values));
}

}  // namespace schauder
