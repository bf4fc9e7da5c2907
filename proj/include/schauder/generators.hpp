#pragma once

#include <Eigen/Core>
#include <optional>

#include "schauder/dyadic.hpp"
#include "schauder/faber_basis.hpp"

namespace schauder {

/// Level-(n+1) observations F(k 2^-(n+1)), k = 0..2^(n+1).
struct SampleVector {
  int level = 1;          // L = n + 1
  Eigen::VectorXd values; // length 2^L + 1

  SampleVector() = default;
  SampleVector(int level_, Eigen::VectorXd values_)
      : level(level_), values(std::move(values_)) {
    validate();
  }

  void validate() const {
    if (level < 1 || level > kMaxLevel) {
      throw ValidationError("SampleVector: level out of range");
    }
    if (values.size() != Eigen::Index(pow2i(level)) + 1) {
      throw ValidationError("SampleVector: need 2^level + 1 values, got " +
                            std::to_string(values.size()));
    }
  }
};

/// A member of the Takagi class f(t) = sum_m c_m phi(2^m t), truncated at
/// the (finite) length of c.
struct TakagiSpec {
  Eigen::VectorXd c;  // c_0 .. c_M

  int max_index() const { return int(c.size()) - 1; }
};

double takagi_f(const TakagiSpec& spec, double t);

/// F(t) = int_0^t f, evaluated through the psi-series. Exact at dyadic points.
double takagi_F(const TakagiSpec& spec, const DyadicIndex& t);

/// theta_{m,k} = 2^{m/2} c_m for m <= M, zero beyond; theta_{-1,0} = 0.
CoeffSet takagi_true_coeffs(const TakagiSpec& spec, int up_to_generation);

/// Closed-form output of the spline estimator with f0-hat = 0:
/// 2^{m/2} c_m up to generation n-1 and 2^{n/2} sum_{m>=n} c_m at n.
CoeffSet takagi_expected_estimate(const TakagiSpec& spec, int n);

/// Test-function factory: every kind provides F on any dyadic grid; the
/// analytic kinds also provide exact f and exact coefficients.
struct FunctionSpec {
  enum class Kind { takagi, cos_pi, sin_pi, poly, custom };

  Kind kind = Kind::cos_pi;
  std::string name;
  TakagiSpec takagi;        // kind == takagi
  Eigen::VectorXd poly;     // kind == poly: f(t) = sum_j poly[j] t^j
  SampleVector custom;      // kind == custom: externally observed F

  static FunctionSpec Takagi(TakagiSpec spec, std::string name = "takagi");
  static FunctionSpec CosPi();  // F(t) = 1 - cos(pi t), f(t) = pi sin(pi t)
  static FunctionSpec SinPi();  // F(t) = sin(pi t)/pi,  f(t) = cos(pi t)
  static FunctionSpec Poly(Eigen::VectorXd f_coeffs, std::string name = "poly");
  static FunctionSpec Custom(SampleVector samples);

  bool has_exact_derivative() const { return kind != Kind::custom; }

  double f(double t) const;
  double F(const DyadicIndex& t) const;

  /// Exact coefficients of f up to the requested generation. For the
  /// analytic kinds these are the true Faber--Schauder coefficients of the
  /// grid interpolation, computed from exact point values.
  CoeffSet true_coeffs(int up_to_generation) const;

  /// Per-generation coefficient value for kinds whose theta_{m,k} does not
  /// depend on k (takagi, polynomials of degree <= 2). nullopt otherwise.
  std::optional<double> generation_coefficient(int m) const;
};

/// Evaluates F over the grid T_level.
SampleVector sample_F(const FunctionSpec& spec, int level);

}  // namespace schauder
