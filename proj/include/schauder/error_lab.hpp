#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "schauder/generators.hpp"
#include "schauder/matrix_lab.hpp"
#include "schauder/spline_estimator.hpp"

namespace schauder {

/// The tail aggregate z_{n+1}: the single quantity controlling every
/// coefficient and functional error bound.
struct TailVector {
  int n = 1;
  Eigen::VectorXd values;  // length 2^(n+1)

  void validate() const {
    if (n < 1 || values.size() != Eigen::Index(pow2i(n + 1))) {
      throw ValidationError("TailVector: need 2^(n+1) values");
    }
  }
};

double vector_lp_norm(const Eigen::VectorXd& v, Lp p);

/// z_{n+1} by the literal triple sum
/// z_i = 2^(3(n+1)/2) sum_m 2^(-3m/2) sum_k theta_{m,k} over the block of
/// 2^(m-n-1) shifts feeding entry i. tail_generations[j] is generation
/// n+1+j.
TailVector compute_tail(const std::vector<Eigen::VectorXd>& tail_generations,
                        int n);

/// z_{n+1} of a test function, from its exact coefficients at generations
/// n+1..max_generation. Uses the per-generation-constant shortcut when the
/// spec provides one (Takagi, quadratic polynomials); otherwise
/// materializes the generations from exact point values.
TailVector tail_for_function(const FunctionSpec& spec, int n,
                             int max_generation);

/// Every closed-form constant of the coefficient and functional error
/// bounds at a fixed n >= 2.
struct BoundConstants {
  int n = 2;

  double generation(Lp p, int m) const;  // |Rbar_m P_n|_p, m <= n
  double cumulative(Lp p, int m) const;  // |R_m P_n|_p, m <= n-1
  std::pair<double, double> l2_final_bracket() const;

  double A(Lp p) const;
  double B(Lp p) const;
  double C(Lp p) const;
  double D(Lp p) const;
  double a(Lp p) const;
  double gamma2() const;
};

BoundConstants bound_constants(int n);

struct BoundRow {
  Lp p = Lp::one;
  int m = -1;
  bool cumulative = false;
  double error = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Estimates from level-(n+1) samples of the spec, compares against the
/// true coefficients, and checks every generation and cumulative bound
/// error <= constant * |z|_p for the requested p.
std::vector<BoundRow> check_upper_bounds(const FunctionSpec& spec, int n, Lp p,
                                         int max_generation);

/// A tail theta_{n+1,.} = z realizing (almost) the worst case of
/// |Rbar_m P_n z|_p / |z|_p: the sign pattern of the maximizing row for
/// p = inf, the maximizing column indicator for p = 1, the top right
/// singular vector for p = 2.
Eigen::VectorXd worst_case_tail(int n, int m, Lp p);

struct WorstCaseReport {
  int n = 0;
  int m = 0;
  Lp p = Lp::one;
  double achieved = 0.0;   // |Rbar_m P_n z|_p / |z|_p at the witness z
  double constant = 0.0;   // closed-form norm (lower bracket for p=2, m=n)
  double ratio = 0.0;      // achieved / constant
};

WorstCaseReport worst_case_report(int n, int m, Lp p);

/// End-to-end blow-up demo: build F from the worst-case final-generation
/// tail (theta_{n+1} = z), run the estimator, and compare the final
/// generation error against the error of all earlier generations.
struct GapDemo {
  int n = 0;
  Lp p = Lp::one;
  double final_error = 0.0;     // |vartheta-bar_n - theta-bar_n|_p
  double earlier_error = 0.0;   // |vartheta_{n-1} - theta_{n-1}|_p
  bool zero_denominator = false;
  double ratio = 0.0;           // final / earlier when denominator > 0
  double predicted = 0.0;       // theorem ratio the demo must reach 99% of
  bool pass = false;
};

GapDemo corollary_gap_demo(int n, Lp p);

/// Least-squares slope of log2 |z_{n+1}|_p against n over n_min..n_max.
struct DecaySlopes {
  bool exact_zero = false;  // z vanished identically at every n
  double slope_l1 = 0.0;
  double slope_l2 = 0.0;
  double slope_linf = 0.0;
};

DecaySlopes holder_decay_check(const FunctionSpec& spec, int n_min, int n_max);

/// Functional error bounds at a fixed n: |f_m - fhat_{n,m}| <= A_p |z|_p
/// for m <= n-1, <= C_p |z|_p for m = n, and the antiderivative
/// contraction |F - Fhat_{n,n}| <= a_p |f - fhat_{n,n}|.
struct FunctionalRow {
  std::string name;
  Lp p = Lp::one;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

std::vector<FunctionalRow> functional_error_check(const FunctionSpec& spec,
                                                  int n);

/// |Tf|_2 / |f|_2 for the extremal f(t) = cos(2^(n-1) pi t), where
/// Tf(t) = integral of f; equals 2^(-n+1)/pi.
double extremal_cosine_ratio(int n);

/// Exact L_p[0,1] norm of the piecewise linear function with the given
/// knot values on T_level.
double lp_norm_piecewise_linear(const Eigen::VectorXd& knot_values, Lp p);

}  // namespace schauder
