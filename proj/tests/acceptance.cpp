// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is verified against independent closed forms or
// brute-force oracles rather than against the code under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "schauder/error_lab.hpp"
#include "schauder/generators.hpp"
#include "schauder/io.hpp"
#include "schauder/matrix_lab.hpp"
#include "schauder/spline_estimator.hpp"

using namespace schauder;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

double rel_gap(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  double scale = std::max(1e-300, want.cwiseAbs().maxCoeff());
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

std::vector<FunctionSpec> test_suite() {
  Eigen::VectorXd c(12);
  for (int m = 0; m < c.size(); ++m) c[m] = std::exp2(-double(m));
  return {FunctionSpec::CosPi(), FunctionSpec::SinPi(),
          FunctionSpec::Poly((Eigen::VectorXd(3) << 0, 0, 1).finished(),
                             "quadratic"),
          FunctionSpec::Takagi(TakagiSpec{c})};
}

// 1. randomized Takagi specs against the closed-form estimator output
Outcome takagi_oracle(double* seconds_budget) {
  *seconds_budget = 5.0;
  Outcome out;
  std::mt19937 rng(20260824);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> length(1, 41);  // M <= 40
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd c(length(rng));
    for (Eigen::Index m = 0; m < c.size(); ++m) c[m] = unif(rng);
    TakagiSpec spec{c};
    FunctionSpec fn = FunctionSpec::Takagi(spec);
    for (int n = 2; n <= 8; ++n) {
      EstimateResult est = estimate(sample_F(fn, n + 1), 0.0);
      CoeffSet expected = takagi_expected_estimate(spec, n);
      double gap = rel_gap(est.coeffs.flat(), expected.flat());
      out.require(gap < 1e-10, "trial " + std::to_string(trial) + ", n = " +
                                   std::to_string(n) + ": relative gap " +
                                   std::to_string(gap));
    }
  }
  return out;
}

// 2. log10 determinants of the collocation matrices
Outcome determinant_table(double* seconds_budget) {
  *seconds_budget = 10.0;
  Outcome out;
  const double expected[] = {-4.97, -13.4, -33.9, -82.03, -192.81};
  const double tolerance[] = {0.02, 0.05, 0.1, 0.3, 0.5};
  for (int n = 2; n <= 6; ++n) {
    double got = log10_det_Psi(n).log10_abs;
    out.require(std::abs(got - expected[n - 2]) <= tolerance[n - 2],
                "n = " + std::to_string(n) + ": log10 det " +
                    std::to_string(got) + " vs " +
                    std::to_string(expected[n - 2]));
  }
  return out;
}

// 3. structural identities of the explicit inverse
Outcome structural_identities(double*) {
  Outcome out;
  const std::vector<std::string> required = {
      "P_n A_n = I", "Qinv Q = I", "C_m C_k^T in {I/4, 0}", "D_N E_N = I",
      "eig(E_N) = 2 - 2cos((2j+1)pi/2N)"};
  for (int n = 1; n <= 8; ++n) {
    IdentityReport report = verify_identities(n);
    for (const std::string& name : required) {
      bool found = false;
      for (const IdentityCheck& check : report.checks) {
        if (check.name != name) continue;
        found = true;
        out.require(check.gap < 1e-10, "n = " + std::to_string(n) + ", " +
                                           name + ": gap " +
                                           std::to_string(check.gap));
      }
      out.require(found, "missing identity check " + name);
    }
  }
  return out;
}

// 4. operator norms of the generation blocks against the closed forms
Outcome operator_norms(double*) {
  Outcome out;
  for (int n = 1; n <= 6; ++n) {
    Eigen::MatrixXd p_mat = build_P(n).values;
    for (int m = -1; m <= n; ++m) {
      Eigen::MatrixXd block = build_R_bar(m, n).values * p_mat;
      for (Lp p : {Lp::one, Lp::inf}) {
        double gap =
            std::abs(operator_norm(block, p) - generation_norm_constant(p, m, n));
        out.require(gap < 1e-10, "n = " + std::to_string(n) + ", m = " +
                                     std::to_string(m) + ", " + lp_name(p) +
                                     ": gap " + std::to_string(gap));
      }
      double l2 = operator_norm(block, Lp::two);
      if (m <= n - 1) {
        out.require(std::abs(l2 - 0.5) < 1e-8,
                    "n = " + std::to_string(n) + ", m = " + std::to_string(m) +
                        ": l2 norm " + std::to_string(l2) + " != 1/2");
      } else if (n >= 2) {
        auto [lo, hi] = l2_final_generation_bracket(n);
        out.require(l2 >= lo - 1e-8 && l2 <= hi + 1e-8,
                    "n = " + std::to_string(n) + ": final l2 norm " +
                        std::to_string(l2) + " outside [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
      }
    }
  }
  return out;
}

// 5. worst-case tails realize the final-generation blow-up ratio
Outcome final_generation_blowup(double*) {
  Outcome out;
  for (int n : {3, 4, 5}) {
    for (Lp p : {Lp::one, Lp::two, Lp::inf}) {
      GapDemo demo = corollary_gap_demo(n, p);
      out.require(!demo.zero_denominator && demo.pass,
                  "n = " + std::to_string(n) + ", " + lp_name(p) + ": ratio " +
                      std::to_string(demo.ratio) + " vs predicted " +
                      std::to_string(demo.predicted));
    }
  }
  return out;
}

// 6. interpolation of the samples, exact f0 sensitivity of the final
// generation, and f0-independence of the truncated output
Outcome interpolation_and_sensitivity(double*) {
  Outcome out;
  for (const FunctionSpec& spec : test_suite()) {
    for (int n = 2; n <= 8; ++n) {
      SampleVector samples = sample_F(spec, n + 1);
      EstimateResult base = estimate(samples, 0.0);

      for (double f0 : {0.0, 1.0, -3.0}) {
        EstimateResult est = estimate(samples, f0);
        PiecewiseQuadraticFn Fhat = reconstruct_F(est, samples.values[0]);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < samples.values.size(); ++i) {
          double t = std::ldexp(double(i), -(n + 1));
          worst = std::max(worst, std::abs(Fhat(t) - samples.values[i]));
        }
        out.require(worst < 1e-9, spec.name + ", n = " + std::to_string(n) +
                                      ", f0 = " + std::to_string(f0) +
                                      ": interpolation gap " +
                                      std::to_string(worst));

        double shift = -std::exp2(0.5 * n + 2.0) * f0;
        double scale = std::max(1.0, std::abs(shift));
        for (Eigen::Index k = 0; k < (Eigen::Index(1) << n); ++k) {
          double moved = est.coeffs.at(n, k) - base.coeffs.at(n, k);
          out.require(std::abs(moved - shift) < 1e-10 * scale,
                      spec.name + ", n = " + std::to_string(n) +
                          ": final-generation shift " + std::to_string(moved) +
                          " vs " + std::to_string(shift));
        }
        EstimateResult truncated = truncate(est);
        out.require(truncated.coeffs.flat() == truncate(base).coeffs.flat(),
                    spec.name + ", n = " + std::to_string(n) +
                        ": truncated output depends on f0");
      }
    }
  }
  return out;
}

// 7. tail decay slopes of a C^2 function
Outcome tail_decay_slopes(double*) {
  Outcome out;
  FunctionSpec quadratic =
      FunctionSpec::Poly((Eigen::VectorXd(3) << 0, 0, 1).finished());
  DecaySlopes slopes = holder_decay_check(quadratic, 4, 14);
  out.require(!slopes.exact_zero, "tail vanished unexpectedly");
  out.require(slopes.slope_l1 <= -0.5 + 0.15,
              "l1 slope " + std::to_string(slopes.slope_l1));
  out.require(slopes.slope_l2 <= -1.0 + 0.15,
              "l2 slope " + std::to_string(slopes.slope_l2));
  out.require(slopes.slope_linf <= -1.5 + 0.15,
              "linf slope " + std::to_string(slopes.slope_linf));
  return out;
}

// 8. functional error bounds on the test suite plus the extremal cosine
Outcome functional_bounds(double*) {
  Outcome out;
  for (const FunctionSpec& spec : test_suite()) {
    for (int n : {3, 4}) {
      for (Lp p : {Lp::one, Lp::two, Lp::inf}) {
        for (const BoundRow& row : check_upper_bounds(spec, n, p, n + 12)) {
          out.require(row.pass,
                      spec.name + ", n = " + std::to_string(n) + ", " +
                          lp_name(p) + ", m = " + std::to_string(row.m) +
                          (row.cumulative ? " cumulative" : "") + ": error " +
                          std::to_string(row.error) + " > bound " +
                          std::to_string(row.bound));
        }
      }
      for (const FunctionalRow& row : functional_error_check(spec, n)) {
        out.require(row.pass, spec.name + ", n = " + std::to_string(n) + ", " +
                                  lp_name(row.p) + ", " + row.name + ": " +
                                  std::to_string(row.lhs) + " > " +
                                  std::to_string(row.rhs));
      }
    }
  }
  for (int n : {3, 4, 5}) {
    double expected = std::exp2(-n + 1) / std::numbers::pi;
    double got = extremal_cosine_ratio(n);
    out.require(std::abs(got - expected) < 1e-6 * expected,
                "extremal cosine at n = " + std::to_string(n) + ": " +
                    std::to_string(got) + " vs " + std::to_string(expected));
  }
  return out;
}

// 9. closed-form estimator against the dense linear-solve oracle
Outcome oracle_equivalence(double*) {
  Outcome out;
  for (const FunctionSpec& spec : test_suite()) {
    for (int n = 1; n <= 5; ++n) {
      SampleVector samples = sample_F(spec, n + 1);
      EstimateResult closed = estimate(samples, 0.0);
      CoeffSet dense = estimate_via_linear_solve(samples);
      double gap = rel_gap(dense.flat(), closed.coeffs.flat());
      out.require(gap < 1e-6, spec.name + ", n = " + std::to_string(n) +
                                  ": relative gap " + std::to_string(gap));
    }
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome(double*)> run;
  };
  const std::vector<Criterion> criteria = {
      {"takagi oracle (closed-form estimates)", takagi_oracle},
      {"determinant table of the collocation matrices", determinant_table},
      {"structural identities of the explicit inverse", structural_identities},
      {"closed-form operator norms", operator_norms},
      {"final-generation blow-up ratios", final_generation_blowup},
      {"interpolation and f0 sensitivity contract", interpolation_and_sensitivity},
      {"tail decay slopes for a C^2 function", tail_decay_slopes},
      {"functional error bounds and extremal cosine", functional_bounds},
      {"oracle equivalence of the two estimators", oracle_equivalence},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    double budget = 0.0;  // seconds; 0 means untimed
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run(&budget);
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (budget > 0.0 && elapsed > budget && outcome.pass) {
      outcome.pass = false;
      outcome.detail = "runtime " + std::to_string(elapsed) +
                       " s exceeds budget " + std::to_string(budget) + " s";
    }
    if (!outcome.pass) ++failures;
    std::printf("criterion %zu [%s] %s (%.2f s)%s%s\n", i + 1,
                outcome.pass ? "PASS" : "FAIL", criteria[i].name.c_str(),
                elapsed, outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
