#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "schauder/common.hpp"

namespace schauder {

/// Dense matrix plus the name of the structural role it plays.
struct BlockMatrix {
  std::string role;
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

enum class Lp { one, two, inf };

std::string lp_name(Lp p);

/// Q_(m,k): the 2^k x 2^(m v 0) matrix with entries psi_{m,j}(i 2^-k),
/// rows i = 1..2^k, columns j = 0..2^(m v 0) - 1. Requires m >= -1, k >= 1.
BlockMatrix build_Q(int m, int k);

/// Psi_(m,k) = [Q_(-1,k), Q_(0,k), ..., Q_(m,k)]; square when k = m + 1.
BlockMatrix build_Psi(int m, int k);

/// Explicit inverse of Q_(n+1,n+1): 2^(3(n+1)/2+2) times the bidiagonal
/// matrix with 1 on the diagonal and -1 below it.
BlockMatrix build_Q_inverse(int n);

/// A_n = Q^-1_(n+1,n+1) Psi_(n,n+1), built structurally from the ramp
/// vectors w+-_(m,n): column (m,k) carries (w+; w-) in rows
/// [k 2^(n+1-m), (k+1) 2^(n+1-m)), with entries (2j-1) 2^-(n-1-(m v 0))/2.
BlockMatrix build_A(int n);

/// Block row C_m of P_n (2^(m v 0) x 2^(n+1)): the Rademacher row
/// 2^-(n+3)/2 (r+_(n+1))^T for m = -1, the block-diagonal rows
/// 2^((m-n-3)/2) (r+^T, r-^T) for 0 <= m <= n-1, and the staircase
/// (u, ..., u, v, 0, ...) with u = (sqrt2, -sqrt2), v = (3, -1)/(2 sqrt2)
/// for m = n.
BlockMatrix build_C(int m, int n);

/// P_n = Psi^-1_(n+1) Q_(n+1,n+1), stacked structurally from the C blocks.
BlockMatrix build_P(int n);

/// Generation selectors: R_m keeps the first 2^(m+1) coefficients
/// (generations -1..m), R-bar_m keeps the 2^(m v 0) of generation m alone.
BlockMatrix build_R(int m, int n);
BlockMatrix build_R_bar(int m, int n);

/// U_(m,n+1) (2^(n+1) x 2^m, m >= n+1): 2^((3n+3-3m)/2) times the block
/// indicator with row i covering columns [i 2^(m-n-1), (i+1) 2^(m-n-1)).
BlockMatrix build_U(int m, int n);

/// z_{n+1} = sum_{m >= n+1} U_(m,n+1) theta-bar_m without forming U.
/// tail_generations[j] holds generation n+1+j (length 2^(n+1+j)).
Eigen::VectorXd apply_tail(const std::vector<Eigen::VectorXd>& tail_generations,
                           int n);

/// D_N with entries (i ^ j) - 1/2, its tridiagonal inverse E_N, and
/// G_n = C_n C_n^T = 4 D_(2^n) - (3/4) I, all by their closed forms.
BlockMatrix build_D(Eigen::Index size);
BlockMatrix build_E(Eigen::Index size);
BlockMatrix build_G(int n);

/// lp-induced operator norm. p = two runs symmetric power iteration on the
/// smaller Gram matrix (tolerance 1e-10, at most 1e5 iterations,
/// deterministic start vector); throws ConvergenceError on failure.
double operator_norm(const Eigen::MatrixXd& a, Lp p);

/// Unit right-singular vector of the largest singular value.
Eigen::VectorXd top_right_singular_vector(const Eigen::MatrixXd& a);

/// Closed-form operator norms of Theorem-level constants:
/// generation_norm_constant = |R-bar_m P_n|_p, cumulative for |R_m P_n|_p
/// (the latter stated for m <= n-1 only). The l2 norm of the final
/// generation is only bracketed; l2_final_generation_bracket returns it.
double generation_norm_constant(Lp p, int m, int n);
double cumulative_norm_constant(Lp p, int m, int n);
std::pair<double, double> l2_final_generation_bracket(int n);

struct IdentityCheck {
  std::string name;
  double gap = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct IdentityReport {
  int n = 0;
  std::vector<IdentityCheck> checks;
  bool all_pass = true;
  double max_gap = 0.0;
};

/// Verifies the structural identities at a given n: P_n A_n = I,
/// Q^-1 Q = I, C_m C_k^T in {I/4, 0}, D E = I, the eigenvalue formula
/// for E, G_n = C_n C_n^T = 4 D - (3/4) I, and (n <= 6) A_n against the
/// dense product Q^-1 Psi.
IdentityReport verify_identities(int n);

struct LogDet {
  double log10_abs = 0.0;
  int sign = 1;
};

/// log10 |det Psi_n| for the square 2^n x 2^n matrix Psi_n = Psi_(n-1,n),
/// accumulated from LU pivots without ever forming the determinant.
/// Uses the reference normalization in which the ramp column carries an
/// extra factor 2^(-1/2); the unnormalized matrix from build_Psi(n-1, n)
/// has |det| exactly 2^(1/2) times larger.
LogDet log10_det_Psi(int n);

}  // namespace schauder
