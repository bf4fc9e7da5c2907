#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "schauder/common.hpp"
#include "schauder/dyadic.hpp"

namespace schauder {

/// Index (m, k) of a Faber--Schauder function e_{m,k}. Generation m = -1 is
/// the ramp e_{-1,0}(t) = t; generation m >= 0 holds 2^m triangle functions.
struct BasisIndex {
  int generation = -1;       // m >= -1
  std::int64_t shift = 0;    // k

  BasisIndex() = default;
  BasisIndex(int m, std::int64_t k) : generation(m), shift(k) { validate(); }

  void validate() const {
    if (generation < -1 || generation > kMaxLevel) {
      throw ValidationError("BasisIndex: generation " +
                            std::to_string(generation) + " outside [-1, " +
                            std::to_string(kMaxLevel) + "]");
    }
    if (generation == -1) {
      if (shift != 0) {
        throw ValidationError("BasisIndex: generation -1 requires k = 0");
      }
    } else if (shift < 0 || shift >= pow2i(generation)) {
      throw ValidationError("BasisIndex: shift " + std::to_string(shift) +
                            " outside [0, 2^m) for generation " +
                            std::to_string(generation));
    }
  }
};

/// Faber--Schauder coefficients up to a maximal generation M >= -1, stored
/// flat in the order (theta_{-1,0}, theta-bar_0, ..., theta-bar_M).
/// Generation m >= 0 occupies the slice [2^m, 2^{m+1}); generation -1 slot 0.
class CoeffSet {
 public:
  explicit CoeffSet(int max_generation)
      : max_generation_(max_generation),
        values_(Eigen::VectorXd::Zero(flat_size(max_generation))) {}

  CoeffSet(int max_generation, Eigen::VectorXd values)
      : max_generation_(max_generation), values_(std::move(values)) {
    if (values_.size() != flat_size(max_generation_)) {
      throw ValidationError("CoeffSet: flat length must be 2^(M+1)");
    }
  }

  static Eigen::Index flat_size(int max_generation) {
    if (max_generation < -1 || max_generation >= kMaxLevel) {
      throw ValidationError("CoeffSet: max generation out of range");
    }
    return Eigen::Index(pow2i(max_generation + 1));
  }

  int max_generation() const { return max_generation_; }

  double at(int m, std::int64_t k) const { return values_[index(m, k)]; }
  double& at(int m, std::int64_t k) { return values_[index(m, k)]; }

  /// Contiguous slice holding generation m (length 2^(m v 0)).
  auto generation(int m) const {
    check_generation(m);
    return m == -1 ? values_.segment(0, 1)
                   : values_.segment(pow2i(m), pow2i(m));
  }
  auto generation(int m) {
    check_generation(m);
    return m == -1 ? values_.segment(0, 1)
                   : values_.segment(pow2i(m), pow2i(m));
  }

  const Eigen::VectorXd& flat() const { return values_; }
  Eigen::VectorXd& flat() { return values_; }

  /// Copy restricted to generations <= new_max.
  CoeffSet head(int new_max) const {
    check_generation(new_max);
    return CoeffSet(new_max, values_.head(flat_size(new_max)));
  }

  friend bool operator==(const CoeffSet& a, const CoeffSet& b) {
    return a.max_generation_ == b.max_generation_ && a.values_ == b.values_;
  }

 private:
  void check_generation(int m) const {
    if (m < -1 || m > max_generation_) {
      throw ValidationError("CoeffSet: generation " + std::to_string(m) +
                            " not present (max " +
                            std::to_string(max_generation_) + ")");
    }
  }

  Eigen::Index index(int m, std::int64_t k) const {
    BasisIndex(m, k);  // validates the pair
    check_generation(m);
    return m == -1 ? 0 : Eigen::Index(pow2i(m) + k);
  }

  int max_generation_;
  Eigen::VectorXd values_;
};

/// e_{m,k}(t). Zero outside [k 2^-m, (k+1) 2^-m] for m >= 0.
double eval_e(const BasisIndex& idx, double t);

/// psi_{m,k}(t) = int_0^t e_{m,k}(s) ds.
double eval_psi(const BasisIndex& idx, double t);

struct InterpolationCoeffs {
  CoeffSet coeffs;
  double f0;  // f(0), carried separately from the expansion coefficients
};

/// Exact Faber--Schauder coefficients of the piecewise linear interpolation
/// of f from its samples on the grid T_{M+1} (length 2^{M+1} + 1).
InterpolationCoeffs coeffs_from_function(const Eigen::VectorXd& f_samples);

/// f0 + theta_{-1,0} t + sum theta_{m,k} e_{m,k}(t). O(M) per evaluation:
/// at most one k contributes per generation.
double eval_expansion(const CoeffSet& coeffs, double f0, double t);

/// Grid-restricted second-order modulus of continuity at step 2^-j:
/// sup |f(t1) + f(t2) - 2 f((t1+t2)/2)| over grid pairs with |t1-t2| <= 2^-j
/// and dyadic midpoint. A lower approximation of the continuum omega_2.
double second_order_modulus(const Eigen::VectorXd& f_samples, int j);

}  // namespace schauder
