#pragma once

#include <iosfwd>
#include <string>

#include "schauder/generators.hpp"
#include "schauder/spline_estimator.hpp"

namespace schauder {

/// Reads `t,F` rows from a CSV file into level-`level` samples. The t
/// column accepts a decimal (matched against i 2^-level within 1e-12) or
/// an exact fraction `k/2^L`. Pass level = -1 to infer it from the row
/// count. Errors name the offending row.
SampleVector read_samples_csv(const std::string& path, int level);

/// {"n": ..., "f0": ..., "truncated": ..., "coeffs": [{"m","k","value"}]},
/// coefficients sorted by (m, k).
void write_coeffs_json(std::ostream& out, const EstimateResult& result);

/// `m,k,value` rows in the same order.
void write_coeffs_csv(std::ostream& out, const EstimateResult& result);

}  // namespace schauder
