#include "schauder/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace schauder {

namespace {

[[noreturn]] void fail_row(std::size_t row, const std::string& what) {
  throw ValidationError("row " + std::to_string(row) + ": " + what);
}

// Either a plain decimal or an exact fraction k/2^L.
double parse_t(const std::string& field, std::size_t row, int level,
               std::int64_t index, bool* exact) {
  auto caret = field.find("/2^");
  if (caret != std::string::npos) {
    std::int64_t num = 0;
    int denom_level = 0;
    auto [p1, e1] =
        std::from_chars(field.data(), field.data() + caret, num);
    const char* exp_begin = field.data() + caret + 3;
    auto [p2, e2] =
        std::from_chars(exp_begin, field.data() + field.size(), denom_level);
    if (e1 != std::errc{} || e2 != std::errc{} || p1 != field.data() + caret ||
        p2 != field.data() + field.size() || num < 0 || denom_level < 0 ||
        denom_level > kMaxLevel) {
      fail_row(row, "malformed fraction '" + field + "'");
    }
    // exact grid membership: k 2^-L == index 2^-level
    bool match = denom_level <= level
                     ? num * pow2i(level - denom_level) == index
                     : num == index * pow2i(denom_level - level);
    if (!match) {
      fail_row(row, "t = " + field + " is not grid point " +
                        std::to_string(index) + "/2^" + std::to_string(level));
    }
    *exact = true;
    return std::ldexp(double(num), -denom_level);
  }
  try {
    std::size_t used = 0;
    double value = std::stod(field, &used);
    if (used != field.size()) fail_row(row, "malformed t '" + field + "'");
    *exact = false;
    return value;
  } catch (const std::logic_error&) {
    fail_row(row, "malformed t '" + field + "'");
  }
}

}  // namespace

SampleVector read_samples_csv(const std::string& path, int level) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");

  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_not_of("tF, \"") == std::string::npos) {
      continue;  // header
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) fail_row(lineno, "expected 't,F'");
    rows.push_back({lineno,
                    {line.substr(0, comma), line.substr(comma + 1)}});
  }

  if (level < 0) {
    std::size_t cells = rows.empty() ? 0 : rows.size() - 1;
    if (cells < 2 || (cells & (cells - 1)) != 0) {
      throw ValidationError("cannot infer level: row count must be 2^L + 1");
    }
    level = 0;
    while ((std::size_t(1) << level) < cells) ++level;
  }
  if (rows.size() != std::size_t(pow2i(level)) + 1) {
    throw ValidationError("expected " + std::to_string(pow2i(level) + 1) +
                          " data rows for level " + std::to_string(level) +
                          ", got " + std::to_string(rows.size()));
  }

  Eigen::VectorXd values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [lineno_i, fields] = rows[i];
    bool exact = false;
    double t =
        parse_t(fields.first, lineno_i, level, std::int64_t(i), &exact);
    if (!exact &&
        std::abs(t - std::ldexp(double(i), -level)) > 1e-12) {
      fail_row(lineno_i, "t = " + fields.first + " does not match grid point " +
                             std::to_string(i) + "/2^" + std::to_string(level));
    }
    try {
      std::size_t used = 0;
      values[Eigen::Index(i)] = std::stod(fields.second, &used);
      if (used != fields.second.size()) {
        fail_row(lineno_i, "malformed F '" + fields.second + "'");
      }
    } catch (const std::logic_error&) {
      fail_row(lineno_i, "malformed F '" + fields.second + "'");
    }
  }
  return SampleVector(level, std::move(values));
}

void write_coeffs_json(std::ostream& out, const EstimateResult& result) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int m = -1; m <= result.coeffs.max_generation(); ++m) {
    auto gen = result.coeffs.generation(m);
    for (Eigen::Index k = 0; k < gen.size(); ++k) {
      coeffs.push_back({{"m", m}, {"k", k}, {"value", gen[k]}});
    }
  }
  nlohmann::json doc{{"n", result.n},
                     {"f0", result.f0_hat},
                     {"truncated", result.truncated},
                     {"coeffs", std::move(coeffs)}};
  out << doc.dump(2) << "\n";
}

void write_coeffs_csv(std::ostream& out, const EstimateResult& result) {
  out << "m,k,value\n";
  std::ostringstream fmt;
  fmt.precision(17);
  for (int m = -1; m <= result.coeffs.max_generation(); ++m) {
    auto gen = result.coeffs.generation(m);
    for (Eigen::Index k = 0; k < gen.size(); ++k) {
      fmt.str("");
      fmt << gen[k];
      out << m << "," << k << "," << fmt.str() << "\n";
    }
  }
}

}  // namespace schauder
