#pragma once

#include <string>
#include <string_view>

#include "pcineq/gaussian.hpp"

namespace pcineq {

// CSV: header row of labels, then one row per label, full symmetric storage.
CovarianceMatrix parse_covariance(std::string_view text);
CovarianceMatrix load_covariance(const std::string& path);
std::string serialize_covariance(const CovarianceMatrix& s);

// Shortest round-tripping decimal form that always shows a decimal point
// or exponent, e.g. "0.0", "0.33333333333333331".
std::string format_real(double v);

}  // namespace pcineq
