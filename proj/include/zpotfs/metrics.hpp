#pragma once

#include <utility>
#include <vector>

#include "zpotfs/types.hpp"

namespace zpotfs {

// ||h_hat - h||^2 / ||h||^2.
double nmse(const Eigen::Ref<const ChannelVector>& h_hat,
            const Eigen::Ref<const ChannelVector>& h);

// 10*log10(peak / mean) of |s|^2 over the frame (CP excluded by the caller).
double papr_db(const Eigen::Ref<const TimeVector>& s);

// P(value > threshold) for each threshold, as count/total.
std::vector<std::pair<double, double>> ccdf(const std::vector<double>& values,
                                            const std::vector<double>& thresholds);

// Smallest x with empirical P(value > x) <= target; resolves "PAPR at
// CCDF = target" readings from a sample.
double ccdf_level(std::vector<double> values, double target);

}  // namespace zpotfs
