#include "zpotfs/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace zpotfs {

double nmse(const Eigen::Ref<const ChannelVector>& h_hat,
            const Eigen::Ref<const ChannelVector>& h) {
    if (h_hat.size() != h.size()) throw std::invalid_argument("nmse: length mismatch");
    const double ref = h.squaredNorm();
    if (ref == 0.0) throw std::invalid_argument("nmse: true channel is zero");
    return (h_hat - h).squaredNorm() / ref;
}

double papr_db(const Eigen::Ref<const TimeVector>& s) {
    if (s.size() == 0) throw std::invalid_argument("papr: empty signal");
    const double mean = s.squaredNorm() / static_cast<double>(s.size());
    if (mean == 0.0) throw std::invalid_argument("papr: zero signal");
    const double peak = s.cwiseAbs2().maxCoeff();
    return 10.0 * std::log10(peak / mean);
}

std::vector<std::pair<double, double>> ccdf(const std::vector<double>& values,
                                            const std::vector<double>& thresholds) {
    if (values.empty()) throw std::invalid_argument("ccdf: no values");
    std::vector<std::pair<double, double>> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) {
        const auto above = std::count_if(values.begin(), values.end(),
                                         [t](double v) { return v > t; });
        out.emplace_back(t, static_cast<double>(above) / static_cast<double>(values.size()));
    }
    return out;
}

double ccdf_level(std::vector<double> values, double target) {
    if (values.empty()) throw std::invalid_argument("ccdf_level: no values");
    if (target <= 0.0 || target >= 1.0)
        throw std::invalid_argument("ccdf_level: target must be in (0, 1)");
    std::sort(values.begin(), values.end());
    // P(value > values[i]) = (n - 1 - i)/n; want the smallest value with that
    // fraction at or below the target.
    const auto n = static_cast<long>(values.size());
    long idx = n - 1 - static_cast<long>(std::floor(target * static_cast<double>(n)));
    idx = std::clamp(idx, 0L, n - 1);
    return values[static_cast<std::size_t>(idx)];
}

}  // namespace zpotfs
