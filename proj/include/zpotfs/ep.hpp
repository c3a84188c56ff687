#pragma once

#include <vector>
#include <utility>

#include "zpotfs/frame.hpp"
#include "zpotfs/types.hpp"

namespace zpotfs {

// Embedded-pilot baseline: one high-power DD impulse surrounded by guard
// bins, estimated by thresholding the received DD window. Deployed inside
// the zero-padded grid so the same MRC detector applies.
struct EpConfig {
    int pilot_delay = 0;       // l_p
    int pilot_doppler = -1;    // k_p; -1 selects floor(n/2)
    double threshold_factor = 3.0;  // multiples of the per-bin noise std
};

// sqrt((4*k_max + 1) * (2*l_max + 1)): pilot power matching the bins the
// guard region takes away, so the frame average power stays at one.
double ep_pilot_amplitude(const GridParams& p);

// Pilot plus guard bins claimed by the scheme.
long overhead_ep(const GridParams& p);

struct EpFrame {
    DDFrame x;        // data + pilot, average power exactly 1
    DDFrame x_pilot;  // the single impulse
    // Data bins in fill order (column-major over the data rows, guard bins
    // skipped); fixes the bit <-> bin mapping for error counting.
    std::vector<std::pair<int, int>> data_bins;
    double data_scale = 1.0;  // per-symbol boost applied to keep power at 1
};

int ep_data_bits(const GridParams& p, const EpConfig& cfg);

// Pilot at (l_p, k_p); guard rows l_p .. l_p+2*l_max by guard columns
// k_p-2*k_max .. k_p+2*k_max (mod n); data elsewhere in the data rows.
// Throws std::invalid_argument when the guard region does not fit.
EpFrame ep_build_frame(const BitVector& bits, const GridParams& p, const EpConfig& cfg);

// Threshold detection on the (l_max+1) x (2*k_max+1) window around the
// pilot: bins above threshold_factor * sqrt(noise_variance) become taps with
// gain = bin value / (amplitude * pilot shift phase).
ChannelVector ep_estimate(const Eigen::Ref<const DDFrame>& y_dd, const GridParams& p,
                          const EpConfig& cfg, double noise_variance);

inline int ep_pilot_doppler(const GridParams& p, const EpConfig& cfg) {
    return cfg.pilot_doppler < 0 ? p.n / 2 : cfg.pilot_doppler;
}

}  // namespace zpotfs
