#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zpotfs/random.hpp"
#include "zpotfs/types.hpp"

namespace zpotfs {

struct LkPair {
    int l;
    int k;
};

// Maps the 1-based channel-vector index onto its (delay, Doppler) pair:
// l = (i-1) mod (l_max+1), k = floor((i-1)/(l_max+1)) folded into
// [-k_max, k_max]. Bijective on 1..Q.
LkPair index_to_lk(int i, const GridParams& p);
int lk_to_index(int l, int k, const GridParams& p);

struct ChannelTap {
    int l = 0;
    int k = 0;
    cplx gain{0.0, 0.0};
};

// One power-delay-profile path.
struct PathSpec {
    double delay_ns;
    double power_db;
};

// 3GPP Extended Vehicular A profile (9 paths).
const std::vector<PathSpec>& eva_profile();

// Reads a profile from a delimited text file, one "delay_ns power_db" pair
// per line ('#' starts a comment).
std::vector<PathSpec> load_profile(const std::string& path);

double max_doppler_hz(double fc_hz, double speed_kmh);

// Largest delay / Doppler bin the profile and mobile speed map onto.
int max_delay_bin(const std::vector<PathSpec>& profile, int m, double delta_f);
int max_doppler_bin(double nu_max_hz, int n, double delta_f);

// Physical channel description used to draw random realizations.
struct ChannelModel {
    std::vector<PathSpec> profile;  // powers normalized at draw time
    double nu_max_hz = 0.0;
};

// Draws one block-fading realization: per path, a complex Gaussian gain with
// the profile's (normalized) power, delay bin round(tau*m*delta_f), Doppler
// bin round(nu_max*cos(theta)*n/delta_f) with theta uniform. Paths landing on
// the same (l, k) add up. Throws std::invalid_argument when a path maps
// outside the grid's spread bounds.
ChannelVector generate_sparse_channel(const GridParams& p, const ChannelModel& model, Rng& rng);

// EVA + Jakes shorthand used by the experiments.
ChannelVector generate_eva_jakes(const GridParams& p, double nu_max_hz, Rng& rng);

// r[q] = sum_i h_i * z^{k_i (q - l_i)} * s[(q - l_i) mod mn], z = exp(i*2*pi/mn).
// Tap-wise circular delay-and-modulate; never materializes the mn x mn matrix.
TimeVector apply_channel(const Eigen::Ref<const TimeVector>& s,
                         const Eigen::Ref<const ChannelVector>& h, const GridParams& p);

// Explicit sum of h_i * Pi^{l_i} * Delta^{k_i} (test oracle).
Eigen::MatrixXcd build_dense_H(const Eigen::Ref<const ChannelVector>& h, const GridParams& p,
                               int size_cap = 4096);

// Adds circularly-symmetric complex Gaussian noise with per-sample variance
// 10^(-snr_db/10); returns the noisy vector and that variance. An infinite
// snr_db passes the signal through unchanged.
std::pair<TimeVector, double> add_awgn(const Eigen::Ref<const TimeVector>& r, double snr_db,
                                       Rng& rng);

// z^t lookup table, t = 0..mn-1, built with one std::polar per entry so phase
// values are reproducible across the channel, dictionary, and gain builders.
Eigen::VectorXcd unit_root_table(int mn);

inline int mod_index(long long t, int mn) {
    const long long r = t % mn;
    return static_cast<int>(r < 0 ? r + mn : r);
}

}  // namespace zpotfs
