#include "zpotfs/ep.hpp"

#include "zpotfs/channel.hpp"

namespace zpotfs {

double ep_pilot_amplitude(const GridParams& p) {
    return std::sqrt(static_cast<double>(4 * p.k_max + 1) * (2 * p.l_max + 1));
}

long overhead_ep(const GridParams& p) {
    return static_cast<long>(2 * p.l_max + 1) * (4 * p.k_max + 1);
}

namespace {

// Guard membership over the full grid, pilot bin included.
bool in_guard(int l, int k, const GridParams& p, const EpConfig& cfg) {
    const int k_p = ep_pilot_doppler(p, cfg);
    if (l < cfg.pilot_delay || l > cfg.pilot_delay + 2 * p.l_max) return false;
    const int dk = mod_index(k - k_p, p.n);
    return dk <= 2 * p.k_max || dk >= p.n - 2 * p.k_max;
}

void check_geometry(const GridParams& p, const EpConfig& cfg) {
    if (cfg.pilot_delay < 0 || cfg.pilot_delay + 2 * p.l_max >= p.data_rows())
        throw std::invalid_argument("ep: guard rows do not fit above the zero-pad rows");
    if (4 * p.k_max + 1 > p.n)
        throw std::invalid_argument("ep: guard columns do not fit in the Doppler axis");
    const int k_p = ep_pilot_doppler(p, cfg);
    if (k_p < 0 || k_p >= p.n)
        throw std::invalid_argument("ep: pilot Doppler bin outside the grid");
}

}  // namespace

int ep_data_bits(const GridParams& p, const EpConfig& cfg) {
    check_geometry(p, cfg);
    const long data_bins =
        static_cast<long>(p.data_rows()) * p.n - overhead_ep(p);
    return static_cast<int>(2 * data_bins);
}

EpFrame ep_build_frame(const BitVector& bits, const GridParams& p, const EpConfig& cfg) {
    p.validate();
    check_geometry(p, cfg);
    if (static_cast<int>(bits.size()) != ep_data_bits(p, cfg))
        throw std::invalid_argument("ep_build_frame: bit payload does not match the data bins");

    const double amp = ep_pilot_amplitude(p);
    const long n_data = static_cast<long>(bits.size()) / 2;
    // Data symbols are boosted so the frame average power is exactly one:
    // the pilot carries amp^2 = overhead_ep(p), the zero-pad rows carry none.
    const double scale =
        std::sqrt((static_cast<double>(p.frame_len()) - amp * amp) / static_cast<double>(n_data));

    EpFrame f;
    f.data_scale = scale;
    f.x = DDFrame::Zero(p.m, p.n);
    f.x_pilot = DDFrame::Zero(p.m, p.n);
    f.x_pilot(cfg.pilot_delay, ep_pilot_doppler(p, cfg)) = amp;

    const Eigen::VectorXcd symbols = qam4_mod(bits);
    f.data_bins.reserve(static_cast<std::size_t>(n_data));
    Eigen::Index s = 0;
    for (int k = 0; k < p.n; ++k) {
        for (int l = 0; l < p.data_rows(); ++l) {
            if (in_guard(l, k, p, cfg)) continue;
            f.x(l, k) = scale * symbols(s++);
            f.data_bins.emplace_back(l, k);
        }
    }
    f.x += f.x_pilot;
    return f;
}

ChannelVector ep_estimate(const Eigen::Ref<const DDFrame>& y_dd, const GridParams& p,
                          const EpConfig& cfg, double noise_variance) {
    if (y_dd.rows() != p.m || y_dd.cols() != p.n)
        throw std::invalid_argument("ep_estimate: frame dimensions do not match grid");
    check_geometry(p, cfg);
    if (noise_variance < 0.0)
        throw std::invalid_argument("ep_estimate: noise variance must be nonnegative");

    const double amp = ep_pilot_amplitude(p);
    const double threshold = cfg.threshold_factor * std::sqrt(noise_variance);
    const int k_p = ep_pilot_doppler(p, cfg);
    const Eigen::VectorXcd z = unit_root_table(p.frame_len());

    ChannelVector h = ChannelVector::Zero(p.q());
    for (int l = 0; l <= p.l_max; ++l) {
        for (int k = -p.k_max; k <= p.k_max; ++k) {
            const cplx bin = y_dd(cfg.pilot_delay + l, mod_index(k_p + k, p.n));
            if (std::abs(bin) <= threshold) continue;
            // A tap (l, k) reaches the window bin with the extra phase
            // z^{k * l_p} picked up by modulating the shifted pilot.
            const cplx phase = z(mod_index(static_cast<long long>(k) * cfg.pilot_delay, p.frame_len()));
            h(lk_to_index(l, k, p) - 1) = bin / (amp * phase);
        }
    }
    return h;
}

}  // namespace zpotfs
