#include "zpotfs/mrc.hpp"

#include "zpotfs/channel.hpp"
#include "zpotfs/frame.hpp"
#include "zpotfs/zak.hpp"

namespace zpotfs {

Eigen::MatrixXcd block_gains(const Eigen::Ref<const ChannelVector>& h_hat, int block,
                             const GridParams& p) {
    if (h_hat.size() != p.q()) throw std::invalid_argument("block_gains: channel vector length mismatch");
    if (block < 0 || block >= p.n) throw std::invalid_argument("block_gains: block outside 0..n-1");

    const int mn = p.frame_len();
    const Eigen::VectorXcd z = unit_root_table(mn);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(p.m, p.l_max + 1);
    for (int i = 1; i <= p.q(); ++i) {
        const cplx gain = h_hat(i - 1);
        if (gain == cplx{0.0, 0.0}) continue;
        const auto [l, k] = index_to_lk(i, p);
        for (int m = 0; m < p.m; ++m) {
            const long long t = static_cast<long long>(k) * (static_cast<long long>(block) * p.m + m - l);
            g(m, l) += gain * z(mod_index(t, mn));
        }
    }
    return g;
}

MrcResult mrc_detect(const Eigen::Ref<const TimeVector>& r_d,
                     const Eigen::Ref<const ChannelVector>& h_hat, const GridParams& p,
                     const DetectorConfig& cfg) {
    if (r_d.size() != p.frame_len()) throw std::invalid_argument("mrc_detect: sample count mismatch");
    if (cfg.max_iterations < 1) throw std::invalid_argument("mrc_detect: max_iterations must be at least 1");

    const int data_len = p.data_rows();
    const int taps = p.l_max + 1;
    DTFrame soft = DTFrame::Zero(p.m, p.n);
    MrcResult out;

    for (int block = 0; block < p.n; ++block) {
        const Eigen::MatrixXcd g = block_gains(h_hat, block, p);
        const auto y = r_d.segment(static_cast<Eigen::Index>(block) * p.m, p.m);

        // Combining denominator per unknown; rows m+l stay inside the block
        // because l_zp = l_max + 1.
        Eigen::VectorXd denom(data_len);
        for (int m = 0; m < data_len; ++m) {
            double acc = 0.0;
            for (int l = 0; l < taps && m + l < p.m; ++l) acc += std::norm(g(m + l, l));
            if (acc == 0.0) throw detector_degenerate_error(block);
            denom(m) = acc;
        }

        Eigen::VectorXcd d = Eigen::VectorXcd::Zero(data_len);
        for (int it = 0; it < cfg.max_iterations; ++it) {
            double change = 0.0;
            double scale = 0.0;
            for (int m = 0; m < data_len; ++m) {
                cplx num{0.0, 0.0};
                for (int l = 0; l < taps && m + l < p.m; ++l) {
                    cplx interference{0.0, 0.0};
                    for (int lp = 0; lp < taps; ++lp) {
                        if (lp == l) continue;
                        const int idx = m + l - lp;
                        if (idx < 0 || idx >= data_len) continue;
                        interference += g(m + l, lp) * d(idx);
                    }
                    num += std::conj(g(m + l, l)) * (y(m + l) - interference);
                }
                const cplx updated = num / denom(m);
                change += std::norm(updated - d(m));
                scale += std::norm(updated);
                d(m) = updated;
            }
            out.sweeps = std::max(out.sweeps, it + 1);
            if (change <= cfg.convergence_tol * cfg.convergence_tol * std::max(scale, 1e-300))
                break;
        }
        soft.col(block).head(data_len) = d;
    }

    // The DT estimates are Doppler mixtures; decide in the DD domain.
    out.x_dt_soft = soft;
    const DDFrame dd_soft = soft * dft_matrix(p.n);
    out.x_dd_hard = DDFrame::Zero(p.m, p.n);
    for (int k = 0; k < p.n; ++k)
        for (int l = 0; l < data_len; ++l) out.x_dd_hard(l, k) = qam4_slice(dd_soft(l, k));
    out.x_dt_hard = out.x_dd_hard * dft_matrix(p.n).adjoint();
    return out;
}

}  // namespace zpotfs
