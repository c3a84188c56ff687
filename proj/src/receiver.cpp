#include "zpotfs/receiver.hpp"

#include "zpotfs/channel.hpp"
#include "zpotfs/dictionary.hpp"

namespace zpotfs {

ReceiverConfig default_receiver_config(const GridParams& p, double noise_variance) {
    ReceiverConfig cfg;
    cfg.omp_step1 = default_omp_config(p, noise_variance);
    cfg.omp_step2 = default_omp_config(p, noise_variance);
    return cfg;
}

OmpResult step1_estimate(const Eigen::Ref<const TimeVector>& r,
                         const Eigen::Ref<const TimeVector>& s_p, const GridParams& p,
                         const OmpConfig& cfg) {
    const std::vector<int> rows = pilot_rows(p);
    Eigen::VectorXcd r_pilot(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) r_pilot(static_cast<Eigen::Index>(i)) = r(rows[i]);
    // Only n observations exist in this step; the tap budget cannot exceed them.
    OmpConfig bounded = cfg;
    bounded.max_taps = std::min(cfg.max_taps, static_cast<int>(rows.size()));
    return omp(build_dictionary(s_p, rows, p), r_pilot, bounded);
}

TimeVector cancel_pilot(const Eigen::Ref<const TimeVector>& r,
                        const Eigen::Ref<const ChannelVector>& h_hat,
                        const Eigen::Ref<const TimeVector>& s_p, const GridParams& p) {
    return r - apply_channel(s_p, h_hat, p);
}

OmpResult step2_estimate(const Eigen::Ref<const TimeVector>& r,
                         const Eigen::Ref<const TimeVector>& s_p,
                         const Eigen::Ref<const TimeVector>& s_d_hat, const GridParams& p,
                         const OmpConfig& cfg) {
    const TimeVector joint = s_p + s_d_hat;
    return omp(build_dictionary(joint, p), r, cfg);
}

namespace {

// Failures abort the whole receiver; name the stage that broke.
template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("run_receiver[") + name + "]: " + e.what());
    }
}

}  // namespace

ReceiverOutput run_receiver(const Eigen::Ref<const TimeVector>& r,
                            const Eigen::Ref<const TimeVector>& s_p, const GridParams& p,
                            const ReceiverConfig& cfg) {
    ReceiverOutput out;

    const OmpResult est1 =
        stage("step1-estimate", [&] { return step1_estimate(r, s_p, p, cfg.omp_step1); });
    out.h_step1 = est1.h_hat;
    out.residual_step1 = est1.residual_norm;
    out.support_step1 = static_cast<int>(est1.support.size());

    const TimeVector r_d1 = cancel_pilot(r, est1.h_hat, s_p, p);
    const MrcResult det1 =
        stage("step1-detect", [&] { return mrc_detect(r_d1, est1.h_hat, p, cfg.detector); });
    out.x_dd_step1 = det1.x_dd_hard;
    out.x_dt_step1 = det1.x_dt_hard;

    const TimeVector s_d_hat =
        Eigen::Map<const TimeVector>(det1.x_dt_hard.data(), p.frame_len());
    OmpConfig omp2 = cfg.omp_step2;
    if (cfg.warm_start_step2) omp2.initial_support = est1.support;
    const OmpResult est2 =
        stage("step2-estimate", [&] { return step2_estimate(r, s_p, s_d_hat, p, omp2); });
    out.h_step2 = est2.h_hat;
    out.residual_step2 = est2.residual_norm;
    out.support_step2 = static_cast<int>(est2.support.size());

    const TimeVector r_d2 = cancel_pilot(r, est2.h_hat, s_p, p);
    out.x_dd_final =
        stage("step2-detect", [&] { return mrc_detect(r_d2, est2.h_hat, p, cfg.detector); })
            .x_dd_hard;
    return out;
}

}  // namespace zpotfs
