#pragma once

#include "zpotfs/mrc.hpp"
#include "zpotfs/omp.hpp"
#include "zpotfs/types.hpp"

namespace zpotfs {

struct ReceiverConfig {
    OmpConfig omp_step1;
    OmpConfig omp_step2;
    DetectorConfig detector;
    bool warm_start_step2 = false;  // seed step 2 with the step-1 support
};

ReceiverConfig default_receiver_config(const GridParams& p, double noise_variance);

// First step: restrict r to the interference-free pilot rows, build the
// row-restricted pilot dictionary from s_p, and recover the channel by OMP.
OmpResult step1_estimate(const Eigen::Ref<const TimeVector>& r,
                         const Eigen::Ref<const TimeVector>& s_p, const GridParams& p,
                         const OmpConfig& cfg);

// r minus the channel-affected pilot, leaving the channel-affected data plus
// the residual interference of the estimation error.
TimeVector cancel_pilot(const Eigen::Ref<const TimeVector>& r,
                        const Eigen::Ref<const ChannelVector>& h_hat,
                        const Eigen::Ref<const TimeVector>& s_p, const GridParams& p);

// Second step: pilot and detected data jointly act as the known signal; the
// dictionary is built from s_p + s_d_hat over all mn rows and OMP runs on the
// full received vector.
OmpResult step2_estimate(const Eigen::Ref<const TimeVector>& r,
                         const Eigen::Ref<const TimeVector>& s_p,
                         const Eigen::Ref<const TimeVector>& s_d_hat, const GridParams& p,
                         const OmpConfig& cfg);

struct ReceiverOutput {
    ChannelVector h_step1;
    ChannelVector h_step2;
    DDFrame x_dd_step1;   // first-pass hard decisions (kept for per-step curves)
    DTFrame x_dt_step1;   // their delay-time image, the step-2 joint pilot
    DDFrame x_dd_final;   // second-pass hard decisions
    double residual_step1 = 0.0;
    double residual_step2 = 0.0;
    int support_step1 = 0;
    int support_step2 = 0;
};

// Full receiver: estimate from pilot rows, cancel the pilot, MRC-detect,
// re-estimate from the joint pilot, cancel and detect again.
ReceiverOutput run_receiver(const Eigen::Ref<const TimeVector>& r,
                            const Eigen::Ref<const TimeVector>& s_p, const GridParams& p,
                            const ReceiverConfig& cfg);

}  // namespace zpotfs
