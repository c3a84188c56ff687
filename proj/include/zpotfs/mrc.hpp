#pragma once

#include "zpotfs/types.hpp"

namespace zpotfs {

struct DetectorConfig {
    int max_iterations = 15;
    double convergence_tol = 1e-6;
};

// Per-block channel gains: g(m, l) = sum over taps with delay l of
// gain * z^{k (n*m_grid + m - l)}. Row q = n*m_grid + m of the time-domain
// channel matrix holds g(m, l) at column q - l.
Eigen::MatrixXcd block_gains(const Eigen::Ref<const ChannelVector>& h_hat, int block,
                             const GridParams& p);

struct MrcResult {
    DDFrame x_dd_hard;  // hard 4-QAM decisions, pilot rows zero
    DTFrame x_dt_hard;  // the hard decisions mapped back to delay-time
    DTFrame x_dt_soft;  // converged soft estimates before the decision
    int sweeps = 0;     // largest per-block iteration count
};

// Delay-time MRC detection of the pilot-cancelled signal r_d. Each length-m
// block is an independent banded system in that block's data samples; a
// Gauss-Seidel sweep over the delay branches refines soft estimates until
// the relative change drops below convergence_tol or max_iterations is hit.
// Decisions are made once at the end, in the DD domain where the symbols are
// 4-QAM. Throws detector_degenerate_error when a block has an all-zero
// combining denominator.
MrcResult mrc_detect(const Eigen::Ref<const TimeVector>& r_d,
                     const Eigen::Ref<const ChannelVector>& h_hat, const GridParams& p,
                     const DetectorConfig& cfg);

}  // namespace zpotfs
