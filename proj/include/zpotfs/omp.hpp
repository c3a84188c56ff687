#pragma once

#include <vector>

#include "zpotfs/dictionary.hpp"
#include "zpotfs/types.hpp"

namespace zpotfs {

// Termination: |support| reaches max_taps, or the residual energy drops to
// the noise floor, ||res||^2 <= (1 + residual_tol_factor) * rows * noise_variance.
// A relative machine floor of 1e-24 * ||y||^2 also stops noiseless runs.
// initial_support warm-starts the pursuit with preselected atoms (fit by
// least squares before any greedy step).
struct OmpConfig {
    int max_taps = 1;
    double residual_tol_factor = 0.1;
    double noise_variance = 0.0;
    std::vector<int> initial_support;
};

// max_taps = min(Q, 2 * expected path count) with the 9-path EVA profile.
OmpConfig default_omp_config(const GridParams& p, double noise_variance);

struct OmpResult {
    Eigen::VectorXcd h_hat;    // coefficients scattered over all columns
    std::vector<int> support;  // selected column indices, selection order
    double residual_norm = 0.0;
};

// Orthogonal matching pursuit. Atom selection correlates the residual against
// norm-normalized columns (zero-norm columns are skipped, ties break to the
// lowest index); coefficients are refit by least squares on the selected
// columns each iteration, minimum-norm on rank deficiency.
OmpResult omp(const Eigen::Ref<const Eigen::MatrixXcd>& atoms,
              const Eigen::Ref<const Eigen::VectorXcd>& y, const OmpConfig& cfg);

inline OmpResult omp(const Dictionary& d, const Eigen::Ref<const Eigen::VectorXcd>& y,
                     const OmpConfig& cfg) {
    return omp(d.atoms, y, cfg);
}

}  // namespace zpotfs
