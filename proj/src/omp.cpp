#include "zpotfs/omp.hpp"

#include <algorithm>

namespace zpotfs {

OmpConfig default_omp_config(const GridParams& p, double noise_variance) {
    OmpConfig cfg;
    cfg.max_taps = std::min(p.q(), 2 * static_cast<int>(eva_profile().size()));
    cfg.noise_variance = noise_variance;
    return cfg;
}

OmpResult omp(const Eigen::Ref<const Eigen::MatrixXcd>& atoms,
              const Eigen::Ref<const Eigen::VectorXcd>& y, const OmpConfig& cfg) {
    const Eigen::Index rows = atoms.rows();
    const Eigen::Index cols = atoms.cols();
    if (y.size() != rows) throw std::invalid_argument("omp: observation length mismatch");
    if (cfg.max_taps < 1) throw std::invalid_argument("omp: max_taps must be at least 1");
    if (cfg.max_taps > std::min(rows, cols))
        throw std::invalid_argument("omp: max_taps exceeds min(rows, columns)");

    const Eigen::VectorXd col_norms = atoms.colwise().norm();
    if (col_norms.maxCoeff() == 0.0)
        throw std::invalid_argument("omp: dictionary has no nonzero columns");

    const double y_energy = y.squaredNorm();
    const double noise_floor = (1.0 + cfg.residual_tol_factor) * rows * cfg.noise_variance;
    const double machine_floor = 1e-24 * y_energy;

    OmpResult res;
    res.h_hat = Eigen::VectorXcd::Zero(cols);
    Eigen::VectorXcd residual = y;
    Eigen::MatrixXcd selected(rows, cfg.max_taps);
    Eigen::VectorXcd coeffs;
    std::vector<char> in_support(cols, 0);

    for (int j : cfg.initial_support) {
        if (j < 0 || j >= cols) throw std::invalid_argument("omp: warm-start index out of range");
        if (in_support[j] || col_norms(j) == 0.0) continue;
        if (static_cast<int>(res.support.size()) >= cfg.max_taps) break;
        in_support[j] = 1;
        selected.col(static_cast<Eigen::Index>(res.support.size())) = atoms.col(j);
        res.support.push_back(j);
    }
    if (!res.support.empty()) {
        const auto sel = selected.leftCols(static_cast<Eigen::Index>(res.support.size()));
        coeffs = sel.completeOrthogonalDecomposition().solve(y);
        residual = y - sel * coeffs;
    }

    while (static_cast<int>(res.support.size()) < cfg.max_taps) {
        if (residual.squaredNorm() <= std::max(noise_floor, machine_floor)) break;

        const Eigen::VectorXcd corr = atoms.adjoint() * residual;
        Eigen::Index best = -1;
        double best_score = 0.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (in_support[j] || col_norms(j) == 0.0) continue;
            const double score = std::abs(corr(j)) / col_norms(j);
            if (score > best_score) {
                best_score = score;
                best = j;
            }
        }
        // Residual already orthogonal to every usable atom.
        if (best < 0 || best_score <= 1e-14 * std::sqrt(y_energy)) break;

        in_support[best] = 1;
        selected.col(static_cast<Eigen::Index>(res.support.size())) = atoms.col(best);
        res.support.push_back(static_cast<int>(best));

        const auto sel = selected.leftCols(static_cast<Eigen::Index>(res.support.size()));
        coeffs = sel.completeOrthogonalDecomposition().solve(y);
        residual = y - sel * coeffs;
    }

    for (std::size_t t = 0; t < res.support.size(); ++t)
        res.h_hat(res.support[t]) = coeffs(static_cast<Eigen::Index>(t));
    res.residual_norm = residual.norm();
    return res;
}

}  // namespace zpotfs
