#include <doctest.h>

#include "test_support.hpp"
#include "zpotfs/channel.hpp"
#include "zpotfs/frame.hpp"
#include "zpotfs/mrc.hpp"
#include "zpotfs/zak.hpp"

using namespace zpotfs;

namespace {

// Banded per-block system matrix assembled from the gains: row m', column m
// holds g(m', m'-m) for 0 <= m'-m <= l_max.
Eigen::MatrixXcd block_system(const Eigen::MatrixXcd& g, const GridParams& p) {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(p.m, p.data_rows());
    for (int row = 0; row < p.m; ++row)
        for (int col = 0; col < p.data_rows(); ++col) {
            const int l = row - col;
            if (l >= 0 && l <= p.l_max) G(row, col) = g(row, l);
        }
    return G;
}

}  // namespace

TEST_CASE("block_gains explicit forms and dense-H agreement") {
    const auto p = make_grid(4, 4, 15e3, 4e9, 1, 1);

    ChannelVector h = ChannelVector::Zero(p.q());
    h(lk_to_index(0, 0, p) - 1) = 1.0;
    for (int block = 0; block < p.n; ++block) {
        const Eigen::MatrixXcd g = block_gains(h, block, p);
        CHECK((g.col(0) - Eigen::VectorXcd::Ones(p.m)).norm() < 1e-14);
        CHECK(g.col(1).norm() == 0.0);
    }

    h.setZero();
    h(lk_to_index(0, 1, p) - 1) = 1.0;
    const Eigen::VectorXcd z = unit_root_table(p.frame_len());
    for (int block = 0; block < p.n; ++block) {
        const Eigen::MatrixXcd g = block_gains(h, block, p);
        for (int m = 0; m < p.m; ++m)
            CHECK(std::abs(g(m, 0) - z(mod_index(block * p.m + m, p.frame_len()))) < 1e-14);
    }

    test::Rng rng(23);
    const ChannelVector random_h = test::random_channel(p, 5, rng);
    const Eigen::MatrixXcd H = build_dense_H(random_h, p);
    for (int block = 0; block < p.n; ++block) {
        const Eigen::MatrixXcd g = block_gains(random_h, block, p);
        for (int m = 0; m < p.m; ++m)
            for (int l = 0; l <= std::min(m, p.l_max); ++l)
                CHECK(std::abs(H(block * p.m + m, block * p.m + m - l) - g(m, l)) < 1e-13);
    }
}

TEST_CASE("identity channel detects exactly") {
    const auto p = make_grid(8, 4, 15e3, 4e9, 0, 1);
    test::Rng rng(29);
    const TxFrame f = assemble_frame(test::random_bits(data_bits_per_frame(p), rng), p, {});
    ChannelVector h = ChannelVector::Zero(p.q());
    h(lk_to_index(0, 0, p) - 1) = 1.0;

    const TimeVector r_d = idzt(f.x_data, p);  // identity channel, pilots already removed
    const MrcResult det = mrc_detect(r_d, h, p, {});
    CHECK((det.x_dd_hard - f.x_data).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("noiseless multitap detection matches the per-block solve oracle") {
    const auto p = make_grid(8, 4, 15e3, 4e9, 2, 1);
    test::Rng rng(31);
    const TxFrame f = assemble_frame(test::random_bits(data_bits_per_frame(p), rng), p, {});

    ChannelVector h = ChannelVector::Zero(p.q());
    h(lk_to_index(0, 1, p) - 1) = cplx{0.8, 0.3};
    h(lk_to_index(2, -1, p) - 1) = cplx{-0.4, 0.5};

    const TimeVector r_d = apply_channel(idzt(f.x_data, p), h, p);
    const MrcResult det = mrc_detect(r_d, h, p, {.max_iterations = 60, .convergence_tol = 1e-12});

    CHECK((det.x_dd_hard - f.x_data).cwiseAbs().maxCoeff() < 1e-9);

    const DTFrame dt_data = f.x_data * dft_matrix(p.n).adjoint();
    for (int block = 0; block < p.n; ++block) {
        const Eigen::MatrixXcd G = block_system(block_gains(h, block, p), p);
        const Eigen::VectorXcd oracle =
            G.completeOrthogonalDecomposition().solve(r_d.segment(block * p.m, p.m));
        CHECK((det.x_dt_soft.col(block).head(p.data_rows()) - oracle).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((oracle - dt_data.col(block).head(p.data_rows())).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("detection works without a zero-delay tap") {
    const auto p = make_grid(8, 4, 15e3, 4e9, 1, 1);
    test::Rng rng(37);
    const TxFrame f = assemble_frame(test::random_bits(data_bits_per_frame(p), rng), p, {});
    ChannelVector h = ChannelVector::Zero(p.q());
    h(lk_to_index(1, 1, p) - 1) = cplx{0.9, -0.2};  // delay-only energy at l = 1

    const TimeVector r_d = apply_channel(idzt(f.x_data, p), h, p);
    const MrcResult det = mrc_detect(r_d, h, p, {.max_iterations = 80, .convergence_tol = 1e-12});
    CHECK((det.x_dd_hard - f.x_data).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("zero channel estimate raises the degenerate-detector error") {
    const auto p = make_grid(8, 4, 15e3, 4e9, 1, 1);
    const TimeVector r_d = TimeVector::Ones(p.frame_len());
    CHECK_THROWS_AS(mrc_detect(r_d, ChannelVector::Zero(p.q()), p, {}),
                    detector_degenerate_error);
}

TEST_CASE("per-block residual is non-increasing over sweeps") {
    const auto p = make_grid(8, 4, 15e3, 4e9, 2, 1);
    test::Rng rng(41);
    const ChannelVector h = test::random_channel(p, 4, rng);
    const TimeVector r_d = test::random_vector(p.frame_len(), rng);  // includes noise-like parts

    std::vector<double> residuals;
    for (int sweeps = 1; sweeps <= 6; ++sweeps) {
        const MrcResult det =
            mrc_detect(r_d, h, p, {.max_iterations = sweeps, .convergence_tol = 0.0});
        double total = 0.0;
        for (int block = 0; block < p.n; ++block) {
            const Eigen::MatrixXcd G = block_system(block_gains(h, block, p), p);
            total += (r_d.segment(block * p.m, p.m) -
                      G * det.x_dt_soft.col(block).head(p.data_rows()))
                         .squaredNorm();
        }
        residuals.push_back(total);
    }
    for (std::size_t i = 1; i < residuals.size(); ++i)
        CHECK(residuals[i] <= residuals[i - 1] + 1e-12);
}

TEST_CASE("blocks are processed independently") {
    const auto p = make_grid(8, 4, 15e3, 4e9, 1, 1);
    test::Rng rng(43);
    // Delay-only channel: gains do not depend on the block index, so swapping
    // two blocks of the input must swap the corresponding soft outputs.
    ChannelVector h = ChannelVector::Zero(p.q());
    h(lk_to_index(0, 0, p) - 1) = cplx{1.0, 0.2};
    h(lk_to_index(1, 0, p) - 1) = cplx{0.3, -0.4};

    const TimeVector r_d = test::random_vector(p.frame_len(), rng);
    TimeVector swapped = r_d;
    swapped.segment(0, p.m).swap(swapped.segment(2 * p.m, p.m));

    const DetectorConfig cfg{.max_iterations = 30, .convergence_tol = 1e-10};
    const MrcResult a = mrc_detect(r_d, h, p, cfg);
    const MrcResult b = mrc_detect(swapped, h, p, cfg);
    CHECK((a.x_dt_soft.col(0) - b.x_dt_soft.col(2)).norm() == 0.0);
    CHECK((a.x_dt_soft.col(2) - b.x_dt_soft.col(0)).norm() == 0.0);
    CHECK((a.x_dt_soft.col(1) - b.x_dt_soft.col(1)).norm() == 0.0);
}
