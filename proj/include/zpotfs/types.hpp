#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace zpotfs {

using cplx = std::complex<double>;

// Signal containers. A DDFrame is M x N with row = delay bin l, column =
// Doppler bin k. A DTFrame is M x N with row = delay bin l, column = time
// block n. A TimeVector holds the M*N transmit/receive samples, column-major
// over the DT frame (sample n*M + m belongs to block n, delay row m).
using DDFrame = Eigen::MatrixXcd;
using DTFrame = Eigen::MatrixXcd;
using TimeVector = Eigen::VectorXcd;

// Sparse channel as a dense length-Q coefficient vector; entry i-1 holds the
// gain of the (l, k) pair given by index_to_lk(i).
using ChannelVector = Eigen::VectorXcd;

// Delay-Doppler grid geometry and channel-spread bounds.
struct GridParams {
    int m = 0;             // delay bins
    int n = 0;             // Doppler bins
    double delta_f = 0.0;  // subcarrier spacing [Hz]
    double fc = 0.0;       // carrier frequency [Hz]
    int l_max = 0;         // maximum delay spread [bins]
    int k_max = 0;         // maximum Doppler spread [bins]
    int l_zp = 0;          // zero-pad rows reserved for pilots

    int frame_len() const { return m * n; }
    int q() const { return (l_max + 1) * (2 * k_max + 1); }
    int data_rows() const { return m - l_zp; }
    double t_s() const { return 1.0 / delta_f; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Builds a grid with the l_zp = l_max + 1 pilot allocation and validates it.
GridParams make_grid(int m, int n, double delta_f, double fc, int l_max, int k_max);

// Raised when the MRC detector meets an all-zero combining denominator.
struct detector_degenerate_error : std::runtime_error {
    int block;
    explicit detector_degenerate_error(int block_index)
        : std::runtime_error("mrc_detect: zero combining gain in block " +
                             std::to_string(block_index)),
          block(block_index) {}
};

}  // namespace zpotfs
