#pragma once

#include "zpotfs/types.hpp"

namespace zpotfs {

// Unitary n-point DFT matrix, F(j,k) = exp(-i*2*pi*j*k/n)/sqrt(n).
Eigen::MatrixXcd dft_matrix(int n);

// Inverse discrete Zak transform: s = vec(X * F_N^H), column-major
// vectorization. Maps the DD frame to the MN transmit samples; unitary.
TimeVector idzt(const Eigen::Ref<const DDFrame>& x, const GridParams& p);

// Discrete Zak transform: Y = unvec(r) * F_N. Exact inverse of idzt.
DDFrame dzt(const Eigen::Ref<const TimeVector>& r, const GridParams& p);

// Prepends the last cp_len samples of s.
Eigen::VectorXcd add_cp(const Eigen::Ref<const TimeVector>& s, int cp_len);

// Drops the first cp_len samples.
TimeVector remove_cp(const Eigen::Ref<const Eigen::VectorXcd>& x, int cp_len);

}  // namespace zpotfs
