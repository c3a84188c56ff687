#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "zpotfs/types.hpp"

namespace zpotfs {

// Pilot block parameters. One Zadoff-Chu sequence of length l_zp * n spans
// the whole pilot block, filled column-major; amplitude 1 keeps pilot and
// data bins at equal power so the frame average power is exactly one.
struct PilotConfig {
    int root = 1;
    double pilot_amplitude = 1.0;
};

using BitVector = std::vector<std::uint8_t>;

// z[t] = exp(-i*pi*root*t*(t+1)/length) for odd length,
// z[t] = exp(-i*pi*root*t^2/length) for even length. Requires
// gcd(root, length) = 1.
Eigen::VectorXcd zadoff_chu(int length, int root);

// Gray-mapped 4-QAM with unit average power: (b0, b1) -> ((1-2*b0) + i*(1-2*b1))/sqrt(2).
Eigen::VectorXcd qam4_mod(const BitVector& bits);

// Hard decision to the nearest constellation point; boundary ties fall into
// the positive half-planes.
BitVector qam4_demod(const Eigen::Ref<const Eigen::VectorXcd>& symbols);

inline cplx qam4_slice(cplx v) {
    const double a = 1.0 / std::numbers::sqrt2;
    return {v.real() < 0.0 ? -a : a, v.imag() < 0.0 ? -a : a};
}

struct TxFrame {
    DDFrame x;        // x_data + x_pilot
    DDFrame x_data;   // 4-QAM payload in rows 0 .. m-l_zp-1
    DDFrame x_pilot;  // Zadoff-Chu block in rows m-l_zp .. m-1
};

// Payload size of one frame: 2 bits per data bin.
int data_bits_per_frame(const GridParams& p);

// Fills the data rows column-major with qam4_mod(bits) and the pilot rows
// column-major with the scaled Zadoff-Chu sequence. Supports are disjoint.
TxFrame assemble_frame(const BitVector& bits, const GridParams& p, const PilotConfig& pc);

// Pilot bins spent by the zero-pad pilot design: (l_max + 1) * n.
long overhead_proposed(const GridParams& p);

}  // namespace zpotfs
