#include "zpotfs/frame.hpp"

#include <numeric>

namespace zpotfs {

Eigen::VectorXcd zadoff_chu(int length, int root) {
    if (length < 1) throw std::invalid_argument("zadoff_chu: length must be positive");
    if (std::gcd(std::abs(root), length) != 1)
        throw std::invalid_argument("zadoff_chu: root must be coprime with length");
    Eigen::VectorXcd z(length);
    for (int t = 0; t < length; ++t) {
        // Quadratic exponent reduced mod 2*length before the division keeps
        // the phase argument exact for long sequences.
        const long long num = (length % 2 == 1)
                                  ? static_cast<long long>(root) * t % (2LL * length) * (t + 1) % (2LL * length)
                                  : static_cast<long long>(root) * t % (2LL * length) * t % (2LL * length);
        const double arg = -std::numbers::pi * static_cast<double>(num) / length;
        z(t) = cplx{std::cos(arg), std::sin(arg)};
    }
    return z;
}

Eigen::VectorXcd qam4_mod(const BitVector& bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("qam4_mod: bit count must be even");
    const double a = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXcd out(bits.size() / 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out(i) = cplx{bits[2 * i] ? -a : a, bits[2 * i + 1] ? -a : a};
    }
    return out;
}

BitVector qam4_demod(const Eigen::Ref<const Eigen::VectorXcd>& symbols) {
    BitVector bits(2 * symbols.size());
    for (Eigen::Index i = 0; i < symbols.size(); ++i) {
        bits[2 * i] = symbols(i).real() < 0.0 ? 1 : 0;
        bits[2 * i + 1] = symbols(i).imag() < 0.0 ? 1 : 0;
    }
    return bits;
}

int data_bits_per_frame(const GridParams& p) { return 2 * p.data_rows() * p.n; }

TxFrame assemble_frame(const BitVector& bits, const GridParams& p, const PilotConfig& pc) {
    p.validate();
    if (static_cast<int>(bits.size()) != data_bits_per_frame(p))
        throw std::invalid_argument("assemble_frame: bit payload must be 2*(m-l_zp)*n bits");

    TxFrame f;
    f.x_data = DDFrame::Zero(p.m, p.n);
    f.x_pilot = DDFrame::Zero(p.m, p.n);

    const Eigen::VectorXcd symbols = qam4_mod(bits);
    const int rows = p.data_rows();
    for (Eigen::Index i = 0; i < symbols.size(); ++i)
        f.x_data(i % rows, i / rows) = symbols(i);

    if (pc.pilot_amplitude <= 0.0)
        throw std::invalid_argument("assemble_frame: pilot_amplitude must be positive");
    const Eigen::VectorXcd zc = zadoff_chu(p.l_zp * p.n, pc.root);
    for (Eigen::Index i = 0; i < zc.size(); ++i)
        f.x_pilot(rows + i % p.l_zp, i / p.l_zp) = pc.pilot_amplitude * zc(i);

    f.x = f.x_data + f.x_pilot;
    return f;
}

long overhead_proposed(const GridParams& p) {
    return static_cast<long>(p.l_max + 1) * p.n;
}

}  // namespace zpotfs
