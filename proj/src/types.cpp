#include "zpotfs/types.hpp"

namespace zpotfs {

void GridParams::validate() const {
    if (m < 2) throw std::invalid_argument("GridParams.m: need at least 2 delay bins");
    if (n < 2) throw std::invalid_argument("GridParams.n: need at least 2 Doppler bins");
    if (delta_f <= 0.0) throw std::invalid_argument("GridParams.delta_f: must be positive");
    if (fc < 0.0) throw std::invalid_argument("GridParams.fc: must be nonnegative");
    if (l_max < 0) throw std::invalid_argument("GridParams.l_max: must be nonnegative");
    if (k_max < 0) throw std::invalid_argument("GridParams.k_max: must be nonnegative");
    if (l_zp != l_max + 1)
        throw std::invalid_argument("GridParams.l_zp: must equal l_max + 1");
    if (l_zp <= 0 || l_zp >= m)
        throw std::invalid_argument("GridParams.l_zp: must satisfy 0 < l_zp < m");
    if (2 * k_max + 1 > n)
        throw std::invalid_argument("GridParams.k_max: 2*k_max + 1 exceeds n");
}

GridParams make_grid(int m, int n, double delta_f, double fc, int l_max, int k_max) {
    GridParams p;
    p.m = m;
    p.n = n;
    p.delta_f = delta_f;
    p.fc = fc;
    p.l_max = l_max;
    p.k_max = k_max;
    p.l_zp = l_max + 1;
    p.validate();
    return p;
}

}  // namespace zpotfs
