#include "zpotfs/zak.hpp"

#include <numbers>

namespace zpotfs {

Eigen::MatrixXcd dft_matrix(int n) {
    if (n < 1) throw std::invalid_argument("dft_matrix: n must be positive");
    Eigen::MatrixXcd f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            // j*k reduced mod n keeps the argument small for large grids.
            const long long t = (static_cast<long long>(j) * k) % n;
            const double arg = -2.0 * std::numbers::pi * static_cast<double>(t) / n;
            f(j, k) = scale * cplx{std::cos(arg), std::sin(arg)};
        }
    }
    return f;
}

TimeVector idzt(const Eigen::Ref<const DDFrame>& x, const GridParams& p) {
    if (x.rows() != p.m || x.cols() != p.n)
        throw std::invalid_argument("idzt: frame dimensions do not match grid");
    const Eigen::MatrixXcd dt = x * dft_matrix(p.n).adjoint();
    return Eigen::Map<const TimeVector>(dt.data(), p.frame_len());
}

DDFrame dzt(const Eigen::Ref<const TimeVector>& r, const GridParams& p) {
    if (r.size() != p.frame_len())
        throw std::invalid_argument("dzt: sample count does not match grid");
    const auto dt = Eigen::Map<const Eigen::MatrixXcd>(r.data(), p.m, p.n);
    return dt * dft_matrix(p.n);
}

Eigen::VectorXcd add_cp(const Eigen::Ref<const TimeVector>& s, int cp_len) {
    if (cp_len < 0 || cp_len > s.size())
        throw std::invalid_argument("add_cp: cp_len out of range");
    Eigen::VectorXcd out(s.size() + cp_len);
    out.head(cp_len) = s.tail(cp_len);
    out.tail(s.size()) = s;
    return out;
}

TimeVector remove_cp(const Eigen::Ref<const Eigen::VectorXcd>& x, int cp_len) {
    if (cp_len < 0 || cp_len >= x.size())
        throw std::invalid_argument("remove_cp: cp_len out of range");
    return x.tail(x.size() - cp_len);
}

}  // namespace zpotfs
