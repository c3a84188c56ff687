#include "zpotfs/dictionary.hpp"

#include <numeric>

namespace zpotfs {

Eigen::VectorXcd psi_column(const Eigen::Ref<const TimeVector>& g, int l, int k,
                            const GridParams& p) {
    const int mn = p.frame_len();
    if (g.size() != mn) throw std::invalid_argument("psi_column: sample count mismatch");
    if (l < 0 || l > p.l_max || std::abs(k) > p.k_max)
        throw std::invalid_argument("psi_column: (l, k) outside the channel spread");

    const Eigen::VectorXcd z = unit_root_table(mn);
    Eigen::VectorXcd col(mn);
    for (int q = 0; q < mn; ++q)
        col(q) = z(mod_index(static_cast<long long>(k) * (q - l), mn)) * g(mod_index(q - l, mn));
    return col;
}

std::vector<int> pilot_rows(const GridParams& p) {
    std::vector<int> rows(p.n);
    for (int n = 0; n < p.n; ++n) rows[n] = n * p.m + (p.m - 1);
    return rows;
}

Dictionary build_dictionary(const Eigen::Ref<const TimeVector>& g, const std::vector<int>& rows,
                            const GridParams& p) {
    if (rows.empty()) throw std::invalid_argument("build_dictionary: empty row set");
    const int mn = p.frame_len();
    if (g.size() != mn) throw std::invalid_argument("build_dictionary: sample count mismatch");
    for (int r : rows)
        if (r < 0 || r >= mn)
            throw std::invalid_argument("build_dictionary: row index outside 0..mn-1");

    const Eigen::VectorXcd z = unit_root_table(mn);
    Dictionary d;
    d.row_index_map = rows;
    d.atoms.resize(static_cast<Eigen::Index>(rows.size()), p.q());
    for (int i = 1; i <= p.q(); ++i) {
        const auto [l, k] = index_to_lk(i, p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const int q = rows[r];
            d.atoms(static_cast<Eigen::Index>(r), i - 1) =
                z(mod_index(static_cast<long long>(k) * (q - l), mn)) * g(mod_index(q - l, mn));
        }
    }
    return d;
}

Dictionary build_dictionary(const Eigen::Ref<const TimeVector>& g, const GridParams& p) {
    std::vector<int> all(p.frame_len());
    std::iota(all.begin(), all.end(), 0);
    return build_dictionary(g, all, p);
}

}  // namespace zpotfs
