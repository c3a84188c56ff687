#pragma once

#include <vector>

#include "zpotfs/channel.hpp"
#include "zpotfs/types.hpp"

namespace zpotfs {

// Time-domain signal matrix: column i-1 is the generating signal delayed by
// l_i and Doppler-modulated by k_i (ordering of index_to_lk), restricted to
// the rows in row_index_map.
struct Dictionary {
    Eigen::MatrixXcd atoms;          // |rows| x Q
    std::vector<int> row_index_map;  // global sample index of each row
};

// column[q] = z^{k (q - l)} * g[(q - l) mod mn].
Eigen::VectorXcd psi_column(const Eigen::Ref<const TimeVector>& g, int l, int k,
                            const GridParams& p);

// Sample indices free of data interference: the last sample of every
// length-m sub-symbol, {n*m + (m-1)}.
std::vector<int> pilot_rows(const GridParams& p);

// Dictionary over an explicit row set (first-step shape: N x Q).
Dictionary build_dictionary(const Eigen::Ref<const TimeVector>& g, const std::vector<int>& rows,
                            const GridParams& p);

// Dictionary over all mn rows (second-step shape: MN x Q).
Dictionary build_dictionary(const Eigen::Ref<const TimeVector>& g, const GridParams& p);

}  // namespace zpotfs
