#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/partition.hpp"

namespace ann {

// Joint label counts n_{i,j} = |C_i  intersect  C_j'| with exact integer
// row/column sums.
struct ContingencyTable {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<std::int64_t> counts;    // rows x cols, row-major
    std::vector<std::int64_t> row_sums;  // a_i
    std::vector<std::int64_t> col_sums;  // b_j
    std::int64_t total = 0;

    std::int64_t at(std::int64_t i, std::int64_t j) const {
        return counts[static_cast<std::size_t>(i * cols + j)];
    }
};

ContingencyTable contingency(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

// Fraction of point pairs the two labelings agree on (same/same or
// different/different), computed from the contingency closed form.
double rand_index(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

// Chance-corrected Rand index. All binomial sums are accumulated in 128-bit
// integers; the one floating division happens last. When the correction
// denominator is zero (both labelings trivial) the value is 1 if the two
// partitions coincide as set systems and 0 otherwise.
double adjusted_rand_index(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

inline double rand_index(const Partition& a, const Partition& b) {
    return rand_index(std::span<const std::int32_t>(a.labels), std::span<const std::int32_t>(b.labels));
}
inline double adjusted_rand_index(const Partition& a, const Partition& b) {
    return adjusted_rand_index(std::span<const std::int32_t>(a.labels),
                               std::span<const std::int32_t>(b.labels));
}

}  // namespace ann
