#include "core/metrics.hpp"

#include <algorithm>

#include "core/common.hpp"

namespace ann {

namespace {

using int128 = __int128;

int128 choose2(std::int64_t x) {
    return static_cast<int128>(x) * (x - 1) / 2;
}

struct PairSums {
    int128 same_both = 0;   // sum_ij C(n_ij, 2)
    int128 same_a = 0;      // sum_i C(a_i, 2)
    int128 same_b = 0;      // sum_j C(b_j, 2)
    int128 total_pairs = 0; // C(n, 2)
};

PairSums pair_sums(const ContingencyTable& t) {
    PairSums s;
    for (std::int64_t c : t.counts) s.same_both += choose2(c);
    for (std::int64_t a : t.row_sums) s.same_a += choose2(a);
    for (std::int64_t b : t.col_sums) s.same_b += choose2(b);
    s.total_pairs = choose2(t.total);
    return s;
}

// Identical as set systems: at most one nonzero per row and per column.
bool identical_partitions(const ContingencyTable& t) {
    std::vector<int> row_nonzero(static_cast<std::size_t>(t.rows), 0);
    std::vector<int> col_nonzero(static_cast<std::size_t>(t.cols), 0);
    for (std::int64_t i = 0; i < t.rows; ++i)
        for (std::int64_t j = 0; j < t.cols; ++j)
            if (t.at(i, j) > 0) {
                ++row_nonzero[static_cast<std::size_t>(i)];
                ++col_nonzero[static_cast<std::size_t>(j)];
            }
    for (int c : row_nonzero)
        if (c > 1) return false;
    for (int c : col_nonzero)
        if (c > 1) return false;
    return true;
}

}  // namespace

ContingencyTable contingency(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    if (a.size() != b.size()) throw ArgumentError("contingency: label vectors differ in length");
    if (a.empty()) throw ArgumentError("contingency: empty labelings");

    std::int32_t max_a = 0, max_b = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || b[i] < 0) throw ArgumentError("contingency: labels must be nonnegative");
        max_a = std::max(max_a, a[i]);
        max_b = std::max(max_b, b[i]);
    }

    ContingencyTable t;
    t.rows = max_a + 1;
    t.cols = max_b + 1;
    t.total = static_cast<std::int64_t>(a.size());
    t.counts.assign(static_cast<std::size_t>(t.rows * t.cols), 0);
    t.row_sums.assign(static_cast<std::size_t>(t.rows), 0);
    t.col_sums.assign(static_cast<std::size_t>(t.cols), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++t.counts[static_cast<std::size_t>(static_cast<std::int64_t>(a[i]) * t.cols + b[i])];
        ++t.row_sums[static_cast<std::size_t>(a[i])];
        ++t.col_sums[static_cast<std::size_t>(b[i])];
    }
    return t;
}

double rand_index(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    const ContingencyTable t = contingency(a, b);
    if (t.total < 2) throw ArgumentError("rand_index: need at least two points");
    const PairSums s = pair_sums(t);
    // agreements = pairs together in both + pairs apart in both
    const int128 agreements = s.total_pairs + 2 * s.same_both - s.same_a - s.same_b;
    return static_cast<double>(agreements) / static_cast<double>(s.total_pairs);
}

double adjusted_rand_index(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    const ContingencyTable t = contingency(a, b);
    if (t.total < 2) throw ArgumentError("adjusted_rand_index: need at least two points");
    const PairSums s = pair_sums(t);

    // ARI = (N*S_ij - S_a*S_b) / (N*(S_a+S_b)/2 - S_a*S_b), scaled by 2 to
    // stay integral.
    const int128 numerator = 2 * (s.total_pairs * s.same_both - s.same_a * s.same_b);
    const int128 denominator = s.total_pairs * (s.same_a + s.same_b) - 2 * s.same_a * s.same_b;
    if (denominator == 0) return identical_partitions(t) ? 1.0 : 0.0;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace ann
