#include "doctest.h"

#include "core/metrics.hpp"
#include "core/rng.hpp"
#include "support/oracles.hpp"

using ann::adjusted_rand_index;
using ann::contingency;
using ann::rand_index;

namespace {
const std::vector<std::int32_t> kSplitA = {0, 0, 1, 1};  // {1,2} | {3,4}
const std::vector<std::int32_t> kSplitB = {0, 1, 0, 1};  // {1,3} | {2,4}
}  // namespace

TEST_CASE("contingency table") {
    SUBCASE("identical partitions give a diagonal table") {
        const std::vector<std::int32_t> a = {0, 0, 1, 2, 2};
        const auto t = contingency(a, a);
        CHECK(t.rows == 3);
        CHECK(t.cols == 3);
        for (std::int64_t i = 0; i < 3; ++i)
            for (std::int64_t j = 0; j < 3; ++j)
                if (i != j) CHECK(t.at(i, j) == 0);
        CHECK(t.at(0, 0) == 2);
        CHECK(t.at(1, 1) == 1);
        CHECK(t.at(2, 2) == 2);
    }
    SUBCASE("crossed pair example has all ones") {
        const auto t = contingency(kSplitA, kSplitB);
        for (std::int64_t i = 0; i < 2; ++i)
            for (std::int64_t j = 0; j < 2; ++j) CHECK(t.at(i, j) == 1);
        CHECK(t.row_sums == std::vector<std::int64_t>{2, 2});
        CHECK(t.col_sums == std::vector<std::int64_t>{2, 2});
        CHECK(t.total == 4);
    }
    SUBCASE("all-singletons columns sum to one") {
        const std::vector<std::int32_t> a = {0, 0, 1};
        const std::vector<std::int32_t> singles = {0, 1, 2};
        const auto t = contingency(a, singles);
        for (std::int64_t j = 0; j < t.cols; ++j) CHECK(t.col_sums[static_cast<std::size_t>(j)] == 1);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(contingency(kSplitA, std::vector<std::int32_t>{0, 1}), ann::ArgumentError);
    }
}

TEST_CASE("rand index spot values") {
    CHECK(rand_index(kSplitA, kSplitA) == 1.0);
    CHECK(rand_index(kSplitA, kSplitB) == 1.0 / 3.0);
    const std::vector<std::int32_t> one_block = {0, 0, 0};
    const std::vector<std::int32_t> singles = {0, 1, 2};
    CHECK(rand_index(one_block, singles) == 0.0);
    CHECK_THROWS_AS(rand_index(std::vector<std::int32_t>{0}, std::vector<std::int32_t>{0}),
                    ann::ArgumentError);
}

TEST_CASE("adjusted rand index spot values") {
    CHECK(adjusted_rand_index(kSplitA, kSplitA) == 1.0);
    CHECK(adjusted_rand_index(kSplitA, kSplitB) == -0.5);
    SUBCASE("degenerate denominators") {
        const std::vector<std::int32_t> one_block = {0, 0, 0, 0};
        const std::vector<std::int32_t> singles = {0, 1, 2, 3};
        CHECK(adjusted_rand_index(one_block, one_block) == 1.0);
        CHECK(adjusted_rand_index(singles, singles) == 1.0);
    }
}

TEST_CASE("indices match brute-force pair enumeration on random partitions") {
    ann::Rng rng(ann::derive_stream(31, ann::stream_purpose::generic));
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = static_cast<std::int64_t>(rng.below(11) + 2);
        const auto a = oracles::random_partition(rng, n, 4);
        const auto b = oracles::random_partition(rng, n, 4);
        CHECK(rand_index(a, b) == oracles::rand_index_by_pairs(a, b));
        CHECK(adjusted_rand_index(a, b) == oracles::adjusted_rand_index_by_pairs(a, b));
    }
}

TEST_CASE("indices are symmetric and relabeling-invariant") {
    ann::Rng rng(ann::derive_stream(32, ann::stream_purpose::generic));
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::int64_t>(rng.below(30) + 2);
        const auto a = oracles::random_partition(rng, n, 5);
        auto b = oracles::random_partition(rng, n, 5);
        CHECK(rand_index(a, b) == rand_index(b, a));
        CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(b, a));

        // Relabel b by an involution on label names.
        std::vector<std::int32_t> relabeled = b;
        for (auto& l : relabeled) l = 7 - l;
        CHECK(adjusted_rand_index(a, relabeled) == adjusted_rand_index(a, b));
        CHECK(rand_index(a, relabeled) == rand_index(a, b));
    }
}

TEST_CASE("ari of independent random partitions concentrates near zero") {
    ann::Rng rng(ann::derive_stream(33, ann::stream_purpose::generic));
    double sum = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto a = oracles::random_partition(rng, 100, 5, 2);
        const auto b = oracles::random_partition(rng, 100, 5, 2);
        sum += adjusted_rand_index(a, b);
    }
    const double mean = sum / trials;
    CHECK(mean > -0.02);
    CHECK(mean < 0.02);
}
