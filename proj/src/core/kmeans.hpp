#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/partition.hpp"

namespace ann {

struct KMeansOptions {
    std::int32_t restarts = 10;
    std::int32_t max_iter = 300;
    std::uint64_t seed = 0;
};

struct KMeansResult {
    std::vector<double> centroids;        // k x p row-major
    Partition assignment;                 // canonical labels (first-member order)
    double inertia = 0.0;
    std::int32_t iterations = 0;          // Lloyd iterations of the best restart
    std::int32_t restarts_used = 0;
    std::vector<double> inertia_history;  // per-iteration inertia of the best restart
};

// Lloyd iterations with k-means++ seeding, best of `restarts` independent
// streams derived from (seed, restart index). Ties everywhere resolve to the
// lowest index, so results are bit-identical for a fixed input regardless of
// scheduling. Emptied clusters are repaired by promoting the point farthest
// from its centroid to a singleton.
KMeansResult kmeans(std::span<const double> rows, std::int64_t n, std::int64_t p,
                    std::int32_t k, const KMeansOptions& options = {});

}  // namespace ann
