#pragma once

#include <cstdint>
#include <vector>

#include "core/eigen.hpp"
#include "core/graph.hpp"
#include "core/partition.hpp"
#include "core/points.hpp"

namespace ann {

struct ClusterConfig {
    std::int32_t k = 2;            // clusters
    std::int64_t knn = 10;         // K, nearest neighbors for the affinity
    std::int64_t anchors = 0;      // m, anchor count (anchor method only)
    LaplacianKind kind = LaplacianKind::unnormalized;
    std::uint64_t seed = 0;
    double eigen_tol = 1e-8;
    std::int64_t eigen_max_matvecs = 0;  // 0 = 10 * n
    EigenOptions::Method eigen_method = EigenOptions::Method::automatic;
    std::int32_t kmeans_restarts = 10;
    std::int32_t kmeans_max_iter = 300;
};

struct PhaseTimes {
    double affinity = 0.0;
    double eigen = 0.0;
    double kmeans = 0.0;
    double propagate = 0.0;
    double total = 0.0;
};

struct ClusterResult {
    Partition partition;                      // canonical labels over all n points
    std::vector<std::int64_t> anchor_indices; // ascending; empty for the full method
    PhaseTimes times;
};

// Full pipeline: KNN affinity -> Laplacian -> bottom-k eigenvectors ->
// k-means on the embedding rows -> pull-back to point labels.
ClusterResult spectral_cluster(const PointSet& points, const ClusterConfig& config);

// Anchor pipeline: sample m anchors uniformly without replacement, run the
// full pipeline on them, then give every non-anchor the label of its nearest
// anchor.
ClusterResult anchornn_cluster(const PointSet& points, const ClusterConfig& config);

// The anchor subsample used by anchornn_cluster, exposed so diagnostics can
// reproduce it: m distinct indices, ascending.
std::vector<std::int64_t> sample_anchor_indices(std::int64_t n, std::int64_t m,
                                                std::uint64_t seed);

}  // namespace ann
