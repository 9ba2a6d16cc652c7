#include "core/cluster.hpp"

#include <chrono>

#include "core/common.hpp"
#include "core/kmeans.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace ann {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate(const PointSet& points, const ClusterConfig& config, bool anchored) {
    const std::int64_t sample = anchored ? config.anchors : points.size();
    if (config.k < 1) throw ArgumentError("cluster: k must be positive");
    if (anchored && (config.anchors < 1 || config.anchors > points.size()))
        throw ArgumentError("cluster: anchor count must satisfy 1 <= m <= n");
    if (config.knn < 1 || config.knn > sample - 1)
        throw ArgumentError("cluster: K must satisfy 1 <= K <= sample size - 1");
    if (config.k > sample) throw ArgumentError("cluster: k exceeds the sample size");
}

// Shared spectral stage on an arbitrary point set.
Partition spectral_stage(const PointSet& points, const ClusterConfig& config,
                         PhaseTimes& times) {
    auto t0 = Clock::now();
    const SparseAffinity affinity = build_knn_affinity(points, config.knn);
    const Laplacian laplacian = build_laplacian(affinity, config.kind);
    times.affinity = seconds_since(t0);

    t0 = Clock::now();
    EigenOptions eig;
    eig.tol = config.eigen_tol;
    eig.max_matvecs = config.eigen_max_matvecs;
    eig.method = config.eigen_method;
    eig.seed = derive_stream(config.seed, stream_purpose::eigen);
    const SpectralEmbedding embedding = smallest_eigenpairs(laplacian, config.k, eig);
    times.eigen = seconds_since(t0);

    t0 = Clock::now();
    KMeansOptions km;
    km.restarts = config.kmeans_restarts;
    km.max_iter = config.kmeans_max_iter;
    km.seed = config.seed;
    const KMeansResult clusters =
        kmeans(embedding.vectors, points.size(), config.k, config.k, km);
    times.kmeans = seconds_since(t0);
    return clusters.assignment;
}

}  // namespace

std::vector<std::int64_t> sample_anchor_indices(std::int64_t n, std::int64_t m,
                                                std::uint64_t seed) {
    if (m < 1 || m > n) throw ArgumentError("sample_anchor_indices: need 1 <= m <= n");
    Rng rng(derive_stream(seed, stream_purpose::anchors));
    return rng.sample_without_replacement(n, m);
}

ClusterResult spectral_cluster(const PointSet& points, const ClusterConfig& config) {
    validate(points, config, false);
    const auto t0 = Clock::now();
    ClusterResult result;
    result.partition = canonicalize(spectral_stage(points, config, result.times));
    result.times.total = seconds_since(t0);
    return result;
}

ClusterResult anchornn_cluster(const PointSet& points, const ClusterConfig& config) {
    validate(points, config, true);
    const auto t0 = Clock::now();
    const std::int64_t n = points.size();
    const std::int64_t m = config.anchors;

    ClusterResult result;
    result.anchor_indices = sample_anchor_indices(n, m, config.seed);
    const PointSet anchors = points.subset(result.anchor_indices);

    const Partition anchor_partition = spectral_stage(anchors, config, result.times);

    // Anchors keep their own labels; everyone else inherits the label of the
    // nearest anchor (ties to the smaller anchor index, which is also the
    // smaller point index since the sample is sorted).
    auto t1 = Clock::now();
    Partition full;
    full.k = config.k;
    full.degenerate = anchor_partition.degenerate;
    full.labels.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t a = 0; a < result.anchor_indices.size(); ++a)
        full.labels[static_cast<std::size_t>(result.anchor_indices[a])] = anchor_partition.labels[a];
    parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            if (full.labels[static_cast<std::size_t>(i)] >= 0) continue;
            const auto [nearest, distance] = nearest_anchor(anchors, points.point(i));
            (void)distance;
            full.labels[static_cast<std::size_t>(i)] = anchor_partition.labels[static_cast<std::size_t>(nearest)];
        }
    });
    result.times.propagate = seconds_since(t1);

    result.partition = canonicalize(full);
    result.times.total = seconds_since(t0);
    return result;
}

}  // namespace ann
