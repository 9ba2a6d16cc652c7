#include "core/theory.hpp"

#include <algorithm>
#include <cmath>

#include "core/common.hpp"
#include "core/graph.hpp"
#include "core/parallel.hpp"

namespace ann {

double chernoff_rate(double x) {
    if (x < 0.0) throw ArgumentError("chernoff_rate: x must be nonnegative");
    if (x == 0.0) return 1.0;
    return 1.0 - x + x * std::log(x);
}

std::int64_t recommended_knn(std::int64_t sample_size, const ScalingConfig& config) {
    if (sample_size < 2) throw ArgumentError("recommended_knn: sample size must be >= 2");
    if (config.c <= 0.0) throw ArgumentError("recommended_knn: C must be positive");
    const double raw = config.c * std::log(static_cast<double>(sample_size));
    auto k = static_cast<std::int64_t>(std::ceil(raw));
    k = std::max<std::int64_t>(k, 1);
    return std::min(k, sample_size - 1);
}

double unit_ball_volume(std::int32_t dim) {
    if (dim < 1) throw ArgumentError("unit_ball_volume: dimension must be positive");
    return std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

double bandwidth_from_knn(std::int64_t k, std::int64_t sample_size,
                          const ScalingConfig& config) {
    if (k < 1) throw ArgumentError("bandwidth_from_knn: K must be positive");
    if (sample_size < 1) throw ArgumentError("bandwidth_from_knn: sample size must be positive");
    if (config.q_min <= 0.0) throw ArgumentError("bandwidth_from_knn: q_min must be positive");
    const double omega = unit_ball_volume(config.dim);
    const double base = 2.0 * static_cast<double>(k) /
                        (static_cast<double>(sample_size) * config.q_min * omega);
    return std::pow(base, 1.0 / static_cast<double>(config.dim));
}

double covering_radius(const PointSet& anchors, const PointSet& points) {
    if (anchors.dim() != points.dim())
        throw ArgumentError("covering_radius: dimension mismatch");
    const std::int64_t n = points.size();
    std::vector<double> nearest(static_cast<std::size_t>(n));
    parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i)
            nearest[static_cast<std::size_t>(i)] = nearest_anchor(anchors, points.point(i)).second;
    });
    return *std::max_element(nearest.begin(), nearest.end());
}

std::vector<std::int64_t> per_cluster_components(const PointSet& points, std::int64_t k) {
    if (!points.has_labels())
        throw ArgumentError("per_cluster_components: ground-truth labels required");
    if (k < 1) throw ArgumentError("per_cluster_components: K must be positive");
    const std::int32_t num_labels = points.num_label_values();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(num_labels), 0);
    for (std::int32_t label = 0; label < num_labels; ++label) {
        std::vector<std::int64_t> members;
        for (std::int64_t i = 0; i < points.size(); ++i)
            if (points.labels()[static_cast<std::size_t>(i)] == label) members.push_back(i);
        if (members.empty()) continue;
        if (members.size() == 1) {
            counts[static_cast<std::size_t>(label)] = 1;
            continue;
        }
        const PointSet cluster = points.subset(members);
        const std::int64_t effective_k =
            std::min<std::int64_t>(k, static_cast<std::int64_t>(members.size()) - 1);
        const SparseAffinity w = build_knn_affinity(cluster, effective_k);
        counts[static_cast<std::size_t>(label)] = connected_components(w).k;
    }
    return counts;
}

std::int64_t cross_cluster_edges(const PointSet& points, std::int64_t k) {
    if (!points.has_labels())
        throw ArgumentError("cross_cluster_edges: ground-truth labels required");
    const SparseAffinity w = build_knn_affinity(points, k);
    std::int64_t crossings = 0;
    for (std::int64_t i = 0; i < w.n; ++i)
        for (std::int64_t p = w.row_offsets[static_cast<std::size_t>(i)];
             p < w.row_offsets[static_cast<std::size_t>(i) + 1]; ++p) {
            const std::int64_t j = w.column_indices[static_cast<std::size_t>(p)];
            if (j > i && points.labels()[static_cast<std::size_t>(i)] !=
                             points.labels()[static_cast<std::size_t>(j)])
                ++crossings;
        }
    return crossings;
}

double bounding_box_density(const PointSet& points) {
    const std::int64_t d = points.dim();
    double volume = 1.0;
    for (std::int64_t j = 0; j < d; ++j) {
        double lo = points.row(0)[j], hi = points.row(0)[j];
        for (std::int64_t i = 1; i < points.size(); ++i) {
            lo = std::min(lo, points.row(i)[j]);
            hi = std::max(hi, points.row(i)[j]);
        }
        const double extent = hi - lo;
        volume *= extent > 0.0 ? extent : 1.0;
    }
    return 1.0 / volume;
}

}  // namespace ann
