#pragma once

#include <cstdint>
#include <vector>

#include "core/points.hpp"

namespace ann {

// Constants entering the parameter-scaling rules. q_max is carried along for
// symmetry with q_min but no formula here consumes it.
struct ScalingConfig {
    double c = 2.0;       // scaling constant in K >= C log(sample size)
    double q_min = 1.0;   // assumed density lower bound
    double q_max = 1.0;
    std::int32_t dim = 2;
};

// Chernoff rate function: 1 - x + x ln x for x > 0, with value 1 at x = 0.
double chernoff_rate(double x);

// max(1, ceil(C * ln(sample_size))), clamped to sample_size - 1.
std::int64_t recommended_knn(std::int64_t sample_size, const ScalingConfig& config = {});

// Volume of the unit ball in R^d.
double unit_ball_volume(std::int32_t dim);

// Ball radius r solving (sample_size / 2) * q_min * omega_d * r^d = K.
double bandwidth_from_knn(std::int64_t k, std::int64_t sample_size,
                          const ScalingConfig& config = {});

// Smallest r such that every point lies within r of some anchor.
double covering_radius(const PointSet& anchors, const PointSet& points);

// For each ground-truth label, the number of connected components of the KNN
// graph built on that label's points alone (K clamped to the cluster size
// minus one; singleton clusters count as one component).
std::vector<std::int64_t> per_cluster_components(const PointSet& points, std::int64_t k);

// Edges of the full KNN graph whose endpoints carry different labels.
std::int64_t cross_cluster_edges(const PointSet& points, std::int64_t k);

// Density of a uniform distribution over the bounding box of the points;
// the default stand-in for q_min when nothing better is known.
double bounding_box_density(const PointSet& points);

}  // namespace ann
