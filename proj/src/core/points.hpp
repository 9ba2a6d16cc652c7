#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "core/common.hpp"

namespace ann {

// Immutable set of n points in R^d, row-major coordinates, with optional
// per-point integer ground-truth labels in [0, L).
class PointSet {
public:
    PointSet(std::vector<double> coords, std::int64_t n, std::int64_t dim,
             std::vector<std::int32_t> labels = {});

    std::int64_t size() const noexcept { return n_; }
    std::int64_t dim() const noexcept { return dim_; }

    const double* row(std::int64_t i) const { return coords_.data() + i * dim_; }
    std::span<const double> point(std::int64_t i) const {
        return {row(i), static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& coords() const noexcept { return coords_; }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::int32_t>& labels() const noexcept { return labels_; }
    // Number of distinct label values L (labels are validated to be [0, L)).
    std::int32_t num_label_values() const noexcept { return num_label_values_; }

    PointSet subset(std::span<const std::int64_t> indices) const;

private:
    std::int64_t n_ = 0;
    std::int64_t dim_ = 0;
    std::vector<double> coords_;
    std::vector<std::int32_t> labels_;
    std::int32_t num_label_values_ = 0;
};

struct Neighbor {
    std::int64_t index;
    double distance;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Squared distance without the sqrt; comparisons happen on this scale.
double squared_distance(const double* a, const double* b, std::int64_t dim);

// K nearest neighbors of points[query], self excluded, sorted by ascending
// (distance, index). Ties always resolve to the smaller point index.
std::vector<Neighbor> knn(const PointSet& points, std::int64_t query, std::int64_t k);

// KNN index lists for every point at once (parallel over queries).
// Row i of the result holds the k neighbor indices of point i in ascending
// (distance, index) order.
std::vector<std::int64_t> knn_all(const PointSet& points, std::int64_t k);

// Index of the anchor closest to query plus the distance; ties resolve to the
// smaller anchor index.
std::pair<std::int64_t, double> nearest_anchor(const PointSet& anchors,
                                               std::span<const double> query);

}  // namespace ann
