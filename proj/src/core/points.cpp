#include "core/points.hpp"

#include <algorithm>
#include <cmath>

#include "core/parallel.hpp"

namespace ann {

PointSet::PointSet(std::vector<double> coords, std::int64_t n, std::int64_t dim,
                   std::vector<std::int32_t> labels)
    : n_(n), dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
    if (n_ < 1) throw ArgumentError("PointSet: need at least one point");
    if (dim_ < 1) throw ArgumentError("PointSet: dimension must be positive");
    if (coords_.size() != static_cast<std::size_t>(n_ * dim_))
        throw ArgumentError("PointSet: coordinate buffer size does not match n*d");
    for (double c : coords_)
        if (!std::isfinite(c)) throw ArgumentError("PointSet: coordinates must be finite");
    if (!labels_.empty()) {
        if (labels_.size() != static_cast<std::size_t>(n_))
            throw ArgumentError("PointSet: label count does not match point count");
        std::int32_t max_label = 0;
        for (std::int32_t l : labels_) {
            if (l < 0) throw ArgumentError("PointSet: labels must be nonnegative");
            max_label = std::max(max_label, l);
        }
        num_label_values_ = max_label + 1;
    }
}

PointSet PointSet::subset(std::span<const std::int64_t> indices) const {
    if (indices.empty()) throw ArgumentError("PointSet::subset: empty index list");
    std::vector<double> coords;
    coords.reserve(indices.size() * static_cast<std::size_t>(dim_));
    std::vector<std::int32_t> labels;
    if (has_labels()) labels.reserve(indices.size());
    for (std::int64_t idx : indices) {
        if (idx < 0 || idx >= n_) throw ArgumentError("PointSet::subset: index out of range");
        const double* r = row(idx);
        coords.insert(coords.end(), r, r + dim_);
        if (has_labels()) labels.push_back(labels_[static_cast<std::size_t>(idx)]);
    }
    return PointSet(std::move(coords), static_cast<std::int64_t>(indices.size()), dim_,
                    std::move(labels));
}

double squared_distance(const double* a, const double* b, std::int64_t dim) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ArgumentError("euclidean_distance: dimension mismatch");
    return std::sqrt(squared_distance(a.data(), b.data(), static_cast<std::int64_t>(a.size())));
}

namespace {

// Bounded "worst on top" buffer of (squared distance, index) candidates,
// ordered lexicographically so index ties stay deterministic.
class NeighborHeap {
public:
    explicit NeighborHeap(std::int64_t capacity) : capacity_(capacity) {
        entries_.reserve(static_cast<std::size_t>(capacity));
    }

    void offer(double d2, std::int64_t index) {
        if (static_cast<std::int64_t>(entries_.size()) < capacity_) {
            entries_.push_back({d2, index});
            std::push_heap(entries_.begin(), entries_.end());
            return;
        }
        const Entry candidate{d2, index};
        if (candidate < entries_.front()) {
            std::pop_heap(entries_.begin(), entries_.end());
            entries_.back() = candidate;
            std::push_heap(entries_.begin(), entries_.end());
        }
    }

    double worst_d2() const { return entries_.front().d2; }
    bool full() const { return static_cast<std::int64_t>(entries_.size()) == capacity_; }

    // Ascending (distance, index).
    std::vector<Neighbor> sorted() && {
        std::sort_heap(entries_.begin(), entries_.end());
        std::vector<Neighbor> out;
        out.reserve(entries_.size());
        for (const Entry& e : entries_) out.push_back({e.index, std::sqrt(e.d2)});
        return out;
    }

    void fill_indices(std::int64_t* dst) && {
        std::sort_heap(entries_.begin(), entries_.end());
        for (std::size_t i = 0; i < entries_.size(); ++i) dst[i] = entries_[i].index;
    }

private:
    struct Entry {
        double d2;
        std::int64_t index;
        bool operator<(const Entry& o) const {
            return d2 < o.d2 || (d2 == o.d2 && index < o.index);
        }
    };
    std::int64_t capacity_;
    std::vector<Entry> entries_;
};

NeighborHeap scan_neighbors(const PointSet& points, std::int64_t query, std::int64_t k) {
    const std::int64_t n = points.size();
    const std::int64_t dim = points.dim();
    const double* q = points.row(query);
    NeighborHeap heap(k);
    for (std::int64_t i = 0; i < n; ++i) {
        if (i == query) continue;
        const double d2 = squared_distance(q, points.row(i), dim);
        if (heap.full() && d2 > heap.worst_d2()) continue;
        heap.offer(d2, i);
    }
    return heap;
}

}  // namespace

std::vector<Neighbor> knn(const PointSet& points, std::int64_t query, std::int64_t k) {
    const std::int64_t n = points.size();
    if (query < 0 || query >= n) throw ArgumentError("knn: query index out of range");
    if (k < 1) throw ArgumentError("knn: K must be positive");
    if (k >= n) throw ArgumentError("knn: K must be at most n-1 (self excluded)");
    return std::move(scan_neighbors(points, query, k)).sorted();
}

std::vector<std::int64_t> knn_all(const PointSet& points, std::int64_t k) {
    const std::int64_t n = points.size();
    if (k < 1) throw ArgumentError("knn_all: K must be positive");
    if (k >= n) throw ArgumentError("knn_all: K must be at most n-1 (self excluded)");
    std::vector<std::int64_t> out(static_cast<std::size_t>(n * k));
    parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t q = lo; q < hi; ++q)
            std::move(scan_neighbors(points, q, k)).fill_indices(out.data() + q * k);
    });
    return out;
}

std::pair<std::int64_t, double> nearest_anchor(const PointSet& anchors,
                                               std::span<const double> query) {
    if (static_cast<std::int64_t>(query.size()) != anchors.dim())
        throw ArgumentError("nearest_anchor: dimension mismatch");
    for (double c : query)
        if (!std::isfinite(c)) throw ArgumentError("nearest_anchor: query must be finite");
    std::int64_t best = 0;
    double best_d2 = squared_distance(query.data(), anchors.row(0), anchors.dim());
    for (std::int64_t i = 1; i < anchors.size(); ++i) {
        const double d2 = squared_distance(query.data(), anchors.row(i), anchors.dim());
        if (d2 < best_d2) {
            best = i;
            best_d2 = d2;
        }
    }
    return {best, std::sqrt(best_d2)};
}

}  // namespace ann
