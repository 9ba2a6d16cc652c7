#include "core/graph.hpp"

#include <algorithm>
#include <cmath>

#include "core/common.hpp"
#include "core/parallel.hpp"

namespace ann {

bool SparseAffinity::has_edge(std::int64_t i, std::int64_t j) const {
    const auto begin = column_indices.begin() + row_offsets[static_cast<std::size_t>(i)];
    const auto end = column_indices.begin() + row_offsets[static_cast<std::size_t>(i) + 1];
    return std::binary_search(begin, end, j);
}

void SparseMatrix::multiply(const double* x, double* y) const {
    parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            double sum = 0.0;
            for (std::int64_t p = row_offsets[static_cast<std::size_t>(i)];
                 p < row_offsets[static_cast<std::size_t>(i) + 1]; ++p)
                sum += values[static_cast<std::size_t>(p)] *
                       x[column_indices[static_cast<std::size_t>(p)]];
            y[i] = sum;
        }
    });
}

std::vector<double> SparseMatrix::dense() const {
    std::vector<double> out(static_cast<std::size_t>(n * n), 0.0);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t p = row_offsets[static_cast<std::size_t>(i)];
             p < row_offsets[static_cast<std::size_t>(i) + 1]; ++p)
            out[static_cast<std::size_t>(i * n + column_indices[static_cast<std::size_t>(p)])] =
                values[static_cast<std::size_t>(p)];
    return out;
}

SparseAffinity build_knn_affinity(const PointSet& points, std::int64_t k) {
    const std::int64_t n = points.size();
    if (k < 1) throw ArgumentError("build_knn_affinity: K must be positive");
    if (k >= n) throw ArgumentError("build_knn_affinity: K must be at most n-1");

    const std::vector<std::int64_t> nbrs = knn_all(points, k);

    // OR-symmetrization: every directed pair contributes both orientations.
    std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t p = 0; p < k; ++p) {
            const std::int64_t j = nbrs[static_cast<std::size_t>(i * k + p)];
            adj[static_cast<std::size_t>(i)].push_back(j);
            adj[static_cast<std::size_t>(j)].push_back(i);
        }
    }

    SparseAffinity w;
    w.n = n;
    w.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t i = 0; i < n; ++i) {
        auto& row = adj[static_cast<std::size_t>(i)];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        w.row_offsets[static_cast<std::size_t>(i) + 1] =
            w.row_offsets[static_cast<std::size_t>(i)] + static_cast<std::int64_t>(row.size());
    }
    w.column_indices.reserve(static_cast<std::size_t>(w.row_offsets.back()));
    for (auto& row : adj) w.column_indices.insert(w.column_indices.end(), row.begin(), row.end());
    return w;
}

std::vector<std::int64_t> degrees(const SparseAffinity& w) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(w.n));
    for (std::int64_t i = 0; i < w.n; ++i) d[static_cast<std::size_t>(i)] = w.degree(i);
    return d;
}

Laplacian build_laplacian(const SparseAffinity& w, LaplacianKind kind) {
    Laplacian lap;
    lap.kind = kind;
    lap.n = w.n;
    lap.degrees = degrees(w);

    SparseMatrix& m = lap.matrix;
    m.n = w.n;
    m.row_offsets.assign(static_cast<std::size_t>(w.n) + 1, 0);

    // Row i holds the off-diagonal entries of row i of W plus a diagonal
    // entry whenever it is nonzero (degree > 0, or always for unnormalized
    // zero rows of the empty graph, where the whole row vanishes anyway).
    for (std::int64_t i = 0; i < w.n; ++i) {
        const std::int64_t deg = lap.degrees[static_cast<std::size_t>(i)];
        const std::int64_t entries = deg > 0 ? deg + 1 : 0;
        m.row_offsets[static_cast<std::size_t>(i) + 1] =
            m.row_offsets[static_cast<std::size_t>(i)] + entries;
    }
    m.column_indices.resize(static_cast<std::size_t>(m.row_offsets.back()));
    m.values.resize(static_cast<std::size_t>(m.row_offsets.back()));

    for (std::int64_t i = 0; i < w.n; ++i) {
        const std::int64_t deg = lap.degrees[static_cast<std::size_t>(i)];
        if (deg == 0) continue;
        std::int64_t out = m.row_offsets[static_cast<std::size_t>(i)];
        bool diagonal_written = false;
        const double di = static_cast<double>(deg);
        for (std::int64_t p = w.row_offsets[static_cast<std::size_t>(i)];
             p < w.row_offsets[static_cast<std::size_t>(i) + 1]; ++p) {
            const std::int64_t j = w.column_indices[static_cast<std::size_t>(p)];
            if (!diagonal_written && j > i) {
                m.column_indices[static_cast<std::size_t>(out)] = i;
                m.values[static_cast<std::size_t>(out)] = kind == LaplacianKind::unnormalized ? di : 1.0;
                ++out;
                diagonal_written = true;
            }
            double value = 0.0;
            switch (kind) {
                case LaplacianKind::unnormalized:
                    value = -1.0;
                    break;
                case LaplacianKind::random_walk:
                    value = -1.0 / di;
                    break;
                case LaplacianKind::symmetric: {
                    const double dj = static_cast<double>(lap.degrees[static_cast<std::size_t>(j)]);
                    value = -1.0 / std::sqrt(di * dj);
                    break;
                }
            }
            m.column_indices[static_cast<std::size_t>(out)] = j;
            m.values[static_cast<std::size_t>(out)] = value;
            ++out;
        }
        if (!diagonal_written) {
            m.column_indices[static_cast<std::size_t>(out)] = i;
            m.values[static_cast<std::size_t>(out)] = kind == LaplacianKind::unnormalized ? di : 1.0;
            ++out;
        }
    }
    return lap;
}

Partition connected_components(const SparseAffinity& w) {
    Partition part;
    part.labels.assign(static_cast<std::size_t>(w.n), -1);
    std::int32_t next_label = 0;
    std::vector<std::int64_t> stack;
    for (std::int64_t root = 0; root < w.n; ++root) {
        if (part.labels[static_cast<std::size_t>(root)] >= 0) continue;
        part.labels[static_cast<std::size_t>(root)] = next_label;
        stack.push_back(root);
        while (!stack.empty()) {
            const std::int64_t v = stack.back();
            stack.pop_back();
            for (std::int64_t p = w.row_offsets[static_cast<std::size_t>(v)];
                 p < w.row_offsets[static_cast<std::size_t>(v) + 1]; ++p) {
                const std::int64_t u = w.column_indices[static_cast<std::size_t>(p)];
                if (part.labels[static_cast<std::size_t>(u)] < 0) {
                    part.labels[static_cast<std::size_t>(u)] = next_label;
                    stack.push_back(u);
                }
            }
        }
        ++next_label;
    }
    part.k = next_label;
    return part;
}

}  // namespace ann
