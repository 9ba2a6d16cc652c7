#pragma once

#include <cstdint>
#include <vector>

#include "core/partition.hpp"
#include "core/points.hpp"

namespace ann {

// Symmetric 0/1 adjacency in compressed-row form. Structure only: every
// stored entry has weight 1, the diagonal is never stored, and column indices
// are strictly increasing within each row.
struct SparseAffinity {
    std::int64_t n = 0;
    std::vector<std::int64_t> row_offsets;     // size n+1
    std::vector<std::int64_t> column_indices;  // size row_offsets[n]

    std::int64_t degree(std::int64_t i) const {
        return row_offsets[static_cast<std::size_t>(i) + 1] - row_offsets[static_cast<std::size_t>(i)];
    }
    std::int64_t num_edges() const {
        return static_cast<std::int64_t>(column_indices.size()) / 2;
    }
    bool has_edge(std::int64_t i, std::int64_t j) const;
};

// Square sparse matrix in CSR form with explicit values. Used for Laplacians
// and as the operator type of the sparse eigensolver.
struct SparseMatrix {
    std::int64_t n = 0;
    std::vector<std::int64_t> row_offsets;
    std::vector<std::int64_t> column_indices;
    std::vector<double> values;

    // y = A x
    void multiply(const double* x, double* y) const;
    std::vector<double> dense() const;  // row-major n*n
};

enum class LaplacianKind { unnormalized, random_walk, symmetric };

struct Laplacian {
    LaplacianKind kind = LaplacianKind::unnormalized;
    std::int64_t n = 0;
    SparseMatrix matrix;
    std::vector<std::int64_t> degrees;  // exact integer degrees of W
};

// OR-rule KNN affinity: edge (i, j) present iff i is among the K nearest
// neighbors of j or vice versa.
SparseAffinity build_knn_affinity(const PointSet& points, std::int64_t k);

std::vector<std::int64_t> degrees(const SparseAffinity& w);

// unnormalized: D - W;  random_walk: I - D^{-1} W;  symmetric:
// I - D^{-1/2} W D^{-1/2}. Vertices of degree zero get an all-zero row under
// the normalized kinds (their D^{-1} / D^{-1/2} entry is taken as 0).
Laplacian build_laplacian(const SparseAffinity& w, LaplacianKind kind);

// Component labels numbered 0..c-1 in order of smallest contained vertex.
Partition connected_components(const SparseAffinity& w);

}  // namespace ann
