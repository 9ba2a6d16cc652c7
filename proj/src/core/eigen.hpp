#pragma once

#include <cstdint>
#include <vector>

#include "core/graph.hpp"

namespace ann {

// Bottom-k eigenpairs of a symmetric operator. Column j of `vectors` is the
// eigenvector of eigenvalues[j]; row i is the spectral embedding of point i.
struct SpectralEmbedding {
    std::int64_t n = 0;
    std::int32_t k = 0;
    std::vector<double> eigenvalues;      // ascending
    std::vector<double> vectors;          // row-major n x k, unit columns
    std::vector<double> residual_norms;   // |A v - lambda v| per pair
};

struct EigenOptions {
    enum class Method { automatic, lanczos, dense };

    double tol = 1e-8;
    std::int64_t max_matvecs = 0;  // 0 = 10 * n
    Method method = Method::automatic;
    // Stream for Lanczos starting vectors. Fixed default keeps results
    // reproducible across runs; the clustering pipeline derives it from the
    // run seed.
    std::uint64_t seed = 0x1b873593ULL;
};

// Full spectrum of a dense symmetric matrix (row-major n x n) by cyclic
// Jacobi sweeps. Intended as a small-matrix reference path; refuses n > 512.
struct DenseEigen {
    std::int64_t n = 0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> vectors;      // row-major n x n, column j = eigenvector j
};

DenseEigen dense_reference_eigen(const std::vector<double>& matrix, std::int64_t n);

// k smallest eigenpairs of a sparse symmetric matrix. Method::automatic uses
// the dense path for n <= 512 and Lanczos (full reorthogonalization, one pair
// deflated at a time, restarted) above. Throws ConvergenceError with the
// worst residual if the matvec budget runs out.
SpectralEmbedding smallest_eigenpairs(const SparseMatrix& matrix, std::int32_t k,
                                      const EigenOptions& options = {});

// Laplacian-aware wrapper. The random-walk kind is solved through its
// similarity with the symmetric kind and eigenvectors are transformed back
// (and re-normalized; they are orthogonal in the degree inner product, not
// the Euclidean one).
SpectralEmbedding smallest_eigenpairs(const Laplacian& laplacian, std::int32_t k,
                                      const EigenOptions& options = {});

}  // namespace ann
