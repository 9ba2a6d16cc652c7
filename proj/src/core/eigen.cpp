#include "core/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/common.hpp"
#include "core/rng.hpp"

namespace ann {

namespace {

constexpr std::int64_t kDenseLimit = 512;

void canonical_sign(double* v, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) {
        if (std::abs(v[i]) > 1e-10) {
            if (v[i] < 0.0)
                for (std::int64_t j = 0; j < n; ++j) v[j] = -v[j];
            return;
        }
    }
}

double dot(const double* a, const double* b, std::int64_t n) {
    double s = 0.0;
    for (std::int64_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double norm(const double* a, std::int64_t n) { return std::sqrt(dot(a, a, n)); }

void axpy(double alpha, const double* x, double* y, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// Cyclic Jacobi on a full dense symmetric matrix. a is overwritten; v
// accumulates the rotations (column j of v ends up as eigenvector j).
void jacobi_sweeps(std::vector<double>& a, std::vector<double>& v, std::int64_t n) {
    v.assign(static_cast<std::size_t>(n * n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i * n + i)] = 1.0;

    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return;

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::int64_t p = 0; p < n; ++p)
            for (std::int64_t q = p + 1; q < n; ++q) {
                const double x = a[static_cast<std::size_t>(p * n + q)];
                off += x * x;
            }
        if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) return;

        for (std::int64_t p = 0; p < n - 1; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<std::size_t>(p * n + q)];
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a[static_cast<std::size_t>(p * n + p)];
                const double aqq = a[static_cast<std::size_t>(q * n + q)];
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::int64_t i = 0; i < n; ++i) {
                    const double aip = a[static_cast<std::size_t>(i * n + p)];
                    const double aiq = a[static_cast<std::size_t>(i * n + q)];
                    a[static_cast<std::size_t>(i * n + p)] = c * aip - s * aiq;
                    a[static_cast<std::size_t>(i * n + q)] = s * aip + c * aiq;
                }
                for (std::int64_t i = 0; i < n; ++i) {
                    const double api = a[static_cast<std::size_t>(p * n + i)];
                    const double aqi = a[static_cast<std::size_t>(q * n + i)];
                    a[static_cast<std::size_t>(p * n + i)] = c * api - s * aqi;
                    a[static_cast<std::size_t>(q * n + i)] = s * api + c * aqi;
                }
                for (std::int64_t i = 0; i < n; ++i) {
                    const double vip = v[static_cast<std::size_t>(i * n + p)];
                    const double viq = v[static_cast<std::size_t>(i * n + q)];
                    v[static_cast<std::size_t>(i * n + p)] = c * vip - s * viq;
                    v[static_cast<std::size_t>(i * n + q)] = s * vip + c * viq;
                }
            }
        }
    }
}

DenseEigen dense_eigen_impl(std::vector<double> a, std::int64_t n) {
    std::vector<double> v;
    jacobi_sweeps(a, v, n);

    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
        return a[static_cast<std::size_t>(x * n + x)] < a[static_cast<std::size_t>(y * n + y)];
    });

    DenseEigen out;
    out.n = n;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.vectors.assign(static_cast<std::size_t>(n * n), 0.0);
    for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t src = order[static_cast<std::size_t>(j)];
        out.eigenvalues[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(src * n + src)];
        for (std::int64_t i = 0; i < n; ++i)
            out.vectors[static_cast<std::size_t>(i * n + j)] =
                v[static_cast<std::size_t>(i * n + src)];
    }
    // Column-wise canonical signs.
    for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t i = 0; i < n; ++i) {
            const double x = out.vectors[static_cast<std::size_t>(i * n + j)];
            if (std::abs(x) > 1e-10) {
                if (x < 0.0)
                    for (std::int64_t r = 0; r < n; ++r)
                        out.vectors[static_cast<std::size_t>(r * n + j)] =
                            -out.vectors[static_cast<std::size_t>(r * n + j)];
                break;
            }
        }
    }
    return out;
}

double matrix_scale(const SparseMatrix& m) {
    double scale = 0.0;
    for (std::int64_t i = 0; i < m.n; ++i) {
        double row = 0.0;
        for (std::int64_t p = m.row_offsets[static_cast<std::size_t>(i)];
             p < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++p)
            row += std::abs(m.values[static_cast<std::size_t>(p)]);
        scale = std::max(scale, row);
    }
    return scale == 0.0 ? 1.0 : scale;
}

struct RitzPair {
    double value = 0.0;
    std::vector<double> coeffs;  // in the Lanczos basis
    double residual_estimate = 0.0;
};

// Smallest Ritz pair of the (j+1)x(j+1) tridiagonal built from alpha/beta.
RitzPair smallest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta,
                       double beta_last) {
    const std::int64_t j = static_cast<std::int64_t>(alpha.size());
    std::vector<double> t(static_cast<std::size_t>(j * j), 0.0);
    for (std::int64_t i = 0; i < j; ++i) {
        t[static_cast<std::size_t>(i * j + i)] = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < j) {
            t[static_cast<std::size_t>(i * j + i + 1)] = beta[static_cast<std::size_t>(i)];
            t[static_cast<std::size_t>((i + 1) * j + i)] = beta[static_cast<std::size_t>(i)];
        }
    }
    DenseEigen eig = dense_eigen_impl(std::move(t), j);
    RitzPair pair;
    pair.value = eig.eigenvalues.front();
    pair.coeffs.resize(static_cast<std::size_t>(j));
    for (std::int64_t i = 0; i < j; ++i)
        pair.coeffs[static_cast<std::size_t>(i)] = eig.vectors[static_cast<std::size_t>(i * j)];
    pair.residual_estimate = std::abs(beta_last * pair.coeffs.back());
    return pair;
}

// Lanczos with full reorthogonalization against both the current basis and
// previously converged vectors, extracting one pair per pass so degenerate
// eigenvalues (kernel multiplicity = component count) come out reliably.
SpectralEmbedding lanczos_smallest(const SparseMatrix& matrix, std::int32_t k,
                                   const EigenOptions& options) {
    const std::int64_t n = matrix.n;
    const double scale = matrix_scale(matrix);
    const std::int64_t budget =
        options.max_matvecs > 0 ? options.max_matvecs : std::max<std::int64_t>(10 * n, 100);
    const std::int64_t basis_cap =
        std::min<std::int64_t>(n, std::max<std::int64_t>(40, 2 * static_cast<std::int64_t>(k) + 20));

    Rng rng(options.seed);
    std::vector<std::vector<double>> locked_vecs;
    std::vector<double> locked_vals;
    std::int64_t used = 0;
    double worst_residual = 0.0;

    std::vector<double> start(static_cast<std::size_t>(n));
    const auto fresh_start = [&](bool random) {
        if (random)
            for (double& x : start) x = rng.uniform(-1.0, 1.0);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& v : locked_vecs) axpy(-dot(v.data(), start.data(), n), v.data(), start.data(), n);
        double s = norm(start.data(), n);
        int retries = 0;
        while (s <= 1e-12 && retries < 16) {
            for (double& x : start) x = rng.uniform(-1.0, 1.0);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& v : locked_vecs) axpy(-dot(v.data(), start.data(), n), v.data(), start.data(), n);
            s = norm(start.data(), n);
            ++retries;
        }
        if (s <= 1e-12)
            throw ConvergenceError("lanczos: could not build a start vector in the deflated space",
                                   worst_residual);
        for (double& x : start) x /= s;
    };

    fresh_start(true);

    while (static_cast<std::int32_t>(locked_vals.size()) < k) {
        std::vector<std::vector<double>> basis;
        std::vector<double> alpha, beta;
        basis.push_back(start);
        std::size_t next_check = 1;

        bool locked_this_pass = false;
        while (!locked_this_pass) {
            if (used >= budget)
                throw ConvergenceError("eigensolver: matvec budget exhausted before convergence",
                                       worst_residual);

            const std::vector<double>& q = basis.back();
            std::vector<double> w(static_cast<std::size_t>(n));
            matrix.multiply(q.data(), w.data());
            ++used;

            const double a = dot(q.data(), w.data(), n);
            alpha.push_back(a);
            axpy(-a, q.data(), w.data(), n);
            if (basis.size() >= 2)
                axpy(-beta.back(), basis[basis.size() - 2].data(), w.data(), n);
            // Full reorthogonalization; a second pass only when the first one
            // removed a substantial component.
            const double before = norm(w.data(), n);
            for (const auto& v : locked_vecs) axpy(-dot(v.data(), w.data(), n), v.data(), w.data(), n);
            for (const auto& v : basis) axpy(-dot(v.data(), w.data(), n), v.data(), w.data(), n);
            double b = norm(w.data(), n);
            if (b < 0.7 * before) {
                for (const auto& v : locked_vecs) axpy(-dot(v.data(), w.data(), n), v.data(), w.data(), n);
                for (const auto& v : basis) axpy(-dot(v.data(), w.data(), n), v.data(), w.data(), n);
                b = norm(w.data(), n);
            }

            const bool breakdown = b <= 1e-13 * scale;
            const bool basis_full =
                static_cast<std::int64_t>(basis.size()) >= basis_cap ||
                static_cast<std::int64_t>(basis.size()) >=
                    n - static_cast<std::int64_t>(locked_vals.size());

            // Ritz extraction is O(j^3); run it on a geometric schedule.
            if (basis.size() < next_check && !breakdown && !basis_full) {
                beta.push_back(b);
                for (double& x : w) x /= b;
                basis.push_back(std::move(w));
                continue;
            }
            next_check = basis.size() + 1 + basis.size() / 4;

            RitzPair ritz = smallest_ritz(alpha, beta, b);
            worst_residual = ritz.residual_estimate;

            const bool ritz_converged =
                ritz.residual_estimate <= options.tol * std::max(1.0, std::abs(ritz.value));

            if (ritz_converged || breakdown || basis_full) {
                // Materialize the Ritz vector and check its true residual.
                std::vector<double> v(static_cast<std::size_t>(n), 0.0);
                for (std::size_t i = 0; i < basis.size(); ++i)
                    axpy(ritz.coeffs[i], basis[i].data(), v.data(), n);
                for (const auto& lv : locked_vecs) axpy(-dot(lv.data(), v.data(), n), lv.data(), v.data(), n);
                const double vn = norm(v.data(), n);
                if (vn > 1e-12)
                    for (double& x : v) x /= vn;

                std::vector<double> av(static_cast<std::size_t>(n));
                matrix.multiply(v.data(), av.data());
                ++used;
                axpy(-ritz.value, v.data(), av.data(), n);
                const double true_residual = norm(av.data(), n);
                worst_residual = true_residual;

                const double accept_tol =
                    std::max(options.tol, 1e-10) * std::max(1.0, std::abs(ritz.value));
                if (vn > 1e-12 && (true_residual <= accept_tol || (breakdown && true_residual <= 1e3 * accept_tol))) {
                    locked_vals.push_back(ritz.value);
                    locked_vecs.push_back(std::move(v));
                    locked_this_pass = true;
                    if (static_cast<std::int32_t>(locked_vals.size()) < k) fresh_start(true);
                    break;
                }
                if (breakdown || vn <= 1e-12) {
                    // Invariant subspace exhausted without an acceptable pair:
                    // restart from a new random direction.
                    fresh_start(true);
                    break;
                }
                if (basis_full) {
                    // Thick restart from the best Ritz vector.
                    start = v.empty() ? start : v;
                    fresh_start(false);
                    break;
                }
            }

            beta.push_back(b);
            for (double& x : w) x /= b;
            basis.push_back(std::move(w));
        }
    }

    // Assemble ascending output.
    std::vector<std::int64_t> order(locked_vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int64_t a, std::int64_t b) { return locked_vals[static_cast<std::size_t>(a)] < locked_vals[static_cast<std::size_t>(b)]; });

    SpectralEmbedding out;
    out.n = n;
    out.k = k;
    out.eigenvalues.resize(static_cast<std::size_t>(k));
    out.vectors.assign(static_cast<std::size_t>(n * k), 0.0);
    out.residual_norms.resize(static_cast<std::size_t>(k));
    std::vector<double> av(static_cast<std::size_t>(n));
    for (std::int32_t j = 0; j < k; ++j) {
        const auto src = static_cast<std::size_t>(order[static_cast<std::size_t>(j)]);
        auto& v = locked_vecs[src];
        canonical_sign(v.data(), n);
        out.eigenvalues[static_cast<std::size_t>(j)] = locked_vals[src];
        matrix.multiply(v.data(), av.data());
        axpy(-locked_vals[src], v.data(), av.data(), n);
        out.residual_norms[static_cast<std::size_t>(j)] = norm(av.data(), n);
        for (std::int64_t i = 0; i < n; ++i)
            out.vectors[static_cast<std::size_t>(i * k + j)] = v[static_cast<std::size_t>(i)];
    }
    return out;
}

SpectralEmbedding dense_smallest(const SparseMatrix& matrix, std::int32_t k) {
    DenseEigen full = dense_eigen_impl(matrix.dense(), matrix.n);
    const std::int64_t n = matrix.n;
    SpectralEmbedding out;
    out.n = n;
    out.k = k;
    out.eigenvalues.assign(full.eigenvalues.begin(), full.eigenvalues.begin() + k);
    out.vectors.resize(static_cast<std::size_t>(n * k));
    out.residual_norms.resize(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int32_t j = 0; j < k; ++j)
            out.vectors[static_cast<std::size_t>(i * k + j)] =
                full.vectors[static_cast<std::size_t>(i * n + j)];
    std::vector<double> v(static_cast<std::size_t>(n)), av(static_cast<std::size_t>(n));
    for (std::int32_t j = 0; j < k; ++j) {
        for (std::int64_t i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] = out.vectors[static_cast<std::size_t>(i * k + j)];
        matrix.multiply(v.data(), av.data());
        axpy(-out.eigenvalues[static_cast<std::size_t>(j)], v.data(), av.data(), n);
        out.residual_norms[static_cast<std::size_t>(j)] = norm(av.data(), n);
    }
    return out;
}

}  // namespace

DenseEigen dense_reference_eigen(const std::vector<double>& matrix, std::int64_t n) {
    if (n < 1) throw ArgumentError("dense_reference_eigen: matrix must be nonempty");
    if (n > kDenseLimit) throw ArgumentError("dense_reference_eigen: refusing n > 512");
    if (matrix.size() != static_cast<std::size_t>(n * n))
        throw ArgumentError("dense_reference_eigen: buffer size is not n*n");
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) {
            const double diff = matrix[static_cast<std::size_t>(i * n + j)] -
                                matrix[static_cast<std::size_t>(j * n + i)];
            if (std::abs(diff) > 1e-12)
                throw ArgumentError("dense_reference_eigen: matrix is not symmetric");
        }
    return dense_eigen_impl(matrix, n);
}

SpectralEmbedding smallest_eigenpairs(const SparseMatrix& matrix, std::int32_t k,
                                      const EigenOptions& options) {
    if (matrix.n < 1) throw ArgumentError("smallest_eigenpairs: empty matrix");
    if (k < 1 || k > matrix.n)
        throw ArgumentError("smallest_eigenpairs: need 1 <= k <= n");
    const bool dense = options.method == EigenOptions::Method::dense ||
                       (options.method == EigenOptions::Method::automatic && matrix.n <= kDenseLimit);
    return dense ? dense_smallest(matrix, k) : lanczos_smallest(matrix, k, options);
}

SpectralEmbedding smallest_eigenpairs(const Laplacian& laplacian, std::int32_t k,
                                      const EigenOptions& options) {
    if (laplacian.kind != LaplacianKind::random_walk)
        return smallest_eigenpairs(laplacian.matrix, k, options);

    // Similarity reduction: D^{1/2} (I - D^{-1} W) D^{-1/2} = I - D^{-1/2} W D^{-1/2}.
    SparseMatrix sym = laplacian.matrix;
    for (std::int64_t i = 0; i < sym.n; ++i) {
        const double di = static_cast<double>(laplacian.degrees[static_cast<std::size_t>(i)]);
        for (std::int64_t p = sym.row_offsets[static_cast<std::size_t>(i)];
             p < sym.row_offsets[static_cast<std::size_t>(i) + 1]; ++p) {
            const std::int64_t j = sym.column_indices[static_cast<std::size_t>(p)];
            if (j == i) continue;
            const double dj = static_cast<double>(laplacian.degrees[static_cast<std::size_t>(j)]);
            sym.values[static_cast<std::size_t>(p)] *= std::sqrt(di / dj);
        }
    }
    SpectralEmbedding emb = smallest_eigenpairs(sym, k, options);

    // Back-transform u_rw = D^{-1/2} u_sym (identity on isolated vertices),
    // then renormalize and recompute residuals against the actual operator.
    for (std::int64_t i = 0; i < emb.n; ++i) {
        const std::int64_t deg = laplacian.degrees[static_cast<std::size_t>(i)];
        if (deg > 0) {
            const double f = 1.0 / std::sqrt(static_cast<double>(deg));
            for (std::int32_t j = 0; j < k; ++j)
                emb.vectors[static_cast<std::size_t>(i * k + j)] *= f;
        }
    }
    std::vector<double> v(static_cast<std::size_t>(emb.n)), av(static_cast<std::size_t>(emb.n));
    for (std::int32_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::int64_t i = 0; i < emb.n; ++i) {
            const double x = emb.vectors[static_cast<std::size_t>(i * k + j)];
            s += x * x;
        }
        s = std::sqrt(s);
        if (s > 0.0)
            for (std::int64_t i = 0; i < emb.n; ++i)
                emb.vectors[static_cast<std::size_t>(i * k + j)] /= s;
        for (std::int64_t i = 0; i < emb.n; ++i)
            v[static_cast<std::size_t>(i)] = emb.vectors[static_cast<std::size_t>(i * k + j)];
        canonical_sign(v.data(), emb.n);
        for (std::int64_t i = 0; i < emb.n; ++i)
            emb.vectors[static_cast<std::size_t>(i * k + j)] = v[static_cast<std::size_t>(i)];
        laplacian.matrix.multiply(v.data(), av.data());
        axpy(-emb.eigenvalues[static_cast<std::size_t>(j)], v.data(), av.data(), emb.n);
        emb.residual_norms[static_cast<std::size_t>(j)] = norm(av.data(), emb.n);
    }
    return emb;
}

}  // namespace ann
