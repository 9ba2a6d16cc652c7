#include "doctest.h"

#include <cmath>

#include "core/eigen.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"
#include "support/oracles.hpp"

using ann::DenseEigen;
using ann::EigenOptions;
using ann::LaplacianKind;
using ann::SparseMatrix;
using ann::SpectralEmbedding;

namespace {

SparseMatrix sparse_from_dense(const std::vector<double>& dense, std::int64_t n) {
    SparseMatrix m;
    m.n = n;
    m.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j)
            if (dense[static_cast<std::size_t>(i * n + j)] != 0.0) {
                m.column_indices.push_back(j);
                m.values.push_back(dense[static_cast<std::size_t>(i * n + j)]);
            }
        m.row_offsets[static_cast<std::size_t>(i) + 1] =
            static_cast<std::int64_t>(m.column_indices.size());
    }
    return m;
}

EigenOptions lanczos_options() {
    EigenOptions options;
    options.method = EigenOptions::Method::lanczos;
    return options;
}

void check_embedding_invariants(const SpectralEmbedding& emb, const SparseMatrix& m) {
    for (std::size_t j = 0; j + 1 < emb.eigenvalues.size(); ++j)
        CHECK(emb.eigenvalues[j] <= emb.eigenvalues[j + 1]);
    for (double v : emb.eigenvalues) CHECK(v >= -1e-8);
    for (std::int32_t j = 0; j < emb.k; ++j) {
        CHECK(emb.residual_norms[static_cast<std::size_t>(j)] <=
              1e-6 * std::max(1.0, std::abs(emb.eigenvalues[static_cast<std::size_t>(j)])));
        for (std::int32_t l = j; l < emb.k; ++l) {
            double dot = 0.0;
            for (std::int64_t i = 0; i < m.n; ++i)
                dot += emb.vectors[static_cast<std::size_t>(i * emb.k + j)] *
                       emb.vectors[static_cast<std::size_t>(i * emb.k + l)];
            if (j == l) CHECK(std::abs(dot - 1.0) <= 1e-8);
            else CHECK(std::abs(dot) <= 1e-8);
        }
    }
}

// Largest principal angle between computed eigenvector groups and the
// matching reference eigenspaces. Groups follow the reference eigenvalue
// clusters so exact degeneracies compare as subspaces.
double max_group_angle(const DenseEigen& ref, const SpectralEmbedding& emb) {
    const std::int64_t n = ref.n;
    const std::int32_t k = emb.k;
    const double cluster_gap = 1e-5;
    double worst = 0.0;
    std::int32_t a = 0;
    while (a < k) {
        std::int32_t b = a + 1;
        while (b < k && ref.eigenvalues[static_cast<std::size_t>(b)] -
                                ref.eigenvalues[static_cast<std::size_t>(b - 1)] <=
                            cluster_gap)
            ++b;
        // Reference side may extend past k when the cluster straddles it.
        std::int64_t b_ext = b;
        while (b_ext < n && ref.eigenvalues[static_cast<std::size_t>(b_ext)] -
                                    ref.eigenvalues[static_cast<std::size_t>(b_ext - 1)] <=
                                cluster_gap)
            ++b_ext;

        const std::int64_t ref_cols = b_ext - a;
        const std::int64_t emb_cols = b - a;
        std::vector<double> big(static_cast<std::size_t>(n * ref_cols));
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t c = 0; c < ref_cols; ++c)
                big[static_cast<std::size_t>(i * ref_cols + c)] =
                    ref.vectors[static_cast<std::size_t>(i * n + a + c)];
        std::vector<double> small(static_cast<std::size_t>(n * emb_cols));
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t c = 0; c < emb_cols; ++c)
                small[static_cast<std::size_t>(i * emb_cols + c)] =
                    emb.vectors[static_cast<std::size_t>(i * k + a + c)];
        worst = std::max(worst, oracles::containment_angle(big, ref_cols, small, emb_cols, n));
        a = b;
    }
    return worst;
}

}  // namespace

TEST_CASE("dense reference eigen hand cases") {
    SUBCASE("1x1") {
        const auto eig = ann::dense_reference_eigen({4.5}, 1);
        CHECK(eig.eigenvalues == std::vector<double>{4.5});
        CHECK(eig.vectors == std::vector<double>{1.0});
    }
    SUBCASE("2x2 closed form") {
        const auto eig = ann::dense_reference_eigen({2, 1, 1, 2}, 2);
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("path P3 laplacian spectrum") {
        const auto eig = ann::dense_reference_eigen({1, -1, 0, -1, 2, -1, 0, -1, 1}, 3);
        CHECK(eig.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("size guard") {
        CHECK_THROWS_AS(ann::dense_reference_eigen(std::vector<double>(513 * 513, 0.0), 513),
                        ann::ArgumentError);
    }
    SUBCASE("asymmetry rejected") {
        CHECK_THROWS_AS(ann::dense_reference_eigen({1, 2, 3, 4}, 2), ann::ArgumentError);
    }
}

TEST_CASE("smallest eigenpairs on small fixed matrices") {
    for (auto method : {EigenOptions::Method::dense, EigenOptions::Method::lanczos}) {
        EigenOptions options;
        options.method = method;
        CAPTURE(static_cast<int>(method));

        SUBCASE("diagonal matrix") {
            const auto m = sparse_from_dense({3, 0, 0, 0, 1, 0, 0, 0, 2}, 3);
            const auto emb = ann::smallest_eigenpairs(m, 2, options);
            CHECK(emb.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(emb.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-10));
            // vectors are e_2 and e_3 up to sign; canonical sign makes them exact
            CHECK(std::abs(emb.vectors[1 * 2 + 0] - 1.0) < 1e-8);  // row 1, col 0
            CHECK(std::abs(emb.vectors[2 * 2 + 1] - 1.0) < 1e-8);  // row 2, col 1
            check_embedding_invariants(emb, m);
        }
        SUBCASE("path P3 full spectrum") {
            const auto m = sparse_from_dense({1, -1, 0, -1, 2, -1, 0, -1, 1}, 3);
            const auto emb = ann::smallest_eigenpairs(m, 3, options);
            CHECK(emb.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(emb.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(emb.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-9));
            check_embedding_invariants(emb, m);
        }
        SUBCASE("two disjoint triangles: double zero with indicator kernel") {
            const auto w = oracles::affinity_from_edges(
                6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
            const auto lap = ann::build_laplacian(w, LaplacianKind::unnormalized);
            auto local = options;
            const auto emb = ann::smallest_eigenpairs(lap.matrix, 2, local);
            CHECK(std::abs(emb.eigenvalues[0]) < 1e-9);
            CHECK(std::abs(emb.eigenvalues[1]) < 1e-9);
            // Both eigenvectors must be constant within each triangle.
            for (std::int32_t j = 0; j < 2; ++j) {
                for (int i : {1, 2})
                    CHECK(emb.vectors[static_cast<std::size_t>(i * 2 + j)] ==
                          doctest::Approx(emb.vectors[static_cast<std::size_t>(j)]).epsilon(1e-7));
                for (int i : {4, 5})
                    CHECK(emb.vectors[static_cast<std::size_t>(i * 2 + j)] ==
                          doctest::Approx(emb.vectors[static_cast<std::size_t>(3 * 2 + j)]).epsilon(1e-7));
            }
            check_embedding_invariants(emb, lap.matrix);
        }
    }
}

TEST_CASE("lanczos agrees with the dense reference on random laplacians") {
    ann::Rng rng(ann::derive_stream(41, ann::stream_purpose::generic));
    int done = 0;
    while (done < 25) {
        const auto n = static_cast<std::int64_t>(rng.below(180) + 8);
        const auto w = oracles::random_graph(rng, n, rng.uniform(0.02, 0.2));
        const auto kind = rng.uniform() < 0.5 ? LaplacianKind::unnormalized : LaplacianKind::symmetric;
        const auto lap = ann::build_laplacian(w, kind);
        const auto k = static_cast<std::int32_t>(rng.below(5) + 1);

        const auto ref = ann::dense_reference_eigen(lap.matrix.dense(), n);
        const auto emb = ann::smallest_eigenpairs(lap.matrix, k, lanczos_options());
        for (std::int32_t j = 0; j < k; ++j)
            CHECK(std::abs(emb.eigenvalues[static_cast<std::size_t>(j)] -
                           ref.eigenvalues[static_cast<std::size_t>(j)]) <= 1e-6);
        CHECK(max_group_angle(ref, emb) <= 1e-4);
        check_embedding_invariants(emb, lap.matrix);
        ++done;
    }
}

TEST_CASE("kernel dimension equals component count through the solver") {
    ann::Rng rng(ann::derive_stream(42, ann::stream_purpose::generic));
    for (int trial = 0; trial < 10; ++trial) {
        const auto n = static_cast<std::int64_t>(rng.below(80) + 10);
        const auto w = oracles::random_graph(rng, n, 0.05);
        const auto components = ann::connected_components(w).k;
        if (components + 1 > n) continue;
        const auto lap = ann::build_laplacian(w, LaplacianKind::unnormalized);
        const auto emb = ann::smallest_eigenpairs(
            lap.matrix, static_cast<std::int32_t>(components + 1), lanczos_options());
        for (std::int32_t j = 0; j < components; ++j)
            CHECK(std::abs(emb.eigenvalues[static_cast<std::size_t>(j)]) < 1e-8);
        CHECK(emb.eigenvalues[static_cast<std::size_t>(components)] > 1e-6);
    }
}

TEST_CASE("sign canonicalization: first significant entry is positive") {
    ann::Rng rng(ann::derive_stream(43, ann::stream_purpose::generic));
    const auto w = oracles::random_graph(rng, 50, 0.1);
    const auto lap = ann::build_laplacian(w, LaplacianKind::symmetric);
    for (auto method : {EigenOptions::Method::dense, EigenOptions::Method::lanczos}) {
        EigenOptions options;
        options.method = method;
        const auto emb = ann::smallest_eigenpairs(lap.matrix, 4, options);
        for (std::int32_t j = 0; j < 4; ++j) {
            for (std::int64_t i = 0; i < emb.n; ++i) {
                const double v = emb.vectors[static_cast<std::size_t>(i * 4 + j)];
                if (std::abs(v) > 1e-10) {
                    CHECK(v > 0.0);
                    break;
                }
            }
        }
    }
}

TEST_CASE("random-walk kind reduces to the symmetric solve") {
    ann::Rng rng(ann::derive_stream(44, ann::stream_purpose::generic));
    const auto w = oracles::random_graph(rng, 60, 0.15);
    const auto rw = ann::build_laplacian(w, LaplacianKind::random_walk);
    const auto sym = ann::build_laplacian(w, LaplacianKind::symmetric);
    const auto emb_rw = ann::smallest_eigenpairs(rw, 3);
    const auto emb_sym = ann::smallest_eigenpairs(sym, 3);
    for (int j = 0; j < 3; ++j) {
        CHECK(emb_rw.eigenvalues[static_cast<std::size_t>(j)] ==
              doctest::Approx(emb_sym.eigenvalues[static_cast<std::size_t>(j)]).epsilon(1e-9));
        // Residuals are measured against the actual random-walk operator.
        CHECK(emb_rw.residual_norms[static_cast<std::size_t>(j)] <= 1e-6);
    }
}

TEST_CASE("non-convergence raises with the worst residual attached") {
    ann::Rng rng(ann::derive_stream(45, ann::stream_purpose::generic));
    const auto w = oracles::random_graph(rng, 120, 0.05);
    const auto lap = ann::build_laplacian(w, LaplacianKind::unnormalized);
    EigenOptions options;
    options.method = EigenOptions::Method::lanczos;
    options.max_matvecs = 3;
    try {
        ann::smallest_eigenpairs(lap.matrix, 4, options);
        FAIL("expected ConvergenceError");
    } catch (const ann::ConvergenceError& e) {
        CHECK(e.worst_residual() >= 0.0);
    }
}

TEST_CASE("k bounds") {
    const auto m = sparse_from_dense({1, 0, 0, 1}, 2);
    CHECK_THROWS_AS(ann::smallest_eigenpairs(m, 0), ann::ArgumentError);
    CHECK_THROWS_AS(ann::smallest_eigenpairs(m, 3), ann::ArgumentError);
}
