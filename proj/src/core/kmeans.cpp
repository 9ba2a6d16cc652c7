#include "core/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/common.hpp"
#include "core/parallel.hpp"
#include "core/points.hpp"
#include "core/rng.hpp"

namespace ann {

namespace {

struct RunResult {
    std::vector<double> centroids;
    std::vector<std::int32_t> labels;
    double inertia = std::numeric_limits<double>::infinity();
    std::int32_t iterations = 0;
    std::vector<double> history;
};

// Squared distance of row i to centroid c.
double row_centroid_d2(const double* rows, std::int64_t p, std::int64_t i, const double* centroid) {
    return squared_distance(rows + i * p, centroid, p);
}

void plusplus_seed(const double* rows, std::int64_t n, std::int64_t p, std::int32_t k,
                   Rng& rng, std::vector<double>& centroids) {
    centroids.assign(static_cast<std::size_t>(k * p), 0.0);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);

    const std::int64_t first = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
    std::copy_n(rows + first * p, p, centroids.begin());
    taken[static_cast<std::size_t>(first)] = true;

    std::vector<double> d2(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        d2[static_cast<std::size_t>(i)] = row_centroid_d2(rows, p, i, centroids.data());

    for (std::int32_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::int64_t i = 0; i < n; ++i) total += d2[static_cast<std::size_t>(i)];

        std::int64_t pick = -1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (std::int64_t i = 0; i < n; ++i) {
                acc += d2[static_cast<std::size_t>(i)];
                if (acc >= target && d2[static_cast<std::size_t>(i)] > 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick < 0) {
            // All remaining mass is zero (duplicate-heavy input): take the
            // first index not already chosen.
            for (std::int64_t i = 0; i < n; ++i)
                if (!taken[static_cast<std::size_t>(i)]) {
                    pick = i;
                    break;
                }
            if (pick < 0) pick = 0;
        }
        taken[static_cast<std::size_t>(pick)] = true;
        std::copy_n(rows + pick * p, p, centroids.begin() + c * p);
        for (std::int64_t i = 0; i < n; ++i) {
            const double d = row_centroid_d2(rows, p, i, centroids.data() + c * p);
            if (d < d2[static_cast<std::size_t>(i)]) d2[static_cast<std::size_t>(i)] = d;
        }
    }
}

// Nearest centroid, ties to the lowest centroid index.
std::int32_t assign_row(const double* rows, std::int64_t p, std::int64_t i,
                        const std::vector<double>& centroids, std::int32_t k, double* d2_out) {
    std::int32_t best = 0;
    double best_d2 = row_centroid_d2(rows, p, i, centroids.data());
    for (std::int32_t c = 1; c < k; ++c) {
        const double d = row_centroid_d2(rows, p, i, centroids.data() + static_cast<std::int64_t>(c) * p);
        if (d < best_d2) {
            best_d2 = d;
            best = c;
        }
    }
    if (d2_out) *d2_out = best_d2;
    return best;
}

RunResult lloyd(const double* rows, std::int64_t n, std::int64_t p, std::int32_t k,
                std::int32_t max_iter, std::uint64_t stream_seed) {
    Rng rng(stream_seed);
    RunResult run;
    plusplus_seed(rows, n, p, k, rng, run.centroids);
    run.labels.assign(static_cast<std::size_t>(n), -1);

    std::vector<double> d2(static_cast<std::size_t>(n));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k));

    for (std::int32_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int32_t c = assign_row(rows, p, i, run.centroids, k, &d2[static_cast<std::size_t>(i)]);
            if (c != run.labels[static_cast<std::size_t>(i)]) {
                run.labels[static_cast<std::size_t>(i)] = c;
                changed = true;
            }
        }

        std::fill(run.centroids.begin(), run.centroids.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::int64_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::int64_t>(run.labels[static_cast<std::size_t>(i)]);
            ++counts[static_cast<std::size_t>(c)];
            for (std::int64_t j = 0; j < p; ++j) run.centroids[static_cast<std::size_t>(c * p + j)] += rows[i * p + j];
        }
        for (std::int32_t c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) continue;
            const double inv = 1.0 / static_cast<double>(counts[static_cast<std::size_t>(c)]);
            for (std::int64_t j = 0; j < p; ++j)
                run.centroids[static_cast<std::size_t>(static_cast<std::int64_t>(c) * p + j)] *= inv;
        }

        // Empty-cluster repair: promote the point farthest from its centroid
        // (ties to the smaller index) to a singleton centroid.
        for (std::int32_t c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            for (std::int64_t i = 0; i < n; ++i)
                d2[static_cast<std::size_t>(i)] = row_centroid_d2(
                    rows, p, i,
                    run.centroids.data() + static_cast<std::int64_t>(run.labels[static_cast<std::size_t>(i)]) * p);
            std::int64_t farthest = -1;
            double worst = -1.0;
            for (std::int64_t i = 0; i < n; ++i) {
                if (counts[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(i)])] <= 1) continue;
                if (d2[static_cast<std::size_t>(i)] > worst) {
                    worst = d2[static_cast<std::size_t>(i)];
                    farthest = i;
                }
            }
            if (farthest < 0) break;  // nothing movable; stays degenerate
            const std::int32_t old = run.labels[static_cast<std::size_t>(farthest)];
            --counts[static_cast<std::size_t>(old)];
            ++counts[static_cast<std::size_t>(c)];
            run.labels[static_cast<std::size_t>(farthest)] = c;
            std::copy_n(rows + farthest * p, p, run.centroids.begin() + static_cast<std::int64_t>(c) * p);
            changed = true;
        }

        double inertia = 0.0;
        for (std::int64_t i = 0; i < n; ++i)
            inertia += row_centroid_d2(
                rows, p, i,
                run.centroids.data() + static_cast<std::int64_t>(run.labels[static_cast<std::size_t>(i)]) * p);
        run.history.push_back(inertia);
        run.inertia = inertia;
        run.iterations = iter + 1;
        if (!changed) break;
    }
    return run;
}

}  // namespace

KMeansResult kmeans(std::span<const double> rows, std::int64_t n, std::int64_t p,
                    std::int32_t k, const KMeansOptions& options) {
    if (n < 1 || p < 1) throw ArgumentError("kmeans: need n >= 1 and p >= 1");
    if (rows.size() != static_cast<std::size_t>(n * p))
        throw ArgumentError("kmeans: row buffer size does not match n*p");
    if (k < 1) throw ArgumentError("kmeans: k must be positive");
    if (k > n) throw ArgumentError("kmeans: k must be at most n");
    if (options.restarts < 1) throw ArgumentError("kmeans: restarts must be >= 1");
    if (options.max_iter < 1) throw ArgumentError("kmeans: max_iter must be >= 1");

    std::vector<RunResult> runs(static_cast<std::size_t>(options.restarts));
    parallel_for(0, options.restarts, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t r = lo; r < hi; ++r)
            runs[static_cast<std::size_t>(r)] =
                lloyd(rows.data(), n, p, k, options.max_iter,
                      derive_stream(options.seed, stream_purpose::kmeans,
                                    static_cast<std::uint64_t>(r)));
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].inertia < runs[best].inertia) best = r;

    KMeansResult result;
    result.centroids = std::move(runs[best].centroids);
    result.inertia = runs[best].inertia;
    result.iterations = runs[best].iterations;
    result.restarts_used = options.restarts;
    result.inertia_history = std::move(runs[best].history);

    Partition raw;
    raw.labels = std::move(runs[best].labels);
    raw.k = k;
    raw.degenerate = count_nonempty_clusters(raw.labels) < k;
    result.assignment = canonicalize(raw);

    // Reorder centroids to match the canonical labels.
    std::vector<double> reordered(result.centroids.size(), 0.0);
    std::vector<bool> placed(static_cast<std::size_t>(k), false);
    for (std::size_t i = 0; i < raw.labels.size(); ++i) {
        const auto from = static_cast<std::int64_t>(raw.labels[i]);
        const auto to = static_cast<std::int64_t>(result.assignment.labels[i]);
        if (!placed[static_cast<std::size_t>(to)]) {
            std::copy_n(result.centroids.begin() + from * p, p, reordered.begin() + to * p);
            placed[static_cast<std::size_t>(to)] = true;
        }
    }
    result.centroids = std::move(reordered);
    return result;
}

}  // namespace ann
