#include "anchornn.h"

#include <cstring>
#include <new>
#include <string>

#include "core/cluster.hpp"
#include "core/common.hpp"
#include "core/io.hpp"
#include "core/metrics.hpp"
#include "core/parallel.hpp"
#include "core/points.hpp"
#include "core/synth.hpp"
#include "core/theory.hpp"

struct ann_points {
    ann::PointSet data;
};

struct ann_result {
    ann::ClusterResult data;
};

namespace {

thread_local std::string g_last_error;

void remember(const char* message) { g_last_error = message == nullptr ? "" : message; }

template <class Fn>
ann_status guarded(Fn&& fn) {
    try {
        fn();
        return ANN_OK;
    } catch (const ann::ArgumentError& e) {
        remember(e.what());
        return ANN_ERR_ARGUMENT;
    } catch (const ann::DataError& e) {
        remember(e.what());
        return ANN_ERR_DATA;
    } catch (const ann::ConvergenceError& e) {
        remember(e.what());
        return ANN_ERR_CONVERGENCE;
    } catch (const ann::InfeasibleError& e) {
        remember(e.what());
        return ANN_ERR_INFEASIBLE;
    } catch (const std::bad_alloc&) {
        remember("out of memory");
        return ANN_ERR_INTERNAL;
    } catch (const std::exception& e) {
        remember(e.what());
        return ANN_ERR_INTERNAL;
    }
}

ann_status require(bool ok, const char* message) {
    if (ok) return ANN_OK;
    remember(message);
    return ANN_ERR_ARGUMENT;
}

ann::ClusterConfig convert(const ann_config& config) {
    ann::ClusterConfig cfg;
    cfg.k = config.k;
    cfg.knn = config.knn;
    cfg.anchors = config.anchors;
    switch (config.laplacian) {
        case ANN_LAPLACIAN_UNNORMALIZED: cfg.kind = ann::LaplacianKind::unnormalized; break;
        case ANN_LAPLACIAN_RANDOM_WALK: cfg.kind = ann::LaplacianKind::random_walk; break;
        case ANN_LAPLACIAN_SYMMETRIC: cfg.kind = ann::LaplacianKind::symmetric; break;
        default: throw ann::ArgumentError("unknown laplacian kind");
    }
    cfg.seed = config.seed;
    cfg.eigen_tol = config.eigen_tol;
    cfg.eigen_max_matvecs = config.eigen_max_matvecs;
    switch (config.eigen_method) {
        case ANN_EIGEN_AUTO: cfg.eigen_method = ann::EigenOptions::Method::automatic; break;
        case ANN_EIGEN_LANCZOS: cfg.eigen_method = ann::EigenOptions::Method::lanczos; break;
        case ANN_EIGEN_DENSE: cfg.eigen_method = ann::EigenOptions::Method::dense; break;
        default: throw ann::ArgumentError("unknown eigen method");
    }
    cfg.kmeans_restarts = config.kmeans_restarts;
    cfg.kmeans_max_iter = config.kmeans_max_iter;
    return cfg;
}

ann::SynthSpec convert_synth(const char* family, int64_t n, uint64_t seed,
                             const ann_synth_params* params) {
    if (family == nullptr) throw ann::ArgumentError("family is null");
    ann::SynthSpec spec;
    spec.family = ann::family_from_name(family);
    spec.n = n;
    spec.seed = seed;
    if (params != nullptr) {
        spec.scale = params->scale;
        spec.noise = params->noise;
        spec.gap = params->gap;
        spec.arms = params->arms;
        spec.delta_min = params->delta_min;
    }
    return spec;
}

}  // namespace

extern "C" {

const char* ann_version(void) { return "1.0.0"; }

const char* ann_last_error(void) { return g_last_error.c_str(); }

void ann_set_threads(int threads) { ann::set_max_threads(threads); }

int ann_threads(void) { return ann::max_threads(); }

ann_status ann_points_create(const double* coords, int64_t n, int64_t dim,
                             const int32_t* labels, ann_points** out) {
    if (auto s = require(coords != nullptr && out != nullptr, "null pointer argument")) return s;
    return guarded([&] {
        if (n < 1 || dim < 1) throw ann::ArgumentError("need n >= 1 and dim >= 1");
        std::vector<double> c(coords, coords + n * dim);
        std::vector<int32_t> l;
        if (labels != nullptr) l.assign(labels, labels + n);
        *out = new ann_points{ann::PointSet(std::move(c), n, dim, std::move(l))};
    });
}

ann_status ann_points_load_csv(const char* path, int with_labels, ann_points** out) {
    if (auto s = require(path != nullptr && out != nullptr, "null pointer argument")) return s;
    return guarded([&] {
        *out = new ann_points{ann::load_points_csv(path, with_labels != 0)};
    });
}

ann_status ann_points_save_csv(const ann_points* points, const char* path, int write_labels) {
    if (auto s = require(points != nullptr && path != nullptr, "null pointer argument")) return s;
    return guarded([&] { ann::save_points_csv(points->data, path, write_labels != 0); });
}

int64_t ann_points_count(const ann_points* points) {
    return points == nullptr ? 0 : points->data.size();
}

int64_t ann_points_dim(const ann_points* points) {
    return points == nullptr ? 0 : points->data.dim();
}

int ann_points_has_labels(const ann_points* points) {
    return points != nullptr && points->data.has_labels() ? 1 : 0;
}

int32_t ann_points_num_label_values(const ann_points* points) {
    return points == nullptr ? 0 : points->data.num_label_values();
}

const double* ann_points_coords(const ann_points* points) {
    return points == nullptr ? nullptr : points->data.coords().data();
}

const int32_t* ann_points_labels(const ann_points* points) {
    if (points == nullptr || !points->data.has_labels()) return nullptr;
    return points->data.labels().data();
}

ann_status ann_points_subset(const ann_points* points, const int64_t* indices, int64_t count,
                             ann_points** out) {
    if (auto s = require(points != nullptr && indices != nullptr && out != nullptr,
                         "null pointer argument"))
        return s;
    return guarded([&] {
        *out = new ann_points{points->data.subset(
            std::span<const int64_t>(indices, static_cast<std::size_t>(count)))};
    });
}

void ann_points_free(ann_points* points) { delete points; }

void ann_synth_params_init(ann_synth_params* params) {
    if (params == nullptr) return;
    params->scale = 1.0;
    params->noise = 1.0;
    params->gap = 1.0;
    params->arms = 0;
    params->delta_min = -1.0;
}

ann_status ann_generate(const char* family, int64_t n, uint64_t seed,
                        const ann_synth_params* params, ann_points** out) {
    if (auto s = require(out != nullptr, "null pointer argument")) return s;
    return guarded([&] {
        *out = new ann_points{ann::generate(convert_synth(family, n, seed, params))};
    });
}

int32_t ann_family_clusters(const char* family) {
    if (family == nullptr) return -1;
    try {
        return ann::family_cluster_count(ann::family_from_name(family));
    } catch (const std::exception&) {
        return -1;
    }
}

ann_status ann_verify_separation(const ann_points* points, double* out) {
    if (auto s = require(points != nullptr && out != nullptr, "null pointer argument")) return s;
    return guarded([&] { *out = ann::verify_separation(points->data); });
}

void ann_config_init(ann_config* config) {
    if (config == nullptr) return;
    config->k = 2;
    config->knn = 10;
    config->anchors = 0;
    config->laplacian = ANN_LAPLACIAN_UNNORMALIZED;
    config->seed = 0;
    config->eigen_tol = 1e-8;
    config->eigen_max_matvecs = 0;
    config->eigen_method = ANN_EIGEN_AUTO;
    config->kmeans_restarts = 10;
    config->kmeans_max_iter = 300;
}

ann_status ann_spectral(const ann_points* points, const ann_config* config, ann_result** out) {
    if (auto s = require(points != nullptr && config != nullptr && out != nullptr,
                         "null pointer argument"))
        return s;
    return guarded([&] {
        *out = new ann_result{ann::spectral_cluster(points->data, convert(*config))};
    });
}

ann_status ann_anchornn(const ann_points* points, const ann_config* config, ann_result** out) {
    if (auto s = require(points != nullptr && config != nullptr && out != nullptr,
                         "null pointer argument"))
        return s;
    return guarded([&] {
        *out = new ann_result{ann::anchornn_cluster(points->data, convert(*config))};
    });
}

int64_t ann_result_count(const ann_result* result) {
    return result == nullptr ? 0 : static_cast<int64_t>(result->data.partition.labels.size());
}

int32_t ann_result_clusters(const ann_result* result) {
    return result == nullptr ? 0 : result->data.partition.k;
}

const int32_t* ann_result_labels(const ann_result* result) {
    return result == nullptr ? nullptr : result->data.partition.labels.data();
}

int ann_result_degenerate(const ann_result* result) {
    return result != nullptr && result->data.partition.degenerate ? 1 : 0;
}

int64_t ann_result_anchor_count(const ann_result* result) {
    return result == nullptr ? 0 : static_cast<int64_t>(result->data.anchor_indices.size());
}

const int64_t* ann_result_anchor_indices(const ann_result* result) {
    if (result == nullptr || result->data.anchor_indices.empty()) return nullptr;
    return result->data.anchor_indices.data();
}

void ann_result_timings(const ann_result* result, ann_timings* out) {
    if (result == nullptr || out == nullptr) return;
    out->affinity = result->data.times.affinity;
    out->eigen = result->data.times.eigen;
    out->kmeans = result->data.times.kmeans;
    out->propagate = result->data.times.propagate;
    out->total = result->data.times.total;
}

void ann_result_free(ann_result* result) { delete result; }

ann_status ann_sample_anchors(int64_t n, int64_t m, uint64_t seed, int64_t* out) {
    if (auto s = require(out != nullptr, "null pointer argument")) return s;
    return guarded([&] {
        const std::vector<int64_t> sample = ann::sample_anchor_indices(n, m, seed);
        std::memcpy(out, sample.data(), sample.size() * sizeof(int64_t));
    });
}

ann_status ann_rand_index(const int32_t* a, const int32_t* b, int64_t n, double* out) {
    if (auto s = require(a != nullptr && b != nullptr && out != nullptr, "null pointer argument"))
        return s;
    return guarded([&] {
        *out = ann::rand_index(std::span<const int32_t>(a, static_cast<std::size_t>(n)),
                               std::span<const int32_t>(b, static_cast<std::size_t>(n)));
    });
}

ann_status ann_adjusted_rand_index(const int32_t* a, const int32_t* b, int64_t n, double* out) {
    if (auto s = require(a != nullptr && b != nullptr && out != nullptr, "null pointer argument"))
        return s;
    return guarded([&] {
        *out = ann::adjusted_rand_index(std::span<const int32_t>(a, static_cast<std::size_t>(n)),
                                        std::span<const int32_t>(b, static_cast<std::size_t>(n)));
    });
}

ann_status ann_chernoff_rate(double x, double* out) {
    if (auto s = require(out != nullptr, "null pointer argument")) return s;
    return guarded([&] { *out = ann::chernoff_rate(x); });
}

ann_status ann_recommended_knn(int64_t sample_size, double c, int64_t* out) {
    if (auto s = require(out != nullptr, "null pointer argument")) return s;
    return guarded([&] {
        ann::ScalingConfig cfg;
        if (c > 0.0) cfg.c = c;
        *out = ann::recommended_knn(sample_size, cfg);
    });
}

ann_status ann_bandwidth_from_knn(int64_t knn, int64_t sample_size, double q_min, int32_t dim,
                                  const ann_points* points, double* out) {
    if (auto s = require(out != nullptr, "null pointer argument")) return s;
    return guarded([&] {
        ann::ScalingConfig cfg;
        cfg.dim = dim;
        if (q_min > 0.0) {
            cfg.q_min = q_min;
        } else {
            if (points == nullptr)
                throw ann::ArgumentError("q_min <= 0 requires a point set for the default density");
            cfg.q_min = ann::bounding_box_density(points->data);
        }
        *out = ann::bandwidth_from_knn(knn, sample_size, cfg);
    });
}

ann_status ann_covering_radius(const ann_points* anchors, const ann_points* points, double* out) {
    if (auto s = require(anchors != nullptr && points != nullptr && out != nullptr,
                         "null pointer argument"))
        return s;
    return guarded([&] { *out = ann::covering_radius(anchors->data, points->data); });
}

ann_status ann_per_cluster_components(const ann_points* points, int64_t knn, int64_t* counts,
                                      int32_t counts_len) {
    if (auto s = require(points != nullptr && counts != nullptr, "null pointer argument")) return s;
    return guarded([&] {
        const std::vector<int64_t> result = ann::per_cluster_components(points->data, knn);
        if (static_cast<std::size_t>(counts_len) != result.size())
            throw ann::ArgumentError("counts_len must equal the number of label values");
        std::memcpy(counts, result.data(), result.size() * sizeof(int64_t));
    });
}

ann_status ann_cross_cluster_edges(const ann_points* points, int64_t knn, int64_t* out) {
    if (auto s = require(points != nullptr && out != nullptr, "null pointer argument")) return s;
    return guarded([&] { *out = ann::cross_cluster_edges(points->data, knn); });
}

}  // extern "C"
