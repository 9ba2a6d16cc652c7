/*
 * anchornn - spectral clustering with anchor-based acceleration.
 *
 * C interface to the clustering core: opaque handles, integer status codes,
 * and a thread-local error message. All functions returning ann_status leave
 * their outputs untouched on failure.
 */

#ifndef ANCHORNN_H
#define ANCHORNN_H

#include <stdint.h>

#if defined(_WIN32)
#  define ANN_API __declspec(dllexport)
#else
#  define ANN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ann_status {
    ANN_OK = 0,
    ANN_ERR_ARGUMENT = 1,     /* invalid parameter or input shape */
    ANN_ERR_DATA = 2,         /* unreadable or malformed data */
    ANN_ERR_CONVERGENCE = 3,  /* eigensolver ran out of budget */
    ANN_ERR_INFEASIBLE = 4,   /* generator margin cannot be met */
    ANN_ERR_INTERNAL = 5
} ann_status;

ANN_API const char* ann_version(void);

/* Message for the most recent failure on the calling thread. */
ANN_API const char* ann_last_error(void);

/* Worker thread cap for parallel sections; 0 restores the hardware default. */
ANN_API void ann_set_threads(int threads);
ANN_API int ann_threads(void);

/* ------------------------------------------------------------------ points */

typedef struct ann_points ann_points;

/* coords: n*dim row-major. labels: optional (NULL), values in [0, L). */
ANN_API ann_status ann_points_create(const double* coords, int64_t n, int64_t dim,
                                     const int32_t* labels, ann_points** out);
ANN_API ann_status ann_points_load_csv(const char* path, int with_labels, ann_points** out);
ANN_API ann_status ann_points_save_csv(const ann_points* points, const char* path,
                                       int write_labels);
ANN_API int64_t ann_points_count(const ann_points* points);
ANN_API int64_t ann_points_dim(const ann_points* points);
ANN_API int ann_points_has_labels(const ann_points* points);
ANN_API int32_t ann_points_num_label_values(const ann_points* points);
ANN_API const double* ann_points_coords(const ann_points* points);
ANN_API const int32_t* ann_points_labels(const ann_points* points); /* NULL if absent */
ANN_API ann_status ann_points_subset(const ann_points* points, const int64_t* indices,
                                     int64_t count, ann_points** out);
ANN_API void ann_points_free(ann_points* points);

/* -------------------------------------------------------------- generators */

/* Families: "two_spirals", "cluster_in_cluster", "corners", "half_kernel",
 * "crescent_full_moon", "outlier". */

typedef struct ann_synth_params {
    double scale;     /* multiplies every length (default 1) */
    double noise;     /* multiplies jitter amplitudes (default 1) */
    double gap;       /* multiplies inter-cluster clearance (default 1) */
    int32_t arms;     /* ray count for cluster_in_cluster; 0 = default */
    double delta_min; /* required margin; < 0 = family default */
} ann_synth_params;

ANN_API void ann_synth_params_init(ann_synth_params* params);

ANN_API ann_status ann_generate(const char* family, int64_t n, uint64_t seed,
                                const ann_synth_params* params, ann_points** out);
ANN_API int32_t ann_family_clusters(const char* family); /* -1 if unknown */

/* Minimum distance across ground-truth clusters (exhaustive). */
ANN_API ann_status ann_verify_separation(const ann_points* points, double* out);

/* -------------------------------------------------------------- clustering */

typedef enum ann_laplacian_kind {
    ANN_LAPLACIAN_UNNORMALIZED = 0,
    ANN_LAPLACIAN_RANDOM_WALK = 1,
    ANN_LAPLACIAN_SYMMETRIC = 2
} ann_laplacian_kind;

typedef enum ann_eigen_method {
    ANN_EIGEN_AUTO = 0,    /* dense reference for n <= 512, Lanczos above */
    ANN_EIGEN_LANCZOS = 1,
    ANN_EIGEN_DENSE = 2
} ann_eigen_method;

typedef struct ann_config {
    int32_t k;                /* clusters */
    int64_t knn;              /* nearest-neighbor count K */
    int64_t anchors;          /* anchor count m (anchor method only) */
    int32_t laplacian;        /* ann_laplacian_kind */
    uint64_t seed;
    double eigen_tol;         /* default 1e-8 */
    int64_t eigen_max_matvecs;/* 0 = 10 * sample size */
    int32_t eigen_method;     /* ann_eigen_method */
    int32_t kmeans_restarts;  /* default 10 */
    int32_t kmeans_max_iter;  /* default 300 */
} ann_config;

ANN_API void ann_config_init(ann_config* config);

typedef struct ann_result ann_result;

typedef struct ann_timings {
    double affinity;
    double eigen;
    double kmeans;
    double propagate;
    double total;
} ann_timings;

ANN_API ann_status ann_spectral(const ann_points* points, const ann_config* config,
                                ann_result** out);
ANN_API ann_status ann_anchornn(const ann_points* points, const ann_config* config,
                                ann_result** out);

ANN_API int64_t ann_result_count(const ann_result* result);
ANN_API int32_t ann_result_clusters(const ann_result* result);
ANN_API const int32_t* ann_result_labels(const ann_result* result);
ANN_API int ann_result_degenerate(const ann_result* result);
ANN_API int64_t ann_result_anchor_count(const ann_result* result); /* 0 for spectral */
ANN_API const int64_t* ann_result_anchor_indices(const ann_result* result);
ANN_API void ann_result_timings(const ann_result* result, ann_timings* out);
ANN_API void ann_result_free(ann_result* result);

/* The anchor subsample ann_anchornn draws for (n, m, seed): m ascending
 * indices written to out. */
ANN_API ann_status ann_sample_anchors(int64_t n, int64_t m, uint64_t seed, int64_t* out);

/* ----------------------------------------------------------------- metrics */

ANN_API ann_status ann_rand_index(const int32_t* a, const int32_t* b, int64_t n, double* out);
ANN_API ann_status ann_adjusted_rand_index(const int32_t* a, const int32_t* b, int64_t n,
                                           double* out);

/* ------------------------------------------------------------- diagnostics */

/* 1 - x + x ln x (value 1 at x = 0). */
ANN_API ann_status ann_chernoff_rate(double x, double* out);

/* max(1, ceil(c * ln(sample_size))) clamped to sample_size - 1; c <= 0 uses
 * the default constant 2. */
ANN_API ann_status ann_recommended_knn(int64_t sample_size, double c, int64_t* out);

/* Radius r with (sample_size / 2) * q_min * omega_dim * r^dim = K.
 * q_min <= 0 requests the uniform bounding-box density of `points`
 * (points may be NULL when q_min is given). */
ANN_API ann_status ann_bandwidth_from_knn(int64_t knn, int64_t sample_size, double q_min,
                                          int32_t dim, const ann_points* points, double* out);

ANN_API ann_status ann_covering_radius(const ann_points* anchors, const ann_points* points,
                                       double* out);

/* Per-label component counts of the label-restricted KNN graphs; counts must
 * hold ann_points_num_label_values entries. */
ANN_API ann_status ann_per_cluster_components(const ann_points* points, int64_t knn,
                                              int64_t* counts, int32_t counts_len);

ANN_API ann_status ann_cross_cluster_edges(const ann_points* points, int64_t knn,
                                           int64_t* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ANCHORNN_H */
