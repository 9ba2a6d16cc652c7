#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "core/common.hpp"
#include "core/rng.hpp"

namespace ann {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Geometry of a family after applying scale/noise/gap/arms. Fields are
// family-specific; unused ones stay zero.
struct Geometry {
    SynthFamily family;
    std::int32_t k = 0;
    std::vector<double> fractions;

    // two_spirals
    double spiral_b = 0, spiral_theta0 = 0, spiral_theta1 = 0, spiral_jitter = 0;
    // cluster_in_cluster
    double cic_r1 = 0, cic_sigma = 0, cic_r2 = 0, cic_half_width = 0, cic_ang_jitter = 0;
    std::int32_t cic_arms = 0;
    // corners
    double corner_offset = 0, corner_length = 0, corner_thickness = 0;
    // half_kernel
    double hk_rho1 = 0, hk_rho2 = 0, hk_jitter = 0;
    // crescent_full_moon
    double cfm_moon_r = 0, cfm_rho_a = 0, cfm_rho_b = 0;
    // outlier
    double out_dense_cx = 0, out_dense_r = 0, out_sparse_cy = 0, out_sparse_r = 0;

    double support_separation = 0;  // guaranteed min distance between supports
};

Geometry resolve(const SynthSpec& spec) {
    const double s = spec.scale;
    const double noise = spec.noise;
    const double gap = spec.gap;
    if (s <= 0 || noise < 0 || gap <= 0)
        throw ArgumentError("synth: scale and gap must be positive, noise nonnegative");

    Geometry g;
    g.family = spec.family;
    switch (spec.family) {
        case SynthFamily::two_spirals: {
            g.k = 2;
            g.fractions = {0.5, 0.5};
            g.spiral_b = 1.0 * s * gap;
            g.spiral_theta0 = 0.5 * kPi;
            g.spiral_theta1 = 1.75 * kPi;
            g.spiral_jitter = 0.15 * s * gap * noise;
            // Radial gap between the arms is pi*b; the inner tips sit at the
            // same distance. Small allowance for curvature.
            g.support_separation =
                std::max(0.0, 0.95 * (kPi * g.spiral_b - 2.0 * g.spiral_jitter));
            break;
        }
        case SynthFamily::cluster_in_cluster: {
            g.k = 2;
            g.fractions = {0.5, 0.5};
            g.cic_r1 = 1.0 * s;
            g.cic_sigma = 0.5 * g.cic_r1;
            g.cic_r2 = 5.0 * s * gap;
            g.cic_half_width = 0.25 * s;
            g.cic_arms = spec.arms > 0 ? spec.arms : 64;
            g.cic_ang_jitter = 0.1 * (2.0 * kPi / g.cic_arms) * noise;
            g.support_separation = (g.cic_r2 - g.cic_half_width) - g.cic_r1;
            break;
        }
        case SynthFamily::corners: {
            g.k = 4;
            g.fractions = {0.25, 0.25, 0.25, 0.25};
            g.corner_offset = 1.0 * s * gap;
            g.corner_length = 4.0 * s;
            g.corner_thickness = 1.0 * s;
            g.support_separation = 2.0 * g.corner_offset;
            break;
        }
        case SynthFamily::half_kernel: {
            g.k = 2;
            g.fractions = {0.5, 0.5};
            g.hk_rho1 = 2.5 * s;
            g.hk_rho2 = g.hk_rho1 + 2.5 * s * gap;
            g.hk_jitter = 0.25 * s * noise;
            g.support_separation = std::max(0.0, g.hk_rho2 - g.hk_rho1 - 2.0 * g.hk_jitter);
            break;
        }
        case SynthFamily::crescent_full_moon: {
            g.k = 2;
            g.fractions = {0.5, 0.5};
            g.cfm_moon_r = 1.0 * s;
            g.cfm_rho_a = g.cfm_moon_r + 2.0 * s * gap;
            g.cfm_rho_b = g.cfm_rho_a + 1.0 * s;
            g.support_separation = g.cfm_rho_a - g.cfm_moon_r;
            break;
        }
        case SynthFamily::outlier: {
            g.k = 4;
            g.fractions = {0.35, 0.35, 0.15, 0.15};
            g.out_dense_cx = 4.0 * s * gap;
            g.out_dense_r = 1.2 * s;
            g.out_sparse_cy = 9.0 * s * gap;
            g.out_sparse_r = 2.0 * s;
            const double dense_dense = 2.0 * g.out_dense_cx - 2.0 * g.out_dense_r;
            const double dense_sparse =
                std::hypot(g.out_dense_cx, g.out_sparse_cy) - g.out_dense_r - g.out_sparse_r;
            const double sparse_sparse = 2.0 * g.out_sparse_cy - 2.0 * g.out_sparse_r;
            g.support_separation = std::min({dense_dense, dense_sparse, sparse_sparse});
            break;
        }
    }
    return g;
}

void sample_point(const Geometry& g, std::int32_t cluster, Rng& rng, double* out) {
    switch (g.family) {
        case SynthFamily::two_spirals: {
            const double theta = rng.uniform(g.spiral_theta0, g.spiral_theta1);
            const double radius =
                g.spiral_b * theta + rng.uniform(-g.spiral_jitter, g.spiral_jitter);
            const double sign = cluster == 0 ? 1.0 : -1.0;
            out[0] = sign * radius * std::cos(theta);
            out[1] = sign * radius * std::sin(theta);
            break;
        }
        case SynthFamily::cluster_in_cluster: {
            if (cluster == 0) {
                // Isotropic Gaussian truncated at r1.
                double x, y;
                do {
                    x = g.cic_sigma * rng.normal();
                    y = g.cic_sigma * rng.normal();
                } while (x * x + y * y > g.cic_r1 * g.cic_r1);
                out[0] = x;
                out[1] = y;
            } else {
                const auto arm = static_cast<double>(rng.below(static_cast<std::uint64_t>(g.cic_arms)));
                const double angle = arm * (2.0 * kPi / g.cic_arms) +
                                     rng.uniform(-g.cic_ang_jitter, g.cic_ang_jitter);
                const double radius =
                    rng.uniform(g.cic_r2 - g.cic_half_width, g.cic_r2 + g.cic_half_width);
                out[0] = radius * std::cos(angle);
                out[1] = radius * std::sin(angle);
            }
            break;
        }
        case SynthFamily::corners: {
            // Two perpendicular bars per corner, mirrored into each quadrant.
            const double sx = (cluster == 0 || cluster == 3) ? 1.0 : -1.0;
            const double sy = (cluster == 0 || cluster == 1) ? 1.0 : -1.0;
            const bool horizontal = rng.uniform() < 0.5;
            const double lo = g.corner_offset;
            double x, y;
            if (horizontal) {
                x = rng.uniform(lo, lo + g.corner_length);
                y = rng.uniform(lo, lo + g.corner_thickness);
            } else {
                x = rng.uniform(lo, lo + g.corner_thickness);
                y = rng.uniform(lo, lo + g.corner_length);
            }
            out[0] = sx * x;
            out[1] = sy * y;
            break;
        }
        case SynthFamily::half_kernel: {
            const double theta = rng.uniform(0.0, kPi);
            const double base = cluster == 0 ? g.hk_rho1 : g.hk_rho2;
            const double radius = base + rng.uniform(-g.hk_jitter, g.hk_jitter);
            out[0] = radius * std::cos(theta);
            out[1] = radius * std::sin(theta);
            break;
        }
        case SynthFamily::crescent_full_moon: {
            if (cluster == 0) {
                const double radius = g.cfm_moon_r * std::sqrt(rng.uniform());
                const double theta = rng.uniform(0.0, 2.0 * kPi);
                out[0] = radius * std::cos(theta);
                out[1] = radius * std::sin(theta);
            } else {
                const double theta = rng.uniform(0.0, kPi);
                const double radius = rng.uniform(g.cfm_rho_a, g.cfm_rho_b);
                out[0] = radius * std::cos(theta);
                out[1] = radius * std::sin(theta);
            }
            break;
        }
        case SynthFamily::outlier: {
            double cx = 0, cy = 0, r = 0;
            switch (cluster) {
                case 0: cx = g.out_dense_cx; r = g.out_dense_r; break;
                case 1: cx = -g.out_dense_cx; r = g.out_dense_r; break;
                case 2: cy = g.out_sparse_cy; r = g.out_sparse_r; break;
                default: cy = -g.out_sparse_cy; r = g.out_sparse_r; break;
            }
            const double radius = r * std::sqrt(rng.uniform());
            const double theta = rng.uniform(0.0, 2.0 * kPi);
            out[0] = cx + radius * std::cos(theta);
            out[1] = cy + radius * std::sin(theta);
            break;
        }
    }
}

// Deterministic cluster sizes: floor split plus remainder to the leading
// clusters, with every cluster kept nonempty when n >= k.
std::vector<std::int64_t> cluster_sizes(std::int64_t n, const std::vector<double>& fractions) {
    const auto k = static_cast<std::int64_t>(fractions.size());
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    std::int64_t assigned = 0;
    for (std::int64_t c = 0; c < k; ++c) {
        sizes[static_cast<std::size_t>(c)] =
            static_cast<std::int64_t>(std::floor(static_cast<double>(n) * fractions[static_cast<std::size_t>(c)]));
        assigned += sizes[static_cast<std::size_t>(c)];
    }
    for (std::int64_t i = 0; assigned < n; ++i, ++assigned) ++sizes[static_cast<std::size_t>(i % k)];
    for (std::int64_t c = 0; c < k; ++c) {
        while (sizes[static_cast<std::size_t>(c)] == 0) {
            const auto donor = static_cast<std::size_t>(
                std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
            --sizes[donor];
            ++sizes[static_cast<std::size_t>(c)];
        }
    }
    return sizes;
}

// All cross-label pairs closer than margin, found through a uniform grid with
// cell size = margin.
std::vector<std::pair<std::int64_t, std::int64_t>> margin_violations(
    const std::vector<double>& coords, const std::vector<std::int32_t>& labels, double margin) {
    std::vector<std::pair<std::int64_t, std::int64_t>> hits;
    if (margin <= 0.0) return hits;
    const auto n = static_cast<std::int64_t>(labels.size());
    const double cell = margin;
    // Spatial hash; bucket collisions only add distance checks, never drop any.
    const auto cell_key = [](std::int64_t gx, std::int64_t gy) {
        return static_cast<std::uint64_t>(gx) * 0x9E3779B97F4A7C15ULL +
               static_cast<std::uint64_t>(gy) * 0xC2B2AE3D27D4EB4FULL;
    };
    std::unordered_map<std::uint64_t, std::vector<std::int64_t>> grid;
    for (std::int64_t i = 0; i < n; ++i) {
        const auto gx = static_cast<std::int64_t>(std::floor(coords[static_cast<std::size_t>(2 * i)] / cell));
        const auto gy = static_cast<std::int64_t>(std::floor(coords[static_cast<std::size_t>(2 * i + 1)] / cell));
        grid[cell_key(gx, gy)].push_back(i);
    }
    const double margin2 = margin * margin;
    for (std::int64_t i = 0; i < n; ++i) {
        const auto gx = static_cast<std::int64_t>(std::floor(coords[static_cast<std::size_t>(2 * i)] / cell));
        const auto gy = static_cast<std::int64_t>(std::floor(coords[static_cast<std::size_t>(2 * i + 1)] / cell));
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find(cell_key(gx + dx, gy + dy));
                if (it == grid.end()) continue;
                for (std::int64_t j : it->second) {
                    if (j <= i || labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)])
                        continue;
                    const double ddx = coords[static_cast<std::size_t>(2 * i)] - coords[static_cast<std::size_t>(2 * j)];
                    const double ddy = coords[static_cast<std::size_t>(2 * i + 1)] - coords[static_cast<std::size_t>(2 * j + 1)];
                    if (ddx * ddx + ddy * ddy < margin2) hits.emplace_back(i, j);
                }
            }
    }
    return hits;
}

}  // namespace

const char* family_name(SynthFamily family) {
    switch (family) {
        case SynthFamily::two_spirals: return "two_spirals";
        case SynthFamily::cluster_in_cluster: return "cluster_in_cluster";
        case SynthFamily::corners: return "corners";
        case SynthFamily::half_kernel: return "half_kernel";
        case SynthFamily::crescent_full_moon: return "crescent_full_moon";
        case SynthFamily::outlier: return "outlier";
    }
    return "unknown";
}

SynthFamily family_from_name(std::string_view name) {
    for (SynthFamily f :
         {SynthFamily::two_spirals, SynthFamily::cluster_in_cluster, SynthFamily::corners,
          SynthFamily::half_kernel, SynthFamily::crescent_full_moon, SynthFamily::outlier})
        if (name == family_name(f)) return f;
    throw ArgumentError("unknown synthetic family: " + std::string(name));
}

std::int32_t family_cluster_count(SynthFamily family) {
    switch (family) {
        case SynthFamily::corners:
        case SynthFamily::outlier: return 4;
        default: return 2;
    }
}

double family_default_delta(const SynthSpec& spec) {
    return 0.98 * resolve(spec).support_separation;
}

PointSet generate(const SynthSpec& spec) {
    const Geometry geom = resolve(spec);
    if (spec.n < geom.k)
        throw ArgumentError("generate: n must be at least the family's cluster count");
    const double margin = spec.delta_min >= 0.0 ? spec.delta_min : 0.98 * geom.support_separation;

    const std::vector<std::int64_t> sizes = cluster_sizes(spec.n, geom.fractions);
    Rng rng(derive_stream(spec.seed, stream_purpose::synth));

    std::vector<double> coords(static_cast<std::size_t>(2 * spec.n));
    std::vector<std::int32_t> labels(static_cast<std::size_t>(spec.n));
    std::int64_t row = 0;
    for (std::int32_t c = 0; c < geom.k; ++c)
        for (std::int64_t i = 0; i < sizes[static_cast<std::size_t>(c)]; ++i, ++row) {
            sample_point(geom, c, rng, coords.data() + 2 * row);
            labels[static_cast<std::size_t>(row)] = c;
        }

    // Margin enforcement: resample the higher-indexed point of every
    // cross-label pair closer than the margin until none remain.
    const std::int64_t budget = 100 * spec.n;
    std::int64_t attempts = 0;
    for (;;) {
        const auto violations = margin_violations(coords, labels, margin);
        if (violations.empty()) break;
        std::vector<std::int64_t> offenders;
        offenders.reserve(violations.size());
        for (const auto& [i, j] : violations) offenders.push_back(std::max(i, j));
        std::sort(offenders.begin(), offenders.end());
        offenders.erase(std::unique(offenders.begin(), offenders.end()), offenders.end());
        for (std::int64_t idx : offenders) {
            if (++attempts > budget)
                throw InfeasibleError(
                    "generate: delta_min is infeasible for this geometry (rejection budget "
                    "exhausted)");
            sample_point(geom, labels[static_cast<std::size_t>(idx)], rng, coords.data() + 2 * idx);
        }
    }

    return PointSet(std::move(coords), spec.n, 2, std::move(labels));
}

double verify_separation(const PointSet& points) {
    if (!points.has_labels()) throw ArgumentError("verify_separation: labels required");
    if (points.num_label_values() < 2)
        throw ArgumentError("verify_separation: need at least two labels");
    const std::int64_t n = points.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) {
            if (points.labels()[static_cast<std::size_t>(i)] == points.labels()[static_cast<std::size_t>(j)])
                continue;
            best = std::min(best, squared_distance(points.row(i), points.row(j), points.dim()));
        }
    return std::sqrt(best);
}

}  // namespace ann
