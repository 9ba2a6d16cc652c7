#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "core/points.hpp"

namespace ann {

enum class SynthFamily {
    two_spirals,
    cluster_in_cluster,
    corners,
    half_kernel,
    crescent_full_moon,
    outlier,
};

struct SynthSpec {
    SynthFamily family = SynthFamily::cluster_in_cluster;
    std::int64_t n = 1000;
    std::uint64_t seed = 0;
    double scale = 1.0;      // multiplies every length
    double noise = 1.0;      // multiplies the family's jitter amplitudes
    double gap = 1.0;        // multiplies the family's inter-cluster clearance
    std::int32_t arms = 0;   // ray count for cluster_in_cluster; 0 = default (64)
    double delta_min = -1.0; // required separation margin; < 0 = family default
};

const char* family_name(SynthFamily family);
SynthFamily family_from_name(std::string_view name);  // throws ArgumentError
std::int32_t family_cluster_count(SynthFamily family);

// The margin used when spec.delta_min is negative: a hair under the resolved
// geometry's support separation, so default generation needs no resampling.
double family_default_delta(const SynthSpec& spec);

// Labeled 2-D sample from the family's density. Deterministic per seed.
// Every cross-cluster pair ends up at distance >= the effective delta_min;
// violating points are resampled, and an InfeasibleError is thrown once the
// rejection budget (100 n attempts) runs out.
PointSet generate(const SynthSpec& spec);

// Realized separation: minimum distance over cross-label point pairs
// (exhaustive scan).
double verify_separation(const PointSet& points);

}  // namespace ann
