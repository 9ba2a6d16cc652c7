#include "doctest.h"

#include <cmath>

#include "core/synth.hpp"
#include "support/oracles.hpp"

using ann::PointSet;
using ann::SynthFamily;
using ann::SynthSpec;

namespace {

const SynthFamily kAllFamilies[] = {
    SynthFamily::two_spirals,        SynthFamily::cluster_in_cluster,
    SynthFamily::corners,            SynthFamily::half_kernel,
    SynthFamily::crescent_full_moon, SynthFamily::outlier,
};

}  // namespace

TEST_CASE("family names round-trip") {
    for (SynthFamily f : kAllFamilies)
        CHECK(ann::family_from_name(ann::family_name(f)) == f);
    CHECK_THROWS_AS(ann::family_from_name("mystery_blobs"), ann::ArgumentError);
}

TEST_CASE("every family respects its default separation margin") {
    for (SynthFamily f : kAllFamilies) {
        CAPTURE(ann::family_name(f));
        SynthSpec spec;
        spec.family = f;
        spec.n = 400;
        spec.seed = 17;
        const PointSet data = ann::generate(spec);
        CHECK(data.size() == 400);
        CHECK(data.dim() == 2);
        CHECK(data.num_label_values() == ann::family_cluster_count(f));
        CHECK(ann::verify_separation(data) >= ann::family_default_delta(spec));
    }
}

TEST_CASE("generation is deterministic per seed") {
    for (SynthFamily f : kAllFamilies) {
        SynthSpec spec;
        spec.family = f;
        spec.n = 150;
        spec.seed = 5;
        const PointSet a = ann::generate(spec);
        const PointSet b = ann::generate(spec);
        CHECK(a.coords() == b.coords());
        CHECK(a.labels() == b.labels());
        spec.seed = 6;
        const PointSet c = ann::generate(spec);
        CHECK(a.coords() != c.coords());
    }
}

TEST_CASE("cluster sizes follow the configured fractions exactly") {
    SynthSpec spec;
    spec.family = SynthFamily::outlier;  // fractions 0.35/0.35/0.15/0.15
    spec.n = 2000;
    spec.seed = 1;
    const PointSet data = ann::generate(spec);
    std::vector<std::int64_t> counts(4, 0);
    for (auto l : data.labels()) ++counts[static_cast<std::size_t>(l)];
    CHECK(counts == std::vector<std::int64_t>{700, 700, 300, 300});
}

TEST_CASE("n equal to the cluster count yields one point per cluster") {
    for (SynthFamily f : kAllFamilies) {
        SynthSpec spec;
        spec.family = f;
        spec.n = ann::family_cluster_count(f);
        spec.seed = 9;
        const PointSet data = ann::generate(spec);
        std::vector<int> counts(static_cast<std::size_t>(data.num_label_values()), 0);
        for (auto l : data.labels()) ++counts[static_cast<std::size_t>(l)];
        for (int c : counts) CHECK(c == 1);
        CHECK(ann::verify_separation(data) >= ann::family_default_delta(spec));
    }
    SynthSpec bad;
    bad.family = SynthFamily::corners;
    bad.n = 3;
    CHECK_THROWS_AS(ann::generate(bad), ann::ArgumentError);
}

TEST_CASE("infeasible delta_min is rejected after the budget") {
    SynthSpec spec;
    spec.family = SynthFamily::half_kernel;
    spec.n = 60;
    spec.seed = 2;
    spec.delta_min = 1e6;  // far beyond the support separation
    CHECK_THROWS_AS(ann::generate(spec), ann::InfeasibleError);
}

TEST_CASE("inner cluster-in-cluster points stay inside the truncation radius") {
    SynthSpec spec;
    spec.family = SynthFamily::cluster_in_cluster;
    spec.n = 1000;
    spec.seed = 3;
    const PointSet data = ann::generate(spec);
    for (std::int64_t i = 0; i < data.size(); ++i) {
        const double r = std::hypot(data.row(i)[0], data.row(i)[1]);
        if (data.labels()[static_cast<std::size_t>(i)] == 0) CHECK(r <= 1.0);
        else CHECK(r >= 4.75 - 1e-12);
    }
}

TEST_CASE("verify_separation spot values") {
    SUBCASE("two singletons at distance 5") {
        const PointSet p({0, 0, 3, 4}, 2, 2, {0, 1});
        CHECK(ann::verify_separation(p) == 5.0);
    }
    SUBCASE("duplicate point across labels gives zero") {
        const PointSet p({1, 1, 2, 2, 1, 1}, 3, 2, {0, 0, 1});
        CHECK(ann::verify_separation(p) == 0.0);
    }
    SUBCASE("labels are required") {
        const PointSet p({0, 1}, 2, 1);
        CHECK_THROWS_AS(ann::verify_separation(p), ann::ArgumentError);
    }
    SUBCASE("at least two labels required") {
        const PointSet p({0, 1}, 2, 1, {0, 0});
        CHECK_THROWS_AS(ann::verify_separation(p), ann::ArgumentError);
    }
}

TEST_CASE("raising delta_min within the support separation is honored") {
    SynthSpec spec;
    spec.family = SynthFamily::corners;
    spec.n = 500;
    spec.seed = 12;
    spec.delta_min = 1.99;  // just below the geometric 2.0
    const PointSet data = ann::generate(spec);
    CHECK(ann::verify_separation(data) >= 1.99);
}
