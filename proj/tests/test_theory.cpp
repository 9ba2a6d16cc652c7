#include "doctest.h"

#include <cmath>

#include "core/synth.hpp"
#include "core/theory.hpp"
#include "support/oracles.hpp"

using ann::PointSet;
using ann::ScalingConfig;

TEST_CASE("chernoff rate function") {
    CHECK(ann::chernoff_rate(1.0) == 0.0);
    CHECK(ann::chernoff_rate(0.0) == 1.0);
    CHECK(ann::chernoff_rate(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(ann::chernoff_rate(-0.1), ann::ArgumentError);
    // Continuity at zero along x ln x -> 0.
    const double near0 = ann::chernoff_rate(1e-12);
    CHECK(near0 >= 1.0 - 1e-10);
    CHECK(near0 <= 1.0);
}

TEST_CASE("recommended K") {
    SUBCASE("paper-scale arithmetic") {
        CHECK(ann::recommended_knn(2000) == 16);  // ceil(2 ln 2000)
        CHECK(ann::recommended_knn(200) == 11);   // ceil(2 ln 200)
    }
    SUBCASE("clamps") {
        ScalingConfig tiny;
        tiny.c = 1e-9;
        CHECK(ann::recommended_knn(50, tiny) == 1);
        ScalingConfig huge;
        huge.c = 100.0;
        CHECK(ann::recommended_knn(3, huge) == 2);
    }
    SUBCASE("bounds") {
        CHECK_THROWS_AS(ann::recommended_knn(1), ann::ArgumentError);
    }
}

TEST_CASE("bandwidth relation") {
    SUBCASE("d=2 algebraic cancellation") {
        ScalingConfig cfg;
        cfg.dim = 2;
        cfg.q_min = 1.0 / M_PI;
        const std::int64_t m = 1000;
        CHECK(ann::bandwidth_from_knn(m / 2, m, cfg) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("d=1 substitution") {
        ScalingConfig cfg;
        cfg.dim = 1;
        cfg.q_min = 0.01;
        CHECK(ann::unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-12));
        // K = sample * q_min  ->  r = 2K/(n q_min w_1) ... = 1
        CHECK(ann::bandwidth_from_knn(static_cast<std::int64_t>(1000 * 0.01), 1000, cfg) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("doubling K scales r by 2^(1/d)") {
        ScalingConfig cfg;
        cfg.dim = 3;
        cfg.q_min = 0.7;
        const double r1 = ann::bandwidth_from_knn(10, 5000, cfg);
        const double r2 = ann::bandwidth_from_knn(20, 5000, cfg);
        CHECK(r2 / r1 == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
    }
    SUBCASE("inverts the defining relation") {
        for (std::int32_t dim : {1, 2, 5, 16}) {
            ScalingConfig cfg;
            cfg.dim = dim;
            cfg.q_min = 0.3;
            const std::int64_t k = 12, n = 4000;
            const double r = ann::bandwidth_from_knn(k, n, cfg);
            const double back =
                0.5 * static_cast<double>(n) * cfg.q_min * ann::unit_ball_volume(dim) * std::pow(r, dim);
            CHECK(back == doctest::Approx(static_cast<double>(k)).epsilon(1e-9));
        }
    }
}

TEST_CASE("covering radius") {
    SUBCASE("anchors equal to points cover at radius zero") {
        const PointSet p({0, 1, 2, 3}, 4, 1);
        CHECK(ann::covering_radius(p, p) == 0.0);
    }
    SUBCASE("single anchor") {
        const PointSet anchors({0.0}, 1, 1);
        const PointSet points({0.0, 3.0}, 2, 1);
        CHECK(ann::covering_radius(anchors, points) == 3.0);
    }
    SUBCASE("dimension mismatch") {
        const PointSet anchors({0.0}, 1, 1);
        const PointSet points({0, 0}, 1, 2);
        CHECK_THROWS_AS(ann::covering_radius(anchors, points), ann::ArgumentError);
    }
}

TEST_CASE("per-cluster connectivity") {
    SUBCASE("tight cluster is one component") {
        const PointSet p({0, 0.1, 0.2}, 3, 1, {0, 0, 0});
        CHECK(ann::per_cluster_components(p, 1) == std::vector<std::int64_t>{1});
    }
    SUBCASE("internal gap splits a label at small K") {
        const PointSet p({0, 0.1, 10, 10.1}, 4, 1, {0, 0, 0, 0});
        CHECK(ann::per_cluster_components(p, 1) == std::vector<std::int64_t>{2});
    }
    SUBCASE("K = cluster size - 1 always connects") {
        const PointSet p({0, 0.1, 10, 10.1, 50, 50.2}, 6, 1, {0, 0, 0, 0, 1, 1});
        CHECK(ann::per_cluster_components(p, 3) == std::vector<std::int64_t>{1, 1});
    }
    SUBCASE("K is clamped per cluster, singletons count one") {
        const PointSet p({0, 5, 5.1}, 3, 1, {0, 1, 1});
        CHECK(ann::per_cluster_components(p, 10) == std::vector<std::int64_t>{1, 1});
    }
    SUBCASE("labels required") {
        const PointSet p({0, 1}, 2, 1);
        CHECK_THROWS_AS(ann::per_cluster_components(p, 1), ann::ArgumentError);
    }
}

TEST_CASE("cross-cluster edge count") {
    SUBCASE("far clusters, small K: zero crossings") {
        const PointSet p({0, 0.1, 100, 100.1}, 4, 1, {0, 0, 1, 1});
        CHECK(ann::cross_cluster_edges(p, 1) == 0);
    }
    SUBCASE("single label: vacuously zero") {
        const PointSet p({0, 1, 2}, 3, 1, {0, 0, 0});
        CHECK(ann::cross_cluster_edges(p, 1) == 0);
    }
    SUBCASE("interleaved labels must cross") {
        const PointSet p({0, 1, 2, 3}, 4, 1, {0, 1, 0, 1});
        CHECK(ann::cross_cluster_edges(p, 1) > 0);
    }
}

TEST_CASE("consistency mechanism on a generated dataset") {
    // Covering radius below delta plus intact per-cluster connectivity and no
    // cross edges implies exact recovery; checked end-to-end in the
    // acceptance suite. Here: the diagnostics themselves behave.
    ann::SynthSpec spec;
    spec.family = ann::SynthFamily::outlier;
    spec.n = 500;
    spec.seed = 21;
    const PointSet data = ann::generate(spec);
    const double delta = ann::verify_separation(data);
    CHECK(delta > 0.0);

    const std::int64_t k = ann::recommended_knn(data.size());
    const auto components = ann::per_cluster_components(data, k);
    for (auto c : components) CHECK(c == 1);
    CHECK(ann::cross_cluster_edges(data, k) == 0);
    CHECK(ann::covering_radius(data, data) < delta);
}

TEST_CASE("bounding box density") {
    const PointSet p({0, 0, 2, 5}, 2, 2);  // box 2 x 5
    CHECK(ann::bounding_box_density(p) == doctest::Approx(0.1).epsilon(1e-12));
}
