#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stardisc/dem.hpp"
#include "stardisc/samplers.hpp"
#include "stardisc/ta.hpp"

using namespace stardisc;

static PointSet cross() { return PointSet(2, {{0.25, 0.75}, {0.75, 0.25}}); }

TEST_CASE("snap_down lowers onto the componentwise maximum") {
    auto p = cross();
    // grid per dim: {0.25, 0.75, 1.0}; index (3,3) -> corner (1,1)
    CHECK(snap_down(p, {3, 3}) == Query{0.75, 0.75});
    CHECK(snap_down(p, {1, 3}) == Query{0.25, 0.75});
    // empty closed box collapses to the origin
    PointSet q(2, {{0.5, 0.5}});
    CHECK(snap_down(q, {1, 1}) == Query{0.5, 0.5});
    PointSet r(2, {{0.5, 0.25}, {0.25, 0.5}});
    CHECK(snap_down(r, {1, 1}) == Query{0.0, 0.0});
}

TEST_CASE("snap_down never decreases bar_delta") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        auto p = generate(static_cast<Sampler>(rng() % 3), 12, 3, 1 + t);
        for (int s = 0; s < 200; ++s) {
            GridIndex g(3);
            for (int j = 0; j < 3; ++j)
                g[j] = 1 + static_cast<int>(rng() % p.grid(j).size());
            auto corner = decode_grid(p, g);
            auto snapped = snap_down(p, g);
            CHECK(bar_delta(p, snapped) >= bar_delta(p, corner) - 1e-15);
            CHECK(count_closed(p, snapped) == count_closed(p, corner));
        }
    }
}

TEST_CASE("snap_up raises without adding open points") {
    PointSet p(2, {{0.5, 0.5}});
    // grid per dim: {0.5, 1.0}; corner (0.5, 0.5) has an empty open box and
    // can only rise in the first dimension before the point falls inside
    auto q = snap_up(p, {1, 1});
    CHECK(q == Query{1.0, 0.5});
    CHECK(local_disc_two_sided(p, q) == 0.5);
    CHECK(snap_up(p, {2, 2}) == Query{1.0, 1.0});
}

TEST_CASE("snap_up never decreases delta") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        auto p = generate(static_cast<Sampler>(rng() % 3), 12, 3, 1 + t);
        for (int s = 0; s < 200; ++s) {
            GridIndex g(3);
            for (int j = 0; j < 3; ++j)
                g[j] = 1 + static_cast<int>(rng() % p.grid(j).size());
            auto corner = decode_grid(p, g);
            auto snapped = snap_up(p, g);
            CHECK(delta(p, snapped) >= delta(p, corner) - 1e-15);
            CHECK(count_open(p, snapped) == count_open(p, corner));
            for (int j = 0; j < 3; ++j) CHECK(snapped[j] >= corner[j]);
        }
    }
}

TEST_CASE("ta result is a sound lower bound") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 12; ++t) {
        const int d = 1 + static_cast<int>(rng() % 4);
        const int n = 5 + static_cast<int>(rng() % 40);
        auto p = generate(static_cast<Sampler>(rng() % 3), n, d, 1 + t);
        auto exact = dem_disc(p);
        auto ta = ta_lower_bound(p, 2000, 7);
        CHECK(ta.value <= exact.value + 1e-12);
        CHECK(ta.value == local_disc_two_sided(p, ta.argmax));
        CHECK(ta.evaluations <= 2000);
    }
}

TEST_CASE("ta is deterministic and seed sensitive") {
    auto p = generate(Sampler::Uniform, 50, 3, 4);
    auto a = ta_lower_bound(p, 3000, 1);
    auto b = ta_lower_bound(p, 3000, 1);
    CHECK(a.value == b.value);
    CHECK(a.argmax == b.argmax);
    CHECK(a.evaluations == b.evaluations);
    auto c = ta_lower_bound(p, 3000, 2);
    CHECK(c.improvements != a.improvements);  // different search path
}

TEST_CASE("improvement log is consistent") {
    auto p = generate(Sampler::Halton, 30, 2, 1);
    auto r = ta_lower_bound(p, 1500, 3);
    REQUIRE(!r.improvements.empty());
    CHECK(r.improvements.back().second == r.value);
    for (size_t k = 1; k < r.improvements.size(); ++k) {
        CHECK(r.improvements[k].first > r.improvements[k - 1].first);
        CHECK(r.improvements[k].second > r.improvements[k - 1].second);
    }
    CHECK(r.improvements.back().first <= r.evaluations);
}

TEST_CASE("budget edge cases") {
    auto p = generate(Sampler::Sobol, 10, 2, 1);
    CHECK_THROWS_AS(ta_lower_bound(p, 0, 1), std::invalid_argument);
    auto r = ta_lower_bound(p, 1, 1);
    CHECK(r.evaluations == 1);
    CHECK(r.value >= 0.0);
}

TEST_CASE("ta finds the optimum of a tiny instance") {
    auto exact = dem_disc(cross());
    auto ta = ta_lower_bound(cross(), 500, 1);
    CHECK(ta.value == doctest::Approx(exact.value).epsilon(1e-15));
    CHECK(ta.value == 0.5625);
}
