#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "stardisc/point_set.hpp"
#include "stardisc/samplers.hpp"

using namespace stardisc;

static PointSet single_mid() { return PointSet(2, {{0.5, 0.5}}); }
static PointSet cross() { return PointSet(2, {{0.25, 0.75}, {0.75, 0.25}}); }

TEST_CASE("volume") {
    CHECK(volume({1, 1}) == 1.0);
    CHECK(volume({0.5, 0.5}) == 0.25);
    CHECK(volume({0, 0.7}) == 0.0);
}

TEST_CASE("count_open") {
    auto p = single_mid();
    CHECK(count_open(p, {1, 1}) == 1);
    CHECK(count_open(p, {0.5, 0.9}) == 0);
    CHECK(count_open(cross(), {0.75, 0.75}) == 0);
    CHECK_THROWS_AS(count_open(p, {0.5}), std::invalid_argument);
}

TEST_CASE("count_closed") {
    auto p = single_mid();
    CHECK(count_closed(p, {0.5, 0.5}) == 1);
    CHECK(count_closed(p, {0.4, 0.9}) == 0);
    CHECK(count_closed(cross(), {0.75, 0.75}) == 2);
}

TEST_CASE("delta and bar_delta") {
    auto p = single_mid();
    CHECK(delta(p, {0.5, 0.5}) == 0.25);
    CHECK(bar_delta(p, {0.5, 0.5}) == 0.75);
    CHECK(delta(p, {1, 1}) == 0.0);
    CHECK(delta(cross(), {0.75, 0.75}) == 0.5625);
}

TEST_CASE("local discrepancies") {
    auto p = single_mid();
    CHECK(local_disc_abs(p, {0.5, 0.5}) == 0.25);
    CHECK(local_disc_abs(p, {1, 1}) == 0.0);
    CHECK(local_disc_abs(cross(), {1, 0.75}) == 0.25);
    CHECK(local_disc_two_sided(p, {0.5, 0.5}) == 0.75);
    CHECK(local_disc_two_sided(p, {1, 1}) == 0.0);
    CHECK(local_disc_two_sided(cross(), {0.75, 0.75}) == 0.5625);
}

TEST_CASE("decode_grid") {
    CHECK(decode_grid(single_mid(), {2, 2}) == Query{1, 1});
    CHECK(decode_grid(cross(), {1, 1}) == Query{0.25, 0.25});
    CHECK_THROWS_AS(decode_grid(cross(), {4, 1}), std::out_of_range);
    CHECK_THROWS_AS(decode_grid(cross(), {0, 1}), std::out_of_range);
}

TEST_CASE("encode_grid inverts decode_grid") {
    auto p = cross();
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            GridIndex g{a, b};
            CHECK(encode_grid(p, decode_grid(p, g)) == g);
        }
}

TEST_CASE("grids are sorted unique ending at 1") {
    auto p = PointSet(2, {{0.5, 0.25}, {0.5, 0.75}, {0.25, 0.25}});
    CHECK(p.grid(0) == std::vector<double>{0.25, 0.5, 1.0});
    CHECK(p.grid(1) == std::vector<double>{0.25, 0.75, 1.0});
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(PointSet(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(PointSet(2, {{0.5, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PointSet(2, {{-0.1, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(PointSet(2, {{0.5}}), std::invalid_argument);
    CHECK_NOTHROW(PointSet(2, {{0.5, 0.5}, {0.5, 0.5}}));  // duplicates allowed
}

TEST_CASE("duplicate points count with multiplicity") {
    PointSet p(1, {{0.5}, {0.5}});
    CHECK(count_closed(p, {0.5}) == 2);
}

TEST_CASE("text format round trip and validation") {
    auto p = generate(Sampler::Halton, 7, 3, 1);
    std::stringstream ss;
    ss << "# comment line\n";
    p.write(ss);
    auto q = PointSet::parse(ss);
    REQUIRE(q.size() == p.size());
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.dim(); ++j) CHECK(q.coord(i, j) == p.coord(i, j));

    std::stringstream bad("0.5 1.0\n");
    CHECK_THROWS_WITH_AS(PointSet::parse(bad), doctest::Contains("1.0"), std::invalid_argument);
}

TEST_CASE("algebraic identity delta + count/n == volume") {
    std::mt19937_64 rng(7);
    auto p = generate(Sampler::Uniform, 20, 3, 3);
    for (int t = 0; t < 200; ++t) {
        Query q(3);
        for (auto& c : q) c = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double lhs = delta(p, q) + static_cast<double>(count_open(p, q)) / p.size();
        CHECK(lhs == doctest::Approx(volume(q)).epsilon(1e-12));
        CHECK(local_disc_abs(p, q) <= local_disc_two_sided(p, q) + 1e-15);
        CHECK(count_open(p, q) <= count_closed(p, q));
    }
}

TEST_CASE("crossing a coordinate moves the count by 1/n") {
    // one point strictly dominated in the other coordinate
    PointSet p(2, {{0.5, 0.25}});
    const double before = static_cast<double>(count_open(p, {0.5, 1.0}));
    const double after = static_cast<double>(count_open(p, {0.5000000001, 1.0}));
    CHECK(after - before == 1.0);
}
