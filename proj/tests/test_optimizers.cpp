#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "stardisc/optimizers.hpp"

using namespace stardisc;

static double sphere_peak(const std::vector<double>& x) {
    double s = 0.0;
    for (double c : x) s += (c - 0.5) * (c - 0.5);
    return 1.0 - s;
}

TEST_CASE("known ids") {
    auto ids = optimizer_ids();
    REQUIRE(ids.size() == 4);
    CHECK(ids[0] == "random-search");
    CHECK(ids[1] == "de");
    CHECK(ids[2] == "pso");
    CHECK(ids[3] == "spsa");
    CHECK_THROWS_WITH_AS(optimize("cmaes", sphere_peak, 2, 10, 1),
                         doctest::Contains("random-search"), std::invalid_argument);
}

TEST_CASE("budget is spent exactly and trajectories are monotone") {
    for (const auto& id : optimizer_ids()) {
        std::uint64_t calls = 0;
        Objective counted = [&](const std::vector<double>& x) {
            ++calls;
            return sphere_peak(x);
        };
        auto r = optimize(id, counted, 3, 200, 42);
        CHECK(r.evaluations == 200);
        CHECK(calls == 200);
        REQUIRE(!r.trajectory.records.empty());
        CHECK(r.trajectory.records.back().first == 200);
        CHECK(r.trajectory.records.back().second == r.best);
        for (size_t k = 1; k < r.trajectory.records.size(); ++k) {
            CHECK(r.trajectory.records[k].first >= r.trajectory.records[k - 1].first);
            CHECK(r.trajectory.records[k].second >= r.trajectory.records[k - 1].second);
        }
        CHECK(r.best == sphere_peak(r.best_x));
        for (double c : r.best_x) {
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
    }
}

TEST_CASE("determinism in seed") {
    for (const auto& id : optimizer_ids()) {
        auto a = optimize(id, sphere_peak, 4, 300, 9);
        auto b = optimize(id, sphere_peak, 4, 300, 9);
        CHECK(a.best == b.best);
        CHECK(a.best_x == b.best_x);
        CHECK(a.trajectory.records == b.trajectory.records);
    }
}

TEST_CASE("budget of one") {
    for (const auto& id : optimizer_ids()) {
        auto r = optimize(id, sphere_peak, 2, 1, 5);
        CHECK(r.evaluations == 1);
        REQUIRE(r.trajectory.records.size() >= 1);
        CHECK(r.trajectory.records.back().first == 1);
    }
}

TEST_CASE("optimizers make progress on the sphere") {
    for (const auto& id : optimizer_ids()) {
        auto r = optimize(id, sphere_peak, 2, 2000, 3);
        CHECK(r.best > 0.95);
    }
}

TEST_CASE("subprocess solver round trip") {
    const char* script =
        "python3 -c \""
        "import sys\n"
        "for i in range(50):\n"
        "    x = 0.01 * i\n"
        "    print(f'{x:.17g} {1 - x:.17g}', flush=True)\n"
        "    sys.stdin.readline()\n"
        "\"";
    std::uint64_t calls = 0;
    Objective counted = [&](const std::vector<double>& x) {
        ++calls;
        return x[0];  // best query is the last one, x0 = 0.29
    };
    auto r = optimize_subprocess(script, counted, 2, 30);
    CHECK(r.evaluations == 30);
    CHECK(calls == 30);
    CHECK(r.best == doctest::Approx(0.29).epsilon(1e-12));
    CHECK(r.best_x[0] == doctest::Approx(0.29).epsilon(1e-12));
    CHECK(r.best_x[1] == doctest::Approx(0.71).epsilon(1e-12));
    CHECK(r.trajectory.records.back().first == 30);
}

TEST_CASE("subprocess solver may stop early") {
    const char* script =
        "python3 -c \"print('0.5 0.5', flush=True); input()\"";
    auto r = optimize_subprocess(script, sphere_peak, 2, 100);
    CHECK(r.evaluations == 1);
    CHECK(r.best == 1.0);
}

TEST_CASE("subprocess replies round-trip full precision") {
    const double value = 0.12345678901234567;
    // solver echoes the harness reply back through its second query
    const char* script =
        "python3 -c \""
        "import sys\n"
        "print('0.5', flush=True)\n"
        "v = sys.stdin.readline().strip()\n"
        "print(v, flush=True)\n"
        "sys.stdin.readline()\n"
        "\"";
    std::vector<double> seen;
    Objective probe = [&](const std::vector<double>& x) {
        seen.push_back(x[0]);
        return value;
    };
    auto r = optimize_subprocess(script, probe, 1, 10);
    REQUIRE(seen.size() == 2);
    CHECK(seen[1] == value);
    CHECK(r.evaluations == 2);
}
