#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vcramsey/errors.hpp"
#include "vcramsey/packing.hpp"

using namespace vcramsey;

namespace {

SetSystem singletons(std::size_t n)
{
    std::vector<IndexSet> members;
    for (std::size_t v = 0; v < n; ++v) members.push_back({v});
    return make_set_system(n, members);
}

// Independent restatement of every partition invariant.
bool partition_ok(const Partition& p, const SetSystem& s)
{
    const auto mtx = oracle::incidence(s);
    std::vector<int> seen(s.ground_size(), 0);
    for (const auto& part : p.parts) {
        if (p.size_cap >= 1 && part.size() > p.size_cap) return false;
        for (std::size_t a = 0; a < part.size(); ++a) {
            ++seen[part[a]];
            for (std::size_t b = a + 1; b < part.size(); ++b)
                if (oracle::crossing(mtx, part[a], part[b]) > 2 * p.delta) return false;
        }
    }
    for (int c : seen)
        if (c != 1) return false;
    const double bound = 2 * std::numbers::e * (p.d + 1) * std::pow(2 * std::numbers::e, p.d) *
                         std::pow(static_cast<double>(s.size()) / static_cast<double>(p.delta), p.d);
    return static_cast<double>(p.parts.size()) <= bound;
}

}  // namespace

TEST_SUITE("packing_partition")
{
    TEST_CASE("crossing_count examples")
    {
        CHECK(crossing_count(make_set_system(2, {{0}, {0, 1}}), 0, 1) == 1);
        const SetSystem s = singletons(4);
        for (std::size_t u = 0; u < 4; ++u)
            for (std::size_t v = 0; v < 4; ++v)
                if (u != v) CHECK(crossing_count(s, u, v) == 2);
        CHECK_THROWS_AS(crossing_count(s, 1, 1), ValidationError);
        CHECK_THROWS_AS(crossing_count(s, 1, 4), ValidationError);
    }

    TEST_CASE("crossing_count matches per-member membership tests")
    {
        const SetSystem s = random_set_system(10, 40, 3);
        const auto mtx = oracle::incidence(s);
        const CrossingMetric metric(s);
        for (std::size_t u = 0; u < 10; ++u)
            for (std::size_t v = u + 1; v < 10; ++v) {
                CHECK(crossing_count(s, u, v) == oracle::crossing(mtx, u, v));
                CHECK(metric.distance(u, v) == oracle::crossing(mtx, u, v));
            }
    }

    TEST_CASE("crossing is a pseudometric")
    {
        std::mt19937_64 rng(11);
        const SetSystem s = random_set_system(30, 50, 4);
        const CrossingMetric metric(s);
        for (int i = 0; i < 500; ++i) {
            const std::size_t a = rng() % 30, b = rng() % 30, c = rng() % 30;
            CHECK(metric.distance(a, b) == metric.distance(b, a));
            CHECK(metric.distance(a, c) <= metric.distance(a, b) + metric.distance(b, c));
        }
    }

    TEST_CASE("greedy packing examples")
    {
        const SetSystem s = singletons(4);
        CHECK(greedy_delta_packing(s, 2).points == IndexSet{0, 1, 2, 3});
        CHECK(greedy_delta_packing(s, 3).points == IndexSet{0});
        CHECK(greedy_delta_packing(s, 3).maximal);
        CHECK_THROWS_AS(greedy_delta_packing(s, 0), ValidationError);
    }

    TEST_CASE("greedy packing is separated and maximal")
    {
        const SetSystem s = random_interval_system(64, 128, 9);
        const auto mtx = oracle::incidence(s);
        const Packing p = greedy_delta_packing(s, 16);
        for (std::size_t a = 0; a < p.points.size(); ++a)
            for (std::size_t b = a + 1; b < p.points.size(); ++b)
                CHECK(oracle::crossing(mtx, p.points[a], p.points[b]) >= 16);
        for (std::size_t v = 0; v < 64; ++v) {
            if (std::find(p.points.begin(), p.points.end(), v) != p.points.end()) continue;
            const bool blocked = std::any_of(p.points.begin(), p.points.end(),
                                             [&](std::size_t x) { return oracle::crossing(mtx, v, x) < 16; });
            CHECK(blocked);
        }
        CHECK(static_cast<double>(p.points.size()) <= haussler_bound(2, 128, 16));
        CHECK(greedy_delta_packing(s, 16).points == p.points);
    }

    TEST_CASE("haussler_bound")
    {
        const double e = std::numbers::e;
        CHECK(packing_constant(1) == doctest::Approx(4 * e * e));
        CHECK(haussler_bound(1, 10, 10) == doctest::Approx(29.556224395722598));
        CHECK(haussler_bound(3, 77, 77) == doctest::Approx(packing_constant(3)));
        CHECK(haussler_bound(2, 100, 10) / haussler_bound(2, 100, 20) == doctest::Approx(4.0));
        CHECK(haussler_bound(3, 100, 10) / haussler_bound(3, 100, 20) == doctest::Approx(8.0));
        CHECK(part_count_constant(2) == doctest::Approx(2 * packing_constant(2)));
        CHECK_THROWS_AS(haussler_bound(0, 10, 1), ValidationError);
        CHECK_THROWS_AS(haussler_bound(1, 10, 0), ValidationError);
    }

    TEST_CASE("packing never exceeds the Haussler bound at the certified dual VC-dimension")
    {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 30; ++trial) {
            const SetSystem s = random_set_system(4 + rng() % 20, 4 + rng() % 28, rng());
            const int d = dual_vc_dimension(s);
            if (d < 1) continue;
            for (std::size_t delta = 1; delta <= s.size(); delta *= 2)
                CHECK(static_cast<double>(greedy_delta_packing(s, delta).points.size()) <=
                      haussler_bound(d, s.size(), delta));
        }
    }

    TEST_CASE("partition at delta = |F| keeps ground order in cap-sized chunks")
    {
        const SetSystem s = random_interval_system(100, 20, 1);
        const Partition p = partition(s, 20, 1);
        CHECK(p.size_cap == 6);
        std::size_t next = 0;
        for (const auto& part : p.parts) {
            CHECK(part.size() <= 6);
            for (std::size_t v : part) CHECK(v == next++);
        }
        CHECK(next == 100);
        CHECK(verify_partition(p, s).all_passed());
    }

    TEST_CASE("partition of singletons at delta 1")
    {
        const Partition p = partition(singletons(4), 1, 1);
        CHECK(p.parts == std::vector<IndexSet>{{0}, {1}, {2}, {3}});
        CHECK(p.size_cap == 0);
        CHECK(verify_partition(p, singletons(4)).all_passed());
    }

    TEST_CASE("partition argument validation")
    {
        const SetSystem s = singletons(4);
        CHECK_THROWS_AS(partition(s, 0, 1), ValidationError);
        CHECK_THROWS_AS(partition(s, 5, 1), ValidationError);
        CHECK_THROWS_AS(partition(s, 2, 0), ValidationError);
    }

    TEST_CASE("partition invariants hold across a delta sweep")
    {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 12; ++trial) {
            const std::size_t n = 8 + rng() % 120;
            const std::size_t f = 2 + rng() % 200;
            const SetSystem s = random_interval_system(n, f, rng());
            for (std::size_t delta = 1; delta <= f; delta *= 2) {
                const Partition p = partition(s, delta, 2);
                const PartitionReport r = verify_partition(p, s);
                CHECK(r.all_passed());
                CHECK(partition_ok(p, s));
                CHECK(r.max_same_part_crossing <= 2 * delta);
            }
        }
    }

    TEST_CASE("partition is deterministic")
    {
        const SetSystem s = random_set_system(40, 60, 12);
        const Partition a = partition(s, 8, 3);
        const Partition b = partition(s, 8, 3);
        CHECK(a.parts == b.parts);
        CHECK(greedy_delta_packing(s, 8).points == greedy_delta_packing(s, 8).points);
    }

    TEST_CASE("verify_partition reports planted violations")
    {
        // five copies of {0} separate points 0 and 1 by 5 crossings
        const SetSystem s = make_set_system(3, {{0}, {0}, {0}, {0}, {0}, {2}});
        Partition p = partition(s, 1, 1);
        REQUIRE(verify_partition(p, s).all_passed());

        Partition merged = p;
        merged.parts = {{0, 1}, {2}};
        const PartitionReport bad = verify_partition(merged, s);
        CHECK_FALSE(bad.check("crossing").passed);
        REQUIRE(bad.check("crossing").witness.has_value());
        CHECK(*bad.check("crossing").witness == std::make_pair<Index, Index>(0, 1));
        CHECK(bad.check("coverage").passed);

        Partition missing = p;
        missing.parts = {{0}, {1}};
        CHECK_FALSE(verify_partition(missing, s).check("coverage").passed);

        Partition twice = p;
        twice.parts = {{0}, {1}, {2}, {2}};
        CHECK_FALSE(verify_partition(twice, s).check("disjointness").passed);

        Partition wrong = p;
        wrong.ground_size = 4;
        CHECK_THROWS_AS(verify_partition(wrong, s), ValidationError);
    }

    TEST_CASE("merging parts can break the 2-delta guarantee")
    {
        const SetSystem s = make_set_system(4, {{0}, {0}, {0}, {0, 1}, {2}, {2}, {2}, {2, 3}});
        const Partition p = partition(s, 1, 1);
        REQUIRE(verify_partition(p, s).all_passed());
        REQUIRE(p.parts.size() >= 2);
        bool some_merge_fails = false;
        for (std::size_t a = 0; a < p.parts.size(); ++a)
            for (std::size_t b = a + 1; b < p.parts.size(); ++b) {
                Partition merged = p;
                merged.parts[a].insert(merged.parts[a].end(), p.parts[b].begin(), p.parts[b].end());
                merged.parts.erase(merged.parts.begin() + static_cast<std::ptrdiff_t>(b));
                some_merge_fails |= !verify_partition(merged, s).check("crossing").passed;
            }
        CHECK(some_merge_fails);
    }
}
