#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vcramsey/errors.hpp"
#include "vcramsey/set_system.hpp"

using namespace vcramsey;

namespace {

SetSystem power_set(std::size_t n)
{
    std::vector<IndexSet> members;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        IndexSet s;
        for (std::size_t v = 0; v < n; ++v)
            if (mask >> v & 1) s.push_back(v);
        members.push_back(s);
    }
    return make_set_system(n, members);
}

SetSystem singletons(std::size_t n)
{
    std::vector<IndexSet> members;
    for (std::size_t v = 0; v < n; ++v) members.push_back({v});
    return make_set_system(n, members);
}

}  // namespace

TEST_SUITE("set_system")
{
    TEST_CASE("construction")
    {
        const SetSystem a = make_set_system(2, {{0}, {0, 1}});
        CHECK(a.ground_size() == 2);
        CHECK(a.size() == 2);

        const SetSystem empty = make_set_system(3, {});
        CHECK(empty.ground_size() == 3);
        CHECK(empty.empty());

        const SetSystem degenerate = make_set_system(0, {{}});
        CHECK(degenerate.ground_size() == 0);
        CHECK(degenerate.size() == 1);

        CHECK_THROWS_WITH_AS(make_set_system(2, {{0}, {1, 2}}), doctest::Contains("member 1"), ValidationError);
    }

    TEST_CASE("duplicate members stay distinct")
    {
        const SetSystem s = make_set_system(3, {{0, 1}, {0, 1}, {2}});
        CHECK(s.size() == 3);
        CHECK(deduplicated(s).size() == 2);
    }

    TEST_CASE("trace examples")
    {
        const SetSystem s = make_set_system(2, {{0}, {0, 1}});
        const ShatterWitness w = trace(s, {0, 1});
        CHECK(w.realized_traces == std::vector<IndexSet>{{0}, {0, 1}});

        CHECK(trace(s, {}).realized_traces == std::vector<IndexSet>{{}});
        CHECK(trace(make_set_system(3, {}), {}).realized_traces.empty());
        CHECK_THROWS_AS(trace(s, {2}), ValidationError);
    }

    TEST_CASE("trace matches brute force on a seeded system")
    {
        const SetSystem s = random_set_system(8, 16, 1);
        const auto mtx = oracle::incidence(s);
        const IndexSet subset{1, 4, 6};
        const auto expected = oracle::traces(mtx, subset);
        const ShatterWitness w = trace(s, subset);
        CHECK(std::vector<IndexSet>(expected.begin(), expected.end()) == w.realized_traces);
    }

    TEST_CASE("is_shattered examples")
    {
        CHECK(is_shattered(power_set(2), {0, 1}));
        CHECK_FALSE(is_shattered(singletons(3), {0, 2}));
        CHECK_FALSE(is_shattered(make_set_system(3, {}), {}));
        CHECK(is_shattered(make_set_system(3, {{}}), {}));
    }

    TEST_CASE("vc_dimension examples")
    {
        CHECK(vc_dimension(power_set(3)) == 3);
        CHECK(vc_dimension(singletons(5)) == 1);
        CHECK(vc_dimension(make_set_system(4, {})) == -1);
        CHECK(vc_dimension(make_set_system(4, {{}})) == 0);
        CHECK(vc_dimension(make_set_system(0, {{}})) == 0);
        // half-lines {0..i} shatter single points only
        CHECK(vc_dimension(make_set_system(4, {{}, {0}, {0, 1}, {0, 1, 2}, {0, 1, 2, 3}})) == 1);
    }

    TEST_CASE("vc_dimension matches the exhaustive oracle")
    {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 1 + rng() % 10;
            const std::size_t members = rng() % 33;
            const SetSystem s = random_set_system(n, members, rng());
            CHECK(vc_dimension(s) == oracle::vc_dimension(oracle::incidence(s), n));
        }
    }

    TEST_CASE("frozen VC values for seeded systems")
    {
        // computed once with oracle::vc_dimension
        CHECK(vc_dimension(random_set_system(8, 16, 1)) == 3);
        CHECK(vc_dimension(random_set_system(10, 32, 5)) == 4);
        CHECK(dual_vc_dimension(random_set_system(8, 12, 7)) == 2);
    }

    TEST_CASE("budget exhaustion is reported")
    {
        CHECK_THROWS_AS(vc_dimension(power_set(6), WorkBudget{10}), BudgetExceeded);
        CHECK(vc_dimension(power_set(6), WorkBudget{64}) == 6);
    }

    TEST_CASE("dual examples")
    {
        const SetSystem f = make_set_system(2, {{0}, {1}});
        const SetSystem fd = dual(f);
        CHECK(fd.ground_size() == 2);
        CHECK(fd.size() == 2);
        CHECK(fd.member(0).indices() == IndexSet{0});
        CHECK(fd.member(1).indices() == IndexSet{1});

        const SetSystem e = dual(make_set_system(3, {}));
        CHECK(e.ground_size() == 0);
        CHECK(e.size() == 3);

        const SetSystem r = random_set_system(8, 12, 7);
        CHECK(oracle::incidence(dual(r)) == oracle::transpose(oracle::incidence(r), 8));
        CHECK(oracle::incidence(dual(dual(r))) == oracle::incidence(r));
    }

    TEST_CASE("dual_vc_dimension")
    {
        CHECK(dual_vc_dimension(make_set_system(2, {{0}, {1}})) == 1);
        const SetSystem p3 = power_set(3);
        CHECK(dual_vc_dimension(p3) == oracle::vc_dimension(oracle::transpose(oracle::incidence(p3), 3), 8));
    }

    TEST_CASE("sauer_shelah_bound")
    {
        CHECK(sauer_shelah_bound(5, -1) == 0);
        CHECK(sauer_shelah_bound(5, 0) == 1);
        CHECK(sauer_shelah_bound(5, 2) == 1 + 5 + 10);
        CHECK(sauer_shelah_bound(3, 7) == 8);
        CHECK(sauer_shelah_bound(200, 100) == UINT64_MAX);
    }

    TEST_CASE("properties on random systems")
    {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 2 + rng() % 8;
            const std::size_t members = 1 + rng() % 24;
            const SetSystem s = random_set_system(n, members, rng());
            const int d = vc_dimension(s);

            // Sauer-Shelah on random subsets
            for (int q = 0; q < 10; ++q) {
                IndexSet subset;
                for (std::size_t v = 0; v < n; ++v)
                    if (rng() & 1) subset.push_back(v);
                CHECK(trace(s, subset).realized_traces.size() <= sauer_shelah_bound(subset.size(), d));
            }

            // monotone under removing / adding a member
            std::vector<BitRow> rows = s.members();
            rows.pop_back();
            CHECK(vc_dimension(SetSystem(n, rows)) <= d);
            rows = s.members();
            BitRow extra(n);
            for (std::size_t v = 0; v < n; ++v)
                if (rng() & 1) extra.set(v);
            rows.push_back(extra);
            CHECK(vc_dimension(SetSystem(n, rows)) >= d);

            // dual bound and transpose involution
            CHECK(dual_vc_dimension(s) <= (1 << (d + 1)) - 1);
            CHECK(dual(dual(s)).members() == s.members());
        }
    }

    TEST_CASE("interval systems have dual VC-dimension at most 2")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const SetSystem s = random_interval_system(24, 40, seed);
            CHECK(dual_vc_dimension(s) <= 2);
        }
    }
}
