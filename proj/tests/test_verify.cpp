#include "hrs/harness.hpp"
#include "hrs/verify.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace hrs;

namespace {

bool has_pair(const Instance& inst, const std::vector<BlockingWitness>& ws, const char* a, const char* h) {
    return std::any_of(ws.begin(), ws.end(), [&](const BlockingWitness& w) {
        return w.agent == inst.agent(a) && w.hospital == inst.hospital(h);
    });
}

const BlockingWitness& witness_for(const Instance& inst, const std::vector<BlockingWitness>& ws, const char* a,
                                   const char* h) {
    for (const auto& w : ws)
        if (w.agent == inst.agent(a) && w.hospital == inst.hospital(h)) return w;
    throw std::runtime_error("no witness");
}

}  // namespace

TEST(Verify, EachCandidateOfTheNoStableInstanceIsBlocked) {
    const auto inst = fixtures::no_stable();
    const auto m1 = make_matching(inst, {{"a1", "h2"}, {"a2", "h2"}});
    const auto m2 = make_matching(inst, {{"a1", "h2"}, {"a2", "h1"}});
    const auto m3 = make_matching(inst, {{"a1", "h1"}, {"a2", "h2"}});
    EXPECT_TRUE(has_pair(inst, find_blocking_pairs(inst, m1), "a2", "h1"));
    EXPECT_TRUE(has_pair(inst, find_blocking_pairs(inst, m2), "a3", "h2"));
    EXPECT_TRUE(has_pair(inst, find_blocking_pairs(inst, m3), "a1", "h2"));
    for (const auto* m : {&m1, &m2, &m3}) EXPECT_FALSE(is_stable(inst, *m));

    const auto w = witness_for(inst, find_blocking_pairs(inst, m2), "a3", "h2");
    EXPECT_EQ(w.displaced, std::vector<AgentIndex>{inst.agent("a1")});
    EXPECT_EQ(w.kind, BlockKind::classic);
}

TEST(Verify, OccupancyNotionIsWeaker) {
    const auto inst = fixtures::no_stable();
    const auto n = make_matching(inst, {{"a1", "h1"}, {"a3", "h2"}});
    EXPECT_TRUE(is_occupancy_stable(inst, n));
    EXPECT_TRUE(find_occupancy_blocking_pairs(inst, n).empty());
    // (a2, h2) needs a3 (size 2) to leave for a size-1 agent.
    const auto classic = find_blocking_pairs(inst, n);
    ASSERT_EQ(classic.size(), 1u);
    EXPECT_EQ(classic[0].agent, inst.agent("a2"));
    EXPECT_EQ(classic[0].displaced, std::vector<AgentIndex>{inst.agent("a3")});
}

TEST(Verify, EmptyEvictionWhenThereIsRoom) {
    const auto inst = fixtures::ratio_gap();
    const Matching empty(inst.agent_count());
    const auto ws = find_blocking_pairs(inst, empty);
    EXPECT_EQ(ws.size(), 4u);
    for (const auto& w : ws) EXPECT_TRUE(w.displaced.empty());
}

TEST(Verify, WitnessHasMinimumTotalThenSmallestIndices) {
    const auto inst = parse_instance(R"(hrs v1
agents:
a b1 2 : h
a b2 1 : h
a b3 1 : h
a x 2 : h
hospitals:
h h 4 : x b1 b2 b3
)");
    const auto m = make_matching(inst, {{"b1", "h"}, {"b2", "h"}, {"b3", "h"}});
    for (auto kind : {BlockKind::classic, BlockKind::occupancy}) {
        const auto ws = kind == BlockKind::classic ? find_blocking_pairs(inst, m) : find_occupancy_blocking_pairs(inst, m);
        ASSERT_EQ(ws.size(), 1u);
        EXPECT_EQ(ws[0].displaced, std::vector<AgentIndex>{inst.agent("b1")});
    }
}

TEST(Verify, OccupancyRejectsLargerEviction) {
    const auto inst = parse_instance("hrs v1\nagents:\na x 1 : h\na big 2 : h\nhospitals:\nh h 2 : x big\n");
    const auto m = make_matching(inst, {{"big", "h"}});
    EXPECT_FALSE(is_stable(inst, m));
    EXPECT_TRUE(is_occupancy_stable(inst, m));
}

TEST(Verify, InfeasibleMatchingThrows) {
    const auto inst = fixtures::no_stable();
    const auto over = make_matching(inst, {{"a1", "h2"}, {"a3", "h2"}});
    EXPECT_THROW(find_blocking_pairs(inst, over), Error);
    EXPECT_THROW(is_stable(inst, over), Error);
    EXPECT_THROW(is_occupancy_stable(inst, over), Error);
    EXPECT_THROW(is_a_perfect(inst, over), Error);
}

TEST(Verify, APerfect) {
    const auto inst = fixtures::ratio_gap();
    EXPECT_TRUE(is_a_perfect(inst, make_matching(inst, {{"a1", "h2"}, {"a2", "h1"}, {"a3", "h1"}})));
    EXPECT_FALSE(is_a_perfect(inst, make_matching(inst, {{"a1", "h1"}})));
}

TEST(Verify, ResidualMatchesFullWhenNothingIsRestricted) {
    const auto inst = fixtures::master_list();
    std::vector<Edge> all;
    for (AgentIndex a = 0; a < inst.agent_count(); ++a)
        for (auto h : inst.agent_prefs(a)) all.push_back({a, h});
    std::vector<long long> caps(inst.hospital_count());
    for (HospitalIndex h = 0; h < caps.size(); ++h) caps[h] = inst.capacity(h);
    for (const auto& m : brute::feasible_matchings(inst)) {
        EXPECT_EQ(find_blocking_pairs_residual(inst, m, caps, all), find_blocking_pairs(inst, m));
        EXPECT_EQ(find_blocking_pairs_residual(inst, m, caps, all, BlockKind::occupancy),
                  find_occupancy_blocking_pairs(inst, m));
    }
}

TEST(Verify, ResidualRestrictsEdgesAndCapacities) {
    const auto inst = fixtures::no_stable();
    const Matching empty(inst.agent_count());
    std::vector<long long> caps{1, 1};
    const std::vector<Edge> sub{{inst.agent("a1"), inst.hospital("h2")}, {inst.agent("a3"), inst.hospital("h2")}};
    const auto ws = find_blocking_pairs_residual(inst, empty, caps, sub);
    // a3 no longer fits in one residual seat; a1 does.
    ASSERT_EQ(ws.size(), 1u);
    EXPECT_EQ(ws[0].agent, inst.agent("a1"));

    std::vector<long long> negative{-1, 1};
    EXPECT_THROW(find_blocking_pairs_residual(inst, empty, negative, sub), Error);
    const std::vector<Edge> bogus{{inst.agent("a3"), inst.hospital("h1")}};
    EXPECT_THROW(find_blocking_pairs_residual(inst, empty, caps, bogus), Error);
    std::vector<long long> short_caps{1};
    EXPECT_THROW(find_blocking_pairs_residual(inst, empty, short_caps, sub), Error);
}

// Compare every blocking pair against the all-subsets definition over every
// feasible matching of many random instances.
TEST(Verify, AgreesWithBruteForceOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        GenParams p;
        p.agents_max = 5;
        p.hospitals_max = 3;
        p.size_max = 4;
        p.cap_max = 6;
        p.seed = seed;
        const auto inst = gen_random(p);
        for (const auto& m : brute::feasible_matchings(inst)) {
            for (bool occ : {false, true}) {
                const auto ws = occ ? find_occupancy_blocking_pairs(inst, m) : find_blocking_pairs(inst, m);
                std::vector<std::pair<AgentIndex, HospitalIndex>> got;
                for (const auto& w : ws) {
                    got.emplace_back(w.agent, w.hospital);
                    // The witness itself must be a valid eviction set.
                    long long x = 0;
                    for (auto b : w.displaced) {
                        ASSERT_EQ(m[b], w.hospital);
                        ASSERT_GT(*inst.hospital_rank(w.hospital, b), *inst.hospital_rank(w.hospital, w.agent));
                        x += inst.size(b);
                    }
                    ASSERT_LE(brute::occ_at(inst, m, w.hospital) - x + inst.size(w.agent), inst.capacity(w.hospital));
                    if (occ) {
                        ASSERT_LE(x, inst.size(w.agent));
                    }
                }
                ASSERT_EQ(got, brute::blocking_pairs(inst, m, occ)) << "seed " << seed;
                ASSERT_EQ(occ ? is_occupancy_stable(inst, m) : is_stable(inst, m), brute::stable(inst, m, occ));
            }
        }
    }
}
