#include "hrs/harness.hpp"
#include "hrs/oracle.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace hrs;

namespace {

using Assignment = std::vector<HospitalIndex>;

Assignment assignment(const Matching& m) {
    Assignment out(m.agent_count());
    for (AgentIndex a = 0; a < m.agent_count(); ++a) out[a] = m[a];
    return out;
}

std::set<Assignment> as_set(const std::vector<Matching>& ms) {
    std::set<Assignment> out;
    for (const auto& m : ms) out.insert(assignment(m));
    return out;
}

GenParams small(std::uint64_t seed, std::size_t agents) {
    GenParams p;
    p.agents_max = agents;
    p.hospitals_max = 4;
    p.size_max = 3;
    p.cap_max = 5;
    p.seed = seed;
    return p;
}

}  // namespace

TEST(Oracle, EnumeratesEveryFeasibleMatching) {
    const auto inst = fixtures::no_stable();
    std::set<Assignment> seen;
    std::size_t visits = 0;
    const auto out = enumerate_feasible(inst, {}, [&](const Matching& m) {
        ++visits;
        seen.insert(assignment(m));
    });
    EXPECT_EQ(out.verdict, Verdict::complete);
    EXPECT_EQ(visits, 11u);
    EXPECT_EQ(seen, as_set(brute::feasible_matchings(inst)));

    const auto one = parse_instance("hrs v1\nagents:\na x 1 : h g\nhospitals:\nh h 1 : x\nh g 1 : x\n");
    visits = 0;
    enumerate_feasible(one, {}, [&](const Matching&) { ++visits; });
    EXPECT_EQ(visits, 3u);

    visits = 0;
    enumerate_feasible(parse_instance("hrs v1\nagents:\nhospitals:\n"), {}, [&](const Matching&) { ++visits; });
    EXPECT_EQ(visits, 1u);
}

TEST(Oracle, VisitorCanStopEarly) {
    std::size_t visits = 0;
    const auto out = enumerate_feasible(fixtures::no_stable(), {}, [&](const Matching&) { return ++visits < 4; });
    EXPECT_EQ(visits, 4u);
    EXPECT_EQ(out.verdict, Verdict::complete);
}

TEST(Oracle, NoStableInstance) {
    const auto inst = fixtures::no_stable();
    const auto st = stable_matchings(inst);
    EXPECT_TRUE(st.complete());
    EXPECT_EQ(st.count(), 0u);

    const auto occ = occupancy_stable_matchings(inst);
    ASSERT_EQ(occ.count(), 1u);
    EXPECT_EQ(occ.matchings[0], make_matching(inst, {{"a1", "h1"}, {"a3", "h2"}}));

    const auto best = max_occupancy_stable(inst);
    EXPECT_EQ(best.best_value, 3);
    EXPECT_FALSE(exists_a_perfect_occupancy_stable(inst).count());
}

TEST(Oracle, RatioGapOptimum) {
    const auto inst = fixtures::ratio_gap();
    const auto best = max_occupancy_stable(inst);
    ASSERT_TRUE(best.complete());
    EXPECT_EQ(best.best_value, 7);
    ASSERT_EQ(best.count(), 1u);
    EXPECT_TRUE(brute::stable(inst, best.matchings[0], true));
    EXPECT_EQ(brute::size_of(inst, best.matchings[0]), 7);
    EXPECT_EQ(exists_a_perfect_occupancy_stable(inst).count(), 1u);
}

TEST(Oracle, BudgetExhaustion) {
    const auto inst = fixtures::ratio_gap();
    SearchBudget tiny;
    tiny.max_nodes = 3;
    const auto r = stable_matchings(inst, tiny);
    EXPECT_EQ(r.verdict, Verdict::budget_exhausted);
    EXPECT_LE(r.nodes, 3u);

    SearchBudget one;
    one.max_solutions = 1;
    const auto occ = occupancy_stable_matchings(inst, one);
    EXPECT_EQ(occ.count(), 1u);
    EXPECT_EQ(occ.verdict, Verdict::budget_exhausted);

    SearchBudget late;
    late.deadline = std::chrono::milliseconds(0);
    GenParams p = small(3, 14);
    p.agents_min = 14;
    p.density = 1.0;
    EXPECT_EQ(stable_matchings(gen_random(p), late).verdict, Verdict::budget_exhausted);
}

TEST(Oracle, EmptyAndTrivialInstances) {
    const auto empty = parse_instance("hrs v1\nagents:\nhospitals:\n");
    EXPECT_EQ(stable_matchings(empty).count(), 1u);
    EXPECT_EQ(max_occupancy_stable(empty).best_value, 0);
    EXPECT_EQ(exists_a_perfect_occupancy_stable(empty).count(), 1u);

    // The only agent is too large for its only hospital.
    const auto big = parse_instance("hrs v1\nagents:\na x 3 : h\nhospitals:\nh h 2 : x\n");
    EXPECT_EQ(stable_matchings(big).count(), 1u);
    EXPECT_EQ(exists_a_perfect_occupancy_stable(big).count(), 0u);
}

TEST(Oracle, AgreesWithBruteForce) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = gen_random(small(seed, 6));
        const auto st = brute::stable_matchings(inst, false);
        const auto occ = brute::stable_matchings(inst, true);
        ASSERT_EQ(as_set(stable_matchings(inst).matchings), as_set(st));
        ASSERT_EQ(as_set(occupancy_stable_matchings(inst).matchings), as_set(occ));

        long long best = -1;
        bool perfect = false;
        for (const auto& m : occ) {
            best = std::max(best, brute::size_of(inst, m));
            perfect |= m.matched_count() == inst.agent_count();
        }
        const auto mx = max_occupancy_stable(inst);
        ASSERT_EQ(mx.best_value, best);
        ASSERT_EQ(brute::size_of(inst, mx.matchings.at(0)), best);
        const auto ap = exists_a_perfect_occupancy_stable(inst);
        ASSERT_EQ(ap.count() == 1, perfect);
        if (perfect) {
            ASSERT_EQ(ap.matchings[0].matched_count(), inst.agent_count());
        }

        OracleOptions only;
        only.perfect_only = true;
        std::set<Assignment> perfect_set;
        for (const auto& m : occ)
            if (m.matched_count() == inst.agent_count()) perfect_set.insert(assignment(m));
        ASSERT_EQ(as_set(occupancy_stable_matchings(inst, {}, only).matchings), perfect_set);
    }
}

TEST(Oracle, DecompositionMatchesPlainSearch) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto inst = gen_random(small(seed, 7));
        OracleOptions dec;
        dec.strategy = Strategy::decompose;
        for (HospitalIndex h = 0; h < inst.hospital_count(); ++h)
            if ((seed >> h) & 1) dec.interface.push_back(h);
        if (dec.interface.empty() && seed % 3 == 0) dec.interface = choose_interface(inst, 2);

        ASSERT_EQ(as_set(stable_matchings(inst, {}, dec).matchings), as_set(stable_matchings(inst).matchings))
            << serialize_instance(inst);
        ASSERT_EQ(as_set(occupancy_stable_matchings(inst, {}, dec).matchings),
                  as_set(occupancy_stable_matchings(inst).matchings));
        const auto mx = max_occupancy_stable(inst, {}, dec);
        ASSERT_EQ(mx.best_value, max_occupancy_stable(inst).best_value);
        ASSERT_TRUE(brute::stable(inst, mx.matchings.at(0), true));
        const auto ap = exists_a_perfect_occupancy_stable(inst, {}, dec);
        ASSERT_EQ(ap.count(), exists_a_perfect_occupancy_stable(inst).count());
        if (ap.count()) {
            ASSERT_TRUE(brute::stable(inst, ap.matchings[0], true));
        }
    }
}

TEST(Oracle, Decomposition) {
    const auto inst = fixtures::master_list();
    const auto d = decompose(inst, {inst.hospital("h1")});
    // Without h1, a1 a2 a3 meet at h2 and a4 a5 meet at h3.
    ASSERT_EQ(d.blocks.size(), 2u);
    EXPECT_EQ(d.blocks[0], (std::vector<AgentIndex>{0, 1, 2}));
    EXPECT_EQ(d.blocks[1], (std::vector<AgentIndex>{3, 4}));
    EXPECT_EQ(d.block_of[4], 1u);
    EXPECT_THROW(decompose(inst, {7}), Error);

    for (auto limit : {1u, 2u, 3u}) {
        const auto chosen = decompose(inst, choose_interface(inst, limit));
        for (const auto& b : chosen.blocks) EXPECT_LE(b.size(), std::max<std::size_t>(limit, 1));
    }
}

TEST(Oracle, SmtiCompleteStableMatchesPermutationSearch) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto p = csmti_params(seed);
        p.men = 3 + seed % 3;
        p.tied_max = p.men;
        const auto smti = gen_csmti(p);
        const auto got = smti_complete_stable(smti);
        const auto all = brute::complete_stable(smti);
        ASSERT_EQ(got.has_value(), !all.empty());
        if (got) {
            ASSERT_TRUE(std::find(all.begin(), all.end(), *got) != all.end());
        }
    }
    SmtiInstance huge;
    huge.men.resize(8);
    huge.women.resize(8);
    EXPECT_THROW(smti_complete_stable(huge), Error);
}
