#include "hrs/harness.hpp"
#include "hrs/json_io.hpp"
#include "hrs/oracle.hpp"
#include "hrs/reduce.hpp"
#include "support/brute.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace hrs;

namespace {

SmtiInstance tied_pair() {
    std::ifstream in(std::string(HRS_DATA_DIR) + "/tied_pair.smti");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_smti(ss.str());
}

const char* two_tied = "smti v1\nm m1 : ( w1 w2 )\nm m2 : ( w2 w1 )\nw w1 : m1 m2\nw w2 : m2 m1\n";
const char* three_strict =
    "smti v1\nm m1 : w1 w2 w3\nm m2 : w2 w3 w1\nm m3 : w3 w1 w2\nw w1 : m2 m3 m1\nw w2 : m3 m1 m2\nw w3 : m1 m2 m3\n";

// Agents and hospitals added per man, on top of one hospital per woman.
std::pair<std::size_t, std::size_t> expected_counts(const SmtiInstance& smti, ReductionTarget t) {
    std::size_t agents = 0, hospitals = smti.women.size();
    for (const auto& m : smti.men) {
        if (t == ReductionTarget::occupancy) {
            agents += m.tied ? 6 : 2;
            hospitals += m.tied ? 4 : 1;
        } else {
            agents += m.tied ? 12 : 4;
            hospitals += m.tied ? 8 : 3;
        }
    }
    return {agents, hospitals};
}

}  // namespace

TEST(Smti, ParseAndSerialize) {
    const auto smti = tied_pair();
    ASSERT_EQ(smti.men.size(), 3u);
    EXPECT_TRUE(smti.men[0].tied);
    EXPECT_EQ(smti.men[1].women, (std::vector<std::uint32_t>{1, 2, 0}));
    EXPECT_EQ(parse_smti(serialize_smti(smti)), smti);
    EXPECT_TRUE(validate_csmti(smti).ok());

    EXPECT_THROW(parse_smti("smti v1\nm m1 : ( w1 w2\nw w1 : m1\nw w2 : m1\n"), ParseError);
    EXPECT_THROW(parse_smti("smti v1\nm m1 : w9\n"), ParseError);
    EXPECT_THROW(parse_smti("smti v1\nx m1 : w1\n"), ParseError);
    EXPECT_THROW(parse_smti("smti v1\nw w1 : ( m1 )\n"), ParseError);
}

TEST(Smti, ValidationMessages) {
    const auto bad = parse_smti("smti v1\nm m1 : w1 w2\nm m2 : ( w1 w2 w3 )\nw w1 : m1 m2\nw w2 : m2\nw w3 : m2\n");
    const auto r = validate_csmti(bad);
    EXPECT_TRUE(r.mentions("differs from number of women"));
    EXPECT_TRUE(r.mentions("strict list must have length exactly three"));
    EXPECT_TRUE(r.mentions("tie must have length exactly two"));
    EXPECT_TRUE(r.mentions("non-mutual"));
    EXPECT_THROW(reduce_occ(bad), InvalidInput);
    EXPECT_THROW(reduce_stable(bad), InvalidInput);
}

TEST(Reduce, GadgetCounts) {
    for (const auto* text : {two_tied, three_strict}) {
        const auto smti = parse_smti(text);
        for (auto t : {ReductionTarget::occupancy, ReductionTarget::stable}) {
            const auto r = t == ReductionTarget::occupancy ? reduce_occ(smti) : reduce_stable(smti);
            const auto [na, nh] = expected_counts(smti, t);
            EXPECT_EQ(r.instance.agent_count(), na);
            EXPECT_EQ(r.instance.hospital_count(), nh);
            EXPECT_EQ(r.index.men.size(), smti.men.size());
            EXPECT_EQ(r.index.target, t);
        }
    }
    EXPECT_EQ(reduce_occ(parse_smti(two_tied)).instance.agent_count(), 12u);
    EXPECT_EQ(reduce_occ(parse_smti(two_tied)).instance.hospital_count(), 10u);
    EXPECT_EQ(reduce_stable(parse_smti(three_strict)).instance.hospital_count(), 12u);
}

TEST(Reduce, StructuralBounds) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto p = csmti_params(seed);
        p.men = 3 + seed % 4;
        p.tied_max = p.men;
        const auto smti = gen_csmti(p);
        const auto occ = reduce_occ(smti).instance;
        EXPECT_TRUE(has_occ_bounds(occ));
        for (AgentIndex a = 0; a < occ.agent_count(); ++a) {
            ASSERT_LE(occ.size(a), 2);
            ASSERT_LE(occ.agent_prefs(a).size(), 4u);
        }
        for (HospitalIndex h = 0; h < occ.hospital_count(); ++h) {
            ASSERT_LE(occ.capacity(h), 2);
            ASSERT_LE(occ.hospital_prefs(h).size(), 4u);
        }
        const auto st = reduce_stable(smti).instance;
        EXPECT_TRUE(has_stable_bounds(st));
        for (AgentIndex a = 0; a < st.agent_count(); ++a)
            if (st.size(a) != 1) {
                ASSERT_EQ(st.agent_prefs(a).size(), 1u);
            }
    }
    EXPECT_FALSE(has_occ_bounds(parse_instance("hrs v1\nagents:\na x 3 : h\nhospitals:\nh h 3 : x\n")));
    EXPECT_FALSE(has_stable_bounds(parse_instance("hrs v1\nagents:\na x 2 : h g\nhospitals:\nh h 3 : x\nh g 3 : x\n")));
}

TEST(Reduce, LiftAndProjectRoundTrip) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto smti = gen_csmti(csmti_params(seed));
        const auto all = brute::complete_stable(smti);
        for (auto t : {ReductionTarget::occupancy, ReductionTarget::stable}) {
            const auto r = t == ReductionTarget::occupancy ? reduce_occ(smti) : reduce_stable(smti);
            for (const auto& mt : all) {
                const auto m = lift(smti, mt, r);
                ASSERT_TRUE(brute::feasible(r.instance, m));
                if (t == ReductionTarget::occupancy) {
                    ASSERT_EQ(m.matched_count(), r.instance.agent_count());
                }
                ASSERT_TRUE(brute::stable(r.instance, m, t == ReductionTarget::occupancy));
                ASSERT_EQ(project(smti, m, r), mt);
            }
        }
    }
}

TEST(Reduce, LiftRejectsUnstableInput) {
    const auto smti = tied_pair();
    const auto r = reduce_occ(smti);
    SmtiMatching partial(3);
    EXPECT_THROW(lift(smti, partial, r), Error);
    EXPECT_THROW(project(smti, Matching(r.instance.agent_count()), r), Error);
}

// Every agent-perfect occupancy-stable matching of the reduced instance has
// the gadget shape the backward direction relies on.
TEST(Reduce, OccupancyGadgetShape) {
    const auto smti = tied_pair();
    const auto r = reduce_occ(smti);
    OracleOptions opt;
    opt.perfect_only = true;
    const auto found = occupancy_stable_matchings(r.instance, {}, opt);
    ASSERT_TRUE(found.complete());
    ASSERT_GT(found.count(), 0u);
    const auto& inst = r.instance;
    for (const auto& m : found.matchings) {
        for (const auto& g : r.index.men) {
            if (g.tied) {
                EXPECT_EQ(m[g.agent("a3")], m[g.agent("a4")]);
                const bool first1 = m[g.agent("a1")] == inst.agent_prefs(g.agent("a1")).front();
                const bool first2 = m[g.agent("a2")] == inst.agent_prefs(g.agent("a2")).front();
                EXPECT_NE(first1, first2);
                EXPECT_NE(m[g.agent("a1")], inst.agent_prefs(g.agent("a1")).back());
                EXPECT_NE(m[g.agent("a2")], inst.agent_prefs(g.agent("a2")).back());
            } else {
                EXPECT_NE(m[g.agent("a")], inst.agent_prefs(g.agent("a")).back());
            }
        }
        EXPECT_TRUE(smti_is_stable(smti, project_occ(smti, m, r)));
    }
}

TEST(Reduce, ChainWithoutEntryHasNoStableMatching) {
    const auto chain = chain_without_entry();
    EXPECT_EQ(chain.agent_count(), 3u);
    EXPECT_EQ(chain.hospital_count(), 2u);
    EXPECT_TRUE(brute::stable_matchings(chain, false).empty());
    const auto r = stable_matchings(chain);
    EXPECT_TRUE(r.complete());
    EXPECT_EQ(r.count(), 0u);
}

TEST(Reduce, ForcedChainEdges) {
    const auto smti = tied_pair();
    const auto r = reduce_stable(smti);
    const auto mt = *smti_complete_stable(smti);
    const auto m = lift_stable(smti, mt, r);
    for (const auto& g : r.index.men) {
        EXPECT_EQ(chain_edges(g).size(), g.tied ? 6u : 3u);
        for (auto e : chain_edges(g)) EXPECT_TRUE(m.contains(e));
    }
}

TEST(Reduce, IndexJson) {
    const auto smti = tied_pair();
    const auto r = reduce_occ(smti);
    const auto j = gadget_index_to_json(smti, r);
    EXPECT_EQ(j["target"], "occ");
    EXPECT_EQ(j["women"]["w1"], "W1");
    EXPECT_EQ(j["men"][0]["man"], "m1");
    EXPECT_EQ(j["men"][0]["tied"], true);
    EXPECT_EQ(j["men"][0]["tie"][1], "w2");
    EXPECT_EQ(j["men"][0]["agents"]["a3"], "A1_3");
    EXPECT_EQ(j["men"][1]["agents"]["a"], "S2");
    EXPECT_EQ(gadget_index_to_json(smti, reduce_stable(smti))["men"][1]["hospitals"]["p1"], "P2_1");
}
