#ifndef HRS_REDUCE_HPP
#define HRS_REDUCE_HPP

// Gadget reductions from restricted SMTI (CSMTI) to HRS, and the maps that
// carry matchings across in both directions.
//
//  - occupancy target: a complete weakly stable matching exists iff the HRS
//    instance has an agent-perfect occupancy-stable matching.
//  - stable target: a complete weakly stable matching exists iff the HRS
//    instance has a stable matching.
//
// Every woman w_i becomes hospital W<i>. Gadget labels carry the man's
// 1-based index so that projection is a pure lookup.

#include "hrs/core.hpp"
#include "hrs/smti.hpp"
#include "hrs/verify.hpp"

#include <map>
#include <string>
#include <vector>

namespace hrs {

enum class ReductionTarget { occupancy, stable };

inline const char* to_string(ReductionTarget t) { return t == ReductionTarget::occupancy ? "occ" : "stable"; }

/// Indices of the agents and hospitals created for one man, keyed by role.
///
/// occupancy, tied:  agents a1 a2 a3 a4 aa1 aa2, hospitals h1 h2 ha1 ha2
/// occupancy, strict: agents a ab, hospital hb
/// stable, tied:      agents a1..a6 and qK_T, hospitals h1 h2 and pK_T (K in 1..2, T in 1..3)
/// stable, strict:    agents a q1 q2 q3, hospitals p1 p2 p3
struct ManGadget {
    std::uint32_t man = 0;
    bool tied = false;
    std::uint32_t wa = no_partner, wb = no_partner;  // tied: the two women, wa < wb
    std::map<std::string, AgentIndex> agents;
    std::map<std::string, HospitalIndex> hospitals;

    AgentIndex agent(const std::string& role) const { return agents.at(role); }
    HospitalIndex hospital(const std::string& role) const { return hospitals.at(role); }
};

struct GadgetIndex {
    ReductionTarget target = ReductionTarget::occupancy;
    std::vector<HospitalIndex> woman_hospital;
    std::vector<ManGadget> men;
};

struct Reduction {
    Instance instance;
    GadgetIndex index;
};

namespace detail {

inline std::string woman_label(std::uint32_t w) { return "W" + std::to_string(w + 1); }

inline void require_csmti(const SmtiInstance& smti) {
    if (auto report = validate_csmti(smti); !report.ok()) throw InvalidInput(std::move(report));
}

// Tied man's women in index order.
inline std::pair<std::uint32_t, std::uint32_t> tie_of(const SmtiMan& m) {
    return {std::min(m.women[0], m.women[1]), std::max(m.women[0], m.women[1])};
}

struct DraftBuilder {
    InstanceDraft draft;
    void agent(const std::string& label, long long size, std::vector<std::string> prefs) {
        draft.agents.push_back({label, size, std::move(prefs), 0});
    }
    void hospital(const std::string& label, long long cap, std::vector<std::string> prefs) {
        draft.hospitals.push_back({label, cap, std::move(prefs), 0});
    }
};

// Woman hospitals: the woman's list with each man replaced by the agent that
// stands for him at that hospital.
inline void woman_hospitals(const SmtiInstance& smti, DraftBuilder& b, long long cap, const std::string& strict_prefix) {
    for (std::uint32_t i = 0; i < smti.women.size(); ++i) {
        std::vector<std::string> prefs;
        for (auto m : smti.women[i].men) {
            const auto j = std::to_string(m + 1);
            const auto& man = smti.men[m];
            if (!man.tied) {
                prefs.push_back(strict_prefix + j);
                continue;
            }
            prefs.push_back("A" + j + (i == tie_of(man).first ? "_1" : "_2"));
        }
        b.hospital(woman_label(i), cap, std::move(prefs));
    }
}

inline GadgetIndex index_gadgets(const SmtiInstance& smti, const Instance& inst, ReductionTarget target,
                                 const std::vector<std::map<std::string, std::string>>& agent_roles,
                                 const std::vector<std::map<std::string, std::string>>& hospital_roles) {
    GadgetIndex index;
    index.target = target;
    for (std::uint32_t i = 0; i < smti.women.size(); ++i) index.woman_hospital.push_back(inst.hospital(woman_label(i)));
    for (std::uint32_t m = 0; m < smti.men.size(); ++m) {
        ManGadget g;
        g.man = m;
        g.tied = smti.men[m].tied;
        if (g.tied) std::tie(g.wa, g.wb) = tie_of(smti.men[m]);
        for (const auto& [role, label] : agent_roles[m]) g.agents[role] = inst.agent(label);
        for (const auto& [role, label] : hospital_roles[m]) g.hospitals[role] = inst.hospital(label);
        index.men.push_back(std::move(g));
    }
    return index;
}

inline void check_occ_bounds(const Instance& inst) {
    for (AgentIndex a = 0; a < inst.agent_count(); ++a)
        if (inst.size(a) > 2 || inst.agent_prefs(a).size() > 4)
            throw Error("occupancy reduction broke its bounds at agent " + inst.agent_label(a));
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h)
        if (inst.capacity(h) > 2 || inst.hospital_prefs(h).size() > 4)
            throw Error("occupancy reduction broke its bounds at hospital " + inst.hospital_label(h));
}

inline void check_stable_bounds(const Instance& inst) {
    for (AgentIndex a = 0; a < inst.agent_count(); ++a)
        if (inst.size(a) != 1 && inst.agent_prefs(a).size() != 1)
            throw Error("stable reduction: non-unit agent " + inst.agent_label(a) + " has degree " +
                        std::to_string(inst.agent_prefs(a).size()));
}

inline void require_complete_stable(const SmtiInstance& smti, const SmtiMatching& mt) {
    if (!smti_is_complete(smti, mt)) throw Error("SMTI matching is not complete");
    if (!smti_is_stable(smti, mt)) throw Error("SMTI matching is not weakly stable");
}

inline std::uint32_t woman_of_hospital(const GadgetIndex& index, HospitalIndex h) {
    for (std::uint32_t i = 0; i < index.woman_hospital.size(); ++i)
        if (index.woman_hospital[i] == h) return i;
    return no_partner;
}

}  // namespace detail

/// True when the instance satisfies the structural bounds of the occupancy
/// reduction: sizes and capacities at most 2, lists of length at most 4.
inline bool has_occ_bounds(const Instance& inst) {
    try {
        detail::check_occ_bounds(inst);
        return true;
    } catch (const Error&) {
        return false;
    }
}

/// True when every agent of size other than 1 lists exactly one hospital.
inline bool has_stable_bounds(const Instance& inst) {
    try {
        detail::check_stable_bounds(inst);
        return true;
    } catch (const Error&) {
        return false;
    }
}

inline Reduction reduce_occ(const SmtiInstance& smti) {
    detail::require_csmti(smti);
    detail::DraftBuilder b;
    detail::woman_hospitals(smti, b, 2, "S");
    std::vector<std::map<std::string, std::string>> agent_roles(smti.men.size()), hospital_roles(smti.men.size());
    for (std::uint32_t m = 0; m < smti.men.size(); ++m) {
        const auto j = std::to_string(m + 1);
        const auto& man = smti.men[m];
        if (man.tied) {
            const auto [wa, wb] = detail::tie_of(man);
            const auto A = "A" + j + "_", H = "H" + j + "_";
            b.agent(A + "1", 2, {H + "1", detail::woman_label(wa), H + "a1"});
            b.agent(A + "2", 2, {H + "2", detail::woman_label(wb), H + "a2"});
            b.agent(A + "3", 1, {H + "1", H + "2"});
            b.agent(A + "4", 1, {H + "2", H + "1"});
            b.agent(A + "a1", 1, {H + "a1"});
            b.agent(A + "a2", 1, {H + "a2"});
            b.hospital(H + "1", 2, {A + "4", A + "1", A + "3"});
            b.hospital(H + "2", 2, {A + "3", A + "2", A + "4"});
            b.hospital(H + "a1", 2, {A + "a1", A + "1"});
            b.hospital(H + "a2", 2, {A + "a2", A + "2"});
            agent_roles[m] = {{"a1", A + "1"}, {"a2", A + "2"}, {"a3", A + "3"},
                              {"a4", A + "4"}, {"aa1", A + "a1"}, {"aa2", A + "a2"}};
            hospital_roles[m] = {{"h1", H + "1"}, {"h2", H + "2"}, {"ha1", H + "a1"}, {"ha2", H + "a2"}};
        } else {
            const auto S = "S" + j, HB = "H" + j + "_b";
            std::vector<std::string> prefs;
            for (auto w : man.women) prefs.push_back(detail::woman_label(w));
            prefs.push_back(HB);
            b.agent(S, 2, std::move(prefs));
            b.agent(S + "_b", 1, {HB});
            b.hospital(HB, 2, {S + "_b", S});
            agent_roles[m] = {{"a", S}, {"ab", S + "_b"}};
            hospital_roles[m] = {{"hb", HB}};
        }
    }
    Reduction r{Instance::from_draft(b.draft), {}};
    detail::check_occ_bounds(r.instance);
    r.index = detail::index_gadgets(smti, r.instance, ReductionTarget::occupancy, agent_roles, hospital_roles);
    return r;
}

inline Reduction reduce_stable(const SmtiInstance& smti) {
    detail::require_csmti(smti);
    detail::DraftBuilder b;
    detail::woman_hospitals(smti, b, 1, "S");
    std::vector<std::map<std::string, std::string>> agent_roles(smti.men.size()), hospital_roles(smti.men.size());
    // q/p chain whose first hospital also lists `top`.
    auto chain = [&](const std::string& Q, const std::string& P, const std::string& top, std::uint32_t m,
                     const std::string& role) {
        b.agent(Q + "1", 1, {P + "1", P + "2", P + "3"});
        b.agent(Q + "2", 1, {P + "3", P + "2"});
        b.agent(Q + "3", 3, {P + "3"});
        b.hospital(P + "1", 1, {top, Q + "1"});
        b.hospital(P + "2", 1, {Q + "2", Q + "1"});
        b.hospital(P + "3", 3, {Q + "1", Q + "3", Q + "2"});
        for (int t = 1; t <= 3; ++t) {
            agent_roles[m]["q" + role + std::to_string(t)] = Q + std::to_string(t);
            hospital_roles[m]["p" + role + std::to_string(t)] = P + std::to_string(t);
        }
    };
    for (std::uint32_t m = 0; m < smti.men.size(); ++m) {
        const auto j = std::to_string(m + 1);
        const auto& man = smti.men[m];
        if (man.tied) {
            const auto [wa, wb] = detail::tie_of(man);
            const auto A = "A" + j + "_", H = "H" + j + "_";
            const auto P = [&](int k) { return "P" + j + "_" + std::to_string(k) + "_"; };
            const auto Q = [&](int k) { return "Q" + j + "_" + std::to_string(k) + "_"; };
            b.agent(A + "1", 1, {H + "1", detail::woman_label(wa), P(1) + "1"});
            b.agent(A + "2", 1, {H + "2", detail::woman_label(wb), P(2) + "1"});
            b.agent(A + "3", 1, {H + "2", H + "1"});
            b.agent(A + "4", 1, {H + "1", H + "2"});
            b.agent(A + "5", 3, {H + "1"});
            b.agent(A + "6", 3, {H + "2"});
            b.hospital(H + "1", 3, {A + "3", A + "5", A + "1", A + "4"});
            b.hospital(H + "2", 3, {A + "4", A + "6", A + "2", A + "3"});
            for (int t = 1; t <= 6; ++t) agent_roles[m]["a" + std::to_string(t)] = A + std::to_string(t);
            hospital_roles[m] = {{"h1", H + "1"}, {"h2", H + "2"}};
            for (int k = 1; k <= 2; ++k) chain(Q(k), P(k), A + std::to_string(k), m, std::to_string(k) + "_");
        } else {
            const auto S = "S" + j, P = "P" + j + "_", Q = "Q" + j + "_";
            std::vector<std::string> prefs;
            for (auto w : man.women) prefs.push_back(detail::woman_label(w));
            prefs.push_back(P + "1");
            b.agent(S, 1, std::move(prefs));
            agent_roles[m]["a"] = S;
            chain(Q, P, S, m, "");
        }
    }
    Reduction r{Instance::from_draft(b.draft), {}};
    detail::check_stable_bounds(r.instance);
    r.index = detail::index_gadgets(smti, r.instance, ReductionTarget::stable, agent_roles, hospital_roles);
    return r;
}

/// Edges that must accompany a tied man matched to his lower-index woman
/// (`to_a`) or his higher-index woman.
inline std::vector<Edge> tied_edges(const GadgetIndex& index, const ManGadget& g, bool to_a) {
    const auto wa = index.woman_hospital[g.wa], wb = index.woman_hospital[g.wb];
    if (index.target == ReductionTarget::occupancy) {
        if (to_a)
            return {{g.agent("a1"), wa},          {g.agent("a2"), g.hospital("h2")}, {g.agent("a3"), g.hospital("h1")},
                    {g.agent("a4"), g.hospital("h1")}, {g.agent("aa1"), g.hospital("ha1")}, {g.agent("aa2"), g.hospital("ha2")}};
        return {{g.agent("a1"), g.hospital("h1")}, {g.agent("a2"), wb},          {g.agent("a3"), g.hospital("h2")},
                {g.agent("a4"), g.hospital("h2")}, {g.agent("aa1"), g.hospital("ha1")}, {g.agent("aa2"), g.hospital("ha2")}};
    }
    if (to_a)
        return {{g.agent("a1"), wa}, {g.agent("a2"), g.hospital("h2")}, {g.agent("a3"), g.hospital("h2")},
                {g.agent("a4"), g.hospital("h2")}, {g.agent("a5"), g.hospital("h1")}};
    return {{g.agent("a1"), g.hospital("h1")}, {g.agent("a2"), wb}, {g.agent("a3"), g.hospital("h1")},
            {g.agent("a4"), g.hospital("h1")}, {g.agent("a6"), g.hospital("h2")}};
}

/// The forced q/p edges of a stable-target gadget: one chain for a strict
/// man (prefix ""), two for a tied man (prefixes "1_" and "2_").
inline std::vector<Edge> chain_edges(const ManGadget& g) {
    std::vector<Edge> out;
    const std::vector<std::string> prefixes = g.tied ? std::vector<std::string>{"1_", "2_"} : std::vector<std::string>{""};
    for (const auto& k : prefixes)
        for (int t = 1; t <= 3; ++t)
            out.push_back({g.agent("q" + k + std::to_string(t)), g.hospital("p" + k + std::to_string(t))});
    return out;
}

inline Matching lift_occ(const SmtiInstance& smti, const SmtiMatching& mt, const Reduction& r) {
    detail::require_complete_stable(smti, mt);
    const auto& index = r.index;
    Matching m(r.instance.agent_count());
    for (const auto& g : index.men) {
        const auto w = mt.wife[g.man];
        if (g.tied) {
            for (auto e : tied_edges(index, g, w == g.wa)) m.assign(e.agent, e.hospital);
        } else {
            m.assign(g.agent("a"), index.woman_hospital[w]);
            m.assign(g.agent("ab"), g.hospital("hb"));
        }
    }
    if (!is_a_perfect(r.instance, m) || !is_occupancy_stable(r.instance, m))
        throw Error("lifted matching is not an agent-perfect occupancy-stable matching");
    return m;
}

inline SmtiMatching project_occ(const SmtiInstance& smti, const Matching& m, const Reduction& r) {
    const auto& index = r.index;
    if (m.agent_count() != r.instance.agent_count()) throw Error("matching does not belong to the reduced instance");
    if (!is_a_perfect(r.instance, m)) throw Error("matching is not agent-perfect");
    if (!is_occupancy_stable(r.instance, m)) throw Error("matching is not occupancy-stable");
    SmtiMatching mt(smti.men.size());
    for (const auto& g : index.men) {
        if (g.tied) {
            if (m[g.agent("a1")] == index.woman_hospital[g.wa])
                mt.wife[g.man] = g.wa;
            else if (m[g.agent("a2")] == index.woman_hospital[g.wb])
                mt.wife[g.man] = g.wb;
            else
                throw Error("tied gadget of man " + smti.men[g.man].label + " reaches neither woman");
        } else {
            const auto w = detail::woman_of_hospital(index, m[g.agent("a")]);
            if (w == no_partner) throw Error("strict man " + smti.men[g.man].label + " is not at a woman hospital");
            mt.wife[g.man] = w;
        }
    }
    detail::require_complete_stable(smti, mt);
    return mt;
}

inline Matching lift_stable(const SmtiInstance& smti, const SmtiMatching& mt, const Reduction& r) {
    detail::require_complete_stable(smti, mt);
    const auto& index = r.index;
    Matching m(r.instance.agent_count());
    for (const auto& g : index.men) {
        const auto w = mt.wife[g.man];
        if (g.tied)
            for (auto e : tied_edges(index, g, w == g.wa)) m.assign(e.agent, e.hospital);
        else
            m.assign(g.agent("a"), index.woman_hospital[w]);
        for (auto e : chain_edges(g)) m.assign(e.agent, e.hospital);
    }
    if (!is_stable(r.instance, m)) throw Error("lifted matching is not stable");
    return m;
}

inline SmtiMatching project_stable(const SmtiInstance& smti, const Matching& m, const Reduction& r) {
    const auto& index = r.index;
    if (m.agent_count() != r.instance.agent_count()) throw Error("matching does not belong to the reduced instance");
    if (!is_stable(r.instance, m)) throw Error("matching is not stable");
    auto contains_all = [&](const std::vector<Edge>& edges) {
        return std::all_of(edges.begin(), edges.end(), [&](Edge e) { return m.contains(e); });
    };
    SmtiMatching mt(smti.men.size());
    for (const auto& g : index.men) {
        if (g.tied) {
            if (contains_all(tied_edges(index, g, true)))
                mt.wife[g.man] = g.wa;
            else if (contains_all(tied_edges(index, g, false)))
                mt.wife[g.man] = g.wb;
            else
                throw Error("tied gadget of man " + smti.men[g.man].label + " holds neither edge set");
        } else {
            const auto w = detail::woman_of_hospital(index, m[g.agent("a")]);
            if (w == no_partner) throw Error("strict man " + smti.men[g.man].label + " is not at a woman hospital");
            mt.wife[g.man] = w;
        }
    }
    detail::require_complete_stable(smti, mt);
    return mt;
}

inline Matching lift(const SmtiInstance& smti, const SmtiMatching& mt, const Reduction& r) {
    return r.index.target == ReductionTarget::occupancy ? lift_occ(smti, mt, r) : lift_stable(smti, mt, r);
}

inline SmtiMatching project(const SmtiInstance& smti, const Matching& m, const Reduction& r) {
    return r.index.target == ReductionTarget::occupancy ? project_occ(smti, m, r) : project_stable(smti, m, r);
}

/// The q/p chain of a stable-target gadget with its first hospital removed:
/// three agents, two hospitals, and no stable matching.
inline Instance chain_without_entry() {
    detail::DraftBuilder b;
    b.agent("q1", 1, {"p2", "p3"});
    b.agent("q2", 1, {"p3", "p2"});
    b.agent("q3", 3, {"p3"});
    b.hospital("p2", 1, {"q2", "q1"});
    b.hospital("p3", 3, {"q1", "q3", "q2"});
    return Instance::from_draft(b.draft);
}

}  // namespace hrs

#endif
