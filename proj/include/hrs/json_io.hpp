#ifndef HRS_JSON_IO_HPP
#define HRS_JSON_IO_HPP

// JSON forms of matchings, witnesses, traces, oracle results and gadget
// indices. Keys follow index order so output is byte-stable.

#include "hrs/core.hpp"
#include "hrs/oracle.hpp"
#include "hrs/partition.hpp"
#include "hrs/reduce.hpp"
#include "hrs/solver.hpp"
#include "hrs/verify.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace hrs {

using Json = nlohmann::ordered_json;

inline Json matching_to_json(const Instance& inst, const Matching& m) {
    Json matched = Json::object();
    Json free = Json::array();
    for (AgentIndex a = 0; a < inst.agent_count(); ++a) {
        if (m[a] == unmatched)
            free.push_back(inst.agent_label(a));
        else
            matched[inst.agent_label(a)] = inst.hospital_label(m[a]);
    }
    Json occ = Json::object();
    const auto o = occupancies(inst, m);
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) occ[inst.hospital_label(h)] = o[h];
    return Json{{"matched", matched}, {"unmatched", free}, {"occupancy", occ}, {"size", matching_size(inst, m)}};
}

/// Accepts {"matched": {agent: hospital}} (other keys ignored) or a list of
/// [agent, hospital] pairs.
inline Matching matching_from_json(const Instance& inst, const Json& j) {
    Matching m(inst.agent_count());
    auto put = [&](const std::string& a, const std::string& h) {
        auto ai = inst.find_agent(a);
        auto hi = inst.find_hospital(h);
        if (!ai) throw Error("matching names unknown agent '" + a + "'");
        if (!hi) throw Error("matching names unknown hospital '" + h + "'");
        if (m[*ai] != unmatched) throw Error("agent '" + a + "' matched twice");
        m.assign(*ai, *hi);
    };
    try {
        if (j.is_array()) {
            for (const auto& pair : j) put(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
        } else {
            for (const auto& [a, h] : j.at("matched").items()) put(a, h.get<std::string>());
        }
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed matching JSON: ") + e.what());
    }
    return m;
}

inline Matching parse_matching(const Instance& inst, std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(std::string("malformed matching JSON: ") + e.what());
    }
    return matching_from_json(inst, j);
}

inline Json witness_to_json(const Instance& inst, const BlockingWitness& w) {
    Json displaced = Json::array();
    for (auto b : w.displaced) displaced.push_back(inst.agent_label(b));
    return Json{{"agent", inst.agent_label(w.agent)},
                {"hospital", inst.hospital_label(w.hospital)},
                {"displaced", displaced},
                {"kind", to_string(w.kind)}};
}

inline Json partition_to_json(const Instance& inst, const OrderedPartition& p) {
    Json classes = Json::array();
    for (const auto& cls : p.classes) {
        Json c = Json::array();
        for (auto a : cls) c.push_back(inst.agent_label(a));
        classes.push_back(c);
    }
    return classes;
}

inline Json trace_to_json(const Instance& inst, const SolveTrace& trace) {
    Json rounds = Json::array();
    for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
        const auto& r = trace.rounds[k];
        Json residual = Json::object();
        for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) residual[inst.hospital_label(h)] = r.residual[h];
        Json round_pairs = Json::array();
        for (auto e : r.matching.edges()) round_pairs.push_back({inst.agent_label(e.agent), inst.hospital_label(e.hospital)});
        rounds.push_back(Json{{"round", r.index},
                              {"edges", r.edges.size()},
                              {"residual", residual},
                              {"matched", round_pairs},
                              {"cumulative_size", matching_size(inst, trace.cumulative[k])}});
    }
    return Json{{"partition", partition_to_json(inst, trace.partition)},
                {"origin", to_string(trace.partition.origin)},
                {"rounds", rounds}};
}

inline Json oracle_to_json(const Instance& inst, const OracleResult& r, bool include_all) {
    Json j{{"verdict", to_string(r.verdict)}, {"count", r.count()}};
    j["value"] = r.best_value ? Json(*r.best_value) : Json(nullptr);
    j["witness"] = r.matchings.empty() ? Json(nullptr) : matching_to_json(inst, r.matchings.front());
    if (include_all) {
        Json all = Json::array();
        for (const auto& m : r.matchings) all.push_back(matching_to_json(inst, m));
        j["matchings"] = all;
    }
    j["nodes"] = r.nodes;
    return j;
}

inline Json report_to_json(const ValidationReport& report) {
    Json issues = Json::array();
    for (const auto& i : report.issues)
        issues.push_back(Json{{"severity", i.severity == Severity::error ? "error" : "warning"},
                              {"location", i.location},
                              {"message", i.message}});
    return issues;
}

inline Json gadget_index_to_json(const SmtiInstance& smti, const Reduction& r) {
    const auto& inst = r.instance;
    Json women = Json::object();
    for (std::uint32_t i = 0; i < smti.women.size(); ++i)
        women[smti.women[i].label] = inst.hospital_label(r.index.woman_hospital[i]);
    Json men = Json::array();
    for (const auto& g : r.index.men) {
        Json agents = Json::object(), hospitals = Json::object();
        for (const auto& [role, a] : g.agents) agents[role] = inst.agent_label(a);
        for (const auto& [role, h] : g.hospitals) hospitals[role] = inst.hospital_label(h);
        Json man{{"man", smti.men[g.man].label}, {"tied", g.tied}};
        if (g.tied) man["tie"] = {smti.women[g.wa].label, smti.women[g.wb].label};
        man["agents"] = agents;
        man["hospitals"] = hospitals;
        men.push_back(man);
    }
    return Json{{"target", to_string(r.index.target)}, {"women", women}, {"men", men}};
}

inline Json smti_matching_to_json(const SmtiInstance& smti, const SmtiMatching& mt) {
    Json pairs = Json::object();
    for (std::uint32_t m = 0; m < mt.wife.size(); ++m)
        pairs[smti.men[m].label] = mt.wife[m] == no_partner ? Json(nullptr) : Json(smti.women[mt.wife[m]].label);
    return pairs;
}

}  // namespace hrs

#endif
