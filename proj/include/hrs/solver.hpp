#ifndef HRS_SOLVER_HPP
#define HRS_SOLVER_HPP

// Deferred acceptance over an ordered partition of the agents. Classes are
// processed in order; each round runs agent-proposing deferred acceptance on
// the class against the capacity left over by earlier rounds, and the round
// matchings are accumulated.

#include "hrs/core.hpp"
#include "hrs/partition.hpp"
#include "hrs/verify.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <type_traits>
#include <utility>
#include <span>
#include <vector>

namespace hrs {

struct Round {
    std::size_t index = 0;                // 1-based
    std::vector<Edge> edges;              // E_k: every edge of the class agents
    std::vector<long long> residual;      // q_k per hospital
    Matching matching;                    // M_k
};

struct SolveTrace {
    OrderedPartition partition;
    std::vector<Round> rounds;
    std::vector<Matching> cumulative;     // M^(t_1), ..., M^(t_f)
    Matching final;
};

namespace detail {

// Hospital lists split per partition class. A "segment" is the sublist of
// one hospital restricted to one class; all segments share one flat array.
// Each agent-list entry also records its segment and flat slot, so a
// proposal only reads the proposer's own contiguous entries.
class ClassBuckets {
public:
    ClassBuckets(const Instance& inst, std::span<const std::uint32_t> class_of) {
        const auto nh = inst.hospital_count();
        const auto na = inst.agent_count();
        constexpr auto none = std::numeric_limits<std::uint32_t>::max();
        std::vector<std::uint32_t> seg_of_class, touched;
        // Segments are numbered in (hospital, first appearance) order, so
        // both passes below assign the same ids.
        auto for_each_entry = [&](auto&& visit) {
            std::uint32_t fresh = 0;
            for (HospitalIndex h = 0; h < nh; ++h) {
                const auto list = inst.hospital_prefs(h);
                for (std::uint32_t p = 0; p < list.size(); ++p) {
                    const auto c = class_of[list[p]];
                    if (c >= seg_of_class.size()) seg_of_class.resize(c + 1, none);
                    if (seg_of_class[c] == none) {
                        seg_of_class[c] = fresh++;
                        touched.push_back(c);
                    }
                    visit(h, p, seg_of_class[c]);
                }
                for (auto c : touched) seg_of_class[c] = none;
                touched.clear();
            }
        };
        for_each_entry([&](HospitalIndex, std::uint32_t, std::uint32_t seg) {
            if (seg == seg_offset_.size()) seg_offset_.push_back(0);
            ++seg_offset_[seg];
        });
        // Lengths to offsets; seg_offset_[g] is the first slot of segment g.
        std::uint32_t total = 0;
        for (auto& x : seg_offset_) total += std::exchange(x, total);
        seg_offset_.push_back(total);

        agent_offset_.resize(na + 1, 0);
        for (AgentIndex a = 0; a < na; ++a) agent_offset_[a + 1] = agent_offset_[a] + inst.agent_prefs(a).size();
        seg_agents_.resize(total);
        edges_.resize(agent_offset_.back());
        std::vector<std::uint32_t> fill(seg_offset_.begin(), seg_offset_.end() - 1);
        for_each_entry([&](HospitalIndex h, std::uint32_t p, std::uint32_t seg) {
            const auto a = inst.hospital_prefs(h)[p];
            const auto slot = fill[seg]++;
            seg_agents_[slot] = a;
            edges_[agent_offset_[a] + inst.position_at_agents(h)[p]] = {h, seg, slot};
        });
    }

    struct EdgeRef {
        HospitalIndex hospital;
        std::uint32_t segment;
        std::uint32_t slot;
    };

    // a's list with the segment and flat slot of every entry.
    std::span<const EdgeRef> edges(AgentIndex a) const {
        return {edges_.data() + agent_offset_[a], agent_offset_[a + 1] - agent_offset_[a]};
    }
    std::uint32_t first_slot(std::uint32_t seg) const { return seg_offset_[seg]; }
    std::uint32_t last_slot(std::uint32_t seg) const { return seg_offset_[seg + 1] - 1; }
    AgentIndex agent_at(std::uint32_t slot) const { return seg_agents_[slot]; }
    std::size_t segment_count() const { return seg_offset_.size() - 1; }
    std::size_t total_length() const { return seg_agents_.size(); }

private:
    std::vector<std::uint32_t> seg_offset_;
    std::vector<AgentIndex> seg_agents_;
    std::vector<std::uint32_t> agent_offset_;
    std::vector<EdgeRef> edges_;
};

// Per-segment deferred-acceptance state. `accepted` is indexed by flat slot
// and each segment is only ever used by one round.
struct RoundState {
    struct Segment {
        std::uint32_t held = 0;   // number of accepted proposals
        std::uint32_t worst = 0;  // slot of the worst held agent, valid when full
    };
    std::vector<char> accepted;
    std::vector<Segment> segments;
};

// Agent-proposing deferred acceptance for one class of common size `size`.
// A hospital offers floor(residual / size) slots to the class. `next` holds
// each agent's proposal cursor and is shared across rounds.
inline void run_round(const ClassBuckets& buckets, RoundState& state,
                      std::span<const AgentIndex> proposers, long long size, std::span<const long long> residual,
                      std::vector<std::uint32_t>& next, Matching& out) {
    std::vector<AgentIndex> free(proposers.rbegin(), proposers.rend());
    while (!free.empty()) {
        const auto a = free.back();
        free.pop_back();
        const auto edges = buckets.edges(a);
        while (next[a] < edges.size()) {
            const auto [h, seg, slot] = edges[next[a]++];
            const long long slots = residual[h] / size;
            if (slots <= 0) continue;
            auto& sg = state.segments[seg];
            if (sg.held < slots) {
                state.accepted[slot] = 1;
                out.assign(a, h);
                if (++sg.held == slots) {
                    auto w = buckets.last_slot(seg);
                    while (!state.accepted[w]) --w;
                    sg.worst = w;
                }
                break;
            }
            if (slot < sg.worst) {
                const auto w = sg.worst;
                const auto rejected = buckets.agent_at(w);
                state.accepted[w] = 0;
                out.unassign(rejected);
                free.push_back(rejected);
                state.accepted[slot] = 1;
                out.assign(a, h);
                auto nw = w - 1;
                while (!state.accepted[nw]) --nw;
                sg.worst = nw;
                break;
            }
        }
    }
}

inline std::vector<std::uint32_t> class_index(const Instance& inst, const OrderedPartition& p) {
    if (auto report = validate_ordered_partition(inst, p, false); !report.ok()) throw InvalidInput(report);
    std::vector<std::uint32_t> class_of(inst.agent_count(), 0);
    for (std::uint32_t k = 0; k < p.classes.size(); ++k)
        for (auto a : p.classes[k]) class_of[a] = k;
    return class_of;
}

inline RoundState fresh_state(const ClassBuckets& buckets) {
    return {std::vector<char>(buckets.total_length(), 0), std::vector<RoundState::Segment>(buckets.segment_count())};
}

// Runs every round; `on_round(k, residual_before, round_matching, cumulative_after)`
// observes each one.
template <class OnRound>
Matching solve_impl(const Instance& inst, const OrderedPartition& p, OnRound&& on_round) {
    const auto class_of = class_index(inst, p);
    const ClassBuckets buckets(inst, class_of);
    auto state = fresh_state(buckets);
    std::vector<std::uint32_t> next(inst.agent_count(), 0);
    Matching cumulative(inst.agent_count());
    Matching round(inst.agent_count());
    std::vector<long long> residual(inst.hospital_count());
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) residual[h] = inst.capacity(h);

    for (std::size_t k = 0; k < p.classes.size(); ++k) {
        const auto& cls = p.classes[k];
        const long long size = inst.size(cls.front());
        run_round(buckets, state, cls, size, residual, next, round);
        std::vector<long long> before;
        if constexpr (!std::is_same_v<std::decay_t<OnRound>, std::nullptr_t>) before = residual;
        for (auto a : cls) {
            const auto h = round[a];
            if (h == unmatched) continue;
            cumulative.assign(a, h);
            residual[h] -= size;
        }
        if constexpr (!std::is_same_v<std::decay_t<OnRound>, std::nullptr_t>) {
            Matching only_round(inst.agent_count());
            for (auto a : cls)
                if (round[a] != unmatched) only_round.assign(a, round[a]);
            on_round(k, before, only_round, cumulative);
        }
    }
    return cumulative;
}

}  // namespace detail

/// Final matching only; no trace bookkeeping. Runs in O(m + n) plus the
/// partition check.
inline Matching solve_matching(const Instance& inst, const OrderedPartition& p) {
    return detail::solve_impl(inst, p, nullptr);
}

inline SolveTrace solve(const Instance& inst, const OrderedPartition& p) {
    SolveTrace trace;
    trace.partition = p;
    trace.final = detail::solve_impl(inst, p, [&](std::size_t k, const std::vector<long long>& residual,
                                                 const Matching& round, const Matching& cumulative) {
        Round r;
        r.index = k + 1;
        for (auto a : p.classes[k])
            for (auto h : inst.agent_prefs(a)) r.edges.push_back({a, h});
        std::sort(r.edges.begin(), r.edges.end());
        r.residual = residual;
        r.matching = round;
        trace.rounds.push_back(std::move(r));
        trace.cumulative.push_back(cumulative);
    });
    return trace;
}

/// One deferred-acceptance round for agents of a common size against the
/// given residual capacities. `proposal_order`, when given, is the initial
/// queue order (a permutation of `agents`); the result does not depend on it.
inline Matching uniform_gs(const Instance& inst, std::span<const AgentIndex> agents,
                           std::span<const long long> residual_caps,
                           std::span<const AgentIndex> proposal_order = {}) {
    if (residual_caps.size() != inst.hospital_count()) throw Error("residual capacities must cover every hospital");
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h)
        if (residual_caps[h] < 0) throw Error("negative residual capacity at hospital " + inst.hospital_label(h));
    Matching out(inst.agent_count());
    if (agents.empty()) return out;
    const long long size = inst.size(agents.front());
    std::vector<std::uint32_t> class_of(inst.agent_count(), 1);
    for (auto a : agents) {
        if (a >= inst.agent_count()) throw Error("unknown agent index");
        if (inst.size(a) != size) throw Error("uniform_gs needs agents of one common size");
        class_of[a] = 0;
    }
    std::vector<AgentIndex> order(agents.begin(), agents.end());
    if (!proposal_order.empty()) {
        std::vector<AgentIndex> x(proposal_order.begin(), proposal_order.end()), y = order;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) throw Error("proposal order must be a permutation of the class agents");
        order.assign(proposal_order.begin(), proposal_order.end());
    }
    const detail::ClassBuckets buckets(inst, class_of);
    auto state = detail::fresh_state(buckets);
    std::vector<std::uint32_t> next(inst.agent_count(), 0);
    detail::run_round(buckets, state, order, size, residual_caps, next, out);
    return out;
}

/// Deferred acceptance over classes of decreasing size. Always
/// occupancy-stable; s(M) > s(M*)/3 for a maximum occupancy-stable M*.
inline Matching solve_occupancy(const Instance& inst) {
    return solve_matching(inst, size_descending_partition(inst));
}

/// Checks a trace for edge-disjoint rounds, the union rule linking rounds to
/// cumulative matchings, non-decreasing occupancy, and stability of every
/// round matching inside its round under residual capacities.
inline ValidationReport check_trace(const Instance& inst, const SolveTrace& trace) {
    ValidationReport report;
    const auto& p = trace.partition;
    if (trace.rounds.size() != p.classes.size() || trace.cumulative.size() != p.classes.size()) {
        report.add("trace", "round count does not match partition");
        return report;
    }
    // Edge disjointness.
    std::set<Edge> seen;
    for (const auto& r : trace.rounds)
        for (const auto& e : r.edges)
            if (!seen.insert(e).second)
                report.add("round " + std::to_string(r.index),
                           "edge-disjointness violated: (" + inst.agent_label(e.agent) + ", " +
                               inst.hospital_label(e.hospital) + ") appears in an earlier round");

    std::vector<std::uint32_t> class_of(inst.agent_count(), std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t k = 0; k < p.classes.size(); ++k)
        for (auto a : p.classes[k])
            if (a < class_of.size()) class_of[a] = k;

    Matching previous(inst.agent_count());
    std::vector<long long> prev_occ(inst.hospital_count(), 0);
    for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
        const auto& r = trace.rounds[k];
        const auto loc = "round " + std::to_string(k + 1);
        const auto& mk = r.matching;
        const auto& cum = trace.cumulative[k];
        if (mk.agent_count() != inst.agent_count() || cum.agent_count() != inst.agent_count()) {
            report.add(loc, "matching does not cover the instance");
            continue;
        }
        // Union rule: M^(t_k) = M^(t_{k-1}) ∪ M_k, and M_k only uses class-k edges.
        for (AgentIndex a = 0; a < inst.agent_count(); ++a) {
            if (mk[a] != unmatched && class_of[a] != k)
                report.add(loc, "union rule violated: round matching assigns " + inst.agent_label(a) +
                                    " from another class");
            const auto expected = class_of[a] == k ? mk[a] : previous[a];
            if (cum[a] != expected)
                report.add(loc, "union rule violated: cumulative matching disagrees at " + inst.agent_label(a));
        }
        // Residual capacities are q minus the occupancy of the previous cumulative matching.
        for (HospitalIndex h = 0; h < inst.hospital_count(); ++h)
            if (r.residual.size() != inst.hospital_count() || r.residual[h] != inst.capacity(h) - prev_occ[h]) {
                report.add(loc, "residual capacity wrong at " + inst.hospital_label(h));
                break;
            }
        // Monotone occupancy.
        const auto occ = occupancies(inst, cum);
        for (HospitalIndex h = 0; h < inst.hospital_count(); ++h)
            if (occ[h] < prev_occ[h])
                report.add(loc, "occupancy decreased at " + inst.hospital_label(h));
        // Round stability within G_k.
        if (r.residual.size() == inst.hospital_count()) {
            try {
                const auto w = find_blocking_pairs_residual(inst, mk, r.residual, r.edges);
                for (const auto& b : w)
                    report.add(loc, "round matching blocked by (" + inst.agent_label(b.agent) + ", " +
                                        inst.hospital_label(b.hospital) + ")");
            } catch (const Error& e) {
                report.add(loc, e.what());
            }
        }
        previous = cum;
        prev_occ = occ;
    }
    if (trace.final != previous) report.add("final", "final matching differs from the last cumulative matching");
    return report;
}

}  // namespace hrs

#endif
