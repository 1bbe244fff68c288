#ifndef HRS_VERIFY_HPP
#define HRS_VERIFY_HPP

// Blocking-pair detection for the classic notion (an agent fits after evicting
// any set of lower-ranked agents) and the occupancy notion (the evicted set
// may not be larger than the incoming agent).

#include "hrs/core.hpp"
#include "hrs/detail/subset_sum.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hrs {

enum class BlockKind { classic, occupancy };

inline const char* to_string(BlockKind k) { return k == BlockKind::classic ? "classic" : "occupancy"; }

struct BlockingWitness {
    AgentIndex agent;
    HospitalIndex hospital;
    std::vector<AgentIndex> displaced;  // X, sorted by agent index
    BlockKind kind;
    friend bool operator==(const BlockingWitness&, const BlockingWitness&) = default;
};

namespace detail {

// Admissible eviction totals for (a, h): at least `lo` must leave so that a
// fits, at most `hi` may leave.
struct EvictionWindow {
    long long lo;
    long long hi;
};

inline EvictionWindow eviction_window(long long occupancy, long long size, long long cap, long long lower_total,
                                      BlockKind kind) {
    const long long lo = std::max(0LL, occupancy + size - cap);
    const long long hi = kind == BlockKind::classic ? lower_total : std::min(lower_total, size);
    return {lo, hi};
}

// Existence-only test over small weights; falls back to the general picker.
inline bool window_reachable(std::span<const long long> weights, EvictionWindow w) {
    if (w.lo == 0) return w.hi >= 0;
    if (w.hi < w.lo) return false;
    if (w.hi < 64) {
        std::uint64_t reach = 1;
        for (auto x : weights)
            if (x < 64) reach |= reach << x;
        const std::uint64_t mask =
            (w.hi == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (w.hi + 1)) - 1)) & ~((std::uint64_t{1} << w.lo) - 1);
        return (reach & mask) != 0;
    }
    return pick_subset(weights, w.lo, w.hi).has_value();
}

/// Does agent a form a blocking pair of the given kind with any hospital?
/// `occ` must be the occupancy vector of m.
inline bool agent_blocks(const Instance& inst, const Matching& m, std::span<const long long> occ, AgentIndex a,
                         BlockKind kind) {
    const auto current = m[a];
    const auto prefs = inst.agent_prefs(a);
    const auto pos = inst.position_at_hospitals(a);
    long long weights_buf[64];
    for (std::size_t i = 0; i < prefs.size(); ++i) {
        const auto h = prefs[i];
        if (h == current) break;  // remaining hospitals are worse than M(a)
        const auto hlist = inst.hospital_prefs(h);
        long long lower_total = 0;
        std::size_t nw = 0;
        std::vector<long long> spill;
        for (std::size_t p = pos[i] + 1; p < hlist.size(); ++p) {
            const auto b = hlist[p];
            if (m[b] != h) continue;
            lower_total += inst.size(b);
            if (nw < 64)
                weights_buf[nw++] = inst.size(b);
            else
                spill.push_back(inst.size(b));
        }
        const auto w = eviction_window(occ[h], inst.size(a), inst.capacity(h), lower_total, kind);
        if (kind == BlockKind::classic) {
            if (w.lo <= w.hi) return true;
            continue;
        }
        if (spill.empty()) {
            if (window_reachable(std::span<const long long>(weights_buf, nw), w)) return true;
        } else {
            spill.insert(spill.begin(), weights_buf, weights_buf + nw);
            if (window_reachable(spill, w)) return true;
        }
    }
    return false;
}

// Shared scan for the full and residual detectors. When `subgraph` is set,
// only its edges exist: hospital lists, occupancies and M are restricted to it.
inline std::vector<BlockingWitness> scan(const Instance& inst, const Matching& m, std::span<const long long> caps,
                                         const std::vector<Edge>* subgraph, BlockKind kind) {
    auto in_subgraph = [&](AgentIndex a, HospitalIndex h) {
        return subgraph == nullptr || std::binary_search(subgraph->begin(), subgraph->end(), Edge{a, h});
    };
    auto matched_to = [&](AgentIndex a) {
        const auto h = m[a];
        return (h != unmatched && in_subgraph(a, h)) ? h : unmatched;
    };

    std::vector<long long> occ(inst.hospital_count(), 0);
    std::vector<std::vector<AgentIndex>> members(inst.hospital_count());
    for (AgentIndex a = 0; a < inst.agent_count(); ++a) {
        const auto h = matched_to(a);
        if (h == unmatched) continue;
        occ[h] += inst.size(a);
        members[h].push_back(a);
    }
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h)
        if (occ[h] > caps[h])
            throw Error("infeasible matching: hospital " + inst.hospital_label(h) + " occupancy " +
                        std::to_string(occ[h]) + " exceeds capacity " + std::to_string(caps[h]));

    std::vector<BlockingWitness> out;
    for (AgentIndex a = 0; a < inst.agent_count(); ++a) {
        const auto current = matched_to(a);
        for (auto h : inst.agent_prefs(a)) {
            if (h == current) break;
            if (!in_subgraph(a, h)) continue;
            const auto rank_a = *inst.hospital_rank(h, a);
            std::vector<AgentIndex> lower;
            std::vector<long long> weights;
            long long lower_total = 0;
            for (auto b : members[h]) {
                if (*inst.hospital_rank(h, b) > rank_a) {
                    lower.push_back(b);
                    weights.push_back(inst.size(b));
                    lower_total += inst.size(b);
                }
            }
            const auto w = eviction_window(occ[h], inst.size(a), caps[h], lower_total, kind);
            auto picked = pick_subset(weights, w.lo, w.hi);
            if (!picked) continue;
            BlockingWitness wit{a, h, {}, kind};
            for (auto i : *picked) wit.displaced.push_back(lower[i]);
            out.push_back(std::move(wit));
        }
    }
    return out;
}

inline std::vector<long long> capacities_of(const Instance& inst) {
    std::vector<long long> caps(inst.hospital_count());
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) caps[h] = inst.capacity(h);
    return caps;
}

}  // namespace detail

/// Every classic blocking pair of m, ordered by agent index then by the
/// agent's preference order. Each carries an eviction set of minimum total
/// size (lexicographically smallest among ties).
inline std::vector<BlockingWitness> find_blocking_pairs(const Instance& inst, const Matching& m) {
    require_feasible(inst, m);
    const auto caps = detail::capacities_of(inst);
    return detail::scan(inst, m, caps, nullptr, BlockKind::classic);
}

inline std::vector<BlockingWitness> find_occupancy_blocking_pairs(const Instance& inst, const Matching& m) {
    require_feasible(inst, m);
    const auto caps = detail::capacities_of(inst);
    return detail::scan(inst, m, caps, nullptr, BlockKind::occupancy);
}

/// Blocking pairs of m inside `subgraph` (an edge subset of inst) when
/// hospitals have `residual_caps` instead of their capacities. Matched pairs
/// outside the subgraph are ignored.
inline std::vector<BlockingWitness> find_blocking_pairs_residual(const Instance& inst, const Matching& m,
                                                                 std::span<const long long> residual_caps,
                                                                 std::vector<Edge> subgraph,
                                                                 BlockKind kind = BlockKind::classic) {
    if (residual_caps.size() != inst.hospital_count())
        throw Error("residual capacities must cover every hospital");
    for (HospitalIndex h = 0; h < residual_caps.size(); ++h)
        if (residual_caps[h] < 0)
            throw Error("negative residual capacity at hospital " + inst.hospital_label(h));
    if (m.agent_count() != inst.agent_count()) throw Error("matching does not match instance");
    for (const auto& e : subgraph)
        if (e.agent >= inst.agent_count() || e.hospital >= inst.hospital_count() || !inst.acceptable(e.agent, e.hospital))
            throw Error("subgraph edge is not an edge of the instance");
    std::sort(subgraph.begin(), subgraph.end());
    return detail::scan(inst, m, residual_caps, &subgraph, kind);
}

inline bool is_stable(const Instance& inst, const Matching& m) {
    require_feasible(inst, m);
    const auto occ = occupancies(inst, m);
    for (AgentIndex a = 0; a < inst.agent_count(); ++a)
        if (detail::agent_blocks(inst, m, occ, a, BlockKind::classic)) return false;
    return true;
}

inline bool is_occupancy_stable(const Instance& inst, const Matching& m) {
    require_feasible(inst, m);
    const auto occ = occupancies(inst, m);
    for (AgentIndex a = 0; a < inst.agent_count(); ++a)
        if (detail::agent_blocks(inst, m, occ, a, BlockKind::occupancy)) return false;
    return true;
}

inline bool is_a_perfect(const Instance& inst, const Matching& m) {
    require_feasible(inst, m);
    return m.matched_count() == inst.agent_count();
}

}  // namespace hrs

#endif
