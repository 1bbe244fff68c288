#ifndef HRS_PARTITION_HPP
#define HRS_PARTITION_HPP

// Ordered partitions of the agents into size-homogeneous classes, and
// detection of generalized master lists (an ordered partition that every
// hospital's list respects).

#include "hrs/core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

namespace hrs {

enum class PartitionOrigin { size_descending, detected_gen_ml, user_supplied };

inline const char* to_string(PartitionOrigin p) {
    switch (p) {
        case PartitionOrigin::size_descending: return "size_descending";
        case PartitionOrigin::detected_gen_ml: return "detected_gen_ml";
        case PartitionOrigin::user_supplied: return "user_supplied";
    }
    return "?";
}

struct OrderedPartition {
    std::vector<std::vector<AgentIndex>> classes;
    PartitionOrigin origin = PartitionOrigin::user_supplied;

    friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

/// Classes A_{s_1}, ..., A_{s_k} for the distinct sizes s_1 > ... > s_k.
inline OrderedPartition size_descending_partition(const Instance& inst) {
    std::map<int, std::vector<AgentIndex>, std::greater<>> by_size;
    for (AgentIndex a = 0; a < inst.agent_count(); ++a) by_size[inst.size(a)].push_back(a);
    OrderedPartition p{{}, PartitionOrigin::size_descending};
    for (auto& [size, agents] : by_size) p.classes.push_back(std::move(agents));
    return p;
}

inline ValidationReport validate_ordered_partition(const Instance& inst, const OrderedPartition& p,
                                                   bool require_gen_ml) {
    ValidationReport report;
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> class_of(inst.agent_count(), none);
    for (std::size_t k = 0; k < p.classes.size(); ++k) {
        const auto loc = "class " + std::to_string(k + 1);
        if (p.classes[k].empty()) report.add(loc, "empty class");
        for (auto a : p.classes[k]) {
            if (a >= inst.agent_count()) {
                report.add(loc, "unknown agent index " + std::to_string(a));
                continue;
            }
            if (class_of[a] != none)
                report.add(loc, "agent " + inst.agent_label(a) + " appears in more than one class");
            else
                class_of[a] = k;
            if (inst.size(a) != inst.size(p.classes[k].front()) && p.classes[k].front() < inst.agent_count())
                report.add(loc, "class not size-homogeneous: " + inst.agent_label(a) + " has size " +
                                    std::to_string(inst.size(a)) + ", " + inst.agent_label(p.classes[k].front()) +
                                    " has size " + std::to_string(inst.size(p.classes[k].front())));
        }
    }
    for (AgentIndex a = 0; a < inst.agent_count(); ++a)
        if (class_of[a] == none) report.add("agent " + inst.agent_label(a), "not covered by the partition");

    if (require_gen_ml) {
        for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) {
            const auto list = inst.hospital_prefs(h);
            for (std::size_t i = 0; i + 1 < list.size(); ++i) {
                const auto x = list[i], y = list[i + 1];
                if (class_of[x] == none || class_of[y] == none) continue;
                if (class_of[x] > class_of[y])
                    report.add("hospital " + inst.hospital_label(h),
                               "list breaks class order: " + inst.agent_label(x) + " (class " +
                                   std::to_string(class_of[x] + 1) + ") precedes " + inst.agent_label(y) +
                                   " (class " + std::to_string(class_of[y] + 1) + ")");
            }
        }
    }
    return report;
}

namespace detail {

// Iterative Tarjan. Returns component id per vertex.
inline std::vector<std::uint32_t> strong_components(const std::vector<std::vector<std::uint32_t>>& adj,
                                                    std::uint32_t& count) {
    const auto n = static_cast<std::uint32_t>(adj.size());
    constexpr auto unvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<char> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::size_t>> call;  // (vertex, next edge)
    std::uint32_t next_index = 0;
    count = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < adj[v].size()) {
                const auto w = adj[v][e++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const auto done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                } while (w != done);
                ++count;
            }
        }
    }
    return comp;
}

}  // namespace detail

/// A generalized master list for the instance, if one exists.
///
/// Each hospital list contributes a constraint class(x) <= class(y) for every
/// consecutive pair x, y. Agents on a common cycle must share a class, so
/// strongly connected components of that constraint graph are the finest
/// possible classes. A component mixing sizes rules out any generalized
/// master list. Otherwise components are emitted in topological order
/// (smallest agent index first among ready components) and consecutive
/// components of equal size are merged.
inline std::optional<OrderedPartition> detect_generalized_master_list(const Instance& inst) {
    const auto n = inst.agent_count();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) {
        const auto list = inst.hospital_prefs(h);
        for (std::size_t i = 0; i + 1 < list.size(); ++i) adj[list[i]].push_back(list[i + 1]);
    }
    std::uint32_t ncomp = 0;
    const auto comp = detail::strong_components(adj, ncomp);

    std::vector<int> comp_size(ncomp, -1);
    std::vector<AgentIndex> comp_min(ncomp, std::numeric_limits<AgentIndex>::max());
    std::vector<std::vector<AgentIndex>> members(ncomp);
    for (AgentIndex a = 0; a < n; ++a) {
        const auto c = comp[a];
        if (comp_size[c] == -1)
            comp_size[c] = inst.size(a);
        else if (comp_size[c] != inst.size(a))
            return std::nullopt;
        comp_min[c] = std::min(comp_min[c], a);
        members[c].push_back(a);
    }

    std::vector<std::vector<std::uint32_t>> dag(ncomp);
    std::vector<std::uint32_t> indegree(ncomp, 0);
    for (AgentIndex a = 0; a < n; ++a)
        for (auto b : adj[a])
            if (comp[a] != comp[b]) {
                dag[comp[a]].push_back(comp[b]);
                ++indegree[comp[b]];
            }

    using Ready = std::pair<AgentIndex, std::uint32_t>;  // (smallest member, component)
    std::priority_queue<Ready, std::vector<Ready>, std::greater<>> ready;
    for (std::uint32_t c = 0; c < ncomp; ++c)
        if (indegree[c] == 0) ready.emplace(comp_min[c], c);

    OrderedPartition p{{}, PartitionOrigin::detected_gen_ml};
    int last_size = -1;
    while (!ready.empty()) {
        const auto c = ready.top().second;
        ready.pop();
        if (!p.classes.empty() && comp_size[c] == last_size) {
            auto& cls = p.classes.back();
            cls.insert(cls.end(), members[c].begin(), members[c].end());
            std::sort(cls.begin(), cls.end());
        } else {
            p.classes.push_back(members[c]);
            last_size = comp_size[c];
        }
        for (auto d : dag[c])
            if (--indegree[d] == 0) ready.emplace(comp_min[d], d);
    }
    return p;
}

/// Singleton classes in master-list order.
inline OrderedPartition master_list_partition(const Instance& inst, std::span<const AgentIndex> order) {
    if (order.size() != inst.agent_count()) throw Error("master order is not a permutation of the agents");
    std::vector<char> seen(inst.agent_count(), 0);
    OrderedPartition p{{}, PartitionOrigin::user_supplied};
    for (auto a : order) {
        if (a >= inst.agent_count() || seen[a]) throw Error("master order is not a permutation of the agents");
        seen[a] = 1;
        p.classes.push_back({a});
    }
    return p;
}

inline OrderedPartition master_list_partition(const Instance& inst, std::span<const std::string> labels) {
    std::vector<AgentIndex> order;
    for (const auto& l : labels) order.push_back(inst.agent(l));
    return master_list_partition(inst, order);
}

/// One class per non-empty line, agent labels separated by whitespace.
inline OrderedPartition parse_partition(const Instance& inst, std::string_view text) {
    OrderedPartition p{{}, PartitionOrigin::user_supplied};
    const auto lines = detail::split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const auto toks = detail::tokenize(lines[n]);
        if (toks.empty()) continue;
        std::vector<AgentIndex> cls;
        for (const auto& t : toks) {
            auto a = inst.find_agent(t.text);
            if (!a) throw ParseError(n + 1, t.column, "unknown agent '" + t.text + "'");
            cls.push_back(*a);
        }
        p.classes.push_back(std::move(cls));
    }
    return p;
}

inline std::string serialize_partition(const Instance& inst, const OrderedPartition& p) {
    std::string out;
    for (const auto& cls : p.classes) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (i) out += ' ';
            out += inst.agent_label(cls[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace hrs

#endif
