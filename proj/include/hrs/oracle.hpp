#ifndef HRS_ORACLE_HPP
#define HRS_ORACLE_HPP

// Exhaustive ground truth for small instances: enumeration of feasible
// matchings, (occupancy-)stable matchings, the maximum occupancy-stable
// matching, and complete weakly stable matchings of SMTI instances.
//
// Every query runs under a SearchBudget. Running out of budget yields
// Verdict::budget_exhausted; a `complete` verdict means the answer is exact.

#include "hrs/core.hpp"
#include "hrs/smti.hpp"
#include "hrs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <type_traits>
#include <vector>

namespace hrs {

struct SearchBudget {
    std::uint64_t max_nodes = 10'000'000;
    std::optional<std::size_t> max_solutions;
    std::optional<std::chrono::milliseconds> deadline;
};

enum class Verdict { complete, budget_exhausted };

inline const char* to_string(Verdict v) { return v == Verdict::complete ? "complete" : "budget_exhausted"; }

enum class Strategy { plain, decompose };

struct OracleOptions {
    Strategy strategy = Strategy::plain;
    // Hospitals separating the instance into independent blocks. Empty means
    // pick automatically. Only used with Strategy::decompose.
    std::vector<HospitalIndex> interface;
    // Restrict the search space to matchings that match every agent.
    bool perfect_only = false;
};

struct OracleResult {
    Verdict verdict = Verdict::complete;
    std::vector<Matching> matchings;
    std::optional<long long> best_value;
    std::uint64_t nodes = 0;

    bool complete() const { return verdict == Verdict::complete; }
    std::size_t count() const { return matchings.size(); }
};

namespace detail {

class Meter {
public:
    explicit Meter(const SearchBudget& b)
        : budget_(b), start_(std::chrono::steady_clock::now()) {}

    bool tick() {
        if (exhausted_) return false;
        if (++nodes_ > budget_.max_nodes) exhausted_ = true;
        if (budget_.deadline && (nodes_ & 1023) == 0 &&
            std::chrono::steady_clock::now() - start_ > *budget_.deadline)
            exhausted_ = true;
        return !exhausted_;
    }
    bool solution_fits(std::size_t count) {
        if (budget_.max_solutions && count > *budget_.max_solutions) exhausted_ = true;
        return !exhausted_;
    }
    void exhaust() { exhausted_ = true; }
    bool exhausted() const { return exhausted_; }
    std::uint64_t nodes() const { return std::min(nodes_, budget_.max_nodes); }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

// Depth-first assignment of `agents` (in order) to allowed hospitals with
// enough residual capacity, unmatched last. `leaf(m)` returns false to stop;
// `bound(depth, matched_size)` returns false to prune a subtree.
template <class Allowed, class Bound, class Leaf>
void search(const Instance& inst, std::span<const AgentIndex> agents, Matching& m, std::vector<long long>& residual,
            bool allow_unmatched, Meter& meter, Allowed&& allowed, Bound&& bound, Leaf&& leaf) {
    bool stop = false;
    long long matched = 0;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (stop) return;
        if (depth == agents.size()) {
            if (!leaf(m)) stop = true;
            return;
        }
        if (!bound(depth, matched)) return;
        const auto a = agents[depth];
        const auto s = inst.size(a);
        for (auto h : inst.agent_prefs(a)) {
            if (!allowed(h) || residual[h] < s) continue;
            if (!meter.tick()) {
                stop = true;
                return;
            }
            m.assign(a, h);
            residual[h] -= s;
            matched += s;
            self(self, depth + 1);
            matched -= s;
            residual[h] += s;
            m.unassign(a);
            if (stop) return;
        }
        if (allow_unmatched) {
            if (!meter.tick()) {
                stop = true;
                return;
            }
            self(self, depth + 1);
        }
    };
    rec(rec, 0);
}

inline bool passes(const Instance& inst, const Matching& m, BlockKind kind, std::span<const AgentIndex> agents) {
    const auto occ = occupancies(inst, m);
    for (auto a : agents)
        if (agent_blocks(inst, m, occ, a, kind)) return false;
    return true;
}

inline std::vector<AgentIndex> all_agents(const Instance& inst) {
    std::vector<AgentIndex> v(inst.agent_count());
    std::iota(v.begin(), v.end(), AgentIndex{0});
    return v;
}

inline std::vector<long long> full_capacities(const Instance& inst) { return capacities_of(inst); }

enum class Query { stable, occupancy_stable, max_occupancy, a_perfect };

}  // namespace detail

struct EnumerationOutcome {
    Verdict verdict = Verdict::complete;
    std::uint64_t nodes = 0;
};

/// Visits every feasible matching exactly once. Agents are assigned in index
/// order, each to a listed hospital with room (preference order) or left
/// unmatched. The visitor may return false to stop early.
template <class Visitor>
EnumerationOutcome enumerate_feasible(const Instance& inst, const SearchBudget& budget, Visitor&& visit) {
    detail::Meter meter(budget);
    Matching m(inst.agent_count());
    auto residual = detail::full_capacities(inst);
    const auto agents = detail::all_agents(inst);
    detail::search(
        inst, agents, m, residual, true, meter, [](HospitalIndex) { return true; },
        [](std::size_t, long long) { return true; },
        [&](const Matching& leaf) {
            if constexpr (std::is_same_v<std::invoke_result_t<Visitor, const Matching&>, bool>)
                return visit(leaf);
            else {
                visit(leaf);
                return true;
            }
        });
    return {meter.exhausted() ? Verdict::budget_exhausted : Verdict::complete, meter.nodes()};
}

// ---------------------------------------------------------------------------
// Decomposition through interface hospitals.
//
// Once the agents held by every interface hospital are fixed, each blocking
// pair (a, h) only depends on a's own block: h is either a block hospital or
// an interface hospital whose contents are fixed. Blocks can then be searched
// independently and their local answers combined.

struct Decomposition {
    std::vector<char> is_interface;                // per hospital
    std::vector<HospitalIndex> interface;          // sorted
    std::vector<std::vector<AgentIndex>> blocks;   // sorted agents, blocks ordered by first agent
    std::vector<std::uint32_t> block_of;           // per agent
};

namespace detail {

inline std::vector<std::uint32_t> agent_components(const Instance& inst, const std::vector<char>& is_interface) {
    std::vector<std::uint32_t> parent(inst.agent_count());
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) {
        if (is_interface[h]) continue;
        const auto list = inst.hospital_prefs(h);
        for (std::size_t i = 1; i < list.size(); ++i) {
            const auto x = find(list[0]), y = find(list[i]);
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    }
    std::vector<std::uint32_t> root(inst.agent_count());
    for (AgentIndex a = 0; a < inst.agent_count(); ++a) root[a] = find(a);
    return root;
}

inline std::size_t largest_component(const std::vector<std::uint32_t>& root) {
    std::map<std::uint32_t, std::size_t> counts;
    std::size_t best = 0;
    for (auto r : root) best = std::max(best, ++counts[r]);
    return best;
}

}  // namespace detail

/// Greedy choice of interface hospitals: repeatedly add the hospital whose
/// removal most shrinks the largest block (ties: higher degree, then lower
/// index) until no block has more than `max_block_agents` agents.
inline std::vector<HospitalIndex> choose_interface(const Instance& inst, std::size_t max_block_agents = 6) {
    std::vector<char> is_interface(inst.hospital_count(), 0);
    std::vector<HospitalIndex> chosen;
    while (true) {
        const auto root = detail::agent_components(inst, is_interface);
        const auto current = detail::largest_component(root);
        if (current <= max_block_agents) break;
        std::optional<HospitalIndex> pick;
        std::size_t pick_size = 0, pick_degree = 0;
        for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) {
            if (is_interface[h] || inst.hospital_prefs(h).size() < 2) continue;
            is_interface[h] = 1;
            const auto size = detail::largest_component(detail::agent_components(inst, is_interface));
            is_interface[h] = 0;
            const auto degree = inst.hospital_prefs(h).size();
            if (!pick || size < pick_size || (size == pick_size && degree > pick_degree)) {
                pick = h;
                pick_size = size;
                pick_degree = degree;
            }
        }
        if (!pick) break;
        is_interface[*pick] = 1;
        chosen.push_back(*pick);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

inline Decomposition decompose(const Instance& inst, std::vector<HospitalIndex> interface) {
    Decomposition d;
    d.is_interface.assign(inst.hospital_count(), 0);
    for (auto h : interface) {
        if (h >= inst.hospital_count()) throw Error("interface hospital out of range");
        d.is_interface[h] = 1;
    }
    std::sort(interface.begin(), interface.end());
    interface.erase(std::unique(interface.begin(), interface.end()), interface.end());
    d.interface = std::move(interface);
    const auto root = detail::agent_components(inst, d.is_interface);
    std::map<std::uint32_t, std::uint32_t> id;
    d.block_of.resize(inst.agent_count());
    for (AgentIndex a = 0; a < inst.agent_count(); ++a) {
        auto [it, fresh] = id.emplace(root[a], static_cast<std::uint32_t>(d.blocks.size()));
        if (fresh) d.blocks.emplace_back();
        d.blocks[it->second].push_back(a);
        d.block_of[a] = it->second;
    }
    return d;
}

namespace detail {

struct LocalAnswer {
    std::vector<std::vector<Edge>> solutions;  // enumeration queries
    std::optional<long long> best;             // max query: matched size of free block agents
    std::vector<Edge> best_assignment;
};

class DecomposedSearch {
public:
    DecomposedSearch(const Instance& inst, const Decomposition& d, Query query, bool perfect_only, Meter& meter)
        : inst_(inst), d_(d), query_(query), perfect_only_(perfect_only || query == Query::a_perfect),
          meter_(meter), scratch_(inst.agent_count()), caps_(capacities_of(inst)),
          fixed_(inst.agent_count(), unmatched) {
        kind_ = query == Query::stable ? BlockKind::classic : BlockKind::occupancy;
        // Interface hospitals adjacent to each block.
        adjacent_.resize(d.blocks.size());
        for (std::uint32_t b = 0; b < d.blocks.size(); ++b) {
            std::vector<HospitalIndex> hs;
            for (auto a : d.blocks[b])
                for (auto h : inst.agent_prefs(a))
                    if (d.is_interface[h]) hs.push_back(h);
            std::sort(hs.begin(), hs.end());
            hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
            adjacent_[b] = std::move(hs);
        }
        memo_.resize(d.blocks.size());
    }

    OracleResult run() {
        OracleResult result;
        interface_state(0, result);
        result.verdict = meter_.exhausted() ? Verdict::budget_exhausted : Verdict::complete;
        result.nodes = meter_.nodes();
        if (query_ == Query::max_occupancy && result.matchings.empty() && result.complete())
            result.best_value.reset();
        return result;
    }

private:
    // Chooses the set of agents held by each interface hospital in turn.
    void interface_state(std::size_t i, OracleResult& result) {
        if (stop_ || meter_.exhausted()) return;
        if (i == d_.interface.size()) {
            combine(result);
            return;
        }
        const auto h = d_.interface[i];
        const auto list = inst_.hospital_prefs(h);
        std::vector<AgentIndex> chosen;
        auto subsets = [&](auto&& self, std::size_t p, long long room) -> void {
            if (stop_ || meter_.exhausted()) return;
            if (p == list.size()) {
                if (!meter_.tick()) return;
                interface_state(i + 1, result);
                return;
            }
            const auto a = list[p];
            if (fixed_[a] == unmatched && inst_.size(a) <= room) {
                fixed_[a] = h;
                scratch_.assign(a, h);
                chosen.push_back(a);
                self(self, p + 1, room - inst_.size(a));
                chosen.pop_back();
                scratch_.unassign(a);
                fixed_[a] = unmatched;
            }
            self(self, p + 1, room);
        };
        subsets(subsets, 0, caps_[h]);
    }

    std::vector<std::uint32_t> key_for(std::uint32_t b) const {
        std::vector<std::uint32_t> key;
        for (auto a : d_.blocks[b]) key.push_back(fixed_[a]);
        for (auto h : adjacent_[b]) {
            key.push_back(unmatched);
            for (auto a : inst_.hospital_prefs(h))
                if (fixed_[a] == h) key.push_back(a);
        }
        return key;
    }

    const LocalAnswer& local(std::uint32_t b) {
        auto key = key_for(b);
        auto it = memo_[b].find(key);
        if (it != memo_[b].end()) return it->second;

        LocalAnswer ans;
        const auto& agents = d_.blocks[b];
        std::vector<AgentIndex> free;
        for (auto a : agents)
            if (fixed_[a] == unmatched) free.push_back(a);
        std::vector<long long> suffix(free.size() + 1, 0);
        for (std::size_t i = free.size(); i-- > 0;) suffix[i] = suffix[i + 1] + inst_.size(free[i]);

        auto residual = caps_;
        auto allowed = [&](HospitalIndex h) { return !d_.is_interface[h]; };
        auto bound = [&](std::size_t depth, long long matched) {
            if (query_ != Query::max_occupancy || !ans.best) return true;
            return matched + suffix[depth] > *ans.best;
        };
        auto leaf = [&](const Matching& m) {
            if (!passes(inst_, m, kind_, agents)) return true;
            std::vector<Edge> assignment;
            long long value = 0;
            for (auto a : free)
                if (m[a] != unmatched) {
                    assignment.push_back({a, m[a]});
                    value += inst_.size(a);
                }
            switch (query_) {
                case Query::max_occupancy:
                    if (!ans.best || value > *ans.best) {
                        ans.best = value;
                        ans.best_assignment = std::move(assignment);
                    }
                    return true;
                case Query::a_perfect:
                    ans.solutions.push_back(std::move(assignment));
                    return false;
                default:
                    ans.solutions.push_back(std::move(assignment));
                    return meter_.solution_fits(ans.solutions.size());
            }
        };
        search(inst_, free, scratch_, residual, !perfect_only_, meter_, allowed, bound, leaf);
        return memo_[b].emplace(std::move(key), std::move(ans)).first->second;
    }

    void combine(OracleResult& result) {
        std::vector<const LocalAnswer*> answers;
        for (std::uint32_t b = 0; b < d_.blocks.size(); ++b) {
            const auto& ans = local(b);
            if (meter_.exhausted()) return;
            const bool empty = query_ == Query::max_occupancy ? !ans.best.has_value() : ans.solutions.empty();
            if (empty) return;
            answers.push_back(&ans);
        }
        Matching base(inst_.agent_count());
        long long fixed_value = 0;
        for (AgentIndex a = 0; a < inst_.agent_count(); ++a)
            if (fixed_[a] != unmatched) {
                base.assign(a, fixed_[a]);
                fixed_value += inst_.size(a);
            }
        if (query_ == Query::max_occupancy) {
            long long value = fixed_value;
            for (auto* ans : answers) value += *ans->best;
            if (!result.best_value || value > *result.best_value) {
                for (auto* ans : answers)
                    for (auto e : ans->best_assignment) base.assign(e.agent, e.hospital);
                result.best_value = value;
                result.matchings.assign(1, base);
            }
            return;
        }
        // Cartesian product of local solutions.
        std::vector<std::size_t> pick(answers.size(), 0);
        while (true) {
            Matching m = base;
            for (std::size_t i = 0; i < answers.size(); ++i)
                for (auto e : answers[i]->solutions[pick[i]]) m.assign(e.agent, e.hospital);
            result.matchings.push_back(std::move(m));
            if (query_ == Query::a_perfect) {
                stop_ = true;
                return;
            }
            if (!meter_.solution_fits(result.matchings.size())) return;
            std::size_t i = 0;
            while (i < answers.size() && ++pick[i] == answers[i]->solutions.size()) pick[i++] = 0;
            if (i == answers.size()) break;
        }
    }

    const Instance& inst_;
    const Decomposition& d_;
    Query query_;
    bool perfect_only_;
    Meter& meter_;
    BlockKind kind_;
    Matching scratch_;
    std::vector<long long> caps_;
    std::vector<HospitalIndex> fixed_;
    std::vector<std::vector<HospitalIndex>> adjacent_;
    std::vector<std::map<std::vector<std::uint32_t>, LocalAnswer>> memo_;
    bool stop_ = false;
};

inline OracleResult run_plain(const Instance& inst, const SearchBudget& budget, Query query, bool perfect_only) {
    Meter meter(budget);
    OracleResult result;
    Matching m(inst.agent_count());
    auto residual = full_capacities(inst);
    const auto agents = all_agents(inst);
    const auto kind = query == Query::stable ? BlockKind::classic : BlockKind::occupancy;
    const bool allow_unmatched = !(perfect_only || query == Query::a_perfect);

    std::vector<long long> suffix(agents.size() + 1, 0);
    for (std::size_t i = agents.size(); i-- > 0;) suffix[i] = suffix[i + 1] + inst.size(agents[i]);

    auto bound = [&](std::size_t depth, long long matched) {
        if (query != Query::max_occupancy || !result.best_value) return true;
        return matched + suffix[depth] > *result.best_value;
    };
    auto leaf = [&](const Matching& leaf_m) {
        if (!passes(inst, leaf_m, kind, agents)) return true;
        switch (query) {
            case Query::max_occupancy: {
                const auto value = matching_size(inst, leaf_m);
                if (!result.best_value || value > *result.best_value) {
                    result.best_value = value;
                    result.matchings.assign(1, leaf_m);
                }
                return true;
            }
            case Query::a_perfect:
                result.matchings.push_back(leaf_m);
                return false;
            default:
                result.matchings.push_back(leaf_m);
                return meter.solution_fits(result.matchings.size());
        }
    };
    search(inst, agents, m, residual, allow_unmatched, meter, [](HospitalIndex) { return true; }, bound, leaf);
    result.verdict = meter.exhausted() ? Verdict::budget_exhausted : Verdict::complete;
    result.nodes = meter.nodes();
    return result;
}

inline OracleResult run_query(const Instance& inst, const SearchBudget& budget, Query query,
                              const OracleOptions& options) {
    OracleResult result;
    if (options.strategy == Strategy::plain) {
        result = run_plain(inst, budget, query, options.perfect_only);
    } else {
        auto interface = options.interface.empty() ? choose_interface(inst) : options.interface;
        const auto d = decompose(inst, std::move(interface));
        Meter meter(budget);
        DecomposedSearch search(inst, d, query, options.perfect_only, meter);
        result = search.run();
    }
    // The solution that tripped the limit is dropped.
    if (budget.max_solutions && result.matchings.size() > *budget.max_solutions)
        result.matchings.erase(result.matchings.begin() + static_cast<std::ptrdiff_t>(*budget.max_solutions), result.matchings.end());
    return result;
}

}  // namespace detail

/// All stable matchings.
inline OracleResult stable_matchings(const Instance& inst, const SearchBudget& budget = {},
                                     const OracleOptions& options = {}) {
    return detail::run_query(inst, budget, detail::Query::stable, options);
}

/// All occupancy-stable matchings.
inline OracleResult occupancy_stable_matchings(const Instance& inst, const SearchBudget& budget = {},
                                               const OracleOptions& options = {}) {
    return detail::run_query(inst, budget, detail::Query::occupancy_stable, options);
}

/// A maximum-size occupancy-stable matching (the first one in search order)
/// and its size in `best_value`.
inline OracleResult max_occupancy_stable(const Instance& inst, const SearchBudget& budget = {},
                                         const OracleOptions& options = {}) {
    return detail::run_query(inst, budget, detail::Query::max_occupancy, options);
}

/// Decides whether an occupancy-stable matching matching every agent exists;
/// `matchings` holds one witness when it does.
inline OracleResult exists_a_perfect_occupancy_stable(const Instance& inst, const SearchBudget& budget = {},
                                                      const OracleOptions& options = {}) {
    return detail::run_query(inst, budget, detail::Query::a_perfect, options);
}

/// A complete weakly stable matching of a small SMTI instance, if any.
/// Perfect matchings over mutually acceptable pairs are enumerated with men
/// in index order and each man's women in list order.
inline std::optional<SmtiMatching> smti_complete_stable(const SmtiInstance& smti) {
    constexpr std::size_t limit = 7;
    if (smti.men.size() > limit || smti.women.size() > limit)
        throw Error("smti_complete_stable supports at most " + std::to_string(limit) + " men and women");
    if (smti.men.size() != smti.women.size()) return std::nullopt;
    SmtiMatching mt(smti.men.size());
    std::vector<char> taken(smti.women.size(), 0);
    std::optional<SmtiMatching> found;
    auto rec = [&](auto&& self, std::uint32_t man) -> void {
        if (found) return;
        if (man == smti.men.size()) {
            if (smti_blocking_pairs(smti, mt).empty()) found = mt;
            return;
        }
        for (auto w : smti.men[man].women) {
            if (taken[w] || !smti.acceptable(man, w)) continue;
            taken[w] = 1;
            mt.wife[man] = w;
            self(self, man + 1);
            mt.wife[man] = no_partner;
            taken[w] = 0;
        }
    };
    rec(rec, 0);
    return found;
}

}  // namespace hrs

#endif
