#ifndef HRS_HARNESS_HPP
#define HRS_HARNESS_HPP

// Seeded instance generators, shrinking, randomized property suites and the
// approximation-ratio experiment.
//
// Randomness comes from std::mt19937_64 only; bounded draws and shuffles are
// done here rather than through <random> distributions so that a seed yields
// the same instance on every standard library.

#include "hrs/core.hpp"
#include "hrs/oracle.hpp"
#include "hrs/partition.hpp"
#include "hrs/reduce.hpp"
#include "hrs/smti.hpp"
#include "hrs/solver.hpp"
#include "hrs/verify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace hrs {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        constexpr auto top = std::numeric_limits<std::uint64_t>::max();
        const auto limit = top - top % n;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % n;
    }
    long long between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

enum class Family { uniform_random, gen_master_list, csmti };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::uniform_random: return "uniform_random";
        case Family::gen_master_list: return "gen_master_list";
        case Family::csmti: return "csmti";
    }
    return "?";
}

struct GenParams {
    Family family = Family::uniform_random;
    std::size_t agents_min = 1, agents_max = 6;
    std::size_t hospitals_min = 1, hospitals_max = 4;
    long long size_min = 1, size_max = 3;
    long long cap_min = 1, cap_max = 6;
    double density = 0.6;
    std::size_t degree = 0;   // nonzero: every agent lists exactly min(degree, #hospitals) hospitals
    std::size_t classes = 0;  // gen_master_list; 0 picks 1..3
    std::size_t men = 3;      // csmti
    std::size_t tied_min = 0, tied_max = 3;
    std::uint64_t seed = 0;
};

inline void check_params(const GenParams& p) {
    auto fail = [](const std::string& why) { throw Error("invalid generator parameters: " + why); };
    if (p.family == Family::csmti) {
        if (p.tied_min > p.tied_max) fail("tied_min > tied_max");
        if (p.tied_min > p.men) fail("more tied men than men");
        if (p.men < 3 && p.tied_min < p.men) fail("strict men need at least three women");
        return;
    }
    if (p.agents_min > p.agents_max) fail("agents_min > agents_max");
    if (p.hospitals_min > p.hospitals_max) fail("hospitals_min > hospitals_max");
    if (p.size_min < 1 || p.size_min > p.size_max) fail("size range must be nonempty and positive");
    if (p.cap_min < 1 || p.cap_min > p.cap_max) fail("capacity range must be nonempty and positive");
    if (!(p.density >= 0.0 && p.density <= 1.0)) fail("density must lie in [0, 1]");
    if (p.hospitals_max == 0 && p.agents_max > 0 && (p.density > 0.0 || p.degree > 0))
        fail("edges requested but there are no hospitals");
}

namespace detail {

inline std::string numbered(char prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

// Acceptable hospitals per agent, in random order.
inline std::vector<std::vector<std::uint32_t>> sample_edges(Rng& rng, std::size_t na, std::size_t nh,
                                                            const GenParams& p) {
    std::vector<std::vector<std::uint32_t>> lists(na);
    for (std::size_t a = 0; a < na; ++a) {
        auto& list = lists[a];
        if (p.degree > 0) {
            const auto d = std::min(p.degree, nh);
            if (2 * d > nh) {
                std::vector<std::uint32_t> all(nh);
                for (std::uint32_t h = 0; h < nh; ++h) all[h] = h;
                rng.shuffle(all);
                list.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(d));
            } else {
                while (list.size() < d) {
                    const auto h = static_cast<std::uint32_t>(rng.below(nh));
                    if (std::find(list.begin(), list.end(), h) == list.end()) list.push_back(h);
                }
            }
        } else {
            for (std::uint32_t h = 0; h < nh; ++h)
                if (rng.chance(p.density)) list.push_back(h);
            rng.shuffle(list);
        }
    }
    return lists;
}

// Hospital lists: agents in random order, then stably sorted by `rank`.
inline Instance assemble(Rng& rng, const std::vector<long long>& sizes, const std::vector<long long>& caps,
                         const std::vector<std::vector<std::uint32_t>>& agent_lists,
                         const std::vector<std::uint32_t>* rank) {
    const auto na = sizes.size(), nh = caps.size();
    std::vector<std::vector<std::uint32_t>> hospital_lists(nh);
    for (std::uint32_t a = 0; a < na; ++a)
        for (auto h : agent_lists[a]) hospital_lists[h].push_back(a);
    InstanceDraft draft;
    draft.agents.resize(na);
    draft.hospitals.resize(nh);
    for (std::size_t a = 0; a < na; ++a) {
        draft.agents[a].label = numbered('a', a);
        draft.agents[a].size = sizes[a];
        for (auto h : agent_lists[a]) draft.agents[a].prefs.push_back(numbered('h', h));
    }
    for (std::size_t h = 0; h < nh; ++h) {
        auto& list = hospital_lists[h];
        rng.shuffle(list);
        if (rank) std::stable_sort(list.begin(), list.end(), [&](auto x, auto y) { return (*rank)[x] < (*rank)[y]; });
        draft.hospitals[h].label = numbered('h', h);
        draft.hospitals[h].capacity = caps[h];
        for (auto a : list) draft.hospitals[h].prefs.push_back(numbered('a', a));
    }
    return Instance::from_draft(draft);
}

}  // namespace detail

/// Random instance: sizes and capacities uniform in their ranges, each
/// agent-hospital pair acceptable with probability `density` (or a fixed
/// number of hospitals per agent when `degree` is set), random strict lists.
inline Instance gen_random(const GenParams& p) {
    check_params(p);
    Rng rng(p.seed);
    const auto na = static_cast<std::size_t>(rng.between(p.agents_min, p.agents_max));
    const auto nh = static_cast<std::size_t>(rng.between(p.hospitals_min, p.hospitals_max));
    std::vector<long long> sizes(na), caps(nh);
    for (auto& s : sizes) s = rng.between(p.size_min, p.size_max);
    for (auto& c : caps) c = rng.between(p.cap_min, p.cap_max);
    const auto lists = detail::sample_edges(rng, na, nh, p);
    return detail::assemble(rng, sizes, caps, lists, nullptr);
}

/// Random instance whose hospital lists follow a generalized master list:
/// agents are split into size-homogeneous classes and every hospital ranks
/// lower-numbered classes first, with random order inside a class.
inline Instance gen_master_list(const GenParams& p) {
    check_params(p);
    Rng rng(p.seed);
    const auto na = static_cast<std::size_t>(rng.between(p.agents_min, p.agents_max));
    const auto nh = static_cast<std::size_t>(rng.between(p.hospitals_min, p.hospitals_max));
    std::size_t k = p.classes ? p.classes : static_cast<std::size_t>(rng.between(1, 3));
    k = std::min(k, na);
    std::vector<long long> class_size(k);
    for (auto& s : class_size) s = rng.between(p.size_min, p.size_max);
    std::vector<std::uint32_t> order(na), class_of(na);
    for (std::uint32_t a = 0; a < na; ++a) order[a] = a;
    rng.shuffle(order);
    for (std::size_t i = 0; i < na; ++i)
        class_of[order[i]] = static_cast<std::uint32_t>(i < k ? i : rng.below(k));
    std::vector<long long> sizes(na), caps(nh);
    for (std::size_t a = 0; a < na; ++a) sizes[a] = class_size[class_of[a]];
    for (auto& c : caps) c = rng.between(p.cap_min, p.cap_max);
    const auto lists = detail::sample_edges(rng, na, nh, p);
    return detail::assemble(rng, sizes, caps, lists, &class_of);
}

/// Random CSMTI instance with `men` men and women; the number of tied men is
/// drawn from [tied_min, tied_max].
inline SmtiInstance gen_csmti(const GenParams& p) {
    check_params(p);
    Rng rng(p.seed);
    const auto n = p.men;
    const auto tied = static_cast<std::size_t>(rng.between(p.tied_min, std::min(p.tied_max, n)));
    std::vector<std::uint32_t> men(n);
    for (std::uint32_t m = 0; m < n; ++m) men[m] = m;
    rng.shuffle(men);
    std::vector<char> is_tied(n, 0);
    for (std::size_t i = 0; i < tied; ++i) is_tied[men[i]] = 1;

    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> slots(n, 3);
        std::vector<std::vector<std::uint32_t>> choice(n);
        bool ok = true;
        for (std::uint32_t m = 0; m < n && ok; ++m) {
            const std::size_t want = is_tied[m] ? 2 : 3;
            std::vector<std::uint32_t> open;
            for (std::uint32_t w = 0; w < n; ++w)
                if (slots[w] > 0) open.push_back(w);
            if (open.size() < want) {
                ok = false;
                break;
            }
            rng.shuffle(open);
            choice[m].assign(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(want));
            for (auto w : choice[m]) --slots[w];
        }
        if (!ok) continue;
        SmtiInstance smti;
        for (std::uint32_t m = 0; m < n; ++m) smti.men.push_back({detail::numbered('m', m), is_tied[m] != 0, choice[m], 0});
        for (std::uint32_t w = 0; w < n; ++w) smti.women.push_back({detail::numbered('w', w), {}, 0});
        for (std::uint32_t m = 0; m < n; ++m)
            for (auto w : choice[m]) smti.women[w].men.push_back(m);
        for (auto& w : smti.women) rng.shuffle(w.men);
        return smti;
    }
    throw Error("could not place CSMTI preference lists");
}

/// Dispatches on `family` for the HRS families.
inline Instance generate(const GenParams& p) {
    switch (p.family) {
        case Family::uniform_random: return gen_random(p);
        case Family::gen_master_list: return gen_master_list(p);
        case Family::csmti: break;
    }
    throw Error("the csmti family produces SMTI instances, not HRS instances");
}

// ---------------------------------------------------------------------------
// Shrinking

namespace detail {

inline void erase_value(std::vector<std::string>& v, const std::string& x) { std::erase(v, x); }

}  // namespace detail

/// Greedily removes agents, hospitals and single edges while `fails` keeps
/// returning true. The result is locally minimal: no single removal keeps
/// the failure.
template <class Pred>
Instance shrink(const Instance& inst, Pred&& fails) {
    auto draft = inst.to_draft();
    auto accept = [&](InstanceDraft candidate) {
        auto next = Instance::from_draft(candidate);
        if (!fails(next)) return false;
        draft = std::move(candidate);
        return true;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < draft.agents.size() && !changed; ++i) {
            auto c = draft;
            const auto label = c.agents[i].label;
            c.agents.erase(c.agents.begin() + static_cast<std::ptrdiff_t>(i));
            for (auto& h : c.hospitals) detail::erase_value(h.prefs, label);
            changed = accept(std::move(c));
        }
        for (std::size_t i = 0; i < draft.hospitals.size() && !changed; ++i) {
            auto c = draft;
            const auto label = c.hospitals[i].label;
            c.hospitals.erase(c.hospitals.begin() + static_cast<std::ptrdiff_t>(i));
            for (auto& a : c.agents) detail::erase_value(a.prefs, label);
            changed = accept(std::move(c));
        }
        for (std::size_t i = 0; i < draft.agents.size() && !changed; ++i)
            for (std::size_t j = 0; j < draft.agents[i].prefs.size() && !changed; ++j) {
                auto c = draft;
                const auto hospital = c.agents[i].prefs[j];
                c.agents[i].prefs.erase(c.agents[i].prefs.begin() + static_cast<std::ptrdiff_t>(j));
                for (auto& h : c.hospitals)
                    if (h.label == hospital) detail::erase_value(h.prefs, c.agents[i].label);
                changed = accept(std::move(c));
            }
    }
    return Instance::from_draft(draft);
}

// ---------------------------------------------------------------------------
// Parallel trials

/// Runs fn(trial) for trial in [0, trials) on `jobs` threads. Results are
/// stored by trial index, so the outcome does not depend on scheduling.
template <class Fn>
auto run_trials(std::size_t trials, std::size_t jobs, Fn&& fn) {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(trials);
    jobs = std::max<std::size_t>(1, std::min(jobs, trials));
    if (jobs == 1) {
        for (std::size_t t = 0; t < trials; ++t) out[t] = fn(t);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (auto t = next++; t < trials; t = next++) out[t] = fn(t);
        });
    for (auto& th : pool) th.join();
    return out;
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) { return seed ^ static_cast<std::uint64_t>(trial); }

// ---------------------------------------------------------------------------
// Property suites

struct Violation {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string message;
    std::string instance;  // minimized, serialized
};

struct SuiteReport {
    std::string suite;
    std::size_t trials = 0;
    std::size_t exhausted = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

struct CheckOutcome {
    std::optional<std::string> violation;
    bool exhausted = false;
};

namespace checks {

inline GenParams small_params(std::uint64_t seed, std::size_t agents_max = 6) {
    GenParams p;
    p.agents_max = agents_max;
    p.hospitals_max = 4;
    p.size_max = 3;
    p.cap_max = 6;
    p.density = 0.6;
    p.seed = seed;
    return p;
}

inline std::string describe(const Instance& inst, const BlockingWitness& w) {
    std::string s = "(" + inst.agent_label(w.agent) + ", " + inst.hospital_label(w.hospital) + ") evicting {";
    for (std::size_t i = 0; i < w.displaced.size(); ++i) s += (i ? ", " : "") + inst.agent_label(w.displaced[i]);
    return s + "}";
}

/// solve_occupancy has no occupancy-blocking pair, and an occupancy-stable
/// matching exists.
inline CheckOutcome occ_stable_always(const Instance& inst, const SearchBudget& budget) {
    const auto m = solve_occupancy(inst);
    if (auto w = find_occupancy_blocking_pairs(inst, m); !w.empty())
        return {"solve_occupancy output is occupancy-blocked by " + describe(inst, w.front())};
    const auto r = max_occupancy_stable(inst, budget);
    if (!r.complete()) return {std::nullopt, true};
    if (r.matchings.empty()) return {"oracle found no occupancy-stable matching"};
    return {};
}

/// 3 s(M) > s(M*) for the algorithm's M and the optimum M*.
inline CheckOutcome approx_bound(const Instance& inst, const SearchBudget& budget) {
    const auto sm = matching_size(inst, solve_occupancy(inst));
    const auto r = max_occupancy_stable(inst, budget);
    if (!r.complete()) return {std::nullopt, true};
    if (!r.best_value) return {"oracle found no occupancy-stable matching"};
    const auto best = *r.best_value;
    if (best < sm) return {"optimum " + std::to_string(best) + " below algorithm size " + std::to_string(sm)};
    if (sm == 0 && best > 0) return {"algorithm matched nothing but the optimum is " + std::to_string(best)};
    if (sm > 0 && 3 * sm <= best)
        return {"ratio bound fails: s(M)=" + std::to_string(sm) + ", s(M*)=" + std::to_string(best)};
    return {};
}

/// Trace propositions hold for the size-descending run.
inline CheckOutcome trace_invariants(const Instance& inst, const SearchBudget&) {
    const auto trace = solve(inst, size_descending_partition(inst));
    if (auto report = check_trace(inst, trace); !report.ok()) return {report.to_string()};
    return {};
}

/// Generalized master list detected, solve output stable, and for up to 5
/// agents every stable matching is occupancy-stable.
inline CheckOutcome gen_ml_stable(const Instance& inst, const SearchBudget& budget) {
    const auto p = detect_generalized_master_list(inst);
    if (!p) return {"no generalized master list detected"};
    if (auto report = validate_ordered_partition(inst, *p, true); !report.ok())
        return {"detected partition invalid: " + report.to_string()};
    const auto m = solve_matching(inst, *p);
    if (auto w = find_blocking_pairs(inst, m); !w.empty())
        return {"solve output is blocked by " + describe(inst, w.front())};
    if (inst.agent_count() > 5) return {};
    const auto r = stable_matchings(inst, budget);
    if (!r.complete()) return {std::nullopt, true};
    if (std::find(r.matchings.begin(), r.matchings.end(), m) == r.matchings.end())
        return {"solve output missing from the oracle's stable set"};
    for (const auto& s : r.matchings)
        if (!is_occupancy_stable(inst, s)) return {"a stable matching is not occupancy-stable"};
    return {};
}

/// Every stable matching is occupancy-stable and passes the verifier.
inline CheckOutcome stable_implies_occ(const Instance& inst, const SearchBudget& budget) {
    const auto r = stable_matchings(inst, budget);
    if (!r.complete()) return {std::nullopt, true};
    for (const auto& s : r.matchings) {
        if (!is_stable(inst, s)) return {"oracle returned a matching the verifier rejects"};
        if (!is_occupancy_stable(inst, s)) return {"a stable matching is not occupancy-stable"};
    }
    return {};
}

/// The same lists with unit sizes and floor(capacity / size) slots.
/// Hospitals left without a slot are dropped together with their edges.
inline Instance slot_instance(const Instance& inst, long long size) {
    auto draft = inst.to_draft();
    for (auto& a : draft.agents) a.size = 1;
    std::vector<std::string> dropped;
    for (auto& h : draft.hospitals) {
        h.capacity /= size;
        if (h.capacity == 0) dropped.push_back(h.label);
    }
    std::erase_if(draft.hospitals, [](const HospitalDraft& h) { return h.capacity == 0; });
    for (auto& a : draft.agents)
        std::erase_if(a.prefs, [&](const std::string& h) {
            return std::find(dropped.begin(), dropped.end(), h) != dropped.end();
        });
    return Instance::from_draft(draft);
}

/// For uniform sizes, uniform_gs output is stable and appears among the
/// oracle's stable matchings of the slot instance.
inline CheckOutcome uniform_gs_oracle(const Instance& inst, const SearchBudget& budget) {
    if (inst.agent_count() == 0) return {};
    const long long s = inst.size(0);
    std::vector<AgentIndex> agents(inst.agent_count());
    for (AgentIndex a = 0; a < agents.size(); ++a) {
        agents[a] = a;
        if (inst.size(a) != s) return {};  // not applicable
    }
    std::vector<long long> caps(inst.hospital_count());
    for (HospitalIndex h = 0; h < caps.size(); ++h) caps[h] = inst.capacity(h);
    const auto m = uniform_gs(inst, agents, caps);
    if (auto w = find_blocking_pairs(inst, m); !w.empty())
        return {"uniform_gs output is blocked by " + describe(inst, w.front())};
    const auto slots = slot_instance(inst, s);
    Matching in_slots(slots.agent_count());
    for (auto e : m.edges()) in_slots.assign(e.agent, slots.hospital(inst.hospital_label(e.hospital)));
    const auto r = stable_matchings(slots, budget);
    if (!r.complete()) return {std::nullopt, true};
    if (std::find(r.matchings.begin(), r.matchings.end(), in_slots) == r.matchings.end())
        return {"uniform_gs output missing from the oracle's stable set of the slot instance"};
    return {};
}

}  // namespace checks

namespace detail {

struct HrsSuite {
    Family family;
    std::size_t agents_max;
    bool uniform_sizes;
    CheckOutcome (*check)(const Instance&, const SearchBudget&);
};

inline std::optional<HrsSuite> hrs_suite(const std::string& name) {
    if (name == "occ-stable-always") return HrsSuite{Family::uniform_random, 6, false, checks::occ_stable_always};
    if (name == "approx-bound") return HrsSuite{Family::uniform_random, 6, false, checks::approx_bound};
    if (name == "trace-invariants") return HrsSuite{Family::uniform_random, 6, false, checks::trace_invariants};
    if (name == "gen-ml-stable") return HrsSuite{Family::gen_master_list, 7, false, checks::gen_ml_stable};
    if (name == "stable-implies-occ") return HrsSuite{Family::uniform_random, 4, false, checks::stable_implies_occ};
    if (name == "uniform-gs-oracle") return HrsSuite{Family::uniform_random, 5, true, checks::uniform_gs_oracle};
    return std::nullopt;
}

}  // namespace detail

/// Instance used by trial `trial` of an HRS suite.
inline Instance suite_instance(const std::string& suite, std::uint64_t seed, std::size_t trial) {
    const auto s = detail::hrs_suite(suite);
    if (!s) throw Error("unknown suite '" + suite + "'");
    auto p = checks::small_params(trial_seed(seed, trial), s->agents_max);
    p.family = s->family;
    if (s->uniform_sizes) p.size_min = p.size_max = static_cast<long long>(1 + trial % 3);
    return generate(p);
}

// CSMTI reduction checks.
namespace checks {

inline CheckOutcome reduction_occ(const SmtiInstance& smti, const SearchBudget& budget) {
    const auto r = reduce_occ(smti);
    if (!has_occ_bounds(r.instance)) return {"reduced instance breaks the structural bounds"};
    const auto complete = smti_complete_stable(smti);
    if (complete) {
        const auto lifted = lift_occ(smti, *complete, r);  // verifies itself
        if (project_occ(smti, lifted, r) != *complete) return {"projection does not invert the lift"};
        return {};
    }
    OracleOptions opt;
    opt.strategy = Strategy::decompose;
    const auto found = exists_a_perfect_occupancy_stable(r.instance, budget, opt);
    if (!found.complete()) return {std::nullopt, true};
    if (!found.matchings.empty()) return {"agent-perfect occupancy-stable matching exists without a complete stable matching"};
    return {};
}

inline CheckOutcome reduction_stable(const SmtiInstance& smti, const SearchBudget& budget, bool backward) {
    const auto r = reduce_stable(smti);
    if (!has_stable_bounds(r.instance)) return {"a non-unit agent has more than one hospital"};
    const auto complete = smti_complete_stable(smti);
    if (complete) {
        const auto lifted = lift_stable(smti, *complete, r);
        for (const auto& g : r.index.men)
            for (auto e : chain_edges(g))
                if (!lifted.contains(e)) return {"lifted matching misses a forced chain edge"};
        if (project_stable(smti, lifted, r) != *complete) return {"projection does not invert the lift"};
        return {};
    }
    if (!backward) return {};
    OracleOptions opt;
    opt.strategy = Strategy::decompose;
    auto b = budget;
    b.max_solutions = 1;
    const auto found = stable_matchings(r.instance, b, opt);
    if (!found.matchings.empty()) return {"stable matching exists without a complete stable matching"};
    if (!found.complete()) return {std::nullopt, true};
    return {};
}

}  // namespace checks

inline GenParams csmti_params(std::uint64_t seed) {
    GenParams p;
    p.family = Family::csmti;
    p.men = 3;
    p.tied_min = 0;
    p.tied_max = 3;
    p.seed = seed;
    return p;
}

inline std::vector<std::string> suite_names() {
    return {"occ-stable-always", "approx-bound",  "trace-invariants", "gen-ml-stable",
            "stable-implies-occ", "uniform-gs-oracle", "reduce-occ",   "reduce-stable"};
}

/// Runs `trials` seeded trials of the named suite. Violating HRS instances
/// are shrunk before being reported.
inline SuiteReport run_property_suite(const std::string& suite, std::size_t trials, std::uint64_t seed,
                                      const SearchBudget& budget, std::size_t jobs = 1) {
    SuiteReport report;
    report.suite = suite;
    report.trials = trials;
    std::vector<std::pair<CheckOutcome, std::string>> results;

    if (auto s = detail::hrs_suite(suite)) {
        results = run_trials(trials, jobs, [&](std::size_t t) {
            const auto inst = suite_instance(suite, seed, t);
            auto outcome = s->check(inst, budget);
            std::string text;
            if (outcome.violation) {
                const auto small = shrink(inst, [&](const Instance& x) { return s->check(x, budget).violation.has_value(); });
                text = serialize_instance(small);
            }
            return std::make_pair(std::move(outcome), std::move(text));
        });
    } else if (suite == "reduce-occ" || suite == "reduce-stable") {
        results = run_trials(trials, jobs, [&](std::size_t t) {
            const auto smti = gen_csmti(csmti_params(trial_seed(seed, t)));
            CheckOutcome outcome;
            try {
                outcome = suite == "reduce-occ" ? checks::reduction_occ(smti, budget)
                                                : checks::reduction_stable(smti, budget, true);
            } catch (const Error& e) {
                outcome.violation = e.what();
            }
            return std::make_pair(std::move(outcome), outcome.violation ? serialize_smti(smti) : std::string());
        });
    } else {
        throw Error("unknown suite '" + suite + "'");
    }

    for (std::size_t t = 0; t < results.size(); ++t) {
        auto& [outcome, text] = results[t];
        if (outcome.exhausted) ++report.exhausted;
        if (outcome.violation) report.violations.push_back({t, trial_seed(seed, t), *outcome.violation, text});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Approximation-ratio experiment

/// Three agents where the algorithm's matching has size 3 and the maximum
/// occupancy-stable matching has size 7.
inline Instance ratio_gap_instance() {
    return parse_instance(
        "hrs v1\n"
        "agents:\n"
        "a a1 3 : h1 h2\n"
        "a a2 2 : h1\n"
        "a a3 2 : h1\n"
        "hospitals:\n"
        "h h1 4 : a2 a3 a1\n"
        "h h2 3 : a1\n");
}

struct RatioRow {
    std::string seed;
    std::size_t m = 0;
    std::size_t n_agents = 0;
    long long s_m = 0;
    std::optional<long long> s_mstar;
    std::optional<double> ratio;
    Verdict verdict = Verdict::complete;
    bool violation = false;
};

struct RatioReport {
    std::vector<RatioRow> rows;  // the pinned row first
    double max_ratio = 0;
    double mean_ratio = 0;
    std::size_t exhausted = 0;
    std::size_t violations = 0;
};

inline RatioRow ratio_row(const Instance& inst, std::string seed, const SearchBudget& budget) {
    RatioRow row;
    row.seed = std::move(seed);
    row.m = inst.edge_count();
    row.n_agents = inst.agent_count();
    row.s_m = matching_size(inst, solve_occupancy(inst));
    const auto r = max_occupancy_stable(inst, budget);
    row.verdict = r.verdict;
    if (!r.complete()) return row;
    const long long best = r.best_value.value_or(0);
    row.s_mstar = best;
    if (row.s_m == 0) {
        row.ratio = 1.0;
        row.violation = best != 0;
    } else {
        row.ratio = static_cast<double>(best) / static_cast<double>(row.s_m);
        row.violation = !(3 * row.s_m > best) || !r.best_value;
    }
    return row;
}

inline RatioReport run_ratio_experiment(const GenParams& params, std::size_t trials, const SearchBudget& budget,
                                        std::size_t jobs = 1) {
    RatioReport report;
    report.rows.push_back(ratio_row(ratio_gap_instance(), "pinned", budget));
    auto rows = run_trials(trials, jobs, [&](std::size_t t) {
        auto p = params;
        p.seed = trial_seed(params.seed, t);
        return ratio_row(generate(p), std::to_string(p.seed), budget);
    });
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    double sum = 0;
    std::size_t counted = 0;
    for (const auto& row : report.rows) {
        if (row.verdict != Verdict::complete) {
            ++report.exhausted;
            continue;
        }
        if (row.violation) ++report.violations;
        report.max_ratio = std::max(report.max_ratio, *row.ratio);
        sum += *row.ratio;
        ++counted;
    }
    report.mean_ratio = counted ? sum / static_cast<double>(counted) : 0.0;
    return report;
}

inline std::string format_ratio(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::string ratio_csv(const RatioReport& report) {
    std::string out = "seed,m,n_agents,sM,sMstar,ratio,verdict\n";
    for (const auto& r : report.rows) {
        out += r.seed + "," + std::to_string(r.m) + "," + std::to_string(r.n_agents) + "," + std::to_string(r.s_m) + ",";
        out += (r.s_mstar ? std::to_string(*r.s_mstar) : "") + ",";
        out += (r.ratio ? format_ratio(*r.ratio) : "") + ",";
        out += to_string(r.verdict);
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json ratio_summary(const RatioReport& report) {
    nlohmann::ordered_json j;
    j["trials"] = report.rows.size();
    j["max_ratio"] = format_ratio(report.max_ratio);
    j["mean_ratio"] = format_ratio(report.mean_ratio);
    j["budget_exhausted"] = report.exhausted;
    j["violations"] = report.violations;
    const auto& pinned = report.rows.front();
    j["pinned"] = {{"sM", pinned.s_m},
                   {"sMstar", pinned.s_mstar ? nlohmann::ordered_json(*pinned.s_mstar) : nlohmann::ordered_json(nullptr)},
                   {"ratio", pinned.ratio ? nlohmann::ordered_json(format_ratio(*pinned.ratio)) : nlohmann::ordered_json(nullptr)}};
    return j;
}

}  // namespace hrs

#endif
