// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include "hrs/hrs.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace hrs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double x, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

Instance no_stable_instance() {
    return parse_instance(
        "hrs v1\nagents:\na a1 1 : h2 h1\na a2 1 : h1 h2\na a3 2 : h2\n"
        "hospitals:\nh h1 1 : a1 a2\nh h2 2 : a2 a3 a1\n");
}

Instance master_list_instance() {
    return parse_instance(
        "hrs v1\nagents:\na a1 1 : h2 h1\na a2 1 : h1 h2\na a3 2 : h2\na a4 3 : h3 h1\na a5 3 : h3\n"
        "hospitals:\nh h1 3 : a2 a1 a4\nh h2 2 : a1 a2 a3\nh h3 4 : a5 a4\n");
}

SearchBudget oracle_budget() {
    SearchBudget b;
    b.max_nodes = 10'000'000;
    return b;
}

std::string suite_detail(const SuiteReport& r, double secs) {
    std::string s = std::to_string(r.trials) + " trials, " + std::to_string(r.violations.size()) + " violations, " +
                    std::to_string(r.exhausted) + " budget-exhausted, " + fmt(secs, 1) + " s";
    if (!r.violations.empty()) s += "; first: trial " + std::to_string(r.violations[0].trial) + ": " + r.violations[0].message;
    return s;
}

void criterion_1() {
    const auto t0 = Clock::now();
    const auto inst = no_stable_instance();
    const auto st = stable_matchings(inst);
    const auto occ = occupancy_stable_matchings(inst);
    const auto n = make_matching(inst, {{"a1", "h1"}, {"a3", "h2"}});
    const bool has_n = std::find(occ.matchings.begin(), occ.matchings.end(), n) != occ.matchings.end();
    const bool solved = is_occupancy_stable(inst, solve_occupancy(inst));
    const double secs = seconds_since(t0);
    report(1, st.complete() && st.count() == 0 && occ.complete() && occ.count() >= 1 && has_n && solved && secs < 1.0,
           "stable=" + std::to_string(st.count()) + ", occ-stable=" + std::to_string(occ.count()) +
               (has_n ? " incl. N" : " missing N") + ", solve_occupancy " + (solved ? "occ-stable" : "BLOCKED") + ", " +
               fmt(secs) + " s");
}

void criterion_2() {
    const auto t0 = Clock::now();
    const auto inst = ratio_gap_instance();
    const auto sm = matching_size(inst, solve_occupancy(inst));
    const auto best = max_occupancy_stable(inst);
    const bool witness_ok = best.count() == 1 && is_occupancy_stable(inst, best.matchings[0]) &&
                            matching_size(inst, best.matchings[0]) == 7;
    const double ratio = sm ? static_cast<double>(best.best_value.value_or(0)) / static_cast<double>(sm) : 0.0;
    const double secs = seconds_since(t0);
    report(2, sm == 3 && best.best_value == 7 && witness_ok && ratio > 2.0 && ratio < 3.0 && secs < 1.0,
           "s(M)=" + std::to_string(sm) + ", s(M*)=" + std::to_string(best.best_value.value_or(-1)) + ", ratio " +
               fmt(ratio, 6) + ", " + fmt(secs) + " s");
}

void criterion_3() {
    const auto t0 = Clock::now();
    const auto inst = master_list_instance();
    const auto p = detect_generalized_master_list(inst);
    std::vector<std::vector<std::string>> got;
    if (p)
        for (const auto& cls : p->classes) {
            std::vector<std::string> c;
            for (auto a : cls) c.push_back(inst.agent_label(a));
            std::sort(c.begin(), c.end());
            got.push_back(c);
        }
    const std::vector<std::vector<std::string>> want{{"a1", "a2"}, {"a3"}, {"a4", "a5"}};
    const bool none = !detect_generalized_master_list(no_stable_instance()).has_value();
    const double secs = seconds_since(t0);
    std::string shown;
    for (const auto& c : got) {
        shown += "{";
        for (std::size_t i = 0; i < c.size(); ++i) shown += (i ? "," : "") + c[i];
        shown += "}";
    }
    report(3, got == want && none && secs < 1.0,
           "partition " + (p ? shown : std::string("none")) + ", no-stable instance: " + (none ? "none" : "DETECTED") +
               ", " + fmt(secs) + " s");
}

void suite_criterion(int id, const std::string& suite, double limit, const std::function<bool(const SuiteReport&)>& extra,
                     const std::string& note = "") {
    const auto t0 = Clock::now();
    const auto r = run_property_suite(suite, 1000, 1, oracle_budget());
    const double secs = seconds_since(t0);
    report(id, r.ok() && secs < limit && extra(r), suite + ": " + suite_detail(r, secs) + note);
}

void criterion_5() {
    const auto t0 = Clock::now();
    const auto r = run_property_suite("approx-bound", 1000, 1, oracle_budget());
    const auto pinned = ratio_row(ratio_gap_instance(), "pinned", oracle_budget());
    const double secs = seconds_since(t0);
    const bool pinned_ok = pinned.ratio && *pinned.ratio > 2.0 && !pinned.violation;
    report(5, r.ok() && pinned_ok && secs < 300.0,
           "approx-bound: " + suite_detail(r, secs) + ", pinned ratio " + (pinned.ratio ? fmt(*pinned.ratio, 6) : "n/a"));
}

void criterion_7() {
    const auto t0 = Clock::now();
    const auto trace = run_property_suite("trace-invariants", 1000, 1, oracle_budget());
    const auto gs = run_property_suite("uniform-gs-oracle", 1000, 1, oracle_budget());
    const double secs = seconds_since(t0);
    report(7, trace.ok() && gs.ok() && secs < 120.0,
           "trace-invariants: " + suite_detail(trace, 0) + "; uniform-gs-oracle: " + suite_detail(gs, 0) + "; total " +
               fmt(secs, 1) + " s");
}

void criterion_8() {
    const auto t0 = Clock::now();
    const std::size_t trials = 100;
    std::size_t without = 0;
    for (std::size_t t = 0; t < trials; ++t)
        if (!smti_complete_stable(gen_csmti(csmti_params(trial_seed(1, t))))) ++without;
    const auto r = run_property_suite("reduce-occ", trials, 1, oracle_budget());
    const double secs = seconds_since(t0);
    const bool few_exhausted = without == 0 || r.exhausted * 5 < without;
    report(8, r.ok() && few_exhausted && secs < 600.0,
           "reduce-occ: " + suite_detail(r, secs) + "; " + std::to_string(trials - without) + " forward, " +
               std::to_string(without) + " backward");
}

void criterion_9() {
    const auto t0 = Clock::now();
    const auto budget = oracle_budget();
    std::vector<std::string> problems;
    auto note = [&](const std::string& what, const CheckOutcome& c) {
        if (c.violation) problems.push_back(what + ": " + *c.violation);
    };

    // Forward: 100 instances that have a complete stable matching.
    std::size_t forward = 0;
    for (std::uint64_t seed = 1; forward < 100 && seed < 10'000; ++seed) {
        const auto smti = gen_csmti(csmti_params(seed));
        if (!smti_complete_stable(smti)) continue;
        ++forward;
        note("forward seed " + std::to_string(seed), checks::reduction_stable(smti, budget, false));
    }

    // Backward: all-strict and single-tied-man instances without one.
    std::size_t strict_scanned = 0, strict_backward = 0, tied_backward = 0, exhausted = 0;
    auto backward = [&](const SmtiInstance& smti, const std::string& what) {
        const auto c = checks::reduction_stable(smti, budget, true);
        if (c.exhausted) ++exhausted;
        note(what, c);
    };
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        auto p = csmti_params(seed);
        p.tied_min = p.tied_max = 0;
        const auto smti = gen_csmti(p);
        ++strict_scanned;
        if (smti_complete_stable(smti)) continue;
        ++strict_backward;
        backward(smti, "strict seed " + std::to_string(seed));
    }
    for (std::uint64_t seed = 1; tied_backward < 5 && seed < 10'000; ++seed) {
        auto p = csmti_params(seed);
        p.tied_min = p.tied_max = 1;
        const auto smti = gen_csmti(p);
        if (smti_complete_stable(smti)) continue;
        ++tied_backward;
        backward(smti, "single-tied seed " + std::to_string(seed));
    }

    const auto chain = stable_matchings(chain_without_entry(), budget);
    const bool chain_ok = chain.complete() && chain.count() == 0;
    const double secs = seconds_since(t0);
    std::string detail = std::to_string(forward) + " forward; " + std::to_string(strict_backward) + " of " +
                         std::to_string(strict_scanned) + " all-strict and " + std::to_string(tied_backward) +
                         " single-tied backward, " + std::to_string(exhausted) + " budget-exhausted; chain sub-gadget " +
                         std::to_string(chain.count()) + " stable; " + fmt(secs, 1) + " s";
    if (!problems.empty()) detail += "; first problem: " + problems.front();
    report(9, forward == 100 && tied_backward >= 5 && exhausted == 0 && problems.empty() && chain_ok && secs < 600.0,
           detail);
}

void criterion_10() {
    const auto t0 = Clock::now();
    struct Case {
        Instance inst;
        OrderedPartition part;
        std::vector<double> times;
    };
    std::vector<Case> cases;
    for (std::size_t m : {10'000u, 100'000u, 1'000'000u}) {
        GenParams p;
        p.family = Family::gen_master_list;
        p.degree = 10;
        p.agents_min = p.agents_max = m / p.degree;
        p.hospitals_min = p.hospitals_max = std::max<std::size_t>(p.degree, m / 100);
        p.cap_min = 1;
        p.cap_max = 40;
        p.classes = 4;
        p.seed = 10;
        auto inst = gen_master_list(p);
        auto part = detect_generalized_master_list(inst);
        if (!part) {
            report(10, false, "no master list detected at m=" + std::to_string(m));
            return;
        }
        cases.push_back({std::move(inst), std::move(*part), {}});
    }
    // Sizes are interleaved so that machine noise hits all of them alike;
    // the median of each is compared.
    std::size_t checksum = 0;
    for (int rep = 0; rep < 21; ++rep)
        for (auto& c : cases) {
            const auto s0 = Clock::now();
            const auto matched = solve_matching(c.inst, c.part);
            c.times.push_back(seconds_since(s0));
            checksum += matched.agent_count();
        }
    double worst = 0;
    std::string detail;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto& t = cases[i].times;
        std::sort(t.begin(), t.end());
        const double median = t[t.size() / 2];
        cases[i].times.assign(1, median);
        detail += (i ? ", " : "") + std::string("m=") + std::to_string(cases[i].inst.edge_count()) + ": " +
                  fmt(median * 1e3, 2) + " ms";
        if (i) worst = std::max(worst, median / std::max(cases[i - 1].times[0], 1e-9));
    }
    const double secs = seconds_since(t0);
    const bool ran = checksum > 0;
    report(10, ran && worst <= 15.0 && secs < 60.0,
           detail + " (median of 21); worst factor per decade " + fmt(worst, 2) + ", " + fmt(secs, 1) + " s");
}

}  // namespace

// With no arguments every criterion runs; otherwise only the listed ids.
int main(int argc, char** argv) {
    std::vector<bool> want(11, argc == 1);
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > 10) {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
            return 2;
        }
        want[id] = true;
    }
    const std::vector<std::function<void()>> run{
        {},
        criterion_1,
        criterion_2,
        criterion_3,
        [] { suite_criterion(4, "occ-stable-always", 120.0, [](const SuiteReport&) { return true; }); },
        criterion_5,
        [] { suite_criterion(6, "gen-ml-stable", 120.0, [](const SuiteReport&) { return true; }); },
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    };
    int ran = 0;
    for (int id = 1; id <= 10; ++id)
        if (want[id]) {
            run[id]();
            ++ran;
        }
    std::printf("%d of %d criteria failed\n", failures, ran);
    return failures ? 1 : 0;
}
