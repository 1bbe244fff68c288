// hrs: command-line front end.
//
// Exit status: 0 ok / property holds, 1 property fails, 2 usage error,
// 3 search budget exhausted, 4 I/O or parse error.

#include "hrs/hrs.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using hrs::Json;

enum Exit { ok = 0, fails = 1, usage = 2, exhausted = 3, io = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

// Machine output goes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::uint64_t default_max_nodes() {
    if (const char* env = std::getenv("HRS_MAX_NODES")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("HRS_MAX_NODES must be a positive integer");
        }
    }
    return hrs::SearchBudget{}.max_nodes;
}

// "4" or "1-6"
std::pair<long long, long long> parse_range(const std::string& text) {
    try {
        const auto dash = text.find('-', 1);
        if (dash == std::string::npos) {
            const auto v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, dash)), std::stoll(text.substr(dash + 1))};
    } catch (const std::exception&) {
        throw UsageError("expected a number or a range like 1-6, got '" + text + "'");
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// -- solve -------------------------------------------------------------------

struct SolveArgs {
    std::string file, ordering = "size-desc", partition, out;
    bool trace = false;
};

int run_solve(const SolveArgs& a) {
    const auto inst = hrs::parse_instance(read_file(a.file));
    hrs::OrderedPartition p;
    if (a.ordering == "size-desc") {
        p = hrs::size_descending_partition(inst);
    } else if (a.ordering == "detect") {
        auto found = hrs::detect_generalized_master_list(inst);
        if (!found) {
            std::cerr << "no generalized master list exists for this instance\n";
            return fails;
        }
        p = *found;
    } else {
        if (a.partition.empty()) throw UsageError("--ordering user needs --partition");
        p = hrs::parse_partition(inst, read_file(a.partition));
        if (auto report = hrs::validate_ordered_partition(inst, p, false); !report.ok()) {
            std::cerr << report.to_string();
            return fails;
        }
    }
    const auto trace = hrs::solve(inst, p);
    auto j = hrs::matching_to_json(inst, trace.final);
    j["partition"] = hrs::partition_to_json(inst, p);
    j["origin"] = hrs::to_string(p.origin);
    if (a.trace) j["trace"] = hrs::trace_to_json(inst, trace);
    emit(a.out, dump(j));
    return ok;
}

// -- verify ------------------------------------------------------------------

struct VerifyArgs {
    std::string file, matching, notion = "classic", out;
};

int run_verify(const VerifyArgs& a) {
    const auto inst = hrs::parse_instance(read_file(a.file));
    const auto m = hrs::parse_matching(inst, read_file(a.matching));
    const auto feasible = hrs::is_feasible(inst, m);
    Json j{{"notion", a.notion}, {"feasible", feasible.feasible}};
    if (!feasible.feasible) {
        j["reason"] = feasible.violation;
        emit(a.out, dump(j));
        return fails;
    }
    const auto witnesses = a.notion == "occupancy" ? hrs::find_occupancy_blocking_pairs(inst, m)
                                                    : hrs::find_blocking_pairs(inst, m);
    Json w = Json::array();
    for (const auto& x : witnesses) w.push_back(hrs::witness_to_json(inst, x));
    j["stable"] = witnesses.empty();
    j["a_perfect"] = hrs::is_a_perfect(inst, m);
    j["size"] = hrs::matching_size(inst, m);
    j["witnesses"] = w;
    emit(a.out, dump(j));
    return witnesses.empty() ? ok : fails;
}

// -- oracle ------------------------------------------------------------------

struct OracleArgs {
    std::string file, query, strategy = "plain", interface, out;
    std::uint64_t max_nodes = 0;
    std::size_t max_solutions = 0;
    long long timeout_ms = 0;
    bool all = false;
};

int run_oracle(const OracleArgs& a) {
    const auto inst = hrs::parse_instance(read_file(a.file));
    hrs::SearchBudget budget;
    budget.max_nodes = a.max_nodes ? a.max_nodes : default_max_nodes();
    if (a.max_solutions) budget.max_solutions = a.max_solutions;
    if (a.timeout_ms > 0) budget.deadline = std::chrono::milliseconds(a.timeout_ms);
    hrs::OracleOptions opt;
    opt.strategy = a.strategy == "decompose" ? hrs::Strategy::decompose : hrs::Strategy::plain;
    for (const auto& label : split_list(a.interface)) {
        auto h = inst.find_hospital(label);
        if (!h) throw UsageError("unknown interface hospital '" + label + "'");
        opt.interface.push_back(*h);
    }
    hrs::OracleResult r;
    if (a.query == "stable")
        r = hrs::stable_matchings(inst, budget, opt);
    else if (a.query == "occ-stable")
        r = hrs::occupancy_stable_matchings(inst, budget, opt);
    else if (a.query == "max-occ")
        r = hrs::max_occupancy_stable(inst, budget, opt);
    else
        r = hrs::exists_a_perfect_occupancy_stable(inst, budget, opt);
    Json j{{"query", a.query}};
    const auto body = hrs::oracle_to_json(inst, r, a.all);
    for (const auto& [k, v] : body.items()) j[k] = v;
    if (a.query == "a-perfect") j["exists"] = r.complete() ? Json(!r.matchings.empty()) : Json(nullptr);
    emit(a.out, dump(j));
    return r.complete() ? ok : exhausted;
}

// -- reduce ------------------------------------------------------------------

struct ReduceArgs {
    std::string file, target = "occ", out, index;
};

int run_reduce(const ReduceArgs& a) {
    const auto smti = hrs::parse_smti(read_file(a.file));
    const auto r = a.target == "occ" ? hrs::reduce_occ(smti) : hrs::reduce_stable(smti);
    emit(a.out, hrs::serialize_instance(r.instance));
    if (!a.index.empty()) write_file(a.index, dump(hrs::gadget_index_to_json(smti, r)));
    return ok;
}

// -- gen ---------------------------------------------------------------------

struct GenArgs {
    std::string family = "uniform", agents = "1-6", hospitals = "1-4", sizes = "1-3", caps = "1-6", tied = "0-3", out;
    double density = 0.6;
    std::size_t degree = 0, classes = 0, men = 3;
    std::uint64_t seed = 0;
};

int run_gen(const GenArgs& a) {
    hrs::GenParams p;
    p.family = a.family == "gen-ml" ? hrs::Family::gen_master_list
               : a.family == "csmti" ? hrs::Family::csmti
                                     : hrs::Family::uniform_random;
    const auto [amin, amax] = parse_range(a.agents);
    const auto [hmin, hmax] = parse_range(a.hospitals);
    const auto [tmin, tmax] = parse_range(a.tied);
    if (amin < 0 || hmin < 0 || tmin < 0) throw UsageError("counts must be non-negative");
    p.agents_min = static_cast<std::size_t>(amin);
    p.agents_max = static_cast<std::size_t>(amax);
    p.hospitals_min = static_cast<std::size_t>(hmin);
    p.hospitals_max = static_cast<std::size_t>(hmax);
    std::tie(p.size_min, p.size_max) = parse_range(a.sizes);
    std::tie(p.cap_min, p.cap_max) = parse_range(a.caps);
    p.tied_min = static_cast<std::size_t>(tmin);
    p.tied_max = static_cast<std::size_t>(tmax);
    p.density = a.density;
    p.degree = a.degree;
    p.classes = a.classes;
    p.men = a.men;
    p.seed = a.seed;
    try {
        if (p.family == hrs::Family::csmti)
            emit(a.out, hrs::serialize_smti(hrs::gen_csmti(p)));
        else
            emit(a.out, hrs::serialize_instance(hrs::generate(p)));
    } catch (const hrs::InvalidInput&) {
        throw;
    } catch (const hrs::Error& e) {
        throw UsageError(e.what());
    }
    return ok;
}

// -- bench -------------------------------------------------------------------

struct BenchArgs {
    std::size_t trials = 100, jobs = 1;
    std::uint64_t seed = 1, max_nodes = 0;
    std::string out;
};

int run_bench_ratio(const BenchArgs& a) {
    hrs::GenParams p;
    p.seed = a.seed;
    hrs::SearchBudget budget;
    budget.max_nodes = a.max_nodes ? a.max_nodes : default_max_nodes();
    const auto report = hrs::run_ratio_experiment(p, a.trials, budget, a.jobs);
    const auto summary = dump(hrs::ratio_summary(report));
    if (a.out.empty()) {
        std::cout << hrs::ratio_csv(report);
        std::cerr << summary;
    } else {
        write_file(a.out, hrs::ratio_csv(report));
        auto sidecar = a.out;
        if (sidecar.size() > 4 && sidecar.ends_with(".csv")) sidecar.resize(sidecar.size() - 4);
        write_file(sidecar + ".json", summary);
        std::cout << summary;
    }
    return report.violations ? fails : ok;
}

// -- test --------------------------------------------------------------------

struct TestArgs {
    std::string suite, out;
    std::size_t trials = 1000, jobs = 1;
    std::uint64_t seed = 1, max_nodes = 0;
};

int run_test(const TestArgs& a) {
    hrs::SearchBudget budget;
    budget.max_nodes = a.max_nodes ? a.max_nodes : default_max_nodes();
    std::vector<std::string> suites = a.suite == "all" ? hrs::suite_names() : std::vector<std::string>{a.suite};
    Json reports = Json::array();
    bool clean = true;
    for (const auto& name : suites) {
        hrs::SuiteReport r;
        try {
            r = hrs::run_property_suite(name, a.trials, a.seed, budget, a.jobs);
        } catch (const hrs::Error& e) {
            throw UsageError(e.what());
        }
        Json v = Json::array();
        for (const auto& x : r.violations)
            v.push_back(Json{{"trial", x.trial}, {"seed", x.seed}, {"message", x.message}, {"instance", x.instance}});
        reports.push_back(Json{{"suite", r.suite},
                               {"trials", r.trials},
                               {"budget_exhausted", r.exhausted},
                               {"violations", r.violations.size()},
                               {"failures", v}});
        clean = clean && r.ok();
        for (const auto& x : r.violations)
            std::cerr << name << ": trial " << x.trial << " (seed " << x.seed << "): " << x.message << "\n"
                      << x.instance;
    }
    emit(a.out, dump(a.suite == "all" ? reports : reports.front()));
    return clean ? ok : fails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hospital residents with sizes: solver, verifier, oracle, reductions and experiments"};
    app.require_subcommand(1);
    std::function<int()> action;

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Compute a matching by rounds over an ordered partition");
    solve->add_option("file", solve_args.file, "Instance (.hrs)")->required();
    solve->add_option("--ordering", solve_args.ordering, "size-desc, detect or user")
        ->check(CLI::IsMember({"size-desc", "detect", "user"}));
    solve->add_option("--partition", solve_args.partition, "Partition file for --ordering user");
    solve->add_flag("--trace", solve_args.trace, "Include the per-round trace");
    solve->add_option("--out", solve_args.out, "Write JSON here instead of stdout");
    solve->callback([&] { action = [&] { return run_solve(solve_args); }; });

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Check a matching for blocking pairs");
    verify->add_option("file", verify_args.file, "Instance (.hrs)")->required();
    verify->add_option("--matching", verify_args.matching, "Matching (.json)")->required();
    verify->add_option("--notion", verify_args.notion, "classic or occupancy")
        ->check(CLI::IsMember({"classic", "occupancy"}));
    verify->add_option("--out", verify_args.out, "Write JSON here instead of stdout");
    verify->callback([&] { action = [&] { return run_verify(verify_args); }; });

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive search on small instances");
    oracle->add_option("file", oracle_args.file, "Instance (.hrs)")->required();
    oracle->add_option("--query", oracle_args.query, "stable, occ-stable, max-occ or a-perfect")
        ->required()
        ->check(CLI::IsMember({"stable", "occ-stable", "max-occ", "a-perfect"}));
    oracle->add_option("--max-nodes", oracle_args.max_nodes, "Node budget (default $HRS_MAX_NODES or 10^7)");
    oracle->add_option("--max-solutions", oracle_args.max_solutions, "Stop after this many matchings");
    oracle->add_option("--timeout-ms", oracle_args.timeout_ms, "Wall-clock budget");
    oracle->add_option("--strategy", oracle_args.strategy, "plain or decompose")
        ->check(CLI::IsMember({"plain", "decompose"}));
    oracle->add_option("--interface", oracle_args.interface, "Comma-separated interface hospitals for decompose");
    oracle->add_flag("--all", oracle_args.all, "List every matching found");
    oracle->add_option("--out", oracle_args.out, "Write JSON here instead of stdout");
    oracle->callback([&] { action = [&] { return run_oracle(oracle_args); }; });

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "Reduce a CSMTI instance to an HRS instance");
    reduce->add_option("file", reduce_args.file, "Instance (.smti)")->required();
    reduce->add_option("--target", reduce_args.target, "occ or stable")->check(CLI::IsMember({"occ", "stable"}));
    reduce->add_option("--out", reduce_args.out, "Write the .hrs instance here instead of stdout");
    reduce->add_option("--index", reduce_args.index, "Write the gadget index (.json) here");
    reduce->callback([&] { action = [&] { return run_reduce(reduce_args); }; });

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
    gen->add_option("--family", gen_args.family, "uniform, gen-ml or csmti")
        ->check(CLI::IsMember({"uniform", "gen-ml", "csmti"}));
    gen->add_option("--agents", gen_args.agents, "Agent count or range (e.g. 1-6)");
    gen->add_option("--hospitals", gen_args.hospitals, "Hospital count or range");
    gen->add_option("--sizes", gen_args.sizes, "Agent size range");
    gen->add_option("--caps", gen_args.caps, "Capacity range");
    gen->add_option("--density", gen_args.density, "Edge probability in [0, 1]");
    gen->add_option("--degree", gen_args.degree, "Fixed number of hospitals per agent");
    gen->add_option("--classes", gen_args.classes, "Number of classes for gen-ml");
    gen->add_option("--men", gen_args.men, "Number of men (and women) for csmti");
    gen->add_option("--tied", gen_args.tied, "Number or range of tied men for csmti");
    gen->add_option("--seed", gen_args.seed, "Seed");
    gen->add_option("--out", gen_args.out, "Write the instance here instead of stdout");
    gen->callback([&] { action = [&] { return run_gen(gen_args); }; });

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Experiments");
    bench->require_subcommand(1);
    auto* ratio = bench->add_subcommand("ratio", "Approximation ratio of solve_occupancy against the oracle");
    ratio->add_option("--trials", bench_args.trials, "Random trials (the pinned instance is extra)");
    ratio->add_option("--seed", bench_args.seed, "Base seed; trial t uses seed xor t");
    ratio->add_option("--max-nodes", bench_args.max_nodes, "Oracle node budget per trial");
    ratio->add_option("--jobs", bench_args.jobs, "Worker threads");
    ratio->add_option("--out", bench_args.out, "CSV path; a .json summary is written beside it");
    ratio->callback([&] { action = [&] { return run_bench_ratio(bench_args); }; });

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "Run a randomized property suite");
    std::vector<std::string> suites = hrs::suite_names();
    suites.push_back("all");
    test->add_option("--suite", test_args.suite, "Suite name or 'all'")->required()->check(CLI::IsMember(suites));
    test->add_option("--trials", test_args.trials, "Trials");
    test->add_option("--seed", test_args.seed, "Base seed");
    test->add_option("--max-nodes", test_args.max_nodes, "Oracle node budget per trial");
    test->add_option("--jobs", test_args.jobs, "Worker threads");
    test->add_option("--out", test_args.out, "Write JSON here instead of stdout");
    test->callback([&] { action = [&] { return run_test(test_args); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    } catch (const hrs::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return io;
    } catch (const hrs::InvalidInput& e) {
        std::cerr << "invalid input:\n" << e.what();
        return io;
    } catch (const hrs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    }
}
