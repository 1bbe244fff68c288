#ifndef HRS_CORE_HPP
#define HRS_CORE_HPP

// Hospital residents with sizes: instance and matching model, validation,
// occupancy arithmetic and the line-oriented `.hrs` text format.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hrs {

using AgentIndex = std::uint32_t;
using HospitalIndex = std::uint32_t;

/// Marks an agent without a hospital. Ranked after every listed hospital.
inline constexpr HospitalIndex unmatched = std::numeric_limits<HospitalIndex>::max();

struct Edge {
    AgentIndex agent;
    HospitalIndex hospital;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

enum class Severity { error, warning };

struct Issue {
    Severity severity = Severity::error;
    std::string location;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> issues;

    bool ok() const { return issues.empty(); }
    void add(std::string location, std::string message, Severity severity = Severity::error) {
        issues.push_back({severity, std::move(location), std::move(message)});
    }
    void append(const ValidationReport& other) {
        issues.insert(issues.end(), other.issues.begin(), other.issues.end());
    }
    bool mentions(std::string_view needle) const {
        return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) {
            return i.message.find(needle) != std::string::npos;
        });
    }
    std::string to_string() const {
        std::ostringstream out;
        for (const auto& i : issues) {
            out << (i.severity == Severity::error ? "error" : "warning");
            if (!i.location.empty()) out << " [" << i.location << "]";
            out << ": " << i.message << '\n';
        }
        return out.str();
    }
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(ValidationReport report)
        : Error(report.to_string()), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// Label-level description of an instance, possibly violating the model
// invariants. `Instance::from_draft` is the only way to an `Instance`.
struct AgentDraft {
    std::string label;
    long long size = 1;
    std::vector<std::string> prefs;
    std::size_t line = 0;
};

struct HospitalDraft {
    std::string label;
    long long capacity = 1;
    std::vector<std::string> prefs;
    std::size_t line = 0;
};

struct InstanceDraft {
    std::vector<AgentDraft> agents;
    std::vector<HospitalDraft> hospitals;
};

namespace detail {

inline std::string where(std::string_view kind, const std::string& label, std::size_t line) {
    std::string loc = std::string(kind) + " " + label;
    if (line != 0) loc += " (line " + std::to_string(line) + ")";
    return loc;
}

inline bool valid_label(std::string_view label) {
    if (label.empty() || label.front() == '#') return false;
    return std::none_of(label.begin(), label.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ':' || c == '(' || c == ')';
    });
}

}  // namespace detail

/// Reports every violated model invariant. Empty iff the draft describes a
/// valid instance.
inline ValidationReport validate(const InstanceDraft& draft) {
    ValidationReport report;
    std::unordered_map<std::string, std::size_t> agent_ids, hospital_ids;

    for (std::size_t i = 0; i < draft.agents.size(); ++i) {
        const auto& a = draft.agents[i];
        const auto loc = detail::where("agent", a.label, a.line);
        if (!detail::valid_label(a.label)) report.add(loc, "invalid label '" + a.label + "'");
        if (!agent_ids.emplace(a.label, i).second) report.add(loc, "duplicate agent id '" + a.label + "'");
        if (a.size < 1) report.add(loc, "non-positive size " + std::to_string(a.size));
    }
    for (std::size_t i = 0; i < draft.hospitals.size(); ++i) {
        const auto& h = draft.hospitals[i];
        const auto loc = detail::where("hospital", h.label, h.line);
        if (!detail::valid_label(h.label)) report.add(loc, "invalid label '" + h.label + "'");
        if (!hospital_ids.emplace(h.label, i).second)
            report.add(loc, "duplicate hospital id '" + h.label + "'");
        if (h.capacity < 1) report.add(loc, "non-positive capacity " + std::to_string(h.capacity));
    }

    std::unordered_set<std::string> agent_edges;  // "a\nh"
    for (const auto& a : draft.agents) {
        const auto loc = detail::where("agent", a.label, a.line);
        std::unordered_set<std::string> seen;
        for (const auto& h : a.prefs) {
            if (!seen.insert(h).second) report.add(loc, "preference list not strict: '" + h + "' repeated");
            if (!hospital_ids.count(h)) report.add(loc, "dangling reference to hospital '" + h + "'");
            agent_edges.insert(a.label + '\n' + h);
        }
    }
    std::unordered_set<std::string> hospital_edges;
    for (const auto& h : draft.hospitals) {
        const auto loc = detail::where("hospital", h.label, h.line);
        std::unordered_set<std::string> seen;
        for (const auto& a : h.prefs) {
            if (!seen.insert(a).second) report.add(loc, "preference list not strict: '" + a + "' repeated");
            if (!agent_ids.count(a)) {
                report.add(loc, "dangling reference to agent '" + a + "'");
                continue;
            }
            hospital_edges.insert(a + '\n' + h.label);
            if (!agent_edges.count(a + '\n' + h.label))
                report.add(loc, "non-mutual edge: " + h.label + " lists " + a + " but " + a + " does not list " +
                                    h.label);
        }
    }
    for (const auto& a : draft.agents) {
        for (const auto& h : a.prefs) {
            if (hospital_ids.count(h) && !hospital_edges.count(a.label + '\n' + h))
                report.add(detail::where("agent", a.label, a.line),
                           "non-mutual edge: " + a.label + " lists " + h + " but " + h + " does not list " +
                               a.label);
        }
    }
    return report;
}

/// Immutable, validated instance. Agents and hospitals are addressed by dense
/// indices in input order; labels are kept for I/O.
class Instance {
public:
    Instance() = default;

    static Instance from_draft(const InstanceDraft& draft) {
        if (auto report = validate(draft); !report.ok()) throw InvalidInput(std::move(report));

        Instance inst;
        const auto na = draft.agents.size();
        const auto nh = draft.hospitals.size();
        inst.agent_labels_.reserve(na);
        inst.sizes_.reserve(na);
        for (const auto& a : draft.agents) {
            inst.agent_index_.emplace(a.label, static_cast<AgentIndex>(inst.agent_labels_.size()));
            inst.agent_labels_.push_back(a.label);
            inst.sizes_.push_back(static_cast<int>(a.size));
        }
        for (const auto& h : draft.hospitals) {
            inst.hospital_index_.emplace(h.label, static_cast<HospitalIndex>(inst.hospital_labels_.size()));
            inst.hospital_labels_.push_back(h.label);
            inst.capacities_.push_back(static_cast<int>(h.capacity));
        }
        inst.agent_prefs_.resize(na);
        inst.hospital_prefs_.resize(nh);
        for (std::size_t a = 0; a < na; ++a)
            for (const auto& h : draft.agents[a].prefs) inst.agent_prefs_[a].push_back(inst.hospital_index_.at(h));
        for (std::size_t h = 0; h < nh; ++h)
            for (const auto& a : draft.hospitals[h].prefs) inst.hospital_prefs_[h].push_back(inst.agent_index_.at(a));
        inst.index_positions();
        return inst;
    }

    std::size_t agent_count() const { return agent_labels_.size(); }
    std::size_t hospital_count() const { return hospital_labels_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    int size(AgentIndex a) const { return sizes_[a]; }
    int capacity(HospitalIndex h) const { return capacities_[h]; }
    const std::string& agent_label(AgentIndex a) const { return agent_labels_[a]; }
    const std::string& hospital_label(HospitalIndex h) const { return hospital_labels_[h]; }

    std::optional<AgentIndex> find_agent(std::string_view label) const {
        auto it = agent_index_.find(std::string(label));
        if (it == agent_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<HospitalIndex> find_hospital(std::string_view label) const {
        auto it = hospital_index_.find(std::string(label));
        if (it == hospital_index_.end()) return std::nullopt;
        return it->second;
    }
    AgentIndex agent(std::string_view label) const {
        if (auto a = find_agent(label)) return *a;
        throw Error("unknown agent id '" + std::string(label) + "'");
    }
    HospitalIndex hospital(std::string_view label) const {
        if (auto h = find_hospital(label)) return *h;
        throw Error("unknown hospital id '" + std::string(label) + "'");
    }

    std::span<const HospitalIndex> agent_prefs(AgentIndex a) const { return agent_prefs_[a]; }
    std::span<const AgentIndex> hospital_prefs(HospitalIndex h) const { return hospital_prefs_[h]; }

    /// For agent a's i-th listed hospital, the position of a in that hospital's list.
    std::span<const std::uint32_t> position_at_hospitals(AgentIndex a) const { return mirror_at_hospital_[a]; }
    /// For hospital h's p-th listed agent, the position of h in that agent's list.
    std::span<const std::uint32_t> position_at_agents(HospitalIndex h) const { return mirror_at_agent_[h]; }

    /// Position of h in a's list, or nullopt when not acceptable.
    std::optional<std::uint32_t> agent_rank(AgentIndex a, HospitalIndex h) const {
        return lookup(agent_lookup_[a], h);
    }
    /// Position of a in h's list, or nullopt when not acceptable.
    std::optional<std::uint32_t> hospital_rank(HospitalIndex h, AgentIndex a) const {
        return lookup(hospital_lookup_[h], a);
    }
    bool acceptable(AgentIndex a, HospitalIndex h) const { return agent_rank(a, h).has_value(); }

    /// a ≻_h b
    bool hospital_prefers(HospitalIndex h, AgentIndex a, AgentIndex b) const {
        return *hospital_rank(h, a) < *hospital_rank(h, b);
    }
    /// h ≻_a g, where `unmatched` ranks last.
    bool agent_prefers(AgentIndex a, HospitalIndex h, HospitalIndex g) const {
        if (h == g || h == unmatched) return false;
        if (g == unmatched) return true;
        return *agent_rank(a, h) < *agent_rank(a, g);
    }

    int max_size() const {
        return sizes_.empty() ? 0 : *std::max_element(sizes_.begin(), sizes_.end());
    }

    InstanceDraft to_draft() const {
        InstanceDraft d;
        for (std::size_t a = 0; a < agent_count(); ++a) {
            AgentDraft ad{agent_labels_[a], sizes_[a], {}, 0};
            for (auto h : agent_prefs_[a]) ad.prefs.push_back(hospital_labels_[h]);
            d.agents.push_back(std::move(ad));
        }
        for (std::size_t h = 0; h < hospital_count(); ++h) {
            HospitalDraft hd{hospital_labels_[h], capacities_[h], {}, 0};
            for (auto a : hospital_prefs_[h]) hd.prefs.push_back(agent_labels_[a]);
            d.hospitals.push_back(std::move(hd));
        }
        return d;
    }

    friend bool operator==(const Instance& x, const Instance& y) {
        return x.agent_labels_ == y.agent_labels_ && x.hospital_labels_ == y.hospital_labels_ &&
               x.sizes_ == y.sizes_ && x.capacities_ == y.capacities_ && x.agent_prefs_ == y.agent_prefs_ &&
               x.hospital_prefs_ == y.hospital_prefs_;
    }

private:
    using Lookup = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (id, position), sorted by id

    static std::optional<std::uint32_t> lookup(const Lookup& table, std::uint32_t id) {
        auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(id, std::uint32_t{0}));
        if (it == table.end() || it->first != id) return std::nullopt;
        return it->second;
    }

    void index_positions() {
        const auto na = agent_count();
        const auto nh = hospital_count();
        agent_lookup_.assign(na, {});
        hospital_lookup_.assign(nh, {});
        mirror_at_hospital_.assign(na, {});
        mirror_at_agent_.assign(nh, {});
        edge_count_ = 0;
        for (std::size_t a = 0; a < na; ++a) {
            auto& t = agent_lookup_[a];
            for (std::uint32_t i = 0; i < agent_prefs_[a].size(); ++i) t.emplace_back(agent_prefs_[a][i], i);
            std::sort(t.begin(), t.end());
            edge_count_ += agent_prefs_[a].size();
        }
        for (std::size_t h = 0; h < nh; ++h) {
            auto& t = hospital_lookup_[h];
            for (std::uint32_t p = 0; p < hospital_prefs_[h].size(); ++p) t.emplace_back(hospital_prefs_[h][p], p);
            std::sort(t.begin(), t.end());
        }
        // Bucket agent entries by hospital, then resolve positions with one
        // scratch array per hospital: O(m) overall.
        std::vector<std::vector<std::pair<AgentIndex, std::uint32_t>>> incoming(nh);
        for (std::size_t a = 0; a < na; ++a) {
            mirror_at_hospital_[a].resize(agent_prefs_[a].size());
            for (std::uint32_t i = 0; i < agent_prefs_[a].size(); ++i)
                incoming[agent_prefs_[a][i]].emplace_back(static_cast<AgentIndex>(a), i);
        }
        std::vector<std::uint32_t> scratch(na, 0);
        for (std::size_t h = 0; h < nh; ++h) {
            for (std::uint32_t p = 0; p < hospital_prefs_[h].size(); ++p) scratch[hospital_prefs_[h][p]] = p;
            mirror_at_agent_[h].resize(hospital_prefs_[h].size());
            for (auto [a, i] : incoming[h]) {
                mirror_at_hospital_[a][i] = scratch[a];
                mirror_at_agent_[h][scratch[a]] = i;
            }
        }
    }

    std::vector<std::string> agent_labels_;
    std::vector<std::string> hospital_labels_;
    std::vector<int> sizes_;
    std::vector<int> capacities_;
    std::vector<std::vector<HospitalIndex>> agent_prefs_;
    std::vector<std::vector<AgentIndex>> hospital_prefs_;
    std::vector<std::vector<std::uint32_t>> mirror_at_hospital_;
    std::vector<std::vector<std::uint32_t>> mirror_at_agent_;
    std::vector<Lookup> agent_lookup_;
    std::vector<Lookup> hospital_lookup_;
    std::unordered_map<std::string, AgentIndex> agent_index_;
    std::unordered_map<std::string, HospitalIndex> hospital_index_;
    std::size_t edge_count_ = 0;
};

/// Partial assignment of agents to hospitals. Feasibility is a property
/// checked against an instance, not an invariant of the type.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::size_t agent_count) : assigned_(agent_count, unmatched) {}

    std::size_t agent_count() const { return assigned_.size(); }
    HospitalIndex operator[](AgentIndex a) const { return assigned_[a]; }
    HospitalIndex hospital_of(AgentIndex a) const { return assigned_[a]; }
    bool is_matched(AgentIndex a) const { return assigned_[a] != unmatched; }
    bool contains(Edge e) const { return e.agent < assigned_.size() && assigned_[e.agent] == e.hospital; }

    void assign(AgentIndex a, HospitalIndex h) { assigned_[a] = h; }
    void unassign(AgentIndex a) { assigned_[a] = unmatched; }

    std::vector<AgentIndex> agents_at(HospitalIndex h) const {
        std::vector<AgentIndex> out;
        for (AgentIndex a = 0; a < assigned_.size(); ++a)
            if (assigned_[a] == h) out.push_back(a);
        return out;
    }

    /// Matched pairs in agent order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (AgentIndex a = 0; a < assigned_.size(); ++a)
            if (assigned_[a] != unmatched) out.push_back({a, assigned_[a]});
        return out;
    }

    std::size_t matched_count() const {
        return static_cast<std::size_t>(
            std::count_if(assigned_.begin(), assigned_.end(), [](auto h) { return h != unmatched; }));
    }

    const std::vector<HospitalIndex>& raw() const { return assigned_; }

    friend bool operator==(const Matching&, const Matching&) = default;
    friend auto operator<=>(const Matching&, const Matching&) = default;

private:
    std::vector<HospitalIndex> assigned_;
};

inline Matching make_matching(const Instance& inst, std::initializer_list<std::pair<std::string_view, std::string_view>> pairs) {
    Matching m(inst.agent_count());
    for (auto [a, h] : pairs) m.assign(inst.agent(a), inst.hospital(h));
    return m;
}

/// O_M(h) for every hospital.
inline std::vector<long long> occupancies(const Instance& inst, const Matching& m) {
    std::vector<long long> occ(inst.hospital_count(), 0);
    for (AgentIndex a = 0; a < m.agent_count(); ++a)
        if (m[a] != unmatched && m[a] < occ.size()) occ[m[a]] += inst.size(a);
    return occ;
}

inline long long occupancy(const Instance& inst, const Matching& m, HospitalIndex h) {
    if (h >= inst.hospital_count()) throw Error("unknown hospital index " + std::to_string(h));
    long long total = 0;
    for (AgentIndex a = 0; a < m.agent_count(); ++a)
        if (m[a] == h) total += inst.size(a);
    return total;
}

inline long long occupancy(const Instance& inst, const Matching& m, std::string_view hospital_label) {
    return occupancy(inst, m, inst.hospital(hospital_label));
}

/// s(M): total size of matched agents.
inline long long matching_size(const Instance& inst, const Matching& m) {
    long long total = 0;
    for (AgentIndex a = 0; a < m.agent_count(); ++a)
        if (m[a] != unmatched) total += inst.size(a);
    return total;
}

struct Feasibility {
    bool feasible = true;
    std::string violation;
    explicit operator bool() const { return feasible; }
};

inline Feasibility is_feasible(const Instance& inst, const Matching& m) {
    if (m.agent_count() != inst.agent_count())
        return {false, "matching covers " + std::to_string(m.agent_count()) + " agents, instance has " +
                           std::to_string(inst.agent_count())};
    for (AgentIndex a = 0; a < m.agent_count(); ++a) {
        const auto h = m[a];
        if (h == unmatched) continue;
        if (h >= inst.hospital_count())
            return {false, "agent " + inst.agent_label(a) + " assigned to unknown hospital index"};
        if (!inst.acceptable(a, h))
            return {false, "agent " + inst.agent_label(a) + " assigned to " + inst.hospital_label(h) +
                               ", which is not on its preference list"};
    }
    const auto occ = occupancies(inst, m);
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h)
        if (occ[h] > inst.capacity(h))
            return {false, "hospital " + inst.hospital_label(h) + " occupancy " + std::to_string(occ[h]) +
                               " exceeds capacity " + std::to_string(inst.capacity(h))};
    return {};
}

inline void require_feasible(const Instance& inst, const Matching& m) {
    if (auto f = is_feasible(inst, m); !f) throw Error("infeasible matching: " + f.violation);
}

// ---------------------------------------------------------------------------
// `.hrs` text format

namespace detail {

struct Token {
    std::string text;
    std::size_t column;
};

// Whitespace-separated tokens; ':' '(' ')' are always single tokens and '#'
// starts a comment.
inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == ':' || c == '(' || c == ')') {
            out.push_back({std::string(1, c), i + 1});
            ++i;
            continue;
        }
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != ':' &&
               line[i] != '(' && line[i] != ')' && line[i] != '#')
            ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

inline long long parse_integer(const Token& tok, std::size_t line) {
    const auto& s = tok.text;
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, tok.column, "expected an integer, found '" + s + "'");
    }
    if (pos != s.size()) throw ParseError(line, tok.column, "expected an integer, found '" + s + "'");
    return v;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

}  // namespace detail

/// Syntax-level parse; model invariants are left to `validate`.
inline InstanceDraft parse_draft(std::string_view text) {
    InstanceDraft draft;
    enum class Section { header, none, agents, hospitals } section = Section::header;
    const auto lines = detail::split_lines(text);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const auto lineno = n + 1;
        const auto toks = detail::tokenize(lines[n]);
        if (toks.empty()) continue;
        if (section == Section::header) {
            if (toks.size() != 2 || toks[0].text != "hrs" || toks[1].text != "v1")
                throw ParseError(lineno, toks[0].column, "expected header 'hrs v1'");
            section = Section::none;
            continue;
        }
        if (toks.size() == 2 && toks[1].text == ":" && (toks[0].text == "agents" || toks[0].text == "hospitals")) {
            section = toks[0].text == "agents" ? Section::agents : Section::hospitals;
            continue;
        }
        const bool is_agent = toks[0].text == "a";
        const bool is_hospital = toks[0].text == "h";
        if (!is_agent && !is_hospital)
            throw ParseError(lineno, toks[0].column, "expected 'a', 'h' or a section header, found '" + toks[0].text + "'");
        if (is_agent && section != Section::agents)
            throw ParseError(lineno, toks[0].column, "agent line outside 'agents:' section");
        if (is_hospital && section != Section::hospitals)
            throw ParseError(lineno, toks[0].column, "hospital line outside 'hospitals:' section");
        if (toks.size() < 4) {
            const auto col = toks.back().column + toks.back().text.size();
            throw ParseError(lineno, col, "expected '<label> <number> : <preferences>'");
        }
        if (toks[1].text == ":" || toks[1].text == "(" || toks[1].text == ")")
            throw ParseError(lineno, toks[1].column, "expected a label");
        if (toks[3].text != ":") throw ParseError(lineno, toks[3].column, "expected ':'");
        const auto number = detail::parse_integer(toks[2], lineno);
        std::vector<std::string> prefs;
        for (std::size_t i = 4; i < toks.size(); ++i) {
            if (toks[i].text == ":" || toks[i].text == "(" || toks[i].text == ")")
                throw ParseError(lineno, toks[i].column, "unexpected '" + toks[i].text + "'");
            prefs.push_back(toks[i].text);
        }
        if (is_agent)
            draft.agents.push_back({toks[1].text, number, std::move(prefs), lineno});
        else
            draft.hospitals.push_back({toks[1].text, number, std::move(prefs), lineno});
    }
    if (section == Section::header) throw ParseError(1, 1, "missing header 'hrs v1'");
    return draft;
}

inline Instance parse_instance(std::string_view text) { return Instance::from_draft(parse_draft(text)); }

inline std::string serialize_instance(const Instance& inst) {
    std::string out = "hrs v1\nagents:\n";
    for (AgentIndex a = 0; a < inst.agent_count(); ++a) {
        out += "a " + inst.agent_label(a) + " " + std::to_string(inst.size(a)) + " :";
        for (auto h : inst.agent_prefs(a)) out += " " + inst.hospital_label(h);
        out += '\n';
    }
    out += "hospitals:\n";
    for (HospitalIndex h = 0; h < inst.hospital_count(); ++h) {
        out += "h " + inst.hospital_label(h) + " " + std::to_string(inst.capacity(h)) + " :";
        for (auto a : inst.hospital_prefs(h)) out += " " + inst.agent_label(a);
        out += '\n';
    }
    return out;
}

}  // namespace hrs

#endif
