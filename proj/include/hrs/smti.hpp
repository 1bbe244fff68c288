#ifndef HRS_SMTI_HPP
#define HRS_SMTI_HPP

// Stable marriage with ties and incomplete lists, restricted to the form used
// by the reductions: women rank at most three men strictly; each man either
// ranks exactly three women strictly or is indifferent between exactly two.

#include "hrs/core.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hrs {

inline constexpr std::uint32_t no_partner = std::numeric_limits<std::uint32_t>::max();

struct SmtiMan {
    std::string label;
    bool tied = false;                 // women[0] ~ women[1]
    std::vector<std::uint32_t> women;  // strict order unless tied
    std::size_t line = 0;
};

struct SmtiWoman {
    std::string label;
    std::vector<std::uint32_t> men;
    std::size_t line = 0;
};

struct SmtiInstance {
    std::vector<SmtiMan> men;
    std::vector<SmtiWoman> women;

    /// Rank of w for m; both tied women share rank 0.
    std::optional<std::uint32_t> man_rank(std::uint32_t m, std::uint32_t w) const {
        const auto& list = men[m].women;
        auto it = std::find(list.begin(), list.end(), w);
        if (it == list.end()) return std::nullopt;
        return men[m].tied ? 0u : static_cast<std::uint32_t>(it - list.begin());
    }
    std::optional<std::uint32_t> woman_rank(std::uint32_t w, std::uint32_t m) const {
        const auto& list = women[w].men;
        auto it = std::find(list.begin(), list.end(), m);
        if (it == list.end()) return std::nullopt;
        return static_cast<std::uint32_t>(it - list.begin());
    }
    bool acceptable(std::uint32_t m, std::uint32_t w) const {
        return man_rank(m, w).has_value() && woman_rank(w, m).has_value();
    }
    std::optional<std::uint32_t> find_man(std::string_view label) const {
        for (std::uint32_t i = 0; i < men.size(); ++i)
            if (men[i].label == label) return i;
        return std::nullopt;
    }
    std::optional<std::uint32_t> find_woman(std::string_view label) const {
        for (std::uint32_t i = 0; i < women.size(); ++i)
            if (women[i].label == label) return i;
        return std::nullopt;
    }

    friend bool operator==(const SmtiInstance& x, const SmtiInstance& y) {
        auto same_men = std::equal(x.men.begin(), x.men.end(), y.men.begin(), y.men.end(), [](auto& a, auto& b) {
            return a.label == b.label && a.tied == b.tied && a.women == b.women;
        });
        auto same_women = std::equal(x.women.begin(), x.women.end(), y.women.begin(), y.women.end(),
                                     [](auto& a, auto& b) { return a.label == b.label && a.men == b.men; });
        return same_men && same_women;
    }
};

/// wife[m] is the woman matched to man m, or `no_partner`.
struct SmtiMatching {
    std::vector<std::uint32_t> wife;

    SmtiMatching() = default;
    explicit SmtiMatching(std::size_t men) : wife(men, no_partner) {}
    friend bool operator==(const SmtiMatching&, const SmtiMatching&) = default;
};

inline ValidationReport validate_csmti(const SmtiInstance& smti) {
    ValidationReport report;
    const auto n = smti.men.size();
    if (n != smti.women.size())
        report.add("instance", "number of men (" + std::to_string(n) + ") differs from number of women (" +
                                   std::to_string(smti.women.size()) + ")");
    std::unordered_set<std::string> labels;
    for (const auto& m : smti.men)
        if (!labels.insert("m:" + m.label).second || !detail::valid_label(m.label))
            report.add("man " + m.label, "duplicate or invalid id");
    for (const auto& w : smti.women)
        if (!labels.insert("w:" + w.label).second || !detail::valid_label(w.label))
            report.add("woman " + w.label, "duplicate or invalid id");

    for (std::uint32_t i = 0; i < smti.men.size(); ++i) {
        const auto& m = smti.men[i];
        const auto loc = "man " + m.label;
        std::unordered_set<std::uint32_t> seen(m.women.begin(), m.women.end());
        if (seen.size() != m.women.size()) report.add(loc, "woman listed twice");
        if (m.tied && m.women.size() != 2) report.add(loc, "tie must have length exactly two");
        if (!m.tied && m.women.size() != 3) report.add(loc, "strict list must have length exactly three");
        for (auto w : m.women) {
            if (w >= smti.women.size()) {
                report.add(loc, "unknown woman");
                continue;
            }
            if (!smti.woman_rank(w, i))
                report.add(loc, "non-mutual: lists " + smti.women[w].label + " who does not list " + m.label);
        }
    }
    for (std::uint32_t j = 0; j < smti.women.size(); ++j) {
        const auto& w = smti.women[j];
        const auto loc = "woman " + w.label;
        std::unordered_set<std::uint32_t> seen(w.men.begin(), w.men.end());
        if (seen.size() != w.men.size()) report.add(loc, "man listed twice");
        if (w.men.size() > 3) report.add(loc, "list longer than three");
        for (auto m : w.men) {
            if (m >= smti.men.size()) {
                report.add(loc, "unknown man");
                continue;
            }
            if (!smti.man_rank(m, j))
                report.add(loc, "non-mutual: lists " + smti.men[m].label + " who does not list " + w.label);
        }
    }
    return report;
}

/// Pairs (m, w) that strictly prefer each other to their partners.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> smti_blocking_pairs(const SmtiInstance& smti,
                                                                                  const SmtiMatching& mt) {
    std::vector<std::uint32_t> husband(smti.women.size(), no_partner);
    for (std::uint32_t m = 0; m < mt.wife.size(); ++m)
        if (mt.wife[m] != no_partner) husband[mt.wife[m]] = m;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t m = 0; m < smti.men.size(); ++m) {
        for (auto w : smti.men[m].women) {
            if (mt.wife[m] == w || !smti.acceptable(m, w)) continue;
            const bool man_wants =
                mt.wife[m] == no_partner || *smti.man_rank(m, w) < *smti.man_rank(m, mt.wife[m]);
            const bool woman_wants =
                husband[w] == no_partner || *smti.woman_rank(w, m) < *smti.woman_rank(w, husband[w]);
            if (man_wants && woman_wants) out.emplace_back(m, w);
        }
    }
    return out;
}

inline bool smti_is_matching(const SmtiInstance& smti, const SmtiMatching& mt) {
    if (mt.wife.size() != smti.men.size()) return false;
    std::vector<char> used(smti.women.size(), 0);
    for (std::uint32_t m = 0; m < mt.wife.size(); ++m) {
        const auto w = mt.wife[m];
        if (w == no_partner) continue;
        if (w >= smti.women.size() || used[w] || !smti.acceptable(m, w)) return false;
        used[w] = 1;
    }
    return true;
}

inline bool smti_is_stable(const SmtiInstance& smti, const SmtiMatching& mt) {
    return smti_is_matching(smti, mt) && smti_blocking_pairs(smti, mt).empty();
}

/// Every man and every woman is matched.
inline bool smti_is_complete(const SmtiInstance& smti, const SmtiMatching& mt) {
    return smti_is_matching(smti, mt) && smti.men.size() == smti.women.size() &&
           std::none_of(mt.wife.begin(), mt.wife.end(), [](auto w) { return w == no_partner; });
}

/// `.smti` text: `m <id> : w1 w2 w3`, `m <id> : ( w1 w2 )`, `w <id> : m1 m2 m3`,
/// with an optional `smti v1` header and `#` comments.
inline SmtiInstance parse_smti(std::string_view text) {
    struct Pending {
        std::vector<detail::Token> refs;
        std::size_t line;
    };
    SmtiInstance smti;
    std::vector<Pending> man_refs, woman_refs;
    const auto lines = detail::split_lines(text);
    bool first = true;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const auto lineno = n + 1;
        auto toks = detail::tokenize(lines[n]);
        if (toks.empty()) continue;
        if (first && toks[0].text == "smti") {
            if (toks.size() != 2 || toks[1].text != "v1") throw ParseError(lineno, toks[0].column, "expected 'smti v1'");
            first = false;
            continue;
        }
        first = false;
        if (toks[0].text != "m" && toks[0].text != "w")
            throw ParseError(lineno, toks[0].column, "expected 'm' or 'w', found '" + toks[0].text + "'");
        if (toks.size() < 3 || toks[2].text != ":")
            throw ParseError(lineno, toks.size() < 3 ? toks.back().column : toks[2].column, "expected '<id> :'");
        const auto& label = toks[1].text;
        if (toks[0].text == "w") {
            std::vector<detail::Token> refs(toks.begin() + 3, toks.end());
            for (const auto& r : refs)
                if (r.text == "(" || r.text == ")" || r.text == ":")
                    throw ParseError(lineno, r.column, "unexpected '" + r.text + "' in a woman's list");
            smti.women.push_back({label, {}, lineno});
            woman_refs.push_back({std::move(refs), lineno});
            continue;
        }
        SmtiMan man{label, false, {}, lineno};
        std::vector<detail::Token> refs;
        std::size_t i = 3;
        if (i < toks.size() && toks[i].text == "(") {
            man.tied = true;
            ++i;
            while (i < toks.size() && toks[i].text != ")") refs.push_back(toks[i++]);
            if (i == toks.size()) throw ParseError(lineno, toks.back().column, "unterminated tie");
            if (i + 1 != toks.size()) throw ParseError(lineno, toks[i + 1].column, "text after tie");
        } else {
            for (; i < toks.size(); ++i) {
                if (toks[i].text == "(" || toks[i].text == ")" || toks[i].text == ":")
                    throw ParseError(lineno, toks[i].column, "unexpected '" + toks[i].text + "'");
                refs.push_back(toks[i]);
            }
        }
        smti.men.push_back(std::move(man));
        man_refs.push_back({std::move(refs), lineno});
    }
    for (std::size_t m = 0; m < smti.men.size(); ++m)
        for (const auto& r : man_refs[m].refs) {
            auto w = smti.find_woman(r.text);
            if (!w) throw ParseError(man_refs[m].line, r.column, "unknown woman '" + r.text + "'");
            smti.men[m].women.push_back(*w);
        }
    for (std::size_t w = 0; w < smti.women.size(); ++w)
        for (const auto& r : woman_refs[w].refs) {
            auto m = smti.find_man(r.text);
            if (!m) throw ParseError(woman_refs[w].line, r.column, "unknown man '" + r.text + "'");
            smti.women[w].men.push_back(*m);
        }
    return smti;
}

inline std::string serialize_smti(const SmtiInstance& smti) {
    std::string out = "smti v1\n";
    for (const auto& m : smti.men) {
        out += "m " + m.label + " :";
        if (m.tied) out += " (";
        for (auto w : m.women) out += " " + smti.women[w].label;
        if (m.tied) out += " )";
        out += '\n';
    }
    for (const auto& w : smti.women) {
        out += "w " + w.label + " :";
        for (auto m : w.men) out += " " + smti.men[m].label;
        out += '\n';
    }
    return out;
}

}  // namespace hrs

#endif
