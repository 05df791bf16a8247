#include "rewcat/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace rewcat {

std::vector<RuleId> base_rules(const Presentation& pres) {
    std::vector<RuleId> out(pres.num_base_rules());
    for (int i = 0; i < pres.num_base_rules(); ++i) out[i] = i;
    return out;
}

std::vector<RuleId> good_rules(const Presentation& pres) {
    std::vector<RuleId> out;
    for (RuleId r = 0; r < pres.num_base_rules(); ++r)
        if (is_good(pres, r)) out.push_back(r);
    return out;
}

std::vector<RuleId> bad_rules(const Presentation& pres) {
    std::vector<RuleId> out;
    for (RuleId r = 0; r < pres.num_base_rules(); ++r)
        if (!is_good(pres, r)) out.push_back(r);
    return out;
}

std::optional<Step> make_step(const Presentation& pres, const TypedString& s, size_t pos,
                              RuleId rule) {
    const TypedString& lhs = pres.rule_lhs(rule);
    if (pos + lhs.size() > s.size()) return std::nullopt;
    if (lhs.empty()) {
        if (pres.boundary_cell(s, pos) != lhs.base) return std::nullopt;
    } else {
        for (size_t i = 0; i < lhs.size(); ++i)
            if (s.gens[pos + i] != lhs.gens[i]) return std::nullopt;
    }
    Step st;
    st.rule = rule;
    st.left = pres.substring(s, 0, pos);
    st.right = pres.substring(s, pos + lhs.size(), s.size() - pos - lhs.size());
    return st;
}

std::vector<Step> find_redexes(const Presentation& pres, const TypedString& s,
                               const std::vector<RuleId>& rules) {
    std::vector<Step> out;
    for (size_t pos = 0; pos <= s.size(); ++pos) {
        for (RuleId r : rules) {
            if (auto st = make_step(pres, s, pos, r)) out.push_back(std::move(*st));
        }
    }
    return out;
}

bool measure_less(const Presentation& pres, const TypedString& a, const TypedString& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        int ra = pres.precedence[a.gens[i]];
        int rb = pres.precedence[b.gens[i]];
        if (ra != rb) return ra < rb;
    }
    return false;
}

TerminationResult check_termination(const Presentation& pres) {
    return check_termination(pres, base_rules(pres));
}

TerminationResult check_termination(const Presentation& pres, const std::vector<RuleId>& rules) {
    for (RuleId r : rules) {
        if (!is_good(pres, r)) continue;
        if (!measure_less(pres, pres.rule_rhs(r), pres.rule_lhs(r)))
            return {false, pres.rule_name(r)};
    }
    return {};
}

Derivation normalize_good(const Presentation& pres, const TypedString& s, Strategy strategy) {
    return normalize_good(pres, s, good_rules(pres), strategy);
}

Derivation normalize_good(const Presentation& pres, const TypedString& s,
                          const std::vector<RuleId>& goods, Strategy strategy) {
    Derivation d;
    d.source = s;
    TypedString cur = s;
    for (;;) {
        std::vector<Step> redexes = find_redexes(pres, cur, goods);
        if (redexes.empty()) break;
        const Step& st =
            strategy == Strategy::LeftmostFirst ? redexes.front() : redexes.back();
        cur = apply_step(pres, st);
        d.steps.push_back(st);
    }
    return d;
}

FindResult find_derivation(const Presentation& pres, const TypedString& s,
                           const TypedString& target, const SearchBudget& budget) {
    return find_derivation(pres, s, target, base_rules(pres), budget);
}

namespace {

Derivation concat_derivations(const Derivation& a, const Derivation& b) {
    Derivation d = a;
    d.steps.insert(d.steps.end(), b.steps.begin(), b.steps.end());
    return d;
}

}  // namespace

FindResult find_derivation(const Presentation& pres, const TypedString& s,
                           const TypedString& target, const std::vector<RuleId>& rules,
                           const SearchBudget& budget) {
    if (pres.dom(s) != pres.dom(target) || pres.cod(s) != pres.cod(target))
        return {std::nullopt, "endpoints differ: not in the same hom"};
    if (s == target) return {Derivation{s, {}}, ""};

    std::vector<RuleId> goods, bads;
    for (RuleId r : rules) (is_good(pres, r) ? goods : bads).push_back(r);
    size_t cap = std::max(s.size(), target.size()) + budget.max_extra_len;

    // Phase 1: a few bad insertions, then good normalization. This is the
    // shape the terminality existence arguments take (introduce the missing
    // generators, push them into place, collapse).
    {
        std::map<TypedString, Derivation> seen;
        std::deque<TypedString> work;
        seen[s] = Derivation{s, {}};
        work.push_back(s);
        int bad_layers = 0;
        size_t layer_end = 1;
        size_t processed = 0;
        while (!work.empty() && bad_layers <= budget.max_extra_len) {
            TypedString cur = work.front();
            work.pop_front();
            ++processed;
            Derivation prefix = seen[cur];
            Derivation norm = normalize_good(pres, cur, goods, Strategy::LeftmostFirst);
            if (pres.target_of(norm) == target)
                return {concat_derivations(prefix, norm), ""};
            for (const Step& st : find_redexes(pres, cur, bads)) {
                TypedString nxt = apply_step(pres, st);
                if (nxt.size() > cap || seen.count(nxt)) continue;
                Derivation d = prefix;
                d.steps.push_back(st);
                seen.emplace(nxt, std::move(d));
                work.push_back(nxt);
            }
            if (processed == layer_end) {
                ++bad_layers;
                layer_end += work.size();
            }
        }
    }

    // Phase 2: bounded breadth-first search over all rules.
    std::map<TypedString, Derivation> seen;
    std::deque<std::pair<TypedString, int>> work;
    seen[s] = Derivation{s, {}};
    work.push_back({s, 0});
    int nodes = 0;
    std::string bound_hit = "depth " + std::to_string(budget.max_depth);
    while (!work.empty()) {
        auto [cur, depth] = work.front();
        work.pop_front();
        if (++nodes > budget.max_nodes) {
            bound_hit = "node limit " + std::to_string(budget.max_nodes);
            break;
        }
        if (depth >= budget.max_depth) continue;
        for (const Step& st : find_redexes(pres, cur, rules)) {
            TypedString nxt = apply_step(pres, st);
            if (nxt.size() > cap || seen.count(nxt)) continue;
            Derivation d = seen[cur];
            d.steps.push_back(st);
            if (nxt == target) return {std::move(d), ""};
            seen.emplace(nxt, std::move(d));
            work.push_back({nxt, depth + 1});
        }
    }
    return {std::nullopt, "not found within " + bound_hit + ", max length " +
                              std::to_string(cap)};
}

std::vector<TypedString> enumerate_strings(const Presentation& pres, const Universe& uni,
                                           int max_len) {
    std::vector<TypedString> out;
    for (auto& word : enumerate_words(uni.dfa, max_len)) {
        TypedString s;
        s.gens = word;
        if (s.gens.empty()) s.base = pres.cells.empty() ? -1 : 0;
        out.push_back(std::move(s));
    }
    return out;
}

int inversions(const Presentation& pres, const TypedString& s) {
    int count = 0;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (pres.precedence[s.gens[i]] > pres.precedence[s.gens[j]]) ++count;
    return count;
}

}  // namespace rewcat
