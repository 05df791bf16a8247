#include "rewcat/presentation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rewcat {

std::optional<CellId> Presentation::cell_id(const std::string& name) const {
    for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i].name == name) return static_cast<CellId>(i);
    return std::nullopt;
}

std::optional<GenId> Presentation::gen_id(const std::string& name) const {
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<GenId>(i);
    return std::nullopt;
}

std::optional<RuleId> Presentation::rule_id(const std::string& name) const {
    for (size_t i = 0; i < rules.size(); ++i)
        if (rules[i].name == name) return static_cast<RuleId>(i);
    for (size_t i = 0; i < derived_rules.size(); ++i)
        if (derived_rules[i].name == name) return num_base_rules() + static_cast<RuleId>(i);
    return std::nullopt;
}

const Universe* Presentation::universe(const std::string& name) const {
    for (const auto& u : universes)
        if (u.name == name) return &u;
    return nullptr;
}

bool Presentation::well_typed(const TypedString& s) const {
    if (s.empty()) return s.base >= 0 && s.base < static_cast<CellId>(cells.size());
    for (GenId g : s.gens)
        if (g < 0 || g >= static_cast<GenId>(gens.size())) return false;
    for (size_t i = 0; i + 1 < s.gens.size(); ++i)
        if (gens[s.gens[i]].dom != gens[s.gens[i + 1]].cod) return false;
    return true;
}

TypedString Presentation::substring(const TypedString& s, size_t from, size_t len) const {
    TypedString out;
    out.gens.assign(s.gens.begin() + from, s.gens.begin() + from + len);
    if (out.gens.empty()) out.base = boundary_cell(s, from);
    return out;
}

std::string Presentation::str(const TypedString& s) const {
    if (s.empty()) return "1_" + (s.base >= 0 ? cells[s.base].name : std::string("?"));
    std::string out;
    for (size_t i = 0; i < s.gens.size(); ++i) {
        if (i) out += ' ';
        out += gens[s.gens[i]].name;
    }
    return out;
}

TypedString Presentation::source_of(const Step& st) const {
    TypedString s = st.left;
    const TypedString& l = rule_lhs(st.rule);
    s.gens.insert(s.gens.end(), l.gens.begin(), l.gens.end());
    s.gens.insert(s.gens.end(), st.right.gens.begin(), st.right.gens.end());
    if (s.gens.empty()) s.base = l.empty() ? l.base : st.left.base;
    return s;
}

TypedString Presentation::target_of(const Step& st) const {
    TypedString s = st.left;
    const TypedString& r = rule_rhs(st.rule);
    s.gens.insert(s.gens.end(), r.gens.begin(), r.gens.end());
    s.gens.insert(s.gens.end(), st.right.gens.begin(), st.right.gens.end());
    if (s.gens.empty()) s.base = r.empty() ? r.base : st.left.base;
    return s;
}

TypedString Presentation::target_of(const Derivation& d) const {
    return d.steps.empty() ? d.source : target_of(d.steps.back());
}

bool Presentation::valid(const Step& st) const {
    if (st.rule < 0 || st.rule >= num_all_rules()) return false;
    const TypedString& l = rule_lhs(st.rule);
    if (!st.left.empty() && gens[st.left.gens.back()].dom != cod(l)) return false;
    if (!st.right.empty() && dom(l) != gens[st.right.gens.front()].cod) return false;
    if (st.left.empty() && st.left.base != cod(l)) return false;
    if (st.right.empty() && st.right.base != dom(l)) return false;
    return well_typed(source_of(st)) && well_typed(target_of(st));
}

bool Presentation::valid(const Derivation& d) const {
    if (!well_typed(d.source)) return false;
    TypedString cur = d.source;
    for (const Step& st : d.steps) {
        if (!valid(st) || source_of(st) != cur) return false;
        cur = target_of(st);
    }
    return true;
}

std::string Presentation::str(const Step& st) const {
    return "(" + (st.left.empty() ? std::string() : str(st.left)) + ") " + rule_name(st.rule) +
           " (" + (st.right.empty() ? std::string() : str(st.right)) + ")";
}

std::string Presentation::str(const Derivation& d) const {
    if (d.steps.empty()) return "id(" + str(d.source) + ")";
    std::string out = "{ ";
    for (size_t i = 0; i < d.steps.size(); ++i) {
        if (i) out += " ; ";
        out += str(d.steps[i]);
    }
    out += " }";
    return out;
}

std::optional<TypedString> validate_string(const Presentation& pres,
                                           const std::vector<std::string>& gen_names,
                                           const std::optional<std::string>& base_cell,
                                           std::string* error) {
    auto fail = [&](const std::string& msg) -> std::optional<TypedString> {
        if (error) *error = msg;
        return std::nullopt;
    };
    TypedString s;
    for (const auto& n : gen_names) {
        auto g = pres.gen_id(n);
        if (!g) return fail("unknown generator '" + n + "'");
        s.gens.push_back(*g);
    }
    if (s.empty()) {
        if (!base_cell) return fail("empty string requires a base cell");
        auto c = pres.cell_id(*base_cell);
        if (!c) return fail("unknown cell '" + *base_cell + "'");
        s.base = *c;
        return s;
    }
    for (size_t i = 0; i + 1 < s.gens.size(); ++i) {
        if (pres.gens[s.gens[i]].dom != pres.gens[s.gens[i + 1]].cod)
            return fail("ill-typed string: dom " + pres.gens[s.gens[i]].name + " != cod " +
                        pres.gens[s.gens[i + 1]].name + " at position " + std::to_string(i));
    }
    return s;
}

std::optional<TypedString> parse_string(const Presentation& pres, const std::string& text,
                                        std::string* error) {
    std::istringstream in(text);
    std::vector<std::string> names;
    std::string tok;
    while (in >> tok) names.push_back(tok);
    if (names.size() == 1 && names[0].rfind("1_", 0) == 0)
        return validate_string(pres, {}, names[0].substr(2), error);
    return validate_string(pres, names, std::nullopt, error);
}

std::optional<TypedString> concat(const Presentation& pres, const TypedString& s1,
                                  const TypedString& s2, std::string* error) {
    if (pres.dom(s1) != pres.cod(s2)) {
        if (error)
            *error = "boundary mismatch: dom(" + pres.str(s1) + ") != cod(" + pres.str(s2) + ")";
        return std::nullopt;
    }
    if (s1.empty()) return s2;
    if (s2.empty()) return s1;
    TypedString out = s1;
    out.gens.insert(out.gens.end(), s2.gens.begin(), s2.gens.end());
    return out;
}

std::optional<Derivation> make_derivation(const Presentation& pres,
                                          const PresentationBuilder::RawDerivation& raw,
                                          std::string* error) {
    if (raw.id_string) {
        auto s = parse_string(pres, *raw.id_string, error);
        if (!s) return std::nullopt;
        return Derivation{*s, {}};
    }
    Derivation d;
    bool first = true;
    for (const auto& rs : raw.steps) {
        auto rid = pres.rule_id(rs.rule);
        if (!rid) {
            if (error) *error = "unknown rule '" + rs.rule + "' in derivation";
            return std::nullopt;
        }
        const TypedString& lhs = pres.rule_lhs(*rid);
        Step st;
        st.rule = *rid;
        if (rs.left.empty()) {
            st.left = TypedString{{}, pres.cod(lhs)};
        } else {
            auto l = parse_string(pres, rs.left, error);
            if (!l) return std::nullopt;
            st.left = *l;
        }
        if (rs.right.empty()) {
            st.right = TypedString{{}, pres.dom(lhs)};
        } else {
            auto r = parse_string(pres, rs.right, error);
            if (!r) return std::nullopt;
            st.right = *r;
        }
        if (!pres.valid(st)) {
            if (error) *error = "ill-typed step " + pres.str(st);
            return std::nullopt;
        }
        TypedString src = pres.source_of(st);
        if (first) {
            d.source = src;
            first = false;
        } else if (pres.target_of(d) != src) {
            if (error)
                *error = "steps do not compose: expected source " + pres.str(pres.target_of(d)) +
                         ", got " + pres.str(src);
            return std::nullopt;
        }
        d.steps.push_back(std::move(st));
    }
    if (first) {
        if (error) *error = "derivation with no steps requires id(STR) form";
        return std::nullopt;
    }
    return d;
}

PresentationBuilder& PresentationBuilder::cell(const std::string& name) {
    cells_.push_back(name);
    return *this;
}

PresentationBuilder& PresentationBuilder::gen(const std::string& name, const std::string& dom,
                                              const std::string& cod) {
    gens_.emplace_back(name, dom, cod);
    return *this;
}

PresentationBuilder& PresentationBuilder::rule(const std::string& name, const std::string& lhs,
                                               const std::string& rhs) {
    rules_.push_back({name, lhs, rhs});
    return *this;
}

PresentationBuilder& PresentationBuilder::derived_rule(const std::string& name,
                                                       const std::string& lhs,
                                                       const std::string& rhs,
                                                       const RawDerivation& body) {
    derived_.push_back({name, lhs, rhs, body});
    return *this;
}

PresentationBuilder& PresentationBuilder::equation(const std::string& name,
                                                   const RawDerivation& left,
                                                   const RawDerivation& right) {
    equations_.push_back({name, left, right});
    return *this;
}

PresentationBuilder& PresentationBuilder::universe(const std::string& name,
                                                   const std::string& pattern) {
    universes_.push_back({name, pattern});
    return *this;
}

PresentationBuilder& PresentationBuilder::precedence(const std::vector<std::string>& gen_names) {
    precedence_ = gen_names;
    return *this;
}

BuildResult PresentationBuilder::build() const {
    BuildResult res;
    Presentation pres;
    auto err = [&](const std::string& where, const std::string& msg) {
        res.errors.push_back({where, msg});
    };

    for (const auto& c : cells_) {
        if (pres.cell_id(c)) {
            err(c, "duplicate cell name");
            continue;
        }
        pres.cells.push_back({c});
    }
    for (const auto& [name, dom, cod] : gens_) {
        if (pres.gen_id(name)) {
            err(name, "duplicate generator name");
            continue;
        }
        auto d = pres.cell_id(dom), c = pres.cell_id(cod);
        if (!d) err(name, "unknown cell '" + dom + "'");
        if (!c) err(name, "unknown cell '" + cod + "'");
        if (d && c) pres.gens.push_back({name, *d, *c});
    }

    // Default precedence: declaration order.
    pres.precedence.resize(pres.gens.size());
    std::iota(pres.precedence.begin(), pres.precedence.end(), 0);
    if (!precedence_.empty()) {
        if (precedence_.size() != pres.gens.size()) {
            err("precedence", "precedence must list every generator exactly once");
        } else {
            bool ok = true;
            for (size_t rank = 0; rank < precedence_.size(); ++rank) {
                auto g = pres.gen_id(precedence_[rank]);
                if (!g) {
                    err("precedence", "unknown generator '" + precedence_[rank] + "'");
                    ok = false;
                    break;
                }
                pres.precedence[*g] = static_cast<int>(rank);
            }
            if (ok) {
                std::vector<int> seen(pres.gens.size(), 0);
                for (int r : pres.precedence) seen[r]++;
                for (int c : seen)
                    if (c != 1) err("precedence", "precedence is not a total order");
            }
        }
    }

    std::string msg;
    for (const auto& r : rules_) {
        if (pres.rule_id(r.name)) {
            err(r.name, "duplicate rule name");
            continue;
        }
        auto lhs = parse_string(pres, r.lhs, &msg);
        if (!lhs) {
            err(r.name, "ill-typed lhs: " + msg);
            continue;
        }
        auto rhs = parse_string(pres, r.rhs, &msg);
        if (!rhs) {
            err(r.name, "ill-typed rhs: " + msg);
            continue;
        }
        if (pres.dom(*lhs) != pres.dom(*rhs) || pres.cod(*lhs) != pres.cod(*rhs)) {
            err(r.name, "rule endpoint mismatch: lhs and rhs are not parallel");
            continue;
        }
        pres.rules.push_back({r.name, *lhs, *rhs});
    }

    for (const auto& dr : derived_) {
        if (pres.rule_id(dr.name)) {
            err(dr.name, "duplicate rule name");
            continue;
        }
        auto lhs = parse_string(pres, dr.lhs, &msg);
        auto rhs = lhs ? parse_string(pres, dr.rhs, &msg) : std::nullopt;
        if (!lhs || !rhs) {
            err(dr.name, "ill-typed side: " + msg);
            continue;
        }
        // Bodies may reference base rules and previously defined derived rules
        // only, so derived definitions cannot be cyclic.
        auto body = make_derivation(pres, dr.body, &msg);
        if (!body) {
            err(dr.name, msg);
            continue;
        }
        if (body->source != *lhs || pres.target_of(*body) != *rhs) {
            err(dr.name, "body endpoints do not match declared lhs => rhs");
            continue;
        }
        pres.derived_rules.push_back({dr.name, *lhs, *rhs, std::move(*body)});
    }

    for (const auto& e : equations_) {
        auto l = make_derivation(pres, e.left, &msg);
        if (!l) {
            err(e.name, msg);
            continue;
        }
        auto r = make_derivation(pres, e.right, &msg);
        if (!r) {
            err(e.name, msg);
            continue;
        }
        if (l->source != r->source || pres.target_of(*l) != pres.target_of(*r)) {
            err(e.name, "equation not parallel");
            continue;
        }
        pres.equations.push_back({e.name, std::move(*l), std::move(*r)});
    }

    std::vector<std::string> names;
    for (const auto& g : pres.gens) names.push_back(g.name);
    for (const auto& u : universes_) {
        Universe uni;
        uni.name = u.name;
        uni.pattern = u.pattern;
        try {
            uni.dfa = compile_pattern(u.pattern, names);
        } catch (const std::exception& ex) {
            err(u.name, ex.what());
            continue;
        }
        // Every matched word must be well-typed: search for an accepted word
        // with a bad adjacency.
        const Dfa& dfa = uni.dfa;
        int n = dfa.num_states();
        std::vector<bool> coreach(n, false);
        for (bool changed = true; changed;) {
            changed = false;
            for (int s = 0; s < n; ++s) {
                if (coreach[s]) continue;
                bool r = dfa.accept[s];
                for (int a = 0; a < dfa.num_symbols && !r; ++a) r = coreach[dfa.next[s][a]];
                if (r) coreach[s] = changed = true;
            }
        }
        bool bad = false;
        std::vector<std::vector<bool>> seen(n, std::vector<bool>(pres.gens.size() + 1, false));
        std::deque<std::pair<int, int>> work;  // (state, last gen + 1; 0 = none)
        work.push_back({dfa.start, 0});
        seen[dfa.start][0] = true;
        while (!work.empty() && !bad) {
            auto [st, last] = work.front();
            work.pop_front();
            for (int g = 0; g < dfa.num_symbols; ++g) {
                int nxt = dfa.next[st][g];
                if (!coreach[nxt]) continue;
                if (last != 0 && pres.gens[last - 1].dom != pres.gens[g].cod) {
                    err(u.name, "universe pattern matches an ill-typed word (" +
                                    pres.gens[last - 1].name + " " + pres.gens[g].name + ")");
                    bad = true;
                    break;
                }
                if (!seen[nxt][g + 1]) {
                    seen[nxt][g + 1] = true;
                    work.push_back({nxt, g + 1});
                }
            }
        }
        if (!bad) pres.universes.push_back(std::move(uni));
    }

    if (!res.errors.empty()) return res;
    res.presentation = std::move(pres);
    return res;
}

ClosureResult check_universe_closed(const Presentation& pres, const Universe& uni,
                                    const std::vector<RuleId>& active_rules) {
    const Dfa& dfa = uni.dfa;
    // Reachable (state, boundary cell) pairs with a shortest witness prefix.
    // Cell -1 = empty prefix.
    std::map<std::pair<int, CellId>, std::vector<int>> reach;
    std::deque<std::pair<int, CellId>> work;
    reach[{dfa.start, -1}] = {};
    work.push_back({dfa.start, -1});
    while (!work.empty()) {
        auto [st, cell] = work.front();
        work.pop_front();
        const auto& prefix = reach[{st, cell}];
        for (int g = 0; g < dfa.num_symbols; ++g) {
            if (cell != -1 && pres.gens[g].cod != cell) continue;  // keep prefixes well-typed
            std::pair<int, CellId> key{dfa.next[st][g], pres.gens[g].dom};
            if (reach.count(key)) continue;
            auto w = prefix;
            w.push_back(g);
            reach[key] = std::move(w);
            work.push_back(key);
        }
    }

    auto finish = [&](ClosureResult& out, RuleId rid, const std::vector<int>& u,
                      const std::vector<int>& lhs, const std::vector<int>& rhs,
                      const std::vector<int>& v) {
        auto render = [&](const std::vector<int>& a, const std::vector<int>& b,
                          const std::vector<int>& c) {
            std::vector<int> w = a;
            w.insert(w.end(), b.begin(), b.end());
            w.insert(w.end(), c.begin(), c.end());
            TypedString s;
            for (int g : w) s.gens.push_back(g);
            if (s.gens.empty()) s.base = pres.cells.empty() ? -1 : 0;
            return pres.str(s);
        };
        out.closed = false;
        out.rule = pres.rule_name(rid);
        out.witness_string = render(u, lhs, v);
        out.witness_result = render(u, rhs, v);
    };

    ClosureResult out;
    for (RuleId rid : active_rules) {
        const TypedString& lhs = pres.rule_lhs(rid);
        const TypedString& rhs = pres.rule_rhs(rid);
        for (const auto& [key, prefix] : reach) {
            auto [q1, cell] = key;
            if (!lhs.empty()) {
                if (cell != -1 && cell != pres.cod(lhs)) continue;
            } else {
                // Empty redex: the boundary cell must match the identity's cell,
                // and the insertion point must be aligned with the universe, that
                // is, the prefix itself lies in the universe. Unit insertions act
                // on the universe's own strings, not inside arbitrary splits of
                // them; without this, no universe with a nontrivial block
                // structure is closed under any unit.
                if (cell != -1 && cell != lhs.base) continue;
                if (!dfa.accept[q1]) continue;
            }
            int q2 = dfa.run(q1, lhs.gens);
            int q3 = dfa.run(q1, rhs.gens);
            if (q2 == q3) continue;
            if (cell == -1 && lhs.empty()) {
                // Split at the very front: the suffix must start with a
                // generator whose cod matches the identity's cell (or be
                // empty, which is only unambiguous with a single 0-cell).
                if (dfa.accept[q2] && !dfa.accept[q3] && pres.cells.size() == 1) {
                    finish(out, rid, prefix, lhs.gens, rhs.gens, {});
                    return out;
                }
                for (int g = 0; g < dfa.num_symbols; ++g) {
                    if (pres.gens[g].cod != lhs.base) continue;
                    auto suf = distinguishing_suffix(dfa, dfa.next[q2][g], dfa.next[q3][g]);
                    if (suf) {
                        std::vector<int> v{g};
                        v.insert(v.end(), suf->begin(), suf->end());
                        finish(out, rid, prefix, lhs.gens, rhs.gens, v);
                        return out;
                    }
                }
            } else {
                auto suf = distinguishing_suffix(dfa, q2, q3);
                if (suf) {
                    finish(out, rid, prefix, lhs.gens, rhs.gens, *suf);
                    return out;
                }
            }
        }
    }
    return out;
}

namespace {

using RD = PresentationBuilder::RawDerivation;

RD steps(std::vector<PresentationBuilder::RawStep> ss) {
    RD d;
    d.steps = std::move(ss);
    return d;
}

RD ident(const std::string& s) {
    RD d;
    d.id_string = s;
    return d;
}

// Two monads (outer o, inner i) joined by a swapper rule i o => o i, with the
// full distributive-law equation set. Shared by the composite-monad and
// two-monads-intro presets, which differ only in generator names.
void add_composite(PresentationBuilder& b, const std::string& o, const std::string& i,
                   const std::string& muO, const std::string& etaO, const std::string& muI,
                   const std::string& etaI, const std::string& sw, const std::string& muC,
                   const std::string& etaC, const std::string& assocO, const std::string& unitOL,
                   const std::string& unitOR, const std::string& assocI, const std::string& unitIL,
                   const std::string& unitIR, const std::string& distMuO,
                   const std::string& distMuI, const std::string& distEtaO,
                   const std::string& distEtaI) {
    b.cell("obj");
    b.gen(o, "obj", "obj");
    b.gen(i, "obj", "obj");
    b.rule(muO, o + " " + o, o);
    b.rule(etaO, "1_obj", o);
    b.rule(muI, i + " " + i, i);
    b.rule(etaI, "1_obj", i);
    b.rule(sw, i + " " + o, o + " " + i);
    b.equation(assocO, steps({{"", muO, o}, {"", muO, ""}}), steps({{o, muO, ""}, {"", muO, ""}}));
    b.equation(unitOL, steps({{"", etaO, o}, {"", muO, ""}}), ident(o));
    b.equation(unitOR, steps({{o, etaO, ""}, {"", muO, ""}}), ident(o));
    b.equation(assocI, steps({{"", muI, i}, {"", muI, ""}}), steps({{i, muI, ""}, {"", muI, ""}}));
    b.equation(unitIL, steps({{"", etaI, i}, {"", muI, ""}}), ident(i));
    b.equation(unitIR, steps({{i, etaI, ""}, {"", muI, ""}}), ident(i));
    // swapper vs the outer multiplication, on i o o
    b.equation(distMuO, steps({{"", sw, o}, {o, sw, ""}, {"", muO, i}}),
               steps({{i, muO, ""}, {"", sw, ""}}));
    // swapper vs the inner multiplication, on i i o
    b.equation(distMuI, steps({{i, sw, ""}, {"", sw, i}, {o, muI, ""}}),
               steps({{"", muI, o}, {"", sw, ""}}));
    // swapper vs the units
    b.equation(distEtaO, steps({{i, etaO, ""}, {"", sw, ""}}), steps({{"", etaO, i}}));
    b.equation(distEtaI, steps({{"", etaI, o}, {"", sw, ""}}), steps({{o, etaI, ""}}));
    b.derived_rule(muC, o + " " + i + " " + o + " " + i, o + " " + i,
                   steps({{o, sw, i}, {o + " " + o, muI, ""}, {"", muO, i}}));
    b.derived_rule(etaC, "1_obj", o + " " + i, steps({{"", etaI, ""}, {"", etaO, i}}));
    b.universe("all", "(" + o + "|" + i + ")*");
    b.precedence({o, i});
}

}  // namespace

Presentation preset(const std::string& name) {
    PresentationBuilder b;
    if (name == "monad") {
        b.cell("obj");
        b.gen("T", "obj", "obj");
        b.rule("mu", "T T", "T");
        b.rule("eta", "1_obj", "T");
        b.equation("assoc", steps({{"", "mu", "T"}, {"", "mu", ""}}),
                   steps({{"T", "mu", ""}, {"", "mu", ""}}));
        b.equation("unitL", steps({{"", "eta", "T"}, {"", "mu", ""}}), ident("T"));
        b.equation("unitR", steps({{"T", "eta", ""}, {"", "mu", ""}}), ident("T"));
        b.universe("Tstar", "T*");
    } else if (name == "composite-monad") {
        add_composite(b, "P", "T", "muP", "etaP", "muT", "etaT", "theta", "muPT", "etaPT",
                      "assocP", "unitPL", "unitPR", "assocT", "unitTL", "unitTR", "distMuP",
                      "distMuT", "distEtaP", "distEtaT");
        b.universe("PTstar", "(P T)*");
    } else if (name == "two-monads-intro") {
        add_composite(b, "T2", "T1", "mu2", "eta2", "mu1", "eta1", "swap", "mu21", "eta21",
                      "assoc2", "unit2L", "unit2R", "assoc1", "unit1L", "unit1R", "distMu2",
                      "distMu1", "distEta2", "distEta1");
        b.universe("U21", "(T2 T1)*");
    } else if (name == "adjunction") {
        b.cell("C");
        b.cell("D");
        b.gen("F", "C", "D");
        b.gen("G", "D", "C");
        b.rule("eta", "1_C", "G F");
        b.rule("eps", "F G", "1_D");
        b.equation("triangleG", steps({{"", "eta", "G"}, {"G", "eps", ""}}), ident("G"));
        b.equation("triangleF", steps({{"F", "eta", ""}, {"", "eps", "F"}}), ident("F"));
        b.universe("UF", "F (G F)*");
        b.universe("UG", "G (F G)*");
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    BuildResult res = b.build();
    if (!res.ok()) {
        std::string msg = "preset '" + name + "' failed to build:";
        for (const auto& e : res.errors) msg += " [" + e.where + "] " + e.message;
        throw std::logic_error(msg);
    }
    return std::move(*res.presentation);
}

}  // namespace rewcat
