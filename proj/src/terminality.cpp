#include "rewcat/terminality.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace rewcat {

EnumResult enumerate_derivations(const Presentation& pres, const TypedString& from,
                                 const TypedString& to, const std::vector<RuleId>& rules,
                                 int depth, int extra, int max_count, int max_nodes) {
    EnumResult res;
    size_t cap = std::max(from.size(), to.size()) + extra;
    int nodes = 0;
    // Depth-first, redexes in deterministic order; a derivation may pass
    // through `to` and still continue, so hits do not cut the search.
    struct Frame {
        TypedString cur;
        std::vector<Step> steps;
    };
    std::vector<Frame> stack;
    stack.push_back({from, {}});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (++nodes > max_nodes) {
            res.truncated = true;
            break;
        }
        if (f.cur == to) {
            if (static_cast<int>(res.derivations.size()) >= max_count) {
                res.truncated = true;
                break;
            }
            res.derivations.push_back(Derivation{from, f.steps});
        }
        if (static_cast<int>(f.steps.size()) >= depth) continue;
        std::vector<Step> redexes = find_redexes(pres, f.cur, rules);
        for (auto it = redexes.rbegin(); it != redexes.rend(); ++it) {
            TypedString nxt = pres.target_of(*it);
            if (nxt.size() > cap) continue;
            Frame g;
            g.cur = std::move(nxt);
            g.steps = f.steps;
            g.steps.push_back(*it);
            stack.push_back(std::move(g));
        }
    }
    return res;
}

namespace {

constexpr int kUniqDepth = 4;
constexpr int kUniqExtra = 2;
constexpr int kUniqCount = 64;

// Bounded uniqueness evidence: every derivation from => candidate with at
// most kUniqDepth steps is congruent to the first one found.
struct UniqOutcome {
    bool unique = false;
    std::string note;
};

UniqOutcome bounded_uniqueness(const Presentation& pres, const TypedString& from,
                               const TypedString& candidate,
                               const std::vector<RuleId>& rules, const Budget& budget) {
    UniqOutcome out;
    EnumResult en =
        enumerate_derivations(pres, from, candidate, rules, kUniqDepth, kUniqExtra, kUniqCount);
    if (en.derivations.empty()) {
        out.note = "no derivation " + pres.str(from) + " => " + pres.str(candidate) +
                   " within " + std::to_string(kUniqDepth) + " steps";
        return out;
    }
    if (en.truncated) {
        out.note = "derivation enumeration truncated at " + std::to_string(kUniqCount);
        return out;
    }
    const Derivation& ref = en.derivations.front();
    for (size_t i = 1; i < en.derivations.size(); ++i) {
        Verdict v = equivalent(pres, ref, en.derivations[i], budget);
        if (!v.equal) {
            out.note = "derivations " + pres.str(ref) + " and " +
                       pres.str(en.derivations[i]) + " from " + pres.str(from) +
                       " not proven equal: " + v.diagnostics;
            return out;
        }
    }
    out.unique = true;
    return out;
}

TerminalityReport check_terminal_impl(const Presentation& pres, const TypedString& candidate,
                                      const std::string& universe,
                                      const std::vector<RuleId>& active, int max_len,
                                      const Budget& budget, const SearchBudget& search,
                                      bool subcategory) {
    TerminalityReport rep;
    rep.candidate = candidate;
    rep.universe = universe;
    rep.max_len = max_len;

    const Universe* uni = pres.universe(universe);
    if (!uni) {
        rep.message = "unknown universe '" + universe + "'";
        return rep;
    }
    if (!uni->dfa.accepts(candidate.gens)) {
        rep.message = "candidate " + pres.str(candidate) + " is not in universe " + universe;
        return rep;
    }
    ClosureResult closure = check_universe_closed(pres, *uni, active);
    if (!closure.closed) {
        rep.message = "universe " + universe + " not closed: rule " + closure.rule +
                      " rewrites " + closure.witness_string + " to " + closure.witness_result;
        return rep;
    }

    ConfluenceReport gc = check_good_confluence(pres, budget);
    ConfluenceReport be = check_bad_elimination(pres, budget);
    bool cand_nf = find_redexes(pres, candidate, good_rules(pres)).empty();
    // Termination makes the identity the only good derivation candidate =>
    // candidate: every good step strictly decreases the measure.
    bool certified = gc.ok && be.ok && cand_nf;
    rep.basis = std::string("good-confluence: ") + (gc.ok ? "certified" : "failed") +
                "; bad-elimination: " + (be.ok ? "certified" : "failed") +
                "; candidate normal form: " + (cand_nf ? "yes" : "no");
    if (!gc.ok && rep.message.empty()) rep.message = gc.message;
    if (!be.ok && rep.message.empty()) rep.message = be.message;
    if (!cand_nf && rep.message.empty())
        rep.message = "candidate " + pres.str(candidate) + " is not a good normal form";

    std::vector<RuleId> goods = good_rules(pres);
    std::map<TypedString, UniqOutcome> cache;
    bool all_ok = certified;
    for (const TypedString& s : enumerate_strings(pres, *uni, max_len)) {
        StringResult sr;
        sr.string = s;
        FindResult fr = find_derivation(pres, s, candidate, active, search);
        sr.existence = fr.derivation;
        if (!sr.existence) {
            sr.note = fr.diagnostics;
            all_ok = false;
        }

        // Uniqueness route: normalize by good rules, then show the normal
        // form reaches the candidate uniquely up to the congruence. In the
        // subcategory variant the good fragment is not available, so the
        // evidence is gathered from the string itself.
        TypedString base_point =
            subcategory ? s : pres.target_of(normalize_good(pres, s, goods,
                                                            Strategy::LeftmostFirst));
        bool uniq;
        std::string note;
        if (!subcategory && base_point == candidate) {
            uniq = true;
        } else {
            auto it = cache.find(base_point);
            if (it == cache.end())
                it = cache.emplace(base_point,
                                   bounded_uniqueness(pres, base_point, candidate, active,
                                                      budget))
                         .first;
            uniq = it->second.unique;
            note = it->second.note;
        }
        if (certified && uniq) {
            sr.uniqueness = StringResult::Uniqueness::Certified;
        } else {
            sr.uniqueness = StringResult::Uniqueness::Unknown;
            if (sr.note.empty()) sr.note = note;
            all_ok = false;
        }
        if (!all_ok && rep.message.empty() && !sr.note.empty())
            rep.message = pres.str(s) + ": " + sr.note;
        rep.per_string.push_back(std::move(sr));
    }
    rep.terminal = all_ok && !rep.per_string.empty();
    if (!rep.terminal && rep.message.empty()) rep.message = "certificates incomplete";
    return rep;
}

}  // namespace

TerminalityReport check_terminal(const Presentation& pres, const TypedString& candidate,
                                 const std::string& universe, int max_len,
                                 const Budget& budget, const SearchBudget& search) {
    return check_terminal_impl(pres, candidate, universe, base_rules(pres), max_len, budget,
                               search, false);
}

TerminalityReport check_terminal_subcategory(const Presentation& pres,
                                             const TypedString& candidate,
                                             const std::string& sub_universe,
                                             const std::vector<RuleId>& active_rules,
                                             int max_len, const Budget& budget,
                                             const SearchBudget& search) {
    return check_terminal_impl(pres, candidate, sub_universe, active_rules, max_len, budget,
                               search, true);
}

LawReport verify_monad_laws(const Presentation& pres, const TypedString& t, RuleId mu,
                            RuleId eta, const Budget& budget) {
    LawReport rep;
    std::string err;
    auto tt = concat(pres, t, t, &err);
    if (!tt) {
        rep.error = "t is not composable with itself: " + err;
        return rep;
    }
    auto ttt = concat(pres, *tt, t, &err);
    if (!ttt) {
        rep.error = "t is not composable with itself: " + err;
        return rep;
    }
    if (pres.rule_lhs(mu) != *tt || pres.rule_rhs(mu) != t) {
        rep.error = "mu is not of type t.t => t";
        return rep;
    }
    const TypedString& eta_lhs = pres.rule_lhs(eta);
    if (!eta_lhs.empty() || eta_lhs.base != pres.dom(t) || pres.rule_rhs(eta) != t) {
        rep.error = "eta is not of type 1 => t";
        return rep;
    }

    size_t n = t.size();
    auto mk = [&](const TypedString& s, size_t pos, RuleId r) {
        auto st = make_step(pres, s, pos, r);
        if (!st) rep.error = "rule " + pres.rule_name(r) + " does not apply in " + pres.str(s);
        return st;
    };
    // Associativity: the two ways of multiplying t.t.t down to t.
    {
        auto a1 = mk(*ttt, 0, mu);
        auto a2 = mk(*ttt, n, mu);
        auto b = mk(*tt, 0, mu);
        if (rep.error.empty()) {
            Derivation left{*ttt, {*a1, *b}};
            Derivation right{*ttt, {*a2, *b}};
            rep.laws.push_back({"associativity", equivalent(pres, left, right, budget)});
        }
    }
    // Unit laws: insert eta on either side of t, multiply, compare to id(t).
    for (auto [name, pos] : {std::pair<const char*, size_t>{"left-unit", 0},
                             {"right-unit", n}}) {
        auto e = mk(t, pos, eta);
        std::optional<Step> m;
        if (e) m = mk(*tt, 0, mu);
        if (rep.error.empty()) {
            Derivation d{t, {*e, *m}};
            rep.laws.push_back({name, equivalent(pres, d, Derivation{t, {}}, budget)});
        }
    }
    if (!rep.error.empty()) rep.laws.clear();
    return rep;
}

LawReport verify_adjunction_laws(const Presentation& pres, const TypedString& f,
                                 const TypedString& g, RuleId eta, RuleId eps,
                                 const Budget& budget) {
    LawReport rep;
    std::string err;
    auto gf = concat(pres, g, f, &err);
    auto fg = concat(pres, f, g, &err);
    if (!gf || !fg) {
        rep.error = "f and g are not composable both ways: " + err;
        return rep;
    }
    const TypedString& eta_lhs = pres.rule_lhs(eta);
    if (!eta_lhs.empty() || eta_lhs.base != pres.dom(f) || pres.rule_rhs(eta) != *gf) {
        rep.error = "eta is not of type 1 => g.f";
        return rep;
    }
    const TypedString& eps_rhs = pres.rule_rhs(eps);
    if (pres.rule_lhs(eps) != *fg || !eps_rhs.empty() || eps_rhs.base != pres.cod(f)) {
        rep.error = "eps is not of type f.g => 1";
        return rep;
    }

    auto triangle = [&](const char* name, const TypedString& leg, size_t eta_pos,
                        size_t eps_pos) {
        auto e = make_step(pres, leg, eta_pos, eta);
        std::optional<Step> c;
        if (e) c = make_step(pres, pres.target_of(*e), eps_pos, eps);
        if (!e || !c) {
            rep.error = std::string("triangle ") + name + " does not typecheck";
            return;
        }
        Derivation d{leg, {*e, *c}};
        rep.laws.push_back({name, equivalent(pres, d, Derivation{leg, {}}, budget)});
    };
    triangle("triangle-g", g, 0, f.size());  // g => g.f.g => g
    triangle("triangle-f", f, f.size(), 0);  // f => f.g.f => f
    if (!rep.error.empty()) rep.laws.clear();
    return rep;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// All single congruence moves from d: adjacent exchanges, whiskered equation
// instances both ways, and derived-step expansions. Independent of the
// equivalence engine's proof strategy by design (this is the oracle).
std::vector<Derivation> neighbor_derivations(const Presentation& pres, const Derivation& d) {
    std::vector<Derivation> out;
    for (int i = 0; i + 1 < static_cast<int>(d.steps.size()); ++i)
        if (auto e = exchange_adjacent(pres, d, i)) out.push_back(std::move(*e));
    for (int i = 0; i < static_cast<int>(d.steps.size()); ++i) {
        if (!pres.is_derived(d.steps[i].rule)) continue;
        Move m;
        m.kind = Move::Kind::ExpandDerived;
        m.index = i;
        if (auto e = apply_move(pres, d, m)) out.push_back(std::move(*e));
    }
    for (int e = 0; e < static_cast<int>(pres.equations.size()); ++e) {
        for (bool fwd : {true, false}) {
            const Derivation& from = fwd ? pres.equations[e].left : pres.equations[e].right;
            int seg = static_cast<int>(from.steps.size());
            for (int pos = 0; pos + seg <= static_cast<int>(d.steps.size()); ++pos) {
                TypedString s0 = pos == 0 ? d.source : pres.target_of(d.steps[pos - 1]);
                int span = static_cast<int>(s0.size()) - static_cast<int>(from.source.size());
                for (int nl = 0; nl <= span; ++nl) {
                    Move m;
                    m.kind = Move::Kind::ApplyEquation;
                    m.index = pos;
                    m.equation = e;
                    m.forward = fwd;
                    m.left_whisker = nl;
                    if (auto r = apply_move(pres, d, m)) out.push_back(std::move(*r));
                }
            }
        }
    }
    return out;
}

}  // namespace

HomClassReport count_hom_classes(const Presentation& pres, const TypedString& x,
                                 const TypedString& candidate, int depth_bound,
                                 int max_nodes) {
    return count_hom_classes(pres, x, candidate, depth_bound, base_rules(pres), max_nodes);
}

HomClassReport count_hom_classes(const Presentation& pres, const TypedString& x,
                                 const TypedString& candidate, int depth_bound,
                                 const std::vector<RuleId>& rules, int max_nodes) {
    EnumResult en = enumerate_derivations(pres, x, candidate, rules, depth_bound, 2, 512);
    if (en.derivations.empty()) {
        HomClassReport rep;
        rep.partial = en.truncated;
        rep.message = "no derivations found";
        return rep;
    }
    HomClassReport rep = congruence_classes(pres, en.derivations, depth_bound + 4, max_nodes);
    if (en.truncated) {
        rep.partial = true;
        if (rep.message.empty()) rep.message = "derivation enumeration truncated";
    }
    return rep;
}

HomClassReport congruence_classes(const Presentation& pres,
                                  const std::vector<Derivation>& seeds, int step_cap,
                                  int max_nodes) {
    HomClassReport rep;
    auto key = [&](const Derivation& d) { return pres.str(d.source) + "|" + pres.str(d); };
    UnionFind uf;
    std::map<std::string, int> cls;
    std::vector<int> original_cls;

    // Pending moves are expanded shortest-derivation-first, so shrinking and
    // length-preserving rewrites are exhausted before the unboundedly many
    // unit-pair insertions; a plain FIFO drowns in the latter. Insertion is
    // lazy: the node budget counts expanded nodes only. Under-merging is the
    // only possible error, so stopping once every seed is united is sound.
    struct Pending {
        Derivation d;
        int from_class;
    };
    // ordered by (steps, insertion sequence); bounded, the longest entries are
    // dropped first when over the cap (a drop can only under-merge)
    std::map<std::pair<size_t, long>, Pending> work;
    const size_t pending_cap = 600000;
    long seq = 0;
    auto push = [&](Derivation&& d, int from_class) {
        auto it = cls.find(key(d));
        if (it != cls.end()) {
            uf.unite(from_class, it->second);
            return;
        }
        size_t len = d.steps.size();  // before the move below
        work.emplace(std::make_pair(len, seq++), Pending{std::move(d), from_class});
        if (work.size() > pending_cap) {
            work.erase(std::prev(work.end()));
            rep.partial = true;
        }
    };
    for (const Derivation& d : seeds) {
        std::string k = key(d);
        auto it = cls.find(k);
        if (it == cls.end()) it = cls.emplace(std::move(k), uf.make()).first;
        original_cls.push_back(it->second);
    }
    auto all_united = [&] {
        for (int c : original_cls)
            if (uf.find(c) != uf.find(original_cls[0])) return false;
        return true;
    };

    int nodes = 0;
    std::set<std::string> expanded;
    // seeds are expanded unconditionally; only discovered nodes compete for
    // the pending budget (a dropped seed would silently stay isolated)
    for (size_t i = 0; i < seeds.size() && !all_united(); ++i) {
        if (!expanded.insert(key(seeds[i])).second) continue;
        ++nodes;
        for (Derivation& n : neighbor_derivations(pres, seeds[i])) {
            if (static_cast<int>(n.steps.size()) > step_cap) continue;
            push(std::move(n), original_cls[i]);
        }
    }
    while (!work.empty() && !all_united()) {
        Pending p = std::move(work.begin()->second);
        work.erase(work.begin());
        std::string k = key(p.d);
        auto it = cls.find(k);
        if (it != cls.end())
            uf.unite(p.from_class, it->second);
        else
            it = cls.emplace(k, uf.find(p.from_class)).first;
        if (!expanded.insert(std::move(k)).second) continue;
        if (++nodes > max_nodes) {
            rep.partial = true;
            break;
        }
        for (Derivation& n : neighbor_derivations(pres, p.d)) {
            if (static_cast<int>(n.steps.size()) > step_cap) continue;
            push(std::move(n), it->second);
        }
    }

    std::map<int, int> roots;  // root -> index of first representative
    for (size_t i = 0; i < original_cls.size(); ++i) {
        int r = uf.find(original_cls[i]);
        if (roots.emplace(r, static_cast<int>(i)).second)
            rep.representatives.push_back(seeds[i]);
    }
    rep.classes = static_cast<int>(roots.size());
    if (rep.partial) rep.message = "node limit reached; closure is partial";
    return rep;
}

}  // namespace rewcat
