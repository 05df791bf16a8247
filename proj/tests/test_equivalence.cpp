#include <doctest.h>

#include <random>

#include "rewcat/equivalence.hpp"
#include "rewcat/presentation.hpp"
#include "rewcat/rewrite.hpp"
#include "rewcat/specfile.hpp"

using namespace rewcat;

namespace {

TypedString parse(const Presentation& p, const std::string& s) {
    std::string err;
    auto r = parse_string(p, s, &err);
    REQUIRE_MESSAGE(r.has_value(), err);
    return *r;
}

TypedString id_at(CellId c) { return TypedString{{}, c}; }

// equivalent() plus the soundness check every Equal verdict must satisfy
Verdict check_equal(const Presentation& p, const Derivation& a, const Derivation& b) {
    Verdict v = equivalent(p, a, b);
    REQUIRE_MESSAGE(v.equal, v.diagnostics);
    auto replayed = replay(p, a, v.trace);
    REQUIRE(replayed.has_value());
    CHECK(*replayed == b);
    return v;
}

}  // namespace

TEST_CASE("whiskering extends contexts and checks typing") {
    Presentation m = preset("monad");
    RuleId mu = *m.rule_id("mu");
    Step st{id_at(0), mu, id_at(0)};
    Step wst = whisker(m, st, parse(m, "T"), parse(m, "T T"));
    CHECK(wst.pos() == 1);
    CHECK(m.str(m.source_of(wst)) == "T T T T T");

    Presentation a = preset("adjunction");
    Step tri{id_at(*a.cell_id("C")), *a.rule_id("eta"), id_at(*a.cell_id("C"))};
    // G cannot whisker on the left of a 2-cell living at C
    CHECK_THROWS_AS(whisker(a, tri, parse(a, "G"), id_at(*a.cell_id("C"))),
                    std::invalid_argument);
}

TEST_CASE("exchange of disjoint steps is an involution") {
    Presentation m = preset("monad");
    RuleId mu = *m.rule_id("mu");
    TypedString t = parse(m, "T");
    TypedString tt = parse(m, "T T");
    // on T^4: contract at 0, then at 1 of the result (disjoint: [0,2) vs [1,3))
    Derivation d{parse(m, "T T T T"), {Step{id_at(0), mu, tt}, Step{t, mu, id_at(0)}}};
    REQUIRE(m.valid(d));
    auto e = exchange_adjacent(m, d, 0);
    REQUIRE(e.has_value());
    CHECK(m.valid(*e));
    CHECK(m.target_of(*e) == m.target_of(d));
    CHECK(*e != d);
    auto back = exchange_adjacent(m, *e, 0);
    REQUIRE(back.has_value());
    CHECK(*back == d);
    // overlapping redexes do not exchange: mu@0 then mu@0
    Derivation o{parse(m, "T T T"), {Step{id_at(0), mu, t}, Step{id_at(0), mu, id_at(0)}}};
    REQUIRE(m.valid(o));
    CHECK_FALSE(exchange_adjacent(m, o, 0).has_value());
}

TEST_CASE("canonical exchange form is idempotent and exchange-invariant") {
    Presentation m = preset("monad");
    RuleId mu = *m.rule_id("mu");
    // three pairwise disjoint contractions on T^6, applied inner first
    Derivation d{parse(m, "T T T T T T"),
                 {Step{parse(m, "T T T T"), mu, id_at(0)},
                  Step{parse(m, "T T"), mu, parse(m, "T")},
                  Step{id_at(0), mu, parse(m, "T T")}}};
    REQUIRE(m.valid(d));
    ProofTrace tr;
    Derivation c = canonical_exchange_form(m, d, &tr);
    CHECK(m.valid(c));
    auto replayed = replay(m, d, tr);
    REQUIRE(replayed.has_value());
    CHECK(*replayed == c);
    CHECK(canonical_exchange_form(m, c) == c);
    // sorted: positions ascend
    CHECK(c.steps[0].pos() <= c.steps[1].pos());
    CHECK(c.steps[1].pos() <= c.steps[2].pos());
    // shuffling by arbitrary exchanges does not change the canonical form
    std::mt19937 rng(7);
    Derivation cur = d;
    for (int it = 0; it < 50; ++it) {
        int i = static_cast<int>(rng() % (cur.steps.size() - 1));
        if (auto e = exchange_adjacent(m, cur, i)) cur = *e;
        CHECK(canonical_exchange_form(m, cur) == c);
    }
}

TEST_CASE("unit insertion then contraction cancels to the identity") {
    Presentation m = preset("monad");
    TypedString t = parse(m, "T");
    Derivation d{t,
                 {Step{id_at(0), *m.rule_id("eta"), t},
                  Step{id_at(0), *m.rule_id("mu"), id_at(0)}}};
    REQUIRE(m.valid(d));
    ProofTrace tr;
    auto pushed = push_bad_after_good(m, d, &tr);
    REQUIRE(pushed.has_value());
    CHECK(pushed->steps.empty());
    CHECK(pushed->source == t);
    auto replayed = replay(m, d, tr);
    REQUIRE(replayed.has_value());
    CHECK(*replayed == *pushed);
}

TEST_CASE("two unit routes to the composite commute by one exchange") {
    Presentation c = preset("composite-monad");
    RuleId etaP = *c.rule_id("etaP");
    RuleId etaT = *c.rule_id("etaT");
    TypedString i = id_at(0);
    Derivation via_p{i, {Step{i, etaP, i}, Step{parse(c, "P"), etaT, i}}};
    Derivation via_t{i, {Step{i, etaT, i}, Step{i, etaP, parse(c, "T")}}};
    REQUIRE(c.valid(via_p));
    REQUIRE(c.valid(via_t));
    CHECK(c.target_of(via_p) == parse(c, "P T"));
    CHECK(c.target_of(via_t) == parse(c, "P T"));
    Verdict v = check_equal(c, via_p, via_t);
    REQUIRE(v.trace.size() == 1);
    CHECK(v.trace[0].kind == Move::Kind::Exchange);
}

TEST_CASE("derived steps expand to their defining bodies") {
    Presentation c = preset("composite-monad");
    TypedString i = id_at(0);
    Derivation d{parse(c, "P T P T"), {Step{i, *c.rule_id("muPT"), i}}};
    REQUIRE(c.valid(d));
    ProofTrace tr;
    Derivation x = expand_derived(c, d, &tr);
    CHECK(c.valid(x));
    CHECK(x.steps.size() == 3);
    for (const Step& st : x.steps) CHECK_FALSE(c.is_derived(st.rule));
    CHECK(c.target_of(x) == c.target_of(d));
    auto replayed = replay(c, d, tr);
    REQUIRE(replayed.has_value());
    CHECK(*replayed == x);
}

TEST_CASE("trace inversion replays backwards") {
    Presentation c = preset("composite-monad");
    TypedString i = id_at(0);
    Derivation via_p{i, {Step{i, *c.rule_id("etaP"), i}, Step{parse(c, "P"), *c.rule_id("etaT"), i}}};
    Derivation via_t{i, {Step{i, *c.rule_id("etaT"), i}, Step{i, *c.rule_id("etaP"), parse(c, "T")}}};
    Verdict v = equivalent(c, via_p, via_t);
    REQUIRE(v.equal);
    auto back = replay(c, via_t, invert(v.trace));
    REQUIRE(back.has_value());
    CHECK(*back == via_p);
    for (const Move& m : v.trace) CHECK(invert(invert(m)) == m);
}

TEST_CASE("equivalence handles equation rewrites under whiskers") {
    Presentation m = preset("monad");
    RuleId mu = *m.rule_id("mu");
    TypedString t = parse(m, "T");
    // whiskered associativity instance: T (T T T) => T T, both bracketings
    Derivation l{parse(m, "T T T T"),
                 {Step{t, mu, t}, Step{t, mu, id_at(0)}}};
    Derivation r{parse(m, "T T T T"),
                 {Step{parse(m, "T T"), mu, id_at(0)}, Step{t, mu, id_at(0)}}};
    REQUIRE(m.valid(l));
    REQUIRE(m.valid(r));
    Verdict v = check_equal(m, l, r);
    REQUIRE(v.trace.size() == 1);
    CHECK(v.trace[0].kind == Move::Kind::ApplyEquation);
    CHECK(v.trace[0].left_whisker == 1);
}

TEST_CASE("the nine-node introduction diagram has six paths") {
    ParseResult pr = parse_spec(preset_spec_text("two-monads-intro"));
    REQUIRE_MESSAGE(pr.ok(), (pr.errors.empty() ? "" : pr.errors[0].message));
    const SpecFile& spec = *pr.spec;
    const Task* dia = nullptr;
    for (const Task& t : spec.tasks)
        if (t.kind == Task::Kind::DiagramCheck) dia = &t;
    REQUIRE(dia != nullptr);
    CHECK(dia->diagram.nodes.size() == 9);
    CHECK(dia->diagram.edges.size() == 12);
    auto paths = diagram_paths(spec.presentation, dia->diagram);
    CHECK(paths.size() == 6);
    for (const auto& [name, d] : paths) {
        CHECK(spec.presentation.valid(d));
        CHECK(spec.presentation.target_of(d) == dia->diagram.nodes.at(dia->diagram.sink));
    }
}
