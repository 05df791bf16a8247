#include <doctest.h>

#include "rewcat/presentation.hpp"
#include "rewcat/rewrite.hpp"
#include "rewcat/terminality.hpp"

using namespace rewcat;

namespace {

TypedString parse(const Presentation& p, const std::string& s) {
    std::string err;
    auto r = parse_string(p, s, &err);
    REQUIRE_MESSAGE(r.has_value(), err);
    return *r;
}

Presentation ablated_monad(const std::string& skip) {
    PresentationBuilder b;
    b.cell("obj");
    b.gen("T", "obj", "obj");
    b.rule("mu", "T T", "T");
    b.rule("eta", "1_obj", "T");
    PresentationBuilder::RawDerivation idT;
    idT.id_string = "T";
    if (skip != "assoc")
        b.equation("assoc", {{}, {{"", "mu", "T"}, {"", "mu", ""}}},
                   {{}, {{"T", "mu", ""}, {"", "mu", ""}}});
    if (skip != "unitL") b.equation("unitL", {{}, {{"", "eta", "T"}, {"", "mu", ""}}}, idT);
    if (skip != "unitR") b.equation("unitR", {{}, {{"T", "eta", ""}, {"", "mu", ""}}}, idT);
    b.universe("Tstar", "T*");
    auto res = b.build();
    REQUIRE(res.ok());
    return *res.presentation;
}

}  // namespace

TEST_CASE("the free monad object is terminal") {
    Presentation m = preset("monad");
    TerminalityReport r = check_terminal(m, parse(m, "T"), "Tstar", 5);
    CHECK_MESSAGE(r.terminal, r.message);
    CHECK(r.per_string.size() == 6);
    for (const StringResult& sr : r.per_string) {
        REQUIRE(sr.existence.has_value());
        CHECK(m.valid(*sr.existence));
        CHECK(m.target_of(*sr.existence) == r.candidate);
        CHECK(sr.uniqueness == StringResult::Uniqueness::Certified);
    }
}

TEST_CASE("an ablated monad loses terminality with a short witness") {
    Presentation p = ablated_monad("unitR");
    TerminalityReport r = check_terminal(p, parse(p, "T"), "Tstar", 3);
    CHECK_FALSE(r.terminal);
    bool short_gap = false;
    for (const StringResult& sr : r.per_string)
        if (sr.uniqueness != StringResult::Uniqueness::Certified && sr.string.size() <= 3)
            short_gap = true;
    CHECK(short_gap);
}

TEST_CASE("nonexistent universe and candidate outside the universe fail cleanly") {
    Presentation m = preset("monad");
    TerminalityReport r1 = check_terminal(m, parse(m, "T"), "nope", 3);
    CHECK_FALSE(r1.terminal);
    CHECK_FALSE(r1.message.empty());

    Presentation c = preset("composite-monad");
    TerminalityReport r2 = check_terminal(c, parse(c, "T P"), "PTstar", 4);
    CHECK_FALSE(r2.terminal);
}

TEST_CASE("the composite block universe is terminal under its derived rules") {
    Presentation c = preset("composite-monad");
    TerminalityReport r = check_terminal_subcategory(
        c, parse(c, "P T"), "PTstar", {*c.rule_id("muPT"), *c.rule_id("etaPT")}, 6);
    CHECK_MESSAGE(r.terminal, r.message);
    CHECK(r.per_string.size() == 4);  // (PT)^0 .. (PT)^3
}

TEST_CASE("monad laws hold for the presets and fail to type on nonsense") {
    Presentation m = preset("monad");
    LawReport l1 = verify_monad_laws(m, parse(m, "T"), *m.rule_id("mu"), *m.rule_id("eta"));
    CHECK_MESSAGE(l1.all_equal(), l1.error);
    REQUIRE(l1.laws.size() == 3);

    Presentation c = preset("composite-monad");
    LawReport l2 = verify_monad_laws(c, parse(c, "P T"), *c.rule_id("muPT"),
                                     *c.rule_id("etaPT"));
    CHECK_MESSAGE(l2.all_equal(), l2.error);

    // mu must rewrite t.t to t
    LawReport l3 = verify_monad_laws(c, parse(c, "P"), *c.rule_id("muT"), *c.rule_id("etaP"));
    CHECK_FALSE(l3.all_equal());
    CHECK_FALSE(l3.error.empty());
}

TEST_CASE("triangle identities hold and reject non-composable functors") {
    Presentation a = preset("adjunction");
    LawReport l1 = verify_adjunction_laws(a, parse(a, "F"), parse(a, "G"),
                                          *a.rule_id("eta"), *a.rule_id("eps"));
    CHECK_MESSAGE(l1.all_equal(), l1.error);
    REQUIRE(l1.laws.size() == 2);

    // F after F does not compose
    LawReport l2 = verify_adjunction_laws(a, parse(a, "F"), parse(a, "F"),
                                          *a.rule_id("eta"), *a.rule_id("eps"));
    CHECK_FALSE(l2.error.empty());
    CHECK(l2.laws.empty());
}

TEST_CASE("derivation enumeration is exact at small depth") {
    Presentation m = preset("monad");
    RuleId mu = *m.rule_id("mu");
    EnumResult e = enumerate_derivations(m, parse(m, "T T T"), parse(m, "T"), {mu}, 2, 0, 100);
    CHECK_FALSE(e.truncated);
    CHECK(e.derivations.size() == 2);  // contract at 0 or at 1 first
    for (const Derivation& d : e.derivations) {
        CHECK(m.valid(d));
        CHECK(d.steps.size() == 2);
    }
}

TEST_CASE("hom class counting agrees with terminality") {
    Presentation m = preset("monad");
    TypedString t = parse(m, "T");
    for (const char* s : {"1_obj", "T", "T T", "T T T"}) {
        CAPTURE(s);
        HomClassReport h = count_hom_classes(m, parse(m, s), t, 8);
        CHECK(h.classes == 1);
    }
    // at small depth the enumeration is exhaustive and the count exact
    HomClassReport exact = count_hom_classes(m, parse(m, "T T"), t, 2);
    CHECK(exact.classes == 1);
    CHECK_FALSE(exact.partial);
}

TEST_CASE("without associativity the two bracketings are distinct classes") {
    Presentation p = ablated_monad("assoc");
    HomClassReport h = count_hom_classes(p, parse(p, "T T T"), parse(p, "T"), 8,
                                         {*p.rule_id("mu")}, 20000);
    CHECK(h.classes >= 2);
}

TEST_CASE("congruence closure joins the associativity bracketings") {
    Presentation m = preset("monad");
    RuleId mu = *m.rule_id("mu");
    EnumResult e = enumerate_derivations(m, parse(m, "T T T"), parse(m, "T"), {mu}, 2, 0, 100);
    REQUIRE(e.derivations.size() == 2);
    HomClassReport h = congruence_classes(m, e.derivations, 6, 20000);
    CHECK(h.classes == 1);
    CHECK_FALSE(h.partial);
}
