#include <doctest.h>

#include "rewcat/presentation.hpp"
#include "rewcat/rewrite.hpp"

using namespace rewcat;

namespace {
TypedString parse(const Presentation& p, const std::string& s) {
    std::string err;
    auto r = parse_string(p, s, &err);
    REQUIRE_MESSAGE(r.has_value(), err);
    return *r;
}
}  // namespace

TEST_CASE("rule classification by length") {
    Presentation c = preset("composite-monad");
    CHECK(is_good(c, *c.rule_id("muP")));
    CHECK(is_good(c, *c.rule_id("theta")));  // length-preserving counts as good
    CHECK_FALSE(is_good(c, *c.rule_id("etaT")));
    CHECK(is_good(c, *c.rule_id("muPT")));
    CHECK_FALSE(is_good(c, *c.rule_id("etaPT")));
    CHECK(good_rules(c).size() + bad_rules(c).size() == base_rules(c).size());

    Presentation a = preset("adjunction");
    CHECK(is_good(a, *a.rule_id("eps")));
    CHECK_FALSE(is_good(a, *a.rule_id("eta")));
}

TEST_CASE("make_step matches redexes and boundary cells") {
    Presentation m = preset("monad");
    TypedString ttt = parse(m, "T T T");
    RuleId mu = *m.rule_id("mu");
    RuleId eta = *m.rule_id("eta");
    CHECK(make_step(m, ttt, 0, mu).has_value());
    CHECK(make_step(m, ttt, 1, mu).has_value());
    CHECK_FALSE(make_step(m, ttt, 2, mu).has_value());  // lhs would overrun
    for (size_t p = 0; p <= 3; ++p) CHECK(make_step(m, ttt, p, eta).has_value());

    Presentation a = preset("adjunction");
    TypedString f = parse(a, "F");
    RuleId aeta = *a.rule_id("eta");
    // eta lives at cell C: only the inner boundary of F qualifies
    CHECK_FALSE(make_step(a, f, 0, aeta).has_value());
    auto st = make_step(a, f, 1, aeta);
    REQUIRE(st.has_value());
    CHECK(a.str(a.target_of(*st)) == "F G F");
}

TEST_CASE("find_redexes order is position-major") {
    Presentation m = preset("monad");
    TypedString ttt = parse(m, "T T T");
    auto redexes = find_redexes(m, ttt, base_rules(m));
    REQUIRE(redexes.size() == 6);  // mu at 0,1 and eta at 0..3
    CHECK(redexes[0].pos() == 0);
    for (size_t i = 1; i < redexes.size(); ++i) CHECK(redexes[i - 1].pos() <= redexes[i].pos());
}

TEST_CASE("termination of the preset good fragments") {
    CHECK(check_termination(preset("monad")).terminating);
    CHECK(check_termination(preset("composite-monad")).terminating);
    CHECK(check_termination(preset("adjunction")).terminating);

    // a swapper running against the precedence loops
    PresentationBuilder b;
    b.cell("obj");
    b.gen("P", "obj", "obj");
    b.gen("T", "obj", "obj");
    b.rule("unswap", "P T", "T P");
    b.precedence({"P", "T"});
    auto res = b.build();
    REQUIRE(res.ok());
    TerminationResult t = check_termination(*res.presentation);
    CHECK_FALSE(t.terminating);
    CHECK(t.offending_rule == "unswap");
}

TEST_CASE("measure strictly decreases along good steps") {
    Presentation c = preset("composite-monad");
    TypedString tp = parse(c, "T P");
    TypedString pt = parse(c, "P T");
    CHECK(measure_less(c, pt, tp));
    CHECK_FALSE(measure_less(c, tp, pt));
    CHECK(measure_less(c, parse(c, "T"), tp));  // shorter wins first
}

TEST_CASE("good normalization sorts and contracts mixed strings") {
    Presentation c = preset("composite-monad");
    auto nf = [&](const std::string& s) {
        Derivation d = normalize_good(c, parse(c, s));
        return c.str(c.target_of(d));
    };
    CHECK(nf("T P") == "P T");
    CHECK(nf("T T P P") == "P T");
    CHECK(nf("T P T P T") == "P T");
    CHECK(nf("P P P") == "P");
    CHECK(nf("T T T") == "T");
}

TEST_CASE("normalization strategies agree on the normal form") {
    Presentation c = preset("composite-monad");
    for (const char* s : {"T P T P", "T T P", "P T T P T"}) {
        TypedString x = parse(c, s);
        Derivation l = normalize_good(c, x, Strategy::LeftmostFirst);
        Derivation r = normalize_good(c, x, Strategy::RightmostFirst);
        CHECK(c.target_of(l) == c.target_of(r));
    }
}

TEST_CASE("find_derivation reaches the terminal object") {
    Presentation m = preset("monad");
    TypedString t = parse(m, "T");
    FindResult r1 = find_derivation(m, parse(m, "1_obj"), t);
    REQUIRE(r1.derivation.has_value());
    CHECK(m.valid(*r1.derivation));
    CHECK(m.target_of(*r1.derivation) == t);
    FindResult r2 = find_derivation(m, parse(m, "T T T"), t);
    REQUIRE(r2.derivation.has_value());
    CHECK(r2.derivation->steps.size() == 2);

    // restricted to the derived composite rules
    Presentation c = preset("composite-monad");
    FindResult r3 = find_derivation(c, parse(c, "P T P T"), parse(c, "P T"),
                                    {*c.rule_id("muPT")}, SearchBudget{});
    REQUIRE(r3.derivation.has_value());
    CHECK(r3.derivation->steps.size() == 1);
}

TEST_CASE("universe string enumeration") {
    Presentation m = preset("monad");
    auto ts = enumerate_strings(m, *m.universe("Tstar"), 3);
    REQUIRE(ts.size() == 4);
    CHECK(ts[0].empty());
    CHECK(ts[3].size() == 3);

    Presentation c = preset("composite-monad");
    CHECK(enumerate_strings(c, *c.universe("PTstar"), 6).size() == 4);
    CHECK(enumerate_strings(c, *c.universe("all"), 2).size() == 7);
}

TEST_CASE("precedence inversion count") {
    Presentation c = preset("composite-monad");
    CHECK(inversions(c, parse(c, "P T")) == 0);
    CHECK(inversions(c, parse(c, "T P")) == 1);
    CHECK(inversions(c, parse(c, "T T P P")) == 4);
    CHECK(inversions(c, parse(c, "T P T P")) == 3);
}
