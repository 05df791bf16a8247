#include <doctest.h>

#include <sstream>

#include "rewcat/specfile.hpp"

using namespace rewcat;

namespace {

SpecFile parse_ok(const std::string& text) {
    ParseResult r = parse_spec(text);
    REQUIRE_MESSAGE(r.ok(), (r.errors.empty() ? "?" : r.errors[0].message));
    return *r.spec;
}

size_t count_lines_with(const std::string& text, const std::string& needle) {
    size_t n = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.find(needle) != std::string::npos) ++n;
    return n;
}

}  // namespace

TEST_CASE("preset spec texts parse and carry their default tasks") {
    SpecFile m = parse_ok(preset_spec_text("monad"));
    CHECK(m.tasks.size() == 3);
    CHECK(m.tasks[0].kind == Task::Kind::Confluence);
    CHECK(m.tasks[1].kind == Task::Kind::Terminal);
    CHECK(m.tasks[1].universe == "Tstar");
    CHECK(m.tasks[1].maxlen == 7);
    CHECK(m.tasks[2].kind == Task::Kind::Laws);

    SpecFile c = parse_ok(preset_spec_text("composite-monad"));
    CHECK(c.tasks.size() == 4);
    CHECK(c.tasks[3].active_rules.size() == 2);

    SpecFile t = parse_ok(preset_spec_text("two-monads-intro"));
    REQUIRE(t.tasks.size() == 3);
    CHECK(t.tasks[2].kind == Task::Kind::DiagramCheck);
    CHECK(t.tasks[2].diagram.nodes.size() == 9);
    CHECK(t.tasks[2].diagram.edges.size() == 12);
    CHECK(t.tasks[2].diagram.source == "n00");
    CHECK(t.tasks[2].diagram.sink == "n22");

    CHECK(parse_ok(preset_spec_text("adjunction")).tasks.size() == 4);
}

TEST_CASE("printed presentations round-trip through the parser") {
    for (const char* name : {"monad", "composite-monad", "adjunction", "two-monads-intro"}) {
        CAPTURE(name);
        Presentation orig = preset(name);
        SpecFile re = parse_ok(print_presentation(orig));
        CHECK(print_presentation(re.presentation) == print_presentation(orig));
    }
}

TEST_CASE("hand-written spec with every task form") {
    SpecFile s = parse_ok(
        "cell obj\n"
        "gen T : obj -> obj\n"
        "rule mu : T T => T\n"
        "rule eta : 1_obj => T\n"
        "eq assoc : { () mu (T) ; () mu () } = { (T) mu () ; () mu () }\n"
        "eq unitL : { () eta (T) ; () mu () } = id(T)\n"
        "eq unitR : { (T) eta () ; () mu () } = id(T)\n"
        "universe Tstar = T*\n"
        "precedence T\n"
        "# a comment line\n"
        "check confluence\n"
        "check terminal T in Tstar maxlen 4\n"
        "check equiv { () mu (T) ; () mu () } = { (T) mu () ; () mu () }\n"
        "check laws monad T mu eta\n"
        "normalize T T T\n");
    REQUIRE(s.tasks.size() == 5);
    CHECK(s.tasks[2].kind == Task::Kind::Equiv);
    CHECK(s.tasks[2].lhs.steps.size() == 2);
    CHECK(s.tasks[4].kind == Task::Kind::Normalize);
    std::ostringstream out;
    nlohmann::json report = nlohmann::json::array();
    int exit = run(s, RunOptions{}, out, &report);
    CHECK(exit == 0);
    CHECK(report.size() == 5);
    for (const auto& rec : report) {
        CHECK(rec.contains("task"));
        CHECK(rec.contains("verdict"));
        CHECK(rec.contains("witness"));
        CHECK(rec.contains("budget"));
        CHECK(rec.contains("elapsed_ms"));
    }
    CHECK(report[4]["witness"]["normal_form"] == "T");
}

TEST_CASE("parse errors carry line numbers") {
    ParseResult r1 = parse_spec("cell obj\ngen T : obj => obj\n");
    CHECK_FALSE(r1.ok());
    REQUIRE_FALSE(r1.errors.empty());
    CHECK(r1.errors[0].line == 2);

    // declarations must precede tasks
    ParseResult r2 = parse_spec(
        "cell obj\n"
        "gen T : obj -> obj\n"
        "rule mu : T T => T\n"
        "check confluence\n"
        "universe Tstar = T*\n");
    CHECK_FALSE(r2.ok());

    // unknown rule in a task line
    ParseResult r3 = parse_spec(
        "cell obj\n"
        "gen T : obj -> obj\n"
        "rule mu : T T => T\n"
        "universe Tstar = T*\n"
        "check terminal T in Tstar rules nosuch maxlen 3\n");
    CHECK_FALSE(r3.ok());

    ParseResult r4 = parse_spec("frobnicate everything\n");
    CHECK_FALSE(r4.ok());
}

TEST_CASE("uncertifiable input exits 2, ill-formed task exits 1") {
    // monad without the unit equations: uniqueness stays open
    int exit2;
    {
        SpecFile s = parse_ok(
            "cell obj\n"
            "gen T : obj -> obj\n"
            "rule mu : T T => T\n"
            "rule eta : 1_obj => T\n"
            "eq assoc : { () mu (T) ; () mu () } = { (T) mu () ; () mu () }\n"
            "universe Tstar = T*\n"
            "check terminal T in Tstar maxlen 3\n");
        std::ostringstream out;
        exit2 = run(s, RunOptions{}, out);
    }
    CHECK(exit2 == 2);

    // candidate outside the universe is a hard failure
    int exit1;
    {
        SpecFile s = parse_ok(
            "cell obj\n"
            "gen T : obj -> obj\n"
            "rule mu : T T => T\n"
            "universe Tstar = T*\n"
            "check terminal T in missing maxlen 3\n");
        std::ostringstream out;
        exit1 = run(s, RunOptions{}, out);
    }
    CHECK(exit1 == 1);
}

TEST_CASE("reduction graph export") {
    Presentation m = preset("monad");
    std::string err;
    auto ttt = parse_string(m, "T T T", &err);
    REQUIRE(ttt);
    std::string dot = export_dot_reduction(m, *ttt, {*m.rule_id("mu")});
    CHECK(count_lines_with(dot, "[label=\"T") == 3);  // nodes TTT, TT, T
    CHECK(count_lines_with(dot, "->") == 3);          // mu@0, mu@1, then mu@0
    CHECK(count_lines_with(dot, "mu@1") == 1);
}

TEST_CASE("diagram export lists every node and edge") {
    SpecFile t = parse_ok(preset_spec_text("two-monads-intro"));
    const Task& dia = t.tasks[2];
    std::string dot = export_dot_diagram(t.presentation, dia.diagram);
    CHECK(count_lines_with(dot, "[label=") == 9 + 12);
    CHECK(count_lines_with(dot, "->") == 12);
}

TEST_CASE("trace rendering names equations and positions") {
    Presentation m = preset("monad");
    ProofTrace tr{Move{Move::Kind::Exchange, 2, -1, true, 0, -1},
                  Move{Move::Kind::ApplyEquation, 0, 0, true, 1, -1}};
    std::string text = trace_text(m, tr);
    CHECK(text.find("exchange@2") != std::string::npos);
    CHECK(text.find("assoc") != std::string::npos);
}
