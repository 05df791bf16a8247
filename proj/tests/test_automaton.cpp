#include <doctest.h>

#include <stdexcept>

#include "rewcat/automaton.hpp"

using namespace rewcat;

namespace {
std::vector<int> w(std::initializer_list<int> xs) { return std::vector<int>(xs); }
}  // namespace

TEST_CASE("star pattern over one symbol") {
    Dfa d = compile_pattern("T*", {"T"});
    CHECK(d.accepts(w({})));
    CHECK(d.accepts(w({0})));
    CHECK(d.accepts(w({0, 0, 0})));
    auto words = enumerate_words(d, 3);
    CHECK(words.size() == 4);
    CHECK(words[0].empty());
    CHECK(words[3].size() == 3);
}

TEST_CASE("grouped block pattern") {
    Dfa d = compile_pattern("(P T)*", {"P", "T"});
    CHECK(d.accepts(w({})));
    CHECK(d.accepts(w({0, 1})));
    CHECK(d.accepts(w({0, 1, 0, 1})));
    CHECK_FALSE(d.accepts(w({0})));
    CHECK_FALSE(d.accepts(w({1, 0})));
    CHECK_FALSE(d.accepts(w({0, 0, 1})));
    auto words = enumerate_words(d, 6);
    CHECK(words.size() == 4);  // lengths 0, 2, 4, 6
}

TEST_CASE("alternation under star") {
    Dfa d = compile_pattern("(P|T)*", {"P", "T"});
    CHECK(d.accepts(w({1, 0, 0, 1})));
    auto words = enumerate_words(d, 3);
    CHECK(words.size() == 1 + 2 + 4 + 8);
    // ordered by length, then lex on symbol ids
    CHECK(words[1] == w({0}));
    CHECK(words[2] == w({1}));
}

TEST_CASE("concatenation with a starred tail") {
    Dfa d = compile_pattern("F (G F)*", {"F", "G"});
    CHECK(d.accepts(w({0})));
    CHECK(d.accepts(w({0, 1, 0})));
    CHECK_FALSE(d.accepts(w({})));
    CHECK_FALSE(d.accepts(w({1})));
    CHECK_FALSE(d.accepts(w({0, 1})));
}

TEST_CASE("greedy name tokenization prefers the longest declared name") {
    Dfa d = compile_pattern("(T2 T1)*", {"T2", "T1"});
    CHECK(d.accepts(w({0, 1})));
    CHECK_FALSE(d.accepts(w({1, 0})));
    // without spaces the longest match still wins
    Dfa d2 = compile_pattern("T2T1", {"T2", "T1"});
    CHECK(d2.accepts(w({0, 1})));
    CHECK_FALSE(d2.accepts(w({0})));
}

TEST_CASE("malformed patterns and unknown names throw") {
    CHECK_THROWS_AS(compile_pattern("(P T", {"P", "T"}), std::runtime_error);
    CHECK_THROWS_AS(compile_pattern("P )", {"P", "T"}), std::runtime_error);
    CHECK_THROWS_AS(compile_pattern("Q*", {"P", "T"}), std::runtime_error);
    CHECK_THROWS_AS(compile_pattern("*", {"P"}), std::runtime_error);
}

TEST_CASE("distinguishing suffixes separate inequivalent states") {
    Dfa d = compile_pattern("(P T)*", {"P", "T"});
    int mid = d.run(d.start, w({0}));  // after P: needs T to get back
    auto suf = distinguishing_suffix(d, mid, d.start);
    REQUIRE(suf.has_value());
    CHECK(d.accept[d.run(mid, *suf)] != d.accept[d.run(d.start, *suf)]);
    // a state is never distinguishable from itself
    CHECK_FALSE(distinguishing_suffix(d, d.start, d.start).has_value());
}

TEST_CASE("shortest prefixes reach every live state") {
    Dfa d = compile_pattern("(P T)*", {"P", "T"});
    auto p0 = shortest_prefix_to(d, d.start);
    REQUIRE(p0.has_value());
    CHECK(p0->empty());
    int mid = d.run(d.start, w({0}));
    auto p1 = shortest_prefix_to(d, mid);
    REQUIRE(p1.has_value());
    CHECK(d.run(d.start, *p1) == mid);
}
