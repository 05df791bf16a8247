#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rewcat {

// Deterministic finite automaton over a small integer alphabet.
// State 0 is the start state; there is always a complete transition table
// (a non-accepting dead state absorbs everything else).
struct Dfa {
    int num_symbols = 0;
    int start = 0;
    std::vector<std::vector<int>> next;  // [state][symbol]
    std::vector<bool> accept;

    int num_states() const { return static_cast<int>(next.size()); }

    int run(int state, const std::vector<int>& word) const {
        for (int sym : word) state = next[state][sym];
        return state;
    }

    bool accepts(const std::vector<int>& word) const { return accept[run(start, word)]; }
};

// Parses a pattern over the given symbol names (juxtaposition, '|', '*',
// parentheses) and compiles it to a DFA. Symbol names are matched greedily
// (longest declared name first); whitespace separates tokens but is optional
// where the greedy match is unambiguous.
// Throws std::runtime_error on a malformed pattern or unknown name.
Dfa compile_pattern(const std::string& pattern, const std::vector<std::string>& symbol_names);

// All accepted words of length <= max_len, ordered by (length, lex on symbol ids).
std::vector<std::vector<int>> enumerate_words(const Dfa& dfa, int max_len);

// Shortest word w accepted from state `from` but rejected from state `other`,
// if one exists. Used to produce closure counterexamples.
std::optional<std::vector<int>> distinguishing_suffix(const Dfa& dfa, int from, int other);

// Shortest word leading from the start state to `state`.
std::optional<std::vector<int>> shortest_prefix_to(const Dfa& dfa, int state);

}  // namespace rewcat
