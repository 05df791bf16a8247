#include "rewcat/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace rewcat {
namespace {

// Thompson-style NFA with epsilon moves.
struct Nfa {
    struct State {
        std::vector<std::pair<int, int>> edges;  // (symbol, target), symbol -1 = epsilon
    };
    std::vector<State> states;
    int start = 0;
    int accept = 0;

    int add() {
        states.emplace_back();
        return static_cast<int>(states.size()) - 1;
    }
};

struct Frag {
    int start, accept;
};

class PatternParser {
public:
    PatternParser(const std::string& text, const std::vector<std::string>& names)
        : text_(text), names_(names) {}

    Nfa parse() {
        Frag f = parse_alt();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        nfa_.start = f.start;
        nfa_.accept = f.accept;
        return std::move(nfa_);
    }

private:
    Frag parse_alt() {
        Frag f = parse_cat();
        while (peek() == '|') {
            ++pos_;
            Frag g = parse_cat();
            int s = nfa_.add(), a = nfa_.add();
            nfa_.states[s].edges.push_back({-1, f.start});
            nfa_.states[s].edges.push_back({-1, g.start});
            nfa_.states[f.accept].edges.push_back({-1, a});
            nfa_.states[g.accept].edges.push_back({-1, a});
            f = {s, a};
        }
        return f;
    }

    Frag parse_cat() {
        std::optional<Frag> acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '\0' || c == '|' || c == ')') break;
            Frag g = parse_rep();
            if (!acc) {
                acc = g;
            } else {
                nfa_.states[acc->accept].edges.push_back({-1, g.start});
                acc->accept = g.accept;
            }
        }
        if (!acc) {  // empty word
            int s = nfa_.add();
            acc = Frag{s, s};
        }
        return *acc;
    }

    Frag parse_rep() {
        Frag f = parse_atom();
        skip_ws();
        while (peek() == '*') {
            ++pos_;
            int s = nfa_.add(), a = nfa_.add();
            nfa_.states[s].edges.push_back({-1, f.start});
            nfa_.states[s].edges.push_back({-1, a});
            nfa_.states[f.accept].edges.push_back({-1, f.start});
            nfa_.states[f.accept].edges.push_back({-1, a});
            f = {s, a};
            skip_ws();
        }
        return f;
    }

    Frag parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Frag f = parse_alt();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return f;
        }
        // Greedy longest match against declared symbol names.
        int best = -1;
        size_t best_len = 0;
        for (size_t i = 0; i < names_.size(); ++i) {
            const std::string& n = names_[i];
            if (n.size() > best_len && text_.compare(pos_, n.size(), n) == 0) {
                best = static_cast<int>(i);
                best_len = n.size();
            }
        }
        if (best < 0) fail("unknown symbol");
        pos_ += best_len;
        int s = nfa_.add(), a = nfa_.add();
        nfa_.states[s].edges.push_back({best, a});
        return {s, a};
    }

    char peek() const {
        size_t p = pos_;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        return p < text_.size() ? text_[p] : '\0';
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("pattern error at offset " + std::to_string(pos_) + ": " + msg +
                                 " in \"" + text_ + "\"");
    }

    const std::string& text_;
    const std::vector<std::string>& names_;
    Nfa nfa_;
    size_t pos_ = 0;
};

std::set<int> eps_closure(const Nfa& nfa, std::set<int> states) {
    std::deque<int> work(states.begin(), states.end());
    while (!work.empty()) {
        int s = work.front();
        work.pop_front();
        for (auto [sym, t] : nfa.states[s].edges) {
            if (sym == -1 && states.insert(t).second) work.push_back(t);
        }
    }
    return states;
}

Dfa determinize(const Nfa& nfa, int num_symbols) {
    Dfa dfa;
    dfa.num_symbols = num_symbols;
    std::map<std::set<int>, int> index;
    std::vector<std::set<int>> order;

    auto intern = [&](std::set<int> s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(order.size());
        index.emplace(s, id);
        order.push_back(std::move(s));
        dfa.next.emplace_back(num_symbols, -1);
        dfa.accept.push_back(order.back().count(nfa.accept) > 0);
        return id;
    };

    intern(eps_closure(nfa, {nfa.start}));
    for (size_t i = 0; i < order.size(); ++i) {
        for (int sym = 0; sym < num_symbols; ++sym) {
            std::set<int> moved;
            for (int s : order[i]) {
                for (auto [a, t] : nfa.states[s].edges) {
                    if (a == sym) moved.insert(t);
                }
            }
            dfa.next[i][sym] = intern(eps_closure(nfa, std::move(moved)));
        }
    }
    return dfa;
}

}  // namespace

Dfa compile_pattern(const std::string& pattern, const std::vector<std::string>& symbol_names) {
    PatternParser parser(pattern, symbol_names);
    Nfa nfa = parser.parse();
    return determinize(nfa, static_cast<int>(symbol_names.size()));
}

std::vector<std::vector<int>> enumerate_words(const Dfa& dfa, int max_len) {
    std::vector<std::vector<int>> out;
    std::vector<int> word;
    // Depth-first by length: iterate lengths to keep (length, lex) order.
    for (int len = 0; len <= max_len; ++len) {
        std::vector<std::pair<int, int>> stack;  // (state, next symbol to try) alongside word
        word.clear();
        int state = dfa.start;
        stack.push_back({state, 0});
        while (!stack.empty()) {
            auto& [st, sym] = stack.back();
            if (static_cast<int>(word.size()) == len) {
                if (dfa.accept[st]) out.push_back(word);
                stack.pop_back();
                if (!word.empty()) word.pop_back();
                continue;
            }
            if (sym >= dfa.num_symbols) {
                stack.pop_back();
                if (!word.empty()) word.pop_back();
                continue;
            }
            int target = dfa.next[st][sym];
            ++sym;
            word.push_back(sym - 1);
            stack.push_back({target, 0});
        }
    }
    return out;
}

std::optional<std::vector<int>> distinguishing_suffix(const Dfa& dfa, int from, int other) {
    int n = dfa.num_states();
    std::vector<int> prev(n * n, -2);  // -2 unvisited; else encoded (state-pair, symbol)
    std::vector<int> prev_sym(n * n, -1);
    std::deque<int> work;
    auto enc = [n](int a, int b) { return a * n + b; };
    int start = enc(from, other);
    prev[start] = -1;
    work.push_back(start);
    while (!work.empty()) {
        int cur = work.front();
        work.pop_front();
        int a = cur / n, b = cur % n;
        if (dfa.accept[a] && !dfa.accept[b]) {
            std::vector<int> word;
            for (int p = cur; prev[p] != -1; p = prev[p]) word.push_back(prev_sym[p]);
            std::reverse(word.begin(), word.end());
            return word;
        }
        for (int sym = 0; sym < dfa.num_symbols; ++sym) {
            int nxt = enc(dfa.next[a][sym], dfa.next[b][sym]);
            if (prev[nxt] == -2) {
                prev[nxt] = cur;
                prev_sym[nxt] = sym;
                work.push_back(nxt);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<int>> shortest_prefix_to(const Dfa& dfa, int state) {
    int n = dfa.num_states();
    std::vector<int> prev(n, -2), prev_sym(n, -1);
    std::deque<int> work;
    prev[dfa.start] = -1;
    work.push_back(dfa.start);
    while (!work.empty()) {
        int cur = work.front();
        work.pop_front();
        if (cur == state) {
            std::vector<int> word;
            for (int p = cur; prev[p] != -1; p = prev[p]) word.push_back(prev_sym[p]);
            std::reverse(word.begin(), word.end());
            return word;
        }
        for (int sym = 0; sym < dfa.num_symbols; ++sym) {
            int nxt = dfa.next[cur][sym];
            if (prev[nxt] == -2) {
                prev[nxt] = cur;
                prev_sym[nxt] = sym;
                work.push_back(nxt);
            }
        }
    }
    return std::nullopt;
}

}  // namespace rewcat
