#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rewcat/automaton.hpp"

namespace rewcat {

using CellId = int;
using GenId = int;
// Rule ids index base rules first, then derived rules.
using RuleId = int;

struct Cell {
    std::string name;
};

struct Gen {
    std::string name;
    CellId dom = -1;
    CellId cod = -1;
};

// A composable word of 1-cell generators. The leftmost generator is the
// outermost (applied last): dom = dom(last), cod = cod(first). An empty
// string is the identity 1-cell at `base`.
struct TypedString {
    std::vector<GenId> gens;
    CellId base = -1;  // meaningful only when gens is empty

    size_t size() const { return gens.size(); }
    bool empty() const { return gens.empty(); }

    friend bool operator==(const TypedString& a, const TypedString& b) {
        if (a.gens != b.gens) return false;
        return !a.gens.empty() || a.base == b.base;
    }
    friend bool operator!=(const TypedString& a, const TypedString& b) { return !(a == b); }
    friend bool operator<(const TypedString& a, const TypedString& b) {
        if (a.gens != b.gens) return a.gens < b.gens;
        if (!a.gens.empty()) return false;
        return a.base < b.base;
    }
};

struct Rule {
    std::string name;
    TypedString lhs;
    TypedString rhs;
};

struct Step;
struct Derivation;

// One rule application in a whisker context: source = left . lhs . right.
struct Step {
    TypedString left;
    RuleId rule = -1;
    TypedString right;

    size_t pos() const { return left.size(); }

    friend bool operator==(const Step& a, const Step& b) {
        return a.rule == b.rule && a.left == b.left && a.right == b.right;
    }
    friend bool operator!=(const Step& a, const Step& b) { return !(a == b); }
};

// A composable sequence of steps; the empty sequence is the identity 2-cell.
struct Derivation {
    TypedString source;
    std::vector<Step> steps;

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return a.source == b.source && a.steps == b.steps;
    }
    friend bool operator!=(const Derivation& a, const Derivation& b) { return !(a == b); }
};

// A derived rule is a definitional macro: a single named rewrite whose body
// is a derivation over previously defined rules.
struct DerivedRule {
    std::string name;
    TypedString lhs;
    TypedString rhs;
    Derivation body;
};

// A declared equality between two parallel derivations.
struct Equation {
    std::string name;
    Derivation left;
    Derivation right;
};

struct Universe {
    std::string name;
    std::string pattern;
    Dfa dfa;
};

struct Presentation {
    std::vector<Cell> cells;
    std::vector<Gen> gens;
    std::vector<Rule> rules;
    std::vector<DerivedRule> derived_rules;
    std::vector<Equation> equations;
    std::vector<Universe> universes;
    // precedence[k] = rank of gen k in the termination order (smaller = earlier).
    std::vector<int> precedence;

    int num_base_rules() const { return static_cast<int>(rules.size()); }
    int num_all_rules() const { return num_base_rules() + static_cast<int>(derived_rules.size()); }
    bool is_derived(RuleId r) const { return r >= num_base_rules(); }
    const DerivedRule& derived(RuleId r) const { return derived_rules[r - num_base_rules()]; }
    const std::string& rule_name(RuleId r) const {
        return is_derived(r) ? derived(r).name : rules[r].name;
    }
    const TypedString& rule_lhs(RuleId r) const {
        return is_derived(r) ? derived(r).lhs : rules[r].lhs;
    }
    const TypedString& rule_rhs(RuleId r) const {
        return is_derived(r) ? derived(r).rhs : rules[r].rhs;
    }

    std::optional<CellId> cell_id(const std::string& name) const;
    std::optional<GenId> gen_id(const std::string& name) const;
    std::optional<RuleId> rule_id(const std::string& name) const;  // base or derived
    const Universe* universe(const std::string& name) const;

    CellId dom(const TypedString& s) const {
        return s.empty() ? s.base : gens[s.gens.back()].dom;
    }
    CellId cod(const TypedString& s) const {
        return s.empty() ? s.base : gens[s.gens.front()].cod;
    }
    // Cell at boundary p (0 = outermost/left end, size = innermost/right end).
    CellId boundary_cell(const TypedString& s, size_t p) const {
        if (s.empty()) return s.base;
        return p < s.size() ? gens[s.gens[p]].cod : gens[s.gens.back()].dom;
    }
    bool well_typed(const TypedString& s) const;

    TypedString substring(const TypedString& s, size_t from, size_t len) const;
    std::string str(const TypedString& s) const;  // "T T P" or "1_C"

    TypedString source_of(const Step& st) const;
    TypedString target_of(const Step& st) const;
    TypedString target_of(const Derivation& d) const;
    bool valid(const Step& st) const;
    bool valid(const Derivation& d) const;
    std::string str(const Step& st) const;
    std::string str(const Derivation& d) const;
};

struct BuildError {
    std::string where;  // name of the offending declaration
    std::string message;
};

struct BuildResult {
    std::optional<Presentation> presentation;
    std::vector<BuildError> errors;

    bool ok() const { return presentation.has_value(); }
};

// Incremental construction with full typing validation. Declarations may be
// added in any dependency-respecting order; build() validates everything and
// either yields a Presentation or the list of typing errors.
class PresentationBuilder {
public:
    PresentationBuilder& cell(const std::string& name);
    PresentationBuilder& gen(const std::string& name, const std::string& dom,
                             const std::string& cod);
    // STR syntax: whitespace-separated gen names, or "1_CELL" for an identity.
    PresentationBuilder& rule(const std::string& name, const std::string& lhs,
                              const std::string& rhs);
    // Body steps: (left context) rule (right context), contexts as STR or "".
    struct RawStep {
        std::string left, rule, right;
    };
    struct RawDerivation {
        std::optional<std::string> id_string;  // set for identity derivations
        std::vector<RawStep> steps;
    };
    PresentationBuilder& derived_rule(const std::string& name, const std::string& lhs,
                                      const std::string& rhs, const RawDerivation& body);
    PresentationBuilder& equation(const std::string& name, const RawDerivation& left,
                                  const RawDerivation& right);
    PresentationBuilder& universe(const std::string& name, const std::string& pattern);
    PresentationBuilder& precedence(const std::vector<std::string>& gen_names);

    BuildResult build() const;

private:
    struct RawRule {
        std::string name, lhs, rhs;
    };
    struct RawDerivedRule {
        std::string name, lhs, rhs;
        RawDerivation body;
    };
    struct RawEquation {
        std::string name;
        RawDerivation left, right;
    };
    struct RawUniverse {
        std::string name, pattern;
    };
    std::vector<std::string> cells_;
    std::vector<std::tuple<std::string, std::string, std::string>> gens_;
    std::vector<RawRule> rules_;
    std::vector<RawDerivedRule> derived_;
    std::vector<RawEquation> equations_;
    std::vector<RawUniverse> universes_;
    std::vector<std::string> precedence_;
};

// Parses a STR ("T T P" or "1_C") against a presentation under construction.
// On error returns nullopt and appends a message.
std::optional<TypedString> validate_string(const Presentation& pres,
                                           const std::vector<std::string>& gen_names,
                                           const std::optional<std::string>& base_cell,
                                           std::string* error);
std::optional<TypedString> parse_string(const Presentation& pres, const std::string& text,
                                        std::string* error);

// Builds a derivation from its raw (context, rule, context) step syntax.
// Empty contexts take their base cell from the rule's endpoints; the source
// of the derivation is inferred from the first step (or given, for id).
std::optional<Derivation> make_derivation(const Presentation& pres,
                                          const PresentationBuilder::RawDerivation& raw,
                                          std::string* error);

// Concatenation s1 . s2 (s1 outermost); requires dom(s1) == cod(s2).
std::optional<TypedString> concat(const Presentation& pres, const TypedString& s1,
                                  const TypedString& s2, std::string* error);

// Built-in presentations: "monad", "composite-monad", "adjunction",
// "two-monads-intro". Throws std::invalid_argument on an unknown name.
Presentation preset(const std::string& name);

struct ClosureResult {
    bool closed = true;
    // On failure: a universe member and the offending rewrite result.
    std::string witness_string;
    std::string witness_result;
    std::string rule;
};

// Checks that the universe's language is closed under the given rules
// (derived rules act as single rewrites). Product-automaton containment;
// exact, with a shortest counterexample on failure.
ClosureResult check_universe_closed(const Presentation& pres, const Universe& uni,
                                    const std::vector<RuleId>& active_rules);

}  // namespace rewcat
