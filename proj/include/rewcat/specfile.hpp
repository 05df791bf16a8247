#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rewcat/confluence.hpp"
#include "rewcat/equivalence.hpp"
#include "rewcat/presentation.hpp"
#include "rewcat/terminality.hpp"

#include <json.hpp>

namespace rewcat {

struct Task {
    enum class Kind { Confluence, Terminal, Equiv, Laws, DiagramCheck, Normalize };
    Kind kind = Kind::Confluence;
    std::string name;  // display name, derived from the task line

    // Terminal
    TypedString candidate;
    std::string universe;
    std::vector<RuleId> active_rules;  // empty = all base rules
    int maxlen = -1;                   // -1 = module default

    // Equiv
    Derivation lhs, rhs;

    // Laws
    bool monad_laws = true;
    TypedString t1, t2;  // monad: t; adjunction: f, g
    RuleId law_rule1 = -1, law_rule2 = -1;

    // Diagram
    Diagram diagram;

    // Normalize
    TypedString string;
};

struct SpecFile {
    Presentation presentation;
    std::vector<Task> tasks;
};

struct ParseError {
    int line = 0;
    std::string message;
};

struct ParseResult {
    std::optional<SpecFile> spec;
    std::vector<ParseError> errors;

    bool ok() const { return spec.has_value(); }
};

ParseResult parse_spec(const std::string& text);

// Declarations in the spec grammar; parse_spec of the output rebuilds an
// identical presentation.
std::string print_presentation(const Presentation& pres);

// The built-in presentations written in the spec grammar, including their
// default task lists.
std::string preset_spec_text(const std::string& name);

struct RunOptions {
    Budget budget;
    SearchBudget search;
    int maxlen_override = -1;
};

// Executes the tasks in order, streaming human-readable lines to `out` and
// appending one record per task to `report` (if given). Exit status: 0 all
// certified, 2 at least one unknown/uncertified, 1 hard failure.
int run(const SpecFile& spec, const RunOptions& opts, std::ostream& out,
        nlohmann::json* report = nullptr);

// Reduction graph of `root` under `rules`: nodes are strings, edges are
// steps labeled by rule name. Breadth-first, deterministic, bounded.
std::string export_dot_reduction(const Presentation& pres, const TypedString& root,
                                 const std::vector<RuleId>& rules, int max_nodes = 256);

std::string export_dot_diagram(const Presentation& pres, const Diagram& dia);

// Renders a proof trace move-by-move ("exchange@2", "eq assoc ->@0+1", ...).
std::string trace_text(const Presentation& pres, const ProofTrace& trace);

}  // namespace rewcat
