#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rewcat/presentation.hpp"
#include "rewcat/rewrite.hpp"

namespace rewcat {

// One congruence move on a derivation. A ProofTrace is a sequence of moves
// whose replay transforms one derivation into another exactly.
struct Move {
    enum class Kind {
        Exchange,        // swap adjacent steps `index`, `index`+1 (disjoint redexes)
        ApplyEquation,   // rewrite a whiskered equation instance at step `index`
        ExpandDerived,   // replace derived step `index` by its whiskered body
        ContractDerived  // inverse of ExpandDerived (`rule` names the derived rule)
    };
    Kind kind = Kind::Exchange;
    int index = 0;
    int equation = -1;     // ApplyEquation
    bool forward = true;   // ApplyEquation: true rewrites left side to right side
    int left_whisker = 0;  // ApplyEquation: generators in the left context
    RuleId rule = -1;      // ContractDerived

    friend bool operator==(const Move&, const Move&) = default;
};

using ProofTrace = std::vector<Move>;

Move invert(const Move& m);
ProofTrace invert(const ProofTrace& t);

// Applies one move; nullopt if the move does not apply to d.
std::optional<Derivation> apply_move(const Presentation& pres, const Derivation& d,
                                     const Move& m);
// Replays a whole trace; nullopt if any move fails.
std::optional<Derivation> replay(const Presentation& pres, const Derivation& d,
                                 const ProofTrace& t);

struct Verdict {
    bool equal = false;
    ProofTrace trace;         // valid only when equal
    std::string diagnostics;  // budget information when unknown
};

struct Budget {
    int nodes = 20000;
    int depth = 8;
};

// Whiskers a derivation: every step's contexts are extended by `left` and
// `right`; the step count is unchanged. Throws std::invalid_argument on a
// typing mismatch.
Derivation whisker(const Presentation& pres, const Derivation& d, const TypedString& left,
                   const TypedString& right);
Step whisker(const Presentation& pres, const Step& st, const TypedString& left,
             const TypedString& right);

// Swaps steps i and i+1 when their redexes are disjoint; nullopt otherwise.
std::optional<Derivation> exchange_adjacent(const Presentation& pres, const Derivation& d,
                                            int i);

// Sorts exchangeable neighbors so the step with the smaller redex start comes
// first (ties between empty redexes at one boundary break by rule order).
// Terminating, idempotent, exchange-equivalent to the input.
Derivation canonical_exchange_form(const Presentation& pres, const Derivation& d,
                                   ProofTrace* trace = nullptr);

// Replaces every derived-rule step by its whiskered defining body, recursively.
Derivation expand_derived(const Presentation& pres, const Derivation& d,
                          ProofTrace* trace = nullptr);

// Rearranges d so no bad step precedes a good step, by exchanging disjoint
// neighbors and rewriting absorption patterns through declared equations.
// The result is never longer than the input. Returns nullopt when some
// absorption pattern has no matching equation.
std::optional<Derivation> push_bad_after_good(const Presentation& pres, const Derivation& d,
                                              ProofTrace* trace = nullptr);

// Decides (semi-decides) equality of two parallel derivations modulo the
// congruence generated by exchange, whiskered equation instances, and
// derived-rule expansion. Sound and incomplete: never asserts inequality.
Verdict equivalent(const Presentation& pres, const Derivation& d1, const Derivation& d2,
                   const Budget& budget = {});

struct Diagram {
    struct Edge {
        std::string from, to;
        Derivation label;
    };
    std::map<std::string, TypedString> nodes;
    std::vector<Edge> edges;
    std::string source, sink;
    std::string name;
};

struct DiagramResult {
    enum class Status { Commutes, Unknown, IllFormed } status = Status::Commutes;
    std::string message;
    // One entry per non-reference source->sink path, in enumeration order.
    std::vector<std::pair<std::string, Verdict>> paths;
};

// Proves every source->sink path equal to a reference path.
DiagramResult check_diagram(const Presentation& pres, const Diagram& dia,
                            const Budget& budget = {});

// All source->sink paths as composite derivations, deterministic order.
std::vector<std::pair<std::string, Derivation>> diagram_paths(const Presentation& pres,
                                                              const Diagram& dia);

}  // namespace rewcat
