#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rewcat/confluence.hpp"
#include "rewcat/equivalence.hpp"
#include "rewcat/presentation.hpp"
#include "rewcat/rewrite.hpp"

namespace rewcat {

struct StringResult {
    TypedString string;
    std::optional<Derivation> existence;
    enum class Uniqueness { Certified, Unknown } uniqueness = Uniqueness::Unknown;
    std::string note;
};

struct TerminalityReport {
    TypedString candidate;
    std::string universe;
    int max_len = 0;
    std::vector<StringResult> per_string;
    bool terminal = false;  // NotCertified when false
    // Which structural certificates back the unbounded claim.
    std::string basis;
    std::string message;  // first error or gap
};

// Certifies `candidate` terminal in the rewrite category restricted to
// `universe`: existence of a derivation s => candidate for every universe
// member with |s| <= max_len, and uniqueness up to the congruence, backed by
// good-fragment confluence and absorption certificates.
TerminalityReport check_terminal(const Presentation& pres, const TypedString& candidate,
                                 const std::string& universe, int max_len,
                                 const Budget& budget = {},
                                 const SearchBudget& search = {});

// Same, but existence may use only `active_rules` (derived rules allowed);
// uniqueness is decided in the ambient presentation after expansion.
TerminalityReport check_terminal_subcategory(const Presentation& pres,
                                             const TypedString& candidate,
                                             const std::string& sub_universe,
                                             const std::vector<RuleId>& active_rules,
                                             int max_len, const Budget& budget = {},
                                             const SearchBudget& search = {});

struct LawReport {
    struct Law {
        std::string name;
        Verdict verdict;
    };
    std::vector<Law> laws;
    std::string error;  // typing failure; laws empty in that case

    bool all_equal() const {
        if (!error.empty() || laws.empty()) return false;
        for (const auto& l : laws)
            if (!l.verdict.equal) return false;
        return true;
    }
};

// Associativity and the two unit laws for (t, mu, eta), built as derivations
// on t.t.t and t and decided by the equivalence engine.
LawReport verify_monad_laws(const Presentation& pres, const TypedString& t, RuleId mu,
                            RuleId eta, const Budget& budget = {});

// The two triangle identities for (F, G, eta, eps).
LawReport verify_adjunction_laws(const Presentation& pres, const TypedString& f,
                                 const TypedString& g, RuleId eta, RuleId eps,
                                 const Budget& budget = {});

struct HomClassReport {
    int classes = 0;
    bool partial = false;  // node limit hit; count is for the explored part
    std::vector<Derivation> representatives;
    std::string message;
};

// Brute-force oracle: enumerates every derivation x => candidate of at most
// depth_bound steps (bounded intermediate length) and partitions it by
// explicit congruence closure over exchanges and equation instances. Slow by
// design; use at small depth for cross-validation.
HomClassReport count_hom_classes(const Presentation& pres, const TypedString& x,
                                 const TypedString& candidate, int depth_bound,
                                 int max_nodes = 20000);
HomClassReport count_hom_classes(const Presentation& pres, const TypedString& x,
                                 const TypedString& candidate, int depth_bound,
                                 const std::vector<RuleId>& rules, int max_nodes);

// All derivations from => to with at most `depth` steps, intermediate strings
// no longer than max(|from|, |to|) + extra. Deterministic order; truncated at
// max_count (sets the flag).
struct EnumResult {
    std::vector<Derivation> derivations;
    bool truncated = false;
};
EnumResult enumerate_derivations(const Presentation& pres, const TypedString& from,
                                 const TypedString& to, const std::vector<RuleId>& rules,
                                 int depth, int extra, int max_count,
                                 int max_nodes = 200000);

// Partitions the given parallel derivations by congruence closure over raw
// single moves (exchanges, equation instances, derived-step expansion).
// Independent of the proof-producing engine; used to cross-check it.
HomClassReport congruence_classes(const Presentation& pres,
                                  const std::vector<Derivation>& seeds, int step_cap,
                                  int max_nodes);

}  // namespace rewcat
