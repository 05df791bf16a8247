#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rewcat/presentation.hpp"

namespace rewcat {

enum class RuleClass { Good, Bad };

// Bad iff the rule strictly increases string length.
inline RuleClass classify(const Presentation& pres, RuleId r) {
    return pres.rule_rhs(r).size() > pres.rule_lhs(r).size() ? RuleClass::Bad : RuleClass::Good;
}

inline bool is_good(const Presentation& pres, RuleId r) {
    return classify(pres, r) == RuleClass::Good;
}

std::vector<RuleId> base_rules(const Presentation& pres);
std::vector<RuleId> good_rules(const Presentation& pres);
std::vector<RuleId> bad_rules(const Presentation& pres);

// Builds the step applying `rule` at position `pos` of `s`, if the lhs
// matches there (for an empty lhs, if the boundary cell matches).
std::optional<Step> make_step(const Presentation& pres, const TypedString& s, size_t pos,
                              RuleId rule);

// All steps with source s, ordered by redex position, then by the order rules
// appear in `rules`. Empty-lhs rules match at every boundary 0..|s| where the
// boundary cell agrees.
std::vector<Step> find_redexes(const Presentation& pres, const TypedString& s,
                               const std::vector<RuleId>& rules);

inline TypedString apply_step(const Presentation& pres, const Step& st) {
    return pres.target_of(st);
}

// Termination measure: (length, word under the generator precedence).
// Returns true iff a < b in the well-founded order.
bool measure_less(const Presentation& pres, const TypedString& a, const TypedString& b);

struct TerminationResult {
    bool terminating = true;
    std::string offending_rule;
};

// Terminating iff every good rule strictly decreases (length, lex); whiskering
// preserves the comparison, so the rule-level check suffices.
TerminationResult check_termination(const Presentation& pres);
TerminationResult check_termination(const Presentation& pres, const std::vector<RuleId>& rules);

enum class Strategy { LeftmostFirst, RightmostFirst };

// Repeatedly applies good rules at the first redex in deterministic order
// until none applies; returns the normal form and the witnessing derivation.
Derivation normalize_good(const Presentation& pres, const TypedString& s,
                          Strategy strategy = Strategy::LeftmostFirst);
Derivation normalize_good(const Presentation& pres, const TypedString& s,
                          const std::vector<RuleId>& goods, Strategy strategy);

struct SearchBudget {
    int max_extra_len = 4;  // intermediate strings may exceed the endpoints by this much
    int max_depth = 24;
    int max_nodes = 20000;
};

struct FindResult {
    std::optional<Derivation> derivation;
    std::string diagnostics;  // which bound was hit, when not found
};

// Finds some derivation s => target. Tries bad-rule insertions followed by
// good normalization first (the shape the existence proofs use), then falls
// back to bounded breadth-first search over all rules. NotFound is not a
// proof of nonexistence.
FindResult find_derivation(const Presentation& pres, const TypedString& s,
                           const TypedString& target, const SearchBudget& budget = {});
FindResult find_derivation(const Presentation& pres, const TypedString& s,
                           const TypedString& target, const std::vector<RuleId>& rules,
                           const SearchBudget& budget);

// All universe members with length <= max_len, ordered by (length, lex).
std::vector<TypedString> enumerate_strings(const Presentation& pres, const Universe& uni,
                                           int max_len);

// Number of precedence inversions (higher-ranked generator before a
// lower-ranked one); bounds good derivation length together with |s|.
int inversions(const Presentation& pres, const TypedString& s);

}  // namespace rewcat
