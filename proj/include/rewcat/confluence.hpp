#pragma once

#include <string>
#include <vector>

#include "rewcat/equivalence.hpp"
#include "rewcat/presentation.hpp"
#include "rewcat/rewrite.hpp"

namespace rewcat {

// A minimal overlapping peak. Divergence: two good steps from `peak` whose
// redexes overlap (disjoint pairs commute by exchange and are not listed).
// Absorption: a bad step from `peak` whose inserted material meets the redex
// of a following good step; here `b` applies to the target of `a`.
struct CriticalPair {
    enum class Kind { Divergence, Absorption } kind = Kind::Divergence;
    TypedString peak;
    Step a;
    Step b;
};

std::vector<CriticalPair> critical_pairs(const Presentation& pres);
std::vector<CriticalPair> divergence_pairs(const Presentation& pres);
std::vector<CriticalPair> absorption_pairs(const Presentation& pres);

struct PairCertificate {
    enum class Status {
        Certified,         // trace rewrites `left` into `right`
        JoinedUnverified,  // both sides reach one normal form, no trace found
        Failed
    } status = Status::Failed;
    Derivation left;
    Derivation right;
    ProofTrace trace;
    std::string diagnostics;
};

// Divergence: completes both steps to the good normal form and searches for a
// connecting trace. Absorption: rewrites the bad-then-good pair until no bad
// step precedes a good one.
PairCertificate certify_pair(const Presentation& pres, const CriticalPair& pair,
                             const Budget& budget = {});

struct ConfluenceReport {
    bool ok = false;
    TerminationResult termination;
    std::vector<std::pair<CriticalPair, PairCertificate>> pairs;
    std::string message;
};

// Good-fragment confluence: termination plus a certificate for every
// divergence pair.
ConfluenceReport check_good_confluence(const Presentation& pres, const Budget& budget = {});

// Every absorption pair rewrites to a form with no bad step before a good one.
ConfluenceReport check_bad_elimination(const Presentation& pres, const Budget& budget = {});

}  // namespace rewcat
