#include "rewcat/confluence.hpp"

#include <algorithm>

namespace rewcat {

namespace {

// Overlays `word` at offset `at` into `gens` (extending as needed); false on
// a symbol clash in the overlap.
bool overlay(std::vector<GenId>& gens, const TypedString& word, int at) {
    if (at + static_cast<int>(word.size()) > static_cast<int>(gens.size()))
        gens.resize(at + word.size(), -1);
    for (int i = 0; i < static_cast<int>(word.size()); ++i) {
        GenId& slot = gens[at + i];
        if (slot != -1 && slot != word.gens[i]) return false;
        slot = word.gens[i];
    }
    return true;
}

bool complete(const std::vector<GenId>& gens) {
    return std::find(gens.begin(), gens.end(), -1) == gens.end();
}

}  // namespace

std::vector<CriticalPair> divergence_pairs(const Presentation& pres) {
    std::vector<CriticalPair> out;
    std::vector<RuleId> goods = good_rules(pres);
    for (RuleId r1 : goods) {
        const TypedString& l1 = pres.rule_lhs(r1);
        for (RuleId r2 : goods) {
            const TypedString& l2 = pres.rule_lhs(r2);
            for (int o = 0; o < static_cast<int>(l1.size()); ++o) {
                // Overlap must be nonempty; an empty redex counts only when
                // strictly inside the other. Offset 0 pairs are unordered.
                if (l2.empty() && o == 0) continue;
                if (o == 0 && r1 >= r2) continue;
                std::vector<GenId> gens;
                if (!overlay(gens, l1, 0) || !overlay(gens, l2, o)) continue;
                if (!complete(gens)) continue;
                TypedString peak;
                peak.gens = gens;
                if (!pres.well_typed(peak)) continue;
                auto a = make_step(pres, peak, 0, r1);
                auto b = make_step(pres, peak, o, r2);
                if (!a || !b) continue;
                out.push_back({CriticalPair::Kind::Divergence, peak, *a, *b});
            }
        }
    }
    return out;
}

std::vector<CriticalPair> absorption_pairs(const Presentation& pres) {
    std::vector<CriticalPair> out;
    std::vector<RuleId> bads = bad_rules(pres);
    std::vector<RuleId> goods = good_rules(pres);
    for (RuleId rb : bads) {
        const TypedString& lb = pres.rule_lhs(rb);
        int qb = static_cast<int>(pres.rule_rhs(rb).size());
        for (RuleId rg : goods) {
            const TypedString& lg = pres.rule_lhs(rg);
            int pg = static_cast<int>(lg.size());
            // Configurations with min(insert position p, redex start b) == 0
            // and the intervals [p, p+qb), [b, b+pg) intersecting.
            std::vector<std::pair<int, int>> configs;  // (p, b)
            for (int b = 0; b < qb; ++b)
                if (b + pg > 0) configs.push_back({0, b});
            for (int p = 1; p < pg; ++p) configs.push_back({p, 0});
            for (auto [p, b] : configs) {
                std::vector<GenId> gens;
                if (!overlay(gens, pres.rule_rhs(rb), p) || !overlay(gens, lg, b)) continue;
                if (!complete(gens)) continue;
                TypedString merged;
                merged.gens = gens;
                if (!pres.well_typed(merged)) continue;
                // The peak replaces the inserted block by the bad rule's lhs.
                TypedString peak;
                peak.gens.assign(merged.gens.begin(), merged.gens.begin() + p);
                peak.gens.insert(peak.gens.end(), lb.gens.begin(), lb.gens.end());
                peak.gens.insert(peak.gens.end(), merged.gens.begin() + p + qb,
                                 merged.gens.end());
                if (peak.empty()) peak.base = pres.boundary_cell(merged, p);
                if (!pres.well_typed(peak)) continue;
                auto a = make_step(pres, peak, p, rb);
                if (!a || pres.target_of(*a) != merged) continue;
                auto bstep = make_step(pres, merged, b, rg);
                if (!bstep) continue;
                out.push_back({CriticalPair::Kind::Absorption, peak, *a, *bstep});
            }
        }
    }
    return out;
}

std::vector<CriticalPair> critical_pairs(const Presentation& pres) {
    std::vector<CriticalPair> out = divergence_pairs(pres);
    auto abs = absorption_pairs(pres);
    out.insert(out.end(), abs.begin(), abs.end());
    return out;
}

PairCertificate certify_pair(const Presentation& pres, const CriticalPair& pair,
                             const Budget& budget) {
    PairCertificate cert;
    if (pair.kind == CriticalPair::Kind::Absorption) {
        cert.left = Derivation{pair.peak, {pair.a, pair.b}};
        ProofTrace trace;
        if (auto pushed = push_bad_after_good(pres, cert.left, &trace)) {
            cert.status = PairCertificate::Status::Certified;
            cert.right = std::move(*pushed);
            cert.trace = std::move(trace);
        } else {
            cert.diagnostics = "no declared equation absorbs this pattern";
        }
        return cert;
    }

    std::vector<RuleId> goods = good_rules(pres);
    Derivation da{pair.peak, {pair.a}};
    Derivation na = normalize_good(pres, pres.target_of(pair.a), goods,
                                   Strategy::LeftmostFirst);
    da.steps.insert(da.steps.end(), na.steps.begin(), na.steps.end());
    Derivation db{pair.peak, {pair.b}};
    Derivation nb = normalize_good(pres, pres.target_of(pair.b), goods,
                                   Strategy::LeftmostFirst);
    db.steps.insert(db.steps.end(), nb.steps.begin(), nb.steps.end());
    cert.left = da;
    cert.right = db;
    if (pres.target_of(da) != pres.target_of(db)) {
        cert.diagnostics = "sides reach distinct normal forms " +
                           pres.str(pres.target_of(da)) + " and " +
                           pres.str(pres.target_of(db));
        return cert;
    }
    Verdict v = equivalent(pres, da, db, budget);
    if (v.equal) {
        cert.status = PairCertificate::Status::Certified;
        cert.trace = std::move(v.trace);
    } else {
        cert.status = PairCertificate::Status::JoinedUnverified;
        cert.diagnostics = v.diagnostics;
    }
    return cert;
}

namespace {

ConfluenceReport run_pairs(const Presentation& pres, std::vector<CriticalPair> pairs,
                           const Budget& budget) {
    ConfluenceReport rep;
    rep.ok = true;
    for (auto& p : pairs) {
        PairCertificate cert = certify_pair(pres, p, budget);
        if (cert.status != PairCertificate::Status::Certified) {
            rep.ok = false;
            if (rep.message.empty())
                rep.message = "uncertified pair with peak " + pres.str(p.peak) + ": " +
                              cert.diagnostics;
        }
        rep.pairs.push_back({std::move(p), std::move(cert)});
    }
    return rep;
}

}  // namespace

ConfluenceReport check_good_confluence(const Presentation& pres, const Budget& budget) {
    ConfluenceReport rep = run_pairs(pres, divergence_pairs(pres), budget);
    rep.termination = check_termination(pres);
    if (!rep.termination.terminating) {
        rep.ok = false;
        rep.message = "good rule " + rep.termination.offending_rule +
                      " does not decrease the termination measure";
    }
    return rep;
}

ConfluenceReport check_bad_elimination(const Presentation& pres, const Budget& budget) {
    return run_pairs(pres, absorption_pairs(pres), budget);
}

}  // namespace rewcat
