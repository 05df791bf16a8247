#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rewcat/confluence.hpp"
#include "rewcat/presentation.hpp"
#include "rewcat/rewrite.hpp"
#include "rewcat/specfile.hpp"
#include "rewcat/terminality.hpp"

namespace py = pybind11;
using namespace rewcat;

namespace {

TypedString parse_or_throw(const Presentation& p, const std::string& s) {
    std::string err;
    auto r = parse_string(p, s, &err);
    if (!r) throw py::value_error(err);
    return *r;
}

RuleId rule_or_throw(const Presentation& p, const std::string& name) {
    auto r = p.rule_id(name);
    if (!r) throw py::value_error("unknown rule '" + name + "'");
    return *r;
}

py::dict law_report(const LawReport& rep) {
    py::dict out;
    out["ok"] = rep.all_equal();
    out["error"] = rep.error;
    py::list laws;
    for (const auto& l : rep.laws) {
        py::dict d;
        d["name"] = l.name;
        d["equal"] = l.verdict.equal;
        laws.append(d);
    }
    out["laws"] = laws;
    return out;
}

}  // namespace

PYBIND11_MODULE(rewcat, m) {
    m.doc() = "typed string rewriting: confluence, derivation equivalence, terminality";

    py::class_<Presentation>(m, "Presentation")
        .def("__repr__",
             [](const Presentation& p) { return print_presentation(p); })
        .def_property_readonly("rule_names",
                               [](const Presentation& p) {
                                   std::vector<std::string> out;
                                   for (RuleId r = 0; r < p.num_all_rules(); ++r)
                                       out.push_back(p.rule_name(r));
                                   return out;
                               })
        .def_property_readonly("universe_names", [](const Presentation& p) {
            std::vector<std::string> out;
            for (const Universe& u : p.universes) out.push_back(u.name);
            return out;
        });

    m.def("preset", &preset, py::arg("name"),
          "Built-in presentation: monad, composite-monad, adjunction, two-monads-intro");
    m.def("preset_spec_text", &preset_spec_text, py::arg("name"));

    m.def(
        "normalize",
        [](const Presentation& p, const std::string& s) {
            Derivation d = normalize_good(p, parse_or_throw(p, s));
            return py::make_tuple(p.str(p.target_of(d)), d.steps.size());
        },
        py::arg("presentation"), py::arg("string"),
        "Good-rule normal form and the number of steps taken");

    m.def(
        "check_confluence",
        [](const Presentation& p) {
            ConfluenceReport gc = check_good_confluence(p);
            ConfluenceReport be = check_bad_elimination(p);
            py::dict out;
            out["ok"] = gc.ok && be.ok;
            out["good_confluence"] = gc.ok;
            out["bad_elimination"] = be.ok;
            out["terminating"] = gc.termination.terminating;
            out["critical_pairs"] = gc.pairs.size() + be.pairs.size();
            out["message"] = gc.ok ? be.message : gc.message;
            return out;
        },
        py::arg("presentation"));

    m.def(
        "check_terminal",
        [](const Presentation& p, const std::string& candidate, const std::string& universe,
           int max_len) {
            TerminalityReport r =
                check_terminal(p, parse_or_throw(p, candidate), universe, max_len);
            py::dict out;
            out["terminal"] = r.terminal;
            out["message"] = r.message;
            out["strings_checked"] = r.per_string.size();
            return out;
        },
        py::arg("presentation"), py::arg("candidate"), py::arg("universe"),
        py::arg("max_len") = 5);

    m.def(
        "verify_monad_laws",
        [](const Presentation& p, const std::string& t, const std::string& mu,
           const std::string& eta) {
            return law_report(verify_monad_laws(p, parse_or_throw(p, t), rule_or_throw(p, mu),
                                                rule_or_throw(p, eta)));
        },
        py::arg("presentation"), py::arg("t"), py::arg("mu"), py::arg("eta"));

    m.def(
        "verify_adjunction_laws",
        [](const Presentation& p, const std::string& f, const std::string& g,
           const std::string& eta, const std::string& eps) {
            return law_report(verify_adjunction_laws(p, parse_or_throw(p, f),
                                                     parse_or_throw(p, g),
                                                     rule_or_throw(p, eta),
                                                     rule_or_throw(p, eps)));
        },
        py::arg("presentation"), py::arg("f"), py::arg("g"), py::arg("eta"), py::arg("eps"));

    m.def(
        "count_hom_classes",
        [](const Presentation& p, const std::string& x, const std::string& candidate,
           int depth) {
            HomClassReport h =
                count_hom_classes(p, parse_or_throw(p, x), parse_or_throw(p, candidate), depth);
            return py::make_tuple(h.classes, h.partial);
        },
        py::arg("presentation"), py::arg("x"), py::arg("candidate"), py::arg("depth") = 6);

    m.def(
        "run_spec",
        [](const std::string& text, int maxlen) {
            ParseResult pr = parse_spec(text);
            if (!pr.ok()) {
                std::string msg = "spec parse failed:";
                for (const auto& e : pr.errors)
                    msg += " line " + std::to_string(e.line) + ": " + e.message + ";";
                throw py::value_error(msg);
            }
            RunOptions opts;
            opts.maxlen_override = maxlen;
            std::ostringstream out;
            nlohmann::json report = nlohmann::json::array();
            int exit = run(*pr.spec, opts, out, &report);
            py::dict res;
            res["exit"] = exit;
            res["output"] = out.str();
            res["report"] = report.dump(2);
            return res;
        },
        py::arg("text"), py::arg("maxlen") = -1,
        "Parses and executes a spec; returns exit code, human output, JSON report text");

    m.def(
        "reduction_dot",
        [](const Presentation& p, const std::string& root,
           const std::vector<std::string>& rules) {
            std::vector<RuleId> ids;
            for (const std::string& r : rules) ids.push_back(rule_or_throw(p, r));
            return export_dot_reduction(p, parse_or_throw(p, root), ids);
        },
        py::arg("presentation"), py::arg("root"), py::arg("rules"));
}
