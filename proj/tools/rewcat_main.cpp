#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rewcat/specfile.hpp"

using namespace rewcat;

int main(int argc, char** argv) {
    CLI::App app{"Verifier for finitely presented rewrite 2-categories"};

    std::string spec_path, preset_name, json_path, dot_path;
    RunOptions opts;
    app.add_option("spec", spec_path, "Spec file to run");
    app.add_option("--preset", preset_name,
                   "Built-in presentation (monad, composite-monad, adjunction, "
                   "two-monads-intro)");
    app.add_option("--maxlen", opts.maxlen_override, "Override max string length");
    app.add_option("--depth", opts.budget.depth, "Search depth for equality proofs");
    app.add_option("--nodes", opts.budget.nodes, "Node budget for equality proofs");
    app.add_option("--json", json_path, "Write the machine-readable report here");
    app.add_option("--dot", dot_path, "Write a DOT graph (first diagram or normalize task)");
    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (!preset_name.empty()) {
        try {
            text = preset_spec_text(preset_name);
        } catch (const std::invalid_argument& e) {
            std::cerr << e.what() << "\n";
            return 3;
        }
    } else if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        if (!in) {
            std::cerr << "cannot open " << spec_path << "\n";
            return 3;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    } else {
        std::cerr << "give a spec file or --preset NAME\n";
        return 3;
    }

    ParseResult parsed = parse_spec(text);
    if (!parsed.ok()) {
        for (const ParseError& e : parsed.errors)
            std::cerr << "line " << e.line << ": " << e.message << "\n";
        return 3;
    }
    const SpecFile& spec = *parsed.spec;

    nlohmann::json tasks = nlohmann::json::array();
    int code = run(spec, opts, std::cout, &tasks);

    if (!json_path.empty()) {
        nlohmann::json report;
        report["timestamp"] =
            static_cast<long long>(std::chrono::duration_cast<std::chrono::seconds>(
                                       std::chrono::system_clock::now().time_since_epoch())
                                       .count());
        report["tasks"] = tasks;
        report["exit"] = code;
        std::ofstream out(json_path);
        out << report.dump(2) << "\n";
    }

    if (!dot_path.empty()) {
        std::string dot = "digraph empty {\n}\n";
        for (const Task& t : spec.tasks) {
            if (t.kind == Task::Kind::DiagramCheck) {
                dot = export_dot_diagram(spec.presentation, t.diagram);
                break;
            }
            if (t.kind == Task::Kind::Normalize) {
                dot = export_dot_reduction(spec.presentation, t.string,
                                           base_rules(spec.presentation));
                break;
            }
        }
        std::ofstream out(dot_path);
        out << dot;
    }
    return code;
}
