#include "rewcat/specfile.hpp"

#include <chrono>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace rewcat {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Splits at the first top-level occurrence of `sep` (outside parens/braces).
std::optional<std::pair<std::string, std::string>> split_top(const std::string& s,
                                                             const std::string& sep) {
    int depth = 0;
    for (size_t i = 0; i + sep.size() <= s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (depth == 0 && s.compare(i, sep.size(), sep) == 0) {
            // "=" must not be the first half of "=>"
            if (sep == "=" && i + 1 < s.size() && s[i + 1] == '>') continue;
            return std::make_pair(trim(s.substr(0, i)), trim(s.substr(i + sep.size())));
        }
    }
    return std::nullopt;
}

int brace_balance(const std::string& s) {
    int d = 0;
    for (char c : s) {
        if (c == '{') ++d;
        if (c == '}') --d;
    }
    return d;
}

// DERIV := id(STR) | { STEP ; STEP ; ... }, STEP := (STR) RULE (STR)
std::optional<PresentationBuilder::RawDerivation> parse_raw_deriv(const std::string& text,
                                                                  std::string* err) {
    PresentationBuilder::RawDerivation out;
    std::string s = trim(text);
    if (s.rfind("id", 0) == 0) {
        std::string rest = trim(s.substr(2));
        if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
            *err = "expected id(STR)";
            return std::nullopt;
        }
        out.id_string = trim(rest.substr(1, rest.size() - 2));
        return out;
    }
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
        *err = "expected id(STR) or { ... }";
        return std::nullopt;
    }
    std::string body = trim(s.substr(1, s.size() - 2));
    if (body.empty()) {
        *err = "empty step list; write id(STR) for an identity";
        return std::nullopt;
    }
    for (const std::string& part : split_on(body, ';')) {
        std::string step = trim(part);
        size_t l1 = step.find('(');
        size_t r1 = step.find(')', l1);
        if (l1 == std::string::npos || r1 == std::string::npos) {
            *err = "step must look like (STR) RULE (STR): " + step;
            return std::nullopt;
        }
        size_t l2 = step.find('(', r1);
        size_t r2 = step.find(')', l2);
        if (l2 == std::string::npos || r2 == std::string::npos ||
            trim(step.substr(r2 + 1)).size() != 0) {
            *err = "step must look like (STR) RULE (STR): " + step;
            return std::nullopt;
        }
        PresentationBuilder::RawStep rs;
        rs.left = trim(step.substr(l1 + 1, r1 - l1 - 1));
        rs.rule = trim(step.substr(r1 + 1, l2 - r1 - 1));
        rs.right = trim(step.substr(l2 + 1, r2 - l2 - 1));
        if (rs.rule.empty()) {
            *err = "missing rule name in step: " + step;
            return std::nullopt;
        }
        out.steps.push_back(std::move(rs));
    }
    return out;
}

int default_maxlen(const Presentation& pres, const Universe& uni) {
    int distinct = 0;
    for (const Gen& g : pres.gens)
        if (uni.pattern.find(g.name) != std::string::npos) ++distinct;
    return distinct >= 2 ? 6 : 7;
}

struct Parser {
    ParseResult result;
    PresentationBuilder builder;
    std::map<std::string, int> decl_lines;  // declaration name -> line
    struct RawTask {
        int line;
        std::string text;  // full task text (diagram blocks joined)
    };
    std::vector<RawTask> raw_tasks;
    bool in_tasks = false;

    void error(int line, const std::string& message) {
        result.errors.push_back({line, message});
    }

    void declaration(int line, const std::string& text, const std::vector<std::string>& tok) {
        if (in_tasks) {
            error(line, "declaration after the first task: " + tok[0]);
            return;
        }
        if (tok.size() >= 2) decl_lines.emplace(tok[1], line);
        if (tok[0] == "cell") {
            if (tok.size() != 2) return error(line, "expected: cell NAME");
            builder.cell(tok[1]);
        } else if (tok[0] == "gen") {
            if (tok.size() != 6 || tok[2] != ":" || tok[4] != "->")
                return error(line, "expected: gen NAME : CELL -> CELL");
            builder.gen(tok[1], tok[3], tok[5]);
        } else if (tok[0] == "rule") {
            auto colon = split_top(text, ":");
            auto arrow = colon ? split_top(colon->second, "=>") : std::nullopt;
            auto head = colon ? split_ws(colon->first) : std::vector<std::string>{};
            if (!arrow || head.size() != 2)
                return error(line, "expected: rule NAME : STR => STR");
            builder.rule(head[1], arrow->first, arrow->second);
        } else if (tok[0] == "defrule") {
            auto colon = split_top(text, ":");
            auto arrow = colon ? split_top(colon->second, "=>") : std::nullopt;
            auto eq = arrow ? split_top(arrow->second, "=") : std::nullopt;
            auto head = colon ? split_ws(colon->first) : std::vector<std::string>{};
            if (!arrow || !eq || head.size() != 2)
                return error(line, "expected: defrule NAME : STR => STR = DERIV");
            std::string err;
            auto body = parse_raw_deriv(eq->second, &err);
            if (!body) return error(line, err);
            builder.derived_rule(head[1], arrow->first, eq->first, *body);
        } else if (tok[0] == "eq") {
            auto colon = split_top(text, ":");
            auto eq = colon ? split_top(colon->second, "=") : std::nullopt;
            auto head = colon ? split_ws(colon->first) : std::vector<std::string>{};
            if (!eq || head.size() != 2) return error(line, "expected: eq NAME : DERIV = DERIV");
            std::string err;
            auto left = parse_raw_deriv(eq->first, &err);
            if (!left) return error(line, err);
            auto right = parse_raw_deriv(eq->second, &err);
            if (!right) return error(line, err);
            builder.equation(head[1], *left, *right);
        } else if (tok[0] == "universe") {
            auto eq = split_top(text, "=");
            auto head = eq ? split_ws(eq->first) : std::vector<std::string>{};
            if (!eq || head.size() != 2 || eq->second.empty())
                return error(line, "expected: universe NAME = PATTERN");
            builder.universe(head[1], eq->second);
        } else if (tok[0] == "precedence") {
            std::vector<std::string> names;
            for (const std::string& part : split_on(text.substr(10), '<')) {
                std::string n = trim(part);
                if (n.empty()) return error(line, "expected: precedence a < b < ...");
                names.push_back(n);
            }
            builder.precedence(names);
        } else {
            error(line, "unknown directive: " + tok[0]);
        }
    }
};

std::optional<TypedString> parse_str_or_err(const Presentation& pres, const std::string& text,
                                            Parser& p, int line) {
    std::string err;
    auto s = parse_string(pres, text, &err);
    if (!s) p.error(line, err);
    return s;
}

std::optional<Derivation> parse_deriv_or_err(const Presentation& pres, const std::string& text,
                                             Parser& p, int line) {
    std::string err;
    auto raw = parse_raw_deriv(text, &err);
    if (!raw) {
        p.error(line, err);
        return std::nullopt;
    }
    auto d = make_derivation(pres, *raw, &err);
    if (!d) p.error(line, err);
    return d;
}

std::optional<RuleId> rule_or_err(const Presentation& pres, const std::string& name, Parser& p,
                                  int line) {
    auto r = pres.rule_id(name);
    if (!r) p.error(line, "unknown rule '" + name + "'");
    return r;
}

void parse_terminal_task(const Presentation& pres, Parser& p, int line,
                         const std::vector<std::string>& tok, Task& task) {
    // check terminal STR in UNIVERSE [rules R1,R2] [maxlen N]
    size_t in_pos = 0;
    for (size_t i = 2; i < tok.size(); ++i)
        if (tok[i] == "in") {
            in_pos = i;
            break;
        }
    if (in_pos < 3 || in_pos + 1 >= tok.size())
        return p.error(line, "expected: check terminal STR in UNIVERSE ...");
    std::string str_text;
    for (size_t i = 2; i < in_pos; ++i) str_text += (i > 2 ? " " : "") + tok[i];
    auto cand = parse_str_or_err(pres, str_text, p, line);
    if (!cand) return;
    task.candidate = *cand;
    task.universe = tok[in_pos + 1];
    for (size_t i = in_pos + 2; i < tok.size(); ++i) {
        if (tok[i] == "rules" && i + 1 < tok.size()) {
            for (const std::string& rn : split_on(tok[++i], ',')) {
                auto r = rule_or_err(pres, trim(rn), p, line);
                if (r) task.active_rules.push_back(*r);
            }
        } else if (tok[i] == "maxlen" && i + 1 < tok.size()) {
            task.maxlen = std::atoi(tok[++i].c_str());
        } else {
            return p.error(line, "unexpected token '" + tok[i] + "' in terminal task");
        }
    }
}

void parse_laws_task(const Presentation& pres, Parser& p, int line,
                     const std::vector<std::string>& tok, Task& task) {
    if (tok.size() < 5) return p.error(line, "expected: check laws monad|adjunction ...");
    if (tok[2] == "monad") {
        // check laws monad STR MU ETA (STR may span several generators)
        if (tok.size() < 6) return p.error(line, "expected: check laws monad STR MU ETA");
        task.monad_laws = true;
        std::string str_text;
        for (size_t i = 3; i + 2 < tok.size(); ++i) str_text += (i > 3 ? " " : "") + tok[i];
        auto t = parse_str_or_err(pres, str_text, p, line);
        auto mu = rule_or_err(pres, tok[tok.size() - 2], p, line);
        auto eta = rule_or_err(pres, tok[tok.size() - 1], p, line);
        if (!t || !mu || !eta) return;
        task.t1 = *t;
        task.law_rule1 = *mu;
        task.law_rule2 = *eta;
    } else if (tok[2] == "adjunction") {
        if (tok.size() != 7) return p.error(line, "expected: check laws adjunction F G ETA EPS");
        task.monad_laws = false;
        auto f = parse_str_or_err(pres, tok[3], p, line);
        auto g = parse_str_or_err(pres, tok[4], p, line);
        auto eta = rule_or_err(pres, tok[5], p, line);
        auto eps = rule_or_err(pres, tok[6], p, line);
        if (!f || !g || !eta || !eps) return;
        task.t1 = *f;
        task.t2 = *g;
        task.law_rule1 = *eta;
        task.law_rule2 = *eps;
    } else {
        p.error(line, "expected 'monad' or 'adjunction' after 'check laws'");
    }
}

void parse_diagram_task(const Presentation& pres, Parser& p, int line, const std::string& text,
                        Task& task) {
    // check diagram NAME { node N = STR ... edge A -> B : DERIV ... source N sink N }
    size_t open = text.find('{');
    size_t close = text.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        return p.error(line, "expected: check diagram NAME { ... }");
    auto head = split_ws(text.substr(0, open));
    if (head.size() != 3) return p.error(line, "expected: check diagram NAME { ... }");
    task.diagram.name = head[2];
    task.name = "diagram " + head[2];
    for (const std::string& raw : split_on(text.substr(open + 1, close - open - 1), '\n')) {
        std::string stmt = trim(raw);
        if (stmt.empty()) continue;
        auto tok = split_ws(stmt);
        if (tok[0] == "node") {
            auto eq = split_top(stmt, "=");
            auto head2 = eq ? split_ws(eq->first) : std::vector<std::string>{};
            if (!eq || head2.size() != 2) return p.error(line, "expected: node NAME = STR");
            auto s = parse_str_or_err(pres, eq->second, p, line);
            if (!s) return;
            task.diagram.nodes[head2[1]] = *s;
        } else if (tok[0] == "edge") {
            auto colon = split_top(stmt, ":");
            auto head2 = colon ? split_ws(colon->first) : std::vector<std::string>{};
            if (!colon || head2.size() != 4 || head2[2] != "->")
                return p.error(line, "expected: edge A -> B : DERIV");
            auto d = parse_deriv_or_err(pres, colon->second, p, line);
            if (!d) return;
            task.diagram.edges.push_back({head2[1], head2[3], *d});
        } else if (tok[0] == "source") {
            if (tok.size() == 2) {
                task.diagram.source = tok[1];
            } else if (tok.size() == 4 && tok[2] == "sink") {
                task.diagram.source = tok[1];
                task.diagram.sink = tok[3];
            } else {
                return p.error(line, "expected: source N [sink N]");
            }
        } else if (tok[0] == "sink") {
            if (tok.size() != 2) return p.error(line, "expected: sink N");
            task.diagram.sink = tok[1];
        } else {
            return p.error(line, "unknown diagram statement: " + tok[0]);
        }
    }
    if (task.diagram.source.empty() || task.diagram.sink.empty())
        p.error(line, "diagram needs source and sink");
}

}  // namespace

ParseResult parse_spec(const std::string& text) {
    Parser p;
    std::vector<std::string> lines = split_on(text, '\n');
    for (size_t i = 0; i < lines.size(); ++i) {
        int line_no = static_cast<int>(i) + 1;
        std::string line = lines[i];
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto tok = split_ws(line);
        if (tok[0] == "check" || tok[0] == "normalize") {
            p.in_tasks = true;
            // Diagram blocks may span lines; accumulate until braces balance.
            int bal = brace_balance(line);
            std::string full = line;
            while (bal > 0 && i + 1 < lines.size()) {
                std::string next = lines[++i];
                size_t h = next.find('#');
                if (h != std::string::npos) next = next.substr(0, h);
                bal += brace_balance(next);
                full += "\n" + next;
            }
            if (bal != 0) p.error(line_no, "unbalanced braces in task");
            p.raw_tasks.push_back({line_no, full});
        } else {
            p.declaration(line_no, line, tok);
        }
    }
    if (!p.result.errors.empty()) return std::move(p.result);

    BuildResult built = p.builder.build();
    if (!built.ok()) {
        for (const BuildError& e : built.errors) {
            auto it = p.decl_lines.find(e.where);
            p.error(it == p.decl_lines.end() ? 0 : it->second, e.where + ": " + e.message);
        }
        return std::move(p.result);
    }
    const Presentation& pres = *built.presentation;

    SpecFile spec;
    for (const auto& raw : p.raw_tasks) {
        auto tok = split_ws(raw.text);
        Task task;
        task.name = trim(split_on(raw.text, '\n').front());
        if (tok[0] == "normalize") {
            if (tok.size() < 2) {
                p.error(raw.line, "expected: normalize STR");
                continue;
            }
            task.kind = Task::Kind::Normalize;
            std::string str_text = trim(raw.text.substr(raw.text.find("normalize") + 9));
            auto s = parse_str_or_err(pres, str_text, p, raw.line);
            if (!s) continue;
            task.string = *s;
        } else if (tok.size() >= 2 && tok[1] == "confluence") {
            task.kind = Task::Kind::Confluence;
        } else if (tok.size() >= 2 && tok[1] == "terminal") {
            task.kind = Task::Kind::Terminal;
            parse_terminal_task(pres, p, raw.line, tok, task);
        } else if (tok.size() >= 2 && tok[1] == "equiv") {
            task.kind = Task::Kind::Equiv;
            auto rest = trim(raw.text.substr(raw.text.find("equiv") + 5));
            auto halves = split_top(rest, "=");
            if (!halves) {
                p.error(raw.line, "expected: check equiv DERIV = DERIV");
                continue;
            }
            auto l = parse_deriv_or_err(pres, halves->first, p, raw.line);
            auto r = parse_deriv_or_err(pres, halves->second, p, raw.line);
            if (!l || !r) continue;
            task.lhs = *l;
            task.rhs = *r;
        } else if (tok.size() >= 2 && tok[1] == "laws") {
            task.kind = Task::Kind::Laws;
            parse_laws_task(pres, p, raw.line, tok, task);
        } else if (tok.size() >= 2 && tok[1] == "diagram") {
            task.kind = Task::Kind::DiagramCheck;
            parse_diagram_task(pres, p, raw.line, raw.text, task);
        } else {
            p.error(raw.line, "unknown task: " + raw.text);
            continue;
        }
        spec.tasks.push_back(std::move(task));
    }
    if (!p.result.errors.empty()) return std::move(p.result);
    spec.presentation = pres;
    p.result.spec = std::move(spec);
    return std::move(p.result);
}

namespace {

std::string ctx_text(const Presentation& pres, const TypedString& s) {
    return s.empty() ? "()" : "(" + pres.str(s) + ")";
}

std::string deriv_text(const Presentation& pres, const Derivation& d) {
    if (d.steps.empty()) return "id(" + pres.str(d.source) + ")";
    std::string out = "{ ";
    for (size_t i = 0; i < d.steps.size(); ++i) {
        if (i) out += " ; ";
        const Step& st = d.steps[i];
        out += ctx_text(pres, st.left) + " " + pres.rule_name(st.rule) + " " +
               ctx_text(pres, st.right);
    }
    return out + " }";
}

}  // namespace

std::string print_presentation(const Presentation& pres) {
    std::ostringstream out;
    for (const Cell& c : pres.cells) out << "cell " << c.name << "\n";
    for (const Gen& g : pres.gens)
        out << "gen " << g.name << " : " << pres.cells[g.dom].name << " -> "
            << pres.cells[g.cod].name << "\n";
    for (const Rule& r : pres.rules)
        out << "rule " << r.name << " : " << pres.str(r.lhs) << " => " << pres.str(r.rhs)
            << "\n";
    for (const DerivedRule& r : pres.derived_rules)
        out << "defrule " << r.name << " : " << pres.str(r.lhs) << " => " << pres.str(r.rhs)
            << " = " << deriv_text(pres, r.body) << "\n";
    for (const Equation& e : pres.equations)
        out << "eq " << e.name << " : " << deriv_text(pres, e.left) << " = "
            << deriv_text(pres, e.right) << "\n";
    for (const Universe& u : pres.universes) out << "universe " << u.name << " = " << u.pattern
                                                << "\n";
    if (!pres.gens.empty()) {
        std::vector<GenId> order(pres.gens.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<GenId>(i);
        std::sort(order.begin(), order.end(),
                  [&](GenId a, GenId b) { return pres.precedence[a] < pres.precedence[b]; });
        out << "precedence ";
        for (size_t i = 0; i < order.size(); ++i)
            out << (i ? " < " : "") << pres.gens[order[i]].name;
        out << "\n";
    }
    return out.str();
}

std::string preset_spec_text(const std::string& name) {
    std::string decls = print_presentation(preset(name));
    if (name == "monad") {
        return decls +
               "check confluence\n"
               "check terminal T in Tstar maxlen 7\n"
               "check laws monad T mu eta\n";
    }
    if (name == "composite-monad") {
        return decls +
               "check confluence\n"
               "check terminal P T in all maxlen 6\n"
               "check laws monad P T muPT etaPT\n"
               "check terminal P T in PTstar rules muPT,etaPT maxlen 6\n";
    }
    if (name == "adjunction") {
        return decls +
               "check confluence\n"
               "check terminal F in UF maxlen 7\n"
               "check terminal G in UG maxlen 7\n"
               "check laws adjunction F G eta eps\n";
    }
    if (name == "two-monads-intro") {
        return decls +
               "check confluence\n"
               "check terminal T2 T1 in U21 rules mu21,eta21 maxlen 6\n"
               "check diagram intro {\n"
               "  node n00 = T1 T1 T2\n"
               "  node n01 = T1 T2 T1 T2 T1\n"
               "  node n02 = T1 T2 T1\n"
               "  node n10 = T1 T1 T2 T1\n"
               "  node n11 = T2 T1 T2 T1 T2 T1\n"
               "  node n12 = T2 T1 T2 T1\n"
               "  node n20 = T1 T2 T1\n"
               "  node n21 = T2 T1 T2 T1\n"
               "  node n22 = T2 T1\n"
               "  edge n00 -> n01 : { (T1) eta2 (T1 T2) ; (T1 T2 T1 T2) eta1 () }\n"
               "  edge n00 -> n10 : { (T1 T1 T2) eta1 () }\n"
               "  edge n01 -> n02 : { (T1) mu21 () }\n"
               "  edge n01 -> n11 : { () eta2 (T1 T2 T1 T2 T1) }\n"
               "  edge n02 -> n12 : { () eta2 (T1 T2 T1) }\n"
               "  edge n10 -> n11 : { () eta2 (T1 T1 T2 T1) ; (T2 T1) eta2 (T1 T2 T1) }\n"
               "  edge n10 -> n20 : { () mu1 (T2 T1) }\n"
               "  edge n11 -> n12 : { (T2 T1) mu21 () }\n"
               "  edge n11 -> n21 : { () mu21 (T2 T1) }\n"
               "  edge n12 -> n22 : { () mu21 () }\n"
               "  edge n20 -> n21 : { () eta2 (T1 T2 T1) }\n"
               "  edge n21 -> n22 : { () mu21 () }\n"
               "  source n00 sink n22\n"
               "}\n";
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::string trace_text(const Presentation& pres, const ProofTrace& trace) {
    std::string out;
    for (size_t i = 0; i < trace.size(); ++i) {
        const Move& m = trace[i];
        if (i) out += "; ";
        switch (m.kind) {
            case Move::Kind::Exchange:
                out += "exchange@" + std::to_string(m.index);
                break;
            case Move::Kind::ApplyEquation:
                out += "eq " + pres.equations[m.equation].name + (m.forward ? " ->" : " <-") +
                       "@" + std::to_string(m.index) + "+" + std::to_string(m.left_whisker);
                break;
            case Move::Kind::ExpandDerived:
                out += "expand " + pres.rule_name(m.rule) + "@" + std::to_string(m.index);
                break;
            case Move::Kind::ContractDerived:
                out += "contract " + pres.rule_name(m.rule) + "@" + std::to_string(m.index);
                break;
        }
    }
    return out;
}

namespace {

enum class Severity { Ok, Unknown, Hard };

struct TaskOutcome {
    Severity severity = Severity::Ok;
    std::string verdict;
    nlohmann::json witness = nlohmann::json::object();
    std::string trace;
};

TaskOutcome run_confluence(const Presentation& pres, const Budget& budget) {
    TaskOutcome out;
    ConfluenceReport gc = check_good_confluence(pres, budget);
    ConfluenceReport be = check_bad_elimination(pres, budget);
    out.witness["divergence_pairs"] = gc.pairs.size();
    out.witness["absorption_pairs"] = be.pairs.size();
    out.witness["terminating"] = gc.termination.terminating;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& rep : {gc, be})
        for (const auto& [pair, cert] : rep.pairs)
            if (cert.status != PairCertificate::Status::Certified)
                fails.push_back(pres.str(pair.peak) + ": " + cert.diagnostics);
    out.witness["uncertified"] = fails;
    if (gc.ok && be.ok) {
        out.verdict = "certified";
    } else {
        out.verdict = "not-certified";
        out.severity = Severity::Unknown;
        out.witness["message"] = gc.ok ? be.message : gc.message;
    }
    return out;
}

TaskOutcome run_terminal(const Presentation& pres, const Task& task, const RunOptions& opts) {
    TaskOutcome out;
    int maxlen = opts.maxlen_override >= 0 ? opts.maxlen_override : task.maxlen;
    if (maxlen < 0) {
        const Universe* u = pres.universe(task.universe);
        maxlen = u ? default_maxlen(pres, *u) : 6;
    }
    TerminalityReport rep =
        task.active_rules.empty()
            ? check_terminal(pres, task.candidate, task.universe, maxlen, opts.budget,
                             opts.search)
            : check_terminal_subcategory(pres, task.candidate, task.universe,
                                         task.active_rules, maxlen, opts.budget, opts.search);
    out.witness["candidate"] = pres.str(rep.candidate);
    out.witness["universe"] = rep.universe;
    out.witness["max_len"] = rep.max_len;
    out.witness["strings"] = rep.per_string.size();
    out.witness["basis"] = rep.basis;
    nlohmann::json gaps = nlohmann::json::array();
    for (const StringResult& sr : rep.per_string) {
        if (!sr.existence)
            gaps.push_back(pres.str(sr.string) + ": no derivation (" + sr.note + ")");
        else if (sr.uniqueness != StringResult::Uniqueness::Certified)
            gaps.push_back(pres.str(sr.string) + ": uniqueness unknown" +
                           (sr.note.empty() ? "" : " (" + sr.note + ")"));
    }
    out.witness["gaps"] = gaps;
    if (rep.terminal) {
        out.verdict = "terminal";
    } else if (rep.per_string.empty()) {
        // Unknown universe, candidate outside it, or closure violation.
        out.verdict = "error";
        out.severity = Severity::Hard;
        out.witness["message"] = rep.message;
    } else {
        out.verdict = "not-certified";
        out.severity = Severity::Unknown;
        out.witness["message"] = rep.message;
    }
    return out;
}

TaskOutcome run_equiv(const Presentation& pres, const Task& task, const RunOptions& opts) {
    TaskOutcome out;
    Verdict v = equivalent(pres, task.lhs, task.rhs, opts.budget);
    if (v.equal) {
        out.verdict = "equal";
        out.trace = trace_text(pres, v.trace);
        out.witness["moves"] = v.trace.size();
    } else {
        out.verdict = "unknown";
        out.severity = Severity::Unknown;
        out.witness["message"] = v.diagnostics;
    }
    return out;
}

TaskOutcome run_laws(const Presentation& pres, const Task& task, const RunOptions& opts) {
    TaskOutcome out;
    LawReport rep = task.monad_laws
                        ? verify_monad_laws(pres, task.t1, task.law_rule1, task.law_rule2,
                                            opts.budget)
                        : verify_adjunction_laws(pres, task.t1, task.t2, task.law_rule1,
                                                 task.law_rule2, opts.budget);
    if (!rep.error.empty()) {
        out.verdict = "error";
        out.severity = Severity::Hard;
        out.witness["message"] = rep.error;
        return out;
    }
    nlohmann::json laws = nlohmann::json::array();
    for (const auto& law : rep.laws) {
        laws.push_back({{"law", law.name}, {"verdict", law.verdict.equal ? "equal" : "unknown"}});
        if (!law.verdict.equal) out.severity = Severity::Unknown;
    }
    out.witness["laws"] = laws;
    out.verdict = rep.all_equal() ? "equal" : "unknown";
    return out;
}

TaskOutcome run_diagram(const Presentation& pres, const Task& task, const RunOptions& opts) {
    TaskOutcome out;
    DiagramResult res = check_diagram(pres, task.diagram, opts.budget);
    out.witness["message"] = res.message;
    out.witness["paths"] = res.paths.size() + 1;
    switch (res.status) {
        case DiagramResult::Status::Commutes:
            out.verdict = "commutes";
            break;
        case DiagramResult::Status::Unknown:
            out.verdict = "unknown";
            out.severity = Severity::Unknown;
            break;
        case DiagramResult::Status::IllFormed:
            out.verdict = "ill-formed";
            out.severity = Severity::Hard;
            break;
    }
    return out;
}

TaskOutcome run_normalize(const Presentation& pres, const Task& task) {
    TaskOutcome out;
    Derivation d = normalize_good(pres, task.string, Strategy::LeftmostFirst);
    out.verdict = "normalized";
    out.witness["input"] = pres.str(task.string);
    out.witness["normal_form"] = pres.str(pres.target_of(d));
    out.witness["steps"] = d.steps.size();
    out.witness["derivation"] = deriv_text(pres, d);
    return out;
}

}  // namespace

int run(const SpecFile& spec, const RunOptions& opts, std::ostream& out,
        nlohmann::json* report) {
    const Presentation& pres = spec.presentation;
    Severity worst = Severity::Ok;
    for (const Task& task : spec.tasks) {
        auto start = std::chrono::steady_clock::now();
        TaskOutcome oc;
        switch (task.kind) {
            case Task::Kind::Confluence:
                oc = run_confluence(pres, opts.budget);
                break;
            case Task::Kind::Terminal:
                oc = run_terminal(pres, task, opts);
                break;
            case Task::Kind::Equiv:
                oc = run_equiv(pres, task, opts);
                break;
            case Task::Kind::Laws:
                oc = run_laws(pres, task, opts);
                break;
            case Task::Kind::DiagramCheck:
                oc = run_diagram(pres, task, opts);
                break;
            case Task::Kind::Normalize:
                oc = run_normalize(pres, task);
                break;
        }
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        worst = std::max(worst, oc.severity);
        out << "[" << task.name << "] " << oc.verdict;
        if (oc.witness.contains("message") &&
            !oc.witness["message"].get<std::string>().empty())
            out << " - " << oc.witness["message"].get<std::string>();
        out << "\n";
        if (report) {
            nlohmann::json rec;
            rec["task"] = task.name;
            rec["verdict"] = oc.verdict;
            rec["witness"] = oc.witness;
            rec["trace"] = oc.trace;
            rec["budget"] = {{"nodes", opts.budget.nodes},
                             {"depth", opts.budget.depth},
                             {"maxlen", opts.maxlen_override}};
            rec["elapsed_ms"] = elapsed;
            report->push_back(std::move(rec));
        }
    }
    switch (worst) {
        case Severity::Ok:
            return 0;
        case Severity::Unknown:
            return 2;
        case Severity::Hard:
            return 1;
    }
    return 1;
}

std::string export_dot_reduction(const Presentation& pres, const TypedString& root,
                                 const std::vector<RuleId>& rules, int max_nodes) {
    std::ostringstream out;
    out << "digraph reduction {\n";
    std::map<TypedString, int> ids;
    std::vector<TypedString> order;
    std::vector<std::string> edges;
    std::vector<TypedString> work{root};
    ids[root] = 0;
    order.push_back(root);
    for (size_t i = 0; i < work.size(); ++i) {
        TypedString cur = work[i];
        for (const Step& st : find_redexes(pres, cur, rules)) {
            TypedString nxt = pres.target_of(st);
            auto it = ids.find(nxt);
            if (it == ids.end()) {
                if (static_cast<int>(ids.size()) >= max_nodes) continue;
                it = ids.emplace(nxt, static_cast<int>(ids.size())).first;
                order.push_back(nxt);
                work.push_back(nxt);
            }
            edges.push_back("  n" + std::to_string(ids[cur]) + " -> n" +
                            std::to_string(it->second) + " [label=\"" +
                            pres.rule_name(st.rule) + "@" + std::to_string(st.pos()) + "\"];");
        }
    }
    for (const TypedString& s : order)
        out << "  n" << ids[s] << " [label=\"" << pres.str(s) << "\"];\n";
    for (const std::string& e : edges) out << e << "\n";
    out << "}\n";
    return out.str();
}

std::string export_dot_diagram(const Presentation& pres, const Diagram& dia) {
    std::ostringstream out;
    out << "digraph " << (dia.name.empty() ? "diagram" : dia.name) << " {\n";
    for (const auto& [name, s] : dia.nodes)
        out << "  " << name << " [label=\"" << pres.str(s) << "\"];\n";
    for (const auto& e : dia.edges) {
        std::string label;
        for (const Step& st : e.label.steps)
            label += (label.empty() ? "" : "; ") + pres.rule_name(st.rule) + "@" +
                     std::to_string(st.pos());
        if (label.empty()) label = "id";
        out << "  " << e.from << " -> " << e.to << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace rewcat
