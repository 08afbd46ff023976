#pragma once

#include <string>
#include <vector>

#include "fsmsolc/ast.hpp"
#include "fsmsolc/diagnostics.hpp"
#include "fsmsolc/solidity_subset.hpp"
#include "fsmsolc/weaver.hpp"

// Solidity code generation from an AugmentedContract, plus a mechanical
// structural check of the emitted text. Output is deterministic: identical
// input yields byte-identical text.

namespace fsmsolc {

struct EmitOptions {
    std::string pragmaVersion = "^0.4.17";
    int indent = 4;
};

namespace detail {

class SolidityWriter {
public:
    explicit SolidityWriter(int indentWidth) : unit_(indentWidth, ' ') {}

    void line(int depth, const std::string& text) {
        for (int i = 0; i < depth; ++i) out_ += unit_;
        out_ += text;
        out_ += "\n";
    }
    void blank() { out_ += "\n"; }
    const std::string& text() const { return out_; }

private:
    std::string unit_;
    std::string out_;
};

inline std::string enum_member_list(const Contract& c) {
    // Initial state first, the rest in declaration order.
    std::string initial = c.initial_state() ? c.initial_state()->name : "";
    std::string out = initial;
    for (const auto& s : c.states) {
        if (s.name == initial) continue;
        if (!out.empty()) out += ", ";
        out += s.name;
    }
    return out;
}

inline std::string returns_clause(const Transition& t) {
    if (t.output.empty()) return "";
    std::string out = " returns (";
    for (std::size_t i = 0; i < t.output.size(); ++i) {
        if (i) out += ", ";
        out += type_to_text(t.output[i].type) + " " + t.output[i].name;
    }
    return out + ")";
}

inline std::string signature_line(const Transition& t, const TransitionAugmentation* aug) {
    std::string params;
    auto append_param = [&](const Variable& v) {
        if (!params.empty()) params += ", ";
        params += type_to_text(v.type) + " " + v.name;
    };
    for (const auto& v : t.input) append_param(v);
    if (aug)
        for (const auto& v : aug->extraInputs) append_param(v);
    std::string line = "function " + t.name + "(" + params + ")";
    if (t.tags.payable) line += " payable";
    if (aug) {
        for (WrapperKind w : aug->wrappers) {
            switch (w) {
                case WrapperKind::Locking: line += " locking"; break;
                case WrapperKind::TransitionCounting:
                    line += " transitionCounting(nextTransitionNumber)";
                    break;
                case WrapperKind::TimedTransitions: line += " timedTransitions"; break;
                case WrapperKind::AccessGuard: line += " onlyAdmin"; break;
            }
        }
    }
    line += returns_clause(t);
    line += " {";
    return line;
}

}  // namespace detail

inline std::string emit_solidity(const AugmentedContract& aug, const EmitOptions& opts = {}) {
    const Contract& c = aug.base;
    if (!c.initial_state())
        throw ToolError(error("E_EMIT_UNSUPPORTED", "states", "contract has no initial state"));

    detail::SolidityWriter w(opts.indent);
    w.line(0, "pragma solidity " + opts.pragmaVersion + ";");
    w.blank();
    w.line(0, "contract " + c.name + " {");

    bool first = true;
    auto block = [&] {
        if (!first) w.blank();
        first = false;
    };

    block();
    w.line(1, "enum States { " + detail::enum_member_list(c) + " }");

    block();
    w.line(1, "States private state = States." + c.initial_state()->name + ";");
    if (!c.declares_creation_time()) w.line(1, "uint private creationTime = now;");

    for (const auto& s : c.customTypes) {
        block();
        w.line(1, "struct " + s.name + " {");
        for (const auto& f : s.fields) w.line(2, type_to_text(f.type) + " " + f.name + ";");
        w.line(1, "}");
    }

    if (!c.variables.empty()) {
        block();
        for (const auto& v : c.variables) {
            std::string line = type_to_text(v.type) + " " +
                               (v.visibility == Visibility::Public ? "public" : "private") + " " +
                               v.name;
            if (v.initializer) line += " = " + expression_to_text(*v.initializer);
            w.line(1, line + ";");
        }
    }

    bool timedActive = aug.plugins.timedTransitions && !c.timedTransitions.empty();

    if (aug.plugins.locking) {
        block();
        w.line(1, "bool private locked = false;");
        block();
        w.line(1, "modifier locking {");
        w.line(2, "require(!locked);");
        w.line(2, "locked = true;");
        w.line(2, "_;");
        w.line(2, "locked = false;");
        w.line(1, "}");
    }

    if (aug.plugins.transitionCounter) {
        block();
        w.line(1, "uint private transitionCounter = 0;");
        block();
        w.line(1, "modifier transitionCounting(uint nextTransitionNumber) {");
        w.line(2, "require(nextTransitionNumber == transitionCounter);");
        w.line(2, "transitionCounter += 1;");
        w.line(2, "_;");
        w.line(1, "}");
    }

    if (timedActive) {
        block();
        w.line(1, "modifier timedTransitions {");
        for (const TimedTransition* t : aug.timed_firing_order()) {
            std::string cond = "(state == States." + t->from + ") && (now >= creationTime + " +
                               std::to_string(t->timeSeconds) + ")";
            for (const auto& g : t->guards) cond += " && (" + expression_to_text(g) + ")";
            w.line(2, "if (" + cond + ") {");
            for (const auto& s : t->statements) w.line(3, statement_to_text(s) + ";");
            if (t->from != t->to) w.line(3, "state = States." + t->to + ";");
            w.line(2, "}");
        }
        w.line(2, "_;");
        w.line(1, "}");
    }

    if (aug.plugins.accessControl) {
        block();
        w.line(1, "mapping(address => bool) private admins;");
        w.line(1, "uint private adminCount;");
        block();
        w.line(1, "modifier onlyAdmin {");
        w.line(2, "require(admins[msg.sender]);");
        w.line(2, "_;");
        w.line(1, "}");
        block();
        w.line(1, "function " + c.name + "() public {");
        w.line(2, "admins[msg.sender] = true;");
        w.line(2, "adminCount = 1;");
        w.line(1, "}");
    }

    {
        bool any = false;
        for (const auto& t : c.transitions)
            if (t.tags.event) {
                if (!any) block();
                any = true;
                w.line(1, "event " + t.name + "Event();");
            }
    }

    auto emit_function = [&](const Transition& t, bool generated) {
        block();
        w.line(1, "// Transition " + t.name);
        w.line(1, detail::signature_line(t, aug.find_augmentation(t.name)));
        if (!generated) w.line(2, "require(state == States." + t.from + ");");
        for (const auto& g : t.guards) w.line(2, "require(" + expression_to_text(g) + ");");
        if (generated) {
            if (t.name == "addAdmin") {
                w.line(2, "require(!admins[account]);");
                w.line(2, "admins[account] = true;");
                w.line(2, "adminCount += 1;");
            } else {
                w.line(2, "require(admins[account]);");
                w.line(2, "require(adminCount > 1);");
                w.line(2, "admins[account] = false;");
                w.line(2, "adminCount -= 1;");
            }
        } else {
            for (const auto& s : t.statements) w.line(2, statement_to_text(s) + ";");
            if (t.from != t.to) w.line(2, "state = States." + t.to + ";");
        }
        if (t.tags.event) w.line(2, t.name + "Event();");
        w.line(1, "}");
    };

    for (const auto& t : c.transitions) emit_function(t, false);
    for (const auto& t : aug.generatedTransitions) emit_function(t, true);

    w.line(0, "}");
    return w.text();
}

// ---------------------------------------------------------------------------
// Structural check
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Modifier names on a signature line, in order, with argument lists dropped.
inline std::vector<std::string> signature_modifiers(const std::string& line) {
    std::vector<std::string> mods;
    std::size_t close = line.find(')');
    if (close == std::string::npos) return mods;
    std::string rest = line.substr(close + 1);
    std::size_t ret = rest.find(" returns");
    if (ret != std::string::npos) rest = rest.substr(0, ret);
    std::size_t brace = rest.find('{');
    if (brace != std::string::npos) rest = rest.substr(0, brace);
    std::string word;
    int depth = 0;
    auto flush = [&] {
        if (!word.empty() && word != "payable") mods.push_back(word);
        word.clear();
    };
    for (char ch : rest) {
        if (ch == '(') ++depth;
        if (ch == ')') {
            --depth;
            continue;
        }
        if (depth > 0) continue;
        if (ch == ' ') {
            flush();
        } else {
            word += ch;
        }
    }
    flush();
    return mods;
}

}  // namespace detail

inline std::vector<Diagnostic> structural_check(const std::string& solidity,
                                                const AugmentedContract& aug) {
    std::vector<Diagnostic> out;
    const Contract& c = aug.base;
    std::vector<std::string> lines = detail::split_lines(solidity);

    // Pragma first.
    {
        std::string firstLine;
        for (const auto& l : lines) {
            std::string s = detail::strip(l);
            if (!s.empty()) {
                firstLine = s;
                break;
            }
        }
        if (firstLine.rfind("pragma solidity ", 0) != 0 || firstLine.back() != ';')
            out.push_back(error("E_STRUCT_PRAGMA", "contract", "missing pragma line"));
    }

    // Enum members equal the state set, initial state first.
    {
        bool found = false;
        for (const auto& l : lines) {
            std::string s = detail::strip(l);
            if (s.rfind("enum States {", 0) != 0) continue;
            found = true;
            std::size_t open = s.find('{'), close = s.rfind('}');
            std::vector<std::string> members;
            if (open != std::string::npos && close != std::string::npos && close > open) {
                std::string inner = s.substr(open + 1, close - open - 1);
                std::string cur;
                for (char ch : inner) {
                    if (ch == ',') {
                        members.push_back(detail::strip(cur));
                        cur.clear();
                    } else {
                        cur += ch;
                    }
                }
                if (!detail::strip(cur).empty()) members.push_back(detail::strip(cur));
            }
            if (members.size() != c.states.size())
                out.push_back(error("E_STRUCT_ENUM", "states",
                                    "enum member count " + std::to_string(members.size()) +
                                        " does not match state count " +
                                        std::to_string(c.states.size())));
            else {
                if (c.initial_state() && members.front() != c.initial_state()->name)
                    out.push_back(
                        error("E_STRUCT_ENUM", "states", "initial state is not the first member"));
                for (const auto& m : members)
                    if (!c.find_state(m))
                        out.push_back(
                            error("E_STRUCT_ENUM", "states", "enum member '" + m + "' is not a state"));
            }
            break;
        }
        if (!found) out.push_back(error("E_STRUCT_ENUM", "states", "missing States enum"));
    }

    // Per-transition function checks.
    auto check_function = [&](const Transition& t, bool generated) {
        std::string needle = "function " + t.name + "(";
        std::size_t fnLine = lines.size();
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (detail::strip(lines[i]).rfind(needle, 0) == 0) {
                fnLine = i;
                break;
            }
        }
        std::string path = "transitions/" + t.name;
        if (fnLine == lines.size()) {
            out.push_back(error("E_STRUCT_FUNCTION", path, "missing function for transition"));
            return;
        }
        const TransitionAugmentation* a = aug.find_augmentation(t.name);
        std::vector<std::string> expected;
        if (a)
            for (WrapperKind k : a->wrappers) expected.push_back(wrapper_kind_name(k));
        std::vector<std::string> actual = detail::signature_modifiers(lines[fnLine]);
        if (actual != expected) {
            std::string msg = "modifier order mismatch, expected [";
            for (std::size_t i = 0; i < expected.size(); ++i)
                msg += (i ? ", " : "") + expected[i];
            msg += "]";
            out.push_back(error("E_STRUCT_MODIFIER_ORDER", path, msg));
        }
        if (!generated) {
            std::string want = "require(state == States." + t.from + ");";
            if (fnLine + 1 >= lines.size() || detail::strip(lines[fnLine + 1]) != want)
                out.push_back(error("E_STRUCT_STATE_REQUIRE", path,
                                    "function body does not begin with the state require"));
        }
        if (t.tags.event) {
            bool declared = false;
            std::string decl = "event " + t.name + "Event();";
            for (const auto& l : lines)
                if (detail::strip(l) == decl) declared = true;
            if (!declared)
                out.push_back(error("E_STRUCT_EVENT", path, "missing event declaration"));
            // Last statement before the closing brace must raise the event.
            std::size_t i = fnLine + 1;
            std::string last;
            for (; i < lines.size() && detail::strip(lines[i]) != "}"; ++i)
                last = detail::strip(lines[i]);
            if (last != t.name + "Event();")
                out.push_back(error("E_STRUCT_EVENT", path, "event is not raised last"));
        }
    };
    for (const auto& t : c.transitions) check_function(t, false);
    for (const auto& t : aug.generatedTransitions) check_function(t, true);

    sort_diagnostics(out);
    return out;
}

}  // namespace fsmsolc
