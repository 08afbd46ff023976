#pragma once

#include <string>
#include <vector>

#include "fsmsolc/ast.hpp"
#include "fsmsolc/solidity_subset.hpp"
#include "fsmsolc/validate.hpp"

// Canonical text form of a contract: fixed declaration order (states,
// structs, variables, transitions, timed transitions), one declaration per
// line, four-space indent, normalized expression whitespace. Parsing the
// output yields an equal Contract, and serializing is idempotent.

namespace fsmsolc {

namespace detail {

inline std::string serialize_transition_items(const std::string& from, const std::string& to,
                                              const std::vector<Expression>& guards,
                                              const std::vector<Statement>& statements,
                                              const std::string& timeLine,
                                              const TagSet* tags,
                                              const std::vector<Variable>* input,
                                              const std::vector<Variable>* output) {
    std::string out;
    auto param_list = [](const std::vector<Variable>& params) {
        std::string s;
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) s += ", ";
            s += type_to_text(params[i].type) + " " + params[i].name;
        }
        return s;
    };
    out += "        from " + from + ";\n";
    out += "        to " + to + ";\n";
    if (tags && (tags->payable || tags->admin || tags->event)) {
        std::vector<std::string> names;
        if (tags->payable) names.push_back("payable");
        if (tags->admin) names.push_back("admin");
        if (tags->event) names.push_back("event");
        out += "        tags ";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out += ", ";
            out += names[i];
        }
        out += ";\n";
    }
    if (input && !input->empty()) out += "        input " + param_list(*input) + ";\n";
    if (output && !output->empty()) out += "        output " + param_list(*output) + ";\n";
    if (!timeLine.empty()) out += "        time " + timeLine + ";\n";
    for (const auto& g : guards) out += "        guard " + expression_to_text(g) + ";\n";
    if (!statements.empty()) {
        out += "        do {\n";
        for (const auto& s : statements) out += "            " + statement_to_text(s) + ";\n";
        out += "        }\n";
    }
    return out;
}

}  // namespace detail

inline std::string serialize_contract(const Contract& c) {
    std::vector<Diagnostic> diags = validate(c);
    if (has_errors(diags))
        throw ToolError(error("E_INVALID", "contract",
                              "refusing to serialize a contract with validation errors: " +
                                  diags.front().code));

    std::vector<std::string> blocks;
    if (!c.states.empty()) {
        std::string b;
        for (const auto& s : c.states)
            b += std::string("    state ") + (s.isInitial ? "initial " : "") + s.name + ";\n";
        blocks.push_back(b);
    }
    for (const auto& s : c.customTypes) {
        std::string b = "    struct " + s.name + " {\n";
        for (const auto& f : s.fields)
            b += "        " + type_to_text(f.type) + " " + f.name + ";\n";
        b += "    }\n";
        blocks.push_back(b);
    }
    if (!c.variables.empty()) {
        std::string b;
        for (const auto& v : c.variables) {
            b += "    var ";
            b += v.visibility == Visibility::Public ? "public " : "private ";
            b += type_to_text(v.type) + " " + v.name;
            if (v.initializer) b += " = " + expression_to_text(*v.initializer);
            b += ";\n";
        }
        blocks.push_back(b);
    }
    for (const auto& t : c.transitions) {
        std::string b = "    transition " + t.name + " {\n";
        b += detail::serialize_transition_items(t.from, t.to, t.guards, t.statements, "",
                                                &t.tags, &t.input, &t.output);
        b += "    }\n";
        blocks.push_back(b);
    }
    for (const auto& t : c.timedTransitions) {
        std::string b = "    timed transition " + t.name + " {\n";
        b += detail::serialize_transition_items(t.from, t.to, t.guards, t.statements,
                                                std::to_string(t.timeSeconds), nullptr, nullptr,
                                                nullptr);
        b += "    }\n";
        blocks.push_back(b);
    }

    std::string out = "contract " + c.name + " {\n";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) out += "\n";
        out += blocks[i];
    }
    out += "}\n";
    return out;
}

}  // namespace fsmsolc
