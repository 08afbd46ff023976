#pragma once

#include <set>
#include <string>
#include <vector>

#include "fsmsolc/ast.hpp"
#include "fsmsolc/diagnostics.hpp"
#include "fsmsolc/solidity_subset.hpp"

// Well-formedness checks over a Contract. All findings are returned, sorted
// by (nodePath, code, message); an empty list means the contract is valid.

namespace fsmsolc {

// Fixed point of following transition and timed-transition edges from the
// initial state(s), ignoring guards (an over-approximation of runtime
// reachability).
inline std::set<std::string> reachable_states(const Contract& c) {
    std::set<std::string> reached;
    std::vector<std::string> frontier;
    for (const auto& s : c.states)
        if (s.isInitial && reached.insert(s.name).second) frontier.push_back(s.name);
    while (!frontier.empty()) {
        std::string cur = frontier.back();
        frontier.pop_back();
        auto follow = [&](const std::string& from, const std::string& to) {
            if (from == cur && c.find_state(to) && reached.insert(to).second)
                frontier.push_back(to);
        };
        for (const auto& t : c.transitions) follow(t.from, t.to);
        for (const auto& t : c.timedTransitions) follow(t.from, t.to);
    }
    return reached;
}

namespace detail {

inline void check_type_known(const Contract& c, const TypeRef& t, const std::string& path,
                             std::vector<Diagnostic>& out) {
    if (const auto* s = std::get_if<TypeRef::StructRef>(&t.node)) {
        if (!c.find_struct(s->name))
            out.push_back(error("E_UNKNOWN_TYPE", path, "unknown type '" + s->name + "'"));
        return;
    }
    if (const auto* m = std::get_if<TypeRef::Mapping>(&t.node))
        check_type_known(c, *m->value, path, out);
    else if (const auto* a = std::get_if<TypeRef::Array>(&t.node))
        check_type_known(c, *a->elem, path, out);
}

// Re-derives classification of a stored expression from its canonical text.
// Returns nothing when the text does not parse (hand-built ASTs only; the
// parser never produces such expressions).
inline std::optional<ClassifiedExpr> reclassify(const Expression& e, const ClassifyEnv& env) {
    try {
        std::vector<Token> tokens = lex_source(expression_to_text(e));
        TokenStream ts(tokens);
        SubsetExprPtr ast = parse_subset_expression(ts);
        return classify_subset_expression(ast, env);
    } catch (const SubsetParseError&) {
        return std::nullopt;
    }
}

inline std::optional<ClassifiedStmt> reclassify(const Statement& s, const ClassifyEnv& env) {
    try {
        std::vector<Token> tokens = lex_source(statement_to_text(s));
        TokenStream ts(tokens);
        SubsetStmt ast = parse_subset_statement(ts);
        return classify_subset_statement(ast, env);
    } catch (const SubsetParseError&) {
        return std::nullopt;
    }
}

inline void check_guard(const Contract&, const Expression& g, const ClassifyEnv& env,
                        const std::string& path, std::vector<Diagnostic>& out) {
    auto cls = reclassify(g, env);
    if (!cls) {
        out.push_back(error("E_PARSE", path, "expression does not parse"));
        return;
    }
    if (cls->unresolved) {
        out.push_back(
            error("E_UNKNOWN_SYMBOL", path, "unknown symbol '" + *cls->unresolved + "'"));
        return;
    }
    if (cls->expr.is_core() && cls->type && cls->type->k != SemType::K::Bool)
        out.push_back(error("E_GUARD_TYPE", path, "guard must be boolean"));
}

inline void check_statement(const Statement& s, const ClassifyEnv& env, const std::string& path,
                            std::vector<Diagnostic>& out) {
    auto cls = reclassify(s, env);
    if (!cls) {
        out.push_back(error("E_PARSE", path, "statement does not parse"));
        return;
    }
    if (cls->unresolved)
        out.push_back(
            error("E_UNKNOWN_SYMBOL", path, "unknown symbol '" + *cls->unresolved + "'"));
}

// Identifier tokens of a snippet, excluding member accesses after '.', object
// literal keys, duration units, and environment names.
inline std::set<std::string> free_identifier_tokens(const std::string& text) {
    std::set<std::string> names;
    std::vector<Token> tokens;
    try {
        tokens = lex_source(text);
    } catch (const SubsetParseError&) {
        return names;
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].kind != Token::Kind::Ident) continue;
        if (i > 0 && tokens[i - 1].is_punct(".")) continue;
        if (i + 1 < tokens.size() && tokens[i + 1].is_punct(":")) continue;
        const std::string& n = tokens[i].text;
        if (n == "true" || n == "false" || n == "now" || n == "msg" || n == "var") continue;
        if (duration_unit_from_name(n)) continue;
        names.insert(n);
    }
    return names;
}

}  // namespace detail

inline std::vector<Diagnostic> validate(const Contract& c) {
    std::vector<Diagnostic> out;

    // Initial-state count.
    int initials = 0;
    for (const auto& s : c.states)
        if (s.isInitial) ++initials;
    if (initials != 1)
        out.push_back(error("E_INITIAL_COUNT", "states",
                            "expected exactly one initial state, found " +
                                std::to_string(initials)));

    // Duplicate names, each namespace separately (transitions and timed
    // transitions share one).
    {
        std::set<std::string> seen;
        for (const auto& s : c.states)
            if (!seen.insert(s.name).second)
                out.push_back(error("E_DUPLICATE_NAME", "states/" + s.name,
                                    "duplicate state name '" + s.name + "'"));
        seen.clear();
        for (const auto& v : c.variables)
            if (!seen.insert(v.name).second)
                out.push_back(error("E_DUPLICATE_NAME", "variables/" + v.name,
                                    "duplicate variable name '" + v.name + "'"));
        seen.clear();
        for (const auto& s : c.customTypes) {
            if (!seen.insert(s.name).second)
                out.push_back(error("E_DUPLICATE_NAME", "structs/" + s.name,
                                    "duplicate struct name '" + s.name + "'"));
            std::set<std::string> fields;
            for (const auto& f : s.fields)
                if (!fields.insert(f.name).second)
                    out.push_back(error("E_DUPLICATE_NAME", "structs/" + s.name + "/" + f.name,
                                        "duplicate field name '" + f.name + "'"));
        }
        seen.clear();
        for (const auto& t : c.transitions)
            if (!seen.insert(t.name).second)
                out.push_back(error("E_DUPLICATE_NAME", "transitions/" + t.name,
                                    "duplicate transition name '" + t.name + "'"));
        for (const auto& t : c.timedTransitions)
            if (!seen.insert(t.name).second)
                out.push_back(error("E_DUPLICATE_NAME", "timedTransitions/" + t.name,
                                    "duplicate transition name '" + t.name + "'"));
        for (const auto& t : c.transitions) {
            std::set<std::string> params;
            for (const auto& v : t.input)
                if (!params.insert(v.name).second)
                    out.push_back(
                        error("E_DUPLICATE_NAME", "transitions/" + t.name + "/input/" + v.name,
                              "duplicate parameter name '" + v.name + "'"));
            for (const auto& v : t.output)
                if (!params.insert(v.name).second)
                    out.push_back(
                        error("E_DUPLICATE_NAME", "transitions/" + t.name + "/output/" + v.name,
                              "duplicate parameter name '" + v.name + "'"));
        }
    }

    // Unknown state references.
    auto check_state_ref = [&](const std::string& name, const std::string& path) {
        if (!c.find_state(name))
            out.push_back(error("E_UNKNOWN_STATE", path, "unknown state '" + name + "'"));
    };
    for (const auto& t : c.transitions) {
        check_state_ref(t.from, "transitions/" + t.name + "/from");
        check_state_ref(t.to, "transitions/" + t.name + "/to");
    }
    for (const auto& t : c.timedTransitions) {
        check_state_ref(t.from, "timedTransitions/" + t.name + "/from");
        check_state_ref(t.to, "timedTransitions/" + t.name + "/to");
    }

    // Unknown struct types in declarations.
    for (const auto& v : c.variables)
        detail::check_type_known(c, v.type, "variables/" + v.name, out);
    for (const auto& s : c.customTypes)
        for (const auto& f : s.fields)
            detail::check_type_known(c, f.type, "structs/" + s.name + "/" + f.name, out);
    for (const auto& t : c.transitions) {
        for (const auto& v : t.input)
            detail::check_type_known(c, v.type, "transitions/" + t.name + "/input/" + v.name, out);
        for (const auto& v : t.output)
            detail::check_type_known(c, v.type, "transitions/" + t.name + "/output/" + v.name,
                                     out);
    }

    // Expression-level checks: guard typing, unresolved symbols.
    ClassifyEnv contractEnv = env_for_contract(c);
    for (const auto& v : c.variables)
        if (v.initializer) {
            auto cls = detail::reclassify(*v.initializer, contractEnv);
            if (cls && cls->unresolved)
                out.push_back(error("E_UNKNOWN_SYMBOL", "variables/" + v.name,
                                    "unknown symbol '" + *cls->unresolved + "'"));
        }
    for (const auto& t : c.transitions) {
        ClassifyEnv guardEnv = env_for_guard(c, t);
        for (std::size_t i = 0; i < t.guards.size(); ++i)
            detail::check_guard(c, t.guards[i], guardEnv,
                                "transitions/" + t.name + "/guards/" + std::to_string(i), out);
        ClassifyEnv stmtEnv = env_for_statements(c, t);
        for (std::size_t i = 0; i < t.statements.size(); ++i)
            detail::check_statement(t.statements[i], stmtEnv,
                                    "transitions/" + t.name + "/statements/" + std::to_string(i),
                                    out);
    }

    // Timed transitions: no input/output data anywhere in guards or
    // statements. Token scan covers opaque text as well as core ASTs; a name
    // that is also contract data refers to the contract variable and is fine.
    std::set<std::string> ioNames;
    for (const auto& t : c.transitions) {
        for (const auto& v : t.input) ioNames.insert(v.name);
        for (const auto& v : t.output) ioNames.insert(v.name);
    }
    for (const auto& v : c.variables) ioNames.erase(v.name);
    ClassifyEnv timedEnv = env_for_timed(c);
    for (const auto& t : c.timedTransitions) {
        auto scan = [&](const std::string& text, const std::string& path) {
            for (const auto& n : detail::free_identifier_tokens(text))
                if (ioNames.count(n))
                    out.push_back(error("E_TIMED_IO", path,
                                        "timed transition references input/output data '" + n +
                                            "'"));
        };
        for (std::size_t i = 0; i < t.guards.size(); ++i) {
            std::string path = "timedTransitions/" + t.name + "/guards/" + std::to_string(i);
            scan(expression_to_text(t.guards[i]), path);
            detail::check_guard(c, t.guards[i], timedEnv, path, out);
        }
        for (std::size_t i = 0; i < t.statements.size(); ++i) {
            std::string path = "timedTransitions/" + t.name + "/statements/" + std::to_string(i);
            scan(statement_to_text(t.statements[i]), path);
            detail::check_statement(t.statements[i], timedEnv, path, out);
        }
    }

    // E_TIMED_IO subsumes the unknown-symbol finding for the same name.
    {
        std::vector<Diagnostic> filtered;
        for (const auto& d : out) {
            if (d.code == "E_UNKNOWN_SYMBOL") {
                bool shadowed = false;
                for (const auto& other : out)
                    if (other.code == "E_TIMED_IO" && other.nodePath == d.nodePath) shadowed = true;
                if (shadowed) continue;
            }
            filtered.push_back(d);
        }
        out = std::move(filtered);
    }

    // Reachability warning, meaningful only with a unique initial state.
    if (initials == 1) {
        std::set<std::string> reached = reachable_states(c);
        for (const auto& s : c.states)
            if (!reached.count(s.name))
                out.push_back(warning("W_UNREACHABLE", "states/" + s.name,
                                      "state '" + s.name + "' is unreachable from the initial state"));
    }

    sort_diagnostics(out);
    return out;
}

}  // namespace fsmsolc
