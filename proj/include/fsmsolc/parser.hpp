#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsmsolc/ast.hpp"
#include "fsmsolc/diagnostics.hpp"
#include "fsmsolc/solidity_subset.hpp"

// DSL front end. Parsing is two-pass: the grammar pass builds a proto
// contract holding subset ASTs for embedded Solidity, then a classification
// pass resolves every guard, statement, and initializer against the finished
// declaration environment into the two-tier Expression/Statement form.

namespace fsmsolc {

struct ParseResult {
    std::optional<Contract> contract;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return contract.has_value(); }
};

namespace detail {

struct ProtoTransition {
    std::string name;
    std::string from;
    std::string to;
    TagSet tags;
    std::vector<std::pair<TypeRef, std::string>> input;
    std::vector<std::pair<TypeRef, std::string>> output;
    std::vector<SubsetExprPtr> guards;
    std::vector<SubsetStmt> statements;
};

struct ProtoTimed {
    std::string name;
    std::string from;
    std::string to;
    uint64_t timeSeconds = 0;
    std::vector<SubsetExprPtr> guards;
    std::vector<SubsetStmt> statements;
};

struct ProtoContract {
    std::string name;
    std::vector<StateDecl> states;
    std::vector<StructDecl> customTypes;
    std::vector<std::pair<Variable, std::optional<SubsetExprPtr>>> variables;
    std::vector<ProtoTransition> transitions;
    std::vector<ProtoTimed> timed;
};

class ContractParser {
public:
    explicit ContractParser(const std::vector<Token>& tokens) : ts_(tokens) {}

    ProtoContract parse() {
        ProtoContract c;
        expect_keyword("contract");
        c.name = ts_.expect_ident("contract name");
        ts_.expect_punct("{");
        while (!ts_.accept_punct("}")) {
            const Token& t = ts_.peek();
            if (t.kind == Token::Kind::End)
                throw SubsetParseError{"unexpected end of input, expected '}'", t.line, t.col};
            if (t.is_ident("state"))
                parse_state(c);
            else if (t.is_ident("var"))
                parse_var(c);
            else if (t.is_ident("struct"))
                parse_struct(c);
            else if (t.is_ident("transition"))
                parse_transition(c);
            else if (t.is_ident("timed"))
                parse_timed(c);
            else
                throw SubsetParseError{"expected declaration, got '" + t.text + "'", t.line,
                                       t.col};
        }
        if (!ts_.at_end())
            throw SubsetParseError{"unexpected token '" + ts_.peek().text + "' after contract",
                                   ts_.peek().line, ts_.peek().col};
        return c;
    }

private:
    TokenStream ts_;

    static void reject_duplicate(const char* kind, const std::string& name, bool taken, int line,
                                 int col) {
        if (taken)
            throw SubsetParseError{std::string("duplicate ") + kind + " '" + name + "'", line,
                                   col};
    }

    std::string expect_decl_name(const char* what) {
        const Token& t = ts_.peek();
        std::string name = ts_.expect_ident(what);
        lastNameLine_ = t.line;
        lastNameCol_ = t.col;
        return name;
    }

    int lastNameLine_ = 0;
    int lastNameCol_ = 0;

    void expect_keyword(const char* w) {
        const Token& t = ts_.peek();
        if (!t.is_ident(w))
            throw SubsetParseError{std::string("expected '") + w + "'", t.line, t.col};
        ts_.next();
    }

    void parse_state(ProtoContract& c) {
        ts_.next();  // state
        StateDecl s;
        if (ts_.peek().is_ident("initial") && ts_.peek(1).kind == Token::Kind::Ident) {
            ts_.next();
            s.isInitial = true;
        }
        s.name = expect_decl_name("state name");
        for (const auto& other : c.states)
            reject_duplicate("state", s.name, other.name == s.name, lastNameLine_, lastNameCol_);
        ts_.expect_punct(";");
        c.states.push_back(std::move(s));
    }

    void parse_var(ProtoContract& c) {
        ts_.next();  // var
        Variable v;
        v.kind = VarKind::ContractData;
        if (ts_.accept_ident("public"))
            v.visibility = Visibility::Public;
        else if (ts_.accept_ident("private"))
            v.visibility = Visibility::Private;
        else
            throw SubsetParseError{"expected 'public' or 'private'", ts_.peek().line,
                                   ts_.peek().col};
        v.type = parse_type_ref(ts_);
        v.name = expect_decl_name("variable name");
        for (const auto& other : c.variables)
            reject_duplicate("variable", v.name, other.first.name == v.name, lastNameLine_,
                             lastNameCol_);
        std::optional<SubsetExprPtr> init;
        if (ts_.accept_punct("=")) init = parse_embedded_expr();
        ts_.expect_punct(";");
        c.variables.emplace_back(std::move(v), std::move(init));
    }

    void parse_struct(ProtoContract& c) {
        ts_.next();  // struct
        StructDecl s;
        s.name = expect_decl_name("struct name");
        for (const auto& other : c.customTypes)
            reject_duplicate("struct", s.name, other.name == s.name, lastNameLine_, lastNameCol_);
        ts_.expect_punct("{");
        while (!ts_.accept_punct("}")) {
            StructField f;
            f.type = parse_type_ref(ts_);
            f.name = ts_.expect_ident("field name");
            ts_.expect_punct(";");
            s.fields.push_back(std::move(f));
        }
        if (s.fields.empty())
            throw SubsetParseError{"struct '" + s.name + "' needs at least one field",
                                   ts_.peek().line, ts_.peek().col};
        c.customTypes.push_back(std::move(s));
    }

    std::vector<std::pair<TypeRef, std::string>> parse_param_list() {
        std::vector<std::pair<TypeRef, std::string>> params;
        do {
            TypeRef t = parse_type_ref(ts_);
            std::string n = ts_.expect_ident("parameter name");
            params.emplace_back(std::move(t), std::move(n));
        } while (ts_.accept_punct(","));
        return params;
    }

    // Embedded expressions stop naturally at the following ';' or tag
    // keyword because neither can continue an expression.
    SubsetExprPtr parse_embedded_expr() { return detail::parse_expr(ts_); }

    std::vector<SubsetStmt> parse_do_block() {
        std::vector<SubsetStmt> stmts;
        ts_.expect_punct("{");
        while (!ts_.accept_punct("}")) {
            if (ts_.peek().kind == Token::Kind::End)
                throw SubsetParseError{"unexpected end of input in do block", ts_.peek().line,
                                       ts_.peek().col};
            stmts.push_back(parse_embedded_stmt());
        }
        return stmts;
    }

    SubsetStmt parse_embedded_stmt() {
        SubsetStmt s = detail::parse_statement_inner(ts_);
        ts_.expect_punct(";");
        return s;
    }

    uint64_t parse_duration() {
        const Token& t = ts_.peek();
        if (t.kind != Token::Kind::Number)
            throw SubsetParseError{"expected duration", t.line, t.col};
        ts_.next();
        u256 raw;
        try {
            raw = parse_u256(t.text);
        } catch (const std::exception& e) {
            throw SubsetParseError{e.what(), t.line, t.col};
        }
        uint64_t unitSecs = 1;
        if (ts_.peek().kind == Token::Kind::Ident) {
            if (auto u = detail::duration_unit_from_name(ts_.peek().text)) {
                unitSecs = duration_unit_seconds(*u);
                ts_.next();
            }
        }
        u256 total = raw;
        try {
            total = raw * u256(unitSecs);
        } catch (const std::exception&) {
            throw SubsetParseError{"duration overflows", t.line, t.col};
        }
        if (total > u256(UINT64_MAX))
            throw SubsetParseError{"duration overflows", t.line, t.col};
        return total.convert_to<uint64_t>();
    }

    void parse_transition(ProtoContract& c) {
        ts_.next();  // transition
        ProtoTransition tr;
        tr.name = expect_decl_name("transition name");
        reject_transition_duplicate(c, tr.name);
        ts_.expect_punct("{");
        expect_keyword("from");
        tr.from = ts_.expect_ident("state name");
        ts_.expect_punct(";");
        expect_keyword("to");
        tr.to = ts_.expect_ident("state name");
        ts_.expect_punct(";");
        if (ts_.peek().is_ident("tags")) {
            ts_.next();
            do {
                const Token& t = ts_.peek();
                if (t.is_ident("payable"))
                    tr.tags.payable = true;
                else if (t.is_ident("admin"))
                    tr.tags.admin = true;
                else if (t.is_ident("event"))
                    tr.tags.event = true;
                else
                    throw SubsetParseError{"unknown tag '" + t.text + "'", t.line, t.col};
                ts_.next();
            } while (ts_.accept_punct(","));
            ts_.expect_punct(";");
        }
        if (ts_.peek().is_ident("input")) {
            ts_.next();
            tr.input = parse_param_list();
            ts_.expect_punct(";");
        }
        if (ts_.peek().is_ident("output")) {
            ts_.next();
            tr.output = parse_param_list();
            ts_.expect_punct(";");
        }
        while (ts_.peek().is_ident("guard")) {
            ts_.next();
            tr.guards.push_back(parse_embedded_expr());
            ts_.expect_punct(";");
        }
        if (ts_.peek().is_ident("do")) {
            ts_.next();
            tr.statements = parse_do_block();
        }
        ts_.expect_punct("}");
        c.transitions.push_back(std::move(tr));
    }

    void parse_timed(ProtoContract& c) {
        ts_.next();  // timed
        expect_keyword("transition");
        ProtoTimed tr;
        tr.name = expect_decl_name("transition name");
        reject_transition_duplicate(c, tr.name);
        ts_.expect_punct("{");
        expect_keyword("from");
        tr.from = ts_.expect_ident("state name");
        ts_.expect_punct(";");
        expect_keyword("to");
        tr.to = ts_.expect_ident("state name");
        ts_.expect_punct(";");
        expect_keyword("time");
        tr.timeSeconds = parse_duration();
        ts_.expect_punct(";");
        while (ts_.peek().is_ident("guard")) {
            ts_.next();
            tr.guards.push_back(parse_embedded_expr());
            ts_.expect_punct(";");
        }
        if (ts_.peek().is_ident("do")) {
            ts_.next();
            tr.statements = parse_do_block();
        }
        ts_.expect_punct("}");
        c.timed.push_back(std::move(tr));
    }

    // Transitions and timed transitions share one name namespace.
    void reject_transition_duplicate(const ProtoContract& c, const std::string& name) {
        for (const auto& t : c.transitions)
            reject_duplicate("transition", name, t.name == name, lastNameLine_, lastNameCol_);
        for (const auto& t : c.timed)
            reject_duplicate("transition", name, t.name == name, lastNameLine_, lastNameCol_);
    }
};

inline Contract classify_proto(const ProtoContract& p) {
    Contract c;
    c.name = p.name;
    c.states = p.states;
    c.customTypes = p.customTypes;
    for (const auto& [v, init] : p.variables) c.variables.push_back(v);

    ClassifyEnv contractEnv = env_for_contract(c);
    for (std::size_t i = 0; i < p.variables.size(); ++i) {
        if (p.variables[i].second)
            c.variables[i].initializer =
                classify_subset_expression(*p.variables[i].second, contractEnv).expr;
    }

    for (const auto& pt : p.transitions) {
        Transition t;
        t.name = pt.name;
        t.from = pt.from;
        t.to = pt.to;
        t.tags = pt.tags;
        for (const auto& [type, name] : pt.input)
            t.input.push_back(Variable{name, VarKind::InputData, type, Visibility::Private, {}});
        for (const auto& [type, name] : pt.output)
            t.output.push_back(Variable{name, VarKind::OutputData, type, Visibility::Private, {}});
        ClassifyEnv guardEnv = env_for_guard(c, t);
        for (const auto& g : pt.guards)
            t.guards.push_back(classify_subset_expression(g, guardEnv).expr);
        ClassifyEnv stmtEnv = env_for_statements(c, t);
        for (const auto& s : pt.statements)
            t.statements.push_back(classify_subset_statement(s, stmtEnv).stmt);
        c.transitions.push_back(std::move(t));
    }

    ClassifyEnv timedEnv = env_for_timed(c);
    for (const auto& pt : p.timed) {
        TimedTransition t;
        t.name = pt.name;
        t.from = pt.from;
        t.to = pt.to;
        t.timeSeconds = pt.timeSeconds;
        for (const auto& g : pt.guards)
            t.guards.push_back(classify_subset_expression(g, timedEnv).expr);
        for (const auto& s : pt.statements)
            t.statements.push_back(classify_subset_statement(s, timedEnv).stmt);
        c.timedTransitions.push_back(std::move(t));
    }
    return c;
}

}  // namespace detail

inline ParseResult parse_contract(const std::string& source) {
    ParseResult r;
    try {
        std::vector<Token> tokens = lex_source(source);
        detail::ContractParser parser(tokens);
        detail::ProtoContract proto = parser.parse();
        r.contract = detail::classify_proto(proto);
    } catch (const SubsetParseError& e) {
        std::string code = e.message.rfind("duplicate ", 0) == 0 ? "E_DUPLICATE_NAME" : "E_PARSE";
        std::string path = std::to_string(e.line) + ":" + std::to_string(e.col);
        r.diagnostics.push_back(error(code, path, e.message));
    }
    return r;
}

}  // namespace fsmsolc
