#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fsmsolc/ast.hpp"
#include "fsmsolc/diagnostics.hpp"

// Lexer and recursive-descent parser for the supported Solidity snippet
// grammar (guard expressions, do-block statements, type references), plus the
// classifier that splits snippets into interpretable Core ASTs and Opaque
// carry-through text.

namespace fsmsolc {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Number, Hex, Str, Punct, End };

    Kind kind = Kind::End;
    std::string text;
    int line = 0;
    int col = 0;

    bool is_punct(const char* p) const { return kind == Kind::Punct && text == p; }
    bool is_ident(const char* w) const { return kind == Kind::Ident && text == w; }
};

struct SubsetParseError {
    std::string message;
    int line = 0;
    int col = 0;
};

inline std::vector<Token> lex_source(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    static const char* twoChar[] = {"=>", "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*="};
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            int sl = line, sc = col;
            advance(2);
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
            if (i + 1 >= src.size()) throw SubsetParseError{"unterminated block comment", sl, sc};
            advance(2);
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Token::Kind::Ident, src.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            if (c == '0' && j + 1 < src.size() && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
                j += 2;
                std::size_t digits = 0;
                while (j < src.size() && std::isxdigit(static_cast<unsigned char>(src[j]))) {
                    ++j;
                    ++digits;
                }
                if (digits == 0) throw SubsetParseError{"malformed hex literal", tl, tc};
                out.push_back({Token::Kind::Hex, lowercase(src.substr(i, j - i)), tl, tc});
            } else {
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                out.push_back({Token::Kind::Number, src.substr(i, j - i), tl, tc});
            }
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::string text;
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"') {
                if (src[j] == '\\' && j + 1 < src.size()) {
                    char e = src[j + 1];
                    if (e == 'n')
                        text += '\n';
                    else if (e == 't')
                        text += '\t';
                    else
                        text += e;
                    j += 2;
                } else {
                    if (src[j] == '\n') throw SubsetParseError{"unterminated string literal", tl, tc};
                    text += src[j];
                    ++j;
                }
            }
            if (j >= src.size()) throw SubsetParseError{"unterminated string literal", tl, tc};
            out.push_back({Token::Kind::Str, text, tl, tc});
            advance(j + 1 - i);
            continue;
        }
        bool matched = false;
        for (const char* op : twoChar) {
            if (src.compare(i, 2, op) == 0) {
                out.push_back({Token::Kind::Punct, op, tl, tc});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        static const std::string single = "+-*/%!<>=()[]{},;.:";
        if (single.find(c) != std::string::npos) {
            out.push_back({Token::Kind::Punct, std::string(1, c), tl, tc});
            advance(1);
            continue;
        }
        throw SubsetParseError{std::string("unexpected character '") + c + "'", tl, tc};
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

// View over a token slice [begin, end); the End token at the source tail is
// synthesized per slice.
class TokenStream {
public:
    TokenStream(const std::vector<Token>* tokens, std::size_t begin, std::size_t end)
        : tokens_(tokens), pos_(begin), end_(end) {
        endTok_.kind = Token::Kind::End;
        if (end_ < tokens_->size()) {
            endTok_.line = (*tokens_)[end_].line;
            endTok_.col = (*tokens_)[end_].col;
        }
    }
    explicit TokenStream(const std::vector<Token>& tokens)
        : TokenStream(&tokens, 0,
                      tokens.empty() ? 0 : tokens.size() - 1) {}  // drop trailing End

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t p = pos_ + ahead;
        return p < end_ ? (*tokens_)[p] : endTok_;
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < end_) ++pos_;
        return t;
    }
    bool at_end() const { return pos_ >= end_; }
    std::size_t position() const { return pos_; }
    void rewind(std::size_t pos) { pos_ = pos; }

    bool accept_punct(const char* p) {
        if (peek().is_punct(p)) {
            next();
            return true;
        }
        return false;
    }
    bool accept_ident(const char* w) {
        if (peek().is_ident(w)) {
            next();
            return true;
        }
        return false;
    }
    void expect_punct(const char* p) {
        if (!accept_punct(p))
            throw SubsetParseError{std::string("expected '") + p + "'", peek().line, peek().col};
    }
    std::string expect_ident(const char* what) {
        if (peek().kind != Token::Kind::Ident)
            throw SubsetParseError{std::string("expected ") + what, peek().line, peek().col};
        return next().text;
    }

private:
    const std::vector<Token>* tokens_;
    std::size_t pos_;
    std::size_t end_;
    Token endTok_;
};

// ---------------------------------------------------------------------------
// Subset AST (syntax level, superset of the interpretable core)
// ---------------------------------------------------------------------------

struct SubsetExpr;
using SubsetExprPtr = std::shared_ptr<const SubsetExpr>;

struct SubsetExpr {
    struct Num {
        u256 raw;
        std::optional<DurationUnit> unit;
    };
    struct Hex {
        std::string token;
    };
    struct Str {
        std::string text;
    };
    struct Bool {
        bool value;
    };
    struct Ident {
        std::string name;
    };
    struct Member {
        SubsetExprPtr base;
        std::string field;
    };
    struct IndexOp {
        SubsetExprPtr base;
        SubsetExprPtr index;
    };
    struct Call {
        SubsetExprPtr callee;
        std::vector<SubsetExprPtr> args;
    };
    struct ObjLit {
        std::vector<std::pair<std::string, SubsetExprPtr>> fields;
    };
    struct Un {
        std::string op;
        SubsetExprPtr operand;
    };
    struct Bin {
        std::string op;
        SubsetExprPtr lhs;
        SubsetExprPtr rhs;
    };

    std::variant<Num, Hex, Str, Bool, Ident, Member, IndexOp, Call, ObjLit, Un, Bin> node;
};

template <typename T, typename... Args>
SubsetExprPtr make_subset(Args&&... args) {
    return std::make_shared<const SubsetExpr>(SubsetExpr{T{std::forward<Args>(args)...}});
}

struct SubsetStmt {
    struct Local {
        std::optional<TypeRef> type;  // empty => `var`
        std::string name;
        std::optional<SubsetExprPtr> init;
    };
    struct Assign {
        SubsetExprPtr lhs;
        std::string op;  // "=", "+=", "-=", "*="
        SubsetExprPtr rhs;
    };
    struct ExprStmt {
        SubsetExprPtr expr;  // call-shaped
    };

    std::variant<Local, Assign, ExprStmt> node;
};

// ---------------------------------------------------------------------------
// Type references
// ---------------------------------------------------------------------------

inline std::optional<ElemType> elem_type_from_name(const std::string& n) {
    if (n == "uint") return ElemType::Uint;
    if (n == "int") return ElemType::Int;
    if (n == "bool") return ElemType::Bool;
    if (n == "address") return ElemType::Address;
    if (n == "bytes32") return ElemType::Bytes32;
    if (n == "string") return ElemType::String;
    return std::nullopt;
}

inline TypeRef parse_type_ref(TokenStream& ts) {
    const Token& t = ts.peek();
    TypeRef base = TypeRef::elementary(ElemType::Uint);
    if (t.is_ident("mapping")) {
        ts.next();
        ts.expect_punct("(");
        std::string keyName = ts.expect_ident("mapping key type");
        auto key = elem_type_from_name(keyName);
        if (!key || *key == ElemType::String)
            throw SubsetParseError{"unsupported mapping key type '" + keyName + "'", t.line, t.col};
        ts.expect_punct("=>");
        TypeRef value = parse_type_ref(ts);
        ts.expect_punct(")");
        base = TypeRef::mapping(*key, std::move(value));
    } else if (t.kind == Token::Kind::Ident) {
        std::string name = ts.next().text;
        if (auto e = elem_type_from_name(name))
            base = TypeRef::elementary(*e);
        else
            base = TypeRef::struct_ref(name);
    } else {
        throw SubsetParseError{"expected type", t.line, t.col};
    }
    while (ts.peek().is_punct("[") && ts.peek(1).is_punct("]")) {
        ts.next();
        ts.next();
        base = TypeRef::array(std::move(base));
    }
    return base;
}

// ---------------------------------------------------------------------------
// Expression / statement parsing
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<DurationUnit> duration_unit_from_name(const std::string& n) {
    if (n == "seconds") return DurationUnit::Seconds;
    if (n == "minutes") return DurationUnit::Minutes;
    if (n == "hours") return DurationUnit::Hours;
    if (n == "days") return DurationUnit::Days;
    return std::nullopt;
}

inline SubsetExprPtr parse_expr(TokenStream& ts);

inline SubsetExprPtr parse_object_literal(TokenStream& ts) {
    ts.expect_punct("{");
    std::vector<std::pair<std::string, SubsetExprPtr>> fields;
    if (!ts.accept_punct("}")) {
        do {
            std::string name = ts.expect_ident("field name");
            ts.expect_punct(":");
            fields.emplace_back(name, parse_expr(ts));
        } while (ts.accept_punct(","));
        ts.expect_punct("}");
    }
    return make_subset<SubsetExpr::ObjLit>(std::move(fields));
}

inline SubsetExprPtr parse_primary(TokenStream& ts) {
    const Token& t = ts.peek();
    switch (t.kind) {
        case Token::Kind::Number: {
            ts.next();
            u256 raw;
            try {
                raw = parse_u256(t.text);
            } catch (const std::exception& e) {
                throw SubsetParseError{e.what(), t.line, t.col};
            }
            std::optional<DurationUnit> unit;
            if (ts.peek().kind == Token::Kind::Ident) {
                if (auto u = duration_unit_from_name(ts.peek().text)) {
                    unit = u;
                    ts.next();
                }
            }
            return make_subset<SubsetExpr::Num>(raw, unit);
        }
        case Token::Kind::Hex:
            ts.next();
            return make_subset<SubsetExpr::Hex>(t.text);
        case Token::Kind::Str:
            ts.next();
            return make_subset<SubsetExpr::Str>(t.text);
        case Token::Kind::Ident:
            if (t.text == "true" || t.text == "false") {
                ts.next();
                return make_subset<SubsetExpr::Bool>(t.text == "true");
            }
            ts.next();
            return make_subset<SubsetExpr::Ident>(t.text);
        case Token::Kind::Punct:
            if (t.text == "(") {
                ts.next();
                SubsetExprPtr inner = parse_expr(ts);
                ts.expect_punct(")");
                return inner;
            }
            if (t.text == "{") return parse_object_literal(ts);
            break;
        default:
            break;
    }
    throw SubsetParseError{"expected expression", t.line, t.col};
}

inline SubsetExprPtr parse_postfix(TokenStream& ts) {
    SubsetExprPtr e = parse_primary(ts);
    for (;;) {
        if (ts.accept_punct(".")) {
            std::string field = ts.expect_ident("member name");
            e = make_subset<SubsetExpr::Member>(e, field);
        } else if (ts.accept_punct("[")) {
            SubsetExprPtr idx = parse_expr(ts);
            ts.expect_punct("]");
            e = make_subset<SubsetExpr::IndexOp>(e, idx);
        } else if (ts.peek().is_punct("(")) {
            ts.next();
            std::vector<SubsetExprPtr> args;
            if (!ts.accept_punct(")")) {
                do {
                    args.push_back(parse_expr(ts));
                } while (ts.accept_punct(","));
                ts.expect_punct(")");
            }
            e = make_subset<SubsetExpr::Call>(e, std::move(args));
        } else {
            return e;
        }
    }
}

inline SubsetExprPtr parse_unary(TokenStream& ts) {
    const Token& t = ts.peek();
    if (t.is_punct("!") || t.is_punct("-") || t.is_punct("+")) {
        ts.next();
        return make_subset<SubsetExpr::Un>(t.text, parse_unary(ts));
    }
    return parse_postfix(ts);
}

inline SubsetExprPtr parse_binary_level(TokenStream& ts, int level) {
    static const std::vector<std::vector<std::string>> levels = {
        {"||"}, {"&&"}, {"==", "!="}, {"<", "<=", ">", ">="}, {"+", "-"}, {"*", "/", "%"}};
    if (level >= static_cast<int>(levels.size())) return parse_unary(ts);
    SubsetExprPtr lhs = parse_binary_level(ts, level + 1);
    for (;;) {
        const Token& t = ts.peek();
        bool matched = false;
        for (const auto& op : levels[level]) {
            if (t.is_punct(op.c_str())) {
                ts.next();
                SubsetExprPtr rhs = parse_binary_level(ts, level + 1);
                lhs = make_subset<SubsetExpr::Bin>(op, lhs, rhs);
                matched = true;
                break;
            }
        }
        if (!matched) return lhs;
    }
}

inline SubsetExprPtr parse_expr(TokenStream& ts) { return parse_binary_level(ts, 0); }

}  // namespace detail

// Parses one expression and requires the stream to be fully consumed.
inline SubsetExprPtr parse_subset_expression(TokenStream& ts) {
    SubsetExprPtr e = detail::parse_expr(ts);
    if (!ts.at_end())
        throw SubsetParseError{"unexpected token '" + ts.peek().text + "'", ts.peek().line,
                               ts.peek().col};
    return e;
}

namespace detail {

// Parses one statement, stopping before any trailing ';'. Bare expression
// statements must be call-shaped. `var x` / `<type> x` declarations are
// recognized when followed by '=', ';' or end of input.
inline SubsetStmt parse_statement_inner(TokenStream& ts) {
    std::size_t start = ts.position();
    if (ts.peek().is_ident("var") && ts.peek(1).kind == Token::Kind::Ident) {
        ts.next();
        std::string name = ts.expect_ident("variable name");
        std::optional<SubsetExprPtr> init;
        if (ts.accept_punct("=")) init = parse_expr(ts);
        return SubsetStmt{SubsetStmt::Local{std::nullopt, name, init}};
    }
    try {
        TypeRef type = parse_type_ref(ts);
        if (ts.peek().kind == Token::Kind::Ident &&
            (ts.peek(1).is_punct("=") || ts.peek(1).is_punct(";") ||
             ts.peek(1).kind == Token::Kind::End)) {
            std::string name = ts.next().text;
            std::optional<SubsetExprPtr> init;
            if (ts.accept_punct("=")) init = parse_expr(ts);
            return SubsetStmt{SubsetStmt::Local{type, name, init}};
        }
        ts.rewind(start);
    } catch (const SubsetParseError&) {
        ts.rewind(start);
    }
    SubsetExprPtr lhs = parse_expr(ts);
    for (const char* op : {"=", "+=", "-=", "*="}) {
        if (ts.peek().is_punct(op)) {
            ts.next();
            SubsetExprPtr rhs = parse_expr(ts);
            return SubsetStmt{SubsetStmt::Assign{lhs, op, rhs}};
        }
    }
    if (!std::holds_alternative<SubsetExpr::Call>(lhs->node))
        throw SubsetParseError{"expected statement", ts.peek().line, ts.peek().col};
    return SubsetStmt{SubsetStmt::ExprStmt{lhs}};
}

}  // namespace detail

// Parses one statement (trailing semicolon optional) and requires full
// consumption.
inline SubsetStmt parse_subset_statement(TokenStream& ts) {
    SubsetStmt s = detail::parse_statement_inner(ts);
    ts.accept_punct(";");
    if (!ts.at_end())
        throw SubsetParseError{"unexpected token '" + ts.peek().text + "'", ts.peek().line,
                               ts.peek().col};
    return s;
}

enum class SnippetContext { Expression, Statement };

// Syntax-only check of an embedded Solidity snippet against the supported
// grammar subset. Empty result means the snippet parses.
inline std::vector<Diagnostic> check_solidity_syntax(const std::string& snippet,
                                                     SnippetContext ctx) {
    try {
        std::vector<Token> tokens = lex_source(snippet);
        TokenStream ts(tokens);
        if (ctx == SnippetContext::Expression)
            parse_subset_expression(ts);
        else
            parse_subset_statement(ts);
        return {};
    } catch (const SubsetParseError& e) {
        return {error("E_PARSE", std::to_string(e.line) + ":" + std::to_string(e.col), e.message)};
    }
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

namespace detail {

// Precedence levels used for minimal-parenthesis printing.
inline int bin_prec(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    return 6;  // * / %
}

inline std::string subset_text(const SubsetExpr& e, int parent);

inline std::string subset_text(const SubsetExprPtr& e, int parent) {
    return subset_text(*e, parent);
}

inline std::string subset_text(const SubsetExpr& e, int parent) {
    using E = SubsetExpr;
    std::string out;
    int prec = 9;
    if (const auto* n = std::get_if<E::Num>(&e.node)) {
        out = n->raw.str();
        if (n->unit) out += std::string(" ") + duration_unit_name(*n->unit);
    } else if (const auto* n = std::get_if<E::Hex>(&e.node)) {
        out = n->token;
    } else if (const auto* n = std::get_if<E::Str>(&e.node)) {
        out = "\"" + n->text + "\"";
    } else if (const auto* n = std::get_if<E::Bool>(&e.node)) {
        out = n->value ? "true" : "false";
    } else if (const auto* n = std::get_if<E::Ident>(&e.node)) {
        out = n->name;
    } else if (const auto* n = std::get_if<E::Member>(&e.node)) {
        out = subset_text(n->base, 8) + "." + n->field;
        prec = 8;
    } else if (const auto* n = std::get_if<E::IndexOp>(&e.node)) {
        out = subset_text(n->base, 8) + "[" + subset_text(n->index, 0) + "]";
        prec = 8;
    } else if (const auto* n = std::get_if<E::Call>(&e.node)) {
        out = subset_text(n->callee, 8) + "(";
        for (std::size_t i = 0; i < n->args.size(); ++i) {
            if (i) out += ", ";
            out += subset_text(n->args[i], 0);
        }
        out += ")";
        prec = 8;
    } else if (const auto* n = std::get_if<E::ObjLit>(&e.node)) {
        out = "{";
        for (std::size_t i = 0; i < n->fields.size(); ++i) {
            if (i) out += ", ";
            out += n->fields[i].first + ": " + subset_text(n->fields[i].second, 0);
        }
        out += "}";
    } else if (const auto* n = std::get_if<E::Un>(&e.node)) {
        out = n->op + subset_text(n->operand, 7);
        prec = 7;
    } else {
        const auto& b = std::get<E::Bin>(e.node);
        prec = bin_prec(b.op);
        out = subset_text(b.lhs, prec) + " " + b.op + " " + subset_text(b.rhs, prec + 1);
    }
    if (prec < parent) return "(" + out + ")";
    return out;
}

inline const char* binary_op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "&&";
        case BinaryOp::Or: return "||";
    }
    return "?";
}

inline int binary_op_prec(BinaryOp op) { return bin_prec(binary_op_text(op)); }

inline std::string core_text(const CoreExpr& e, int parent);

inline std::string core_text(const CoreExprPtr& e, int parent) { return core_text(*e, parent); }

inline std::string core_text(const CoreExpr& e, int parent) {
    using E = CoreExpr;
    std::string out;
    int prec = 9;
    if (const auto* n = std::get_if<E::IntLit>(&e.node)) {
        out = n->value.str();
    } else if (const auto* n = std::get_if<E::DurationLit>(&e.node)) {
        out = std::to_string(n->count) + " " + duration_unit_name(n->unit);
    } else if (const auto* n = std::get_if<E::BoolLit>(&e.node)) {
        out = n->value ? "true" : "false";
    } else if (const auto* n = std::get_if<E::AddressLit>(&e.node)) {
        out = n->token;
    } else if (const auto* n = std::get_if<E::StringLit>(&e.node)) {
        out = "\"" + n->text + "\"";
    } else if (const auto* n = std::get_if<E::Ident>(&e.node)) {
        out = n->name;
    } else if (const auto* n = std::get_if<E::Env>(&e.node)) {
        switch (n->symbol) {
            case EnvSymbol::Now: out = "now"; break;
            case EnvSymbol::Sender: out = "msg.sender"; break;
            case EnvSymbol::Value: out = "msg.value"; break;
        }
    } else if (const auto* n = std::get_if<E::Unary>(&e.node)) {
        out = (n->op == UnaryOp::Not ? "!" : "-") + core_text(n->operand, 7);
        prec = 7;
    } else if (const auto* n = std::get_if<E::Binary>(&e.node)) {
        prec = binary_op_prec(n->op);
        out = core_text(n->lhs, prec) + " " + binary_op_text(n->op) + " " +
              core_text(n->rhs, prec + 1);
    } else if (const auto* n = std::get_if<E::Index>(&e.node)) {
        out = core_text(n->base, 8) + "[" + core_text(n->index, 0) + "]";
        prec = 8;
    } else if (const auto* n = std::get_if<E::Member>(&e.node)) {
        out = core_text(n->base, 8) + "." + n->field;
        prec = 8;
    } else {
        const auto& s = std::get<E::StructLit>(e.node);
        out = s.structName + "({";
        for (std::size_t i = 0; i < s.fields.size(); ++i) {
            if (i) out += ", ";
            out += s.fields[i].first + ": " + core_text(s.fields[i].second, 0);
        }
        out += "})";
        prec = 8;
    }
    if (prec < parent) return "(" + out + ")";
    return out;
}

}  // namespace detail

inline std::string core_to_text(const CoreExprPtr& e) { return detail::core_text(*e, 0); }
inline std::string subset_to_text(const SubsetExprPtr& e) { return detail::subset_text(*e, 0); }

inline std::string subset_stmt_to_text(const SubsetStmt& s) {
    if (const auto* n = std::get_if<SubsetStmt::Local>(&s.node)) {
        std::string out = n->type ? type_to_text(*n->type) : std::string("var");
        out += " " + n->name;
        if (n->init) out += " = " + subset_to_text(*n->init);
        return out;
    }
    if (const auto* n = std::get_if<SubsetStmt::Assign>(&s.node))
        return subset_to_text(n->lhs) + " " + n->op + " " + subset_to_text(n->rhs);
    return subset_to_text(std::get<SubsetStmt::ExprStmt>(s.node).expr);
}

inline std::string expression_to_text(const Expression& e) {
    return e.is_core() ? core_to_text(e.core) : e.opaque;
}

inline std::string statement_to_text(const Statement& s) {
    if (const auto* n = std::get_if<Statement::Assign>(&s.node))
        return core_to_text(n->target) + " = " + core_to_text(n->value);
    if (const auto* n = std::get_if<Statement::Push>(&s.node))
        return core_to_text(n->target) + ".push(" + core_to_text(n->literal) + ")";
    if (const auto* n = std::get_if<Statement::Send>(&s.node))
        return core_to_text(n->recipient) + ".send(" + core_to_text(n->amount) + ")";
    return std::get<Statement::Opaque>(s.node).text;
}

// ---------------------------------------------------------------------------
// Semantic types and classification
// ---------------------------------------------------------------------------

// Semantic type of a core expression. Bytes covers bytes32 and string (both
// opaque byte payloads at this level); Int marks the signed type, which is
// outside the interpretable core.
struct SemType {
    enum class K { Uint, Int, Bool, Address, Bytes, Struct, Mapping, Array };

    K k = K::Uint;
    std::string structName;                 // Struct
    ElemType mapKey = ElemType::Uint;       // Mapping
    std::shared_ptr<const SemType> inner;   // Mapping value / Array element

    static SemType simple(K k) { return SemType{k, {}, ElemType::Uint, nullptr}; }
};

inline bool sem_same(const SemType& a, const SemType& b) {
    if (a.k != b.k) return false;
    if (a.k == SemType::K::Struct) return a.structName == b.structName;
    return true;  // containers never compared for assignability
}

// Classification environment: names in scope with their declared types, plus
// the struct table of the owning contract.
struct ClassifyEnv {
    std::map<std::string, TypeRef> vars;
    const Contract* contract = nullptr;

    const StructDecl* find_struct(const std::string& n) const {
        return contract ? contract->find_struct(n) : nullptr;
    }
};

namespace detail {

struct NotCoreSignal {};
struct UnresolvedSignal {
    std::string name;
};

inline SemType sem_of_elem(ElemType e) {
    switch (e) {
        case ElemType::Uint: return SemType::simple(SemType::K::Uint);
        case ElemType::Int: return SemType::simple(SemType::K::Int);
        case ElemType::Bool: return SemType::simple(SemType::K::Bool);
        case ElemType::Address: return SemType::simple(SemType::K::Address);
        case ElemType::Bytes32:
        case ElemType::String: return SemType::simple(SemType::K::Bytes);
    }
    return SemType::simple(SemType::K::Uint);
}

inline SemType sem_of_typeref(const TypeRef& t, const ClassifyEnv& env) {
    if (const auto* e = std::get_if<TypeRef::Elementary>(&t.node)) return sem_of_elem(e->type);
    if (const auto* m = std::get_if<TypeRef::Mapping>(&t.node)) {
        SemType r = SemType::simple(SemType::K::Mapping);
        r.mapKey = m->key;
        r.inner = std::make_shared<const SemType>(sem_of_typeref(*m->value, env));
        return r;
    }
    if (const auto* a = std::get_if<TypeRef::Array>(&t.node)) {
        SemType r = SemType::simple(SemType::K::Array);
        r.inner = std::make_shared<const SemType>(sem_of_typeref(*a->elem, env));
        return r;
    }
    const auto& s = std::get<TypeRef::StructRef>(t.node);
    if (!env.find_struct(s.name)) throw NotCoreSignal{};  // dangling struct ref
    SemType r = SemType::simple(SemType::K::Struct);
    r.structName = s.name;
    return r;
}

struct Built {
    CoreExprPtr ast;
    SemType type;
};

inline Built build_core(const SubsetExpr& e, const ClassifyEnv& env);

inline Built build_core(const SubsetExprPtr& e, const ClassifyEnv& env) {
    return build_core(*e, env);
}

inline Built build_core(const SubsetExpr& e, const ClassifyEnv& env) {
    using E = SubsetExpr;
    if (const auto* n = std::get_if<E::Num>(&e.node)) {
        if (!n->unit)
            return {make_core<CoreExpr::IntLit>(n->raw), SemType::simple(SemType::K::Uint)};
        if (n->raw > u256(UINT64_MAX)) throw NotCoreSignal{};
        uint64_t count = n->raw.convert_to<uint64_t>();
        u256 folded;
        try {
            folded = n->raw * u256(duration_unit_seconds(*n->unit));
        } catch (const std::exception&) {
            throw NotCoreSignal{};
        }
        return {make_core<CoreExpr::DurationLit>(folded, count, *n->unit),
                SemType::simple(SemType::K::Uint)};
    }
    if (const auto* n = std::get_if<E::Hex>(&e.node))
        return {make_core<CoreExpr::AddressLit>(n->token), SemType::simple(SemType::K::Address)};
    if (const auto* n = std::get_if<E::Str>(&e.node))
        return {make_core<CoreExpr::StringLit>(n->text), SemType::simple(SemType::K::Bytes)};
    if (const auto* n = std::get_if<E::Bool>(&e.node))
        return {make_core<CoreExpr::BoolLit>(n->value), SemType::simple(SemType::K::Bool)};
    if (const auto* n = std::get_if<E::Ident>(&e.node)) {
        if (n->name == "now")
            return {make_core<CoreExpr::Env>(EnvSymbol::Now), SemType::simple(SemType::K::Uint)};
        auto it = env.vars.find(n->name);
        if (it == env.vars.end()) throw UnresolvedSignal{n->name};
        SemType t = sem_of_typeref(it->second, env);
        if (t.k == SemType::K::Int) throw NotCoreSignal{};
        return {make_core<CoreExpr::Ident>(n->name), t};
    }
    if (const auto* n = std::get_if<E::Member>(&e.node)) {
        if (const auto* base = std::get_if<E::Ident>(&n->base->node)) {
            if (base->name == "msg") {
                if (n->field == "sender")
                    return {make_core<CoreExpr::Env>(EnvSymbol::Sender),
                            SemType::simple(SemType::K::Address)};
                if (n->field == "value")
                    return {make_core<CoreExpr::Env>(EnvSymbol::Value),
                            SemType::simple(SemType::K::Uint)};
                throw NotCoreSignal{};
            }
        }
        Built b = build_core(n->base, env);
        if (b.type.k != SemType::K::Struct) throw NotCoreSignal{};
        const StructDecl* decl = env.find_struct(b.type.structName);
        if (!decl) throw NotCoreSignal{};
        for (const auto& f : decl->fields) {
            if (f.name == n->field) {
                SemType ft = sem_of_typeref(f.type, env);
                if (ft.k == SemType::K::Int) throw NotCoreSignal{};
                return {make_core<CoreExpr::Member>(b.ast, n->field), ft};
            }
        }
        throw NotCoreSignal{};
    }
    if (const auto* n = std::get_if<E::IndexOp>(&e.node)) {
        Built base = build_core(n->base, env);
        Built idx = build_core(n->index, env);
        if (base.type.k == SemType::K::Mapping) {
            SemType keyType = sem_of_elem(base.type.mapKey);
            if (!sem_same(idx.type, keyType)) throw NotCoreSignal{};
            SemType vt = *base.type.inner;
            if (vt.k == SemType::K::Int) throw NotCoreSignal{};
            return {make_core<CoreExpr::Index>(base.ast, idx.ast), vt};
        }
        if (base.type.k == SemType::K::Array) {
            if (idx.type.k != SemType::K::Uint) throw NotCoreSignal{};
            SemType et = *base.type.inner;
            if (et.k == SemType::K::Int) throw NotCoreSignal{};
            return {make_core<CoreExpr::Index>(base.ast, idx.ast), et};
        }
        throw NotCoreSignal{};
    }
    if (const auto* n = std::get_if<E::Un>(&e.node)) {
        Built b = build_core(n->operand, env);
        if (n->op == "!") {
            if (b.type.k != SemType::K::Bool) throw NotCoreSignal{};
            return {make_core<CoreExpr::Unary>(UnaryOp::Not, b.ast),
                    SemType::simple(SemType::K::Bool)};
        }
        if (n->op == "-") {
            if (b.type.k != SemType::K::Uint) throw NotCoreSignal{};
            return {make_core<CoreExpr::Unary>(UnaryOp::Neg, b.ast),
                    SemType::simple(SemType::K::Uint)};
        }
        throw NotCoreSignal{};
    }
    if (const auto* n = std::get_if<E::Bin>(&e.node)) {
        static const std::map<std::string, BinaryOp> ops = {
            {"+", BinaryOp::Add}, {"-", BinaryOp::Sub},  {"*", BinaryOp::Mul},
            {"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne},  {"<", BinaryOp::Lt},
            {"<=", BinaryOp::Le}, {">", BinaryOp::Gt},   {">=", BinaryOp::Ge},
            {"&&", BinaryOp::And}, {"||", BinaryOp::Or}};
        auto it = ops.find(n->op);
        if (it == ops.end()) throw NotCoreSignal{};  // / and %
        Built l = build_core(n->lhs, env);
        Built r = build_core(n->rhs, env);
        BinaryOp op = it->second;
        auto k = [](SemType::K kk) { return SemType::simple(kk); };
        switch (op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
                if (l.type.k != SemType::K::Uint || r.type.k != SemType::K::Uint)
                    throw NotCoreSignal{};
                return {make_core<CoreExpr::Binary>(op, l.ast, r.ast), k(SemType::K::Uint)};
            case BinaryOp::Eq:
            case BinaryOp::Ne: {
                bool comparable = sem_same(l.type, r.type) &&
                                  (l.type.k == SemType::K::Uint || l.type.k == SemType::K::Bool ||
                                   l.type.k == SemType::K::Address || l.type.k == SemType::K::Bytes);
                if (!comparable) throw NotCoreSignal{};
                return {make_core<CoreExpr::Binary>(op, l.ast, r.ast), k(SemType::K::Bool)};
            }
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge:
                if (l.type.k != SemType::K::Uint || r.type.k != SemType::K::Uint)
                    throw NotCoreSignal{};
                return {make_core<CoreExpr::Binary>(op, l.ast, r.ast), k(SemType::K::Bool)};
            case BinaryOp::And:
            case BinaryOp::Or:
                if (l.type.k != SemType::K::Bool || r.type.k != SemType::K::Bool)
                    throw NotCoreSignal{};
                return {make_core<CoreExpr::Binary>(op, l.ast, r.ast), k(SemType::K::Bool)};
            default:
                throw NotCoreSignal{};
        }
    }
    throw NotCoreSignal{};  // Call / ObjLit
}

inline bool is_lvalue_chain(const CoreExprPtr& e) {
    if (std::holds_alternative<CoreExpr::Ident>(e->node)) return true;
    if (const auto* n = std::get_if<CoreExpr::Index>(&e->node)) return is_lvalue_chain(n->base);
    if (const auto* n = std::get_if<CoreExpr::Member>(&e->node)) return is_lvalue_chain(n->base);
    return false;
}

}  // namespace detail

// Rich classification result used by the parser and validator; the public
// two-tier Expression is the `expr` field.
struct ClassifiedExpr {
    Expression expr;
    bool coreGrammar = false;           // constructs were all in the core grammar
    std::optional<std::string> unresolved;  // set when coreGrammar but a name failed to resolve
    std::optional<SemType> type;        // set when expr.is_core()
};

inline ClassifiedExpr classify_subset_expression(const SubsetExprPtr& ast,
                                                 const ClassifyEnv& env) {
    ClassifiedExpr out;
    try {
        detail::Built b = detail::build_core(*ast, env);
        out.expr = Expression::core_expr(b.ast);
        out.coreGrammar = true;
        out.type = b.type;
        return out;
    } catch (const detail::UnresolvedSignal& u) {
        out.coreGrammar = true;
        out.unresolved = u.name;
    } catch (const detail::NotCoreSignal&) {
        out.coreGrammar = false;
    }
    out.expr = Expression::opaque_expr(subset_to_text(ast));
    return out;
}

// classify_expression: Core when every construct is interpretable, every
// identifier resolves, and the expression type-checks; Opaque otherwise.
// Never returns Core containing an unresolved identifier. Throws
// SubsetParseError if the snippet does not lex/parse.
inline Expression classify_expression(const std::string& snippet, const ClassifyEnv& env) {
    std::vector<Token> tokens = lex_source(snippet);
    TokenStream ts(tokens);
    SubsetExprPtr ast = parse_subset_expression(ts);
    return classify_subset_expression(ast, env).expr;
}

struct ClassifiedStmt {
    Statement stmt;
    bool coreGrammar = false;
    std::optional<std::string> unresolved;
};

inline ClassifiedStmt classify_subset_statement(const SubsetStmt& s, const ClassifyEnv& env) {
    using namespace detail;
    ClassifiedStmt out;
    std::string opaqueText = subset_stmt_to_text(s);
    try {
        if (const auto* a = std::get_if<SubsetStmt::Assign>(&s.node)) {
            if (a->op != "=") throw NotCoreSignal{};
            Built lhs = build_core(a->lhs, env);
            if (!is_lvalue_chain(lhs.ast)) throw NotCoreSignal{};
            Built rhs = build_core(a->rhs, env);
            bool assignable = sem_same(lhs.type, rhs.type) &&
                              (lhs.type.k == SemType::K::Uint || lhs.type.k == SemType::K::Bool ||
                               lhs.type.k == SemType::K::Address ||
                               lhs.type.k == SemType::K::Bytes ||
                               lhs.type.k == SemType::K::Struct);
            if (!assignable) throw NotCoreSignal{};
            out.stmt = Statement{Statement::Assign{lhs.ast, rhs.ast}};
            out.coreGrammar = true;
            return out;
        }
        if (const auto* x = std::get_if<SubsetStmt::ExprStmt>(&s.node)) {
            const auto& call = std::get<SubsetExpr::Call>(x->expr->node);
            const auto* callee = std::get_if<SubsetExpr::Member>(&call.callee->node);
            if (!callee || call.args.size() != 1) throw NotCoreSignal{};
            if (callee->field == "push") {
                Built target = build_core(callee->base, env);
                if (!is_lvalue_chain(target.ast) || target.type.k != SemType::K::Array)
                    throw NotCoreSignal{};
                const SemType& elem = *target.type.inner;
                if (elem.k != SemType::K::Struct) throw NotCoreSignal{};
                const auto* ctor = std::get_if<SubsetExpr::Call>(&call.args[0]->node);
                if (!ctor || ctor->args.size() != 1) throw NotCoreSignal{};
                const auto* ctorName = std::get_if<SubsetExpr::Ident>(&ctor->callee->node);
                const auto* obj = std::get_if<SubsetExpr::ObjLit>(&ctor->args[0]->node);
                if (!ctorName || !obj || ctorName->name != elem.structName) throw NotCoreSignal{};
                const StructDecl* decl = env.find_struct(elem.structName);
                if (!decl || obj->fields.size() != decl->fields.size()) throw NotCoreSignal{};
                // Fields may appear in any order; canonicalize to declaration order.
                std::vector<std::pair<std::string, CoreExprPtr>> fields;
                for (const auto& f : decl->fields) {
                    const SubsetExprPtr* given = nullptr;
                    for (const auto& g : obj->fields)
                        if (g.first == f.name) given = &g.second;
                    if (!given) throw NotCoreSignal{};
                    Built fv = build_core(*given, env);
                    if (!sem_same(fv.type, sem_of_typeref(f.type, env))) throw NotCoreSignal{};
                    fields.emplace_back(f.name, fv.ast);
                }
                CoreExprPtr lit = make_core<CoreExpr::StructLit>(elem.structName, std::move(fields));
                out.stmt = Statement{Statement::Push{target.ast, lit}};
                out.coreGrammar = true;
                return out;
            }
            if (callee->field == "send") {
                Built recipient = build_core(callee->base, env);
                if (recipient.type.k != SemType::K::Address) throw NotCoreSignal{};
                Built amount = build_core(call.args[0], env);
                if (amount.type.k != SemType::K::Uint) throw NotCoreSignal{};
                out.stmt = Statement{Statement::Send{recipient.ast, amount.ast}};
                out.coreGrammar = true;
                return out;
            }
            throw NotCoreSignal{};
        }
        throw NotCoreSignal{};  // Local declarations are never core
    } catch (const UnresolvedSignal& u) {
        out.coreGrammar = true;
        out.unresolved = u.name;
    } catch (const NotCoreSignal&) {
        out.coreGrammar = false;
    }
    out.stmt = Statement{Statement::Opaque{opaqueText}};
    return out;
}

inline ClassifiedStmt classify_statement(const std::string& snippet, const ClassifyEnv& env) {
    std::vector<Token> tokens = lex_source(snippet);
    TokenStream ts(tokens);
    SubsetStmt s = parse_subset_statement(ts);
    return classify_subset_statement(s, env);
}

// ---------------------------------------------------------------------------
// Environment builders
// ---------------------------------------------------------------------------

// Contract-level names: data variables plus the implicit creationTime (unless
// the user declared one, in which case the declaration wins).
inline ClassifyEnv env_for_contract(const Contract& c) {
    ClassifyEnv env;
    env.contract = &c;
    for (const auto& v : c.variables) env.vars.emplace(v.name, v.type);
    if (!c.declares_creation_time())
        env.vars.emplace("creationTime", TypeRef::elementary(ElemType::Uint));
    return env;
}

// Guard scope: contract data + the transition's input data (no outputs).
inline ClassifyEnv env_for_guard(const Contract& c, const Transition& t) {
    ClassifyEnv env = env_for_contract(c);
    for (const auto& v : t.input) env.vars[v.name] = v.type;
    return env;
}

// Statement scope: contract data + inputs + outputs.
inline ClassifyEnv env_for_statements(const Contract& c, const Transition& t) {
    ClassifyEnv env = env_for_guard(c, t);
    for (const auto& v : t.output) env.vars[v.name] = v.type;
    return env;
}

// Timed transitions see contract data only.
inline ClassifyEnv env_for_timed(const Contract& c) { return env_for_contract(c); }

}  // namespace fsmsolc
