#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fsmsolc/value.hpp"

namespace fsmsolc {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class ElemType { Uint, Int, Bool, Address, Bytes32, String };

inline const char* elem_type_name(ElemType t) {
    switch (t) {
        case ElemType::Uint: return "uint";
        case ElemType::Int: return "int";
        case ElemType::Bool: return "bool";
        case ElemType::Address: return "address";
        case ElemType::Bytes32: return "bytes32";
        case ElemType::String: return "string";
    }
    return "?";
}

// Type reference: elementary, mapping, dynamic array, or struct by name.
struct TypeRef {
    struct Elementary {
        ElemType type;
    };
    struct Mapping {
        ElemType key;
        std::shared_ptr<const TypeRef> value;
    };
    struct Array {
        std::shared_ptr<const TypeRef> elem;
    };
    struct StructRef {
        std::string name;
    };

    std::variant<Elementary, Mapping, Array, StructRef> node;

    static TypeRef elementary(ElemType t) { return TypeRef{Elementary{t}}; }
    static TypeRef mapping(ElemType key, TypeRef value) {
        return TypeRef{Mapping{key, std::make_shared<const TypeRef>(std::move(value))}};
    }
    static TypeRef array(TypeRef elem) {
        return TypeRef{Array{std::make_shared<const TypeRef>(std::move(elem))}};
    }
    static TypeRef struct_ref(std::string name) { return TypeRef{StructRef{std::move(name)}}; }

    bool is_elementary(ElemType t) const {
        const auto* e = std::get_if<Elementary>(&node);
        return e && e->type == t;
    }
};

inline bool operator==(const TypeRef& a, const TypeRef& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* e = std::get_if<TypeRef::Elementary>(&a.node))
        return e->type == std::get<TypeRef::Elementary>(b.node).type;
    if (const auto* m = std::get_if<TypeRef::Mapping>(&a.node)) {
        const auto& mb = std::get<TypeRef::Mapping>(b.node);
        return m->key == mb.key && *m->value == *mb.value;
    }
    if (const auto* ar = std::get_if<TypeRef::Array>(&a.node))
        return *ar->elem == *std::get<TypeRef::Array>(b.node).elem;
    return std::get<TypeRef::StructRef>(a.node).name == std::get<TypeRef::StructRef>(b.node).name;
}

inline std::string type_to_text(const TypeRef& t) {
    if (const auto* e = std::get_if<TypeRef::Elementary>(&t.node)) return elem_type_name(e->type);
    if (const auto* m = std::get_if<TypeRef::Mapping>(&t.node))
        return std::string("mapping(") + elem_type_name(m->key) + " => " + type_to_text(*m->value) +
               ")";
    if (const auto* a = std::get_if<TypeRef::Array>(&t.node)) return type_to_text(*a->elem) + "[]";
    return std::get<TypeRef::StructRef>(t.node).name;
}

// ---------------------------------------------------------------------------
// Core expressions
// ---------------------------------------------------------------------------

enum class BinaryOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Not, Neg };
enum class EnvSymbol { Now, Sender, Value };
enum class DurationUnit { Seconds, Minutes, Hours, Days };

inline uint64_t duration_unit_seconds(DurationUnit u) {
    switch (u) {
        case DurationUnit::Seconds: return 1;
        case DurationUnit::Minutes: return 60;
        case DurationUnit::Hours: return 3'600;
        case DurationUnit::Days: return 86'400;
    }
    return 1;
}

inline const char* duration_unit_name(DurationUnit u) {
    switch (u) {
        case DurationUnit::Seconds: return "seconds";
        case DurationUnit::Minutes: return "minutes";
        case DurationUnit::Hours: return "hours";
        case DurationUnit::Days: return "days";
    }
    return "?";
}

struct CoreExpr;
using CoreExprPtr = std::shared_ptr<const CoreExpr>;

// Interpretable expression AST. Shared immutable subtrees; deep equality via
// core_equal below.
struct CoreExpr {
    struct IntLit {
        u256 value;
    };
    // `N days` style literal; value is the folded seconds (count * unit).
    struct DurationLit {
        u256 value;
        uint64_t count;
        DurationUnit unit;
    };
    struct BoolLit {
        bool value;
    };
    struct AddressLit {
        std::string token;  // lowercased 0x form
    };
    struct StringLit {
        std::string text;
    };
    struct Ident {
        std::string name;
    };
    struct Env {
        EnvSymbol symbol;
    };
    struct Unary {
        UnaryOp op;
        CoreExprPtr operand;
    };
    struct Binary {
        BinaryOp op;
        CoreExprPtr lhs;
        CoreExprPtr rhs;
    };
    struct Index {
        CoreExprPtr base;
        CoreExprPtr index;
    };
    struct Member {
        CoreExprPtr base;
        std::string field;
    };
    struct StructLit {
        std::string structName;
        std::vector<std::pair<std::string, CoreExprPtr>> fields;
    };

    std::variant<IntLit, DurationLit, BoolLit, AddressLit, StringLit, Ident, Env, Unary, Binary,
                 Index, Member, StructLit>
        node;
};

template <typename T, typename... Args>
CoreExprPtr make_core(Args&&... args) {
    return std::make_shared<const CoreExpr>(CoreExpr{T{std::forward<Args>(args)...}});
}

inline bool core_equal(const CoreExpr& a, const CoreExpr& b);

inline bool core_equal(const CoreExprPtr& a, const CoreExprPtr& b) {
    if (!a || !b) return !a && !b;
    return core_equal(*a, *b);
}

inline bool core_equal(const CoreExpr& a, const CoreExpr& b) {
    if (a.node.index() != b.node.index()) return false;
    using E = CoreExpr;
    if (const auto* n = std::get_if<E::IntLit>(&a.node))
        return n->value == std::get<E::IntLit>(b.node).value;
    if (const auto* n = std::get_if<E::DurationLit>(&a.node)) {
        const auto& o = std::get<E::DurationLit>(b.node);
        return n->value == o.value && n->count == o.count && n->unit == o.unit;
    }
    if (const auto* n = std::get_if<E::BoolLit>(&a.node))
        return n->value == std::get<E::BoolLit>(b.node).value;
    if (const auto* n = std::get_if<E::AddressLit>(&a.node))
        return n->token == std::get<E::AddressLit>(b.node).token;
    if (const auto* n = std::get_if<E::StringLit>(&a.node))
        return n->text == std::get<E::StringLit>(b.node).text;
    if (const auto* n = std::get_if<E::Ident>(&a.node))
        return n->name == std::get<E::Ident>(b.node).name;
    if (const auto* n = std::get_if<E::Env>(&a.node))
        return n->symbol == std::get<E::Env>(b.node).symbol;
    if (const auto* n = std::get_if<E::Unary>(&a.node)) {
        const auto& o = std::get<E::Unary>(b.node);
        return n->op == o.op && core_equal(n->operand, o.operand);
    }
    if (const auto* n = std::get_if<E::Binary>(&a.node)) {
        const auto& o = std::get<E::Binary>(b.node);
        return n->op == o.op && core_equal(n->lhs, o.lhs) && core_equal(n->rhs, o.rhs);
    }
    if (const auto* n = std::get_if<E::Index>(&a.node)) {
        const auto& o = std::get<E::Index>(b.node);
        return core_equal(n->base, o.base) && core_equal(n->index, o.index);
    }
    if (const auto* n = std::get_if<E::Member>(&a.node)) {
        const auto& o = std::get<E::Member>(b.node);
        return n->field == o.field && core_equal(n->base, o.base);
    }
    const auto& sa = std::get<E::StructLit>(a.node);
    const auto& sb = std::get<E::StructLit>(b.node);
    if (sa.structName != sb.structName || sa.fields.size() != sb.fields.size()) return false;
    for (std::size_t i = 0; i < sa.fields.size(); ++i) {
        if (sa.fields[i].first != sb.fields[i].first) return false;
        if (!core_equal(sa.fields[i].second, sb.fields[i].second)) return false;
    }
    return true;
}

// Two-tier expression: either an interpretable Core AST or an Opaque Solidity
// snippet that was syntax-checked and is carried verbatim (in canonical
// token-spaced form).
struct Expression {
    CoreExprPtr core;    // null <=> opaque
    std::string opaque;  // canonical text, empty for core expressions

    bool is_core() const { return core != nullptr; }

    static Expression core_expr(CoreExprPtr e) { return Expression{std::move(e), {}}; }
    static Expression opaque_expr(std::string text) { return Expression{nullptr, std::move(text)}; }
};

inline bool operator==(const Expression& a, const Expression& b) {
    if (a.is_core() != b.is_core()) return false;
    if (a.is_core()) return core_equal(a.core, b.core);
    return a.opaque == b.opaque;
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

// Core statement forms; anything else is carried as Opaque text. Send is the
// single external control-transfer point (and so the only reentry site).
struct Statement {
    struct Assign {
        CoreExprPtr target;  // lvalue: Ident / Index / Member chain
        CoreExprPtr value;
    };
    struct Push {
        CoreExprPtr target;   // array lvalue
        CoreExprPtr literal;  // StructLit node
    };
    struct Send {
        CoreExprPtr recipient;
        CoreExprPtr amount;
    };
    struct Opaque {
        std::string text;  // canonical token-spaced form
    };

    std::variant<Assign, Push, Send, Opaque> node;

    bool is_opaque() const { return std::holds_alternative<Opaque>(node); }
    bool is_send() const { return std::holds_alternative<Send>(node); }
};

inline bool operator==(const Statement& a, const Statement& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* n = std::get_if<Statement::Assign>(&a.node)) {
        const auto& o = std::get<Statement::Assign>(b.node);
        return core_equal(n->target, o.target) && core_equal(n->value, o.value);
    }
    if (const auto* n = std::get_if<Statement::Push>(&a.node)) {
        const auto& o = std::get<Statement::Push>(b.node);
        return core_equal(n->target, o.target) && core_equal(n->literal, o.literal);
    }
    if (const auto* n = std::get_if<Statement::Send>(&a.node)) {
        const auto& o = std::get<Statement::Send>(b.node);
        return core_equal(n->recipient, o.recipient) && core_equal(n->amount, o.amount);
    }
    return std::get<Statement::Opaque>(a.node).text == std::get<Statement::Opaque>(b.node).text;
}

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct StateDecl {
    std::string name;
    bool isInitial = false;

    bool operator==(const StateDecl&) const = default;
};

enum class VarKind { ContractData, InputData, OutputData };
enum class Visibility { Public, Private };

struct Variable {
    std::string name;
    VarKind kind = VarKind::ContractData;
    TypeRef type = TypeRef::elementary(ElemType::Uint);
    Visibility visibility = Visibility::Private;  // meaningful for ContractData only
    std::optional<Expression> initializer;        // ContractData only
};

inline bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name && a.kind == b.kind && a.type == b.type &&
           a.visibility == b.visibility && a.initializer == b.initializer;
}

struct StructField {
    TypeRef type;
    std::string name;

    bool operator==(const StructField& o) const { return type == o.type && name == o.name; }
};

struct StructDecl {
    std::string name;
    std::vector<StructField> fields;

    bool operator==(const StructDecl&) const = default;
};

struct TagSet {
    bool payable = false;
    bool admin = false;
    bool event = false;

    bool operator==(const TagSet&) const = default;
};

// A transition and its six attribute groups: name, guards, input data,
// output data, statements, tags (from/to anchor it in the machine).
struct Transition {
    std::string name;
    std::string from;
    std::string to;
    TagSet tags;
    std::vector<Variable> input;
    std::vector<Variable> output;
    std::vector<Expression> guards;
    std::vector<Statement> statements;

    bool operator==(const Transition&) const = default;
};

// Timed transitions carry guards, statements and a time offset (seconds from
// creation); by construction they have no input or output data.
struct TimedTransition {
    std::string name;
    std::string from;
    std::string to;
    uint64_t timeSeconds = 0;
    std::vector<Expression> guards;
    std::vector<Statement> statements;

    bool operator==(const TimedTransition&) const = default;
};

struct Contract {
    std::string name;
    std::vector<StateDecl> states;
    std::vector<StructDecl> customTypes;
    std::vector<Variable> variables;
    std::vector<Transition> transitions;
    std::vector<TimedTransition> timedTransitions;

    bool operator==(const Contract&) const = default;

    const StateDecl* find_state(const std::string& n) const {
        for (const auto& s : states)
            if (s.name == n) return &s;
        return nullptr;
    }
    const Transition* find_transition(const std::string& n) const {
        for (const auto& t : transitions)
            if (t.name == n) return &t;
        return nullptr;
    }
    const TimedTransition* find_timed(const std::string& n) const {
        for (const auto& t : timedTransitions)
            if (t.name == n) return &t;
        return nullptr;
    }
    const StructDecl* find_struct(const std::string& n) const {
        for (const auto& s : customTypes)
            if (s.name == n) return &s;
        return nullptr;
    }
    const Variable* find_variable(const std::string& n) const {
        for (const auto& v : variables)
            if (v.name == n) return &v;
        return nullptr;
    }
    const StateDecl* initial_state() const {
        for (const auto& s : states)
            if (s.isInitial) return &s;
        return nullptr;
    }
    bool declares_creation_time() const { return find_variable("creationTime") != nullptr; }
};

// ---------------------------------------------------------------------------
// Node paths
// ---------------------------------------------------------------------------

inline std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '/') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

namespace detail {

inline bool is_index(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline bool index_in(const std::string& seg, std::size_t size) {
    if (!is_index(seg)) return false;
    return std::stoul(seg) < size;
}

template <typename T>
bool resolve_transition_tail(const T& t, const std::vector<std::string>& parts, std::size_t i) {
    if (i >= parts.size()) return true;
    const std::string& seg = parts[i];
    bool last = i + 1 == parts.size();
    if (seg == "name" || seg == "from" || seg == "to") return last;
    if (seg == "guards") return last || (i + 2 == parts.size() && index_in(parts[i + 1], t.guards.size()));
    if (seg == "statements")
        return last || (i + 2 == parts.size() && index_in(parts[i + 1], t.statements.size()));
    if constexpr (std::is_same_v<T, Transition>) {
        if (seg == "tags") return last;
        auto named = [&](const std::vector<Variable>& vars) {
            if (last) return true;
            if (i + 2 != parts.size()) return false;
            for (const auto& v : vars)
                if (v.name == parts[i + 1]) return true;
            return index_in(parts[i + 1], vars.size());
        };
        if (seg == "input") return named(t.input);
        if (seg == "output") return named(t.output);
    } else {
        if (seg == "time") return last;
    }
    return false;
}

}  // namespace detail

// True when a slash-separated node path names an existing element of the
// contract tree. Collections resolve bare; elements resolve by name; guard and
// statement lists resolve by index.
inline bool resolve_node_path(const Contract& c, const std::string& path) {
    if (path.empty()) return false;
    auto parts = split_path(path);
    const std::string& root = parts[0];
    if (root == "contract") return parts.size() == 1;
    if (root == "states") {
        if (parts.size() == 1) return true;
        return parts.size() == 2 && c.find_state(parts[1]) != nullptr;
    }
    if (root == "structs") {
        if (parts.size() == 1) return true;
        const auto* s = c.find_struct(parts[1]);
        if (!s) return false;
        if (parts.size() == 2) return true;
        if (parts.size() != 3) return false;
        for (const auto& f : s->fields)
            if (f.name == parts[2]) return true;
        return false;
    }
    if (root == "variables") {
        if (parts.size() == 1) return true;
        const auto* v = c.find_variable(parts[1]);
        if (!v) return false;
        if (parts.size() == 2) return true;
        return parts.size() == 3 && (parts[2] == "type" || parts[2] == "init" || parts[2] == "name");
    }
    if (root == "transitions") {
        if (parts.size() == 1) return true;
        const auto* t = c.find_transition(parts[1]);
        if (!t) return false;
        return detail::resolve_transition_tail(*t, parts, 2);
    }
    if (root == "timedTransitions") {
        if (parts.size() == 1) return true;
        const auto* t = c.find_timed(parts[1]);
        if (!t) return false;
        return detail::resolve_transition_tail(*t, parts, 2);
    }
    return false;
}

}  // namespace fsmsolc
