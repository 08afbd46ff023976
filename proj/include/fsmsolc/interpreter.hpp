#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fsmsolc/ast.hpp"
#include "fsmsolc/diagnostics.hpp"
#include "fsmsolc/value.hpp"
#include "fsmsolc/weaver.hpp"

// Abstract execution of an AugmentedContract. Invocations run against a
// value-semantic InstanceState; a rejected invocation returns the untouched
// pre-state (transaction atomicity). Send statements are the only external
// control transfer: an Invocation may carry a nested reentry attempt that
// runs when the transition body executes its first Send.

namespace fsmsolc {

struct Env {
    uint64_t now = 0;
    std::string sender;
    u256 value = 0;
};

struct Invocation {
    std::string transition;
    Env env;
    std::map<std::string, Value> args;
    std::optional<u256> counterArg;
    std::shared_ptr<const Invocation> reentry;
    std::size_t reentrySite = 0;  // which Send of the body triggers the reentry
};

struct InstanceState {
    std::string currentState;
    std::map<std::string, Value> store;
    bool locked = false;
    u256 counter = 0;
    uint64_t creationTime = 0;
    std::set<std::string> adminSet;
    u256 balance = 0;

    bool operator==(const InstanceState&) const = default;
};

struct Outcome {
    bool accepted = false;
    std::string newState;                  // accepted only
    std::map<std::string, Value> outputs;  // accepted only
    std::string rejectCode;                // rejected only
};

struct TraceEntry {
    Invocation invocation;
    Outcome outcome;
    int depth = 0;
};

using Trace = std::vector<TraceEntry>;

namespace detail {

struct RejectSignal {
    std::string code;
};

inline Value zero_value(const TypeRef& t, const Contract& c) {
    if (const auto* e = std::get_if<TypeRef::Elementary>(&t.node)) {
        switch (e->type) {
            case ElemType::Uint:
            case ElemType::Int: return Value::uint(u256(0));
            case ElemType::Bool: return Value::boolean(false);
            case ElemType::Address: return Value::address("0x0");
            case ElemType::Bytes32:
            case ElemType::String: return Value::bytes("");
        }
    }
    if (std::holds_alternative<TypeRef::Mapping>(t.node)) return Value::mapping();
    if (std::holds_alternative<TypeRef::Array>(t.node)) return Value::array();
    const auto& s = std::get<TypeRef::StructRef>(t.node);
    const StructDecl* decl = c.find_struct(s.name);
    std::vector<std::pair<std::string, Value>> fields;
    if (decl)
        for (const auto& f : decl->fields) fields.emplace_back(f.name, zero_value(f.type, c));
    return Value::struct_(std::move(fields));
}

inline bool value_matches(const TypeRef& t, const Value& v) {
    if (const auto* e = std::get_if<TypeRef::Elementary>(&t.node)) {
        switch (e->type) {
            case ElemType::Uint:
            case ElemType::Int: return v.kind == Value::Kind::Uint;
            case ElemType::Bool: return v.kind == Value::Kind::Bool;
            case ElemType::Address: return v.kind == Value::Kind::Address;
            case ElemType::Bytes32:
            case ElemType::String: return v.kind == Value::Kind::Bytes;
        }
    }
    return false;  // container-typed invocation arguments are unsupported
}

inline bool expression_is_core(const Expression& e) { return e.is_core(); }

inline bool transition_is_core(const Transition& t) {
    for (const auto& g : t.guards)
        if (!g.is_core()) return false;
    for (const auto& s : t.statements)
        if (s.is_opaque()) return false;
    return true;
}

inline bool timed_is_core(const TimedTransition& t) {
    for (const auto& g : t.guards)
        if (!g.is_core()) return false;
    for (const auto& s : t.statements)
        if (s.is_opaque()) return false;
    return true;
}

// Evaluation context for one frame: the shared contract, the working state,
// the frame's environment, and frame-local input/output bindings.
struct Frame {
    const AugmentedContract& aug;
    InstanceState& st;
    const Env& env;
    std::map<std::string, Value>& locals;
};

inline Value eval_expr(const CoreExprPtr& e, Frame& f);
inline Value zero_of_indexed(const CoreExprPtr& mappingBase, Frame& f);

inline u256 eval_uint(const CoreExprPtr& e, Frame& f) {
    Value v = eval_expr(e, f);
    if (v.kind != Value::Kind::Uint)
        throw ToolError(error("E_UNINTERPRETABLE", "contract", "expected integer operand"));
    return v.uintVal;
}

inline bool eval_bool(const CoreExprPtr& e, Frame& f) {
    Value v = eval_expr(e, f);
    if (v.kind != Value::Kind::Bool)
        throw ToolError(error("E_UNINTERPRETABLE", "contract", "expected boolean operand"));
    return v.boolVal;
}

inline Value eval_expr(const CoreExprPtr& e, Frame& f) {
    using E = CoreExpr;
    if (const auto* n = std::get_if<E::IntLit>(&e->node)) return Value::uint(n->value);
    if (const auto* n = std::get_if<E::DurationLit>(&e->node)) return Value::uint(n->value);
    if (const auto* n = std::get_if<E::BoolLit>(&e->node)) return Value::boolean(n->value);
    if (const auto* n = std::get_if<E::AddressLit>(&e->node)) return Value::address(n->token);
    if (const auto* n = std::get_if<E::StringLit>(&e->node)) return Value::bytes(n->text);
    if (const auto* n = std::get_if<E::Ident>(&e->node)) {
        auto local = f.locals.find(n->name);
        if (local != f.locals.end()) return local->second;
        auto stored = f.st.store.find(n->name);
        if (stored != f.st.store.end()) return stored->second;
        throw ToolError(error("E_UNKNOWN_SYMBOL", "contract",
                              "symbol '" + n->name + "' has no runtime binding"));
    }
    if (const auto* n = std::get_if<E::Env>(&e->node)) {
        switch (n->symbol) {
            case EnvSymbol::Now: return Value::uint(u256(f.env.now));
            case EnvSymbol::Sender: return Value::address(f.env.sender);
            case EnvSymbol::Value: return Value::uint(f.env.value);
        }
    }
    if (const auto* n = std::get_if<E::Unary>(&e->node)) {
        if (n->op == UnaryOp::Not) return Value::boolean(!eval_bool(n->operand, f));
        u256 v = eval_uint(n->operand, f);
        try {
            return Value::uint(u256(0) - v);
        } catch (const std::exception&) {
            throw RejectSignal{"R_OVERFLOW"};
        }
    }
    if (const auto* n = std::get_if<E::Binary>(&e->node)) {
        switch (n->op) {
            case BinaryOp::And:
                return Value::boolean(eval_bool(n->lhs, f) && eval_bool(n->rhs, f));
            case BinaryOp::Or:
                return Value::boolean(eval_bool(n->lhs, f) || eval_bool(n->rhs, f));
            default: break;
        }
        Value l = eval_expr(n->lhs, f);
        Value r = eval_expr(n->rhs, f);
        switch (n->op) {
            case BinaryOp::Eq: return Value::boolean(l == r);
            case BinaryOp::Ne: return Value::boolean(!(l == r));
            default: break;
        }
        if (l.kind != Value::Kind::Uint || r.kind != Value::Kind::Uint)
            throw ToolError(error("E_UNINTERPRETABLE", "contract", "expected integer operands"));
        try {
            switch (n->op) {
                case BinaryOp::Add: return Value::uint(l.uintVal + r.uintVal);
                case BinaryOp::Sub: return Value::uint(l.uintVal - r.uintVal);
                case BinaryOp::Mul: return Value::uint(l.uintVal * r.uintVal);
                case BinaryOp::Lt: return Value::boolean(l.uintVal < r.uintVal);
                case BinaryOp::Le: return Value::boolean(l.uintVal <= r.uintVal);
                case BinaryOp::Gt: return Value::boolean(l.uintVal > r.uintVal);
                case BinaryOp::Ge: return Value::boolean(l.uintVal >= r.uintVal);
                default: break;
            }
        } catch (const std::exception&) {
            throw RejectSignal{"R_OVERFLOW"};
        }
        throw ToolError(error("E_UNINTERPRETABLE", "contract", "unsupported operator"));
    }
    if (const auto* n = std::get_if<E::Index>(&e->node)) {
        Value base = eval_expr(n->base, f);
        Value idx = eval_expr(n->index, f);
        if (base.kind == Value::Kind::Mapping) {
            if (const Value* found = base.mapping_find(idx.key_repr())) return *found;
            // Absent keys read as the zero of the value type; resolve it via
            // the declared type of the base expression.
            return zero_of_indexed(n->base, f);
        }
        if (base.kind == Value::Kind::Array) {
            if (idx.kind != Value::Kind::Uint || idx.uintVal >= u256(base.elems.size()))
                throw RejectSignal{"R_OVERFLOW"};
            return base.elems[idx.uintVal.convert_to<std::size_t>()];
        }
        throw ToolError(error("E_UNINTERPRETABLE", "contract", "index of non-container"));
    }
    if (const auto* n = std::get_if<E::Member>(&e->node)) {
        Value base = eval_expr(n->base, f);
        if (base.kind != Value::Kind::Struct)
            throw ToolError(error("E_UNINTERPRETABLE", "contract", "member of non-struct"));
        if (const Value* field = base.struct_field(n->field)) return *field;
        throw ToolError(error("E_UNINTERPRETABLE", "contract",
                              "struct has no field '" + n->field + "'"));
    }
    if (const auto* n = std::get_if<E::StructLit>(&e->node)) {
        std::vector<std::pair<std::string, Value>> fields;
        for (const auto& [name, expr] : n->fields) fields.emplace_back(name, eval_expr(expr, f));
        return Value::struct_(std::move(fields));
    }
    throw ToolError(error("E_UNINTERPRETABLE", "contract", "unsupported expression"));
}

// Declared type of an lvalue-ish core expression, used to materialize zeros
// for absent mapping entries.
inline std::optional<TypeRef> static_type_of(const CoreExprPtr& e, Frame& f) {
    using E = CoreExpr;
    if (const auto* n = std::get_if<E::Ident>(&e->node)) {
        for (const auto& v : f.aug.base.variables)
            if (v.name == n->name) return v.type;
        if (n->name == "creationTime") return TypeRef::elementary(ElemType::Uint);
        return std::nullopt;  // locals carry runtime values only
    }
    if (const auto* n = std::get_if<E::Index>(&e->node)) {
        auto base = static_type_of(n->base, f);
        if (!base) return std::nullopt;
        if (const auto* m = std::get_if<TypeRef::Mapping>(&base->node)) return *m->value;
        if (const auto* a = std::get_if<TypeRef::Array>(&base->node)) return *a->elem;
        return std::nullopt;
    }
    if (const auto* n = std::get_if<E::Member>(&e->node)) {
        auto base = static_type_of(n->base, f);
        if (!base) return std::nullopt;
        if (const auto* s = std::get_if<TypeRef::StructRef>(&base->node)) {
            const StructDecl* decl = f.aug.base.find_struct(s->name);
            if (decl)
                for (const auto& field : decl->fields)
                    if (field.name == n->field) return field.type;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

inline Value zero_of_indexed(const CoreExprPtr& mappingBase, Frame& f) {
    if (auto t = static_type_of(mappingBase, f)) {
        if (const auto* m = std::get_if<TypeRef::Mapping>(&t->node))
            return zero_value(*m->value, f.aug.base);
    }
    return Value::uint(u256(0));
}

// Mutable reference into the working state for an lvalue chain. Mapping
// accesses materialize absent entries as zeros; writes that leave a zero are
// pruned afterwards by canonicalize_store.
inline Value* lvalue_ref(const CoreExprPtr& e, Frame& f) {
    using E = CoreExpr;
    if (const auto* n = std::get_if<E::Ident>(&e->node)) {
        auto local = f.locals.find(n->name);
        if (local != f.locals.end()) return &local->second;
        auto stored = f.st.store.find(n->name);
        if (stored != f.st.store.end()) return &stored->second;
        throw ToolError(error("E_UNKNOWN_SYMBOL", "contract",
                              "symbol '" + n->name + "' has no runtime binding"));
    }
    if (const auto* n = std::get_if<E::Index>(&e->node)) {
        Value* base = lvalue_ref(n->base, f);
        Value idx = eval_expr(n->index, f);
        if (base->kind == Value::Kind::Mapping)
            return base->mapping_slot(idx.key_repr(), zero_of_indexed(n->base, f));
        if (base->kind == Value::Kind::Array) {
            if (idx.kind != Value::Kind::Uint || idx.uintVal >= u256(base->elems.size()))
                throw RejectSignal{"R_OVERFLOW"};
            return &base->elems[idx.uintVal.convert_to<std::size_t>()];
        }
        throw ToolError(error("E_UNINTERPRETABLE", "contract", "index of non-container"));
    }
    if (const auto* n = std::get_if<E::Member>(&e->node)) {
        Value* base = lvalue_ref(n->base, f);
        if (base->kind != Value::Kind::Struct)
            throw ToolError(error("E_UNINTERPRETABLE", "contract", "member of non-struct"));
        if (Value* field = base->struct_field(n->field)) return field;
        throw ToolError(error("E_UNINTERPRETABLE", "contract",
                              "struct has no field '" + n->field + "'"));
    }
    throw ToolError(error("E_UNINTERPRETABLE", "contract", "unsupported assignment target"));
}

// Removes zero-valued mapping entries (including ones materialized for
// reads/writes) so stores stay canonical for deep equality.
inline void canonicalize_value(Value& v) {
    if (v.kind == Value::Kind::Mapping) {
        std::vector<std::pair<std::string, Value>> kept;
        for (auto& [k, inner] : v.fields) {
            canonicalize_value(inner);
            if (!inner.is_zero()) kept.emplace_back(k, std::move(inner));
        }
        v.fields = std::move(kept);
        return;
    }
    if (v.kind == Value::Kind::Struct) {
        for (auto& [k, inner] : v.fields) canonicalize_value(inner);
        return;
    }
    if (v.kind == Value::Kind::Array) {
        for (auto& inner : v.elems) canonicalize_value(inner);
    }
}

inline void canonicalize_store(InstanceState& st) {
    for (auto& [name, v] : st.store) canonicalize_value(v);
}

}  // namespace detail

inline InstanceState init_instance(const AugmentedContract& aug, uint64_t creationTime,
                                   const std::string& creator) {
    const Contract& c = aug.base;
    InstanceState st;
    if (!c.initial_state())
        throw ToolError(error("E_INVALID", "states", "contract has no initial state"));
    st.currentState = c.initial_state()->name;
    st.creationTime = creationTime;
    if (aug.plugins.accessControl) st.adminSet.insert(Value::address(creator).strVal);

    for (const auto& v : c.variables) st.store[v.name] = detail::zero_value(v.type, c);
    if (!c.declares_creation_time()) st.store["creationTime"] = Value::uint(u256(creationTime));

    Env env{creationTime, creator, u256(0)};
    std::map<std::string, Value> locals;
    detail::Frame frame{aug, st, env, locals};
    for (const auto& v : c.variables) {
        if (!v.initializer) continue;
        if (!v.initializer->is_core())
            throw ToolError(error("E_UNINTERPRETABLE", "variables/" + v.name,
                                  "initializer is not interpretable"));
        st.store[v.name] = detail::eval_expr(v.initializer->core, frame);
    }
    detail::canonicalize_store(st);
    return st;
}

namespace detail {

inline std::pair<InstanceState, Outcome> invoke_at_depth(const AugmentedContract& aug,
                                                         const InstanceState& snapshot,
                                                         const Invocation& call, Trace* trace,
                                                         int depth);

// Executes the frame body against `work`; throws RejectSignal on modeled
// rejection. Returns the outputs map.
inline std::map<std::string, Value> run_frame(const AugmentedContract& aug, InstanceState& work,
                                              const Invocation& call, const Transition& t,
                                              bool generated, Trace* trace, int depth) {
    const TransitionAugmentation* wrap = aug.find_augmentation(t.name);
    auto has_wrapper = [&](WrapperKind k) {
        return wrap && std::find(wrap->wrappers.begin(), wrap->wrappers.end(), k) !=
                           wrap->wrappers.end();
    };

    if (!t.tags.payable && call.env.value > 0) throw RejectSignal{"R_NOT_PAYABLE"};
    try {
        work.balance = work.balance + call.env.value;
    } catch (const std::exception&) {
        throw RejectSignal{"R_OVERFLOW"};
    }

    if (has_wrapper(WrapperKind::Locking)) {
        if (work.locked) throw RejectSignal{"R_LOCKED"};
        work.locked = true;
    }

    if (has_wrapper(WrapperKind::TransitionCounting)) {
        if (!call.counterArg || *call.counterArg != work.counter)
            throw RejectSignal{"R_BAD_COUNTER"};
        try {
            work.counter = work.counter + 1;
        } catch (const std::exception&) {
            throw RejectSignal{"R_OVERFLOW"};
        }
    }

    std::map<std::string, Value> locals;
    Frame frame{aug, work, call.env, locals};

    if (has_wrapper(WrapperKind::TimedTransitions)) {
        for (const TimedTransition* timed : aug.timed_firing_order()) {
            if (!timed_is_core(*timed))
                throw ToolError(error("E_UNINTERPRETABLE", "timedTransitions/" + timed->name,
                                      "timed transition is not interpretable"));
            if (timed->from != work.currentState) continue;
            const Value* ct = nullptr;
            auto it = work.store.find("creationTime");
            if (it != work.store.end()) ct = &it->second;
            u256 threshold;
            try {
                threshold = (ct ? ct->uintVal : u256(work.creationTime)) +
                            u256(timed->timeSeconds);
            } catch (const std::exception&) {
                throw RejectSignal{"R_OVERFLOW"};
            }
            if (u256(call.env.now) < threshold) continue;
            bool guardsHold = true;
            for (const auto& g : timed->guards)
                if (!eval_bool(g.core, frame)) {
                    guardsHold = false;
                    break;
                }
            if (!guardsHold) continue;
            for (const auto& s : timed->statements) {
                if (const auto* a = std::get_if<Statement::Assign>(&s.node)) {
                    Value v = eval_expr(a->value, frame);
                    *lvalue_ref(a->target, frame) = std::move(v);
                } else if (const auto* p = std::get_if<Statement::Push>(&s.node)) {
                    Value v = eval_expr(p->literal, frame);
                    Value* target = lvalue_ref(p->target, frame);
                    if (target->kind != Value::Kind::Array)
                        throw ToolError(
                            error("E_UNINTERPRETABLE", "contract", "push on non-array"));
                    target->elems.push_back(std::move(v));
                } else if (const auto* snd = std::get_if<Statement::Send>(&s.node)) {
                    eval_expr(snd->recipient, frame);
                    u256 amount = eval_uint(snd->amount, frame);
                    if (amount > work.balance) throw RejectSignal{"R_INSUFFICIENT_BALANCE"};
                    work.balance = work.balance - amount;
                } else {
                    throw ToolError(error("E_UNINTERPRETABLE", "timedTransitions/" + timed->name,
                                          "opaque statement"));
                }
            }
            work.currentState = timed->to;
        }
    }

    if (has_wrapper(WrapperKind::AccessGuard)) {
        if (!work.adminSet.count(Value::address(call.env.sender).strVal))
            throw RejectSignal{"R_NOT_ADMIN"};
    }

    if (!generated && work.currentState != t.from) throw RejectSignal{"R_WRONG_STATE"};

    // Bind declared inputs; outputs start at zero.
    {
        std::set<std::string> expected;
        for (const auto& v : t.input) {
            expected.insert(v.name);
            auto given = call.args.find(v.name);
            if (given == call.args.end())
                throw ToolError(error("E_BAD_ARGS", "transitions/" + t.name,
                                      "missing argument '" + v.name + "'"));
            if (!value_matches(v.type, given->second))
                throw ToolError(error("E_BAD_ARGS", "transitions/" + t.name,
                                      "argument '" + v.name + "' has the wrong type"));
            locals[v.name] = given->second;
        }
        for (const auto& [name, unused] : call.args) {
            (void)unused;
            if (!expected.count(name))
                throw ToolError(error("E_BAD_ARGS", "transitions/" + t.name,
                                      "unexpected argument '" + name + "'"));
        }
        for (const auto& v : t.output) locals[v.name] = zero_value(v.type, aug.base);
    }

    for (const auto& g : t.guards) {
        if (!g.is_core())
            throw ToolError(error("E_UNINTERPRETABLE", "transitions/" + t.name,
                                  "guard is not interpretable"));
        if (!eval_bool(g.core, frame)) throw RejectSignal{"R_GUARD_FALSE"};
    }

    if (generated) {
        Value account = locals.at("account");
        const std::string& key = account.strVal;
        if (t.name == "addAdmin") {
            if (work.adminSet.count(key)) throw RejectSignal{"R_GUARD_FALSE"};
            work.adminSet.insert(key);
        } else {
            if (!work.adminSet.count(key)) throw RejectSignal{"R_GUARD_FALSE"};
            if (work.adminSet.size() == 1) throw RejectSignal{"R_LAST_ADMIN"};
            work.adminSet.erase(key);
        }
    } else {
        std::size_t sendIndex = 0;
        for (const auto& s : t.statements) {
            if (const auto* a = std::get_if<Statement::Assign>(&s.node)) {
                Value v = eval_expr(a->value, frame);
                *lvalue_ref(a->target, frame) = std::move(v);
            } else if (const auto* p = std::get_if<Statement::Push>(&s.node)) {
                Value v = eval_expr(p->literal, frame);
                Value* target = lvalue_ref(p->target, frame);
                if (target->kind != Value::Kind::Array)
                    throw ToolError(error("E_UNINTERPRETABLE", "contract", "push on non-array"));
                target->elems.push_back(std::move(v));
            } else if (const auto* snd = std::get_if<Statement::Send>(&s.node)) {
                eval_expr(snd->recipient, frame);
                u256 amount = eval_uint(snd->amount, frame);
                if (amount > work.balance) throw RejectSignal{"R_INSUFFICIENT_BALANCE"};
                work.balance = work.balance - amount;
                if (call.reentry && sendIndex == call.reentrySite) {
                    canonicalize_store(work);
                    auto [nestedState, nestedOutcome] =
                        invoke_at_depth(aug, work, *call.reentry, trace, depth + 1);
                    if (nestedOutcome.accepted) work = std::move(nestedState);
                    // A rejected nested call leaves the outer state as it
                    // was; the outer frame carries on either way.
                }
                ++sendIndex;
            } else {
                throw ToolError(error("E_UNINTERPRETABLE", "transitions/" + t.name,
                                      "opaque statement"));
            }
        }
        work.currentState = t.to;
    }

    if (has_wrapper(WrapperKind::Locking)) work.locked = false;

    std::map<std::string, Value> outputs;
    for (const auto& v : t.output) outputs[v.name] = locals.at(v.name);
    return outputs;
}

inline std::pair<InstanceState, Outcome> invoke_at_depth(const AugmentedContract& aug,
                                                         const InstanceState& snapshot,
                                                         const Invocation& call, Trace* trace,
                                                         int depth) {
    const Transition* t = aug.find_any_transition(call.transition);
    if (!t)
        throw ToolError(error("E_UNKNOWN_TRANSITION", "transitions/" + call.transition,
                              "no such transition"));
    bool generated = aug.is_generated(call.transition);
    if (!generated && !transition_is_core(*t))
        throw ToolError(error("E_UNINTERPRETABLE", "transitions/" + t->name,
                              "transition has opaque guards or statements"));

    std::size_t traceIndex = trace ? trace->size() : 0;
    if (trace) trace->push_back(TraceEntry{call, Outcome{}, depth});

    InstanceState work = snapshot;
    Outcome outcome;
    try {
        std::map<std::string, Value> outputs = run_frame(aug, work, call, *t, generated, trace,
                                                         depth);
        canonicalize_store(work);
        outcome.accepted = true;
        outcome.newState = work.currentState;
        outcome.outputs = std::move(outputs);
        if (trace) (*trace)[traceIndex].outcome = outcome;
        return {std::move(work), std::move(outcome)};
    } catch (const RejectSignal& r) {
        // Nested attempts stay in the trace even when the rejection rolls
        // their effects back; the returned state carries the rollback.
        outcome.accepted = false;
        outcome.rejectCode = r.code;
        if (trace) (*trace)[traceIndex].outcome = outcome;
        return {snapshot, std::move(outcome)};
    }
}

}  // namespace detail

inline std::pair<InstanceState, Outcome> invoke(const AugmentedContract& aug,
                                                const InstanceState& state,
                                                const Invocation& call,
                                                Trace* trace = nullptr, int depth = 0) {
    return detail::invoke_at_depth(aug, state, call, trace, depth);
}

struct ScheduleResult {
    InstanceState finalState;
    Trace trace;

    bool all_accepted() const {
        for (const auto& e : trace)
            if (!e.outcome.accepted) return false;
        return true;
    }
};

inline ScheduleResult run_schedule(const AugmentedContract& aug, uint64_t creationTime,
                                   const std::string& creator,
                                   const std::vector<Invocation>& calls) {
    ScheduleResult r;
    r.finalState = init_instance(aug, creationTime, creator);
    for (const auto& call : calls) {
        auto [next, outcome] = invoke(aug, r.finalState, call, &r.trace, 0);
        r.finalState = std::move(next);
    }
    return r;
}

}  // namespace fsmsolc
