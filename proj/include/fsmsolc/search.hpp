#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fsmsolc/interpreter.hpp"
#include "fsmsolc/weaver.hpp"

// Bounded adversarial searches over the interpreter: reentrancy witnesses
// (a nested call accepted mid-Send whose presence changes the outcome) and
// transaction-ordering dependence (permutations of a call list that disagree).

namespace fsmsolc {

struct SearchBounds {
    int setupDepth = 4;            // accepted calls explored before the attack
    std::size_t maxStates = 5000;  // distinct states kept during setup
    uint64_t creationTime = 1000;
    std::string creator = "0xa11ce";
    std::vector<std::string> senders = {"0xa11ce", "0xb0b"};
    std::vector<u256> payableValues = {u256(0), u256(1)};
};

struct ReentrancyWitness {
    std::vector<Invocation> setup;  // accepted prefix reaching the attack state
    Invocation attacked;            // outer call carrying the reentry chain
    Trace trace;                    // setup plus attack, nested frames at depth >= 1
    InstanceState withReentry;
    InstanceState withoutReentry;
};

namespace detail {

// Counter and lock are plugin bookkeeping, not contract outcome; witnesses
// compare everything else.
inline InstanceState strip_bookkeeping(InstanceState st) {
    st.counter = 0;
    st.locked = false;
    return st;
}

inline std::string state_key(const InstanceState& st) {
    std::string k = st.currentState;
    k += st.locked ? "|L" : "|-";
    k += "|" + u256_str(st.counter) + "|" + u256_str(st.balance) + "|A:";
    for (const auto& a : st.adminSet) k += a + ",";
    for (const auto& [name, v] : st.store) k += "|" + name + "=" + v.display();
    return k;
}

inline std::size_t send_count(const Transition& t) {
    std::size_t n = 0;
    for (const auto& s : t.statements)
        if (s.is_send()) ++n;
    return n;
}

inline void collect_literals(const CoreExprPtr& e, std::set<uint64_t>& out) {
    using E = CoreExpr;
    if (!e) return;
    if (const auto* n = std::get_if<E::IntLit>(&e->node)) {
        if (n->value <= u256(UINT64_MAX)) out.insert(n->value.convert_to<uint64_t>());
    } else if (const auto* n = std::get_if<E::DurationLit>(&e->node)) {
        if (n->value <= u256(UINT64_MAX)) out.insert(n->value.convert_to<uint64_t>());
    } else if (const auto* n = std::get_if<E::Unary>(&e->node)) {
        collect_literals(n->operand, out);
    } else if (const auto* n = std::get_if<E::Binary>(&e->node)) {
        collect_literals(n->lhs, out);
        collect_literals(n->rhs, out);
    } else if (const auto* n = std::get_if<E::Index>(&e->node)) {
        collect_literals(n->base, out);
        collect_literals(n->index, out);
    } else if (const auto* n = std::get_if<E::Member>(&e->node)) {
        collect_literals(n->base, out);
    } else if (const auto* n = std::get_if<E::StructLit>(&e->node)) {
        for (const auto& [name, field] : n->fields) collect_literals(field, out);
    }
}

// Interesting clock values: just after creation plus, for every literal K in
// a guard and every timed offset, the instants at and just past ct + K.
inline std::vector<uint64_t> time_candidates(const AugmentedContract& aug, uint64_t ct) {
    std::set<uint64_t> offsets;
    for (const auto& t : aug.base.transitions)
        for (const auto& g : t.guards)
            if (g.is_core()) collect_literals(g.core, offsets);
    for (const auto& t : aug.base.timedTransitions) {
        offsets.insert(t.timeSeconds);
        for (const auto& g : t.guards)
            if (g.is_core()) collect_literals(g.core, offsets);
    }
    std::set<uint64_t> times{ct + 1};
    for (uint64_t k : offsets) {
        if (k > UINT64_MAX - ct - 1) continue;
        times.insert(ct + k);
        times.insert(ct + k + 1);
    }
    return {times.begin(), times.end()};
}

// Candidate argument values per input type; empty means the type cannot be
// enumerated and the transition is skipped.
inline std::vector<Value> arg_candidates(const TypeRef& t, const SearchBounds& b) {
    if (const auto* e = std::get_if<TypeRef::Elementary>(&t.node)) {
        switch (e->type) {
            case ElemType::Uint:
            case ElemType::Int: return {Value::uint(u256(0)), Value::uint(u256(1))};
            case ElemType::Bool: return {Value::boolean(false), Value::boolean(true)};
            case ElemType::Address: {
                std::vector<Value> out;
                for (const auto& s : b.senders) out.push_back(Value::address(s));
                return out;
            }
            case ElemType::Bytes32:
            case ElemType::String: return {Value::bytes("x")};
        }
    }
    return {};
}

inline std::vector<std::map<std::string, Value>> args_product(const Transition& t,
                                                              const SearchBounds& b) {
    std::vector<std::map<std::string, Value>> out{{}};
    for (const auto& in : t.input) {
        std::vector<Value> cands = arg_candidates(in.type, b);
        if (cands.empty()) return {};
        std::vector<std::map<std::string, Value>> next;
        for (const auto& partial : out)
            for (const auto& v : cands) {
                auto extended = partial;
                extended[in.name] = v;
                next.push_back(std::move(extended));
            }
        out = std::move(next);
    }
    return out;
}

struct SetupNode {
    InstanceState st;
    uint64_t lastNow;
    std::vector<Invocation> path;
};

// Breadth-first exploration of accepted schedules within the bounds. Clock
// values never decrease along a path.
inline std::vector<SetupNode> explore_states(const AugmentedContract& aug,
                                             const SearchBounds& bounds) {
    std::vector<uint64_t> times = time_candidates(aug, bounds.creationTime);
    std::vector<const Transition*> targets;
    for (const auto& t : aug.base.transitions) targets.push_back(&t);
    for (const auto& t : aug.generatedTransitions) targets.push_back(&t);

    std::vector<SetupNode> all;
    std::set<std::string> seen;
    SetupNode root{init_instance(aug, bounds.creationTime, bounds.creator),
                   bounds.creationTime, {}};
    seen.insert(state_key(root.st) + "#" + std::to_string(root.lastNow));
    all.push_back(root);

    std::size_t frontierBegin = 0;
    for (int depth = 0; depth < bounds.setupDepth && all.size() < bounds.maxStates; ++depth) {
        std::size_t frontierEnd = all.size();
        for (std::size_t i = frontierBegin; i < frontierEnd; ++i) {
            for (const Transition* t : targets) {
                auto argSets = args_product(*t, bounds);
                if (argSets.empty() && !t->input.empty()) continue;
                std::vector<u256> values =
                    t->tags.payable ? bounds.payableValues : std::vector<u256>{u256(0)};
                for (uint64_t now : times) {
                    if (now < all[i].lastNow) continue;
                    for (const auto& sender : bounds.senders) {
                        for (const u256& value : values) {
                            for (const auto& args : argSets) {
                                Invocation call;
                                call.transition = t->name;
                                call.env = Env{now, sender, value};
                                call.args = args;
                                if (aug.plugins.transitionCounter)
                                    call.counterArg = all[i].st.counter;
                                auto [next, outcome] = invoke(aug, all[i].st, call);
                                if (!outcome.accepted) continue;
                                std::string key =
                                    state_key(next) + "#" + std::to_string(now);
                                if (!seen.insert(key).second) continue;
                                if (all.size() >= bounds.maxStates) return all;
                                SetupNode node{std::move(next), now, all[i].path};
                                node.path.push_back(std::move(call));
                                all.push_back(std::move(node));
                            }
                        }
                    }
                }
            }
        }
        frontierBegin = frontierEnd;
    }
    return all;
}

// Reentry chains: every way to nest up to `levels` further calls, each level
// choosing a transition, sender, arguments, and (when it will itself carry a
// deeper reentry) a Send site. Values stay 0: the attacker adds no funds.
inline void build_chains(const AugmentedContract& aug, const SearchBounds& bounds,
                         uint64_t now, const u256& baseCounter, int levels, int levelIndex,
                         std::vector<std::shared_ptr<const Invocation>>& out) {
    if (levels == 0) return;
    std::vector<const Transition*> targets;
    for (const auto& t : aug.base.transitions) targets.push_back(&t);
    for (const auto& t : aug.generatedTransitions) targets.push_back(&t);

    for (const Transition* t : targets) {
        auto argSets = args_product(*t, bounds);
        if (argSets.empty() && !t->input.empty()) continue;
        for (const auto& sender : bounds.senders) {
            for (const auto& args : argSets) {
                Invocation call;
                call.transition = t->name;
                call.env = Env{now, sender, u256(0)};
                call.args = args;
                if (aug.plugins.transitionCounter)
                    call.counterArg = baseCounter + u256(static_cast<unsigned>(levelIndex));
                out.push_back(std::make_shared<const Invocation>(call));
                if (levels > 1 && send_count(*t) > 0) {
                    std::vector<std::shared_ptr<const Invocation>> deeper;
                    build_chains(aug, bounds, now, baseCounter, levels - 1, levelIndex + 1,
                                 deeper);
                    for (std::size_t site = 0; site < send_count(*t); ++site) {
                        for (const auto& nested : deeper) {
                            Invocation withNested = call;
                            withNested.reentry = nested;
                            withNested.reentrySite = site;
                            out.push_back(
                                std::make_shared<const Invocation>(std::move(withNested)));
                        }
                    }
                }
            }
        }
    }
}

}  // namespace detail

// Exhaustive within bounds: explores accepted setup schedules, then tries
// every Send-bearing call with every reentry chain up to depthLimit frames.
// A witness is a nested frame accepted mid-Send where the run's final state
// differs from the same outer call without the reentry.
inline std::optional<ReentrancyWitness> search_reentrancy(const AugmentedContract& aug,
                                                          int depthLimit,
                                                          const SearchBounds& bounds = {}) {
    if (depthLimit < 2) return std::nullopt;  // a chain needs an outer and a nested frame

    std::vector<detail::SetupNode> nodes = detail::explore_states(aug, bounds);
    std::vector<uint64_t> times = detail::time_candidates(aug, bounds.creationTime);

    for (const auto& node : nodes) {
        for (const auto& t : aug.base.transitions) {
            std::size_t sites = detail::send_count(t);
            if (sites == 0) continue;
            auto argSets = detail::args_product(t, bounds);
            if (argSets.empty() && !t.input.empty()) continue;
            std::vector<u256> values =
                t.tags.payable ? bounds.payableValues : std::vector<u256>{u256(0)};
            for (uint64_t now : times) {
                if (now < node.lastNow) continue;
                std::vector<std::shared_ptr<const Invocation>> chains;
                detail::build_chains(aug, bounds, now, node.st.counter + 1, depthLimit - 1, 0,
                                     chains);
                for (const auto& sender : bounds.senders) {
                    for (const u256& value : values) {
                        for (const auto& args : argSets) {
                            Invocation outer;
                            outer.transition = t.name;
                            outer.env = Env{now, sender, value};
                            outer.args = args;
                            if (aug.plugins.transitionCounter)
                                outer.counterArg = node.st.counter;

                            Invocation plain = outer;
                            auto [plainState, plainOutcome] = invoke(aug, node.st, plain);

                            for (std::size_t site = 0; site < sites; ++site) {
                                for (const auto& chain : chains) {
                                    Invocation attacked = outer;
                                    attacked.reentry = chain;
                                    attacked.reentrySite = site;
                                    Trace trace;
                                    auto [st, outcome] =
                                        invoke(aug, node.st, attacked, &trace, 0);
                                    bool nestedAccepted = false;
                                    for (const auto& e : trace)
                                        if (e.depth >= 1 && e.outcome.accepted)
                                            nestedAccepted = true;
                                    if (!nestedAccepted) continue;
                                    if (detail::strip_bookkeeping(st) ==
                                        detail::strip_bookkeeping(plainState))
                                        continue;

                                    ReentrancyWitness w;
                                    w.setup = node.path;
                                    w.attacked = attacked;
                                    w.withReentry = st;
                                    w.withoutReentry = plainState;
                                    InstanceState replay =
                                        init_instance(aug, bounds.creationTime, bounds.creator);
                                    for (const auto& c : node.path) {
                                        auto [s, o] = invoke(aug, replay, c, &w.trace, 0);
                                        replay = std::move(s);
                                        (void)o;
                                    }
                                    invoke(aug, replay, attacked, &w.trace, 0);
                                    return w;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

struct OrderRun {
    std::vector<std::size_t> order;  // permutation, as indices into `calls`
    std::vector<bool> accepted;      // aligned with `order`
    InstanceState finalState;

    std::set<std::size_t> accepted_set() const {
        std::set<std::size_t> s;
        for (std::size_t i = 0; i < order.size(); ++i)
            if (accepted[i]) s.insert(order[i]);
        return s;
    }
};

struct OrderWitness {
    OrderRun a;
    OrderRun b;
};

struct OrderSearchResult {
    std::vector<OrderRun> runs;  // one per permutation, lexicographic order
    std::optional<OrderWitness> witness;
    std::vector<std::vector<std::size_t>> fullyAccepted;  // permutations accepting every call
    bool counterVerified = false;  // counter mode: unique full acceptance in declared order
};

inline std::vector<OrderRun> enumerate_orders(const AugmentedContract& aug, uint64_t creationTime,
                                              const std::string& creator,
                                              const std::vector<Invocation>& calls) {
    std::vector<std::size_t> perm(calls.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<OrderRun> runs;
    do {
        OrderRun run;
        run.order = perm;
        InstanceState st = init_instance(aug, creationTime, creator);
        for (std::size_t idx : perm) {
            auto [next, outcome] = invoke(aug, st, calls[idx]);
            st = std::move(next);
            run.accepted.push_back(outcome.accepted);
        }
        run.finalState = std::move(st);
        runs.push_back(std::move(run));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return runs;
}

// Without the counter plugin: the witness is the first permutation pair that
// disagrees on accepted-set or final state. With it: the rejection pattern is
// the plugin working, so instead the fully-accepted permutations are checked
// for uniqueness against the declared numbering (ascending counterArg); a
// witness appears only when several permutations accept everything.
inline OrderSearchResult search_order_dependence(const AugmentedContract& aug,
                                                 uint64_t creationTime,
                                                 const std::string& creator,
                                                 const std::vector<Invocation>& calls) {
    if (calls.size() > 4)
        throw ToolError(error("E_BAD_ARGS", "contract",
                              "order-dependence search is limited to 4 calls"));
    OrderSearchResult result;
    result.runs = enumerate_orders(aug, creationTime, creator, calls);

    for (const auto& run : result.runs) {
        if (std::all_of(run.accepted.begin(), run.accepted.end(), [](bool b) { return b; }))
            result.fullyAccepted.push_back(run.order);
    }

    if (aug.plugins.transitionCounter) {
        std::vector<std::size_t> declared(calls.size());
        std::iota(declared.begin(), declared.end(), 0);
        std::stable_sort(declared.begin(), declared.end(), [&](std::size_t a, std::size_t b) {
            u256 ca = calls[a].counterArg.value_or(u256(0));
            u256 cb = calls[b].counterArg.value_or(u256(0));
            return ca < cb;
        });
        result.counterVerified =
            result.fullyAccepted.size() == 1 && result.fullyAccepted[0] == declared;
        if (result.fullyAccepted.size() >= 2) {
            for (const auto& run : result.runs) {
                if (run.order == result.fullyAccepted[0]) result.witness.emplace().a = run;
                if (run.order == result.fullyAccepted[1]) {
                    if (result.witness) result.witness->b = run;
                }
            }
        }
        return result;
    }

    for (std::size_t i = 0; i < result.runs.size() && !result.witness; ++i) {
        for (std::size_t j = i + 1; j < result.runs.size(); ++j) {
            const OrderRun& a = result.runs[i];
            const OrderRun& b = result.runs[j];
            if (a.accepted_set() != b.accepted_set() ||
                !(detail::strip_bookkeeping(a.finalState) ==
                  detail::strip_bookkeeping(b.finalState))) {
                result.witness = OrderWitness{a, b};
                break;
            }
        }
    }
    return result;
}

}  // namespace fsmsolc
