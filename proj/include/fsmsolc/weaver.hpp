#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fsmsolc/ast.hpp"
#include "fsmsolc/diagnostics.hpp"
#include "fsmsolc/validate.hpp"

// Plugin weaving: turns a validated Contract plus a PluginSet into an
// AugmentedContract carrying plugin variables, per-transition wrapper lists,
// extra inputs, and generated admin-management transitions. The base contract
// is copied, never modified, and an AugmentedContract cannot be woven again.

namespace fsmsolc {

struct PluginSet {
    bool locking = false;
    bool transitionCounter = false;
    bool timedTransitions = false;
    bool accessControl = false;

    bool operator==(const PluginSet&) const = default;

    bool any() const { return locking || transitionCounter || timedTransitions || accessControl; }
};

enum class WrapperKind { Locking, TransitionCounting, TimedTransitions, AccessGuard };

inline const char* wrapper_kind_name(WrapperKind k) {
    switch (k) {
        case WrapperKind::Locking: return "locking";
        case WrapperKind::TransitionCounting: return "transitionCounting";
        case WrapperKind::TimedTransitions: return "timedTransitions";
        case WrapperKind::AccessGuard: return "onlyAdmin";
    }
    return "?";
}

struct TransitionAugmentation {
    std::string transition;
    std::vector<WrapperKind> wrappers;
    std::vector<Variable> extraInputs;  // appended after declared inputs
};

struct AugmentedContract {
    Contract base;
    PluginSet plugins;
    std::vector<Variable> extraVariables;
    std::vector<TransitionAugmentation> augmentations;  // base transitions, then generated
    std::vector<Transition> generatedTransitions;       // addAdmin, removeAdmin
    std::vector<Diagnostic> notes;                      // warnings attached during weaving

    const TransitionAugmentation* find_augmentation(const std::string& name) const {
        for (const auto& a : augmentations)
            if (a.transition == name) return &a;
        return nullptr;
    }

    const Transition* find_any_transition(const std::string& name) const {
        if (const auto* t = base.find_transition(name)) return t;
        for (const auto& t : generatedTransitions)
            if (t.name == name) return &t;
        return nullptr;
    }

    bool is_generated(const std::string& name) const {
        for (const auto& t : generatedTransitions)
            if (t.name == name) return true;
        return false;
    }

    // Timed transitions sorted ascending by time, declaration order breaking
    // ties; the firing order used by the TimedTransitions wrapper.
    std::vector<const TimedTransition*> timed_firing_order() const {
        std::vector<const TimedTransition*> order;
        for (const auto& t : base.timedTransitions) order.push_back(&t);
        std::stable_sort(order.begin(), order.end(),
                         [](const TimedTransition* a, const TimedTransition* b) {
                             return a->timeSeconds < b->timeSeconds;
                         });
        return order;
    }
};

namespace detail {

inline void reject_name_conflict(const Contract& c, const PluginSet& p) {
    auto conflict = [](const std::string& what) {
        throw ToolError(error("E_PLUGIN_CONFLICT", "contract",
                              "declared name '" + what + "' collides with a plugin name"));
    };
    auto has_var = [&](const char* n) { return c.find_variable(n) != nullptr; };
    if (p.locking && has_var("locked")) conflict("locked");
    if (p.transitionCounter) {
        if (has_var("transitionCounter")) conflict("transitionCounter");
        for (const auto& t : c.transitions) {
            for (const auto& v : t.input)
                if (v.name == "nextTransitionNumber") conflict("nextTransitionNumber");
            for (const auto& v : t.output)
                if (v.name == "nextTransitionNumber") conflict("nextTransitionNumber");
        }
    }
    if (p.accessControl) {
        if (has_var("admins")) conflict("admins");
        if (has_var("adminCount")) conflict("adminCount");
        if (c.find_transition("addAdmin") || c.find_timed("addAdmin")) conflict("addAdmin");
        if (c.find_transition("removeAdmin") || c.find_timed("removeAdmin"))
            conflict("removeAdmin");
    }
}

}  // namespace detail

inline AugmentedContract apply_plugins(const Contract& contract, const PluginSet& plugins) {
    {
        std::vector<Diagnostic> diags = validate(contract);
        if (has_errors(diags))
            throw ToolError(error("E_INVALID", "contract",
                                  "refusing to weave a contract with validation errors: " +
                                      diags.front().code));
    }
    if (!contract.timedTransitions.empty() && !plugins.timedTransitions)
        throw ToolError(error("E_PLUGIN_REQUIRED", "timedTransitions",
                              "contract declares timed transitions; enable the timed plugin"));
    detail::reject_name_conflict(contract, plugins);

    AugmentedContract aug;
    aug.base = contract;
    aug.plugins = plugins;

    bool timedActive = plugins.timedTransitions && !contract.timedTransitions.empty();

    if (!plugins.accessControl) {
        for (const auto& t : contract.transitions)
            if (t.tags.admin)
                aug.notes.push_back(warning(
                    "W_ADMIN_TAG_IGNORED", "transitions/" + t.name,
                    "admin tag has no effect without the access control plugin"));
    }

    if (plugins.locking)
        aug.extraVariables.push_back(
            Variable{"locked", VarKind::ContractData, TypeRef::elementary(ElemType::Bool),
                     Visibility::Private,
                     Expression::core_expr(make_core<CoreExpr::BoolLit>(false))});
    if (plugins.transitionCounter)
        aug.extraVariables.push_back(
            Variable{"transitionCounter", VarKind::ContractData,
                     TypeRef::elementary(ElemType::Uint), Visibility::Private,
                     Expression::core_expr(make_core<CoreExpr::IntLit>(u256(0)))});
    if (plugins.timedTransitions && !contract.declares_creation_time())
        aug.extraVariables.push_back(Variable{"creationTime", VarKind::ContractData,
                                              TypeRef::elementary(ElemType::Uint),
                                              Visibility::Private, {}});
    if (plugins.accessControl) {
        aug.extraVariables.push_back(Variable{
            "admins", VarKind::ContractData,
            TypeRef::mapping(ElemType::Address, TypeRef::elementary(ElemType::Bool)),
            Visibility::Private, {}});
        aug.extraVariables.push_back(Variable{"adminCount", VarKind::ContractData,
                                              TypeRef::elementary(ElemType::Uint),
                                              Visibility::Private, {}});
        Transition add;
        add.name = "addAdmin";
        add.tags.admin = true;
        add.input.push_back(Variable{"account", VarKind::InputData,
                                     TypeRef::elementary(ElemType::Address), Visibility::Private,
                                     {}});
        Transition remove = add;
        remove.name = "removeAdmin";
        aug.generatedTransitions.push_back(std::move(add));
        aug.generatedTransitions.push_back(std::move(remove));
    }

    auto augment = [&](const Transition& t) {
        TransitionAugmentation a;
        a.transition = t.name;
        if (plugins.locking) a.wrappers.push_back(WrapperKind::Locking);
        if (plugins.transitionCounter) {
            a.wrappers.push_back(WrapperKind::TransitionCounting);
            a.extraInputs.push_back(Variable{"nextTransitionNumber", VarKind::InputData,
                                             TypeRef::elementary(ElemType::Uint),
                                             Visibility::Private, {}});
        }
        if (timedActive) a.wrappers.push_back(WrapperKind::TimedTransitions);
        if (plugins.accessControl && t.tags.admin) a.wrappers.push_back(WrapperKind::AccessGuard);
        return a;
    };
    for (const auto& t : contract.transitions) aug.augmentations.push_back(augment(t));
    for (const auto& t : aug.generatedTransitions) aug.augmentations.push_back(augment(t));

    return aug;
}

}  // namespace fsmsolc
