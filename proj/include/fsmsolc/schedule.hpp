#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fsmsolc/diagnostics.hpp"
#include "fsmsolc/interpreter.hpp"
#include "fsmsolc/weaver.hpp"

// Schedule files and trace reports. A schedule is a JSON array of invocation
// records {transition, now, sender, value?, args?, counterArg?, reentry?,
// reentrySite?}; argument values are parsed against the transition's declared
// input types. All JSON reports carry schemaVersion 1.

namespace fsmsolc {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline u256 json_to_u256(const nlohmann::json& j, const std::string& what) {
    try {
        if (j.is_number_unsigned()) return u256(j.get<uint64_t>());
        if (j.is_string()) return parse_u256(j.get<std::string>());
    } catch (const std::exception&) {
    }
    throw ToolError(error("E_BAD_ARGS", "contract",
                          what + " must be a non-negative integer or a numeric string"));
}

inline Value json_to_value(const nlohmann::json& j, const TypeRef& type,
                           const std::string& what) {
    if (const auto* e = std::get_if<TypeRef::Elementary>(&type.node)) {
        switch (e->type) {
            case ElemType::Uint:
            case ElemType::Int: return Value::uint(json_to_u256(j, what));
            case ElemType::Bool:
                if (j.is_boolean()) return Value::boolean(j.get<bool>());
                break;
            case ElemType::Address:
                if (j.is_string()) return Value::address(j.get<std::string>());
                break;
            case ElemType::Bytes32:
            case ElemType::String:
                if (j.is_string()) return Value::bytes(j.get<std::string>());
                break;
        }
        throw ToolError(error("E_BAD_ARGS", "contract",
                              what + " does not match its declared type"));
    }
    throw ToolError(error("E_BAD_ARGS", "contract",
                          what + " has a container type and cannot be passed as an argument"));
}

inline Invocation json_to_invocation(const nlohmann::json& j, const AugmentedContract& aug) {
    if (!j.is_object())
        throw ToolError(error("E_BAD_ARGS", "contract", "invocation record must be an object"));
    if (!j.contains("transition") || !j.at("transition").is_string())
        throw ToolError(error("E_BAD_ARGS", "contract",
                              "invocation record needs a transition name"));
    Invocation call;
    call.transition = j.at("transition").get<std::string>();
    const Transition* t = aug.find_any_transition(call.transition);
    if (!t)
        throw ToolError(error("E_UNKNOWN_TRANSITION", "transitions/" + call.transition,
                              "no such transition"));

    if (!j.contains("now"))
        throw ToolError(error("E_BAD_ARGS", "contract", "invocation record needs now"));
    u256 now = json_to_u256(j.at("now"), "now");
    if (now > u256(UINT64_MAX))
        throw ToolError(error("E_BAD_ARGS", "contract", "now is out of range"));
    call.env.now = now.convert_to<uint64_t>();

    if (!j.contains("sender") || !j.at("sender").is_string())
        throw ToolError(error("E_BAD_ARGS", "contract", "invocation record needs sender"));
    call.env.sender = j.at("sender").get<std::string>();
    call.env.value = j.contains("value") ? json_to_u256(j.at("value"), "value") : u256(0);

    if (j.contains("args")) {
        const auto& args = j.at("args");
        if (!args.is_object())
            throw ToolError(error("E_BAD_ARGS", "contract", "args must be an object"));
        for (const auto& [name, raw] : args.items()) {
            if (name == "nextTransitionNumber")
                throw ToolError(error("E_BAD_ARGS", "transitions/" + call.transition,
                                      "nextTransitionNumber is reserved; use counterArg"));
            const Variable* input = nullptr;
            for (const auto& v : t->input)
                if (v.name == name) input = &v;
            if (!input)
                throw ToolError(error("E_BAD_ARGS", "transitions/" + call.transition,
                                      "unexpected argument '" + name + "'"));
            call.args[name] = json_to_value(raw, input->type, "argument '" + name + "'");
        }
    }

    if (j.contains("counterArg")) call.counterArg = json_to_u256(j.at("counterArg"), "counterArg");
    if (j.contains("reentrySite")) {
        if (!j.at("reentrySite").is_number_unsigned())
            throw ToolError(error("E_BAD_ARGS", "contract",
                                  "reentrySite must be a non-negative integer"));
        call.reentrySite = j.at("reentrySite").get<std::size_t>();
    }
    if (j.contains("reentry") && !j.at("reentry").is_null())
        call.reentry =
            std::make_shared<const Invocation>(json_to_invocation(j.at("reentry"), aug));
    return call;
}

}  // namespace detail

inline std::vector<Invocation> parse_schedule(const nlohmann::json& j,
                                              const AugmentedContract& aug) {
    if (!j.is_array())
        throw ToolError(error("E_BAD_ARGS", "contract", "schedule must be a JSON array"));
    std::vector<Invocation> calls;
    for (const auto& rec : j) calls.push_back(detail::json_to_invocation(rec, aug));
    return calls;
}

inline std::vector<Invocation> load_schedule(const std::string& path,
                                             const AugmentedContract& aug) {
    std::ifstream in(path);
    if (!in) throw ToolError(error("E_IO", "contract", "cannot open schedule file: " + path));
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ToolError(error("E_PARSE", "contract",
                              "schedule file is not valid JSON: " + std::string(e.what())));
    }
    return parse_schedule(j, aug);
}

inline nlohmann::json value_to_json(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Uint: return u256_str(v.uintVal);
        case Value::Kind::Bool: return v.boolVal;
        case Value::Kind::Address: return v.strVal.empty() ? "0x0" : v.strVal;
        case Value::Kind::Bytes: return v.strVal;
        case Value::Kind::Struct: {
            nlohmann::json o = nlohmann::json::object();
            for (const auto& [name, field] : v.fields) o[name] = value_to_json(field);
            return o;
        }
        case Value::Kind::Array: {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& e : v.elems) a.push_back(value_to_json(e));
            return a;
        }
        case Value::Kind::Mapping: {
            nlohmann::json o = nlohmann::json::object();
            for (const auto& [key, entry] : v.fields) o[key] = value_to_json(entry);
            return o;
        }
    }
    return nullptr;
}

inline nlohmann::json state_to_json(const InstanceState& st) {
    nlohmann::json j;
    j["currentState"] = st.currentState;
    j["balance"] = u256_str(st.balance);
    j["locked"] = st.locked;
    j["counter"] = u256_str(st.counter);
    j["creationTime"] = st.creationTime;
    nlohmann::json store = nlohmann::json::object();
    for (const auto& [name, v] : st.store) store[name] = value_to_json(v);
    j["store"] = store;
    j["admins"] = st.adminSet;
    return j;
}

inline nlohmann::json invocation_to_json(const Invocation& call) {
    nlohmann::json j;
    j["transition"] = call.transition;
    j["now"] = call.env.now;
    j["sender"] = call.env.sender;
    j["value"] = u256_str(call.env.value);
    if (!call.args.empty()) {
        nlohmann::json args = nlohmann::json::object();
        for (const auto& [name, v] : call.args) args[name] = value_to_json(v);
        j["args"] = args;
    }
    if (call.counterArg) j["counterArg"] = u256_str(*call.counterArg);
    if (call.reentry) {
        j["reentry"] = invocation_to_json(*call.reentry);
        j["reentrySite"] = call.reentrySite;
    }
    return j;
}

inline nlohmann::json trace_to_json(const Trace& trace) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : trace) {
        nlohmann::json j;
        j["depth"] = e.depth;
        j["invocation"] = invocation_to_json(e.invocation);
        j["accepted"] = e.outcome.accepted;
        if (e.outcome.accepted) {
            j["newState"] = e.outcome.newState;
            if (!e.outcome.outputs.empty()) {
                nlohmann::json outs = nlohmann::json::object();
                for (const auto& [name, v] : e.outcome.outputs) outs[name] = value_to_json(v);
                j["outputs"] = outs;
            }
        } else {
            j["rejectCode"] = e.outcome.rejectCode;
        }
        a.push_back(std::move(j));
    }
    return a;
}

inline std::string format_invocation(const Invocation& call) {
    std::string s = call.transition + "(";
    bool first = true;
    for (const auto& [name, v] : call.args) {
        if (!first) s += ", ";
        first = false;
        s += name + "=" + v.display();
    }
    s += ")";
    if (call.counterArg) s += "#" + u256_str(*call.counterArg);
    s += " now=" + std::to_string(call.env.now) + " sender=" + call.env.sender;
    if (call.env.value > 0) s += " value=" + u256_str(call.env.value);
    return s;
}

inline std::string format_trace(const Trace& trace) {
    std::ostringstream out;
    for (const auto& e : trace) {
        for (int i = 0; i < e.depth; ++i) out << "  ";
        out << format_invocation(e.invocation) << " -> ";
        if (e.outcome.accepted) {
            out << "Accepted";
            if (!e.outcome.newState.empty()) out << " [" << e.outcome.newState << "]";
            for (const auto& [name, v] : e.outcome.outputs)
                out << " " << name << "=" << v.display();
        } else {
            out << "Rejected " << e.outcome.rejectCode;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace fsmsolc
