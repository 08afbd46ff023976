#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsmsolc/fsmsolc.hpp"

// Shared between the unit suite and the acceptance runner; no test-framework
// dependencies, failures throw.

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(FSMSOLC_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
    return std::string(FSMSOLC_GOLDEN_DIR) + "/" + name;
}

inline fsmsolc::Contract parse_ok(const std::string& text) {
    auto r = fsmsolc::parse_contract(text);
    if (!r.ok()) {
        std::string msg = "parse failed:";
        for (const auto& d : r.diagnostics) msg += "\n  " + fsmsolc::format_diagnostic(d);
        throw std::runtime_error(msg);
    }
    return *r.contract;
}

inline fsmsolc::Contract load_fixture(const std::string& name) {
    return parse_ok(read_file(fixture_path(name)));
}

inline fsmsolc::Invocation call(std::string transition, uint64_t now, std::string sender,
                                fsmsolc::u256 value = 0) {
    fsmsolc::Invocation i;
    i.transition = std::move(transition);
    i.env = fsmsolc::Env{now, std::move(sender), std::move(value)};
    return i;
}

// Short name for the enabled plugins, used to key golden files.
inline std::string combo_name(const fsmsolc::PluginSet& p) {
    std::string n;
    auto add = [&](bool on, const char* s) {
        if (!on) return;
        if (!n.empty()) n += "_";
        n += s;
    };
    add(p.locking, "locking");
    add(p.transitionCounter, "counter");
    add(p.timedTransitions, "timed");
    add(p.accessControl, "access");
    return n.empty() ? "none" : n;
}

inline std::vector<fsmsolc::PluginSet> all_combos() {
    std::vector<fsmsolc::PluginSet> out;
    for (int bits = 0; bits < 16; ++bits) {
        fsmsolc::PluginSet p;
        p.locking = bits & 1;
        p.transitionCounter = bits & 2;
        p.timedTransitions = bits & 4;
        p.accessControl = bits & 8;
        out.push_back(p);
    }
    return out;
}

}  // namespace testutil
