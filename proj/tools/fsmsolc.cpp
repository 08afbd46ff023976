#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsmsolc/fsmsolc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;    // I/O, parse, or validation errors
constexpr int kExitFinding = 2;  // modeled rejection or counterexample
constexpr int kExitUsage = 64;

struct Options {
    std::string command;
    std::string inputPath;
    std::string outputPath;
    std::string pluginList;
    std::string format = "text";
    std::string schedulePath;
    int depth = 2;
    uint64_t creationTime = 1000;
    std::string creator = "0xa11ce";
};

fsmsolc::PluginSet parse_plugins(const std::string& list) {
    fsmsolc::PluginSet p;
    if (list.empty()) return p;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name == "locking")
            p.locking = true;
        else if (name == "counter")
            p.transitionCounter = true;
        else if (name == "timed")
            p.timedTransitions = true;
        else if (name == "access")
            p.accessControl = true;
        else
            throw CLI::ValidationError("--plugins",
                                       "unknown plugin '" + name +
                                           "' (expected locking, counter, timed, access)");
    }
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw fsmsolc::ToolError(
            fsmsolc::error("E_IO", "contract", "cannot open input file: " + path));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.outputPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.outputPath);
    if (!out)
        throw fsmsolc::ToolError(
            fsmsolc::error("E_IO", "contract", "cannot write output file: " + opt.outputPath));
    out << text;
}

void print_diagnostics(const std::vector<fsmsolc::Diagnostic>& diags) {
    for (const auto& d : diags) std::cerr << fsmsolc::format_diagnostic(d) << "\n";
}

fsmsolc::Contract parse_and_validate(const Options& opt) {
    auto parsed = fsmsolc::parse_contract(read_file(opt.inputPath));
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics);
        throw fsmsolc::ToolError(
            fsmsolc::error("E_PARSE", "contract", "input does not parse"));
    }
    auto diags = fsmsolc::validate(*parsed.contract);
    print_diagnostics(diags);
    if (fsmsolc::has_errors(diags))
        throw fsmsolc::ToolError(
            fsmsolc::error("E_INVALID", "contract", "input does not validate"));
    return *parsed.contract;
}

fsmsolc::AugmentedContract weave(const fsmsolc::Contract& c, const fsmsolc::PluginSet& plugins) {
    auto aug = fsmsolc::apply_plugins(c, plugins);
    print_diagnostics(aug.notes);
    return aug;
}

int cmd_validate(const Options& opt) {
    auto parsed = fsmsolc::parse_contract(read_file(opt.inputPath));
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics);
        return kExitError;
    }
    auto diags = fsmsolc::validate(*parsed.contract);
    print_diagnostics(diags);
    return fsmsolc::has_errors(diags) ? kExitError : kExitOk;
}

int cmd_emit(const Options& opt) {
    auto contract = parse_and_validate(opt);
    auto aug = weave(contract, parse_plugins(opt.pluginList));
    write_output(opt, fsmsolc::emit_solidity(aug));
    return kExitOk;
}

int cmd_simulate(const Options& opt) {
    auto contract = parse_and_validate(opt);
    auto aug = weave(contract, parse_plugins(opt.pluginList));
    auto calls = fsmsolc::load_schedule(opt.schedulePath, aug);
    auto result = fsmsolc::run_schedule(aug, opt.creationTime, opt.creator, calls);
    if (opt.format == "json") {
        nlohmann::json j;
        j["schemaVersion"] = fsmsolc::kSchemaVersion;
        j["trace"] = fsmsolc::trace_to_json(result.trace);
        j["finalState"] = fsmsolc::state_to_json(result.finalState);
        j["allAccepted"] = result.all_accepted();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << fsmsolc::format_trace(result.trace);
        std::cout << "final state: " << result.finalState.currentState
                  << ", balance " << fsmsolc::u256_str(result.finalState.balance) << "\n";
    }
    return result.all_accepted() ? kExitOk : kExitFinding;
}

int cmd_search(const Options& opt) {
    auto contract = parse_and_validate(opt);
    auto aug = weave(contract, parse_plugins(opt.pluginList));
    fsmsolc::SearchBounds bounds;
    bounds.creationTime = opt.creationTime;
    bounds.creator = opt.creator;
    auto witness = fsmsolc::search_reentrancy(aug, opt.depth, bounds);
    if (opt.format == "json") {
        nlohmann::json j;
        j["schemaVersion"] = fsmsolc::kSchemaVersion;
        j["finding"] = witness.has_value();
        if (witness) {
            nlohmann::json setup = nlohmann::json::array();
            for (const auto& call : witness->setup)
                setup.push_back(fsmsolc::invocation_to_json(call));
            j["setup"] = setup;
            j["attacked"] = fsmsolc::invocation_to_json(witness->attacked);
            j["trace"] = fsmsolc::trace_to_json(witness->trace);
            j["finalStateWithReentry"] = fsmsolc::state_to_json(witness->withReentry);
            j["finalStateWithoutReentry"] = fsmsolc::state_to_json(witness->withoutReentry);
        }
        std::cout << j.dump(2) << "\n";
    } else if (witness) {
        std::cout << "reentrancy finding: nested " << witness->attacked.reentry->transition
                  << " accepted during " << witness->attacked.transition << "\n";
        std::cout << fsmsolc::format_trace(witness->trace);
        std::cout << "final balance with reentry: "
                  << fsmsolc::u256_str(witness->withReentry.balance) << "; without: "
                  << fsmsolc::u256_str(witness->withoutReentry.balance) << "\n";
    } else {
        std::cout << "no finding\n";
    }
    return witness ? kExitFinding : kExitOk;
}

int cmd_gas_report(const Options& opt) {
    auto contract = parse_and_validate(opt);
    auto plugins = parse_plugins(opt.pluginList);
    auto calib = fsmsolc::active_calibration();

    std::map<std::string, long long> baseline;
    for (const auto& t : contract.transitions) {
        auto it = calib.baseline.find(t.name);
        if (it != calib.baseline.end())
            baseline[t.name] = it->second;
        else
            std::cerr << "note: no calibration for transition " << t.name << "\n";
    }
    auto est = fsmsolc::estimate(baseline, plugins, calib);

    if (opt.format == "json") {
        nlohmann::json j;
        j["schemaVersion"] = fsmsolc::kSchemaVersion;
        j["perTransition"] = est.perTransition;
        j["overheadPercent"] = est.overheadPercent;
        j["deployment"] = est.deployment;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }

    std::size_t nameWidth = std::string("deployment").size();
    for (const auto& t : contract.transitions)
        if (est.perTransition.count(t.name)) nameWidth = std::max(nameWidth, t.name.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(nameWidth)) << "transition"
        << "  " << std::right << std::setw(9) << "baseline" << "  " << std::setw(9)
        << "estimated" << "  " << std::setw(9) << "overhead" << "\n";
    for (const auto& t : contract.transitions) {
        auto it = est.perTransition.find(t.name);
        if (it == est.perTransition.end()) continue;
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(1) << est.overheadPercent.at(t.name) << "%";
        out << std::left << std::setw(static_cast<int>(nameWidth)) << t.name << "  "
            << std::right << std::setw(9) << baseline.at(t.name) << "  " << std::setw(9)
            << it->second << "  " << std::setw(9) << pct.str() << "\n";
    }
    out << std::left << std::setw(static_cast<int>(nameWidth)) << "deployment" << "  "
        << std::right << std::setw(9) << "" << "  " << std::setw(9) << est.deployment << "\n";
    std::cout << out.str();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FSM contract toolchain: validate, weave plugins, emit Solidity, simulate"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool plugins) {
        sub->add_option("input", opt.inputPath, "contract file")->required();
        if (plugins)
            sub->add_option("--plugins", opt.pluginList,
                            "comma list of locking,counter,timed,access");
    };

    auto* validate = app.add_subcommand("validate", "parse and validate a contract");
    add_common(validate, false);

    auto* emit = app.add_subcommand("emit", "emit Solidity");
    add_common(emit, true);
    emit->add_option("-o,--output", opt.outputPath, "output file (stdout when absent)");

    auto* simulate = app.add_subcommand("simulate", "run a schedule against the contract");
    add_common(simulate, true);
    simulate->add_option("--schedule", opt.schedulePath, "schedule JSON file")->required();
    simulate->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    simulate->add_option("--creation-time", opt.creationTime, "deployment timestamp");
    simulate->add_option("--creator", opt.creator, "deployer address");

    auto* search = app.add_subcommand("search", "search for reentrancy counterexamples");
    add_common(search, true);
    search->add_option("--depth", opt.depth, "max nested call frames")->check(CLI::Range(2, 3));
    search->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    search->add_option("--creation-time", opt.creationTime, "deployment timestamp");
    search->add_option("--creator", opt.creator, "deployer address");

    auto* gas = app.add_subcommand("gas-report", "estimate gas with plugin overheads");
    add_common(gas, true);
    gas->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (emit->parsed()) return cmd_emit(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (search->parsed()) return cmd_search(opt);
        if (gas->parsed()) return cmd_gas_report(opt);
    } catch (const fsmsolc::ToolError& e) {
        std::cerr << fsmsolc::format_diagnostic(e.diagnostic()) << "\n";
        return kExitError;
    } catch (const CLI::ParseError& e) {
        // parse_plugins validates lazily, after app.parse has returned
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
