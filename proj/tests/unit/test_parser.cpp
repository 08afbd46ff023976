#include <catch2/catch_amalgamated.hpp>

#include "fsmsolc/parser.hpp"
#include "helpers.hpp"

using namespace fsmsolc;

TEST_CASE("fixture parses into the expected machine") {
    Contract c = testutil::load_fixture("blind_auction.fsm");
    CHECK(c.name == "BlindAuction");

    REQUIRE(c.states.size() == 4);
    CHECK(c.states[0].name == "ABB");
    CHECK(c.states[0].isInitial);
    CHECK_FALSE(c.states[1].isInitial);
    REQUIRE(c.initial_state() != nullptr);
    CHECK(c.initial_state()->name == "ABB");

    REQUIRE(c.transitions.size() == 8);
    CHECK(c.transitions[0].name == "bid");
    CHECK(c.timedTransitions.empty());

    REQUIRE(c.customTypes.size() == 1);
    CHECK(c.customTypes[0].name == "Bid");
    REQUIRE(c.customTypes[0].fields.size() == 2);
    CHECK(c.customTypes[0].fields[0].name == "blindedBid");
    CHECK(c.customTypes[0].fields[0].type.is_elementary(ElemType::Bytes32));

    REQUIRE(c.variables.size() == 4);
    CHECK(c.variables[0].name == "bids");
    CHECK(c.variables[0].visibility == Visibility::Private);
    CHECK_FALSE(c.declares_creation_time());
}

TEST_CASE("fixture transitions carry tags, data and classified bodies") {
    Contract c = testutil::load_fixture("blind_auction.fsm");

    const Transition* bid = c.find_transition("bid");
    REQUIRE(bid != nullptr);
    CHECK(bid->from == "ABB");
    CHECK(bid->to == "ABB");
    CHECK(bid->tags.payable);
    CHECK_FALSE(bid->tags.admin);
    REQUIRE(bid->input.size() == 1);
    CHECK(bid->input[0].name == "blindedBid");
    CHECK(bid->input[0].kind == VarKind::InputData);
    REQUIRE(bid->statements.size() == 1);
    CHECK(std::holds_alternative<Statement::Push>(bid->statements[0].node));

    const Transition* close = c.find_transition("close");
    REQUIRE(close != nullptr);
    REQUIRE(close->guards.size() == 1);
    REQUIRE(close->guards[0].is_core());
    CHECK(core_to_text(close->guards[0].core) == "now >= creationTime + 5 days");

    const Transition* unbid = c.find_transition("unbid");
    REQUIRE(unbid != nullptr);
    REQUIRE(unbid->output.size() == 1);
    CHECK(unbid->output[0].name == "amount");
    CHECK(unbid->output[0].kind == VarKind::OutputData);
    REQUIRE(unbid->statements.size() == 3);
    CHECK(std::holds_alternative<Statement::Assign>(unbid->statements[0].node));
    CHECK(unbid->statements[2].is_send());

    const Transition* cancel = c.find_transition("cancelABB");
    REQUIRE(cancel != nullptr);
    CHECK(cancel->tags.admin);
    CHECK(cancel->statements.empty());
}

TEST_CASE("timed fixture parses the timed transition") {
    Contract c = testutil::load_fixture("blind_auction_timed.fsm");
    REQUIRE(c.timedTransitions.size() == 1);
    const TimedTransition& t = c.timedTransitions[0];
    CHECK(t.name == "close");
    CHECK(t.from == "ABB");
    CHECK(t.to == "RB");
    CHECK(t.timeSeconds == 432000);  // 5 days
    CHECK(c.find_transition("close") == nullptr);
    CHECK(c.find_timed("close") != nullptr);
}

TEST_CASE("initializers and visibility parse") {
    Contract c = testutil::parse_ok(R"(
contract V {
    state initial A;
    var public uint limit = 2 days;
    var private bool open = true;
    var private address owner = 0xAB;
    var private uint plain;
}
)");
    const Variable* limit = c.find_variable("limit");
    REQUIRE(limit != nullptr);
    CHECK(limit->visibility == Visibility::Public);
    REQUIRE(limit->initializer.has_value());
    REQUIRE(limit->initializer->is_core());
    CHECK(core_to_text(limit->initializer->core) == "2 days");

    const Variable* owner = c.find_variable("owner");
    REQUIRE(owner->initializer.has_value());
    CHECK(core_to_text(owner->initializer->core) == "0xab");

    CHECK_FALSE(c.find_variable("plain")->initializer.has_value());
}

TEST_CASE("opaque constructs survive parsing as canonical text") {
    Contract c = testutil::parse_ok(R"(
contract O {
    state initial A;
    var private uint v;
    transition t {
        from A;
        to A;
        guard v / 2 == 0;
        do {
            v += 1;
            uint scratch = v;
        }
    }
}
)");
    const Transition& t = c.transitions[0];
    REQUIRE(t.guards.size() == 1);
    CHECK_FALSE(t.guards[0].is_core());
    CHECK(t.guards[0].opaque == "v / 2 == 0");
    REQUIRE(t.statements.size() == 2);
    CHECK(std::get<Statement::Opaque>(t.statements[0].node).text == "v += 1");
    CHECK(std::get<Statement::Opaque>(t.statements[1].node).text == "uint scratch = v");
}

TEST_CASE("syntax errors produce positioned diagnostics") {
    auto r = parse_contract("contract X { state initial A }");  // missing ';'
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].code == "E_PARSE");
    CHECK(r.diagnostics[0].nodePath.find(':') != std::string::npos);

    auto empty = parse_contract("");
    CHECK_FALSE(empty.ok());
}

TEST_CASE("duplicate transition names are rejected at parse time") {
    auto r = parse_contract(R"(
contract D {
    state initial A;
    transition t { from A; to A; }
    transition t { from A; to A; }
}
)");
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].code == "E_DUPLICATE_NAME");

    auto timedDup = parse_contract(R"(
contract D {
    state initial A;
    transition t { from A; to A; }
    timed transition t { from A; to A; time 1 days; }
}
)");
    CHECK_FALSE(timedDup.ok());
    CHECK(timedDup.diagnostics[0].code == "E_DUPLICATE_NAME");
}

TEST_CASE("unknown keywords inside a contract are rejected") {
    auto r = parse_contract(R"(
contract K {
    state initial A;
    banana;
}
)");
    CHECK_FALSE(r.ok());
}

TEST_CASE("input lists accept multiple comma-separated parameters") {
    Contract c = testutil::parse_ok(R"(
contract P {
    state initial A;
    transition t {
        from A;
        to A;
        input uint a, address b;
        output uint q;
    }
}
)");
    const Transition& t = c.transitions[0];
    REQUIRE(t.input.size() == 2);
    CHECK(t.input[0].name == "a");
    CHECK(t.input[1].type.is_elementary(ElemType::Address));
    REQUIRE(t.output.size() == 1);
    CHECK(t.output[0].name == "q");
}
