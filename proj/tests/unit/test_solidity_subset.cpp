#include <catch2/catch_amalgamated.hpp>

#include "fsmsolc/solidity_subset.hpp"
#include "helpers.hpp"

using namespace fsmsolc;

namespace {

// Declaration environment shared by the snippet tests.
const Contract& env_contract() {
    static Contract c = testutil::parse_ok(R"(
contract EnvHost {
    state initial A;
    state B;

    struct Bid {
        bytes32 blindedBid;
        uint deposit;
    }

    var private uint total;
    var private bool open;
    var private address owner;
    var private mapping(address => uint) credits;
    var private mapping(address => Bid[]) bids;
    var private Bid[] log;

    transition t0 {
        from A;
        to B;
        input uint amount, address who;
    }
}
)");
    return c;
}

Expression classify_in_guard(const std::string& snippet) {
    const Contract& c = env_contract();
    return classify_expression(snippet, env_for_guard(c, c.transitions[0]));
}

ClassifiedStmt classify_in_body(const std::string& snippet) {
    const Contract& c = env_contract();
    return classify_statement(snippet, env_for_statements(c, c.transitions[0]));
}

}  // namespace

TEST_CASE("lexer splits punctuation and tracks comments") {
    auto tokens = lex_source("a >= b // trailing\n /* block */ c");
    REQUIRE(tokens.size() == 5);  // a, >=, b, c, End
    CHECK(tokens[0].text == "a");
    CHECK(tokens[1].is_punct(">="));
    CHECK(tokens[3].text == "c");
    CHECK(tokens[4].kind == Token::Kind::End);
}

TEST_CASE("lexer rejects unterminated constructs") {
    CHECK_THROWS_AS(lex_source("/* never closed"), SubsetParseError);
    CHECK_THROWS_AS(lex_source("\"never closed"), SubsetParseError);
}

TEST_CASE("core classification of arithmetic and env reads") {
    Expression e = classify_in_guard("total + 2 * amount >= 10");
    REQUIRE(e.is_core());
    CHECK(core_to_text(e.core) == "total + 2 * amount >= 10");

    Expression env = classify_in_guard("msg.sender == owner");
    REQUIRE(env.is_core());
    CHECK(core_to_text(env.core) == "msg.sender == owner");

    Expression nowRead = classify_in_guard("now >= 5 days");
    REQUIRE(nowRead.is_core());
}

TEST_CASE("duration literals fold to seconds") {
    Expression e = classify_in_guard("now >= 2 days");
    REQUIRE(e.is_core());
    const auto& bin = std::get<CoreExpr::Binary>(e.core->node);
    const auto& lit = std::get<CoreExpr::DurationLit>(bin.rhs->node);
    CHECK(lit.value == u256(172800));
    CHECK(lit.count == 2);
    CHECK(lit.unit == DurationUnit::Days);
    CHECK(core_to_text(e.core) == "now >= 2 days");
}

TEST_CASE("division and modulo stay opaque") {
    Expression e = classify_in_guard("total / 2 == 0");
    CHECK_FALSE(e.is_core());
    CHECK(e.opaque == "total / 2 == 0");
}

TEST_CASE("unresolved identifier in a core-grammar expression is flagged") {
    const Contract& c = env_contract();
    std::vector<Token> tokens = lex_source("ghost > 1");
    TokenStream ts(tokens);
    auto cls = classify_subset_expression(parse_subset_expression(ts), env_for_guard(c, c.transitions[0]));
    CHECK(cls.coreGrammar);
    REQUIRE(cls.unresolved.has_value());
    CHECK(*cls.unresolved == "ghost");
    CHECK_FALSE(cls.expr.is_core());
}

TEST_CASE("non-core shapes pass through without name resolution") {
    const Contract& c = env_contract();
    std::vector<Token> tokens = lex_source("keccak256(ghost)");
    TokenStream ts(tokens);
    auto cls = classify_subset_expression(parse_subset_expression(ts), env_for_guard(c, c.transitions[0]));
    CHECK_FALSE(cls.coreGrammar);
    CHECK_FALSE(cls.unresolved.has_value());
    CHECK(cls.expr.opaque == "keccak256(ghost)");
}

TEST_CASE("canonical text normalizes spacing and is stable") {
    Expression e = classify_in_guard("total+2*amount>=10");
    REQUIRE(e.is_core());
    std::string canonical = core_to_text(e.core);
    CHECK(canonical == "total + 2 * amount >= 10");
    Expression again = classify_in_guard(canonical);
    REQUIRE(again.is_core());
    CHECK(core_to_text(again.core) == canonical);
}

TEST_CASE("assignment classification") {
    auto cls = classify_in_body("credits[msg.sender] = msg.value;");
    REQUIRE_FALSE(cls.stmt.is_opaque());
    CHECK(std::holds_alternative<Statement::Assign>(cls.stmt.node));

    // Compound assignment is not core.
    auto compound = classify_in_body("total += 2;");
    CHECK(compound.stmt.is_opaque());
    CHECK(std::get<Statement::Opaque>(compound.stmt.node).text == "total += 2");

    // Local declarations are not core.
    auto local = classify_in_body("uint tmp = 3;");
    CHECK(local.stmt.is_opaque());
}

TEST_CASE("send classification requires an address recipient") {
    auto cls = classify_in_body("owner.send(total);");
    REQUIRE(std::holds_alternative<Statement::Send>(cls.stmt.node));

    auto viaEnv = classify_in_body("msg.sender.send(1);");
    CHECK(std::holds_alternative<Statement::Send>(viaEnv.stmt.node));

    auto notAddress = classify_in_body("total.send(1);");
    CHECK(notAddress.stmt.is_opaque());
}

TEST_CASE("push classification canonicalizes field order") {
    auto cls = classify_in_body("log.push(Bid({deposit: 1, blindedBid: \"x\"}));");
    REQUIRE(std::holds_alternative<Statement::Push>(cls.stmt.node));
    const auto& push = std::get<Statement::Push>(cls.stmt.node);
    const auto& lit = std::get<CoreExpr::StructLit>(push.literal->node);
    REQUIRE(lit.fields.size() == 2);
    CHECK(lit.fields[0].first == "blindedBid");  // declaration order
    CHECK(lit.fields[1].first == "deposit");

    auto nested = classify_in_body("bids[msg.sender].push(Bid({blindedBid: \"x\", deposit: 0}));");
    CHECK(std::holds_alternative<Statement::Push>(nested.stmt.node));
}

TEST_CASE("push with missing or mistyped fields is opaque") {
    CHECK(classify_in_body("log.push(Bid({deposit: 1}));").stmt.is_opaque());
    CHECK(classify_in_body("log.push(Bid({deposit: true, blindedBid: \"x\"}));").stmt.is_opaque());
    CHECK(classify_in_body("log.push(Other({deposit: 1, blindedBid: \"x\"}));").stmt.is_opaque());
}

TEST_CASE("statement text round-trips through the canonical form") {
    auto cls = classify_in_body("credits [ msg.sender ]=msg.value ;");
    std::string text = statement_to_text(cls.stmt);
    CHECK(text == "credits[msg.sender] = msg.value");
    auto again = classify_in_body(text + ";");
    CHECK(cls.stmt == again.stmt);
}

TEST_CASE("check_solidity_syntax accepts the subset and reports positions") {
    CHECK(check_solidity_syntax("a + b >= 2", SnippetContext::Expression).empty());
    CHECK(check_solidity_syntax("x = y + 1;", SnippetContext::Statement).empty());
    auto diags = check_solidity_syntax("a +", SnippetContext::Expression);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].code == "E_PARSE");
}
