#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fsmsolc/validate.hpp"
#include "helpers.hpp"

using namespace fsmsolc;

namespace {

std::vector<Diagnostic> validate_text(const std::string& text) {
    return validate(testutil::parse_ok(text));
}

bool has(const std::vector<Diagnostic>& diags, const std::string& code) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

bool has_at(const std::vector<Diagnostic>& diags, const std::string& code,
            const std::string& path) {
    return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) {
        return d.code == code && d.nodePath == path;
    });
}

}  // namespace

TEST_CASE("fixtures validate cleanly") {
    CHECK(validate(testutil::load_fixture("blind_auction.fsm")).empty());
    CHECK(validate(testutil::load_fixture("blind_auction_timed.fsm")).empty());
    CHECK(validate(testutil::load_fixture("blind_auction_vulnerable.fsm")).empty());
}

TEST_CASE("initial state count is enforced") {
    auto none = validate_text(R"(
contract C {
    state A;
    transition t { from A; to A; }
}
)");
    CHECK(has_at(none, "E_INITIAL_COUNT", "states"));

    auto two = validate_text(R"(
contract C {
    state initial A;
    state initial B;
}
)");
    CHECK(has(two, "E_INITIAL_COUNT"));
}

TEST_CASE("duplicate parameter names are reported") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    transition t {
        from A;
        to A;
        input uint x;
        output uint x;
    }
}
)");
    CHECK(has_at(diags, "E_DUPLICATE_NAME", "transitions/t/output/x"));
}

TEST_CASE("unknown state references are reported") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    transition t { from A; to Gone; }
    timed transition u { from Missing; to A; time 1 days; }
}
)");
    CHECK(has_at(diags, "E_UNKNOWN_STATE", "transitions/t/to"));
    CHECK(has_at(diags, "E_UNKNOWN_STATE", "timedTransitions/u/from"));
}

TEST_CASE("unknown struct types are reported") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    var private Ghost[] log;
    transition t { from A; to A; input Phantom p; }
}
)");
    CHECK(has_at(diags, "E_UNKNOWN_TYPE", "variables/log"));
    CHECK(has_at(diags, "E_UNKNOWN_TYPE", "transitions/t/input/p"));
}

TEST_CASE("unresolved symbols in guards and statements are reported") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    var private uint v;
    transition t {
        from A;
        to A;
        guard ghost > 1;
        do {
            v = phantom + 1;
        }
    }
}
)");
    CHECK(has_at(diags, "E_UNKNOWN_SYMBOL", "transitions/t/guards/0"));
    CHECK(has_at(diags, "E_UNKNOWN_SYMBOL", "transitions/t/statements/0"));
}

TEST_CASE("core guards must be boolean") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    var private uint v;
    transition t {
        from A;
        to A;
        guard v + 1;
    }
}
)");
    CHECK(has_at(diags, "E_GUARD_TYPE", "transitions/t/guards/0"));

    // Opaque guards are not type-checked.
    auto opaque = validate_text(R"(
contract C {
    state initial A;
    var private uint v;
    transition t {
        from A;
        to A;
        guard v / 2;
    }
}
)");
    CHECK_FALSE(has(opaque, "E_GUARD_TYPE"));
}

TEST_CASE("timed transitions may not touch input or output data") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    state B;
    var private uint v;
    transition t {
        from A;
        to B;
        input uint amount;
    }
    timed transition u {
        from A;
        to B;
        time 2 hours;
        guard amount > 0;
        do {
            v = amount;
        }
    }
}
)");
    CHECK(has_at(diags, "E_TIMED_IO", "timedTransitions/u/guards/0"));
    CHECK(has_at(diags, "E_TIMED_IO", "timedTransitions/u/statements/0"));
    // The unknown-symbol finding for the same path is subsumed.
    CHECK_FALSE(has(diags, "E_UNKNOWN_SYMBOL"));
}

TEST_CASE("a contract variable shadowing an input name is fine in timed code") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    var private uint amount;
    transition t {
        from A;
        to A;
        input uint amount;
    }
    timed transition u {
        from A;
        to A;
        time 2 hours;
        guard amount > 0;
    }
}
)");
    CHECK_FALSE(has(diags, "E_TIMED_IO"));
}

TEST_CASE("unreachable states warn only with a unique initial state") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    state B;
    state Island;
    transition t { from A; to B; }
}
)");
    CHECK(has_at(diags, "W_UNREACHABLE", "states/Island"));
    REQUIRE_FALSE(diags.empty());
    CHECK_FALSE(has_errors(diags));

    auto twoInitials = validate_text(R"(
contract C {
    state initial A;
    state initial B;
    state Island;
}
)");
    CHECK_FALSE(has(twoInitials, "W_UNREACHABLE"));
}

TEST_CASE("reachability follows timed edges too") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    state B;
    timed transition u { from A; to B; time 1 days; }
}
)");
    CHECK_FALSE(has(diags, "W_UNREACHABLE"));
}

TEST_CASE("diagnostics come out sorted by path then code") {
    auto diags = validate_text(R"(
contract C {
    state initial A;
    transition z { from A; to Gone; }
    transition b { from Missing; to A; }
}
)");
    REQUIRE(diags.size() >= 2);
    CHECK(std::is_sorted(diags.begin(), diags.end(),
                         [](const Diagnostic& a, const Diagnostic& b) {
                             return std::tie(a.nodePath, a.code, a.message) <
                                    std::tie(b.nodePath, b.code, b.message);
                         }));
}
