#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "fsmsolc/interpreter.hpp"
#include "helpers.hpp"

using namespace fsmsolc;

namespace {

constexpr uint64_t kCt = 1000;
constexpr uint64_t kDay5 = 432000;
const std::string kAlice = "0xa11ce";
const std::string kBob = "0xb0b";

AugmentedContract weave(const std::string& fixture, PluginSet p = {}) {
    return apply_plugins(testutil::load_fixture(fixture), p);
}

Invocation counted(Invocation inv, u256 n) {
    inv.counterArg = n;
    return inv;
}

template <typename Fn>
std::string tool_error_code(Fn&& fn) {
    try {
        fn();
    } catch (const ToolError& e) {
        return e.diagnostic().code;
    }
    return "";
}

// Drives the plain auction into state C with pendingReturns[bob] = 3 and the
// given balance paid in by alice's bid.
InstanceState auction_in_c(const AugmentedContract& aug, u256 bidValue) {
    InstanceState st = init_instance(aug, kCt, kAlice);
    auto step = [&](Invocation inv) {
        auto [next, out] = invoke(aug, st, inv);
        REQUIRE(out.accepted);
        st = std::move(next);
    };
    if (bidValue > 0) {
        Invocation bid = testutil::call("bid", kCt + 1, kAlice, bidValue);
        bid.args["blindedBid"] = Value::bytes("sealed");
        step(bid);
    }
    step(testutil::call("close", kCt + kDay5, kAlice));
    Invocation r1 = testutil::call("reveal", kCt + kDay5, kBob);
    r1.args["value"] = Value::uint(u256(3));
    step(r1);
    Invocation r2 = testutil::call("reveal", kCt + kDay5, kAlice);
    r2.args["value"] = Value::uint(u256(5));
    step(r2);
    step(testutil::call("cancelRB", kCt + kDay5, kAlice));
    return st;
}

}  // namespace

TEST_CASE("initial instance mirrors the declarations") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = init_instance(aug, kCt, kAlice);
    CHECK(st.currentState == "ABB");
    CHECK(st.balance == 0);
    CHECK_FALSE(st.locked);
    CHECK(st.counter == 0);
    CHECK(st.creationTime == kCt);
    CHECK(st.adminSet.empty());
    CHECK(st.store.at("creationTime") == Value::uint(u256(kCt)));
    CHECK(st.store.at("highestBid") == Value::uint(u256(0)));
    CHECK(st.store.at("highestBidder").kind == Value::Kind::Address);
    CHECK(st.store.at("highestBidder").is_zero());
    CHECK(st.store.at("bids").fields.empty());
    CHECK(st.store.at("pendingReturns").fields.empty());

    PluginSet access;
    access.accessControl = true;
    InstanceState guarded = init_instance(weave("blind_auction.fsm", access), kCt, "0xA11CE");
    CHECK(guarded.adminSet == std::set<std::string>{kAlice});
}

TEST_CASE("variable initializers run at creation") {
    Contract c = testutil::parse_ok(R"(
contract Init {
    state initial A;
    var public uint limit = 2 days;
    var private address owner = 0x00AB;
    var private bool flag = true;
    transition t {
        from A;
        to A;
    }
}
)");
    InstanceState st = init_instance(apply_plugins(c, {}), kCt, kAlice);
    CHECK(st.store.at("limit") == Value::uint(u256(172800)));
    CHECK(st.store.at("owner") == Value::address("0xab"));
    CHECK(st.store.at("flag") == Value::boolean(true));
}

TEST_CASE("instances require an initial state") {
    AugmentedContract aug = weave("blind_auction.fsm");
    for (auto& s : aug.base.states) s.isInitial = false;
    CHECK(tool_error_code([&] { init_instance(aug, kCt, kAlice); }) == "E_INVALID");
}

TEST_CASE("a payable transition accepts value and records the bid") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = init_instance(aug, kCt, kAlice);
    Invocation bid = testutil::call("bid", kCt + 1, kAlice, 5);
    bid.args["blindedBid"] = Value::bytes("sealed");
    auto [post, out] = invoke(aug, st, bid);
    REQUIRE(out.accepted);
    CHECK(out.newState == "ABB");
    CHECK(out.outputs.empty());
    CHECK(post.balance == 5);
    const Value* entry = post.store.at("bids").mapping_find(Value::address(kAlice).key_repr());
    REQUIRE(entry != nullptr);
    REQUIRE(entry->elems.size() == 1);
    CHECK(*entry->elems[0].struct_field("blindedBid") == Value::bytes("sealed"));
    CHECK(*entry->elems[0].struct_field("deposit") == Value::uint(u256(5)));
}

TEST_CASE("value on a non-payable transition is rejected") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = init_instance(aug, kCt, kAlice);
    auto [post, out] = invoke(aug, st, testutil::call("close", kCt + kDay5, kAlice, 1));
    CHECK_FALSE(out.accepted);
    CHECK(out.rejectCode == "R_NOT_PAYABLE");
    CHECK(post == st);
}

TEST_CASE("invoking from the wrong state is rejected") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = init_instance(aug, kCt, kAlice);
    auto [post, out] = invoke(aug, st, testutil::call("unbid", kCt + 1, kAlice));
    CHECK_FALSE(out.accepted);
    CHECK(out.rejectCode == "R_WRONG_STATE");
    CHECK(post == st);
}

TEST_CASE("guards gate on the clock boundary") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = init_instance(aug, kCt, kAlice);

    auto [p1, early] = invoke(aug, st, testutil::call("close", kCt + kDay5 - 1, kAlice));
    CHECK_FALSE(early.accepted);
    CHECK(early.rejectCode == "R_GUARD_FALSE");
    CHECK(p1 == st);

    auto [p2, onTime] = invoke(aug, st, testutil::call("close", kCt + kDay5, kAlice));
    REQUIRE(onTime.accepted);
    CHECK(onTime.newState == "RB");
    CHECK(p2.currentState == "RB");
}

TEST_CASE("argument binding is strict") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = init_instance(aug, kCt, kAlice);

    Invocation missing = testutil::call("bid", kCt + 1, kAlice, 1);
    CHECK(tool_error_code([&] { invoke(aug, st, missing); }) == "E_BAD_ARGS");

    Invocation extra = missing;
    extra.args["blindedBid"] = Value::bytes("x");
    extra.args["bonus"] = Value::uint(u256(1));
    CHECK(tool_error_code([&] { invoke(aug, st, extra); }) == "E_BAD_ARGS");

    Invocation wrongType = missing;
    wrongType.args["blindedBid"] = Value::uint(u256(7));
    CHECK(tool_error_code([&] { invoke(aug, st, wrongType); }) == "E_BAD_ARGS");

    CHECK(tool_error_code([&] {
              invoke(aug, st, testutil::call("nope", kCt + 1, kAlice));
          }) == "E_UNKNOWN_TRANSITION");
}

TEST_CASE("outputs start at zero and zero writes stay canonical") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = init_instance(aug, kCt, kAlice);
    auto [inC, cancel] = invoke(aug, st, testutil::call("cancelABB", kCt + 1, kAlice));
    REQUIRE(cancel.accepted);
    auto [post, out] = invoke(aug, inC, testutil::call("unbid", kCt + 2, kAlice));
    REQUIRE(out.accepted);
    CHECK(out.outputs.at("amount") == Value::uint(u256(0)));
    // unbid wrote pendingReturns[sender] = 0; the store must not grow.
    CHECK(post.store == inC.store);
}

TEST_CASE("rejected invocations leave no effects behind") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = auction_in_c(aug, 0);  // owed 3, nothing paid in
    REQUIRE(st.balance == 0);
    auto [post, out] = invoke(aug, st, testutil::call("unbid", kCt + kDay5 + 1, kBob));
    CHECK_FALSE(out.accepted);
    CHECK(out.rejectCode == "R_INSUFFICIENT_BALANCE");
    CHECK(post == st);
    const Value* owed = post.store.at("pendingReturns").mapping_find(
        Value::address(kBob).key_repr());
    REQUIRE(owed != nullptr);
    CHECK(*owed == Value::uint(u256(3)));
}

TEST_CASE("schedules thread state through every call") {
    AugmentedContract aug = weave("blind_auction.fsm");
    Invocation bid = testutil::call("bid", kCt + 1, kAlice, 5);
    bid.args["blindedBid"] = Value::bytes("sealed");
    Invocation r1 = testutil::call("reveal", kCt + kDay5, kBob);
    r1.args["value"] = Value::uint(u256(3));
    Invocation r2 = testutil::call("reveal", kCt + kDay5, kAlice);
    r2.args["value"] = Value::uint(u256(5));
    ScheduleResult res = run_schedule(
        aug, kCt, kAlice,
        {bid, testutil::call("close", kCt + kDay5, kAlice), r1, r2,
         testutil::call("cancelRB", kCt + kDay5, kAlice),
         testutil::call("unbid", kCt + kDay5 + 1, kBob)});
    CHECK(res.all_accepted());
    REQUIRE(res.trace.size() == 6);
    for (const auto& e : res.trace) CHECK(e.depth == 0);
    CHECK(res.finalState.currentState == "C");
    CHECK(res.finalState.balance == 2);
    CHECK(res.trace[5].outcome.outputs.at("amount") == Value::uint(u256(3)));
    CHECK(res.finalState.store.at("pendingReturns").fields.empty());
    CHECK(res.finalState.store.at("highestBid") == Value::uint(u256(5)));
    CHECK(res.finalState.store.at("highestBidder") == Value::address(kAlice));
}

TEST_CASE("locking blocks nested reentry and releases afterwards") {
    PluginSet p;
    p.locking = true;
    AugmentedContract aug = weave("blind_auction.fsm", p);
    InstanceState st = auction_in_c(aug, 6);
    REQUIRE(st.balance == 6);

    Invocation outer = testutil::call("unbid", kCt + kDay5 + 1, kBob);
    outer.reentry = std::make_shared<Invocation>(testutil::call("unbid", kCt + kDay5 + 1, kBob));
    Trace trace;
    auto [post, out] = invoke(aug, st, outer, &trace);
    REQUIRE(out.accepted);
    CHECK(post.balance == 3);
    CHECK_FALSE(post.locked);
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].depth == 0);
    CHECK(trace[0].outcome.accepted);
    CHECK(trace[1].depth == 1);
    CHECK(trace[1].invocation.transition == "unbid");
    CHECK_FALSE(trace[1].outcome.accepted);
    CHECK(trace[1].outcome.rejectCode == "R_LOCKED");

    // The lock is gone; the next call goes through (and finds nothing owed).
    auto [post2, again] = invoke(aug, post, testutil::call("unbid", kCt + kDay5 + 2, kBob));
    REQUIRE(again.accepted);
    CHECK(again.outputs.at("amount") == Value::uint(u256(0)));
    CHECK(post2.balance == 3);
}

TEST_CASE("the straight auction zeroes before sending, so reentry gains nothing") {
    AugmentedContract aug = weave("blind_auction.fsm");
    InstanceState st = auction_in_c(aug, 6);

    Invocation outer = testutil::call("unbid", kCt + kDay5 + 1, kBob);
    outer.reentry = std::make_shared<Invocation>(testutil::call("unbid", kCt + kDay5 + 1, kBob));
    Trace trace;
    auto [post, out] = invoke(aug, st, outer, &trace);
    REQUIRE(out.accepted);
    REQUIRE(trace.size() == 2);
    CHECK(trace[1].outcome.accepted);
    CHECK(trace[1].outcome.outputs.at("amount") == Value::uint(u256(0)));
    CHECK(post.balance == 3);
}

TEST_CASE("the vulnerable machine pays twice under reentry") {
    AugmentedContract aug = weave("blind_auction_vulnerable.fsm");
    auto setup = [&] {
        return run_schedule(aug, kCt, kAlice,
                            {testutil::call("bid", kCt + 1, kAlice, 5),
                             testutil::call("bid", kCt + 2, kBob, 5),
                             testutil::call("close", kCt + kDay5, kAlice),
                             testutil::call("finish", kCt + kDay5, kAlice)});
    };
    ScheduleResult base = setup();
    REQUIRE(base.all_accepted());
    REQUIRE(base.finalState.balance == 10);

    Invocation honest = testutil::call("withdraw", kCt + kDay5 + 1, kAlice);
    auto [plain, plainOut] = invoke(aug, base.finalState, honest);
    REQUIRE(plainOut.accepted);
    CHECK(plain.balance == 5);

    Invocation attack = honest;
    attack.reentry = std::make_shared<Invocation>(honest);
    Trace trace;
    auto [hit, hitOut] = invoke(aug, base.finalState, attack, &trace);
    REQUIRE(hitOut.accepted);
    REQUIRE(trace.size() == 2);
    CHECK(trace[1].depth == 1);
    CHECK(trace[1].outcome.accepted);
    CHECK(hit.balance == 0);
    // Bob's credit is still on the books with nothing left to pay it.
    const Value* owed = hit.store.at("pendingReturns").mapping_find(
        Value::address(kBob).key_repr());
    REQUIRE(owed != nullptr);
    CHECK(*owed == Value::uint(u256(5)));
}

TEST_CASE("a rejected nested call does not abort the outer frame") {
    AugmentedContract aug = weave("blind_auction_vulnerable.fsm");
    ScheduleResult base = run_schedule(aug, kCt, kAlice,
                                       {testutil::call("bid", kCt + 1, kAlice, 5),
                                        testutil::call("close", kCt + kDay5, kAlice),
                                        testutil::call("finish", kCt + kDay5, kAlice)});
    REQUIRE(base.all_accepted());

    Invocation outer = testutil::call("withdraw", kCt + kDay5 + 1, kAlice);
    outer.reentry = std::make_shared<Invocation>(testutil::call("close", kCt + kDay5 + 1, kBob));
    Trace trace;
    auto [post, out] = invoke(aug, base.finalState, outer, &trace);
    REQUIRE(out.accepted);
    REQUIRE(trace.size() == 2);
    CHECK_FALSE(trace[1].outcome.accepted);
    CHECK(trace[1].outcome.rejectCode == "R_WRONG_STATE");
    CHECK(post.balance == 0);
    CHECK(post.store.at("pendingReturns").fields.empty());
}

TEST_CASE("reentry only fires at the designated send") {
    AugmentedContract aug = weave("blind_auction_vulnerable.fsm");
    ScheduleResult base = run_schedule(aug, kCt, kAlice,
                                       {testutil::call("bid", kCt + 1, kAlice, 5),
                                        testutil::call("close", kCt + kDay5, kAlice),
                                        testutil::call("finish", kCt + kDay5, kAlice)});
    Invocation outer = testutil::call("withdraw", kCt + kDay5 + 1, kAlice);
    outer.reentry = std::make_shared<Invocation>(outer);
    outer.reentrySite = 1;  // the body has exactly one send, index 0
    Trace trace;
    auto [post, out] = invoke(aug, base.finalState, outer, &trace);
    REQUIRE(out.accepted);
    CHECK(trace.size() == 1);
    CHECK(post.balance == 0);
}

TEST_CASE("the counter demands the running count") {
    PluginSet p;
    p.transitionCounter = true;
    AugmentedContract aug = weave("blind_auction.fsm", p);
    InstanceState st = init_instance(aug, kCt, kAlice);

    Invocation bid = testutil::call("bid", kCt + 1, kAlice, 2);
    bid.args["blindedBid"] = Value::bytes("x");
    auto [s1, o1] = invoke(aug, st, counted(bid, 0));
    REQUIRE(o1.accepted);
    CHECK(s1.counter == 1);

    auto [s2, o2] = invoke(aug, s1, counted(testutil::call("close", kCt + kDay5, kAlice), 1));
    REQUIRE(o2.accepted);
    CHECK(s2.counter == 2);

    Invocation reveal = testutil::call("reveal", kCt + kDay5, kBob);
    reveal.args["value"] = Value::uint(u256(3));
    auto [s3, stale] = invoke(aug, s2, counted(reveal, 1));
    CHECK_FALSE(stale.accepted);
    CHECK(stale.rejectCode == "R_BAD_COUNTER");
    CHECK(s3 == s2);

    auto [s4, fresh] = invoke(aug, s2, counted(reveal, 2));
    CHECK(fresh.accepted);
    CHECK(s4.counter == 3);

    auto [s5, missing] = invoke(aug, s2, reveal);
    CHECK_FALSE(missing.accepted);
    CHECK(missing.rejectCode == "R_BAD_COUNTER");
    CHECK(s5 == s2);
}

TEST_CASE("swapping counted calls flips which one lands") {
    PluginSet p;
    p.transitionCounter = true;
    AugmentedContract aug = weave("blind_auction.fsm", p);
    InstanceState st = init_instance(aug, kCt, kAlice);

    auto [s1, first] = invoke(aug, st, counted(testutil::call("close", kCt + kDay5, kAlice), 1));
    CHECK_FALSE(first.accepted);
    CHECK(first.rejectCode == "R_BAD_COUNTER");

    Invocation bid = testutil::call("bid", kCt + 1, kAlice, 2);
    bid.args["blindedBid"] = Value::bytes("x");
    auto [s2, second] = invoke(aug, s1, counted(bid, 0));
    CHECK(second.accepted);
    CHECK(s2.counter == 1);
}

TEST_CASE("admin gating and the generated transitions") {
    PluginSet p;
    p.accessControl = true;
    AugmentedContract aug = weave("blind_auction.fsm", p);
    InstanceState st = init_instance(aug, kCt, kAlice);

    auto [r0, denied] = invoke(aug, st, testutil::call("cancelABB", kCt + 1, kBob));
    CHECK_FALSE(denied.accepted);
    CHECK(denied.rejectCode == "R_NOT_ADMIN");
    CHECK(r0 == st);

    Invocation grant = testutil::call("addAdmin", kCt + 1, kAlice);
    grant.args["account"] = Value::address(kBob);
    auto [s1, granted] = invoke(aug, st, grant);
    REQUIRE(granted.accepted);
    CHECK(granted.newState == "ABB");  // generated transitions keep the state
    CHECK(s1.adminSet == std::set<std::string>{kAlice, kBob});

    auto [s1b, dup] = invoke(aug, s1, grant);
    CHECK_FALSE(dup.accepted);
    CHECK(dup.rejectCode == "R_GUARD_FALSE");
    CHECK(s1b == s1);

    Invocation dropStranger = testutil::call("removeAdmin", kCt + 2, kAlice);
    dropStranger.args["account"] = Value::address("0xca11");
    auto [s1c, stranger] = invoke(aug, s1, dropStranger);
    CHECK_FALSE(stranger.accepted);
    CHECK(stranger.rejectCode == "R_GUARD_FALSE");
    CHECK(s1c == s1);

    auto [s2, cancelled] = invoke(aug, s1, testutil::call("cancelABB", kCt + 3, kBob));
    REQUIRE(cancelled.accepted);
    CHECK(s2.currentState == "C");

    // Generated transitions run in any state.
    Invocation dropBob = testutil::call("removeAdmin", kCt + 4, kBob);
    dropBob.args["account"] = Value::address(kBob);
    auto [s3, dropped] = invoke(aug, s2, dropBob);
    REQUIRE(dropped.accepted);
    CHECK(s3.currentState == "C");
    CHECK(s3.adminSet == std::set<std::string>{kAlice});

    Invocation dropLast = testutil::call("removeAdmin", kCt + 5, kAlice);
    dropLast.args["account"] = Value::address(kAlice);
    auto [s4, last] = invoke(aug, s3, dropLast);
    CHECK_FALSE(last.accepted);
    CHECK(last.rejectCode == "R_LAST_ADMIN");
    CHECK(s4 == s3);
}

TEST_CASE("timed transitions fire before the frame body") {
    PluginSet p;
    p.timedTransitions = true;
    AugmentedContract aug = weave("blind_auction_timed.fsm", p);
    InstanceState st = init_instance(aug, kCt, kAlice);

    Invocation bid = testutil::call("bid", kCt + kDay5 - 1, kAlice, 2);
    bid.args["blindedBid"] = Value::bytes("x");
    auto [s1, early] = invoke(aug, st, bid);
    REQUIRE(early.accepted);
    CHECK(s1.currentState == "ABB");

    Invocation lateBid = testutil::call("bid", kCt + kDay5, kAlice, 2);
    lateBid.args["blindedBid"] = Value::bytes("x");
    auto [s2, late] = invoke(aug, s1, lateBid);
    CHECK_FALSE(late.accepted);
    CHECK(late.rejectCode == "R_WRONG_STATE");
    CHECK(s2 == s1);  // the fired timed edge rolls back with the rejection

    Invocation reveal = testutil::call("reveal", kCt + kDay5, kBob);
    reveal.args["value"] = Value::uint(u256(3));
    auto [s3, revealed] = invoke(aug, s1, reveal);
    REQUIRE(revealed.accepted);
    CHECK(revealed.newState == "RB");
    CHECK(s3.currentState == "RB");
}

TEST_CASE("timed chains fire in a single ascending pass") {
    Contract c = testutil::parse_ok(R"(
contract Chain {
    state initial A;
    state B;
    state C;
    state D;
    transition hop {
        from C;
        to D;
    }
    timed transition t1 {
        from A;
        to B;
        time 100;
    }
    timed transition t2 {
        from B;
        to C;
        time 200;
    }
}
)");
    PluginSet p;
    p.timedTransitions = true;
    AugmentedContract aug = apply_plugins(c, p);
    InstanceState st = init_instance(aug, kCt, kAlice);

    auto [s1, half] = invoke(aug, st, testutil::call("hop", kCt + 150, kAlice));
    CHECK_FALSE(half.accepted);
    CHECK(half.rejectCode == "R_WRONG_STATE");
    CHECK(s1 == st);

    auto [s2, full] = invoke(aug, st, testutil::call("hop", kCt + 250, kAlice));
    REQUIRE(full.accepted);
    CHECK(s2.currentState == "D");
}

TEST_CASE("a declared creationTime drives timed thresholds") {
    Contract c = testutil::parse_ok(R"(
contract Declared {
    state initial A;
    state B;
    var public uint creationTime = 0;
    transition probe {
        from B;
        to B;
    }
    timed transition shift {
        from A;
        to B;
        time 100;
    }
}
)");
    PluginSet p;
    p.timedTransitions = true;
    AugmentedContract aug = apply_plugins(c, p);
    InstanceState st = init_instance(aug, kCt, kAlice);
    // Threshold reads the declared variable (0 + 100), not the instance clock.
    auto [post, out] = invoke(aug, st, testutil::call("probe", 100, kAlice));
    REQUIRE(out.accepted);
    CHECK(post.currentState == "B");
}

TEST_CASE("arithmetic overflow rejects the transition") {
    Contract c = testutil::parse_ok(R"(
contract Full {
    state initial A;
    var public uint v = 115792089237316195423570985008687907853269984665640564039457584007913129639935;
    transition inc {
        from A;
        to A;
        do {
            v = v + 1;
        }
    }
}
)");
    AugmentedContract aug = apply_plugins(c, {});
    InstanceState st = init_instance(aug, kCt, kAlice);
    auto [post, out] = invoke(aug, st, testutil::call("inc", kCt + 1, kAlice));
    CHECK_FALSE(out.accepted);
    CHECK(out.rejectCode == "R_OVERFLOW");
    CHECK(post == st);
}

TEST_CASE("array reads out of range are rejected") {
    Contract c = testutil::parse_ok(R"(
contract Peek {
    state initial A;
    struct S {
        uint x;
    }
    var private S[] arr;
    transition peek {
        from A;
        to A;
        output uint q;
        do {
            q = arr[0].x;
        }
    }
}
)");
    AugmentedContract aug = apply_plugins(c, {});
    InstanceState st = init_instance(aug, kCt, kAlice);
    auto [post, out] = invoke(aug, st, testutil::call("peek", kCt + 1, kAlice));
    CHECK_FALSE(out.accepted);
    CHECK(out.rejectCode == "R_OVERFLOW");
    CHECK(post == st);
}

TEST_CASE("opaque transitions cannot be interpreted") {
    Contract c = testutil::parse_ok(R"(
contract Opaque {
    state initial A;
    var public uint v = 0;
    transition bump {
        from A;
        to A;
        do {
            v += 1;
        }
    }
    transition halved {
        from A;
        to A;
        guard v / 2 == 0;
    }
}
)");
    AugmentedContract aug = apply_plugins(c, {});
    InstanceState st = init_instance(aug, kCt, kAlice);
    CHECK(tool_error_code([&] {
              invoke(aug, st, testutil::call("bump", kCt + 1, kAlice));
          }) == "E_UNINTERPRETABLE");
    CHECK(tool_error_code([&] {
              invoke(aug, st, testutil::call("halved", kCt + 1, kAlice));
          }) == "E_UNINTERPRETABLE");
}
