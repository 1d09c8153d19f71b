#include "doctest.h"

#include "ptasynth/parser.hpp"
#include "ptasynth/semantics.hpp"

using namespace ptasynth;

namespace {

const char* kGate =
    "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\n"
    "edge q0 -> q1 : x >= 2 & x <= p ; a ;\n";

ParameterValuation p_is(long v) { return {{0, Rational(v)}}; }

ConcreteRun one_step(long delay) { return ConcreteRun{{ConcreteStep{Rational(delay), 0}}, 0}; }

// Independent oracle: integer delays 0..bound on every step of a fixed-length path.
bool brute_force(const Pta& a, const ParameterValuation& g, LocationId goal, long bound, std::size_t depth) {
    std::vector<ConcreteRun> frontier{ConcreteRun{}};
    for (std::size_t d = 0; d <= depth; ++d) {
        std::vector<ConcreteRun> next;
        for (const auto& xi : frontier) {
            RunTrace t = trace_run(a, g, xi);
            if (!t.ok) continue;
            if (t.locations.back() == goal) return true;
            for (std::size_t e = 0; e < a.transitions.size(); ++e) {
                if (a.transitions[e].source != t.locations.back()) continue;
                for (long w = 0; w <= bound; ++w) {
                    ConcreteRun ext = xi;
                    ext.steps.push_back(ConcreteStep{Rational(w), e});
                    next.push_back(ext);
                }
            }
        }
        frontier = std::move(next);
    }
    return false;
}

}  // namespace

TEST_CASE("replay_run") {
    Pta a = parse_model(kGate);
    CHECK(replay_run(a, p_is(5), one_step(3)));
    CHECK(!replay_run(a, p_is(5), one_step(1)));
    Pta inv = parse_model(
        "clocks: x\nparams: p\nloc q0 init inv: x <= p\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 ; a ;\n");
    std::string why;
    CHECK(!replay_run(inv, p_is(1), one_step(2), &why));
    CHECK(!why.empty());
    RunTrace t = trace_run(a, p_is(5), ConcreteRun{{ConcreteStep{Rational(3), 0}}, Rational(1, 2)});
    REQUIRE(t.ok);
    CHECK(t.final_valuation[0] == Rational(7, 2));
}

TEST_CASE("reach_discrete on the gate model") {
    Pta a = parse_model(kGate);
    a.time_domain = TimeDomain::Nat;
    auto q1 = StateProperty::at(1);
    ReachabilityVerdict v = reach_discrete(a, p_is(5), q1);
    CHECK(v.reachable);
    REQUIRE(v.witness);
    REQUIRE(v.witness->steps.size() == 1);
    CHECK(v.witness->steps[0].delay >= 2);
    CHECK(v.witness->steps[0].delay <= 5);
    CHECK(replay_run(a, p_is(5), *v.witness));
    CHECK(!reach_discrete(a, p_is(1), q1).reachable);
    ReachabilityVerdict init = reach_discrete(a, p_is(1), StateProperty::at(0));
    CHECK(init.reachable);
    CHECK(init.witness->steps.empty());
}

TEST_CASE("reach_dense_one_clock") {
    Pta a = parse_model(kGate);
    ReachabilityVerdict v = reach_dense_one_clock(a, ParamPoint(p_is(2)), StateProperty::at(1));
    CHECK(v.reachable);
    REQUIRE(v.witness);
    CHECK(v.witness->steps[0].delay == 2);
    Pta a2 = a;
    a2.time_domain = TimeDomain::Nat;
    CHECK(reach_discrete(a2, p_is(2), StateProperty::at(1)).reachable);

    Pta open = parse_model(
        "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x > 2 & x < 2 ; a ;\n");
    for (long p = -2; p <= 6; ++p) CHECK(!reach_dense_one_clock(open, ParamPoint(p_is(p)), StateProperty::at(1)).reachable);

    Pta loop = parse_model(
        "clocks: x\nparams:\nloc q0 init inv: x <= 1\nloc q1 inv: true\n"
        "edge q0 -> q0 : true ; t ; reset x := 0\nedge q0 -> q1 : true ; a ;\n");
    CHECK(reach_dense_one_clock(loop, ParamPoint(ParameterValuation{}), StateProperty::at(1)).reachable);

    // Strictly between two integers: only dense time reaches q1.
    Pta mid = parse_model(
        "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x > 1 & x < p ; a ;\n");
    CHECK(reach_dense_one_clock(mid, ParamPoint(p_is(2)), StateProperty::at(1)).reachable);
    Pta mid_nat = mid;
    mid_nat.time_domain = TimeDomain::Nat;
    CHECK(!reach_discrete(mid_nat, p_is(2), StateProperty::at(1)).reachable);
}

TEST_CASE("grid_oracle on the gate model") {
    Pta a = parse_model(kGate);
    auto grid = integer_grid(1, 0, 5);
    auto ef = grid_oracle(a, parse_property("EF q1", a), grid);
    auto ag = grid_oracle(a, parse_property("AG !q1", a), grid);
    const bool expected[] = {false, false, true, true, true, true};
    for (long p = 0; p <= 5; ++p) {
        CHECK(ef.at(p_is(p)) == expected[p]);
        CHECK(ag.at(p_is(p)) == !expected[p]);
    }
    Pta free = parse_model("clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 ; a ;\n");
    for (const auto& [g, v] : grid_oracle(free, parse_property("EF q1", free), grid)) CHECK(v);
}

TEST_CASE("reach_discrete agrees with brute-force delay enumeration") {
    const char* models[] = {
        kGate,
        "clocks: x, y\nparams: p\nloc q0 init inv: x <= 3\nloc q1 inv: y <= p\nloc q2 inv: true\n"
        "edge q0 -> q1 : x >= 1 ; a ; reset x := 0\nedge q1 -> q2 : x >= 2 & y >= 3 ; b ;\n",
        "clocks: x\nparams: p\nloc q0 init inv: x <= p\nloc q1 inv: true\nloc q2 inv: true\n"
        "edge q0 -> q1 : x >= 1 ; a ; reset x := 0\nedge q1 -> q2 : x = 1 ; b ;\n",
    };
    for (const char* text : models) {
        Pta a = parse_model(text);
        a.time_domain = TimeDomain::Nat;
        LocationId goal = a.locations.size() - 1;
        for (long p = 0; p <= 6; ++p) {
            INFO(text, " p=", p);
            CHECK(reach_discrete(a, p_is(p), StateProperty::at(goal)).reachable ==
                  brute_force(a, p_is(p), goal, 8, a.transitions.size()));
        }
    }
}

TEST_CASE("check_property returns a counterexample for AG") {
    Pta a = parse_model(kGate);
    bool sat = true;
    ReachabilityVerdict v = check_property(a, ParamPoint(p_is(3)), parse_property("AG !q1", a), &sat);
    CHECK(!sat);
    REQUIRE(v.witness);
    CHECK(replay_run(a, p_is(3), *v.witness));
    CHECK(satisfies(a, ParamPoint(p_is(1)), parse_property("AG !q1", a)));
}
