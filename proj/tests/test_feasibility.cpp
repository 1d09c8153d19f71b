#include "doctest.h"

#include "ptasynth/feasibility.hpp"
#include "ptasynth/parser.hpp"
#include "ptasynth/semantics.hpp"

using namespace ptasynth;

namespace {

ParameterValuation p_is(long v) { return {{0, Rational(v)}}; }

struct Chain {
    Pta pta;
    GuardOnlyRun run;
};

// Locations q0..ql with invariant true and one edge per guard.
Chain chain(const std::vector<std::string>& guards, const std::vector<std::string>& resets = {}) {
    std::string text = "clocks: x\nparams: p\n";
    for (std::size_t i = 0; i <= guards.size(); ++i)
        text += "loc q" + std::to_string(i) + (i == 0 ? " init" : "") + " inv: true\n";
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < guards.size(); ++i) {
        text += "edge q" + std::to_string(i) + " -> q" + std::to_string(i + 1) + " : " + guards[i] + " ; a ;";
        if (i < resets.size() && !resets[i].empty()) text += " reset " + resets[i];
        text += "\n";
        idx.push_back(i);
    }
    Chain c{parse_model(text), {}};
    c.run = beta_transform(make_run(c.pta, idx));
    return c;
}

SimpleConstraint guard(const Chain& c, std::size_t i) { return c.run.run.steps.at(i).guard; }

// Independent oracle: the end of the chain is reachable with integer time.
bool discrete_oracle(const Chain& c, const ParameterValuation& g) {
    Pta a = c.pta;
    a.time_domain = TimeDomain::Nat;
    return reach_discrete(a, g, StateProperty::at(a.locations.size() - 1)).reachable;
}

}  // namespace

TEST_CASE("split_guard") {
    Chain c = chain({"x >= 2 & x <= p", "true", "x < p & x <= 7"});
    SplitGuard s = split_guard(guard(c, 0));
    CHECK(s.lb.atoms.size() == 1);
    CHECK(s.up.atoms.size() == 1);
    SplitGuard t = split_guard(guard(c, 1));
    CHECK(t.lb.is_true());
    CHECK(t.up.is_true());
    SplitGuard u = split_guard(guard(c, 2));
    CHECK(u.lb.is_true());
    CHECK(u.up.atoms.size() == 2);
}

TEST_CASE("linf and usup") {
    Chain c = chain({"x >= 3 & x > 5", "x >= -2", "x <= 4 & x < 2", "x < 0", "true"});
    Bound l = linf(split_guard(guard(c, 0)).lb, {});
    CHECK(l.value == ExtRational(5));
    CHECK(l.open);
    Bound z = linf(split_guard(guard(c, 1)).lb, {});
    CHECK(z.value == ExtRational(0));
    CHECK(!z.open);
    Bound u = usup(split_guard(guard(c, 2)).up, {});
    CHECK(u.value == ExtRational(2));
    CHECK(u.open);
    Bound zero = usup(split_guard(guard(c, 3)).up, {});
    CHECK(zero.value == ExtRational(0));
    CHECK(usup(split_guard(guard(c, 4)).up, {}).value.is_infinite());
}

TEST_CASE("phi_satisfiable") {
    Chain c = chain({"x >= 3", "x <= 2"});
    CHECK(!phi_satisfiable(1, 2, c.run, {}));
    Chain d = chain({"x > 1", "x < 2"});
    CHECK(phi_satisfiable(1, 2, d.run, {}, TimeDomain::Dense));
    CHECK(!phi_satisfiable(1, 2, d.run, {}, TimeDomain::Nat));
    Chain e = chain({"true", "true"});
    CHECK(phi_satisfiable(1, 2, e.run, {}));
}

TEST_CASE("feasible_no_reset") {
    Chain mid = chain({"x >= 2 & x <= 6"});
    FeasibilityResult r = feasible_no_reset(mid.run, p_is(0));
    CHECK(r.feasible);
    REQUIRE(r.clock_values.size() == 1);
    CHECK(r.clock_values[0] == 4);
    REQUIRE(r.witness);
    CHECK(replay_run(mid.pta, p_is(0), *r.witness));

    Chain wait = chain({"x <= p", "x >= 3"});
    FeasibilityResult w = feasible_no_reset(wait.run, p_is(2));
    CHECK(w.feasible);
    CHECK(w.feasible == discrete_oracle(wait, p_is(2)));
    REQUIRE(w.witness);
    CHECK(replay_run(wait.pta, p_is(2), *w.witness));

    Chain late = chain({"x >= 3", "x <= p"});
    FeasibilityResult f = feasible_no_reset(late.run, p_is(2));
    CHECK(!f.feasible);
    CHECK(!discrete_oracle(late, p_is(2)));
    REQUIRE(f.failing_pair);
    CHECK(*f.failing_pair == std::pair<std::size_t, std::size_t>{1, 2});
}

TEST_CASE("feasible_with_reset") {
    Chain a = chain({"x <= 1", "x >= 2 & x <= 3"}, {"x := 0"});
    for (long p = -3; p <= 5; ++p) {
        FeasibilityResult r = feasible_with_reset(a.run, p_is(p));
        CHECK(r.feasible);
        REQUIRE(r.witness);
        CHECK(replay_run(a.pta, p_is(p), *r.witness));
    }
    Chain b = chain({"x >= 5", "x <= p"}, {"x := 0"});
    FeasibilityResult rb = feasible_with_reset(b.run, p_is(0));
    CHECK(rb.feasible);
    CHECK(discrete_oracle(b, p_is(0)));
    Chain c = chain({"true", "x <= 3", "x >= 4 & x <= 4"}, {"x := 4"});
    FeasibilityResult rc = feasible_with_reset(c.run, p_is(0));
    CHECK(!rc.feasible);
    CHECK(!discrete_oracle(c, p_is(0)));
}

TEST_CASE("feasible_with_reset agrees with discrete reachability on a grid") {
    const std::vector<std::vector<std::string>> guards = {
        {"x >= 2 & x <= p"},
        {"x <= p", "x >= 3 & x <= 4"},
        {"x >= 1", "x <= p", "x >= 2 & x <= 2 * p"},
        {"x > 1 & x < p", "x <= 3"},
    };
    const std::vector<std::vector<std::string>> resets = {{}, {"x := 0"}, {"", "x := 1"}, {"x := 2"}};
    for (std::size_t k = 0; k < guards.size(); ++k) {
        Chain c = chain(guards[k], resets[k]);
        c.pta.time_domain = TimeDomain::Nat;
        for (long p = -2; p <= 8; ++p) {
            INFO("model ", k, " p=", p);
            FeasibilityResult r = feasible_with_reset(c.run, p_is(p), TimeDomain::Nat);
            CHECK(r.feasible == discrete_oracle(c, p_is(p)));
            if (r.feasible) {
                REQUIRE(r.witness);
                CHECK(replay_run(c.pta, p_is(p), *r.witness));
            }
        }
    }
}
