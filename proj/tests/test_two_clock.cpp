#include "doctest.h"

#include "ptasynth/error.hpp"
#include "ptasynth/harness.hpp"
#include "ptasynth/metrics.hpp"
#include "ptasynth/parser.hpp"
#include "ptasynth/semantics.hpp"
#include "ptasynth/two_clock.hpp"

using namespace ptasynth;

namespace {

const char* kParity =
    "clocks: x, y\nparams: p\nloc q0 init inv: x <= 2\nloc q1 inv: true\n"
    "edge q0 -> q0 : x = 2 ; t ; reset x := 0\nedge q0 -> q1 : y >= p & y <= p & x = 1 ; a ;\n";

const char* kMod3 =
    "clocks: x, y\nparams: p\nloc q0 init inv: x <= 3\nloc q1 inv: true\n"
    "edge q0 -> q0 : x = 3 ; t ; reset x := 0\nedge q0 -> q1 : y >= p & y <= p & x = 0 ; a ;\n";

// p loops of edge 0 (delay 2) then edge 1 after one more time unit.
ConcreteRun parity_run(long loops) {
    ConcreteRun xi;
    for (long k = 0; k < loops; ++k) xi.steps.push_back(ConcreteStep{Rational(2), 0});
    xi.steps.push_back(ConcreteStep{Rational(1), 1});
    return xi;
}

// Verdicts recomputed point by point.
std::vector<bool> sweep(const TwoOnePta& two, const SystemProperty& psi, long hi) {
    std::vector<bool> v;
    for (long p = 0; p <= hi; ++p) v.push_back(satisfies(two.pta, ParamPoint(ParameterValuation{{0, Rational(p)}}), psi));
    return v;
}

}  // namespace

TEST_CASE("two_one_violations") {
    Pta ok = parse_model(kParity);
    CHECK(two_one_violations(ok).empty());
    Pta two_params = parse_model("clocks: x\nparams: p, r\nloc q0 init inv: x <= p & x <= r\n");
    CHECK(!two_one_violations(two_params).empty());
    Pta offset = parse_model("clocks: x\nparams: p\nloc q0 init inv: x <= p + 1\n");
    CHECK(two_one_violations(offset).size() == 1);
    Pta three = parse_model("clocks: x, y, z\nparams: p\nloc q0 init inv: x <= p & y <= p & z <= p\n");
    CHECK(!two_one_violations(three).empty());
    CHECK_THROWS_AS(validate_two_one(three), UnsupportedError);
    TwoOnePta two = validate_two_one(ok);
    CHECK(two.pta.time_domain == TimeDomain::Nat);
    CHECK(two.pta.param_domain == ParamDomain::Nat);
    CHECK(two.pta.clocks[two.x] == "y");
    REQUIRE(two.y);
    CHECK(two.pta.clocks[*two.y] == "x");
}

TEST_CASE("view_run rejects a run that does not replay") {
    TwoOnePta two = validate_two_one(parse_model(kParity));
    ParameterValuation g{{0, Rational(5)}};
    RunView v = view_run(two, g, parity_run(2));
    CHECK(v.length() == 3);
    CHECK_THROWS_AS(view_run(two, ParameterValuation{{0, Rational(6)}}, parity_run(2)), PreconditionError);
}

TEST_CASE("structural finders on a long parity run") {
    Pta a = parse_model(kParity);
    SystemProperty psi = parse_property("EF q1", a);
    TwoOnePta two = validate_two_one(a, &psi);
    Thresholds t = thresholds(two.pta, psi);
    CHECK(t.s0 == 9);
    CHECK(t.s1 == 36);
    ParameterValuation g{{0, Rational(39)}};
    RunView v = view_run(two, g, parity_run(19));

    REQUIRE(oneP3_hypothesis(two, v, t, false));
    auto w3 = find_oneP3_indices(two, v, t);
    REQUIRE(w3);
    CHECK(recheck_oneP3(two, v, t, *w3, false).empty());

    PigeonholeHypothesis h = pigeonhole_hypothesis(two, g, v, t);
    CHECK(h.holds());
    auto w4 = find_pigeonhole_pair(two, v);
    REQUIRE(w4);
    CHECK(w4->i >= 1);
    CHECK(recheck_pigeonhole(two, v, *w4).empty());

    RunView short_view = view_run(two, ParameterValuation{{0, Rational(5)}}, parity_run(2));
    CHECK(!oneP3_hypothesis(two, short_view, t, false));
    CHECK(!pigeonhole_hypothesis(two, ParameterValuation{{0, Rational(5)}}, short_view, t).holds());
}

TEST_CASE("generated lemma instances yield re-validating witnesses") {
    for (LemmaKind k : {LemmaKind::OneP3, LemmaKind::OneP5, LemmaKind::OneP6, LemmaKind::OneP4}) {
        SuiteResult r = suite_structural(7, k, 25);
        INFO(render_suite(r));
        CHECK(r.ok());
        CHECK(r.cases == 25);
    }
}

TEST_CASE("periodicity_probe agrees with a direct sweep") {
    for (const char* text : {kParity, kMod3}) {
        Pta a = parse_model(text);
        SystemProperty psi = parse_property("EF q1", a);
        TwoOnePta two = validate_two_one(a, &psi);
        Thresholds t = thresholds(two.pta, psi);
        PeriodicityReport r = periodicity_probe(two, psi, 3);
        CHECK(r.horizon == t.s1 + 3 * t.s0);
        long hi = r.horizon.get_si();
        std::vector<bool> direct = sweep(two, psi, hi);
        CHECK(r.verdicts == direct);
        REQUIRE(r.t1);
        REQUIRE(r.period);
        CHECK(*r.t1 >= t.s1);
        CHECK(*r.t1 <= t.s1 + t.s0);
        CHECK(*r.period <= t.s0);
        long t1 = r.t1->get_si(), c = r.period->get_si();
        for (long p = t1; p + c <= hi; ++p) CHECK(direct[p] == direct[p + c]);
    }
    Pta parity = parse_model(kParity);
    SystemProperty psi = parse_property("EF q1", parity);
    CHECK(*periodicity_probe(validate_two_one(parity, &psi), psi, 3).period == 2);
    Pta mod3 = parse_model(kMod3);
    CHECK(*periodicity_probe(validate_two_one(mod3, &psi), psi, 3).period == 3);
}

TEST_CASE("no_reset_threshold_check") {
    Pta a = parse_model(
        "clocks: x, y\nparams: p\nloc q0 init inv: y <= p\nloc q1 inv: true\nedge q0 -> q1 : y >= 2 ; a ;\n");
    SystemProperty psi = parse_property("EF q1", a);
    TwoOnePta two = validate_two_one(a, &psi);
    NoResetReport r = no_reset_threshold_check(two, make_run(two.pta, {0}), psi);
    CHECK(r.premise_ok);
    CHECK(r.all_equal);
    CHECK(r.verdicts.size() == 4);
    for (const auto& [T, v] : r.verdicts) CHECK(v);

    Pta diag = parse_model(
        "clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : y - x >= p ; a ;\n");
    SystemProperty psi2 = parse_property("EF q1", diag);
    TwoOnePta two2 = validate_two_one(diag, &psi2);
    CHECK(!no_reset_threshold_check(two2, make_run(two2.pta, {0}), psi2).premise_ok);
}
