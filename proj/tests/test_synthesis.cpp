#include <set>
#include "doctest.h"

#include "ptasynth/error.hpp"
#include "ptasynth/parser.hpp"
#include "ptasynth/semantics.hpp"
#include "ptasynth/synthesis.hpp"

using namespace ptasynth;

namespace {

const char* kGate =
    "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\n"
    "edge q0 -> q1 : x >= 2 & x <= p ; a ;\n";

ParamPoint at_p(long v) { return ParamPoint(ParameterValuation{{0, Rational(v)}}); }

void check_against_grid(const Pta& a, const SystemProperty& psi, long lo, long hi) {
    FeasibleRegion r = synthesize(a, psi);
    auto grid = integer_grid(a.params.size(), lo, hi);
    auto oracle = grid_oracle(a, psi, grid);
    for (const auto& [g, v] : oracle) {
        INFO(ParamPoint(g).render(a.params));
        CHECK(region_query(r, ParamPoint(g)) == v);
    }
}

}  // namespace

TEST_CASE("collect_constraint_polynomials") {
    Pta a = parse_model(kGate);
    auto polys = collect_constraint_polynomials(a, parse_property("EF q1", a));
    REQUIRE(polys.size() == 2);
    std::set<std::string> shown;
    for (const auto& c : polys) shown.insert(c.render(a));
    CHECK(shown == std::set<std::string>{"x-p", "-x+2"});
    Pta sq = parse_model("clocks: x\nparams: p\nloc q0 init inv: true\n");
    auto sp = collect_constraint_polynomials(sq, parse_property("EF x <= p^2", sq));
    REQUIRE(sp.size() == 1);
    CHECK(sp[0].render(sq) == "x-p^2");
    CHECK(collect_constraint_polynomials(sq, parse_property("EF q0", sq)).empty());
}

TEST_CASE("synthesize on the gate model") {
    Pta a = parse_model(kGate);
    FeasibleRegion ef = synthesize(a, parse_property("EF q1", a));
    CHECK(ef.method == "cad1");
    CHECK(!ef.empty());
    CHECK(region_query(ef, at_p(3)));
    CHECK(!region_query(ef, at_p(0)));
    CHECK(region_query(ef, at_p(2)));
    CHECK(!region_query(ef, ParamPoint(ParameterValuation{{0, Rational(3, 2)}})));
    CHECK(region_query(ef, ParamPoint(ParameterValuation{{0, Rational(1000)}})));
    CHECK(!region_query(ef, at_p(-7)));
    const RegionCell* two = locate(ef, at_p(2));
    REQUIRE(two);
    CHECK(two->cell.kind == CellKind::Point1D);

    FeasibleRegion ag = synthesize(a, parse_property("AG !q1", a));
    REQUIRE(ag.cells.size() == ef.cells.size());
    for (std::size_t i = 0; i < ef.cells.size(); ++i) CHECK(ag.cells[i].verdict == !ef.cells[i].verdict);
}

TEST_CASE("synthesize without parameters") {
    Pta a = parse_model("clocks: x\nparams:\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 1 ; a ;\n");
    FeasibleRegion r = synthesize(a, parse_property("EF q1", a));
    REQUIRE(r.cells.size() == 1);
    CHECK(r.cells[0].verdict);
}

TEST_CASE("synthesize rejects unsupported fragments") {
    Pta two = parse_model("clocks: x, y\nparams: p\nloc q0 init inv: x <= p & y <= 2\n");
    CHECK_THROWS_AS(synthesize(two, parse_property("EF q0", two)), UnsupportedError);
    Pta poly = parse_model("clocks: x\nparams: p, r\nloc q0 init inv: x <= p*r\n");
    CHECK_THROWS_AS(synthesize(poly, parse_property("EF q0", poly)), UnsupportedError);
    Pta mixed = parse_model("clocks: x\nparams: p\ndomain: time=nat param=real\nloc q0 init inv: x <= p\n");
    CHECK_THROWS_AS(synthesize(mixed, parse_property("EF q0", mixed)), UnsupportedError);
}

TEST_CASE("synthesize with an irrational boundary") {
    Pta a = parse_model("clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\n"
                        "edge q0 -> q1 : x >= 2 & x <= p^2 ; a ;\n");
    FeasibleRegion r = synthesize(a, parse_property("EF q1", a));
    int irrational_points = 0;
    for (const auto& c : r.cells) {
        if (c.cell.kind != CellKind::Point1D || c.cell.sample.is_rational()) continue;
        ++irrational_points;
        CHECK(c.verdict);
    }
    CHECK(irrational_points == 2);
    CHECK(!region_query(r, at_p(1)));
    CHECK(region_query(r, at_p(-2)));
    CHECK(region_query(r, at_p(2)));
    CHECK(!region_query(r, ParamPoint(ParameterValuation{{0, Rational(7, 5)}})));
    CHECK(region_query(r, ParamPoint(ParameterValuation{{0, Rational(71, 50)}})));
}

TEST_CASE("synthesize agrees with the grid oracle on hand models") {
    const char* models[] = {
        // Reset loop: x is pinned to 1 and must reach p.
        "clocks: x\nparams: p\nloc q0 init inv: x <= 3\nloc q1 inv: true\n"
        "edge q0 -> q0 : x >= 1 ; a ; reset x := 1\nedge q0 -> q1 : x <= p & x >= 2 ; b ;\n",
        // Strict bounds under integer time.
        "clocks: x\nparams: p\ndomain: time=nat param=int\nloc q0 init inv: x < p\nloc q1 inv: true\n"
        "edge q0 -> q1 : x > 1 ; a ;\n",
        // Two parameters.
        "clocks: x\nparams: p, r\nloc q0 init inv: x <= p\nloc q1 inv: x <= r\nloc q2 inv: true\n"
        "edge q0 -> q1 : x >= 1 ; a ;\nedge q1 -> q2 : x >= r - 1 & x >= 2 ; b ;\n",
        // Two parameters on one guard.
        "clocks: x\nparams: p, r\nloc q0 init inv: true\nloc q1 inv: true\n"
        "edge q0 -> q1 : x > p & x <= r & x <= 4 ; a ;\n",
    };
    for (const char* text : models) {
        Pta a = parse_model(text);
        long hi = a.params.size() == 1 ? 12 : 6;
        check_against_grid(a, parse_property("EF q1", a), -5, hi);
        check_against_grid(a, parse_property("AG !q1", a), -5, hi);
    }
}

TEST_CASE("synthesize with integer parameters reports integer witnesses") {
    Pta a = parse_model("clocks: x\nparams: p\ndomain: time=dense param=int\nloc q0 init inv: true\nloc q1 inv: true\n"
                        "edge q0 -> q1 : x > 2 & x < p ; a ;\n");
    FeasibleRegion r = synthesize(a, parse_property("EF q1", a));
    for (const auto& c : r.cells)
        if (c.verdict) {
            REQUIRE(c.integer_witness);
            CHECK((*c.integer_witness)[0] >= 3);
        }
    CHECK(!region_query(r, at_p(2)));
    CHECK(region_query(r, at_p(3)));
}

TEST_CASE("enumerate_runs") {
    Pta gate = parse_model(kGate);
    CHECK(enumerate_runs(gate, 1).size() == 2);
    Pta loop = parse_model("clocks: x\nparams:\nloc q0 init inv: true\nedge q0 -> q0 : true ; a ;\n");
    CHECK(enumerate_runs(loop, 3).size() == 4);
    Pta par = parse_model("clocks: x\nparams:\nloc q0 init inv: true\nloc q1 inv: true\n"
                          "edge q0 -> q1 : x <= 1 ; a ;\nedge q0 -> q1 : x >= 2 ; b ;\n");
    auto runs = enumerate_runs(par, 1);
    REQUIRE(runs.size() == 3);
    CHECK(runs[0].steps.empty());
    CHECK(runs[1].steps[0].transition == 0);
    CHECK(runs[2].steps[0].transition == 1);
}

TEST_CASE("run_region") {
    Pta gate = parse_model(kGate);
    auto runs = enumerate_runs(gate, 1);
    FeasibleRegion r = run_region(gate, runs[1], StateProperty::truth(true));
    CHECK(region_query(r, at_p(2)));
    CHECK(region_query(r, at_p(5)));
    CHECK(!region_query(r, ParamPoint(ParameterValuation{{0, Rational(19, 10)}})));

    FeasibleRegion eps = run_region(gate, runs[0], StateProperty::at(0));
    for (const auto& c : eps.cells) CHECK(c.verdict);

    Pta chain = parse_model("clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nloc q2 inv: true\n"
                            "edge q0 -> q1 : x >= 3 ; a ;\nedge q1 -> q2 : x <= p ; b ;\n");
    FeasibleRegion cr = run_region(chain, make_run(chain, {0, 1}), StateProperty::truth(true));
    CHECK(!region_query(cr, ParamPoint(ParameterValuation{{0, Rational(29, 10)}})));
    CHECK(region_query(cr, at_p(3)));
    CHECK(region_query(cr, at_p(8)));
}

TEST_CASE("run_region union under-approximates synthesize") {
    Pta a = parse_model("clocks: x\nparams: p\nloc q0 init inv: x <= 4\nloc q1 inv: true\nloc q2 inv: true\n"
                        "edge q0 -> q1 : x >= p ; a ; reset x := 0\nedge q1 -> q2 : x <= p - 1 ; b ;\n"
                        "edge q0 -> q2 : x >= 2 & x <= p ; c ;\n");
    auto psi = parse_property("EF q2", a);
    FeasibleRegion full = synthesize(a, psi);
    for (long k = 0; k <= 2; ++k) {
        auto runs = enumerate_runs(a, static_cast<std::size_t>(k));
        for (const auto& g : integer_grid(1, -3, 8)) {
            bool any = false;
            for (const auto& t : runs)
                if (region_query(run_region(a, t, psi.phi), ParamPoint(g))) any = true;
            if (any) CHECK(region_query(full, ParamPoint(g)));
            if (k == 2) CHECK(any == region_query(full, ParamPoint(g)));
        }
    }
}
