#include "doctest.h"

#include "ptasynth/error.hpp"
#include "ptasynth/metrics.hpp"
#include "ptasynth/parser.hpp"

using namespace ptasynth;

namespace {

const char* kGate =
    "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\n"
    "edge q0 -> q1 : x >= 2 & x <= p ; a ;\n";

}  // namespace

TEST_CASE("parse_model rewrites >= into normal form") {
    Pta a = parse_model(kGate);
    CHECK(a.locations.size() == 2);
    REQUIRE(a.transitions.size() == 1);
    const auto& g = a.transitions[0].guard.atoms;
    REQUIRE(g.size() == 2);
    CHECK(g[0] == AtomicConstraint::lower(0, Rel::Le, Expression::constant(-2)));
    CHECK(g[1] == AtomicConstraint::upper(0, Rel::Le, Expression::parameter(0)));
}

TEST_CASE("parse_model splits equality") {
    Pta a = parse_model("clocks: x\nparams:\nloc q0 init inv: true\nedge q0 -> q0 : x = 3 ; a ;\n");
    const auto& g = a.transitions[0].guard.atoms;
    REQUIRE(g.size() == 2);
    CHECK(g[0].plus == ClockId(0));
    CHECK(g[0].rhs == Expression::constant(3));
    CHECK(g[1].minus == ClockId(0));
    CHECK(g[1].rhs == Expression::constant(-3));
    CHECK(g[0].origin == AtomOrigin::EqualitySplit);
}

TEST_CASE("parse_model reports undeclared locations") {
    CHECK_THROWS_AS(parse_model("clocks: x\nparams: p\nloc q0 init inv: true\nedge q0 -> q2 : true ; a ;\n"),
                    UndeclaredError);
    try {
        parse_model("clocks: x\nparams: p\nloc q0 init inv: y <= 2\n");
        FAIL("expected an error");
    } catch (const UndeclaredError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 18);
    }
}

TEST_CASE("parse_property") {
    Pta a = parse_model("clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\n");
    auto ef = parse_property("EF (q1 && x <= p)", a);
    CHECK(ef.quantifier == Quantifier::ExistsEventually);
    CHECK(ef.phi.kind == StateProperty::Kind::And);
    CHECK(ef.phi.children[0] == StateProperty::at(1));
    auto ag = parse_property("AG (!q1)", a);
    CHECK(ag.quantifier == Quantifier::ForallAlways);
    CHECK(ag.phi == StateProperty::negation(StateProperty::at(1)));
    auto d = parse_property("EF (x - y < p)", a);
    REQUIRE(d.phi.kind == StateProperty::Kind::Atom);
    CHECK(d.phi.atom == AtomicConstraint::diagonal(0, 1, Rel::Lt, Expression::parameter(0)));
}

TEST_CASE("expressions") {
    Pta a = parse_model("clocks: x\nparams: p, q\nloc q0 init inv: true\n");
    ParameterValuation g{{0, 3}};
    CHECK(parse_expression("2p-5", a).evaluate(g) == ExtRational(1));
    CHECK(parse_expression("inf", a).evaluate(g).is_infinite());
    ParameterValuation g2{{0, 2}, {1, 3}};
    Expression pq = parse_expression("p*q + 1", a);
    CHECK(pq.kind() == ExpressionKind::Polynomial);
    CHECK(pq.evaluate(g2) == ExtRational(7));
    CHECK_THROWS_AS(pq.evaluate(g), PreconditionError);
    CHECK(parse_expression("p^2-1", a).render(a.params) == "p^2-1");
}

TEST_CASE("max_c and thresholds") {
    Pta a = parse_model(
        "clocks: x\nparams: p\nloc q0 init inv: x <= p+3\n"
        "edge q0 -> q0 : x <= 2p-5 ; a ;\nedge q0 -> q0 : x < 7 ; b ;\n");
    CHECK(max_c(a) == 7);
    Pta empty = parse_model("clocks: x\nparams: p\nloc q0 init inv: true\n");
    CHECK(max_c(empty) == 0);
    SystemProperty psi = parse_property("EF q0", empty);
    auto t = thresholds(empty, psi);
    CHECK(t.s0 == 1);
    CHECK(t.s1 == 4);
    Pta only_p = parse_model("clocks: x\nparams: p\nloc q0 init inv: x <= p\n");
    CHECK(max_c(only_p) == 0);
    Pta poly = parse_model("clocks: x\nparams: p\nloc q0 init inv: x <= p^2\n");
    CHECK_THROWS_AS(max_c(poly), UnsupportedError);
}

TEST_CASE("render_model round trip on a hand example") {
    Pta a = parse_model(
        "clocks: x, y\nparams: p, q\ndomain: time=nat param=int\n"
        "loc q0 init inv: x - y <= p & y < 3\nloc q1 inv: true\n"
        "edge q0 -> q1 : x = 2q & -y < -1 ; go ; reset x:=0, y:=4\n");
    CHECK(parse_model(render_model(a)) == a);
}
