#include "doctest.h"

#include "ptasynth/parser.hpp"
#include "ptasynth/transforms.hpp"

using namespace ptasynth;

namespace {

const char* kThree =
    "clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nloc q2 inv: true\n"
    "edge q0 -> q1 : x <= p ; a ;\nedge q1 -> q2 : true ; b ;\n";

std::string show(const Pta& a, const StateProperty& phi) { return phi.render(a); }

std::string show(const Pta& a, const SimpleConstraint& g) { return g.render(a.clocks, a.params); }

}  // namespace

TEST_CASE("encode_property") {
    Pta a = parse_model(kThree);
    auto phi = [&](const char* s) { return parse_property(std::string("EF ") + s, a).phi; };
    CHECK(simplify(encode_property(phi("q1"), 1)) == StateProperty::truth(true));
    CHECK(simplify(encode_property(phi("q1 & x <= p"), 2)) == StateProperty::truth(false));
    CHECK(show(a, encode_property(phi("q1 & x <= p"), 2)) == "(false && x <= p)");
    CHECK(simplify(encode_property(phi("!q1"), 1)) == StateProperty::truth(false));
}

TEST_CASE("negation_normal_form") {
    Pta a = parse_model(kThree);
    auto phi = [&](const char* s) { return parse_property(std::string("EF ") + s, a).phi; };
    CHECK(show(a, negation_normal_form(phi("!(x <= p)"))) == "-x < -p");
    CHECK(negation_normal_form(phi("!(q1 & q2)")) ==
          StateProperty::disjunction(StateProperty::negation(StateProperty::at(1)),
                                     StateProperty::negation(StateProperty::at(2))));
    CHECK(negation_normal_form(phi("!!(x <= p)")) == phi("x <= p"));
}

TEST_CASE("alpha_transform") {
    Pta a = parse_model(kThree);
    SyntacticRun tau = make_run(a, {0});
    auto phi = [&](const char* s) { return parse_property(std::string("EF ") + s, a).phi; };
    auto one = alpha_transform(tau, phi("q1"));
    REQUIRE(one.size() == 1);
    CHECK(one[0].final_guard_extra.is_true());
    CHECK(one[0].observed().length() == 2);
    CHECK(alpha_transform(tau, phi("q2")).empty());
    auto split = alpha_transform(tau, phi("x <= p | x >= 3"));
    REQUIRE(split.size() == 2);
    CHECK(show(a, split[0].final_guard_extra) == "x <= p");
    CHECK(show(a, split[1].final_guard_extra) == "-x <= -3");
}

TEST_CASE("beta_transform folds invariants") {
    Pta a = parse_model(
        "clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: y <= 3\n"
        "edge q0 -> q1 : x <= p ; a ; reset y := 0\n");
    GuardOnlyRun g = beta_transform(make_run(a, {0}));
    CHECK(show(a, g.run.steps[0].guard) == "x <= p");
    CHECK(g.initial_condition.is_true());
    for (const auto& inv : g.run.invariants) CHECK(inv.is_true());

    Pta b = parse_model(
        "clocks: x\nparams: p\nloc q0 init inv: x <= p\nloc q1 inv: true\nedge q0 -> q1 : x >= 1 ; a ;\n");
    GuardOnlyRun h = beta_transform(make_run(b, {0}));
    CHECK(show(b, h.run.steps[0].guard) == "-x <= -1 & x <= p");
    CHECK(show(b, h.initial_condition) == "x <= p");

    Pta c = parse_model(
        "clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: x - y <= p\n"
        "edge q0 -> q1 : true ; a ; reset x := 2\n");
    GuardOnlyRun k = beta_transform(make_run(c, {0}));
    CHECK(show(c, k.run.steps[0].guard) == "-y <= p-2");
}

TEST_CASE("substitute_updates on a clock-free result") {
    Pta a = parse_model(kThree);
    auto atom = AtomicConstraint::upper(0, Rel::Le, parse_expression("3", a));
    auto fixed = substitute_updates(atom, {Update{0, 5}});
    REQUIRE(fixed);
    CHECK(fixed->is_clock_free());
    CHECK(!fixed->holds(ClockValuation{0, 0}, {}));
}

TEST_CASE("classify_lu") {
    Pta lu = parse_model(
        "clocks: x, y\nparams: p1, p2\nloc q0 init inv: true\nloc q1 inv: true\n"
        "edge q0 -> q1 : x <= p1 + 3 & y >= p2 ; a ;\n");
    LuClassification c = classify_lu(lu);
    CHECK(c.is_lu);
    CHECK(c.upper == std::set<ParamId>{0});
    CHECK(c.lower == std::set<ParamId>{1});
    Pta both = parse_model(
        "clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x <= p & y >= p ; a ;\n");
    LuClassification d = classify_lu(both);
    CHECK(!d.is_lu);
    CHECK(d.both == std::set<ParamId>{0});
    CHECK(classify_lu(parse_model("clocks: x\nparams:\nloc q0 init inv: x <= 1\n")).is_lu);
}
