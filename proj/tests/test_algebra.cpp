#include "doctest.h"

#include "ptasynth/decomposition.hpp"

using namespace ptasynth;

TEST_CASE("isolate_real_roots") {
    auto r = isolate_real_roots(UPoly({-4, 0, 1}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].is_rational());
    CHECK(r[0].rational() == -2);
    CHECK(r[1].rational() == 2);
    CHECK(isolate_real_roots(UPoly({1, 0, 1})).empty());
    auto s = isolate_real_roots(UPoly({-2, 0, 1}));
    REQUIRE(s.size() == 2);
    CHECK_FALSE(s[0].is_rational());
    CHECK(s[0].compare(Rational(-1)) < 0);
    CHECK(s[0].compare(Rational(-2)) > 0);
    CHECK(s[1].sign_of(UPoly({-2, 0, 1})) == 0);
    CHECK(s[1].sign_of(UPoly({-1, 1})) > 0);
    auto third = isolate_real_roots(UPoly({-1, 3}));
    CHECK(third[0].rational() == Rational(1, 3));
}

TEST_CASE("decompose_1d") {
    auto cells = decompose_1d({UPoly({-2, 1}), UPoly({-5, 1})});
    REQUIRE(cells.size() == 5);
    std::vector<Rational> want{1, 2, Rational(7, 2), 5, 6};
    for (std::size_t i = 0; i < 5; ++i) CHECK(cells[i].sample.rational()->at(0) == want[i]);
    auto none = decompose_1d({});
    REQUIRE(none.size() == 1);
    CHECK(none[0].sample.rational()->at(0) == 0);
    auto sq = decompose_1d({UPoly({-2, 0, 1})});
    REQUIRE(sq.size() == 5);
    CHECK(sq[2].signs[0] == -1);
    CHECK(sq[1].signs[0] == 0);
}

TEST_CASE("project_clock") {
    // x - 2p
    BPoly f({UPoly({0, -2}), UPoly({1})});
    CHECK(project_clock({f}).empty());
    // p x - 1
    BPoly g({UPoly({-1}), UPoly({0, 1})});
    auto pg = project_clock({g});
    REQUIRE(pg.size() == 1);
    CHECK(pg[0] == UPoly({0, 1}));
    // x^2 - p
    BPoly h({UPoly({0, -1}), UPoly(), UPoly({1})});
    auto ph = project_clock({h});
    REQUIRE(ph.size() == 1);
    CHECK(ph[0] == UPoly({0, 1}));
}

TEST_CASE("decompose_linear") {
    Expression p = Expression::parameter(0), q = Expression::parameter(1);
    auto one = decompose_linear({p - Expression::constant(2)}, 1);
    REQUIRE(one.size() == 3);
    CHECK(one[0].sample.rational()->at(0) == 0);
    CHECK(one[1].sample.rational()->at(0) == 2);
    CHECK(one[2].sample.rational()->at(0) == 3);
    auto two = decompose_linear({p - q}, 2);
    REQUIRE(two.size() == 3);
    for (const auto& c : two) CHECK(c.contains(c.sample));
    auto three = decompose_linear({p, q, p + q - Expression::constant(2)}, 2);
    for (const auto& c : three) CHECK(c.contains(c.sample));
}

TEST_CASE("slack_form and integer_point") {
    Expression p1 = Expression::parameter(0), p2 = Expression::parameter(1);
    auto [eqs, n] = slack_form({{p1 * 2 + p2 * 3 - Expression::constant(5), CellRel::Ge}}, 2);
    CHECK(n == 1);
    CHECK(eqs[0].expr == p1 * 2 + p2 * 3 - Expression::parameter(2) - Expression::constant(5));
    auto ip = integer_point({{p1 * 2 + p2 * 3 - Expression::constant(5), CellRel::Eq},
                             {p1, CellRel::Ge},
                             {p2, CellRel::Ge}},
                            {{0, 5}, {0, 5}});
    REQUIRE(ip);
    CHECK((*ip)[0] == 1);
    CHECK((*ip)[1] == 1);
    CHECK_FALSE(integer_point({{p1 * 2 - Expression::constant(1), CellRel::Eq}}, {{-10, 10}}));
}
