#include "ptasynth/decomposition.hpp"

#include "ptasynth/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ptasynth {

// ============================================================================
// Relations and cells
// ============================================================================

bool LinearRelation::holds(const ParamPoint& point) const {
    int s = point.sign(expr);
    switch (rel) {
        case CellRel::Gt: return s > 0;
        case CellRel::Ge: return s >= 0;
        case CellRel::Eq: return s == 0;
    }
    return false;
}

std::string LinearRelation::render(const std::vector<std::string>& names) const {
    Expression lhs = expr - Expression::constant(expr.constant_term());
    Integer rhs = -expr.constant_term();
    std::string op = rel == CellRel::Gt ? " > " : (rel == CellRel::Ge ? " >= " : " = ");
    return (lhs.is_zero() ? std::string("0") : lhs.render(names)) + op + to_string(rhs);
}

bool Cell::contains(const ParamPoint& point) const {
    switch (kind) {
        case CellKind::LinearSystem:
            for (const auto& r : constraints)
                if (!r.holds(point)) return false;
            return true;
        case CellKind::Point1D:
            return point.coordinate(param).compare(*lower) == 0;
        case CellKind::Interval1D: {
            AlgebraicNumber v = point.coordinate(param);
            if (lower && v.compare(*lower) <= 0) return false;
            if (upper && v.compare(*upper) >= 0) return false;
            return true;
        }
    }
    return false;
}

std::string Cell::describe(const std::vector<std::string>& names) const {
    switch (kind) {
        case CellKind::Point1D:
            return names.at(param) + " = " + lower->render();
        case CellKind::Interval1D:
            return names.at(param) + " in (" + (lower ? lower->render() : std::string("-inf")) + ", " +
                   (upper ? upper->render() : std::string("inf")) + ")";
        case CellKind::LinearSystem: {
            if (constraints.empty()) return "true";
            std::string s;
            for (std::size_t i = 0; i < constraints.size(); ++i)
                s += (i ? " & " : "") + constraints[i].render(names);
            return s;
        }
    }
    return "";
}

SignAssignment signs_at(const std::vector<UPoly>& polys, const AlgebraicNumber& alpha) {
    SignAssignment s;
    for (const auto& f : polys) s.push_back(alpha.sign_of(f));
    return s;
}

SignAssignment signs_at(const std::vector<Expression>& polys, const ParamPoint& point) {
    SignAssignment s;
    for (const auto& e : polys) s.push_back(point.sign(e));
    return s;
}

// ============================================================================
// One parameter
// ============================================================================

std::vector<UPoly> project_clock(const std::vector<BPoly>& polys) {
    std::vector<UPoly> out;
    auto add = [&](const UPoly& f) {
        if (f.degree() >= 1) out.push_back(f.square_free());
    };
    for (const auto& f : polys) {
        if (f.is_zero()) continue;
        if (f.degree_x() == 0) {
            add(f.coeffs()[0]);
            continue;
        }
        for (BPoly g = f; !g.is_zero(); g = g.reductum()) {
            add(g.leading());
            if (g.leading().is_constant()) break;
        }
        if (f.degree_x() >= 2) add(resultant_x(f, f.derivative_x()));
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            if (polys[i].degree_x() >= 1 && polys[j].degree_x() >= 1) add(resultant_x(polys[i], polys[j]));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Cell> decompose_1d(const std::vector<UPoly>& polys, ParamId param) {
    std::vector<AlgebraicNumber> roots;
    for (const auto& f : polys) {
        if (f.degree() < 1) continue;
        for (auto& r : isolate_real_roots(f)) roots.push_back(std::move(r));
    }
    std::sort(roots.begin(), roots.end(),
              [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return a.compare(b) < 0; });
    std::vector<AlgebraicNumber> distinct;
    for (auto& r : roots)
        if (distinct.empty() || distinct.back().compare(r) != 0) distinct.push_back(std::move(r));

    std::vector<Cell> cells;
    auto push = [&](CellKind kind, std::optional<AlgebraicNumber> lo, std::optional<AlgebraicNumber> hi,
                    AlgebraicNumber sample) {
        Cell c;
        c.kind = kind;
        c.param = param;
        c.lower = std::move(lo);
        c.upper = std::move(hi);
        c.signs = signs_at(polys, sample);
        c.sample = ParamPoint(param, std::move(sample));
        cells.push_back(std::move(c));
    };
    if (distinct.empty()) {
        push(CellKind::Interval1D, std::nullopt, std::nullopt, AlgebraicNumber(Rational(0)));
        return cells;
    }
    const auto& first = distinct.front();
    Rational left = first.is_rational() ? Rational(first.rational() - 1) : Rational(floor_of(first.lo()) - 1);
    push(CellKind::Interval1D, std::nullopt, first, AlgebraicNumber(left));
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        push(CellKind::Point1D, distinct[i], std::nullopt, distinct[i]);
        if (i + 1 < distinct.size()) {
            const auto& a = distinct[i];
            const auto& b = distinct[i + 1];
            Rational mid = a.is_rational() && b.is_rational() ? Rational((a.rational() + b.rational()) / 2)
                                                              : a.rational_between(b);
            push(CellKind::Interval1D, a, b, AlgebraicNumber(mid));
        }
    }
    const auto& last = distinct.back();
    Rational right = last.is_rational() ? Rational(last.rational() + 1) : Rational(ceil_of(last.hi()) + 1);
    push(CellKind::Interval1D, last, std::nullopt, AlgebraicNumber(right));
    return cells;
}

// ============================================================================
// Linear systems
// ============================================================================

namespace {

/// a . P + c rel 0
struct Row {
    std::vector<Rational> a;
    Rational c;
    CellRel rel = CellRel::Ge;
};

bool is_constant(const Row& r) {
    for (const auto& v : r.a)
        if (v != 0) return false;
    return true;
}

bool constant_holds(const Row& r) {
    switch (r.rel) {
        case CellRel::Gt: return r.c > 0;
        case CellRel::Ge: return r.c >= 0;
        case CellRel::Eq: return r.c == 0;
    }
    return false;
}

void normalize(Row& r) {
    Integer den = 1, num = 0;
    auto absorb = [&](const Rational& v) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    };
    for (const auto& v : r.a) absorb(v);
    absorb(r.c);
    for (const auto& v : r.a) {
        Rational s = v * den;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), s.get_num_mpz_t());
    }
    {
        Rational s = r.c * den;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), s.get_num_mpz_t());
    }
    if (num == 0) return;
    Rational scale(den, num);
    scale.canonicalize();
    if (r.rel == CellRel::Eq) {
        for (const auto& v : r.a) {
            if (v != 0) {
                if (v < 0) scale = -scale;
                break;
            }
        }
    }
    for (auto& v : r.a) v *= scale;
    r.c *= scale;
}

bool row_less(const Row& x, const Row& y) {
    if (x.rel != y.rel) return x.rel < y.rel;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (x.a[i] != y.a[i]) return x.a[i] < y.a[i];
    return x.c < y.c;
}

bool row_equal(const Row& x, const Row& y) { return x.rel == y.rel && x.a == y.a && x.c == y.c; }

Row to_row(const LinearRelation& r, std::size_t m) {
    if (r.expr.is_infinite() || !r.expr.is_linear())
        throw UnsupportedError("linear decomposition needs linear expressions");
    Row row;
    row.a.assign(m, Rational(0));
    for (ParamId p : r.expr.parameters()) {
        if (p >= m) throw PreconditionError("relation mentions a parameter outside the dimension");
        row.a[p] = r.expr.coefficient(p);
    }
    row.c = r.expr.constant_term();
    row.rel = r.rel;
    return row;
}

/// Gaussian elimination on the equalities (pivoting on the highest
/// variable) followed by Fourier-Motzkin on the inequalities, keeping what
/// back-substitution needs.
struct Eliminated {
    bool feasible = false;
    std::vector<std::optional<Row>> pivot;  ///< pivot[k] defines var k from vars < k
    std::vector<std::vector<Row>> at;       ///< inequalities whose last variable is k
};

Eliminated eliminate(const std::vector<Row>& input, std::size_t m) {
    Eliminated el;
    el.pivot.assign(m, std::nullopt);
    el.at.assign(m, {});
    std::vector<Row> eqs, ineqs;
    for (const auto& r : input) (r.rel == CellRel::Eq ? eqs : ineqs).push_back(r);
    for (std::size_t k = m; k-- > 0;) {
        auto it = std::find_if(eqs.begin(), eqs.end(), [&](const Row& r) { return r.a[k] != 0; });
        if (it == eqs.end()) continue;
        Row piv = *it;
        eqs.erase(it);
        auto reduce = [&](Row& r) {
            if (r.a[k] == 0) return;
            Rational f = r.a[k] / piv.a[k];
            for (std::size_t j = 0; j < m; ++j) r.a[j] -= f * piv.a[j];
            r.c -= f * piv.c;
            r.a[k] = 0;
        };
        for (auto& r : eqs) reduce(r);
        for (auto& r : ineqs) reduce(r);
        el.pivot[k] = piv;
    }
    for (const auto& r : eqs)
        if (!constant_holds(r)) return el;

    auto tidy = [](std::vector<Row>& rows) -> bool {
        std::vector<Row> kept;
        for (auto& r : rows) {
            if (is_constant(r)) {
                if (!constant_holds(r)) return false;
                continue;
            }
            normalize(r);
            kept.push_back(std::move(r));
        }
        std::sort(kept.begin(), kept.end(), row_less);
        kept.erase(std::unique(kept.begin(), kept.end(), row_equal), kept.end());
        rows = std::move(kept);
        return true;
    };
    if (!tidy(ineqs)) return el;
    for (std::size_t k = m; k-- > 0;) {
        std::vector<Row> lower, upper, rest;
        for (auto& r : ineqs) {
            if (r.a[k] > 0)
                lower.push_back(r);
            else if (r.a[k] < 0)
                upper.push_back(r);
            else
                rest.push_back(r);
        }
        el.at[k] = lower;
        el.at[k].insert(el.at[k].end(), upper.begin(), upper.end());
        for (const auto& l : lower) {
            for (const auto& u : upper) {
                Rational fl = -u.a[k], fu = l.a[k];
                Row r;
                r.a.resize(m);
                for (std::size_t j = 0; j < m; ++j) r.a[j] = fl * l.a[j] + fu * u.a[j];
                r.a[k] = 0;
                r.c = fl * l.c + fu * u.c;
                r.rel = (l.rel == CellRel::Gt || u.rel == CellRel::Gt) ? CellRel::Gt : CellRel::Ge;
                rest.push_back(std::move(r));
            }
        }
        if (!tidy(rest)) return el;
        ineqs = std::move(rest);
    }
    el.feasible = true;
    return el;
}

struct Interval {
    std::optional<Rational> lo, hi;
    bool lo_open = false, hi_open = false;

    bool admits(const Rational& v) const {
        if (lo && (lo_open ? v <= *lo : v < *lo)) return false;
        if (hi && (hi_open ? v >= *hi : v > *hi)) return false;
        return true;
    }
};

Rational partial(const Row& r, std::size_t k, const std::vector<Rational>& vals) {
    Rational rest = r.c;
    for (std::size_t j = 0; j < k; ++j) rest += r.a[j] * vals[j];
    return rest;
}

Interval bounds_of(const std::vector<Row>& rows, std::size_t k, const std::vector<Rational>& vals) {
    Interval iv;
    for (const auto& r : rows) {
        Rational b = -partial(r, k, vals) / r.a[k];
        bool open = r.rel == CellRel::Gt;
        if (r.a[k] > 0) {
            if (!iv.lo || b > *iv.lo) {
                iv.lo = b;
                iv.lo_open = open;
            } else if (b == *iv.lo) {
                iv.lo_open = iv.lo_open || open;
            }
        } else {
            if (!iv.hi || b < *iv.hi) {
                iv.hi = b;
                iv.hi_open = open;
            } else if (b == *iv.hi) {
                iv.hi_open = iv.hi_open || open;
            }
        }
    }
    return iv;
}

Rational choose(const Interval& iv, Rng* rng) {
    if (rng) {
        Rational t = make_rational(rng->uniform(1, 999), 1000);
        Rational step = make_rational(rng->uniform(1, 1000), 100);
        if (iv.lo && iv.hi) return *iv.lo == *iv.hi ? *iv.lo : Rational(*iv.lo + (*iv.hi - *iv.lo) * t);
        if (iv.lo) return *iv.lo + step;
        if (iv.hi) return *iv.hi - step;
        return make_rational(rng->uniform(-1000, 1000), 100);
    }
    if (iv.admits(0)) return 0;
    if (iv.lo && !iv.hi) return Rational(floor_of(*iv.lo) + 1);
    if (iv.hi && !iv.lo) return Rational(ceil_of(*iv.hi) - 1);
    return (*iv.lo + *iv.hi) / 2;
}

std::vector<Row> rows_of(const std::vector<LinearRelation>& system, std::size_t m) {
    std::vector<Row> rows;
    for (const auto& r : system) rows.push_back(to_row(r, m));
    return rows;
}

}  // namespace

std::optional<ParameterValuation> solve_linear(const std::vector<LinearRelation>& system, std::size_t m,
                                               Rng* rng) {
    Eliminated el = eliminate(rows_of(system, m), m);
    if (!el.feasible) return std::nullopt;
    std::vector<Rational> vals(m, Rational(0));
    for (std::size_t k = 0; k < m; ++k) {
        if (el.pivot[k]) {
            const Row& p = *el.pivot[k];
            vals[k] = -partial(p, k, vals) / p.a[k];
        } else {
            vals[k] = choose(bounds_of(el.at[k], k, vals), rng);
        }
    }
    ParameterValuation g;
    for (std::size_t k = 0; k < m; ++k) g[k] = vals[k];
    return g;
}

std::vector<Cell> decompose_linear(const std::vector<Expression>& hyperplanes, std::size_t m) {
    if (m > 3) throw UnsupportedError("linear decomposition is limited to three parameters");
    for (const auto& e : hyperplanes)
        if (e.is_infinite() || !e.is_linear()) throw UnsupportedError("linear decomposition needs linear expressions");
    std::vector<Cell> cells;
    std::vector<LinearRelation> system;
    SignAssignment signs;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == hyperplanes.size()) {
            Cell c;
            c.kind = CellKind::LinearSystem;
            c.constraints = system;
            c.signs = signs;
            c.sample = ParamPoint(*solve_linear(system, m));
            cells.push_back(std::move(c));
            return;
        }
        for (int s : {-1, 0, 1}) {
            LinearRelation r{s >= 0 ? hyperplanes[i] : -hyperplanes[i], s == 0 ? CellRel::Eq : CellRel::Gt};
            system.push_back(r);
            signs.push_back(s);
            if (eliminate(rows_of(system, m), m).feasible) rec(i + 1);
            system.pop_back();
            signs.pop_back();
        }
    };
    rec(0);
    return cells;
}

ParamPoint random_point(const Cell& cell, std::size_t m, Rng& rng) {
    switch (cell.kind) {
        case CellKind::Point1D:
            return cell.sample;
        case CellKind::LinearSystem:
            return ParamPoint(*solve_linear(cell.constraints, m, &rng));
        case CellKind::Interval1D: {
            auto inner_lo = [&]() -> std::optional<Rational> {
                if (!cell.lower) return std::nullopt;
                return cell.lower->is_rational() ? cell.lower->rational() : cell.lower->hi();
            };
            auto inner_hi = [&]() -> std::optional<Rational> {
                if (!cell.upper) return std::nullopt;
                return cell.upper->is_rational() ? cell.upper->rational() : cell.upper->lo();
            };
            while (cell.lower && cell.upper && !(*inner_lo() < *inner_hi())) {
                cell.lower->refine();
                cell.upper->refine();
            }
            auto lo = inner_lo();
            auto hi = inner_hi();
            Rational t = make_rational(rng.uniform(1, 999), 1000);
            Rational step = make_rational(rng.uniform(1, 2000), 100);
            Rational v;
            if (lo && hi)
                v = *lo + (*hi - *lo) * t;
            else if (lo)
                v = *lo + step;
            else if (hi)
                v = *hi - step;
            else
                v = make_rational(rng.uniform(-2000, 2000), 100);
            v.canonicalize();
            ParameterValuation g;
            g[cell.param] = v;
            return ParamPoint(g);
        }
    }
    return cell.sample;
}

std::pair<std::vector<LinearRelation>, std::size_t> slack_form(const std::vector<LinearRelation>& system,
                                                                std::size_t m) {
    std::vector<LinearRelation> out;
    std::size_t slacks = 0;
    for (const auto& r : system) {
        if (r.expr.is_infinite() || !r.expr.is_linear()) throw UnsupportedError("slack form needs linear relations");
        if (r.rel == CellRel::Eq) {
            out.push_back(r);
            continue;
        }
        Expression e = r.expr;
        if (r.rel == CellRel::Gt) e -= Expression::constant(1);
        e -= Expression::parameter(m + slacks);
        ++slacks;
        out.push_back({e, CellRel::Eq});
    }
    return {out, slacks};
}

std::optional<std::vector<Integer>> integer_point(const std::vector<LinearRelation>& system,
                                                  const std::vector<std::pair<long, long>>& box) {
    const std::size_t m = box.size();
    Eliminated el = eliminate(rows_of(system, m), m);
    if (!el.feasible) return std::nullopt;
    std::vector<Rational> vals(m, Rational(0));
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == m) return true;
        if (el.pivot[k]) {
            const Row& p = *el.pivot[k];
            Rational v = -partial(p, k, vals) / p.a[k];
            if (v.get_den() != 1 || v < box[k].first || v > box[k].second) return false;
            vals[k] = v;
            return rec(k + 1);
        }
        Interval iv = bounds_of(el.at[k], k, vals);
        Integer from = box[k].first, to = box[k].second;
        if (iv.lo) {
            Integer l = iv.lo_open ? Integer(floor_of(*iv.lo) + 1) : ceil_of(*iv.lo);
            if (l > from) from = l;
        }
        if (iv.hi) {
            Integer h = iv.hi_open ? Integer(ceil_of(*iv.hi) - 1) : floor_of(*iv.hi);
            if (h < to) to = h;
        }
        for (Integer v = from; v <= to; ++v) {
            vals[k] = Rational(v);
            if (rec(k + 1)) return true;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    std::vector<Integer> out;
    for (const auto& v : vals) out.push_back(v.get_num());
    return out;
}

}  // namespace ptasynth
