#include "ptasynth/synthesis.hpp"

#include "ptasynth/error.hpp"
#include "ptasynth/feasibility.hpp"
#include "ptasynth/parallel.hpp"
#include "ptasynth/semantics.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace ptasynth {

// ============================================================================
// Constraint polynomials
// ============================================================================

std::string ClockPolynomial::render(const Pta& pta) const {
    std::string s;
    if (plus) s += pta.clocks.at(*plus);
    if (minus) s += "-" + pta.clocks.at(*minus);
    if (expr.is_zero()) return s.empty() ? "0" : s;
    std::string e = (-expr).render(pta.params);
    if (s.empty()) return e;
    return s + (e[0] == '-' ? "" : "+") + e;
}

bool operator<(const ClockPolynomial& a, const ClockPolynomial& b) {
    auto key = [](const ClockPolynomial& c) {
        return std::make_tuple(c.plus.has_value(), c.plus.value_or(0), c.minus.has_value(), c.minus.value_or(0));
    };
    if (key(a) != key(b)) return key(a) < key(b);
    return a.expr < b.expr;
}

std::vector<ClockPolynomial> collect_constraint_polynomials(const Pta& pta, const SystemProperty& psi) {
    std::set<ClockPolynomial> out;
    auto add = [&](const AtomicConstraint& a) {
        if (a.rhs.is_infinite()) return;
        out.insert({a.plus, a.minus, a.rhs});
    };
    for (const auto* a : pta.atoms()) add(*a);
    std::vector<AtomicConstraint> atoms;
    collect_atoms(psi.phi, atoms);
    for (const auto& a : atoms) add(a);
    return {out.begin(), out.end()};
}

bool FeasibleRegion::empty() const {
    for (const auto& c : cells)
        if (c.verdict) return false;
    return true;
}

namespace {

// ============================================================================
// Sign-defining sets
// ============================================================================

/// Bound values on the single clock; feasibility of any run depends only on
/// how upper values compare with lower values and with the constants the
/// clock starts from.
struct BoundValues {
    std::vector<Expression> upper;
    std::vector<Expression> lower;
    std::vector<Expression> clock_free;  ///< e of "0 <= e"
    std::set<Integer> constants{Integer(0)};
};

/// With integer time and parameters a strict atom is the closed atom with
/// its bound moved by one.
void absorb_atom(BoundValues& b, const AtomicConstraint& a, bool closed) {
    if (a.rhs.is_infinite()) return;
    if (a.plus && a.minus) throw UnsupportedError("synthesis does not handle diagonal constraints");
    Expression one = Expression::constant(1);
    bool shift = closed && a.rel == Rel::Lt;
    if (a.plus)
        b.upper.push_back(shift ? a.rhs - one : a.rhs);
    else if (a.minus)
        b.lower.push_back(shift ? -a.rhs + one : -a.rhs);
    else
        b.clock_free.push_back(shift ? a.rhs - one : a.rhs);
}

void absorb_property(BoundValues& b, const StateProperty& phi, bool closed) {
    std::vector<AtomicConstraint> atoms;
    collect_atoms(phi, atoms);
    for (const auto& a : atoms) {
        absorb_atom(b, a, closed);
        if (auto n = a.negated()) absorb_atom(b, *n, closed);
    }
}

Expression upoly_to_expression(const UPoly& f, ParamId p) {
    UPoly g = f.primitive();
    Expression out;
    Expression power = Expression::constant(1);
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        out += power * g.coeffs()[i].get_num();
        power = power * Expression::parameter(p);
    }
    return out;
}

/// Divides out the content and makes the first parameter coefficient
/// positive.  Returns nullopt for a constant.
std::optional<Expression> normalize_hyperplane(const Expression& e) {
    if (e.is_concrete()) return std::nullopt;
    Integer g = 0;
    for (const auto& [mono, c] : e.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    ParamId first = *e.parameters().begin();
    if (e.coefficient(first) < 0) g = -g;
    Expression out;
    for (const auto& [mono, c] : e.terms()) {
        Integer q = c / g;
        if (mono.empty())
            out += Expression::constant(q);
        else
            out += Expression::parameter(mono.begin()->first, q);
    }
    return out;
}

using Plan = ParameterDecomposition;

Plan plan_cells(const BoundValues& b, std::size_t m, ParamDomain domain) {
    Plan plan;
    bool linear = true;
    auto check = [&](const std::vector<Expression>& v) {
        for (const auto& e : v)
            if (!e.is_linear()) linear = false;
    };
    check(b.upper);
    check(b.lower);
    check(b.clock_free);
    if (m == 0) {
        plan.method = "linear";
        Cell c;
        c.kind = CellKind::LinearSystem;
        c.sample = ParamPoint(ParameterValuation{});
        plan.cells.push_back(std::move(c));
        return plan;
    }
    if (m == 1) {
        plan.method = "cad1";
        std::vector<BPoly> polys;
        auto as_root = [&](const Expression& v) {
            polys.push_back(BPoly({-to_upoly(v, 0), UPoly::constant(1)}));
        };
        for (const auto& v : b.upper) as_root(v);
        for (const auto& v : b.lower) as_root(v);
        for (const auto& c : b.constants) as_root(Expression::constant(c));
        for (const auto& e : b.clock_free) polys.push_back(BPoly({to_upoly(e, 0)}));
        std::sort(polys.begin(), polys.end(), [](const BPoly& x, const BPoly& y) {
            return std::lexicographical_compare(x.coeffs().begin(), x.coeffs().end(), y.coeffs().begin(),
                                                y.coeffs().end());
        });
        polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
        std::vector<UPoly> projected = project_clock(polys);
        if (domain == ParamDomain::Nat) projected.push_back(UPoly({0, 1}));
        std::sort(projected.begin(), projected.end());
        projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
        for (const auto& f : projected) plan.defining.push_back(upoly_to_expression(f, 0));
        plan.cells = decompose_1d(projected, 0);
        return plan;
    }
    if (!linear) throw UnsupportedError("polynomial expressions are supported with one parameter only");
    plan.method = "linear";
    std::set<Expression> planes;
    auto add = [&](const Expression& e) {
        if (auto n = normalize_hyperplane(e)) planes.insert(*n);
    };
    for (const auto& u : b.upper) {
        for (const auto& l : b.lower) add(u - l);
        for (const auto& c : b.constants) add(u - Expression::constant(c));
    }
    for (const auto& e : b.clock_free) add(e);
    if (domain == ParamDomain::Nat)
        for (std::size_t p = 0; p < m; ++p) planes.insert(Expression::parameter(p));
    plan.defining.assign(planes.begin(), planes.end());
    plan.cells = decompose_linear(plan.defining, m);
    return plan;
}

// ============================================================================
// Integer points of cells
// ============================================================================

Integer least_integer_above(const AlgebraicNumber& a) {
    if (a.is_rational()) return floor_of(a.rational()) + 1;
    for (;;) {
        Integer n = floor_of(a.lo()) + 1;
        if (a.compare(Rational(n)) < 0) return n;
        a.refine();
        if (a.is_rational()) return floor_of(a.rational()) + 1;
    }
}

Integer greatest_integer_below(const AlgebraicNumber& a) {
    if (a.is_rational()) return ceil_of(a.rational()) - 1;
    for (;;) {
        Integer n = ceil_of(a.hi()) - 1;
        if (a.compare(Rational(n)) > 0) return n;
        a.refine();
        if (a.is_rational()) return ceil_of(a.rational()) - 1;
    }
}

std::optional<std::vector<Integer>> cell_integer_point(const Cell& cell, std::size_t m) {
    if (cell.kind == CellKind::LinearSystem) {
        std::vector<std::pair<long, long>> box(m, {-kIntegerSearchRadius, kIntegerSearchRadius});
        return integer_point(cell.constraints, box);
    }
    auto accept = [&](const Integer& n) -> std::optional<std::vector<Integer>> {
        ParameterValuation g{{cell.param, Rational(n)}};
        if (cell.contains(ParamPoint(g))) return std::vector<Integer>{n};
        return std::nullopt;
    };
    if (cell.kind == CellKind::Point1D) {
        if (cell.lower->is_rational() && cell.lower->rational().get_den() == 1)
            return std::vector<Integer>{cell.lower->rational().get_num()};
        return std::nullopt;
    }
    if (auto z = accept(0)) return z;
    if (cell.lower) return accept(least_integer_above(*cell.lower));
    if (cell.upper) return accept(greatest_integer_below(*cell.upper));
    return std::nullopt;
}

ParameterValuation to_valuation(const std::vector<Integer>& v) {
    ParameterValuation g;
    for (std::size_t i = 0; i < v.size(); ++i) g[i] = Rational(v[i]);
    return g;
}

/// Decides every cell with `decide`, at the sample for real parameters and
/// at an integer point otherwise.
void decide_cells(FeasibleRegion& region, const Plan& plan, std::size_t m,
                  const std::function<bool(const ParamPoint&)>& decide) {
    region.method = plan.method;
    region.defining = plan.defining;
    region.cells.resize(plan.cells.size());
    parallel_for(plan.cells.size(), [&](std::size_t i) {
        RegionCell rc;
        rc.cell = plan.cells[i];
        if (region.param_domain == ParamDomain::Real) {
            rc.decided_at = rc.cell.sample.rational();
            rc.verdict = decide(rc.cell.sample);
        } else if (auto ip = cell_integer_point(rc.cell, m)) {
            rc.integer_witness = ip;
            rc.decided_at = to_valuation(*ip);
            rc.verdict = decide(ParamPoint(*rc.decided_at));
        }
        region.cells[i] = std::move(rc);
    });
}

void check_fragment(const Pta& pta, const std::vector<AtomicConstraint>& extra_atoms) {
    std::set<ClockId> clocks;
    for (ClockId c : pta.constrained_clocks()) clocks.insert(c);
    for (const auto& a : extra_atoms) {
        if (a.plus) clocks.insert(*a.plus);
        if (a.minus) clocks.insert(*a.minus);
    }
    if (clocks.size() > 1)
        throw UnsupportedError("synthesis handles automata with one constrained clock; found " +
                               std::to_string(clocks.size()) + " (see analyze2 for two-clock automata)");
    if (pta.time_domain == TimeDomain::Nat && pta.param_domain == ParamDomain::Real)
        throw UnsupportedError("integer time with real parameters is not supported; use param=int or time=dense");
}

}  // namespace

ParameterDecomposition decompose_parameters(const Pta& pta, const SystemProperty& psi) {
    std::vector<AtomicConstraint> prop_atoms;
    collect_atoms(psi.phi, prop_atoms);
    check_fragment(pta, prop_atoms);
    const bool closed = pta.time_domain == TimeDomain::Nat;
    BoundValues b;
    for (const auto* a : pta.atoms()) absorb_atom(b, *a, closed);
    absorb_property(b, psi.phi, closed);
    for (const auto& t : pta.transitions)
        for (const auto& u : t.updates) b.constants.insert(u.value);
    return plan_cells(b, pta.params.size(), pta.param_domain);
}

FeasibleRegion synthesize(const Pta& pta, const SystemProperty& psi) {
    const std::size_t m = pta.params.size();
    Plan plan = decompose_parameters(pta, psi);
    FeasibleRegion region;
    region.params = pta.params;
    region.time = pta.time_domain;
    region.param_domain = pta.param_domain;
    region.property = psi.render(pta);
    decide_cells(region, plan, m, [&](const ParamPoint& point) { return satisfies(pta, point, psi); });
    return region;
}

std::vector<SyntacticRun> enumerate_runs(const Pta& pta, std::size_t max_len) {
    std::vector<std::vector<std::size_t>> frontier{{}};
    std::vector<SyntacticRun> out;
    out.push_back(make_run(pta, {}));
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& path : frontier) {
            LocationId at = path.empty() ? pta.initial : pta.transitions[path.back()].target;
            for (std::size_t t = 0; t < pta.transitions.size(); ++t) {
                if (pta.transitions[t].source != at) continue;
                auto ext = path;
                ext.push_back(t);
                out.push_back(make_run(pta, ext));
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

FeasibleRegion run_region(const Pta& pta, const SyntacticRun& tau, const StateProperty& phi) {
    std::vector<AtomicConstraint> prop_atoms;
    collect_atoms(phi, prop_atoms);
    check_fragment(pta, prop_atoms);
    const bool closed = pta.time_domain == TimeDomain::Nat;

    std::vector<EncodedRun> encoded = alpha_transform(tau, phi);
    std::vector<GuardOnlyRun> guarded;
    BoundValues b;
    for (const auto& e : encoded) {
        guarded.push_back(beta_transform(e));
        for (const auto& a : guarded.back().initial_condition.atoms) {
            // Evaluated at the zero valuation: clocks drop out.
            AtomicConstraint z = a;
            z.plus.reset();
            z.minus.reset();
            absorb_atom(b, z, closed);
        }
        for (const auto& s : guarded.back().run.steps) {
            for (const auto& a : s.guard.atoms) absorb_atom(b, a, closed);
            for (const auto& u : s.updates) b.constants.insert(u.value);
        }
    }
    const std::size_t m = pta.params.size();
    Plan plan = plan_cells(b, m, pta.param_domain);
    FeasibleRegion region;
    region.params = pta.params;
    region.time = pta.time_domain;
    region.param_domain = pta.param_domain;
    std::string path;
    for (const auto& s : tau.steps) path += (path.empty() ? "" : ",") + std::to_string(s.transition);
    region.property = "run [" + path + "] then " + phi.render(pta);
    decide_cells(region, plan, m, [&](const ParamPoint& point) {
        if (auto gamma = point.rational()) {
            for (const auto& g : guarded)
                if (feasible_with_reset(g, *gamma, pta.time_domain).feasible) return true;
            return false;
        }
        // Irrational sample: the region graph of each observed chain decides.
        for (const auto& e : encoded) {
            Pta chain = run_automaton(pta, e.observed());
            if (reach_dense_one_clock(chain, point, StateProperty::at(chain.locations.size() - 1)).reachable)
                return true;
        }
        return false;
    });
    return region;
}

const RegionCell* locate(const FeasibleRegion& region, const ParamPoint& gamma) {
    for (const auto& c : region.cells)
        if (c.cell.contains(gamma)) return &c;
    return nullptr;
}

bool region_query(const FeasibleRegion& region, const ParamPoint& gamma) {
    const RegionCell* c = locate(region, gamma);
    if (!c) throw PreconditionError("no cell contains the given point");
    return c->verdict;
}

}  // namespace ptasynth
