#include "ptasynth/feasibility.hpp"

#include "ptasynth/error.hpp"

#include <set>

namespace ptasynth {

SplitGuard split_guard(const SimpleConstraint& g, std::optional<ClockId> x) {
    SplitGuard s;
    for (const auto& a : g.atoms) {
        if (a.plus && a.minus) throw PreconditionError("one-clock feasibility cannot handle a diagonal atom");
        std::optional<ClockId> c = a.plus ? a.plus : a.minus;
        if (c && x && *c != *x) throw PreconditionError("guard mentions a second clock");
        if (a.plus)
            s.up.atoms.push_back(a);
        else if (a.minus)
            s.lb.atoms.push_back(a);
        else
            s.conditions.atoms.push_back(a);
    }
    return s;
}

Bound linf(const SimpleConstraint& lb, const ParameterValuation& gamma) {
    Bound b{ExtRational(0), false, false};
    for (const auto& a : lb.atoms) {
        if (a.rhs.is_infinite()) continue;
        Rational v = -a.rhs.evaluate_finite(gamma);  // x >= v, or x > v
        bool strict = a.rel == Rel::Lt;
        if (v > b.value.value()) {
            b.value = v;
            b.open = strict;
        } else if (v == b.value.value()) {
            b.open = b.open || strict;
        }
    }
    return b;
}

Bound usup(const SimpleConstraint& up, const ParameterValuation& gamma) {
    Bound b{ExtRational::infinity(), false, false};
    for (const auto& a : up.atoms) {
        if (a.rhs.is_infinite()) continue;
        Rational v = a.rhs.evaluate_finite(gamma);
        bool strict = a.rel == Rel::Lt;
        if (b.value.is_infinite() || v < b.value.value()) {
            b.value = v;
            b.open = strict;
        } else if (v == b.value.value()) {
            b.open = b.open || strict;
        }
    }
    if (!b.value.is_infinite() && (b.value.value() < 0 || (b.value.value() == 0 && b.open)))
        return Bound{ExtRational(0), false, true};
    return b;
}

namespace {

/// Least admissible integer at or above the lower bound.
Integer least_integer(const Bound& lower) {
    const Rational& l = lower.value.value();
    if (lower.open) return floor_of(l) + 1;
    return ceil_of(l);
}

bool below_upper(const Rational& v, const Bound& upper) {
    if (upper.value.is_infinite()) return true;
    return upper.open ? v < upper.value.value() : v <= upper.value.value();
}

/// A point of the nonempty interval: the midpoint after pulling open
/// endpoints inwards, L + 1 when unbounded, the least integer for Nat time.
Rational pick(const Bound& lower, const Bound& upper, TimeDomain time) {
    const Rational& l = lower.value.value();
    if (time == TimeDomain::Nat) return Rational(least_integer(lower));
    if (upper.value.is_infinite()) return l + 1;
    const Rational& u = upper.value.value();
    Rational gap = u - l;
    Rational delta = (gap < 1 ? gap : Rational(1)) / 4;
    Rational lo = lower.open ? Rational(l + delta) : l;
    Rational hi = upper.open ? Rational(u - delta) : u;
    return (lo + hi) / 2;
}

struct StepBounds {
    Bound lo;
    Bound hi;
};

StepBounds bounds_of(const SimpleConstraint& g, std::optional<ClockId> x, const ParameterValuation& gamma) {
    SplitGuard s = split_guard(g, x);
    return {linf(s.lb, gamma), usup(s.up, gamma)};
}

bool tighter_lower(const Bound& a, const Bound& b) {
    // a is a strictly tighter lower bound than b
    return a.value > b.value || (a.value == b.value && a.open && !b.open);
}

bool tighter_upper(const Bound& a, const Bound& b) {
    if (a.empty != b.empty) return a.empty;
    return a.value < b.value || (a.value == b.value && a.open && !b.open);
}

struct SegmentOutcome {
    bool feasible = true;
    std::optional<std::pair<std::size_t, std::size_t>> failing;  // indices into the segment
    std::vector<Rational> values;
};

/// Steps 1..n of a reset-free stretch entered with the clock at `start`;
/// index 0 stands for the entry point itself.
SegmentOutcome solve_segment(const std::vector<StepBounds>& steps, const Rational& start, TimeDomain time) {
    std::vector<StepBounds> b;
    b.push_back({Bound{ExtRational(start), false, false}, Bound{ExtRational(start), false, false}});
    b.insert(b.end(), steps.begin(), steps.end());
    const std::size_t n = b.size();
    SegmentOutcome out;
    for (std::size_t i = 0; i < n && out.feasible; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (b[j].hi.empty || !interval_nonempty(b[i].lo, b[j].hi, time)) {
                out.feasible = false;
                out.failing = {i, j};
                break;
            }
        }
    }
    if (!out.feasible) return out;
    std::vector<Bound> lower(n), upper(n);
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = b[i].lo;
        if (i > 0 && tighter_lower(lower[i - 1], lower[i])) lower[i] = lower[i - 1];
    }
    for (std::size_t i = n; i-- > 0;) {
        upper[i] = b[i].hi;
        if (i + 1 < n && tighter_upper(upper[i + 1], upper[i])) upper[i] = upper[i + 1];
    }
    Rational prev = start;
    for (std::size_t i = 1; i < n; ++i) {
        Rational v = pick(lower[i], upper[i], time);
        if (v < prev) v = prev;
        out.values.push_back(v);
        prev = v;
    }
    return out;
}

}  // namespace

bool interval_nonempty(const Bound& lower, const Bound& upper, TimeDomain time) {
    if (upper.empty || lower.value.is_infinite()) return false;
    if (time == TimeDomain::Nat) return below_upper(Rational(least_integer(lower)), upper);
    if (upper.value.is_infinite()) return true;
    const Rational& l = lower.value.value();
    const Rational& u = upper.value.value();
    if (l < u) return true;
    return l == u && !lower.open && !upper.open;
}

std::optional<ClockId> run_clock(const GuardOnlyRun& run) {
    std::set<ClockId> clocks;
    auto visit = [&](const SimpleConstraint& g) {
        for (const auto& a : g.atoms) {
            if (a.plus) clocks.insert(*a.plus);
            if (a.minus) clocks.insert(*a.minus);
        }
    };
    visit(run.initial_condition);
    for (const auto& s : run.run.steps) visit(s.guard);
    if (clocks.size() > 1) throw PreconditionError("run constrains more than one clock");
    if (clocks.empty()) return std::nullopt;
    return *clocks.begin();
}

bool phi_satisfiable(std::size_t i, std::size_t j, const GuardOnlyRun& run, const ParameterValuation& gamma,
                     TimeDomain time) {
    if (i < 1 || i > j || j > run.run.steps.size()) throw PreconditionError("phi_{i,j} needs 1 <= i <= j <= l");
    auto x = run_clock(run);
    Bound lo = bounds_of(run.run.steps[i - 1].guard, x, gamma).lo;
    Bound hi = bounds_of(run.run.steps[j - 1].guard, x, gamma).hi;
    return interval_nonempty(lo, hi, time);
}

namespace {

FeasibilityResult solve(const GuardOnlyRun& run, const ParameterValuation& gamma, TimeDomain time,
                        bool allow_resets) {
    FeasibilityResult res;
    auto x = run_clock(run);
    std::size_t width = x ? *x + 1 : 0;
    for (const auto& s : run.run.steps)
        for (const auto& u : s.updates) width = std::max(width, u.clock + 1);
    ClockValuation zero(width, Rational(0));
    if (!run.initial_condition.holds(zero, gamma)) {
        res.failing_condition = 0;
        return res;
    }
    const auto& steps = run.run.steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!split_guard(steps[i].guard, x).conditions.holds(zero, gamma)) {
            res.failing_condition = i + 1;
            return res;
        }
    }

    Rational start = 0;
    std::size_t seg_begin = 0;  // 0-based index of the segment's first step
    std::vector<StepBounds> seg;
    ConcreteRun witness;
    Rational clock = 0;
    for (std::size_t i = 0; i <= steps.size(); ++i) {
        bool close = i == steps.size();
        std::optional<Integer> reset;
        if (!close) {
            seg.push_back(bounds_of(steps[i].guard, x, gamma));
            for (const auto& u : steps[i].updates)
                if (u.clock == x) reset = u.value;
            if (reset && !allow_resets) throw PreconditionError("feasible_no_reset given a resetting run");
            close = reset.has_value();
        }
        if (!close) continue;
        SegmentOutcome out = solve_segment(seg, start, time);
        if (!out.feasible) {
            auto [a, b] = *out.failing;
            // Entry point 0 is the resetting step, or x >= 0 for the first segment.
            std::size_t first = a == 0 ? (seg_begin == 0 ? seg_begin + b : seg_begin) : seg_begin + a;
            res.failing_pair = {first, seg_begin + b};
            return res;
        }
        for (const auto& v : out.values) {
            witness.steps.push_back({v - clock, witness.steps.size()});
            res.clock_values.push_back(v);
            clock = v;
        }
        if (reset) {
            start = Rational(*reset);
            clock = start;
        }
        seg.clear();
        seg_begin = i + 1;
    }
    res.feasible = true;
    res.witness = witness;
    return res;
}

}  // namespace

FeasibilityResult feasible_no_reset(const GuardOnlyRun& run, const ParameterValuation& gamma, TimeDomain time) {
    return solve(run, gamma, time, false);
}

FeasibilityResult feasible_with_reset(const GuardOnlyRun& run, const ParameterValuation& gamma, TimeDomain time) {
    return solve(run, gamma, time, true);
}

}  // namespace ptasynth
