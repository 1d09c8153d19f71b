#pragma once

#include "ptasynth/transforms.hpp"

namespace ptasynth {

/// A bound on the single clock.  `empty` marks an unsatisfiable upper part,
/// whose value is 0 by convention.
struct Bound {
    ExtRational value;
    bool open = false;
    bool empty = false;
};

struct SplitGuard {
    SimpleConstraint lb;          ///< atoms -x rel e
    SimpleConstraint up;          ///< atoms x rel e
    SimpleConstraint conditions;  ///< clock-free atoms 0 rel e
};

/// Throws PreconditionError on an atom over two clocks, or over a clock other
/// than `x` when given.
SplitGuard split_guard(const SimpleConstraint& g, std::optional<ClockId> x = std::nullopt);

/// Infimum of the nonnegative x satisfying lb[gamma].
Bound linf(const SimpleConstraint& lb, const ParameterValuation& gamma);
/// Supremum of the nonnegative x satisfying up[gamma]; +inf without atoms.
Bound usup(const SimpleConstraint& up, const ParameterValuation& gamma);

/// Whether some admissible x lies in [lower, upper], honoring open flags;
/// with Nat time the point must be an integer.
bool interval_nonempty(const Bound& lower, const Bound& upper, TimeDomain time);

/// phi_{i,j}: (x >= 0) and lb(g_i[gamma]) and up(g_j[gamma]); steps are
/// numbered from 1.
bool phi_satisfiable(std::size_t i, std::size_t j, const GuardOnlyRun& run, const ParameterValuation& gamma,
                     TimeDomain time = TimeDomain::Dense);

struct FeasibilityResult {
    bool feasible = false;
    /// A run of guard_only_automaton(base, run); delays only, final delay 0.
    std::optional<ConcreteRun> witness;
    /// Steps (i, j), numbered from 1, whose phi_{i,j} fails.  A pair (h, j)
    /// with h a resetting step means x cannot stay at the reset value until
    /// step j.
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
    /// A clock-free condition that fails: 0 is the initial condition,
    /// otherwise the 1-based step whose guard carries it.
    std::optional<std::size_t> failing_condition;
    /// Value of the clock when each step fires.
    std::vector<Rational> clock_values;
};

/// Pre: no step resets the clock.
FeasibilityResult feasible_no_reset(const GuardOnlyRun& run, const ParameterValuation& gamma,
                                    TimeDomain time = TimeDomain::Dense);
FeasibilityResult feasible_with_reset(const GuardOnlyRun& run, const ParameterValuation& gamma,
                                      TimeDomain time = TimeDomain::Dense);

/// The single clock mentioned by the run, if any; throws PreconditionError
/// when there are two.
std::optional<ClockId> run_clock(const GuardOnlyRun& run);

}  // namespace ptasynth
