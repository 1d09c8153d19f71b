#pragma once

#include "ptasynth/constraint.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ptasynth {

using LocationId = std::size_t;
using ActionId = std::size_t;

enum class TimeDomain { Nat, Dense };
enum class ParamDomain { Int, Real, Nat };

std::string to_string(TimeDomain d);
std::string to_string(ParamDomain d);
TimeDomain parse_time_domain(const std::string& s);
ParamDomain parse_param_domain(const std::string& s);

/// x := value, value a natural constant.
struct Update {
    ClockId clock = 0;
    Integer value = 0;
    friend bool operator==(const Update&, const Update&) = default;
};

struct Transition {
    LocationId source = 0;
    LocationId target = 0;
    SimpleConstraint guard;
    ActionId action = 0;
    std::vector<Update> updates;
    friend bool operator==(const Transition&, const Transition&) = default;
};

/// omega[u].
ClockValuation apply_updates(ClockValuation omega, const std::vector<Update>& updates);

struct Pta {
    std::vector<std::string> clocks;
    std::vector<std::string> params;
    std::vector<std::string> locations;
    std::vector<std::string> actions;
    LocationId initial = 0;
    std::vector<SimpleConstraint> invariants;  ///< one per location
    std::vector<Transition> transitions;
    TimeDomain time_domain = TimeDomain::Dense;
    ParamDomain param_domain = ParamDomain::Real;

    std::optional<LocationId> find_location(const std::string& name) const;
    std::optional<ClockId> find_clock(const std::string& name) const;
    std::optional<ParamId> find_param(const std::string& name) const;
    ActionId intern_action(const std::string& name);

    /// Every atom of every invariant and guard, in declaration order.
    std::vector<const AtomicConstraint*> atoms() const;

    /// Clocks that occur in an atom whose right-hand side mentions a parameter.
    std::vector<ClockId> parametric_clocks() const;
    /// Clocks that occur in any atom at all.
    std::vector<ClockId> constrained_clocks() const;

    /// Throws PreconditionError when an invariant is broken.
    void validate() const;

    friend bool operator==(const Pta&, const Pta&) = default;
};

/// One step of a syntactic run: the transition taken and its data.
struct RunStep {
    std::size_t transition = 0;  ///< index in the owning automaton
    LocationId source = 0;
    LocationId target = 0;
    SimpleConstraint guard;
    ActionId action = 0;
    std::vector<Update> updates;
};

/// A path of transitions from the initial location together with the
/// invariants of the visited locations (invariants[i] belongs to the
/// location reached after i steps).
struct SyntacticRun {
    LocationId start = 0;
    std::vector<RunStep> steps;
    std::vector<SimpleConstraint> invariants;

    std::size_t length() const { return steps.size(); }
    LocationId last_location() const { return steps.empty() ? start : steps.back().target; }
};

/// Builds the run for the given transition indices; throws
/// PreconditionError if they do not chain from the initial location.
SyntacticRun make_run(const Pta& pta, const std::vector<std::size_t>& transition_indices);

/// The automaton A_tau: a chain of fresh locations s0..sl whose invariants
/// and edges are those of the run.
Pta run_automaton(const Pta& base, const SyntacticRun& run);

/// A timed run: each step waits `delay` and then fires `transition`;
/// `final_delay` is spent in the last location.
struct ConcreteStep {
    Rational delay = 0;
    std::size_t transition = 0;
    friend bool operator==(const ConcreteStep&, const ConcreteStep&) = default;
};

struct ConcreteRun {
    std::vector<ConcreteStep> steps;
    Rational final_delay = 0;
    friend bool operator==(const ConcreteRun&, const ConcreteRun&) = default;
};

}  // namespace ptasynth
