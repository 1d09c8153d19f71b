#pragma once

#include "ptasynth/algebraic.hpp"
#include "ptasynth/property.hpp"
#include "ptasynth/pta.hpp"

#include <map>

namespace ptasynth {

/// The states visited by a concrete run.
struct RunTrace {
    bool ok = false;
    std::string diagnostic;
    std::vector<LocationId> locations;        ///< q_0 .. q_l
    std::vector<ClockValuation> arrival;      ///< omega_0 .. omega_l
    std::vector<ClockValuation> before_step;  ///< omega'_0 .. omega'_{l-1}
    ClockValuation final_valuation;           ///< omega_l + final_delay
};

/// Replays xi from (q0, 0) under gamma.  Delays must be integral when the
/// automaton's time domain is Nat.
RunTrace trace_run(const Pta& pta, const ParameterValuation& gamma, const ConcreteRun& xi);
bool replay_run(const Pta& pta, const ParameterValuation& gamma, const ConcreteRun& xi,
                std::string* diagnostic = nullptr);

struct ReachabilityVerdict {
    bool reachable = false;
    std::optional<ConcreteRun> witness;
    std::size_t states = 0;  ///< abstract states explored
};

/// Integer-time reachability of a state satisfying phi under a rational gamma.
/// `extra_cap` enlarges the abstraction constant without changing the answer.
ReachabilityVerdict reach_discrete(const Pta& pta, const ParameterValuation& gamma,
                                   const StateProperty& phi, long extra_cap = 0);

/// Dense-time reachability for automata with at most one constrained clock,
/// at a rational or algebraic parameter point.  No witness is produced at an
/// irrational point.  Throws PreconditionError for two constrained clocks.
ReachabilityVerdict reach_dense_one_clock(const Pta& pta, const ParamPoint& point,
                                          const StateProperty& phi);

/// EF phi directly, AG phi as not EF not phi, under the automaton's time
/// domain.  For AG the verdict's witness (if any) leads to a violation.
ReachabilityVerdict check_property(const Pta& pta, const ParamPoint& point, const SystemProperty& psi,
                                   bool* satisfied);
bool satisfies(const Pta& pta, const ParamPoint& point, const SystemProperty& psi);

std::map<ParameterValuation, bool> grid_oracle(const Pta& pta, const SystemProperty& psi,
                                               const std::vector<ParameterValuation>& grid);

/// Every integer point of the box [lo, hi]^m over parameters 0..m-1, in
/// lexicographic order.
std::vector<ParameterValuation> integer_grid(std::size_t m, long lo, long hi);

}  // namespace ptasynth
