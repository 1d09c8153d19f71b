#pragma once

#include "ptasynth/metrics.hpp"
#include "ptasynth/property.hpp"
#include "ptasynth/pta.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptasynth {

/// A PTA whose parametric atoms all have the form t rel p or t rel -p with
/// t in {x, y, -x, -y, x-y, y-x}.  `pta` is a copy with integer time and
/// natural parameters.
struct TwoOnePta {
    Pta pta;
    ClockId x = 0;
    std::optional<ClockId> y;
    std::optional<ParamId> p;
};

/// Every violation of the two-one fragment, one line each; empty when the
/// automaton (and the property, if given) fits.
std::vector<std::string> two_one_violations(const Pta& pta, const SystemProperty* psi = nullptr);

/// Throws UnsupportedError listing the violations.
TwoOnePta validate_two_one(const Pta& pta, const SystemProperty* psi = nullptr);

/// The states of a replayed run.  omega[i] is the valuation on arrival in
/// q_i, before[i] the valuation just before step i+1; steps are 1-based in
/// the lemmas, so step k is steps[k-1].
struct RunView {
    std::vector<ClockValuation> omega;
    std::vector<ClockValuation> before;
    std::vector<RunStep> steps;
    std::size_t length() const { return steps.size(); }
};

/// Throws PreconditionError when xi does not replay under gamma.
RunView view_run(const TwoOnePta& two, const ParameterValuation& gamma, const ConcreteRun& xi);

struct StructuralWitness {
    std::string lemma;
    std::size_t i = 0;
    std::optional<std::size_t> j;
    std::vector<std::string> clauses;  ///< one line per certified clause
};

/// Pair (i, j) for the run whose end satisfies omega(x) - omega(y) >= S1.
/// nullopt when the hypothesis fails or no pair exists.
std::optional<StructuralWitness> find_oneP3_indices(const TwoOnePta& two, const RunView& run, const Thresholds& t);
/// The same with x and y exchanged.
std::optional<StructuralWitness> find_oneP5_indices(const TwoOnePta& two, const RunView& run, const Thresholds& t);
/// Index i for a run ending with both clocks at least S1.
std::optional<StructuralWitness> find_oneP6_index(const TwoOnePta& two, const RunView& run, const Thresholds& t);
/// Least pair i < j (lexicographic) of repeated transitions with y reset at
/// i, x grown by j and no lower parametric bound in between.
std::optional<StructuralWitness> find_pigeonhole_pair(const TwoOnePta& two, const RunView& run);

bool oneP3_hypothesis(const TwoOnePta& two, const RunView& run, const Thresholds& t, bool swapped);
bool oneP6_hypothesis(const TwoOnePta& two, const RunView& run, const Thresholds& t);

/// Clause numbers that fail when re-checked directly against the run;
/// empty means the witness is sound.
std::vector<int> recheck_oneP3(const TwoOnePta& two, const RunView& run, const Thresholds& t,
                               const StructuralWitness& w, bool swapped);
std::vector<int> recheck_oneP6(const TwoOnePta& two, const RunView& run, const Thresholds& t,
                               const StructuralWitness& w);
std::vector<int> recheck_pigeonhole(const TwoOnePta& two, const RunView& run, const StructuralWitness& w);

/// The hypotheses of the pigeonhole lemma, recorded separately.
struct PigeonholeHypothesis {
    bool gamma_at_least_s1 = false;
    bool next_unreachable = false;         ///< R(A_tau[gamma+1]) is empty
    bool prefix_guards_next = false;       ///< omega'_i |= g_{i+1}[gamma+1], i <= l-2
    bool prefix_guards_gamma = false;      ///< the same at gamma
    bool holds() const { return gamma_at_least_s1 && next_unreachable && prefix_guards_next; }
};

PigeonholeHypothesis pigeonhole_hypothesis(const TwoOnePta& two, const ParameterValuation& gamma,
                                           const RunView& run, const Thresholds& t);

struct NoResetReport {
    Thresholds thresholds;
    bool premise_ok = true;
    std::string premise_violation;
    std::vector<std::pair<Integer, bool>> verdicts;  ///< T -> R(A_tau[T]) nonempty
    bool all_equal = true;
    /// The proof's construction: states above S1 moved to S1 - 1.
    bool clamp_attempted = false;
    bool clamp_monotone = false;
    bool clamp_replays = false;
    std::string clamp_note;
};

/// Throws PreconditionError when tau resets a clock.
NoResetReport no_reset_threshold_check(const TwoOnePta& two, const SyntacticRun& tau, const SystemProperty& psi);

struct PeriodicityReport {
    Thresholds thresholds;
    Integer horizon;               ///< verdicts cover p = 0..horizon
    std::vector<bool> verdicts;
    std::optional<Integer> t1;
    std::optional<Integer> period;
    std::optional<std::pair<Integer, Integer>> counterexample;  ///< p, p + c for c = 1 at T1 = S1
    std::optional<Integer> true_tail_from;  ///< least nu with every verdict from nu on true
};

/// EXPERIMENTAL: sweeps p and looks for an eventually periodic tail.
PeriodicityReport periodicity_probe(const TwoOnePta& two, const SystemProperty& psi, long horizon_mult);

}  // namespace ptasynth
