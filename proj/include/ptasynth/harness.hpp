#pragma once

#include "ptasynth/property.hpp"
#include "ptasynth/pta.hpp"
#include "ptasynth/random.hpp"
#include "ptasynth/two_clock.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ptasynth {

// ============================================================================
// Generators
// ============================================================================

struct GenOptions {
    std::size_t max_locations = 5;
    std::size_t max_transitions = 7;
    long max_const = 5;
    std::size_t max_params = 2;
    std::size_t min_params = 1;
    bool resets = true;
};

/// A random linear expression over the first m parameters with constants
/// in [-max_const, max_const].
Expression random_expression(Rng& rng, std::size_t m, long max_const);

/// One-clock automaton (clock x) under dense time with real parameters or
/// integer time with integer parameters.
Pta random_one_clock_pta(Rng& rng, const GenOptions& opt);

/// A chain q0 -> ... -> q_len whose only run is make_run(chain, 0..len-1).
Pta random_chain(Rng& rng, std::size_t len, std::size_t m, long max_const, bool resets, TimeDomain time);

/// A location/atom mix over the automaton's names.
StateProperty random_state_property(Rng& rng, const Pta& pta, long max_const);

/// A one-clock automaton in which every parameter is a lower or an upper
/// bound only (retries internally).
Pta random_lu_pta(Rng& rng, const GenOptions& opt);

/// Two-one automata shaped so that random walks meet a lemma's hypothesis.
enum class LemmaKind { OneP3, OneP5, OneP6, OneP4 };
std::string to_string(LemmaKind k);

struct TwoOneInstance {
    TwoOnePta two;
    ParameterValuation gamma;
    ConcreteRun run;
};

/// One instance meeting the lemma's hypothesis, or nullopt when the draw
/// failed (callers retry).
std::optional<TwoOneInstance> generate_lemma_instance(Rng& rng, LemmaKind kind);

// ============================================================================
// Suites
// ============================================================================

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> details;  ///< first few failures
    std::vector<std::string> notes;
    bool ok() const { return failures == 0 && cases > 0; }
    void fail(std::string what);
};

struct FeasibilityStats {
    std::size_t reset_free_feasible = 0;
    std::size_t witness_replays = 0;
    /// Step bounds seen on replayed reset-free witnesses, indexed by
    /// [lower closed][upper closed].
    std::size_t bound_cases[2][2] = {{0, 0}, {0, 0}};
};

SuiteResult suite_round_trip(std::uint64_t seed, std::size_t count);
SuiteResult suite_normalization(std::uint64_t seed, std::size_t count);
SuiteResult suite_negation(std::uint64_t seed, std::size_t count);
SuiteResult suite_move_p(std::uint64_t seed, std::size_t count);
SuiteResult suite_move_i(std::uint64_t seed, std::size_t count);
SuiteResult suite_discrete_dense(std::uint64_t seed, std::size_t count);
SuiteResult suite_cap_independence(std::uint64_t seed, std::size_t count);
SuiteResult suite_feasibility(std::uint64_t seed, std::size_t count, FeasibilityStats* stats = nullptr);
SuiteResult suite_sign_invariance(std::uint64_t seed, std::size_t count, std::size_t samples);
SuiteResult suite_synthesis(std::uint64_t seed, std::size_t count, long grid_lo, long grid_hi);
SuiteResult suite_cell_stability(std::uint64_t seed, std::size_t count, std::size_t samples);
SuiteResult suite_lu_monotonicity(std::uint64_t seed, std::size_t count);
SuiteResult suite_structural(std::uint64_t seed, LemmaKind kind, std::size_t count);

std::string render_suite(const SuiteResult& r);

/// Every suite at reduced counts; `quick` scales them down further.
std::string selftest_report(std::uint64_t seed, bool quick, bool* all_ok);

}  // namespace ptasynth
