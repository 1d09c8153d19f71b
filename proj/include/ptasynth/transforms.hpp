#pragma once

#include "ptasynth/property.hpp"
#include "ptasynth/pta.hpp"

#include <set>

namespace ptasynth {

/// Transition index used for steps that do not come from the automaton.
inline constexpr std::size_t kSyntheticTransition = static_cast<std::size_t>(-1);

/// alpha(phi, q): location references become true (q) or false (others).
StateProperty encode_property(const StateProperty& phi, LocationId q);

/// Constant folding; the result is True, False, or free of both constants.
StateProperty simplify(const StateProperty& phi);

/// Pushes negation down to atoms and locations.  Atoms are replaced by
/// their complement, so the only remaining Not nodes wrap locations.
StateProperty negate_property(const StateProperty& phi);
StateProperty negation_normal_form(const StateProperty& phi);

/// Disjunctive normal form of a location-free property.  Each inner vector is
/// one conjunction of atoms; an empty outer vector means false and an empty
/// inner vector means true.  Throws PreconditionError on a location ref.
std::vector<SimpleConstraint> to_dnf(const StateProperty& phi);

/// A run ending in q_l with one disjunct of alpha(phi, q_l) to be checked
/// after an arbitrary delay in q_l.
struct EncodedRun {
    SyntacticRun base;
    SimpleConstraint final_guard_extra;

    /// The base run extended by a self-loop on q_l guarded by the disjunct.
    SyntacticRun observed() const;
};

std::vector<EncodedRun> alpha_transform(const SyntacticRun& tau, const StateProperty& phi);

/// A run whose invariants are all true; `initial_condition` is I_{q0},
/// to be checked at the zero valuation.
struct GuardOnlyRun {
    SyntacticRun run;
    SimpleConstraint initial_condition;
};

/// c[u]: substitutes reset clocks by their constants.  Returns nullopt when
/// the result is a constant that is identically true.
std::optional<AtomicConstraint> substitute_updates(const AtomicConstraint& a,
                                                   const std::vector<Update>& updates);
SimpleConstraint substitute_updates(const SimpleConstraint& g, const std::vector<Update>& updates);

GuardOnlyRun beta_transform(const SyntacticRun& tau);
GuardOnlyRun beta_transform(const EncodedRun& tau);

/// The chain automaton of a guard-only run.
Pta guard_only_automaton(const Pta& base, const GuardOnlyRun& run);

struct LuClassification {
    std::set<ParamId> lower;
    std::set<ParamId> upper;
    std::set<ParamId> both;
    bool is_lu = true;
};

/// Sign of each parameter's coefficient on atom right-hand sides.  Property
/// atoms are included when `psi` is given.
LuClassification classify_lu(const Pta& pta, const SystemProperty* psi = nullptr);

}  // namespace ptasynth
