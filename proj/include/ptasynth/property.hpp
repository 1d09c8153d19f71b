#pragma once

#include "ptasynth/pta.hpp"

#include <string>
#include <vector>

namespace ptasynth {

/// phi ::= atom | location | !phi | phi && phi | phi || phi  (plus the
/// constants true/false produced by encoding).
struct StateProperty {
    enum class Kind { True, False, Atom, Location, Not, And, Or };

    Kind kind = Kind::True;
    AtomicConstraint atom;     ///< Kind::Atom
    LocationId location = 0;   ///< Kind::Location
    std::vector<StateProperty> children;

    static StateProperty truth(bool value);
    static StateProperty of_atom(AtomicConstraint a);
    static StateProperty at(LocationId q);
    static StateProperty negation(StateProperty p);
    static StateProperty conjunction(StateProperty a, StateProperty b);
    static StateProperty disjunction(StateProperty a, StateProperty b);

    /// Truth at the concrete state (q, omega) under gamma.
    bool holds(LocationId q, const ClockValuation& omega, const ParameterValuation& gamma) const;

    std::string render(const Pta& pta) const;

    friend bool operator==(const StateProperty&, const StateProperty&) = default;
};

enum class Quantifier { ExistsEventually, ForallAlways };

struct SystemProperty {
    Quantifier quantifier = Quantifier::ExistsEventually;
    StateProperty phi;

    std::string render(const Pta& pta) const;
    friend bool operator==(const SystemProperty&, const SystemProperty&) = default;
};

/// Collects the atoms occurring in phi, left to right.
void collect_atoms(const StateProperty& phi, std::vector<AtomicConstraint>& out);

}  // namespace ptasynth
