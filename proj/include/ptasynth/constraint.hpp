#pragma once

#include "ptasynth/expression.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptasynth {

/// omega: clock id -> nonnegative value.
using ClockValuation = std::vector<Rational>;

enum class Rel { Lt, Le };

/// How an atom entered the model; equality is split into two atoms.
enum class AtomOrigin { Direct, EqualitySplit };

/// b1*x - b2*y  rel  rhs.  `plus` is x (present iff b1 = 1), `minus` is y
/// (present iff b2 = 1).  Atoms read from files always mention a clock;
/// clock-free atoms "0 rel rhs" only arise from substituting resets.
struct AtomicConstraint {
    std::optional<ClockId> plus;
    std::optional<ClockId> minus;
    Rel rel = Rel::Le;
    Expression rhs;
    AtomOrigin origin = AtomOrigin::Direct;

    static AtomicConstraint upper(ClockId x, Rel rel, Expression e);        // x rel e
    static AtomicConstraint lower(ClockId x, Rel rel, Expression e);        // -x rel e
    static AtomicConstraint diagonal(ClockId x, ClockId y, Rel rel, Expression e);
    static AtomicConstraint clock_free(Rel rel, Expression e);              // 0 rel e

    bool is_clock_free() const { return !plus && !minus; }
    bool mentions(ClockId c) const { return plus == c || minus == c; }
    bool is_parametric() const { return !rhs.is_infinite() && !rhs.is_concrete(); }

    /// b1*omega(x) - b2*omega(y).
    Rational lhs_value(const ClockValuation& omega) const;
    bool holds(const ClockValuation& omega, const ParameterValuation& gamma) const;

    /// The complementary atom: not(t <= e) is -t < -e.  Returns nullopt when
    /// the negation is identically false (rhs is infinity).
    std::optional<AtomicConstraint> negated() const;

    std::string render(const std::vector<std::string>& clock_names,
                       const std::vector<std::string>& param_names) const;

    friend bool operator==(const AtomicConstraint&, const AtomicConstraint&) = default;
};

bool operator<(const AtomicConstraint& a, const AtomicConstraint& b);

/// A conjunction of atoms; empty means true.
struct SimpleConstraint {
    std::vector<AtomicConstraint> atoms;

    bool is_true() const { return atoms.empty(); }
    bool holds(const ClockValuation& omega, const ParameterValuation& gamma) const;
    void conjoin(const SimpleConstraint& other);

    /// Atoms joined by " & "; "true" when empty.  Equality-split pairs are
    /// printed back as "t = e".
    std::string render(const std::vector<std::string>& clock_names,
                       const std::vector<std::string>& param_names) const;

    friend bool operator==(const SimpleConstraint&, const SimpleConstraint&) = default;
};

inline bool rel_holds(const Rational& lhs, Rel rel, const Rational& rhs) {
    return rel == Rel::Lt ? lhs < rhs : lhs <= rhs;
}

}  // namespace ptasynth
