#pragma once

#include "ptasynth/property.hpp"
#include "ptasynth/pta.hpp"

namespace ptasynth {

/// maxC: the largest |con(e)| over the finite expressions of the automaton,
/// 0 when there are none.  Throws UnsupportedError on a nonlinear expression.
Integer max_c(const Pta& pta);

/// maxV: the same quantity over the atoms of a property.
Integer max_v(const SystemProperty& psi);

struct Thresholds {
    Integer s0;
    Integer s1;
};

/// S0 = 2K * max(maxC, maxV) + 1 with K the number of transitions; S1 = 4 S0.
Thresholds thresholds(const Pta& pta, const SystemProperty& psi);

/// e[gamma], with +infinity for the infinite expression.
inline ExtRational evaluate_expression(const Expression& e, const ParameterValuation& gamma) {
    return e.evaluate(gamma);
}

}  // namespace ptasynth
