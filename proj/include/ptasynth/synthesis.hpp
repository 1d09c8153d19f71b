#pragma once

#include "ptasynth/decomposition.hpp"
#include "ptasynth/property.hpp"
#include "ptasynth/pta.hpp"
#include "ptasynth/transforms.hpp"

namespace ptasynth {

/// plus - minus - expr, a polynomial over the parameters and clocks.
struct ClockPolynomial {
    std::optional<ClockId> plus;
    std::optional<ClockId> minus;
    Expression expr;

    std::string render(const Pta& pta) const;
    friend bool operator==(const ClockPolynomial&, const ClockPolynomial&) = default;
};
bool operator<(const ClockPolynomial& a, const ClockPolynomial& b);

/// The polynomial of every atom of the automaton and the property,
/// duplicates removed, sorted.
std::vector<ClockPolynomial> collect_constraint_polynomials(const Pta& pta, const SystemProperty& psi);

struct RegionCell {
    Cell cell;
    bool verdict = false;
    /// The point the verdict was computed at (absent for an irrational sample).
    std::optional<ParameterValuation> decided_at;
    /// For integer parameter domains: an integer point of the cell, if any.
    std::optional<std::vector<Integer>> integer_witness;
};

struct FeasibleRegion {
    std::vector<std::string> params;
    std::string method;  ///< "cad1" or "linear"
    TimeDomain time = TimeDomain::Dense;
    ParamDomain param_domain = ParamDomain::Real;
    std::string property;
    /// The sign-defining set: polynomials in the single parameter (cad1) or
    /// hyperplanes (linear).
    std::vector<Expression> defining;
    std::vector<RegionCell> cells;

    bool empty() const;
};

/// Bounding box used to look for integer points of a cell.
inline constexpr long kIntegerSearchRadius = 64;

/// The cells synthesize decides, before any decision.
struct ParameterDecomposition {
    std::string method;
    std::vector<Expression> defining;
    std::vector<Cell> cells;
};

ParameterDecomposition decompose_parameters(const Pta& pta, const SystemProperty& psi);

/// Gamma(A, psi) for automata with at most one constrained clock.
/// Throws UnsupportedError outside that fragment.
FeasibleRegion synthesize(const Pta& pta, const SystemProperty& psi);

/// All runs from q0 of length at most max_len, breadth first, edges in
/// declaration order.
std::vector<SyntacticRun> enumerate_runs(const Pta& pta, std::size_t max_len);

/// The parameters under which tau can be realized and then satisfy phi.
FeasibleRegion run_region(const Pta& pta, const SyntacticRun& tau, const StateProperty& phi);

/// The verdict of the cell holding gamma.
bool region_query(const FeasibleRegion& region, const ParamPoint& gamma);
const RegionCell* locate(const FeasibleRegion& region, const ParamPoint& gamma);

}  // namespace ptasynth
