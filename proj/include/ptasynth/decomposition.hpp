#pragma once

#include "ptasynth/algebraic.hpp"
#include "ptasynth/random.hpp"

namespace ptasynth {

/// sign(f) for each f of the defining set, in order.
using SignAssignment = std::vector<int>;

enum class CellRel { Gt, Ge, Eq };

/// expr rel 0.
struct LinearRelation {
    Expression expr;
    CellRel rel = CellRel::Ge;

    bool holds(const ParamPoint& point) const;
    /// "2p+q > 3": parameter terms left, constant right.
    std::string render(const std::vector<std::string>& names) const;
};

enum class CellKind { Interval1D, Point1D, LinearSystem };

struct Cell {
    CellKind kind = CellKind::Interval1D;
    ParamId param = 0;                     ///< 1-D cells
    std::optional<AlgebraicNumber> lower;  ///< Interval1D: nullopt is -inf; Point1D: the point
    std::optional<AlgebraicNumber> upper;  ///< Interval1D: nullopt is +inf
    std::vector<LinearRelation> constraints;  ///< LinearSystem
    ParamPoint sample;
    SignAssignment signs;

    bool contains(const ParamPoint& point) const;
    std::string describe(const std::vector<std::string>& names) const;
};

/// Signs of univariate polynomials at an algebraic number.
SignAssignment signs_at(const std::vector<UPoly>& polys, const AlgebraicNumber& alpha);
/// Signs of finite expressions at a point.
SignAssignment signs_at(const std::vector<Expression>& polys, const ParamPoint& point);

/// Projection of polynomials in Z[p][x] onto p: leading coefficients of the
/// reducta, discriminants and pairwise resultants.  Constants are dropped;
/// the result is primitive, square-free, duplicate-free and sorted.
std::vector<UPoly> project_clock(const std::vector<BPoly>& polys);

/// Points and open intervals induced by the real roots of `polys`, left to
/// right, each with a sample and the signs of `polys` there.
std::vector<Cell> decompose_1d(const std::vector<UPoly>& polys, ParamId param = 0);

/// The realizable sign vectors of the hyperplanes e = 0 over parameters
/// 0..m-1, each as a cell with a rational sample.  Throws UnsupportedError
/// for m > 3 or nonlinear input.
std::vector<Cell> decompose_linear(const std::vector<Expression>& hyperplanes, std::size_t m);

/// A rational point of a linear cell, chosen by the deterministic rule
/// (prefer 0, then the integer next to a one-sided bound, then a midpoint),
/// or at random when `rng` is given.  nullopt when the system is infeasible.
std::optional<ParameterValuation> solve_linear(const std::vector<LinearRelation>& system, std::size_t m,
                                               Rng* rng = nullptr);

/// A random point of the cell, for sampling its interior.
ParamPoint random_point(const Cell& cell, std::size_t m, Rng& rng);

/// Each a.P + c >= 0 becomes a.P - s + c = 0 with a fresh slack s >= 0
/// (parameters m, m+1, ...).  Over the integers a strict a.P + c > 0 is first
/// made a.P + c - 1 >= 0.  Returns the equalities and the number of slacks.
std::pair<std::vector<LinearRelation>, std::size_t> slack_form(const std::vector<LinearRelation>& system,
                                                                std::size_t m);

/// The lexicographically least integer point of the system inside the box
/// [lo_k, hi_k] for each parameter k.
std::optional<std::vector<Integer>> integer_point(const std::vector<LinearRelation>& system,
                                                  const std::vector<std::pair<long, long>>& box);

}  // namespace ptasynth
