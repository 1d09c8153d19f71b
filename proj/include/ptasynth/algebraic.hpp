#pragma once

#include "ptasynth/expression.hpp"
#include "ptasynth/polynomial.hpp"

#include <optional>
#include <variant>

namespace ptasynth {

/// A real algebraic number: the unique root of a square-free integer
/// polynomial in (lo, hi), or an exact rational.  For irrational values
/// neither endpoint is a root.
class AlgebraicNumber {
public:
    AlgebraicNumber() = default;
    explicit AlgebraicNumber(const Rational& r);
    /// The caller guarantees that f has exactly one root in (lo, hi].
    AlgebraicNumber(UPoly f, Rational lo, Rational hi);

    bool is_rational() const { return exact_.has_value(); }
    const Rational& rational() const { return *exact_; }
    const UPoly& poly() const { return f_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    /// Halves the isolating interval (no-op for rationals).
    void refine() const;
    /// Refines until hi - lo < width.
    void refine_to(const Rational& width) const;

    /// Sign of g at this number, certified exactly.
    int sign_of(const UPoly& g) const;
    int compare(const Rational& r) const;
    int compare(const AlgebraicNumber& other) const;

    /// A rational lying strictly between this number and `other` (this < other).
    Rational rational_between(const AlgebraicNumber& other) const;

    double approx() const;
    std::string render() const;

private:
    mutable UPoly f_;
    mutable Rational lo_ = 0, hi_ = 0;
    mutable std::optional<Rational> exact_;
    mutable std::vector<UPoly> chain_;
};

/// All distinct real roots of f, increasing.  Throws PreconditionError for f = 0.
std::vector<AlgebraicNumber> isolate_real_roots(const UPoly& f);

/// The expression as a polynomial in one parameter; throws PreconditionError
/// when another parameter occurs or the expression is infinite.
UPoly to_upoly(const Expression& e, ParamId p);

/// A point of parameter space: a rational valuation, or an algebraic value
/// of a single parameter.
class ParamPoint {
public:
    ParamPoint() = default;
    ParamPoint(ParameterValuation gamma);  // NOLINT(implicit)
    ParamPoint(ParamId p, AlgebraicNumber alpha);

    bool is_rational() const;
    /// The value of one coordinate; parameters without a value read as 0.
    AlgebraicNumber coordinate(ParamId p) const;
    /// The valuation when every coordinate is rational.
    std::optional<ParameterValuation> rational() const;

    /// Sign of a finite expression at the point.
    int sign(const Expression& e) const;
    /// Three-way comparison of extended values a[point] and b[point].
    int compare(const Expression& a, const Expression& b) const;

    std::string render(const std::vector<std::string>& param_names) const;

private:
    ParameterValuation gamma_;
    std::optional<std::pair<ParamId, AlgebraicNumber>> alg_;
};

}  // namespace ptasynth
