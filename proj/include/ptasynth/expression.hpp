#pragma once

#include "ptasynth/rational.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ptasynth {

using ParamId = std::size_t;
using ClockId = std::size_t;

/// gamma: parameter id -> exact value.
using ParameterValuation = std::map<ParamId, Rational>;

/// Product of parameters with positive exponents; empty means the constant 1.
using Monomial = std::map<ParamId, unsigned>;

enum class ExpressionKind { Linear, Polynomial, Infinity };

/// An integer polynomial over the parameters, or +infinity.  Zero
/// coefficients are never stored.
class Expression {
public:
    Expression() = default;

    static Expression constant(const Integer& c);
    static Expression parameter(ParamId p, const Integer& coeff = 1);
    static Expression infinity();

    ExpressionKind kind() const;
    bool is_infinite() const { return infinite_; }
    bool is_linear() const { return kind() == ExpressionKind::Linear; }
    bool is_concrete() const;  ///< finite and parameter free
    bool is_zero() const { return !infinite_ && terms_.empty(); }
    unsigned degree() const;

    /// con(e): the constant term.
    Integer constant_term() const;
    /// cf(e, p): the coefficient of the degree-one monomial p.
    Integer coefficient(ParamId p) const;
    std::set<ParamId> parameters() const;
    const std::map<Monomial, Integer>& terms() const { return terms_; }

    /// e[gamma].  Throws PreconditionError when a parameter has no value.
    ExtRational evaluate(const ParameterValuation& gamma) const;
    /// Finite evaluation; throws on infinity.
    Rational evaluate_finite(const ParameterValuation& gamma) const;

    Expression operator-() const;
    Expression& operator+=(const Expression& other);
    Expression& operator-=(const Expression& other);
    Expression& operator*=(const Integer& k);
    friend Expression operator+(Expression a, const Expression& b) { return a += b; }
    friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
    friend Expression operator*(Expression a, const Integer& k) { return a *= k; }
    friend Expression operator*(const Expression& a, const Expression& b);

    friend bool operator==(const Expression& a, const Expression& b) {
        return a.infinite_ == b.infinite_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const Expression& a, const Expression& b) {
        if (a.infinite_ != b.infinite_) return b.infinite_;
        return a.terms_ < b.terms_;
    }

    /// Renders in the model syntax ("2p+3", "p^2-1", "p*q", "inf").
    std::string render(const std::vector<std::string>& param_names) const;

private:
    void add_term(const Monomial& m, const Integer& c);

    bool infinite_ = false;
    std::map<Monomial, Integer> terms_;
};

}  // namespace ptasynth
