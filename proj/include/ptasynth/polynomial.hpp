#pragma once

#include "ptasynth/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ptasynth {

/// A univariate polynomial over Q; coeffs[i] multiplies t^i.  The leading
/// coefficient is never zero and the zero polynomial has no coefficients.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    static UPoly constant(const Rational& c);
    static UPoly monomial(const Rational& c, unsigned degree);
    /// t - r
    static UPoly linear_root(const Rational& r);

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational eval(const Rational& t) const;
    int sign_at(const Rational& t) const { return sgn(eval(t)); }

    UPoly derivative() const;
    UPoly monic() const;
    /// Scaled to coprime integer coefficients with a positive leading term.
    UPoly primitive() const;
    UPoly square_free() const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const Rational& k);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator<(const UPoly& a, const UPoly& b);

    /// (quotient, remainder); throws on division by zero.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
    /// Exact quotient; throws PreconditionError when b does not divide a.
    static UPoly exact_div(const UPoly& a, const UPoly& b);
    /// Monic gcd; gcd(0, 0) = 0.
    static UPoly gcd(const UPoly& a, const UPoly& b);

    std::string render(const std::string& var = "p") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Sturm chain of f (f, f', then negated remainders).
std::vector<UPoly> sturm_chain(const UPoly& f);

/// Number of distinct real roots of f in (a, b].
std::size_t count_roots(const std::vector<UPoly>& chain, const Rational& a, const Rational& b);

/// A bound B with every real root of f in (-B, B).
Rational cauchy_bound(const UPoly& f);

/// A polynomial in x whose coefficients are polynomials in p:
/// coeffs[i] multiplies x^i.
class BPoly {
public:
    BPoly() = default;
    explicit BPoly(std::vector<UPoly> coeffs);

    bool is_zero() const { return c_.empty(); }
    int degree_x() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<UPoly>& coeffs() const { return c_; }
    UPoly leading() const { return c_.empty() ? UPoly() : c_.back(); }
    /// The polynomial without its leading x-term.
    BPoly reductum() const;
    BPoly derivative_x() const;
    /// f(alpha, x) with p replaced by a rational.
    UPoly at_p(const Rational& p) const;

    friend bool operator==(const BPoly& a, const BPoly& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<UPoly> c_;
};

/// Res_x(f, g) in Q[p], by fraction-free elimination on the Sylvester matrix.
/// Both arguments must have x-degree at least 1.
UPoly resultant_x(const BPoly& f, const BPoly& g);

}  // namespace ptasynth
