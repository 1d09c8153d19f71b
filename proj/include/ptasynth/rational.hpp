#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>

namespace ptasynth {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a", "-a" or "a/b".  Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

/// n/d in canonical form.
Rational make_rational(long n, long d);

Integer floor_of(const Rational& v);
Integer ceil_of(const Rational& v);

inline int sign_of(const Rational& v) { return sgn(v); }
inline int sign_of(const Integer& v) { return sgn(v); }

/// A rational or +infinity.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)
    ExtRational(long v) : value_(Rational(v)) {}       // NOLINT(implicit)

    static ExtRational infinity() {
        ExtRational r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    const Rational& value() const { return value_; }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const { return infinite_ ? "inf" : to_string(value_); }

private:
    Rational value_{0};
    bool infinite_ = false;
};

}  // namespace ptasynth
