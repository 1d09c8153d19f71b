#include "ptasynth/rational.hpp"

#include <stdexcept>

namespace ptasynth {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') i = 1;
    bool seen_digit = false;
    bool seen_slash = false;
    for (std::size_t k = i; k < text.size(); ++k) {
        char c = text[k];
        if (c >= '0' && c <= '9') {
            seen_digit = true;
        } else if (c == '/' && !seen_slash && seen_digit && k + 1 < text.size()) {
            seen_slash = true;
        } else {
            throw std::invalid_argument("not a rational number: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("not a rational number: " + text);
    Rational r;
    std::string body = text[0] == '+' ? text.substr(1) : text;
    if (r.set_str(body, 10) != 0) throw std::invalid_argument("not a rational number: " + text);
    if (seen_slash && r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
    Rational c = v;
    c.canonicalize();
    return c.get_str();
}

Rational make_rational(long n, long d) {
    Rational v(n, d);
    v.canonicalize();
    return v;
}

Integer floor_of(const Rational& v) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& v) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

}  // namespace ptasynth
