#include "ptasynth/expression.hpp"

#include "ptasynth/error.hpp"

#include <sstream>

namespace ptasynth {

Expression Expression::constant(const Integer& c) {
    Expression e;
    e.add_term({}, c);
    return e;
}

Expression Expression::parameter(ParamId p, const Integer& coeff) {
    Expression e;
    e.add_term({{p, 1}}, coeff);
    return e;
}

Expression Expression::infinity() {
    Expression e;
    e.infinite_ = true;
    return e;
}

void Expression::add_term(const Monomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ExpressionKind Expression::kind() const {
    if (infinite_) return ExpressionKind::Infinity;
    return degree() <= 1 ? ExpressionKind::Linear : ExpressionKind::Polynomial;
}

bool Expression::is_concrete() const {
    if (infinite_) return false;
    for (const auto& [m, c] : terms_)
        if (!m.empty()) return false;
    return true;
}

unsigned Expression::degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned md = 0;
        for (const auto& [p, k] : m) md += k;
        d = std::max(d, md);
    }
    return d;
}

Integer Expression::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Integer(0) : it->second;
}

Integer Expression::coefficient(ParamId p) const {
    auto it = terms_.find(Monomial{{p, 1}});
    return it == terms_.end() ? Integer(0) : it->second;
}

std::set<ParamId> Expression::parameters() const {
    std::set<ParamId> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [p, k] : m) out.insert(p);
    return out;
}

ExtRational Expression::evaluate(const ParameterValuation& gamma) const {
    if (infinite_) return ExtRational::infinity();
    return evaluate_finite(gamma);
}

Rational Expression::evaluate_finite(const ParameterValuation& gamma) const {
    if (infinite_) throw PreconditionError("cannot evaluate infinity as a finite value");
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (const auto& [p, k] : m) {
            auto it = gamma.find(p);
            if (it == gamma.end())
                throw PreconditionError("missing value for parameter #" + std::to_string(p));
            for (unsigned i = 0; i < k; ++i) term *= it->second;
        }
        sum += term;
    }
    return sum;
}

Expression Expression::operator-() const {
    Expression e = *this;
    for (auto& [m, c] : e.terms_) c = -c;
    return e;
}

Expression& Expression::operator+=(const Expression& other) {
    if (other.infinite_ || infinite_) {
        infinite_ = true;
        terms_.clear();
        return *this;
    }
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Expression& Expression::operator-=(const Expression& other) {
    if (other.infinite_)
        throw PreconditionError("subtracting infinity is undefined");
    return *this += -other;
}

Expression& Expression::operator*=(const Integer& k) {
    if (infinite_) {
        if (k <= 0) throw PreconditionError("infinity scaled by a non-positive factor");
        return *this;
    }
    if (k == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
}

Expression operator*(const Expression& a, const Expression& b) {
    if (a.infinite_ || b.infinite_) throw PreconditionError("product with infinity");
    Expression out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            for (const auto& [p, k] : mb) m[p] += k;
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

std::string Expression::render(const std::vector<std::string>& names) const {
    if (infinite_) return "inf";
    if (terms_.empty()) return "0";
    auto name = [&](ParamId p) {
        return p < names.size() ? names[p] : "p#" + std::to_string(p);
    };
    std::ostringstream os;
    bool first = true;
    // Constant term last reads more naturally: "2p+3".
    auto emit = [&](const Monomial& m, const Integer& c) {
        Integer mag = abs(c);
        if (c < 0)
            os << "-";
        else if (!first)
            os << "+";
        first = false;
        if (m.empty()) {
            os << mag.get_str();
            return;
        }
        if (mag != 1) os << mag.get_str();
        bool first_factor = true;
        for (const auto& [p, k] : m) {
            if (!first_factor) os << "*";
            first_factor = false;
            os << name(p);
            if (k > 1) os << "^" << k;
        }
    };
    for (const auto& [m, c] : terms_)
        if (!m.empty()) emit(m, c);
    auto it = terms_.find(Monomial{});
    if (it != terms_.end()) emit(it->first, it->second);
    return os.str();
}

}  // namespace ptasynth
