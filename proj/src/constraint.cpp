#include "ptasynth/constraint.hpp"

#include <sstream>
#include <tuple>

namespace ptasynth {

AtomicConstraint AtomicConstraint::upper(ClockId x, Rel rel, Expression e) {
    return {x, std::nullopt, rel, std::move(e)};
}

AtomicConstraint AtomicConstraint::lower(ClockId x, Rel rel, Expression e) {
    return {std::nullopt, x, rel, std::move(e)};
}

AtomicConstraint AtomicConstraint::diagonal(ClockId x, ClockId y, Rel rel, Expression e) {
    return {x, y, rel, std::move(e)};
}

AtomicConstraint AtomicConstraint::clock_free(Rel rel, Expression e) {
    return {std::nullopt, std::nullopt, rel, std::move(e)};
}

Rational AtomicConstraint::lhs_value(const ClockValuation& omega) const {
    Rational v = 0;
    if (plus) v += omega.at(*plus);
    if (minus) v -= omega.at(*minus);
    return v;
}

bool AtomicConstraint::holds(const ClockValuation& omega, const ParameterValuation& gamma) const {
    if (rhs.is_infinite()) return true;
    return rel_holds(lhs_value(omega), rel, rhs.evaluate_finite(gamma));
}

std::optional<AtomicConstraint> AtomicConstraint::negated() const {
    if (rhs.is_infinite()) return std::nullopt;
    AtomicConstraint n;
    n.plus = minus;
    n.minus = plus;
    n.rel = rel == Rel::Le ? Rel::Lt : Rel::Le;
    n.rhs = -rhs;
    return n;
}

std::string AtomicConstraint::render(const std::vector<std::string>& clock_names,
                                     const std::vector<std::string>& param_names) const {
    std::ostringstream os;
    if (plus && minus)
        os << clock_names.at(*plus) << "-" << clock_names.at(*minus);
    else if (plus)
        os << clock_names.at(*plus);
    else if (minus)
        os << "-" << clock_names.at(*minus);
    else
        os << "0";
    os << (rel == Rel::Lt ? " < " : " <= ") << rhs.render(param_names);
    return os.str();
}

bool operator<(const AtomicConstraint& a, const AtomicConstraint& b) {
    auto key = [](const AtomicConstraint& c) {
        return std::make_tuple(c.plus.has_value(), c.plus.value_or(0), c.minus.has_value(),
                               c.minus.value_or(0), c.rel == Rel::Le);
    };
    if (key(a) != key(b)) return key(a) < key(b);
    if (a.rhs == b.rhs) return a.origin < b.origin;
    return a.rhs < b.rhs;
}

bool SimpleConstraint::holds(const ClockValuation& omega, const ParameterValuation& gamma) const {
    for (const auto& a : atoms)
        if (!a.holds(omega, gamma)) return false;
    return true;
}

void SimpleConstraint::conjoin(const SimpleConstraint& other) {
    atoms.insert(atoms.end(), other.atoms.begin(), other.atoms.end());
}

namespace {

// Recognizes the pair (t <= e, -t <= -e) written by the reader for "t = e".
bool is_equality_pair(const AtomicConstraint& a, const AtomicConstraint& b) {
    return a.origin == AtomOrigin::EqualitySplit && b.origin == AtomOrigin::EqualitySplit &&
           a.rel == Rel::Le && b.rel == Rel::Le && a.plus == b.minus && a.minus == b.plus &&
           !a.rhs.is_infinite() && b.rhs == -a.rhs;
}

}  // namespace

std::string SimpleConstraint::render(const std::vector<std::string>& clock_names,
                                     const std::vector<std::string>& param_names) const {
    if (atoms.empty()) return "true";
    std::ostringstream os;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) os << " & ";
        if (i + 1 < atoms.size() && is_equality_pair(atoms[i], atoms[i + 1])) {
            std::string s = atoms[i].render(clock_names, param_names);
            auto pos = s.find(" <= ");
            os << s.substr(0, pos) << " = " << s.substr(pos + 4);
            ++i;
            continue;
        }
        os << atoms[i].render(clock_names, param_names);
    }
    return os.str();
}

}  // namespace ptasynth
