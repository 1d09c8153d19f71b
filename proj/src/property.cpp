#include "ptasynth/property.hpp"

namespace ptasynth {

StateProperty StateProperty::truth(bool value) {
    StateProperty p;
    p.kind = value ? Kind::True : Kind::False;
    return p;
}

StateProperty StateProperty::of_atom(AtomicConstraint a) {
    StateProperty p;
    p.kind = Kind::Atom;
    p.atom = std::move(a);
    return p;
}

StateProperty StateProperty::at(LocationId q) {
    StateProperty p;
    p.kind = Kind::Location;
    p.location = q;
    return p;
}

StateProperty StateProperty::negation(StateProperty c) {
    StateProperty p;
    p.kind = Kind::Not;
    p.children.push_back(std::move(c));
    return p;
}

StateProperty StateProperty::conjunction(StateProperty a, StateProperty b) {
    StateProperty p;
    p.kind = Kind::And;
    p.children.push_back(std::move(a));
    p.children.push_back(std::move(b));
    return p;
}

StateProperty StateProperty::disjunction(StateProperty a, StateProperty b) {
    StateProperty p;
    p.kind = Kind::Or;
    p.children.push_back(std::move(a));
    p.children.push_back(std::move(b));
    return p;
}

bool StateProperty::holds(LocationId q, const ClockValuation& omega,
                          const ParameterValuation& gamma) const {
    switch (kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return atom.holds(omega, gamma);
        case Kind::Location: return location == q;
        case Kind::Not: return !children[0].holds(q, omega, gamma);
        case Kind::And:
            for (const auto& c : children)
                if (!c.holds(q, omega, gamma)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : children)
                if (c.holds(q, omega, gamma)) return true;
            return false;
    }
    return false;
}

std::string StateProperty::render(const Pta& pta) const {
    switch (kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Atom: return atom.render(pta.clocks, pta.params);
        case Kind::Location: return pta.locations.at(location);
        case Kind::Not: return "!(" + children[0].render(pta) + ")";
        case Kind::And:
        case Kind::Or: {
            std::string sep = kind == Kind::And ? " && " : " || ";
            std::string out = "(";
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i > 0) out += sep;
                out += children[i].render(pta);
            }
            return out + ")";
        }
    }
    return "";
}

std::string SystemProperty::render(const Pta& pta) const {
    return (quantifier == Quantifier::ExistsEventually ? "EF " : "AG ") + phi.render(pta);
}

void collect_atoms(const StateProperty& phi, std::vector<AtomicConstraint>& out) {
    if (phi.kind == StateProperty::Kind::Atom) out.push_back(phi.atom);
    for (const auto& c : phi.children) collect_atoms(c, out);
}

}  // namespace ptasynth
