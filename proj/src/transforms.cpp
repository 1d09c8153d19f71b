#include "ptasynth/transforms.hpp"

#include "ptasynth/error.hpp"

namespace ptasynth {

using Kind = StateProperty::Kind;

StateProperty encode_property(const StateProperty& phi, LocationId q) {
    if (phi.kind == Kind::Location) return StateProperty::truth(phi.location == q);
    StateProperty out = phi;
    for (auto& c : out.children) c = encode_property(c, q);
    return out;
}

StateProperty simplify(const StateProperty& phi) {
    switch (phi.kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::Location:
            return phi;
        case Kind::Not: {
            StateProperty c = simplify(phi.children[0]);
            if (c.kind == Kind::True) return StateProperty::truth(false);
            if (c.kind == Kind::False) return StateProperty::truth(true);
            return StateProperty::negation(std::move(c));
        }
        case Kind::And:
        case Kind::Or: {
            // And: True is neutral and False absorbing; Or is the dual.
            Kind neutral = phi.kind == Kind::And ? Kind::True : Kind::False;
            StateProperty out;
            out.kind = phi.kind;
            for (const auto& child : phi.children) {
                StateProperty c = simplify(child);
                if (c.kind == neutral) continue;
                if (c.kind == Kind::True || c.kind == Kind::False) return c;
                out.children.push_back(std::move(c));
            }
            if (out.children.empty()) return StateProperty::truth(neutral == Kind::True);
            if (out.children.size() == 1) return out.children[0];
            return out;
        }
    }
    return phi;
}

namespace {

StateProperty nnf(const StateProperty& phi, bool positive) {
    switch (phi.kind) {
        case Kind::True:
        case Kind::False:
            return StateProperty::truth((phi.kind == Kind::True) == positive);
        case Kind::Atom: {
            if (positive) return phi;
            auto n = phi.atom.negated();
            if (!n) return StateProperty::truth(false);
            n->origin = AtomOrigin::Direct;
            return StateProperty::of_atom(*n);
        }
        case Kind::Location:
            return positive ? phi : StateProperty::negation(phi);
        case Kind::Not:
            return nnf(phi.children[0], !positive);
        case Kind::And:
        case Kind::Or: {
            StateProperty out;
            bool is_and = (phi.kind == Kind::And) == positive;
            out.kind = is_and ? Kind::And : Kind::Or;
            for (const auto& c : phi.children) out.children.push_back(nnf(c, positive));
            return out;
        }
    }
    return phi;
}

std::vector<SimpleConstraint> dnf(const StateProperty& phi) {
    switch (phi.kind) {
        case Kind::True: return {SimpleConstraint{}};
        case Kind::False: return {};
        case Kind::Atom: return {SimpleConstraint{{phi.atom}}};
        case Kind::Location:
        case Kind::Not:
            throw PreconditionError("DNF expects a location-free property in negation normal form");
        case Kind::Or: {
            std::vector<SimpleConstraint> out;
            for (const auto& c : phi.children) {
                auto d = dnf(c);
                out.insert(out.end(), d.begin(), d.end());
            }
            return out;
        }
        case Kind::And: {
            std::vector<SimpleConstraint> acc{SimpleConstraint{}};
            for (const auto& c : phi.children) {
                auto d = dnf(c);
                std::vector<SimpleConstraint> next;
                for (const auto& a : acc) {
                    for (const auto& b : d) {
                        SimpleConstraint m = a;
                        m.conjoin(b);
                        next.push_back(std::move(m));
                    }
                }
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

}  // namespace

StateProperty negation_normal_form(const StateProperty& phi) { return nnf(phi, true); }

StateProperty negate_property(const StateProperty& phi) { return nnf(phi, false); }

std::vector<SimpleConstraint> to_dnf(const StateProperty& phi) {
    return dnf(simplify(negation_normal_form(phi)));
}

SyntacticRun EncodedRun::observed() const {
    SyntacticRun r = base;
    LocationId q = base.last_location();
    RunStep obs;
    obs.transition = kSyntheticTransition;
    obs.source = q;
    obs.target = q;
    obs.guard = final_guard_extra;
    obs.action = static_cast<ActionId>(-1);
    r.steps.push_back(std::move(obs));
    r.invariants.push_back(base.invariants.back());
    return r;
}

std::vector<EncodedRun> alpha_transform(const SyntacticRun& tau, const StateProperty& phi) {
    std::vector<EncodedRun> out;
    for (auto& d : to_dnf(encode_property(phi, tau.last_location()))) out.push_back({tau, std::move(d)});
    return out;
}

std::optional<AtomicConstraint> substitute_updates(const AtomicConstraint& a,
                                                   const std::vector<Update>& updates) {
    const Update* up_plus = nullptr;
    const Update* up_minus = nullptr;
    for (const auto& u : updates) {
        if (a.plus == u.clock) up_plus = &u;
        if (a.minus == u.clock) up_minus = &u;
    }
    if (!up_plus && !up_minus) return a;
    if (a.rhs.is_infinite()) return std::nullopt;
    AtomicConstraint r = a;
    if (up_plus) {
        r.plus.reset();
        r.rhs -= Expression::constant(up_plus->value);
    }
    if (up_minus) {
        r.minus.reset();
        r.rhs += Expression::constant(up_minus->value);
    }
    if (r.is_clock_free() && r.rhs.is_concrete() && rel_holds(0, r.rel, r.rhs.constant_term()))
        return std::nullopt;
    return r;
}

SimpleConstraint substitute_updates(const SimpleConstraint& g, const std::vector<Update>& updates) {
    SimpleConstraint out;
    for (const auto& a : g.atoms)
        if (auto s = substitute_updates(a, updates)) out.atoms.push_back(*s);
    return out;
}

GuardOnlyRun beta_transform(const SyntacticRun& tau) {
    GuardOnlyRun out;
    out.initial_condition = tau.invariants.at(0);
    out.run.start = tau.start;
    out.run.invariants.assign(tau.steps.size() + 1, SimpleConstraint{});
    for (std::size_t i = 0; i < tau.steps.size(); ++i) {
        RunStep s = tau.steps[i];
        s.guard.conjoin(tau.invariants.at(i));
        s.guard.conjoin(substitute_updates(tau.invariants.at(i + 1), s.updates));
        out.run.steps.push_back(std::move(s));
    }
    return out;
}

GuardOnlyRun beta_transform(const EncodedRun& tau) { return beta_transform(tau.observed()); }

Pta guard_only_automaton(const Pta& base, const GuardOnlyRun& run) {
    return run_automaton(base, run.run);
}

LuClassification classify_lu(const Pta& pta, const SystemProperty* psi) {
    LuClassification out;
    auto visit = [&](const AtomicConstraint& a) {
        if (a.rhs.is_infinite()) return;
        if (!a.rhs.is_linear()) throw UnsupportedError("L/U classification needs linear expressions");
        for (ParamId p : a.rhs.parameters()) {
            if (a.rhs.coefficient(p) > 0)
                out.upper.insert(p);
            else
                out.lower.insert(p);
        }
    };
    for (const auto* a : pta.atoms()) visit(*a);
    if (psi) {
        std::vector<AtomicConstraint> atoms;
        collect_atoms(negation_normal_form(psi->phi), atoms);
        for (const auto& a : atoms) visit(a);
    }
    for (ParamId p : out.lower)
        if (out.upper.count(p)) out.both.insert(p);
    for (ParamId p : out.both) {
        out.lower.erase(p);
        out.upper.erase(p);
    }
    out.is_lu = out.both.empty();
    return out;
}

}  // namespace ptasynth
