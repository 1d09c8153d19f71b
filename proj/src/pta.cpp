#include "ptasynth/pta.hpp"

#include "ptasynth/error.hpp"

#include <algorithm>
#include <set>

namespace ptasynth {

std::string to_string(TimeDomain d) { return d == TimeDomain::Nat ? "nat" : "dense"; }

std::string to_string(ParamDomain d) {
    switch (d) {
        case ParamDomain::Int: return "int";
        case ParamDomain::Real: return "real";
        case ParamDomain::Nat: return "nat";
    }
    return "real";
}

TimeDomain parse_time_domain(const std::string& s) {
    if (s == "nat") return TimeDomain::Nat;
    if (s == "dense") return TimeDomain::Dense;
    throw std::invalid_argument("unknown time domain '" + s + "' (expected nat|dense)");
}

ParamDomain parse_param_domain(const std::string& s) {
    if (s == "int") return ParamDomain::Int;
    if (s == "real") return ParamDomain::Real;
    if (s == "nat") return ParamDomain::Nat;
    throw std::invalid_argument("unknown parameter domain '" + s + "' (expected int|real|nat)");
}

ClockValuation apply_updates(ClockValuation omega, const std::vector<Update>& updates) {
    for (const auto& u : updates) omega.at(u.clock) = Rational(u.value);
    return omega;
}

namespace {

template <typename T>
std::optional<std::size_t> index_of(const std::vector<T>& v, const T& x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
}

}  // namespace

std::optional<LocationId> Pta::find_location(const std::string& name) const {
    return index_of(locations, name);
}
std::optional<ClockId> Pta::find_clock(const std::string& name) const {
    return index_of(clocks, name);
}
std::optional<ParamId> Pta::find_param(const std::string& name) const {
    return index_of(params, name);
}

ActionId Pta::intern_action(const std::string& name) {
    if (auto id = index_of(actions, name)) return *id;
    actions.push_back(name);
    return actions.size() - 1;
}

std::vector<const AtomicConstraint*> Pta::atoms() const {
    std::vector<const AtomicConstraint*> out;
    for (const auto& inv : invariants)
        for (const auto& a : inv.atoms) out.push_back(&a);
    for (const auto& t : transitions)
        for (const auto& a : t.guard.atoms) out.push_back(&a);
    return out;
}

std::vector<ClockId> Pta::parametric_clocks() const {
    std::set<ClockId> s;
    for (const auto* a : atoms()) {
        if (!a->is_parametric()) continue;
        if (a->plus) s.insert(*a->plus);
        if (a->minus) s.insert(*a->minus);
    }
    return {s.begin(), s.end()};
}

std::vector<ClockId> Pta::constrained_clocks() const {
    std::set<ClockId> s;
    for (const auto* a : atoms()) {
        if (a->plus) s.insert(*a->plus);
        if (a->minus) s.insert(*a->minus);
    }
    return {s.begin(), s.end()};
}

void Pta::validate() const {
    if (locations.empty()) throw PreconditionError("automaton has no locations");
    if (initial >= locations.size()) throw PreconditionError("initial location out of range");
    if (invariants.size() != locations.size())
        throw PreconditionError("one invariant per location expected");
    auto check_atom = [&](const AtomicConstraint& a) {
        if (a.plus && *a.plus >= clocks.size()) throw PreconditionError("undeclared clock in atom");
        if (a.minus && *a.minus >= clocks.size()) throw PreconditionError("undeclared clock in atom");
        if (a.plus && a.minus && *a.plus == *a.minus)
            throw PreconditionError("diagonal atom over a single clock");
        for (ParamId p : a.rhs.parameters())
            if (p >= params.size()) throw PreconditionError("undeclared parameter in atom");
    };
    for (const auto* a : atoms()) check_atom(*a);
    for (const auto& t : transitions) {
        if (t.source >= locations.size() || t.target >= locations.size())
            throw PreconditionError("transition endpoint out of range");
        if (t.action >= actions.size()) throw PreconditionError("transition action out of range");
        std::set<ClockId> seen;
        for (const auto& u : t.updates) {
            if (u.clock >= clocks.size()) throw PreconditionError("update of undeclared clock");
            if (u.value < 0) throw PreconditionError("update constant must be natural");
            if (!seen.insert(u.clock).second)
                throw PreconditionError("clock reset twice on one transition");
        }
    }
}

SyntacticRun make_run(const Pta& pta, const std::vector<std::size_t>& indices) {
    SyntacticRun run;
    run.start = pta.initial;
    run.invariants.push_back(pta.invariants.at(pta.initial));
    LocationId at = pta.initial;
    for (std::size_t k : indices) {
        if (k >= pta.transitions.size())
            throw PreconditionError("run refers to edge " + std::to_string(k) + " which does not exist");
        const auto& t = pta.transitions[k];
        if (t.source != at)
            throw PreconditionError("edge " + std::to_string(k) + " does not leave location " +
                                    pta.locations[at]);
        run.steps.push_back({k, t.source, t.target, t.guard, t.action, t.updates});
        run.invariants.push_back(pta.invariants.at(t.target));
        at = t.target;
    }
    return run;
}

Pta run_automaton(const Pta& base, const SyntacticRun& run) {
    Pta a;
    a.clocks = base.clocks;
    a.params = base.params;
    a.actions = base.actions;
    a.time_domain = base.time_domain;
    a.param_domain = base.param_domain;
    for (std::size_t i = 0; i <= run.steps.size(); ++i) {
        a.locations.push_back("s" + std::to_string(i));
        a.invariants.push_back(i < run.invariants.size() ? run.invariants[i] : SimpleConstraint{});
    }
    a.initial = 0;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const auto& s = run.steps[i];
        ActionId act = s.action < a.actions.size() ? s.action : a.intern_action("obs");
        a.transitions.push_back({i, i + 1, s.guard, act, s.updates});
    }
    return a;
}

}  // namespace ptasynth
