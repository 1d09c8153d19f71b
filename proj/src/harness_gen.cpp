#include "ptasynth/harness.hpp"

#include "ptasynth/metrics.hpp"
#include "ptasynth/semantics.hpp"
#include "ptasynth/transforms.hpp"

#include <functional>

namespace ptasynth {

namespace {

const char* kParamNames[] = {"p", "r", "s"};

Rel random_rel(Rng& rng) { return rng.chance(1, 2) ? Rel::Le : Rel::Lt; }

/// x rel e or x >(=) e on the given clock.
AtomicConstraint random_bound(Rng& rng, ClockId x, std::size_t m, long max_const) {
    Expression e = random_expression(rng, m, max_const);
    if (rng.chance(1, 2)) return AtomicConstraint::upper(x, random_rel(rng), e);
    return AtomicConstraint::lower(x, random_rel(rng), -e);
}

SimpleConstraint random_guard(Rng& rng, ClockId x, std::size_t m, long max_const, long max_atoms) {
    SimpleConstraint g;
    for (long k = rng.uniform(0, max_atoms); k > 0; --k) g.atoms.push_back(random_bound(rng, x, m, max_const));
    return g;
}

SimpleConstraint random_invariant(Rng& rng, ClockId x, std::size_t m, long max_const, unsigned num, unsigned den) {
    SimpleConstraint inv;
    if (rng.chance(num, den)) inv.atoms.push_back(AtomicConstraint::upper(x, random_rel(rng),
                                                                          random_expression(rng, m, max_const)));
    return inv;
}

void set_domains(Pta& a, TimeDomain time) {
    a.time_domain = time;
    a.param_domain = time == TimeDomain::Nat ? ParamDomain::Int : ParamDomain::Real;
}

void add_locations(Pta& a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a.locations.push_back("q" + std::to_string(i));
    a.invariants.assign(n, SimpleConstraint{});
}

Transition edge(Pta& a, LocationId s, LocationId t, SimpleConstraint g, std::vector<Update> u = {},
                const std::string& act = "a") {
    Transition tr;
    tr.source = s;
    tr.target = t;
    tr.guard = std::move(g);
    tr.action = a.intern_action(act);
    tr.updates = std::move(u);
    return tr;
}

AtomicConstraint ge(ClockId c, long v) { return AtomicConstraint::lower(c, Rel::Le, Expression::constant(-v)); }
AtomicConstraint le(ClockId c, long v) { return AtomicConstraint::upper(c, Rel::Le, Expression::constant(v)); }
Expression P() { return Expression::parameter(0); }

/// One of the parametric atoms t rel p or t rel -p on clocks a, b.
AtomicConstraint random_table_atom(Rng& rng, ClockId a, ClockId b, bool upper_only) {
    Rel rel = random_rel(rng);
    long form = rng.uniform(0, upper_only ? 3 : 7);
    switch (form) {
        case 0: return AtomicConstraint::upper(a, rel, P());
        case 1: return AtomicConstraint::upper(b, rel, P());
        case 2: return AtomicConstraint::diagonal(a, b, rel, P());
        case 3: return AtomicConstraint::diagonal(b, a, rel, P());
        case 4: return AtomicConstraint::lower(a, rel, -P());
        case 5: return AtomicConstraint::lower(b, rel, -P());
        case 6: return AtomicConstraint::diagonal(b, a, rel, -P());
        default: return AtomicConstraint::diagonal(a, b, rel, -P());
    }
}

/// Discrete-time random walk; stops as soon as `stop` holds on arrival.
std::optional<ConcreteRun> random_walk(Rng& rng, const Pta& pta, const ParameterValuation& gamma,
                                       std::size_t max_len, long max_delay,
                                       const std::function<bool(const ClockValuation&)>& stop) {
    ClockValuation w(pta.clocks.size(), Rational(0));
    LocationId q = pta.initial;
    if (!pta.invariants[q].holds(w, gamma)) return std::nullopt;
    ConcreteRun run;
    auto shifted = [&](long d) {
        ClockValuation v = w;
        for (auto& c : v) c += d;
        return v;
    };
    for (std::size_t len = 0; len < max_len; ++len) {
        long dmax = 0;
        while (dmax < max_delay && pta.invariants[q].holds(shifted(dmax + 1), gamma)) ++dmax;
        bool moved = false;
        for (int attempt = 0; attempt < 8 && !moved; ++attempt) {
            long d = rng.uniform(0, dmax);
            ClockValuation v = shifted(d);
            std::vector<std::size_t> enabled;
            for (std::size_t t = 0; t < pta.transitions.size(); ++t) {
                const Transition& tr = pta.transitions[t];
                if (tr.source != q || !tr.guard.holds(v, gamma)) continue;
                if (!pta.invariants[tr.target].holds(apply_updates(v, tr.updates), gamma)) continue;
                enabled.push_back(t);
            }
            if (enabled.empty()) continue;
            std::size_t t = rng.pick(enabled);
            run.steps.push_back({Rational(d), t});
            w = apply_updates(v, pta.transitions[t].updates);
            q = pta.transitions[t].target;
            moved = true;
        }
        if (!moved) return std::nullopt;
        if (stop(w)) return run;
    }
    return std::nullopt;
}

Pta two_clock_skeleton(Rng& rng) {
    Pta a;
    a.clocks = {"x", "y"};
    if (rng.chance(1, 3)) a.clocks.push_back("z");
    a.params = {"p"};
    a.time_domain = TimeDomain::Nat;
    a.param_domain = ParamDomain::Nat;
    return a;
}

TwoOnePta as_two_one(const Pta& a) {
    TwoOnePta two = validate_two_one(a);
    two.x = 0;
    two.y = 1;
    two.p = 0;
    return two;
}

SystemProperty trivially_true() {
    SystemProperty psi;
    psi.phi = StateProperty::truth(true);
    return psi;
}

/// Drift family: clock `d` grows while `r` is reset in loops.
std::optional<TwoOneInstance> drift_instance(Rng& rng, bool swapped) {
    Pta a = two_clock_skeleton(rng);
    const ClockId d = swapped ? 1 : 0, r = swapped ? 0 : 1;
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    add_locations(a, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.chance(1, 2)) a.invariants[i].atoms.push_back(le(r, rng.uniform(1, 3)));
        SimpleConstraint g;
        switch (rng.uniform(0, 3)) {
            case 0: g.atoms.push_back(le(r, rng.uniform(1, 3))); break;
            case 1: g.atoms.push_back(ge(r, rng.uniform(0, 2))); break;
            case 2: {
                long c = rng.uniform(1, 3);
                g.atoms.push_back(le(r, c));
                g.atoms.push_back(ge(r, c));
                break;
            }
            default: break;
        }
        if (rng.chance(1, 2)) g.atoms.push_back(random_table_atom(rng, d, r, true));
        std::vector<Update> u;
        if (rng.chance(3, 4)) u.push_back({r, 0});
        if (a.clocks.size() > 2 && rng.chance(1, 2)) u.push_back({2, 0});
        a.transitions.push_back(edge(a, i, i, g, u, "loop"));
        if (i + 1 < n) {
            SimpleConstraint f;
            if (rng.chance(1, 2)) f.atoms.push_back(ge(d, rng.uniform(0, 3)));
            if (rng.chance(1, 3)) f.atoms.push_back(le(r, rng.uniform(1, 3)));
            if (rng.chance(1, 2)) f.atoms.push_back(random_table_atom(rng, d, r, false));
            std::vector<Update> fu;
            if (rng.chance(1, 2)) fu.push_back({r, 0});
            if (i == 0 && rng.chance(1, 4)) fu.push_back({d, 0});
            a.transitions.push_back(edge(a, i, i + 1, f, fu, "next"));
        }
    }
    if (n > 1 && rng.chance(1, 3)) a.transitions.push_back(edge(a, n - 1, 0, {}, {{r, 0}}, "back"));
    TwoOneInstance inst{as_two_one(a), {}, {}};
    Thresholds t = thresholds(inst.two.pta, trivially_true());
    inst.gamma[0] = Rational(t.s1 + rng.uniform(0, t.s0.get_si()));
    const TwoOnePta& two = inst.two;
    auto stop = [&](const ClockValuation& w) { return w[d] - w[r] >= Rational(t.s1); };
    auto run = random_walk(rng, two.pta, inst.gamma, 40 * t.s1.get_ui(), 2 * t.s0.get_si(), stop);
    if (!run) return std::nullopt;
    inst.run = *run;
    return inst;
}

/// Both clocks grow; only the first edge may reset one of them.
std::optional<TwoOneInstance> joint_instance(Rng& rng) {
    Pta a = two_clock_skeleton(rng);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    add_locations(a, n);
    for (std::size_t i = 0; i < n; ++i) {
        SimpleConstraint g;
        if (rng.chance(1, 2)) g.atoms.push_back(ge(static_cast<ClockId>(rng.uniform(0, 1)), rng.uniform(0, 3)));
        if (rng.chance(1, 2)) g.atoms.push_back(random_table_atom(rng, 0, 1, true));
        std::vector<Update> u;
        if (a.clocks.size() > 2 && rng.chance(1, 2)) u.push_back({2, 0});
        a.transitions.push_back(edge(a, i, i, g, u, "loop"));
        if (i + 1 < n) {
            SimpleConstraint f;
            if (rng.chance(1, 2)) f.atoms.push_back(random_table_atom(rng, 0, 1, false));
            if (rng.chance(1, 2)) f.atoms.push_back(le(static_cast<ClockId>(rng.uniform(0, 1)), rng.uniform(1, 5)));
            std::vector<Update> fu;
            if (i == 0 && rng.chance(1, 2)) fu.push_back({static_cast<ClockId>(rng.uniform(0, 1)), 0});
            a.transitions.push_back(edge(a, i, i + 1, f, fu, "next"));
        }
    }
    TwoOneInstance inst{as_two_one(a), {}, {}};
    Thresholds t = thresholds(inst.two.pta, trivially_true());
    inst.gamma[0] = Rational(t.s1 + rng.uniform(0, t.s0.get_si()));
    auto stop = [&](const ClockValuation& w) { return w[0] >= Rational(t.s1) && w[1] >= Rational(t.s1); };
    auto run = random_walk(rng, inst.two.pta, inst.gamma, 4 * t.s1.get_ui(), 2 * t.s0.get_si(), stop);
    if (!run) return std::nullopt;
    inst.run = *run;
    return inst;
}

/// Counter loop: y is reset every c time units and the exit needs x to
/// meet p exactly, so p + 1 is out of reach for the same number of rounds.
std::optional<TwoOneInstance> counter_instance(Rng& rng) {
    Pta a = two_clock_skeleton(rng);
    add_locations(a, 2);
    const long c = rng.uniform(1, 3);
    a.invariants[0].atoms.push_back(le(1, c));
    SimpleConstraint loop;
    loop.atoms.push_back(ge(1, c));
    if (rng.chance(1, 2)) loop.atoms.push_back(random_table_atom(rng, 0, 1, true));
    std::vector<Update> lu{{1, 0}};
    if (a.clocks.size() > 2 && rng.chance(1, 2)) lu.push_back({2, 0});
    a.transitions.push_back(edge(a, 0, 0, loop, lu, "tick"));
    SimpleConstraint exit;
    exit.atoms.push_back(AtomicConstraint::lower(0, Rel::Le, -P()));
    if (rng.chance(1, 2)) exit.atoms.push_back(AtomicConstraint::upper(0, Rel::Le, P()));
    if (rng.chance(1, 3)) exit.atoms.push_back(le(1, c));
    a.transitions.push_back(edge(a, 0, 1, exit, {}, "done"));

    TwoOneInstance inst{as_two_one(a), {}, {}};
    Thresholds t = thresholds(inst.two.pta, trivially_true());
    Integer k = (t.s1 + c - 1) / c + rng.uniform(0, 3);
    inst.gamma[0] = Rational(k * c);
    std::vector<std::size_t> idx(k.get_ui() - 1, 0);
    idx.push_back(1);
    SyntacticRun tau = make_run(inst.two.pta, idx);
    Pta chain = run_automaton(inst.two.pta, tau);
    auto v = reach_discrete(chain, inst.gamma, StateProperty::at(chain.locations.size() - 1));
    if (!v.reachable) return std::nullopt;
    inst.run = *v.witness;
    for (std::size_t i = 0; i < inst.run.steps.size(); ++i) inst.run.steps[i].transition = idx[i];
    return inst;
}

}  // namespace

Expression random_expression(Rng& rng, std::size_t m, long max_const) {
    long kind = m == 0 ? 0 : rng.uniform(0, m >= 2 ? 4 : 3);
    ParamId p = m == 0 ? 0 : static_cast<ParamId>(rng.uniform(0, static_cast<long>(m) - 1));
    switch (kind) {
        case 0: return Expression::constant(rng.uniform(0, max_const));
        case 1: return Expression::parameter(p);
        case 2: return Expression::parameter(p) + Expression::constant(rng.uniform(-max_const, max_const));
        case 3: return Expression::parameter(p) - Expression::constant(rng.uniform(0, max_const));
        default:
            return Expression::parameter(0) + Expression::parameter(1, rng.chance(1, 2) ? 1 : -1) +
                   Expression::constant(rng.uniform(-2, 2));
    }
}

Pta random_one_clock_pta(Rng& rng, const GenOptions& opt) {
    Pta a;
    a.clocks = {"x"};
    std::size_t m = static_cast<std::size_t>(rng.uniform(static_cast<long>(opt.min_params),
                                                         static_cast<long>(opt.max_params)));
    for (std::size_t i = 0; i < m; ++i) a.params.push_back(kParamNames[i]);
    set_domains(a, rng.chance(2, 3) ? TimeDomain::Dense : TimeDomain::Nat);
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(opt.max_locations)));
    add_locations(a, n);
    for (std::size_t i = 0; i < n; ++i) a.invariants[i] = random_invariant(rng, 0, m, opt.max_const, 1, 2);
    std::size_t t = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(opt.max_transitions)));
    for (std::size_t k = 0; k < t; ++k) {
        LocationId s, d;
        if (k + 1 < n) {
            s = static_cast<LocationId>(rng.uniform(0, static_cast<long>(k)));
            d = k + 1;
        } else {
            s = static_cast<LocationId>(rng.uniform(0, static_cast<long>(n) - 1));
            d = static_cast<LocationId>(rng.uniform(0, static_cast<long>(n) - 1));
        }
        std::vector<Update> u;
        if (opt.resets && rng.chance(1, 3)) u.push_back({0, rng.uniform(0, 2)});
        a.transitions.push_back(edge(a, s, d, random_guard(rng, 0, m, opt.max_const, 2), u,
                                     std::string(1, static_cast<char>('a' + k % 3))));
    }
    return a;
}

Pta random_chain(Rng& rng, std::size_t len, std::size_t m, long max_const, bool resets, TimeDomain time) {
    Pta a;
    a.clocks = {"x"};
    for (std::size_t i = 0; i < m; ++i) a.params.push_back(kParamNames[i]);
    set_domains(a, time);
    add_locations(a, len + 1);
    for (std::size_t i = 0; i <= len; ++i) a.invariants[i] = random_invariant(rng, 0, m, max_const, 1, 3);
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<Update> u;
        if (resets && rng.chance(1, 4)) u.push_back({0, rng.uniform(0, 2)});
        a.transitions.push_back(edge(a, i, i + 1, random_guard(rng, 0, m, max_const, 3), u));
    }
    return a;
}

StateProperty random_state_property(Rng& rng, const Pta& pta, long max_const) {
    const long n = static_cast<long>(pta.locations.size());
    auto loc = [&] { return StateProperty::at(static_cast<LocationId>(rng.uniform(0, n - 1))); };
    auto atom = [&] { return StateProperty::of_atom(random_bound(rng, 0, pta.params.size(), max_const)); };
    switch (rng.uniform(0, 5)) {
        case 0:
        case 1: return loc();
        case 2: return StateProperty::conjunction(loc(), atom());
        case 3: return StateProperty::disjunction(loc(), loc());
        case 4: return StateProperty::negation(loc());
        default: return atom();
    }
}

Pta random_lu_pta(Rng& rng, const GenOptions& opt) {
    for (;;) {
        Pta a = random_one_clock_pta(rng, opt);
        if (classify_lu(a).is_lu) return a;
    }
}

std::string to_string(LemmaKind k) {
    switch (k) {
        case LemmaKind::OneP3: return "oneP3";
        case LemmaKind::OneP5: return "oneP5";
        case LemmaKind::OneP6: return "oneP6";
        case LemmaKind::OneP4: return "oneP4";
    }
    return "?";
}

std::optional<TwoOneInstance> generate_lemma_instance(Rng& rng, LemmaKind kind) {
    switch (kind) {
        case LemmaKind::OneP3: return drift_instance(rng, false);
        case LemmaKind::OneP5: return drift_instance(rng, true);
        case LemmaKind::OneP6: return joint_instance(rng);
        case LemmaKind::OneP4: return counter_instance(rng);
    }
    return std::nullopt;
}

}  // namespace ptasynth
