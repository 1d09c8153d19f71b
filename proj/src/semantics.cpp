#include "ptasynth/semantics.hpp"

#include "ptasynth/error.hpp"
#include "ptasynth/parallel.hpp"
#include "ptasynth/transforms.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace ptasynth {

// ============================================================================
// Replay
// ============================================================================

RunTrace trace_run(const Pta& pta, const ParameterValuation& gamma, const ConcreteRun& xi) {
    RunTrace tr;
    LocationId q = pta.initial;
    ClockValuation omega(pta.clocks.size(), Rational(0));
    auto fail = [&](std::string msg) {
        tr.ok = false;
        tr.diagnostic = std::move(msg);
        return tr;
    };
    auto elapse = [&](const Rational& d, std::size_t step) -> bool {
        if (d < 0) {
            tr.diagnostic = "negative delay before step " + std::to_string(step);
            return false;
        }
        if (pta.time_domain == TimeDomain::Nat && d.get_den() != 1) {
            tr.diagnostic = "non-integral delay before step " + std::to_string(step);
            return false;
        }
        for (auto& v : omega) v += d;
        // Simple constraints are convex, so both endpoints suffice.
        if (!pta.invariants[q].holds(omega, gamma)) {
            tr.diagnostic = "invariant of " + pta.locations[q] + " broken during delay before step " +
                            std::to_string(step);
            return false;
        }
        return true;
    };
    if (!pta.invariants[q].holds(omega, gamma)) return fail("initial invariant does not hold");
    tr.locations.push_back(q);
    tr.arrival.push_back(omega);
    for (std::size_t i = 0; i < xi.steps.size(); ++i) {
        const auto& s = xi.steps[i];
        if (!elapse(s.delay, i)) return fail(tr.diagnostic);
        if (s.transition >= pta.transitions.size())
            return fail("step " + std::to_string(i) + " names a missing edge");
        const auto& t = pta.transitions[s.transition];
        if (t.source != q) return fail("step " + std::to_string(i) + " does not leave the current location");
        if (!t.guard.holds(omega, gamma)) return fail("guard of step " + std::to_string(i) + " fails");
        tr.before_step.push_back(omega);
        omega = apply_updates(omega, t.updates);
        q = t.target;
        if (!pta.invariants[q].holds(omega, gamma))
            return fail("invariant of " + pta.locations[q] + " fails on arrival at step " + std::to_string(i));
        tr.locations.push_back(q);
        tr.arrival.push_back(omega);
    }
    if (!elapse(xi.final_delay, xi.steps.size())) return fail(tr.diagnostic);
    tr.final_valuation = omega;
    tr.ok = true;
    return tr;
}

bool replay_run(const Pta& pta, const ParameterValuation& gamma, const ConcreteRun& xi,
                std::string* diagnostic) {
    RunTrace tr = trace_run(pta, gamma, xi);
    if (diagnostic) *diagnostic = tr.diagnostic;
    return tr.ok;
}

namespace {

using Kind = StateProperty::Kind;

/// A state property whose atoms are replaced by indices into a table.
struct IndexedProp {
    Kind kind = Kind::True;
    std::size_t atom = 0;
    LocationId location = 0;
    std::vector<IndexedProp> children;
};

IndexedProp index_prop(const StateProperty& phi, std::vector<AtomicConstraint>& table) {
    IndexedProp p;
    p.kind = phi.kind;
    p.location = phi.location;
    if (phi.kind == Kind::Atom) {
        p.atom = table.size();
        table.push_back(phi.atom);
    }
    for (const auto& c : phi.children) p.children.push_back(index_prop(c, table));
    return p;
}

template <class AtomFn>
bool eval_prop(const IndexedProp& p, LocationId q, const AtomFn& atom) {
    switch (p.kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return atom(p.atom);
        case Kind::Location: return p.location == q;
        case Kind::Not: return !eval_prop(p.children[0], q, atom);
        case Kind::And:
            for (const auto& c : p.children)
                if (!eval_prop(c, q, atom)) return false;
            return true;
        case Kind::Or:
            for (const auto& c : p.children)
                if (eval_prop(c, q, atom)) return true;
            return false;
    }
    return false;
}

/// Rebuilds a concrete run from the operations along a BFS path: each entry
/// is (delay, transition) with kSyntheticTransition marking a pure delay.
ConcreteRun assemble_run(const std::vector<std::pair<Rational, std::size_t>>& ops) {
    ConcreteRun run;
    Rational pending = 0;
    for (const auto& [d, t] : ops) {
        pending += d;
        if (t == kSyntheticTransition) continue;
        run.steps.push_back({pending, t});
        pending = 0;
    }
    run.final_delay = pending;
    return run;
}

struct VecHash {
    std::size_t operator()(const std::vector<long long>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (long long x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

// ============================================================================
// Discrete time
// ============================================================================

const long long kHuge = 1LL << 60;

/// lhs <= t over integer clock values.
struct IntAtom {
    int plus = -1;
    int minus = -1;
    bool always = false;
    long long t = 0;

    bool holds(const long long* v) const {
        if (always) return true;
        long long lhs = (plus >= 0 ? v[plus] : 0) - (minus >= 0 ? v[minus] : 0);
        return lhs <= t;
    }
};

long long clamp_ll(const Integer& v) {
    if (v > static_cast<long>(kHuge)) return kHuge;
    if (v < -static_cast<long>(kHuge)) return -kHuge;
    return v.get_si();
}

IntAtom compile_int(const AtomicConstraint& a, const ParameterValuation& gamma) {
    IntAtom c;
    c.plus = a.plus ? static_cast<int>(*a.plus) : -1;
    c.minus = a.minus ? static_cast<int>(*a.minus) : -1;
    if (a.rhs.is_infinite()) {
        c.always = true;
        return c;
    }
    Rational e = a.rhs.evaluate_finite(gamma);
    c.t = clamp_ll(a.rel == Rel::Le ? floor_of(e) : Integer(ceil_of(e) - 1));
    return c;
}

using IntConstraint = std::vector<IntAtom>;

bool holds_all(const IntConstraint& g, const long long* v) {
    for (const auto& a : g)
        if (!a.holds(v)) return false;
    return true;
}

}  // namespace

ReachabilityVerdict reach_discrete(const Pta& pta, const ParameterValuation& gamma, const StateProperty& phi,
                                   long extra_cap) {
    const std::size_t n = pta.clocks.size();
    std::vector<AtomicConstraint> prop_atoms;
    IndexedProp prop = index_prop(phi, prop_atoms);

    // Abstraction constant: values are compared against bounds of magnitude
    // at most M, so gaps of C = (M + 1) + bmax are indistinguishable from
    // any larger gap, even across later resets.
    Integer m = 0;
    auto absorb = [&](const AtomicConstraint& a) {
        if (a.rhs.is_infinite()) return;
        Integer c = ceil_of(abs(Rational(a.rhs.evaluate_finite(gamma))));
        if (c > m) m = c;
    };
    for (const auto* a : pta.atoms()) absorb(*a);
    for (const auto& a : prop_atoms) absorb(a);
    Integer bmax = 0;
    for (const auto& t : pta.transitions)
        for (const auto& u : t.updates)
            if (u.value > bmax) bmax = u.value;
    Integer cap_z = m + 1 + extra_cap + bmax;
    if (cap_z > Integer(50000000)) throw UnsupportedError("bounds too large for discrete exploration");
    const long long cap = cap_z.get_si();

    std::vector<IntConstraint> inv;
    for (const auto& g : pta.invariants) {
        IntConstraint c;
        for (const auto& a : g.atoms) c.push_back(compile_int(a, gamma));
        inv.push_back(std::move(c));
    }
    std::vector<IntConstraint> guards;
    for (const auto& t : pta.transitions) {
        IntConstraint c;
        for (const auto& a : t.guard.atoms) c.push_back(compile_int(a, gamma));
        guards.push_back(std::move(c));
    }
    std::vector<IntAtom> patoms;
    for (const auto& a : prop_atoms) patoms.push_back(compile_int(a, gamma));

    auto canonical = [&](std::vector<long long>& s) {
        // s[0] is the location; clocks follow.
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a + 1] < s[b + 1]; });
        long long prev_old = 0, prev_new = 0;
        for (std::size_t k : order) {
            long long old = s[k + 1];
            long long gap = old - prev_old;
            long long nv = prev_new + std::min(gap, cap);
            prev_old = old;
            prev_new = nv;
            s[k + 1] = nv;
        }
    };

    ReachabilityVerdict verdict;
    std::vector<std::vector<long long>> states;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> via;
    std::unordered_map<std::vector<long long>, std::size_t, VecHash> seen;

    std::vector<long long> init(n + 1, 0);
    init[0] = static_cast<long long>(pta.initial);
    if (!holds_all(inv[pta.initial], init.data() + 1)) return verdict;
    seen.emplace(init, 0);
    states.push_back(init);
    parent.push_back(0);
    via.push_back(kSyntheticTransition);

    auto satisfied = [&](const std::vector<long long>& s) {
        const long long* v = s.data() + 1;
        return eval_prop(prop, static_cast<LocationId>(s[0]),
                         [&](std::size_t i) { return patoms[i].holds(v); });
    };

    for (std::size_t head = 0; head < states.size(); ++head) {
        if (satisfied(states[head])) {
            verdict.reachable = true;
            std::vector<std::pair<Rational, std::size_t>> ops;
            for (std::size_t i = head; i != 0; i = parent[i])
                ops.emplace_back(via[i] == kSyntheticTransition ? Rational(1) : Rational(0), via[i]);
            std::reverse(ops.begin(), ops.end());
            verdict.witness = assemble_run(ops);
            break;
        }
        auto push = [&](std::vector<long long> s, std::size_t how) {
            canonical(s);
            auto [it, fresh] = seen.emplace(s, states.size());
            if (!fresh) return;
            states.push_back(std::move(s));
            parent.push_back(head);
            via.push_back(how);
        };
        const std::vector<long long> cur = states[head];
        LocationId q = static_cast<LocationId>(cur[0]);
        {
            std::vector<long long> s = cur;
            for (std::size_t i = 1; i <= n; ++i) s[i] += 1;
            if (holds_all(inv[q], s.data() + 1)) push(std::move(s), kSyntheticTransition);
        }
        for (std::size_t t = 0; t < pta.transitions.size(); ++t) {
            const auto& tr = pta.transitions[t];
            if (tr.source != q || !holds_all(guards[t], cur.data() + 1)) continue;
            std::vector<long long> s = cur;
            s[0] = static_cast<long long>(tr.target);
            for (const auto& u : tr.updates) s[u.clock + 1] = u.value.get_si();
            if (!holds_all(inv[tr.target], s.data() + 1)) continue;
            push(std::move(s), t);
        }
    }
    verdict.states = states.size();
    return verdict;
}

// ============================================================================
// Dense time, one constrained clock
// ============================================================================

ReachabilityVerdict reach_dense_one_clock(const Pta& pta, const ParamPoint& point, const StateProperty& phi) {
    std::vector<AtomicConstraint> prop_atoms;
    IndexedProp prop = index_prop(phi, prop_atoms);

    std::set<ClockId> constrained;
    for (ClockId c : pta.constrained_clocks()) constrained.insert(c);
    for (const auto& a : prop_atoms) {
        if (a.plus) constrained.insert(*a.plus);
        if (a.minus) constrained.insert(*a.minus);
    }
    if (constrained.size() > 1)
        throw PreconditionError("dense reachability supports one constrained clock, found " +
                                std::to_string(constrained.size()));
    std::optional<ClockId> x;
    if (!constrained.empty()) x = *constrained.begin();

    // Critical values: 0, reset constants of x, and every bound on x.
    std::vector<Expression> crit{Expression()};
    auto add_bound = [&](const AtomicConstraint& a) {
        if (a.rhs.is_infinite() || a.is_clock_free()) return;
        crit.push_back(a.plus ? a.rhs : -a.rhs);
    };
    for (const auto* a : pta.atoms()) add_bound(*a);
    for (const auto& a : prop_atoms) add_bound(a);
    for (const auto& t : pta.transitions)
        for (const auto& u : t.updates)
            if (u.clock == x) crit.push_back(Expression::constant(u.value));
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    std::erase_if(crit, [&](const Expression& e) { return point.sign(e) < 0; });
    std::stable_sort(crit.begin(), crit.end(),
                     [&](const Expression& a, const Expression& b) { return point.compare(a, b) < 0; });
    {
        std::vector<Expression> dedup;
        for (const auto& e : crit)
            if (dedup.empty() || point.compare(dedup.back(), e) != 0) dedup.push_back(e);
        crit = std::move(dedup);
    }
    const std::size_t k = crit.size() - 1;
    const std::size_t regions = 2 * k + 2;

    // Truth of an atom on each region: even r is the point crit[r/2], odd r
    // the open interval above it (unbounded for the last).
    auto table = [&](const AtomicConstraint& a) {
        std::vector<char> t(regions, 0);
        if (a.rhs.is_infinite()) {
            std::fill(t.begin(), t.end(), 1);
            return t;
        }
        if (a.is_clock_free()) {
            int sg = point.sign(a.rhs);
            bool v = a.rel == Rel::Le ? sg >= 0 : sg > 0;
            std::fill(t.begin(), t.end(), v ? 1 : 0);
            return t;
        }
        if (a.plus) {
            const Expression& e = a.rhs;  // x rel e
            for (std::size_t i = 0; i <= k; ++i) {
                int c = point.compare(crit[i], e);
                t[2 * i] = a.rel == Rel::Le ? c <= 0 : c < 0;
                t[2 * i + 1] = i < k && point.compare(crit[i + 1], e) <= 0;
            }
        } else {
            Expression f = -a.rhs;  // x >= f, or x > f when strict
            for (std::size_t i = 0; i <= k; ++i) {
                int c = point.compare(crit[i], f);
                t[2 * i] = a.rel == Rel::Le ? c >= 0 : c > 0;
                t[2 * i + 1] = c >= 0;
            }
        }
        return t;
    };
    using Table = std::vector<std::vector<char>>;
    auto compile = [&](const SimpleConstraint& g) {
        Table out;
        for (const auto& a : g.atoms) out.push_back(table(a));
        return out;
    };
    auto holds_at = [](const Table& g, std::size_t r) {
        for (const auto& t : g)
            if (!t[r]) return false;
        return true;
    };
    std::vector<Table> inv, guards;
    for (const auto& g : pta.invariants) inv.push_back(compile(g));
    for (const auto& t : pta.transitions) guards.push_back(compile(t.guard));
    Table patoms;
    for (const auto& a : prop_atoms) patoms.push_back(table(a));

    std::vector<std::optional<std::size_t>> reset_region(pta.transitions.size());
    for (std::size_t t = 0; t < pta.transitions.size(); ++t) {
        for (const auto& u : pta.transitions[t].updates) {
            if (u.clock != x) continue;
            Expression b = Expression::constant(u.value);
            for (std::size_t i = 0; i <= k; ++i)
                if (point.compare(crit[i], b) == 0) reset_region[t] = 2 * i;
        }
    }

    ReachabilityVerdict verdict;
    const std::size_t nloc = pta.locations.size();
    auto id = [&](LocationId q, std::size_t r) { return q * regions + r; };
    std::vector<std::size_t> parent(nloc * regions, SIZE_MAX), via(nloc * regions, kSyntheticTransition);
    std::vector<std::size_t> queue;
    if (!holds_at(inv[pta.initial], 0)) return verdict;
    queue.push_back(id(pta.initial, 0));
    parent[queue[0]] = queue[0];

    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::size_t s = queue[head];
        LocationId q = s / regions;
        std::size_t r = s % regions;
        if (eval_prop(prop, q, [&](std::size_t i) { return patoms[i][r] != 0; })) {
            verdict.reachable = true;
            verdict.states = queue.size();
            auto values = point.rational();
            if (!values) return verdict;
            std::vector<Rational> cv;
            for (const auto& e : crit) cv.push_back(e.evaluate_finite(*values));
            auto rep = [&](std::size_t reg) -> Rational {
                std::size_t i = reg / 2;
                if (reg % 2 == 0) return cv[i];
                if (i == k) return cv[i] + 1;
                return (cv[i] + cv[i + 1]) / 2;
            };
            std::vector<std::size_t> path;
            for (std::size_t c = s;; c = parent[c]) {
                path.push_back(c);
                if (parent[c] == c) break;
            }
            std::reverse(path.begin(), path.end());
            std::vector<std::pair<Rational, std::size_t>> ops;
            Rational value = 0;
            for (std::size_t i = 1; i < path.size(); ++i) {
                std::size_t reg = path[i] % regions;
                if (via[path[i]] == kSyntheticTransition) {
                    Rational next = rep(reg);
                    ops.emplace_back(next - value, kSyntheticTransition);
                    value = next;
                } else {
                    ops.emplace_back(Rational(0), via[path[i]]);
                    value = rep(reg);
                }
            }
            verdict.witness = assemble_run(ops);
            return verdict;
        }
        auto push = [&](std::size_t to, std::size_t how) {
            if (parent[to] != SIZE_MAX) return;
            parent[to] = s;
            via[to] = how;
            queue.push_back(to);
        };
        if (r + 1 < regions && holds_at(inv[q], r + 1)) push(id(q, r + 1), kSyntheticTransition);
        for (std::size_t t = 0; t < pta.transitions.size(); ++t) {
            const auto& tr = pta.transitions[t];
            if (tr.source != q || !holds_at(guards[t], r)) continue;
            std::size_t nr = reset_region[t] ? *reset_region[t] : r;
            if (!holds_at(inv[tr.target], nr)) continue;
            push(id(tr.target, nr), t);
        }
    }
    verdict.states = queue.size();
    return verdict;
}

// ============================================================================
// Property checking
// ============================================================================

ReachabilityVerdict check_property(const Pta& pta, const ParamPoint& point, const SystemProperty& psi,
                                   bool* satisfied) {
    StateProperty target =
        psi.quantifier == Quantifier::ExistsEventually ? psi.phi : negate_property(psi.phi);
    ReachabilityVerdict v;
    if (pta.time_domain == TimeDomain::Nat) {
        auto gamma = point.rational();
        if (!gamma) throw PreconditionError("discrete-time checking needs a rational parameter point");
        v = reach_discrete(pta, *gamma, target);
    } else {
        v = reach_dense_one_clock(pta, point, target);
    }
    if (satisfied) *satisfied = psi.quantifier == Quantifier::ExistsEventually ? v.reachable : !v.reachable;
    return v;
}

bool satisfies(const Pta& pta, const ParamPoint& point, const SystemProperty& psi) {
    bool sat = false;
    check_property(pta, point, psi, &sat);
    return sat;
}

std::map<ParameterValuation, bool> grid_oracle(const Pta& pta, const SystemProperty& psi,
                                               const std::vector<ParameterValuation>& grid) {
    std::vector<char> result(grid.size(), 0);
    parallel_for(grid.size(), [&](std::size_t i) { result[i] = satisfies(pta, grid[i], psi); });
    std::map<ParameterValuation, bool> out;
    for (std::size_t i = 0; i < grid.size(); ++i) out[grid[i]] = result[i] != 0;
    return out;
}

std::vector<ParameterValuation> integer_grid(std::size_t m, long lo, long hi) {
    std::vector<ParameterValuation> out;
    ParameterValuation g;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == m) {
            out.push_back(g);
            return;
        }
        for (long v = lo; v <= hi; ++v) {
            g[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace ptasynth
