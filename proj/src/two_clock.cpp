#include "ptasynth/two_clock.hpp"

#include "ptasynth/error.hpp"
#include "ptasynth/parallel.hpp"
#include "ptasynth/semantics.hpp"

#include <algorithm>
#include <sstream>

namespace ptasynth {

namespace {

bool is_plus_p(const Expression& e) { return e == Expression::parameter(0); }
bool is_minus_p(const Expression& e) { return e == Expression::parameter(0, -1); }

std::string show(const Pta& pta, const AtomicConstraint& a) { return a.render(pta.clocks, pta.params); }

/// t > p for t in {x, y, x-y, y-x}: a subtracted clock and rhs -p.
bool is_parametric_lower(const AtomicConstraint& a) { return a.minus.has_value() && is_minus_p(a.rhs); }

/// c rel-upper bound on a single clock with a parameter-free bound.
bool is_concrete_upper(const AtomicConstraint& a, ClockId c) {
    return a.plus == c && !a.minus && a.rhs.is_concrete();
}

bool resets(const RunStep& s, ClockId c) {
    return std::any_of(s.updates.begin(), s.updates.end(), [&](const Update& u) { return u.clock == c; });
}

bool guard_has(const RunStep& s, const std::function<bool(const AtomicConstraint&)>& pred) {
    return std::any_of(s.guard.atoms.begin(), s.guard.atoms.end(), pred);
}

std::string num(const Rational& v) { return v.get_str(); }

ParameterValuation valuation_p(const TwoOnePta& two, const Integer& v) {
    ParameterValuation g;
    if (two.p) g[*two.p] = Rational(v);
    return g;
}

}  // namespace

// ============================================================================
// Fragment validation
// ============================================================================

std::vector<std::string> two_one_violations(const Pta& pta, const SystemProperty* psi) {
    std::vector<std::string> out;
    if (pta.params.size() > 1)
        out.push_back("at most one parameter is allowed, found " + std::to_string(pta.params.size()));
    std::vector<ClockId> parametric = pta.parametric_clocks();
    std::vector<const AtomicConstraint*> atoms = pta.atoms();
    std::vector<AtomicConstraint> prop_atoms;
    if (psi) {
        collect_atoms(psi->phi, prop_atoms);
        for (const auto& a : prop_atoms)
            if (a.is_parametric())
                for (std::optional<ClockId> c : {a.plus, a.minus})
                    if (c && std::find(parametric.begin(), parametric.end(), *c) == parametric.end())
                        parametric.push_back(*c);
        for (const auto& a : prop_atoms) atoms.push_back(&a);
    }
    std::sort(parametric.begin(), parametric.end());
    parametric.erase(std::unique(parametric.begin(), parametric.end()), parametric.end());
    for (const auto* a : atoms) {
        if (!a->is_parametric()) continue;
        if (!is_plus_p(a->rhs) && !is_minus_p(a->rhs))
            out.push_back("atom " + show(pta, *a) + ": the bound must be p or -p");
        for (std::optional<ClockId> c : {a->plus, a->minus}) {
            if (!c) continue;
            auto pos = std::find(parametric.begin(), parametric.end(), *c) - parametric.begin();
            if (pos >= 2)
                out.push_back("atom " + show(pta, *a) + ": clock " + pta.clocks[*c] +
                              " is a third parametric clock");
        }
        if (a->is_clock_free()) out.push_back("atom " + show(pta, *a) + ": no clock");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TwoOnePta validate_two_one(const Pta& pta, const SystemProperty* psi) {
    auto v = two_one_violations(pta, psi);
    if (!v.empty()) {
        std::string msg = "not a two-one automaton:";
        for (const auto& s : v) msg += "\n  " + s;
        throw UnsupportedError(msg);
    }
    if (pta.clocks.empty()) throw UnsupportedError("not a two-one automaton: no clocks");
    TwoOnePta two;
    two.pta = pta;
    two.pta.time_domain = TimeDomain::Nat;
    two.pta.param_domain = ParamDomain::Nat;
    std::vector<ClockId> order = pta.parametric_clocks();
    for (ClockId c = 0; c < pta.clocks.size(); ++c)
        if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
    two.x = order[0];
    if (order.size() > 1) two.y = order[1];
    if (!pta.params.empty()) two.p = 0;
    return two;
}

RunView view_run(const TwoOnePta& two, const ParameterValuation& gamma, const ConcreteRun& xi) {
    RunTrace tr = trace_run(two.pta, gamma, xi);
    if (!tr.ok) throw PreconditionError("run does not replay: " + tr.diagnostic);
    std::vector<std::size_t> idx;
    for (const auto& s : xi.steps) idx.push_back(s.transition);
    RunView v;
    v.omega = tr.arrival;
    v.before = tr.before_step;
    v.steps = make_run(two.pta, idx).steps;
    return v;
}

// ============================================================================
// Structural finders
// ============================================================================

bool oneP3_hypothesis(const TwoOnePta& two, const RunView& run, const Thresholds& t, bool swapped) {
    if (!two.y) return false;
    ClockId a = swapped ? *two.y : two.x;
    ClockId b = swapped ? two.x : *two.y;
    const auto& last = run.omega.back();
    return last[a] - last[b] >= Rational(t.s1);
}

bool oneP6_hypothesis(const TwoOnePta& two, const RunView& run, const Thresholds& t) {
    if (!two.y) return false;
    const auto& last = run.omega.back();
    return last[two.x] >= Rational(t.s1) && last[*two.y] >= Rational(t.s1);
}

namespace {

std::optional<StructuralWitness> find_crossing_pair(const TwoOnePta& two, const RunView& run, const Thresholds& t,
                                                    bool swapped) {
    if (!oneP3_hypothesis(two, run, t, swapped)) return std::nullopt;
    ClockId a = swapped ? *two.y : two.x;
    ClockId b = swapped ? two.x : *two.y;
    const std::string an = two.pta.clocks[a], bn = two.pta.clocks[b];
    const std::size_t l = run.length();
    const Rational s0(t.s0), s03(3 * t.s0);
    // after_*[i]: some step k in (i, l] has the property.
    std::vector<char> reset_b(l + 1, 0), reset_a(l + 1, 0), upper_a(l + 1, 0);
    for (std::size_t i = l; i-- > 0;) {
        const RunStep& s = run.steps[i];
        reset_b[i] = reset_b[i + 1] || resets(s, b);
        reset_a[i] = reset_a[i + 1] || resets(s, a);
        upper_a[i] = upper_a[i + 1] || guard_has(s, [&](const AtomicConstraint& g) { return is_concrete_upper(g, a); });
    }
    for (std::size_t i = 0; i < l; ++i) {
        if (!(run.omega[i][a] < s0 && run.omega[i + 1][a] >= s0)) continue;
        if (!reset_b[i] || reset_a[i] || upper_a[i]) continue;
        for (std::size_t j = i; j < l; ++j) {
            if (!(run.omega[j][a] < s03 && run.omega[j + 1][a] >= s03)) continue;
            StructuralWitness w;
            w.lemma = swapped ? "oneP5" : "oneP3";
            w.i = i;
            w.j = j;
            w.clauses = {
                "1: " + an + "(i)=" + num(run.omega[i][a]) + " < S0=" + t.s0.get_str() + " <= " + an +
                    "(i+1)=" + num(run.omega[i + 1][a]),
                "2: " + an + "(j)=" + num(run.omega[j][a]) + " < 3S0=" + s03.get_str() + " <= " + an +
                    "(j+1)=" + num(run.omega[j + 1][a]),
                "3: " + bn + " is reset after step i",
                "4: " + an + " is not reset after step i",
                "5: no parameter-free upper bound on " + an + " after step i",
            };
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<StructuralWitness> find_oneP3_indices(const TwoOnePta& two, const RunView& run, const Thresholds& t) {
    return find_crossing_pair(two, run, t, false);
}

std::optional<StructuralWitness> find_oneP5_indices(const TwoOnePta& two, const RunView& run, const Thresholds& t) {
    return find_crossing_pair(two, run, t, true);
}

std::optional<StructuralWitness> find_oneP6_index(const TwoOnePta& two, const RunView& run, const Thresholds& t) {
    if (!oneP6_hypothesis(two, run, t)) return std::nullopt;
    const ClockId x = two.x, y = *two.y;
    const std::size_t l = run.length();
    const Rational s03(3 * t.s0);
    std::vector<char> blocked(l + 1, 0);
    for (std::size_t i = l; i-- > 0;) {
        const RunStep& s = run.steps[i];
        blocked[i] = blocked[i + 1] || resets(s, x) || resets(s, y) ||
                     guard_has(s, [&](const AtomicConstraint& g) {
                         return is_concrete_upper(g, x) || is_concrete_upper(g, y);
                     });
    }
    for (std::size_t i = 0; i < l; ++i) {
        if (blocked[i] || run.omega[i + 1][x] < s03 || run.omega[i + 1][y] < s03) continue;
        StructuralWitness w;
        w.lemma = "oneP6";
        w.i = i;
        w.clauses = {
            "1: " + two.pta.clocks[x] + "(i+1)=" + num(run.omega[i + 1][x]) + ", " + two.pta.clocks[y] +
                "(i+1)=" + num(run.omega[i + 1][y]) + " >= 3S0=" + s03.get_str(),
            "2: neither clock is reset after step i",
            "3: no parameter-free upper bound on either clock after step i",
        };
        return w;
    }
    return std::nullopt;
}

std::optional<StructuralWitness> find_pigeonhole_pair(const TwoOnePta& two, const RunView& run) {
    if (!two.y) return std::nullopt;
    const ClockId x = two.x, y = *two.y;
    const std::size_t l = run.length();
    for (std::size_t i = 1; i <= l; ++i) {
        if (!resets(run.steps[i - 1], y)) continue;
        for (std::size_t j = i + 1; j <= l; ++j) {
            if (guard_has(run.steps[j - 1], is_parametric_lower)) break;
            if (run.steps[j - 1].transition != run.steps[i - 1].transition) continue;
            if (run.omega[j][x] <= run.omega[i][x]) continue;
            StructuralWitness w;
            w.lemma = "oneP4";
            w.i = i;
            w.j = j;
            w.clauses = {
                "1: a_i = a_j = transition " + std::to_string(run.steps[i - 1].transition),
                "2: u_i resets " + two.pta.clocks[y],
                "3: " + two.pta.clocks[x] + "(j) - " + two.pta.clocks[x] + "(i) = " +
                    num(run.omega[j][x] - run.omega[i][x]) + " > 0",
                "4: no lower parametric bound in guards i+1..j",
            };
            return w;
        }
    }
    return std::nullopt;
}

// ============================================================================
// Revalidation, written clause by clause
// ============================================================================

std::vector<int> recheck_oneP3(const TwoOnePta& two, const RunView& run, const Thresholds& t,
                               const StructuralWitness& w, bool swapped) {
    std::vector<int> failed;
    const std::size_t l = run.length();
    if (!two.y || !w.j || !(w.i <= *w.j && *w.j < l)) return {1, 2, 3, 4, 5};
    const ClockId a = swapped ? *two.y : two.x;
    const ClockId b = swapped ? two.x : *two.y;
    const std::size_t i = w.i, j = *w.j;
    const Rational s0(t.s0);
    if (!(run.omega[i][a] < s0) || !(run.omega[i + 1][a] >= s0)) failed.push_back(1);
    if (!(run.omega[j][a] < 3 * s0) || !(run.omega[j + 1][a] >= 3 * s0)) failed.push_back(2);
    bool b_reset = false, a_reset = false, a_upper = false;
    for (std::size_t k = i + 1; k <= l; ++k) {
        for (const auto& u : run.steps[k - 1].updates) {
            if (u.clock == b) b_reset = true;
            if (u.clock == a) a_reset = true;
        }
        for (const auto& g : run.steps[k - 1].guard.atoms)
            if (g.plus == a && !g.minus && !g.rhs.is_infinite() && g.rhs.parameters().empty()) a_upper = true;
    }
    if (!b_reset) failed.push_back(3);
    if (a_reset) failed.push_back(4);
    if (a_upper) failed.push_back(5);
    return failed;
}

std::vector<int> recheck_oneP6(const TwoOnePta& two, const RunView& run, const Thresholds& t,
                               const StructuralWitness& w) {
    std::vector<int> failed;
    const std::size_t l = run.length();
    if (!two.y || w.i >= l) return {1, 2, 3};
    const ClockId x = two.x, y = *two.y;
    const Rational bound(3 * t.s0);
    if (run.omega[w.i + 1][x] < bound || run.omega[w.i + 1][y] < bound) failed.push_back(1);
    bool reset = false, upper = false;
    for (std::size_t k = w.i + 1; k <= l; ++k) {
        for (const auto& u : run.steps[k - 1].updates)
            if (u.clock == x || u.clock == y) reset = true;
        for (const auto& g : run.steps[k - 1].guard.atoms)
            if (g.plus && (*g.plus == x || *g.plus == y) && !g.minus && !g.rhs.is_infinite() &&
                g.rhs.parameters().empty())
                upper = true;
    }
    if (reset) failed.push_back(2);
    if (upper) failed.push_back(3);
    return failed;
}

std::vector<int> recheck_pigeonhole(const TwoOnePta& two, const RunView& run, const StructuralWitness& w) {
    std::vector<int> failed;
    const std::size_t l = run.length();
    if (!two.y || !w.j || !(1 <= w.i && w.i < *w.j && *w.j <= l)) return {1, 2, 3, 4};
    const std::size_t i = w.i, j = *w.j;
    if (run.steps[i - 1].transition != run.steps[j - 1].transition) failed.push_back(1);
    bool y_reset = false;
    for (const auto& u : run.steps[i - 1].updates) y_reset = y_reset || u.clock == *two.y;
    if (!y_reset) failed.push_back(2);
    if (!(run.omega[j][two.x] - run.omega[i][two.x] > 0)) failed.push_back(3);
    const Expression minus_p = -Expression::parameter(0);
    for (std::size_t k = i + 1; k <= j; ++k)
        for (const auto& g : run.steps[k - 1].guard.atoms)
            if (g.minus && g.rhs == minus_p) {
                failed.push_back(4);
                return failed;
            }
    return failed;
}

PigeonholeHypothesis pigeonhole_hypothesis(const TwoOnePta& two, const ParameterValuation& gamma,
                                           const RunView& run, const Thresholds& t) {
    PigeonholeHypothesis h;
    Rational g = two.p ? gamma.at(*two.p) : Rational(0);
    h.gamma_at_least_s1 = g >= Rational(t.s1);
    ParameterValuation next = gamma;
    if (two.p) next[*two.p] = g + 1;
    std::vector<std::size_t> idx;
    for (const auto& s : run.steps) idx.push_back(s.transition);
    Pta chain = run_automaton(two.pta, make_run(two.pta, idx));
    h.next_unreachable = !reach_discrete(chain, next, StateProperty::at(chain.locations.size() - 1)).reachable;
    h.prefix_guards_next = true;
    h.prefix_guards_gamma = true;
    for (std::size_t i = 0; i + 1 < run.length(); ++i) {
        h.prefix_guards_next = h.prefix_guards_next && run.steps[i].guard.holds(run.before[i], next);
        h.prefix_guards_gamma = h.prefix_guards_gamma && run.steps[i].guard.holds(run.before[i], gamma);
    }
    return h;
}

// ============================================================================
// Reset-free threshold check
// ============================================================================

NoResetReport no_reset_threshold_check(const TwoOnePta& two, const SyntacticRun& tau, const SystemProperty& psi) {
    for (const auto& s : tau.steps)
        if (!s.updates.empty()) throw PreconditionError("the run resets a clock");
    NoResetReport r;
    r.thresholds = thresholds(two.pta, psi);
    auto scan = [&](const SimpleConstraint& c) {
        for (const auto& a : c.atoms)
            if (a.plus && a.minus && is_minus_p(a.rhs) && r.premise_ok) {
                r.premise_ok = false;
                r.premise_violation = "atom " + show(two.pta, a) + " bounds a clock difference from below by p";
            }
    };
    for (const auto& s : tau.steps) scan(s.guard);
    for (const auto& inv : tau.invariants) scan(inv);
    if (!r.premise_ok) return r;

    const Integer s1 = r.thresholds.s1;
    Pta chain = run_automaton(two.pta, tau);
    const StateProperty target = StateProperty::at(chain.locations.size() - 1);
    std::optional<ConcreteRun> witness;
    for (const Integer& T : std::vector<Integer>{s1, s1 + 1, s1 + 7, 2 * s1}) {
        auto v = reach_discrete(chain, valuation_p(two, T), target);
        r.verdicts.emplace_back(T, v.reachable);
        if (v.reachable && !witness) witness = v.witness;
    }
    for (const auto& [T, v] : r.verdicts) r.all_equal = r.all_equal && v == r.verdicts.front().second;
    if (!witness) {
        r.clamp_note = "no run to clamp";
        return r;
    }
    r.clamp_attempted = true;
    // Reset-free: every clock reads the elapsed time.
    std::vector<Rational> times{0};
    for (const auto& s : witness->steps) times.push_back(times.back() + s.delay);
    times.push_back(times.back() + witness->final_delay);
    const Rational cap(s1);
    for (auto& tm : times)
        if (tm > cap) tm = cap - 1;
    r.clamp_monotone = std::is_sorted(times.begin(), times.end());
    if (!r.clamp_monotone) {
        r.clamp_note = "clamping makes a delay negative: a state at exactly S1 precedes one moved to S1-1";
        return r;
    }
    ConcreteRun clamped = *witness;
    for (std::size_t i = 0; i < clamped.steps.size(); ++i) clamped.steps[i].delay = times[i + 1] - times[i];
    clamped.final_delay = times.back() - times[times.size() - 2];
    r.clamp_replays = true;
    for (const auto& [T, v] : r.verdicts) {
        std::string diag;
        if (!replay_run(chain, valuation_p(two, T), clamped, &diag)) {
            r.clamp_replays = false;
            r.clamp_note = "clamped run fails at T=" + T.get_str() + ": " + diag;
            break;
        }
    }
    if (r.clamp_replays) r.clamp_note = "clamped run replays at every T";
    return r;
}

// ============================================================================
// Periodicity probe
// ============================================================================

PeriodicityReport periodicity_probe(const TwoOnePta& two, const SystemProperty& psi, long horizon_mult) {
    PeriodicityReport r;
    r.thresholds = thresholds(two.pta, psi);
    const Integer s0 = r.thresholds.s0, s1 = r.thresholds.s1;
    r.horizon = s1 + std::max(1L, horizon_mult) * s0;
    const std::size_t n = r.horizon.get_ui() + 1;
    std::vector<char> bits(n, 0);
    parallel_for(n, [&](std::size_t p) {
        bits[p] = satisfies(two.pta, ParamPoint(valuation_p(two, Integer(static_cast<unsigned long>(p)))), psi);
    });
    r.verdicts.assign(bits.begin(), bits.end());
    const std::size_t lo = s1.get_ui(), hi = Integer(s1 + s0).get_ui(), cmax = s0.get_ui();
    for (std::size_t t1 = lo; t1 <= hi && !r.t1; ++t1)
        for (std::size_t c = 1; c <= cmax && t1 + c <= n - 1; ++c) {
            bool ok = true;
            for (std::size_t q = t1; q + c < n && ok; ++q) ok = r.verdicts[q] == r.verdicts[q + c];
            if (ok) {
                r.t1 = Integer(static_cast<unsigned long>(t1));
                r.period = Integer(static_cast<unsigned long>(c));
                break;
            }
        }
    if (!r.t1)
        for (std::size_t q = lo; q + 1 < n; ++q)
            if (r.verdicts[q] != r.verdicts[q + 1]) {
                r.counterexample = {Integer(static_cast<unsigned long>(q)), Integer(static_cast<unsigned long>(q + 1))};
                break;
            }
    if (r.verdicts.back()) {
        std::size_t nu = n - 1;
        while (nu > 0 && r.verdicts[nu - 1]) --nu;
        r.true_tail_from = Integer(static_cast<unsigned long>(nu));
    }
    return r;
}

}  // namespace ptasynth
