#include "ptasynth/harness.hpp"

#include "ptasynth/decomposition.hpp"
#include "ptasynth/error.hpp"
#include "ptasynth/feasibility.hpp"
#include "ptasynth/parser.hpp"
#include "ptasynth/semantics.hpp"
#include "ptasynth/synthesis.hpp"
#include "ptasynth/transforms.hpp"

#include <sstream>

namespace ptasynth {

namespace {

constexpr std::size_t kMaxDetails = 5;

SystemProperty ef(StateProperty phi) {
    SystemProperty s;
    s.phi = std::move(phi);
    return s;
}

SystemProperty ag(StateProperty phi) {
    SystemProperty s;
    s.quantifier = Quantifier::ForallAlways;
    s.phi = std::move(phi);
    return s;
}

std::vector<std::size_t> all_steps(const Pta& chain) {
    std::vector<std::size_t> idx(chain.transitions.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

bool reaches_end(const Pta& chain, const ParamPoint& gamma) {
    return satisfies(chain, gamma, ef(StateProperty::at(chain.locations.size() - 1)));
}

Rational random_rational(Rng& rng, long lo, long hi) {
    long den = rng.uniform(1, 4);
    return make_rational(rng.uniform(lo * den, hi * den), den);
}

ParameterValuation random_gamma(Rng& rng, std::size_t m, long lo, long hi) {
    ParameterValuation g;
    for (std::size_t i = 0; i < m; ++i) g[i] = Rational(rng.uniform(lo, hi));
    return g;
}

std::string show_gamma(const ParameterValuation& g, const Pta& pta) { return ParamPoint(g).render(pta.params); }

void make_closed(Pta& a) {
    for (auto& inv : a.invariants)
        for (auto& at : inv.atoms) at.rel = Rel::Le;
    for (auto& t : a.transitions)
        for (auto& at : t.guard.atoms) at.rel = Rel::Le;
}

std::size_t nonclock_cells(const FeasibleRegion& r) { return r.cells.size(); }

}  // namespace

void SuiteResult::fail(std::string what) {
    ++failures;
    if (details.size() < kMaxDetails) details.push_back(std::move(what));
}

// ============================================================================
// Core and transforms
// ============================================================================

SuiteResult suite_round_trip(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"round-trip"};
    Rng rng(seed);
    GenOptions opt;
    for (std::size_t i = 0; i < count; ++i) {
        Pta a = random_one_clock_pta(rng, opt);
        ++r.cases;
        std::string text = render_model(a);
        try {
            if (!(parse_model(text) == a)) r.fail("model " + std::to_string(i) + " differs after parsing:\n" + text);
        } catch (const std::exception& e) {
            r.fail("model " + std::to_string(i) + ": " + e.what() + "\n" + text);
        }
    }
    return r;
}

SuiteResult suite_normalization(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"normalization"};
    Rng rng(seed);
    const char* rels[] = {"<", "<=", "=", ">=", ">"};
    const char* lhs[] = {"x", "y", "x - y"};
    Pta decl = parse_model("clocks: x, y\nparams: p, r\nloc q0 init inv: true\n");
    for (std::size_t i = 0; i < count; ++i) {
        int li = static_cast<int>(rng.uniform(0, 2));
        int ri = static_cast<int>(rng.uniform(0, 4));
        Expression e = random_expression(rng, 2, 5);
        std::string text = "clocks: x, y\nparams: p, r\nloc q0 init inv: " + std::string(lhs[li]) + " " +
                           rels[ri] + " " + e.render(decl.params) + "\n";
        Pta a = parse_model(text);
        ClockValuation w{random_rational(rng, 0, 8), random_rational(rng, 0, 8)};
        ParameterValuation g{{0, random_rational(rng, -3, 8)}, {1, random_rational(rng, -3, 8)}};
        Rational l = li == 0 ? w[0] : li == 1 ? w[1] : w[0] - w[1];
        Rational v = e.evaluate(g).value();
        bool direct = ri == 0 ? l < v : ri == 1 ? l <= v : ri == 2 ? l == v : ri == 3 ? l >= v : l > v;
        ++r.cases;
        if (a.invariants[0].holds(w, g) != direct)
            r.fail("source " + text + "at x=" + w[0].get_str() + " y=" + w[1].get_str() + " p=" + g[0].get_str() + " r=" + g[1].get_str());
    }
    return r;
}

SuiteResult suite_negation(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"negation"};
    Rng rng(seed);
    GenOptions opt;
    for (std::size_t i = 0; i < count; ++i) {
        Pta a = random_one_clock_pta(rng, opt);
        StateProperty phi = random_state_property(rng, a, 5);
        if (rng.chance(1, 2)) phi = StateProperty::disjunction(phi, random_state_property(rng, a, 5));
        StateProperty neg = negate_property(phi);
        StateProperty twice = negate_property(neg);
        StateProperty nnf = negation_normal_form(phi);
        for (int k = 0; k < 10; ++k) {
            LocationId q = static_cast<LocationId>(rng.uniform(0, static_cast<long>(a.locations.size()) - 1));
            ClockValuation w{random_rational(rng, 0, 8)};
            ParameterValuation g = random_gamma(rng, a.params.size(), -2, 8);
            bool v = phi.holds(q, w, g);
            bool d = false;
            StateProperty encoded = negation_normal_form(simplify(encode_property(phi, q)));
            for (const auto& c : to_dnf(encoded)) d = d || c.holds(w, g);
            ++r.cases;
            if (neg.holds(q, w, g) == v || twice.holds(q, w, g) != v || nnf.holds(q, w, g) != v || d != v)
                r.fail("property " + ag(phi).render(a));
        }
    }
    return r;
}

SuiteResult suite_move_p(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"moveP"};
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t len = static_cast<std::size_t>(rng.uniform(0, 5));
        std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
        TimeDomain time = rng.chance(2, 3) ? TimeDomain::Dense : TimeDomain::Nat;
        Pta chain = random_chain(rng, len, m, 5, true, time);
        SyntacticRun tau = make_run(chain, all_steps(chain));
        StateProperty phi = random_state_property(rng, chain, 5);
        ParameterValuation g = random_gamma(rng, m, -2, 8);
        Pta ra = run_automaton(chain, tau);
        StateProperty direct = StateProperty::conjunction(StateProperty::at(ra.locations.size() - 1),
                                                          encode_property(phi, tau.last_location()));
        bool lhs = satisfies(ra, ParamPoint(g), ef(direct));
        bool rhs = false;
        for (const auto& e : alpha_transform(tau, phi)) {
            Pta obs = run_automaton(chain, e.observed());
            rhs = rhs || reaches_end(obs, ParamPoint(g));
        }
        ++r.cases;
        if (lhs != rhs) r.fail("chain " + std::to_string(i) + " at " + show_gamma(g, chain) + "\n" + render_model(chain));
    }
    return r;
}

SuiteResult suite_move_i(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"moveI"};
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t len = static_cast<std::size_t>(rng.uniform(0, 6));
        std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
        TimeDomain time = rng.chance(2, 3) ? TimeDomain::Dense : TimeDomain::Nat;
        Pta chain = random_chain(rng, len, m, 5, true, time);
        SyntacticRun tau = make_run(chain, all_steps(chain));
        ParameterValuation g = random_gamma(rng, m, -5, 20);
        GuardOnlyRun beta = beta_transform(tau);
        Pta folded = guard_only_automaton(chain, beta);
        ClockValuation zero(chain.clocks.size(), Rational(0));
        bool lhs = reaches_end(folded, ParamPoint(g)) && beta.initial_condition.holds(zero, g);
        bool rhs = reaches_end(run_automaton(chain, tau), ParamPoint(g));
        ++r.cases;
        if (lhs != rhs) r.fail("chain " + std::to_string(i) + " at " + show_gamma(g, chain) + "\n" + render_model(chain));
    }
    return r;
}

// ============================================================================
// Semantics
// ============================================================================

SuiteResult suite_discrete_dense(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"discrete-dense"};
    Rng rng(seed);
    GenOptions opt;
    for (std::size_t i = 0; i < count; ++i) {
        Pta a = random_one_clock_pta(rng, opt);
        make_closed(a);
        StateProperty phi = random_state_property(rng, a, 5);
        std::vector<AtomicConstraint> atoms;
        collect_atoms(phi, atoms);
        bool closed = true;
        for (const auto& at : atoms) closed = closed && at.rel == Rel::Le;
        if (!closed) phi = StateProperty::at(0);
        ParameterValuation g = random_gamma(rng, a.params.size(), -2, 8);
        bool d = reach_discrete(a, g, phi).reachable;
        bool c = reach_dense_one_clock(a, ParamPoint(g), phi).reachable;
        ++r.cases;
        if (d != c) r.fail("model " + std::to_string(i) + " at " + show_gamma(g, a) + "\n" + render_model(a));
    }
    return r;
}

SuiteResult suite_cap_independence(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"cap-independence"};
    Rng rng(seed);
    GenOptions opt;
    for (std::size_t i = 0; i < count; ++i) {
        Pta a = random_one_clock_pta(rng, opt);
        a.time_domain = TimeDomain::Nat;
        a.param_domain = ParamDomain::Int;
        StateProperty phi = random_state_property(rng, a, 5);
        ParameterValuation g = random_gamma(rng, a.params.size(), -2, 8);
        auto base = reach_discrete(a, g, phi, 0);
        auto wide = reach_discrete(a, g, phi, 3);
        ++r.cases;
        if (base.reachable != wide.reachable) r.fail("model " + std::to_string(i) + "\n" + render_model(a));
        for (const auto* v : {&base, &wide}) {
            if (!v->witness) continue;
            RunTrace tr = trace_run(a, g, *v->witness);
            if (!tr.ok || !phi.holds(tr.locations.back(), tr.final_valuation, g))
                r.fail("witness fails on model " + std::to_string(i) + ": " + tr.diagnostic);
        }
    }
    return r;
}

// ============================================================================
// Feasibility
// ============================================================================

SuiteResult suite_feasibility(std::uint64_t seed, std::size_t count, FeasibilityStats* stats) {
    SuiteResult r{"feasibility"};
    Rng rng(seed);
    FeasibilityStats local;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t len = static_cast<std::size_t>(rng.uniform(0, 6));
        std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
        TimeDomain time = rng.chance(2, 3) ? TimeDomain::Dense : TimeDomain::Nat;
        bool resets = rng.chance(1, 2);
        Pta chain = random_chain(rng, len, m, 5, resets, time);
        SyntacticRun tau = make_run(chain, all_steps(chain));
        GuardOnlyRun beta = beta_transform(tau);
        Pta folded = guard_only_automaton(chain, beta);
        Pta original = run_automaton(chain, tau);
        bool reset_free = true;
        for (const auto& s : tau.steps) reset_free = reset_free && s.updates.empty();
        for (const auto& g : integer_grid(m, -5, 20)) {
            FeasibilityResult res = feasible_with_reset(beta, g, time);
            bool oracle = reaches_end(original, ParamPoint(g));
            ++r.cases;
            if (res.feasible != oracle) {
                r.fail("chain " + std::to_string(i) + " at " + show_gamma(g, chain) + ": feasible=" +
                       (res.feasible ? "true" : "false") + "\n" + render_model(chain));
                continue;
            }
            if (!res.feasible) continue;
            std::string diag;
            bool replays = res.witness && replay_run(folded, g, *res.witness, &diag);
            if (!replays) r.fail("witness of chain " + std::to_string(i) + " fails: " + diag);
            if (!reset_free) continue;
            ++local.reset_free_feasible;
            if (replays) ++local.witness_replays;
            for (const auto& s : beta.run.steps) {
                SplitGuard sg = split_guard(s.guard);
                Bound lo = linf(sg.lb, g), up = usup(sg.up, g);
                if (up.empty || up.value.is_infinite()) continue;
                ++local.bound_cases[lo.open ? 0 : 1][up.open ? 0 : 1];
            }
        }
    }
    if (stats) *stats = local;
    r.notes.push_back("reset-free feasible instances: " + std::to_string(local.reset_free_feasible) +
                      ", witnesses replayed: " + std::to_string(local.witness_replays));
    return r;
}

// ============================================================================
// Decomposition
// ============================================================================

SuiteResult suite_sign_invariance(std::uint64_t seed, std::size_t count, std::size_t samples) {
    SuiteResult r{"sign-invariance"};
    Rng rng(seed);
    auto check_cells = [&](const std::vector<Cell>& cells, const std::vector<Expression>& defining, std::size_t m,
                           const std::string& what) {
        for (const auto& c : cells) {
            std::size_t n = c.kind == CellKind::Point1D ? 1 : samples;
            for (std::size_t k = 0; k < n; ++k) {
                ParamPoint pt = random_point(c, m, rng);
                ++r.cases;
                if (!c.contains(pt) || signs_at(defining, pt) != c.signs) {
                    r.fail(what + ": cell " + c.describe({"p", "r", "s"}) + " at " + pt.render({"p", "r", "s"}));
                    break;
                }
            }
        }
    };
    for (std::size_t i = 0; i < count; ++i) {
        switch (i % 3) {
            case 0: {
                std::vector<UPoly> polys;
                for (long k = rng.uniform(1, 3); k > 0; --k) {
                    std::vector<Rational> cs;
                    for (long d = rng.uniform(1, 3); d >= 0; --d) cs.push_back(Rational(rng.uniform(-6, 6)));
                    UPoly f(cs);
                    if (f.degree() >= 1) polys.push_back(f);
                }
                std::vector<Expression> defining;
                for (const auto& f : polys) {
                    Expression e, pw = Expression::constant(1);
                    for (const auto& c : f.coeffs()) {
                        e += pw * c.get_num();
                        pw = pw * Expression::parameter(0);
                    }
                    defining.push_back(e);
                }
                // Coefficients are integral, so the expression is the polynomial itself.
                check_cells(decompose_1d(polys, 0), defining, 1, "1d set " + std::to_string(i));
                break;
            }
            case 1: {
                std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
                std::vector<Expression> planes;
                for (long k = rng.uniform(1, 4); k > 0; --k) {
                    Expression e = Expression::constant(rng.uniform(-4, 4));
                    for (std::size_t p = 0; p < m; ++p) e += Expression::parameter(p, rng.uniform(-2, 2));
                    if (!e.is_concrete()) planes.push_back(e);
                }
                check_cells(decompose_linear(planes, m), planes, m, "arrangement " + std::to_string(i));
                break;
            }
            default: {
                GenOptions opt;
                Pta a = random_one_clock_pta(rng, opt);
                FeasibleRegion reg = synthesize(a, ef(random_state_property(rng, a, 5)));
                std::vector<Cell> cells;
                for (const auto& c : reg.cells) cells.push_back(c.cell);
                check_cells(cells, reg.defining, a.params.size(), "model " + std::to_string(i));
                break;
            }
        }
    }
    return r;
}

// ============================================================================
// Synthesis
// ============================================================================

SuiteResult suite_synthesis(std::uint64_t seed, std::size_t count, long grid_lo, long grid_hi) {
    SuiteResult r{"synthesis"};
    Rng rng(seed);
    GenOptions opt;
    std::size_t cells = 0;
    for (std::size_t i = 0; i < count; ++i) {
        Pta a = random_one_clock_pta(rng, opt);
        StateProperty phi = random_state_property(rng, a, 5);
        StateProperty chi = random_state_property(rng, a, 5);
        auto grid = integer_grid(a.params.size(), grid_lo, grid_hi);
        for (const SystemProperty& psi : {ef(phi), ag(chi)}) {
            FeasibleRegion reg = synthesize(a, psi);
            cells += nonclock_cells(reg);
            auto oracle = grid_oracle(a, psi, grid);
            for (const auto& [g, v] : oracle) {
                ++r.cases;
                if (region_query(reg, ParamPoint(g)) != v) {
                    r.fail("model " + std::to_string(i) + " " + psi.render(a) + " at " + show_gamma(g, a) + "\n" +
                           render_model(a));
                    break;
                }
            }
        }
        FeasibleRegion dual = synthesize(a, ag(phi));
        FeasibleRegion primal = synthesize(a, ef(negate_property(phi)));
        bool same = dual.cells.size() == primal.cells.size();
        for (std::size_t k = 0; same && k < dual.cells.size(); ++k) {
            // Cells without an integer point are false under both properties.
            if (a.param_domain != ParamDomain::Real && !dual.cells[k].integer_witness) continue;
            same = dual.cells[k].verdict != primal.cells[k].verdict;
        }
        ++r.cases;
        if (!same) r.fail("duality on model " + std::to_string(i));
    }
    r.notes.push_back("cells decided: " + std::to_string(cells));
    return r;
}

SuiteResult suite_cell_stability(std::uint64_t seed, std::size_t count, std::size_t samples) {
    SuiteResult r{"cell-stability"};
    Rng rng(seed);
    GenOptions opt;
    for (std::size_t i = 0; i < count; ++i) {
        Pta a = random_one_clock_pta(rng, opt);
        a.time_domain = TimeDomain::Dense;
        a.param_domain = ParamDomain::Real;
        SystemProperty psi = rng.chance(1, 2) ? ef(random_state_property(rng, a, 5))
                                              : ag(random_state_property(rng, a, 5));
        FeasibleRegion reg = synthesize(a, psi);
        for (const auto& c : reg.cells) {
            std::size_t n = c.cell.kind == CellKind::Point1D ? 1 : samples;
            for (std::size_t k = 0; k < n; ++k) {
                ParamPoint pt = random_point(c.cell, a.params.size(), rng);
                ++r.cases;
                if (satisfies(a, pt, psi) != c.verdict) {
                    r.fail("model " + std::to_string(i) + " " + psi.render(a) + " at " + pt.render(a.params) + "\n" +
                           render_model(a));
                    break;
                }
            }
        }
    }
    return r;
}

SuiteResult suite_lu_monotonicity(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"lu-monotonicity"};
    Rng rng(seed);
    GenOptions opt;
    for (std::size_t i = 0; i < count; ++i) {
        Pta a = random_lu_pta(rng, opt);
        SystemProperty psi = ef(StateProperty::at(static_cast<LocationId>(
            rng.uniform(0, static_cast<long>(a.locations.size()) - 1))));
        LuClassification lu = classify_lu(a, &psi);
        const long lo = -5, hi = 12;
        auto oracle = grid_oracle(a, psi, integer_grid(a.params.size(), lo, hi));
        for (const auto& [g, v] : oracle) {
            if (!v) continue;
            auto check = [&](ParamId p, int dir) {
                ParameterValuation h = g;
                h[p] += dir;
                if (h[p] < lo || h[p] > hi) return;
                ++r.cases;
                if (!oracle.at(h))
                    r.fail("model " + std::to_string(i) + ": true at " + show_gamma(g, a) + ", false at " +
                           show_gamma(h, a) + "\n" + render_model(a));
            };
            for (ParamId p : lu.upper) check(p, +1);
            for (ParamId p : lu.lower) check(p, -1);
        }
    }
    return r;
}

// ============================================================================
// Two-clock finders
// ============================================================================

SuiteResult suite_structural(std::uint64_t seed, LemmaKind kind, std::size_t count) {
    SuiteResult r{"finder-" + to_string(kind)};
    Rng rng(seed);
    SystemProperty none;
    none.phi = StateProperty::truth(true);
    std::size_t draws = 0, misses = 0;
    while (r.cases < count && draws < 100 * count) {
        ++draws;
        auto inst = generate_lemma_instance(rng, kind);
        if (!inst) continue;
        RunView view = view_run(inst->two, inst->gamma, inst->run);
        Thresholds t = thresholds(inst->two.pta, none);
        std::optional<StructuralWitness> w;
        std::vector<int> failed;
        switch (kind) {
            case LemmaKind::OneP3:
            case LemmaKind::OneP5: {
                bool swapped = kind == LemmaKind::OneP5;
                if (!oneP3_hypothesis(inst->two, view, t, swapped)) {
                    ++misses;
                    continue;
                }
                w = swapped ? find_oneP5_indices(inst->two, view, t) : find_oneP3_indices(inst->two, view, t);
                if (w) failed = recheck_oneP3(inst->two, view, t, *w, swapped);
                break;
            }
            case LemmaKind::OneP6:
                if (!oneP6_hypothesis(inst->two, view, t)) {
                    ++misses;
                    continue;
                }
                w = find_oneP6_index(inst->two, view, t);
                if (w) failed = recheck_oneP6(inst->two, view, t, *w);
                break;
            case LemmaKind::OneP4:
                if (!pigeonhole_hypothesis(inst->two, inst->gamma, view, t).holds()) {
                    ++misses;
                    continue;
                }
                w = find_pigeonhole_pair(inst->two, view);
                if (w) failed = recheck_pigeonhole(inst->two, view, *w);
                break;
        }
        ++r.cases;
        if (!w) {
            r.fail("FALSIFICATION: no witness for a run meeting the hypothesis, p=" +
                   inst->gamma.at(0).get_str() + "\n" + render_model(inst->two.pta));
        } else if (!failed.empty()) {
            std::string cl;
            for (int c : failed) cl += " " + std::to_string(c);
            r.fail("witness does not re-validate, clauses" + cl);
        }
    }
    r.notes.push_back("draws: " + std::to_string(draws) + ", hypothesis unmet: " + std::to_string(misses));
    if (r.cases < count) r.fail("only " + std::to_string(r.cases) + " instances generated");
    return r;
}

// ============================================================================
// Reporting
// ============================================================================

std::string render_suite(const SuiteResult& r) {
    std::ostringstream os;
    os << (r.ok() ? "[PASS] " : "[FAIL] ") << r.name << " cases=" << r.cases << " failures=" << r.failures << "\n";
    for (const auto& n : r.notes) os << "    note: " << n << "\n";
    for (const auto& d : r.details) {
        std::istringstream lines(d);
        std::string line;
        while (std::getline(lines, line)) os << "    | " << line << "\n";
    }
    return os.str();
}

std::string selftest_report(std::uint64_t seed, bool quick, bool* all_ok) {
    const std::size_t s = quick ? 1 : 4;
    std::vector<SuiteResult> results;
    results.push_back(suite_round_trip(seed, 50 * s));
    results.push_back(suite_normalization(seed + 1, 200 * s));
    results.push_back(suite_negation(seed + 2, 20 * s));
    results.push_back(suite_move_p(seed + 3, 40 * s));
    results.push_back(suite_move_i(seed + 4, 40 * s));
    results.push_back(suite_discrete_dense(seed + 5, 40 * s));
    results.push_back(suite_cap_independence(seed + 6, 40 * s));
    results.push_back(suite_feasibility(seed + 7, 10 * s));
    results.push_back(suite_sign_invariance(seed + 8, 15 * s, 20));
    results.push_back(suite_synthesis(seed + 9, 5 * s, -5, 12));
    results.push_back(suite_cell_stability(seed + 10, 5 * s, 5));
    results.push_back(suite_lu_monotonicity(seed + 11, 5 * s));
    for (LemmaKind k : {LemmaKind::OneP3, LemmaKind::OneP5, LemmaKind::OneP6, LemmaKind::OneP4})
        results.push_back(suite_structural(seed + 12 + static_cast<std::uint64_t>(k), k, 10 * s));
    std::ostringstream os;
    os << "selftest seed=" << seed << (quick ? " quick" : "") << "\n";
    bool ok = true;
    for (const auto& r : results) {
        os << render_suite(r);
        ok = ok && r.ok();
    }
    os << (ok ? "all suites passed" : "some suites failed") << "\n";
    if (all_ok) *all_ok = ok;
    return os.str();
}

}  // namespace ptasynth
