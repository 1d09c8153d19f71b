#include "cli.hpp"

#include "ptasynth/decomposition.hpp"
#include "ptasynth/error.hpp"
#include "ptasynth/feasibility.hpp"
#include "ptasynth/harness.hpp"
#include "ptasynth/metrics.hpp"
#include "ptasynth/parser.hpp"
#include "ptasynth/semantics.hpp"
#include "ptasynth/synthesis.hpp"
#include "ptasynth/transforms.hpp"
#include "ptasynth/two_clock.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace ptasynth {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string model;
    std::string prop;
    std::string run;
    std::string out;
    std::string trace;
    std::string lemma;
    std::string time;
    std::string param_domain;
    std::vector<std::string> sets;
    std::vector<std::string> grids;
    bool force = false;
    bool quick = false;
    std::size_t max_len = 3;
    long horizon = 3;
    std::size_t check_runs = 0;
    std::uint64_t seed = 42;
};

// ============================================================================
// Input
// ============================================================================

std::string read_input(const std::string& path) {
    try {
        return read_file(path);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

/// A file's content when the path exists, the text itself otherwise.
std::string file_or_inline(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_input(arg);
    return arg;
}

Pta load_model(const Options& o) {
    std::string text = read_input(o.model);
    Pta pta = parse_model(text);
    const bool declared = std::regex_search(text, std::regex(R"((^|\n)[ \t]*domain[ \t]*:)"));
    if (!o.time.empty()) {
        TimeDomain t = parse_time_domain(o.time);
        if (declared && t != pta.time_domain && !o.force)
            throw UsageError("model declares time=" + to_string(pta.time_domain) + "; pass --force to override");
        pta.time_domain = t;
    }
    if (!o.param_domain.empty()) {
        ParamDomain d = parse_param_domain(o.param_domain);
        if (declared && d != pta.param_domain && !o.force)
            throw UsageError("model declares param=" + to_string(pta.param_domain) + "; pass --force to override");
        pta.param_domain = d;
    }
    return pta;
}

SystemProperty load_property(const Options& o, const Pta& pta) {
    if (o.prop.empty()) throw UsageError("--prop is required");
    return parse_property(file_or_inline(o.prop), pta);
}

ParameterValuation parse_sets(const std::vector<std::string>& sets, const Pta& pta) {
    ParameterValuation g;
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects name=value, got '" + s + "'");
        auto p = pta.find_param(s.substr(0, eq));
        if (!p) throw UsageError("unknown parameter '" + s.substr(0, eq) + "'");
        g[*p] = parse_rational(s.substr(eq + 1));
    }
    for (ParamId p = 0; p < pta.params.size(); ++p)
        if (!g.count(p)) throw UsageError("no value for parameter '" + pta.params[p] + "' (use --set)");
    return g;
}

std::vector<std::size_t> parse_run(const std::string& arg, const Pta& pta) {
    std::string text = file_or_inline(arg);
    for (char& c : text)
        if (c == ',' || c == '[' || c == ']') c = ' ';
    std::istringstream in(text);
    std::vector<std::size_t> idx;
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::getline(in, tok);
            continue;
        }
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != tok.size()) throw UsageError("run: '" + tok + "' is not an edge index");
        if (v >= pta.transitions.size()) throw UsageError("run: edge " + tok + " does not exist");
        idx.push_back(v);
    }
    return idx;
}

/// name=lo..hi for every parameter.
std::vector<ParameterValuation> parse_grid(const std::vector<std::string>& specs, const Pta& pta) {
    std::map<ParamId, std::pair<long, long>> ranges;
    static const std::regex re(R"(^\s*([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    for (const auto& s : specs) {
        std::smatch m;
        if (!std::regex_match(s, m, re)) throw UsageError("--grid expects name=lo..hi, got '" + s + "'");
        auto p = pta.find_param(m[1]);
        if (!p) throw UsageError("unknown parameter '" + m[1].str() + "'");
        long lo = std::stol(m[2]), hi = std::stol(m[3]);
        if (lo > hi) throw UsageError("empty range in '" + s + "'");
        ranges[*p] = {lo, hi};
    }
    std::vector<ParameterValuation> grid{{}};
    for (ParamId p = 0; p < pta.params.size(); ++p) {
        auto it = ranges.find(p);
        if (it == ranges.end()) throw UsageError("no range for parameter '" + pta.params[p] + "' (use --grid)");
        std::vector<ParameterValuation> next;
        for (const auto& g : grid)
            for (long v = it->second.first; v <= it->second.second; ++v) {
                ParameterValuation h = g;
                h[p] = Rational(v);
                next.push_back(std::move(h));
            }
        grid = std::move(next);
    }
    return grid;
}

Rational json_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw UsageError("trace: expected an integer or a \"a/b\" string, got " + j.dump());
}

// ============================================================================
// Output
// ============================================================================

std::string str(const Rational& v) { return to_string(v); }

void write_json(const Options& o, const Json& j) {
    if (o.out.empty()) return;
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o.out + "'");
    f << j.dump(2) << "\n";
}

Json algebraic_json(const AlgebraicNumber& a, const std::string& name) {
    if (a.is_rational()) return str(a.rational());
    return Json{{"poly", a.poly().render(name)}, {"lo", str(a.lo())}, {"hi", str(a.hi())}};
}

Json valuation_json(const ParameterValuation& g, const std::vector<std::string>& names) {
    Json j = Json::object();
    for (const auto& [p, v] : g) j[names.at(p)] = str(v);
    return j;
}

Json point_json(const ParamPoint& pt, const std::vector<std::string>& names) {
    Json j = Json::object();
    for (ParamId p = 0; p < names.size(); ++p) j[names[p]] = algebraic_json(pt.coordinate(p), names[p]);
    return j;
}

const char* kind_name(CellKind k) {
    switch (k) {
        case CellKind::Interval1D: return "interval";
        case CellKind::Point1D: return "point";
        case CellKind::LinearSystem: return "linear";
    }
    return "?";
}

Json cell_json(const Cell& c, const std::vector<std::string>& names) {
    Json j;
    j["kind"] = kind_name(c.kind);
    j["description"] = c.describe(names);
    if (c.kind == CellKind::LinearSystem) {
        Json cons = Json::array();
        for (const auto& r : c.constraints) cons.push_back(r.render(names));
        j["constraints"] = cons;
    } else {
        const std::string& n = names.at(c.param);
        Json lo = c.lower ? algebraic_json(*c.lower, n) : Json(nullptr);
        Json hi = c.kind == CellKind::Point1D ? lo : c.upper ? algebraic_json(*c.upper, n) : Json(nullptr);
        j["endpoints"] = Json{{"lower", lo}, {"upper", hi}};
    }
    j["sample"] = point_json(c.sample, names);
    j["signs"] = c.signs;
    return j;
}

Json region_json(const FeasibleRegion& r) {
    Json j;
    j["params"] = r.params;
    j["method"] = r.method;
    j["time"] = to_string(r.time);
    j["param_domain"] = to_string(r.param_domain);
    j["property"] = r.property;
    Json def = Json::array();
    for (const auto& e : r.defining) def.push_back(e.render(r.params));
    j["defining"] = def;
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        Json cj = cell_json(c.cell, r.params);
        cj["verdict"] = c.verdict;
        if (c.decided_at) cj["decided_at"] = valuation_json(*c.decided_at, r.params);
        if (c.integer_witness) {
            Json w = Json::object();
            for (std::size_t p = 0; p < c.integer_witness->size(); ++p)
                w[r.params[p]] = (*c.integer_witness)[p].get_str();
            cj["integer_witness"] = w;
        }
        cells.push_back(cj);
    }
    j["cells"] = cells;
    j["empty"] = r.empty();
    return j;
}

void print_region(std::ostream& out, const FeasibleRegion& r) {
    out << "property: " << r.property << "\n";
    out << "method: " << r.method << " (time=" << to_string(r.time) << " param=" << to_string(r.param_domain)
        << ")\n";
    out << "cells: " << r.cells.size() << "\n";
    for (const auto& c : r.cells) {
        out << "  [" << (c.verdict ? 'T' : 'F') << "] " << c.cell.describe(r.params)
            << "  sample " << c.cell.sample.render(r.params);
        if (c.integer_witness) {
            out << "  integer point";
            for (std::size_t p = 0; p < c.integer_witness->size(); ++p)
                out << " " << r.params[p] << "=" << (*c.integer_witness)[p].get_str();
        } else if (r.param_domain != ParamDomain::Real) {
            out << "  no integer point";
        }
        out << "\n";
    }
    out << "Gamma: " << (r.empty() ? "empty" : "nonempty") << "\n";
}

/// `edges` maps the run's transition numbers to the model's edges.
Json trace_json(const Pta& pta, const ConcreteRun& xi, const std::vector<std::size_t>* edges = nullptr) {
    Json steps = Json::array();
    for (const auto& s : xi.steps) {
        std::size_t e = edges ? edges->at(s.transition) : s.transition;
        Json st;
        st["delay"] = str(s.delay);
        if (e == kSyntheticTransition) {
            st["edge"] = nullptr;
            st["observation"] = true;
        } else {
            const Transition& t = pta.transitions.at(e);
            st["edge"] = e;
            st["source"] = pta.locations[t.source];
            st["target"] = pta.locations[t.target];
            st["action"] = pta.actions[t.action];
        }
        steps.push_back(st);
    }
    return Json{{"steps", steps}, {"final_delay", str(xi.final_delay)}};
}

void print_trace(std::ostream& out, const Json& trace) {
    for (const auto& s : trace["steps"]) {
        out << "  wait " << s["delay"].get<std::string>() << "; ";
        if (s["edge"].is_null())
            out << "observe\n";
        else
            out << "edge " << s["edge"].get<std::size_t>() << " " << s["source"].get<std::string>() << " -> "
                << s["target"].get<std::string>() << " (" << s["action"].get<std::string>() << ")\n";
    }
    out << "  wait " << trace["final_delay"].get<std::string>() << "\n";
}

std::string run_text(const Pta& pta, const SyntacticRun& tau) {
    std::string s = pta.locations[tau.start];
    for (const auto& st : tau.steps) s += " -[" + std::to_string(st.transition) + "]-> " + pta.locations[st.target];
    return s;
}

Json edges_json(const SyntacticRun& tau) {
    Json e = Json::array();
    for (const auto& s : tau.steps) e.push_back(s.transition);
    return e;
}

// ============================================================================
// Subcommands
// ============================================================================

int cmd_parse(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    out << render_model(pta);
    std::vector<std::string> pc;
    for (ClockId c : pta.parametric_clocks()) pc.push_back(pta.clocks[c]);
    Json j;
    j["clocks"] = pta.clocks;
    j["params"] = pta.params;
    j["locations"] = pta.locations;
    j["initial"] = pta.locations[pta.initial];
    j["transitions"] = pta.transitions.size();
    j["parametric_clocks"] = pc;
    j["time"] = to_string(pta.time_domain);
    j["param_domain"] = to_string(pta.param_domain);
    try {
        j["max_c"] = max_c(pta).get_str();
    } catch (const UnsupportedError&) {
        j["max_c"] = nullptr;
    }
    out << "# " << pta.locations.size() << " locations, " << pta.transitions.size() << " edges, parametric clocks:";
    for (const auto& c : pc) out << " " << c;
    out << "\n";
    write_json(o, j);
    return kExitOk;
}

int cmd_transform(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SyntacticRun tau = make_run(pta, parse_run(o.run, pta));
    Json j;
    j["run"] = edges_json(tau);
    Json enc = Json::array();
    std::vector<GuardOnlyRun> folded;
    if (!o.prop.empty()) {
        SystemProperty psi = load_property(o, pta);
        auto encoded = alpha_transform(tau, psi.phi);
        out << "# alpha: " << encoded.size() << " encoded run(s)\n";
        for (std::size_t k = 0; k < encoded.size(); ++k) {
            Pta ra = run_automaton(pta, encoded[k].observed());
            out << "# encoded run " << k << "\n" << render_model(ra);
            enc.push_back(render_model(ra));
            folded.push_back(beta_transform(encoded[k]));
        }
    } else {
        folded.push_back(beta_transform(tau));
    }
    j["encoded"] = enc;
    Json gor = Json::array();
    for (std::size_t k = 0; k < folded.size(); ++k) {
        Pta ga = guard_only_automaton(pta, folded[k]);
        std::string init = folded[k].initial_condition.render(pta.clocks, pta.params);
        out << "# guard-only run " << k << ", initial condition: " << init << "\n" << render_model(ga);
        gor.push_back(Json{{"initial_condition", init}, {"model", render_model(ga)}});
    }
    j["guard_only"] = gor;
    write_json(o, j);
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SystemProperty psi = load_property(o, pta);
    ParameterValuation g = parse_sets(o.sets, pta);
    bool sat = false;
    ReachabilityVerdict v = check_property(pta, ParamPoint(g), psi, &sat);
    out << (sat ? "sat" : "unsat") << "\n";
    Json j;
    j["verdict"] = sat ? "sat" : "unsat";
    j["property"] = psi.render(pta);
    j["gamma"] = valuation_json(g, pta.params);
    j["time"] = to_string(pta.time_domain);
    j["states"] = v.states;
    if (v.witness) {
        const char* kind = psi.quantifier == Quantifier::ExistsEventually ? "witness" : "counterexample";
        Json t = trace_json(pta, *v.witness);
        out << kind << ":\n";
        print_trace(out, t);
        j["trace_kind"] = kind;
        j["trace"] = t;
    }
    write_json(o, j);
    return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SystemProperty psi = load_property(o, pta);
    auto grid = parse_grid(o.grids, pta);
    auto res = grid_oracle(pta, psi, grid);
    for (const auto& n : pta.params) out << n << "\t";
    out << "verdict\n";
    Json pts = Json::array();
    for (const auto& g : grid) {
        for (const auto& [p, v] : g) out << str(v) << "\t";
        bool v = res.at(g);
        out << (v ? "sat" : "unsat") << "\n";
        pts.push_back(Json{{"gamma", valuation_json(g, pta.params)}, {"verdict", v}});
    }
    write_json(o, Json{{"params", pta.params}, {"property", psi.render(pta)}, {"points", pts}});
    return kExitOk;
}

int cmd_feasible(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SyntacticRun tau = make_run(pta, parse_run(o.run, pta));
    ParameterValuation g = parse_sets(o.sets, pta);
    std::vector<GuardOnlyRun> candidates;
    if (!o.prop.empty()) {
        SystemProperty psi = load_property(o, pta);
        for (const auto& e : alpha_transform(tau, psi.phi)) candidates.push_back(beta_transform(e));
    } else {
        candidates.push_back(beta_transform(tau));
    }
    std::optional<FeasibilityResult> chosen;
    std::size_t which = 0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        FeasibilityResult r = feasible_with_reset(candidates[k], g, pta.time_domain);
        if (!chosen || (r.feasible && !chosen->feasible)) {
            chosen = r;
            which = k;
        }
        if (r.feasible) break;
    }
    Json j;
    j["run"] = edges_json(tau);
    j["gamma"] = valuation_json(g, pta.params);
    j["time"] = to_string(pta.time_domain);
    if (!chosen) {
        // alpha produced no disjunct: the property is unsatisfiable at the end.
        out << "infeasible\nproperty cannot hold at the last location\n";
        j["feasible"] = false;
        j["failing_pair"] = nullptr;
        j["failing_condition"] = nullptr;
        write_json(o, j);
        return kExitOk;
    }
    const FeasibilityResult& r = *chosen;
    out << (r.feasible ? "feasible" : "infeasible") << "\n";
    j["feasible"] = r.feasible;
    j["disjunct"] = which;
    j["failing_pair"] = r.failing_pair ? Json{r.failing_pair->first, r.failing_pair->second} : Json(nullptr);
    j["failing_condition"] = r.failing_condition ? Json(*r.failing_condition) : Json(nullptr);
    if (r.failing_pair) out << "failing pair: (" << r.failing_pair->first << ", " << r.failing_pair->second << ")\n";
    if (r.failing_condition) {
        if (*r.failing_condition == 0)
            out << "failing condition: initial\n";
        else
            out << "failing condition: step " << *r.failing_condition << "\n";
    }
    if (r.witness) {
        std::vector<std::size_t> edges;
        for (const auto& s : candidates[which].run.steps) edges.push_back(s.transition);
        Json t = trace_json(pta, *r.witness, &edges);
        Json cv = Json::array();
        for (const auto& v : r.clock_values) cv.push_back(str(v));
        out << "witness:\n";
        print_trace(out, t);
        out << "clock values:";
        for (const auto& v : r.clock_values) out << " " << str(v);
        out << "\n";
        j["witness"] = t;
        j["clock_values"] = cv;
    }
    write_json(o, j);
    return kExitOk;
}

int cmd_runs(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    auto runs = enumerate_runs(pta, o.max_len);
    Json arr = Json::array();
    for (std::size_t k = 0; k < runs.size(); ++k) {
        out << k << ": " << edges_json(runs[k]).dump() << "  " << run_text(pta, runs[k]) << "\n";
        Json locs = Json::array();
        locs.push_back(pta.locations[runs[k].start]);
        for (const auto& s : runs[k].steps) locs.push_back(pta.locations[s.target]);
        arr.push_back(Json{{"edges", edges_json(runs[k])}, {"locations", locs}});
    }
    write_json(o, Json{{"max_len", o.max_len}, {"runs", arr}});
    return kExitOk;
}

int cmd_run_region(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SyntacticRun tau = make_run(pta, parse_run(o.run, pta));
    StateProperty phi = o.prop.empty() ? StateProperty::truth(true) : load_property(o, pta).phi;
    FeasibleRegion r = run_region(pta, tau, phi);
    out << "run: " << run_text(pta, tau) << "\n";
    print_region(out, r);
    write_json(o, region_json(r));
    return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SystemProperty psi = load_property(o, pta);
    ParameterDecomposition d = decompose_parameters(pta, psi);
    out << "method: " << d.method << "\ndefining:";
    Json def = Json::array();
    for (const auto& e : d.defining) {
        out << " [" << e.render(pta.params) << "]";
        def.push_back(e.render(pta.params));
    }
    out << "\ncells: " << d.cells.size() << "\n";
    Json cells = Json::array();
    for (const auto& c : d.cells) {
        out << "  " << c.describe(pta.params) << "  sample " << c.sample.render(pta.params) << "  signs";
        for (int s : c.signs) out << " " << (s > 0 ? '+' : s < 0 ? '-' : '0');
        out << "\n";
        cells.push_back(cell_json(c, pta.params));
    }
    write_json(o, Json{{"params", pta.params}, {"method", d.method}, {"defining", def}, {"cells", cells}});
    return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SystemProperty psi = load_property(o, pta);
    FeasibleRegion r = synthesize(pta, psi);
    print_region(out, r);
    write_json(o, region_json(r));
    return r.empty() ? kExitEmpty : kExitOk;
}

Json probe_json(const PeriodicityReport& p) {
    std::string bits;
    for (bool b : p.verdicts) bits += b ? '1' : '0';
    Json j;
    j["experimental"] = true;
    j["horizon"] = p.horizon.get_str();
    j["verdicts"] = bits;
    j["t1"] = p.t1 ? Json(p.t1->get_str()) : Json(nullptr);
    j["period"] = p.period ? Json(p.period->get_str()) : Json(nullptr);
    j["counterexample"] =
        p.counterexample ? Json{p.counterexample->first.get_str(), p.counterexample->second.get_str()} : Json(nullptr);
    j["true_tail_from"] = p.true_tail_from ? Json(p.true_tail_from->get_str()) : Json(nullptr);
    return j;
}

int cmd_analyze2(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SystemProperty psi = load_property(o, pta);
    Json j;
    auto violations = two_one_violations(pta, &psi);
    j["valid"] = violations.empty();
    j["violations"] = violations;
    if (!violations.empty()) {
        out << "two-one validation: FAIL\n";
        for (const auto& v : violations) out << "  " << v << "\n";
        write_json(o, j);
        return kExitUsage;
    }
    TwoOnePta two = validate_two_one(pta, &psi);
    Thresholds t = thresholds(two.pta, psi);
    out << "two-one validation: ok\n";
    out << "x = " << two.pta.clocks[two.x] << ", y = " << (two.y ? two.pta.clocks[*two.y] : std::string("-")) << "\n";
    out << "S0 = " << t.s0.get_str() << ", S1 = " << t.s1.get_str() << "\n";
    j["x"] = two.pta.clocks[two.x];
    j["y"] = two.y ? Json(two.pta.clocks[*two.y]) : Json(nullptr);
    j["s0"] = t.s0.get_str();
    j["s1"] = t.s1.get_str();

    Json checks = Json::array();
    if (o.check_runs > 0) {
        for (const auto& tau : enumerate_runs(two.pta, o.check_runs)) {
            bool reset_free = true;
            for (const auto& s : tau.steps) reset_free = reset_free && s.updates.empty();
            if (!reset_free || tau.steps.empty()) continue;
            NoResetReport r = no_reset_threshold_check(two, tau, psi);
            Json c;
            c["run"] = edges_json(tau);
            c["premise_ok"] = r.premise_ok;
            if (!r.premise_ok) c["premise_violation"] = r.premise_violation;
            Json vs = Json::array();
            for (const auto& [T, v] : r.verdicts) vs.push_back(Json{{"T", T.get_str()}, {"reachable", v}});
            c["verdicts"] = vs;
            c["all_equal"] = r.all_equal;
            c["clamp"] = Json{{"attempted", r.clamp_attempted},
                              {"monotone", r.clamp_monotone},
                              {"replays", r.clamp_replays},
                              {"note", r.clamp_note}};
            out << "reset-free run " << edges_json(tau).dump() << ": ";
            if (!r.premise_ok)
                out << "premise fails (" << r.premise_violation << ")\n";
            else
                out << (r.all_equal ? "verdicts agree" : "VERDICTS DIFFER") << "; clamp: " << r.clamp_note << "\n";
            checks.push_back(c);
        }
    }
    j["no_reset_checks"] = checks;

    PeriodicityReport p = periodicity_probe(two, psi, o.horizon);
    out << "periodicity probe (EXPERIMENTAL; the two-one synthesis theorem is not certified)\n";
    out << "  verdicts p=0.." << p.horizon.get_str() << ": ";
    for (bool b : p.verdicts) out << (b ? '1' : '0');
    out << "\n";
    if (p.t1)
        out << "  tail periodic from T1=" << p.t1->get_str() << " with period c=" << p.period->get_str() << "\n";
    else if (p.counterexample)
        out << "  no (T1, c) found; verdicts differ at p=" << p.counterexample->first.get_str() << " and p="
            << p.counterexample->second.get_str() << "\n";
    else
        out << "  no (T1, c) found\n";
    j["probe"] = probe_json(p);
    write_json(o, j);
    return kExitOk;
}

int cmd_scan_run(const Options& o, std::ostream& out) {
    Pta pta = load_model(o);
    SystemProperty psi;
    psi.phi = StateProperty::truth(true);
    if (!o.prop.empty()) psi = load_property(o, pta);
    TwoOnePta two = validate_two_one(pta, &psi);
    Json tj;
    try {
        tj = Json::parse(read_input(o.trace));
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("trace: ") + e.what());
    }
    ConcreteRun xi;
    ParameterValuation g;
    const Json& steps = tj.is_array() ? tj : tj.at("steps");
    for (const auto& s : steps) {
        ConcreteStep st;
        if (s.is_array()) {
            st.delay = json_rational(s.at(0));
            st.transition = s.at(1).get<std::size_t>();
        } else {
            st.delay = json_rational(s.at("delay"));
            st.transition = s.at("edge").get<std::size_t>();
        }
        if (st.transition >= pta.transitions.size()) throw UsageError("trace: edge out of range");
        xi.steps.push_back(st);
    }
    if (tj.is_object()) {
        if (tj.contains("final_delay")) xi.final_delay = json_rational(tj["final_delay"]);
        if (tj.contains("p") && two.p) g[*two.p] = json_rational(tj["p"]);
    }
    if (!o.sets.empty()) g = parse_sets(o.sets, pta);
    if (two.p && !g.count(*two.p)) throw UsageError("no parameter value: give \"p\" in the trace or --set");
    RunView view = view_run(two, g, xi);
    Thresholds t = thresholds(two.pta, psi);
    std::optional<StructuralWitness> w;
    std::vector<int> failed;
    bool hyp = false;
    Json j;
    j["lemma"] = o.lemma;
    j["s0"] = t.s0.get_str();
    j["s1"] = t.s1.get_str();
    if (o.lemma == "oneP3" || o.lemma == "oneP5") {
        bool swapped = o.lemma == "oneP5";
        hyp = oneP3_hypothesis(two, view, t, swapped);
        w = swapped ? find_oneP5_indices(two, view, t) : find_oneP3_indices(two, view, t);
        if (w) failed = recheck_oneP3(two, view, t, *w, swapped);
    } else if (o.lemma == "oneP6") {
        hyp = oneP6_hypothesis(two, view, t);
        w = find_oneP6_index(two, view, t);
        if (w) failed = recheck_oneP6(two, view, t, *w);
    } else if (o.lemma == "oneP4") {
        PigeonholeHypothesis h = pigeonhole_hypothesis(two, g, view, t);
        hyp = h.holds();
        j["hypothesis_detail"] = Json{{"gamma_at_least_s1", h.gamma_at_least_s1},
                                      {"next_unreachable", h.next_unreachable},
                                      {"prefix_guards_next", h.prefix_guards_next},
                                      {"prefix_guards_gamma", h.prefix_guards_gamma}};
        out << "hypotheses: gamma>=S1 " << h.gamma_at_least_s1 << ", R(A_tau[gamma+1]) empty " << h.next_unreachable
            << ", prefix guards at gamma+1 " << h.prefix_guards_next << ", at gamma " << h.prefix_guards_gamma
            << "\n";
        w = find_pigeonhole_pair(two, view);
        if (w) failed = recheck_pigeonhole(two, view, *w);
    } else {
        throw UsageError("--lemma must be oneP3, oneP4, oneP5 or oneP6");
    }
    out << "S0 = " << t.s0.get_str() << ", S1 = " << t.s1.get_str() << "\n";
    out << "hypothesis: " << (hyp ? "holds" : "does not hold") << "\n";
    j["hypothesis"] = hyp;
    if (w) {
        out << "witness: i=" << w->i;
        if (w->j) out << " j=" << *w->j;
        out << "\n";
        for (const auto& c : w->clauses) out << "  " << c << "\n";
        out << "revalidation: " << (failed.empty() ? "ok" : "FAILED") << "\n";
        j["witness"] = Json{{"i", w->i}, {"j", w->j ? Json(*w->j) : Json(nullptr)}, {"clauses", w->clauses}};
        j["failed_clauses"] = failed;
    } else {
        out << "witness: none" << (hyp ? " (FALSIFICATION: hypothesis holds)" : "") << "\n";
        j["witness"] = nullptr;
    }
    write_json(o, j);
    return failed.empty() ? kExitOk : kExitInternal;
}

int cmd_selftest(const Options& o, std::ostream& out) {
    bool ok = false;
    out << selftest_report(o.seed, o.quick, &ok);
    return ok ? kExitOk : kExitInternal;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Parameter synthesis for parametric timed automata"};
    app.name("ptasynth");
    app.require_subcommand(1, 1);

    auto model = [&](CLI::App* c) { c->add_option("--model", o.model, "model file")->required(); };
    auto prop = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--prop", o.prop, "property file or inline text");
        if (required) opt->required();
    };
    auto domains = [&](CLI::App* c) {
        c->add_option("--time", o.time, "time domain override (nat|dense)");
        c->add_option("--param-domain", o.param_domain, "parameter domain override (real|int|nat)");
        c->add_flag("--force", o.force, "override a domain the model declares");
    };
    auto outfile = [&](CLI::App* c) { c->add_option("--out", o.out, "write JSON here"); };
    auto sets = [&](CLI::App* c) { c->add_option("--set", o.sets, "parameter value name=v")->allow_extra_args(false); };

    std::map<std::string, std::function<int()>> handlers;
    auto sub = [&](const std::string& name, const std::string& help, std::function<int()> fn) {
        handlers[name] = std::move(fn);
        return app.add_subcommand(name, help);
    };

    auto* c = sub("parse", "parse and pretty-print a model", [&] { return cmd_parse(o, out); });
    model(c), domains(c), outfile(c);
    c = sub("transform", "show the alpha and beta transforms of a run", [&] { return cmd_transform(o, out); });
    model(c), prop(c, false), outfile(c);
    c->add_option("--run", o.run, "edge indices (file or inline)")->required();
    c = sub("check", "decide a property under one valuation", [&] { return cmd_check(o, out); });
    model(c), prop(c, true), domains(c), outfile(c), sets(c);
    c = sub("oracle", "decide a property on an integer grid", [&] { return cmd_oracle(o, out); });
    model(c), prop(c, true), domains(c), outfile(c);
    c->add_option("--grid", o.grids, "name=lo..hi per parameter")->required()->allow_extra_args(false);
    c = sub("feasible", "decide feasibility of one run", [&] { return cmd_feasible(o, out); });
    model(c), prop(c, false), domains(c), outfile(c), sets(c);
    c->add_option("--run", o.run, "edge indices (file or inline)")->required();
    c = sub("runs", "list syntactic runs", [&] { return cmd_runs(o, out); });
    model(c), outfile(c);
    c->add_option("--max-len", o.max_len, "maximal run length")->required();
    c = sub("run-region", "feasible region of one run", [&] { return cmd_run_region(o, out); });
    model(c), prop(c, false), domains(c), outfile(c);
    c->add_option("--run", o.run, "edge indices (file or inline)")->required();
    c = sub("decompose", "decompose the parameter space", [&] { return cmd_decompose(o, out); });
    model(c), prop(c, true), domains(c), outfile(c);
    c = sub("synth", "synthesize the feasible region", [&] { return cmd_synth(o, out); });
    model(c), prop(c, true), domains(c), outfile(c);
    c = sub("analyze2", "two-clock one-parameter analysis", [&] { return cmd_analyze2(o, out); });
    model(c), prop(c, true), outfile(c);
    c->add_option("--probe-horizon", o.horizon, "sweep to S1 + k*S0")->check(CLI::Range(1L, 64L));
    c->add_option("--check-runs", o.check_runs, "check reset-free runs up to this length");
    c = sub("scan-run", "structural lemma scan of a stored run", [&] { return cmd_scan_run(o, out); });
    model(c), prop(c, false), outfile(c), sets(c);
    c->add_option("--trace", o.trace, "trace JSON file")->required();
    c->add_option("--lemma", o.lemma, "oneP3|oneP4|oneP5|oneP6")
        ->required()
        ->check(CLI::IsMember({"oneP3", "oneP4", "oneP5", "oneP6"}));
    c = sub("selftest", "randomized property suites", [&] { return cmd_selftest(o, out); });
    c->add_option("--seed", o.seed, "random seed");
    c->add_flag("--quick", o.quick, "reduced counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    try {
        for (auto* s : app.get_subcommands()) return handlers.at(s->get_name())();
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace ptasynth
