// Acceptance run: one [PASS]/[FAIL] line per criterion, exit 1 if any fails.
// Usage: acceptance <path-to-ptasynth> <models-dir>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ptasynth/harness.hpp"
#include "ptasynth/metrics.hpp"
#include "ptasynth/parser.hpp"
#include "ptasynth/semantics.hpp"
#include "ptasynth/two_clock.hpp"

using namespace ptasynth;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kFeasibilitySeconds = 120;
constexpr double kSynthesisSeconds = 600;
constexpr double kProbeSecondsPerModel = 300;
constexpr long kProbeHorizonMult = 3;
constexpr std::size_t kShippedTwoOneModels = 10;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
    bool all = true;
    void line(int id, bool ok, const std::string& text) {
        all = all && ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << " " << text << std::endl;
    }
};

std::string suite_summary(const SuiteResult& r) {
    std::ostringstream os;
    os << r.name << " cases=" << r.cases << " failures=" << r.failures;
    for (const auto& d : r.details) os << "\n    | " << d.substr(0, d.find('\n'));
    return os.str();
}

std::string fixed(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << v;
    return os.str();
}

std::string run_capture(const std::string& cmd, int* status) {
    std::string out;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) {
        *status = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    *status = pclose(f);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <ptasynth> <models-dir>\n";
        return 2;
    }
    const std::string binary = argv[1];
    const std::filesystem::path models = argv[2];
    Report rep;

    // 1 and 5 share the same 500 chains.
    FeasibilityStats stats;
    auto t0 = Clock::now();
    SuiteResult feas = suite_feasibility(kSeed + 1, 500, &stats);
    double t_feas = since(t0);
    rep.line(1, feas.ok() && t_feas <= kFeasibilitySeconds,
             "feasibility vs reachability: " + suite_summary(feas) + " time=" + fixed(t_feas) + "s");

    t0 = Clock::now();
    SuiteResult synth = suite_synthesis(kSeed + 2, 200, -5, 20);
    double t_synth = since(t0);
    rep.line(2, synth.ok() && t_synth <= kSynthesisSeconds,
             "synthesis vs grid oracle: " + suite_summary(synth) + " time=" + fixed(t_synth) + "s");

    SuiteResult signs = suite_sign_invariance(kSeed + 3, 300, 100);
    rep.line(3, signs.ok(), "sign invariance, 100 samples per cell: " + suite_summary(signs));

    SuiteResult move_i = suite_move_i(kSeed + 4, 200);
    rep.line(4, move_i.ok(), "moveI equivalence: " + suite_summary(move_i));

    bool corners = true;
    std::ostringstream cs;
    for (int lo = 0; lo < 2; ++lo)
        for (int up = 0; up < 2; ++up) {
            corners = corners && stats.bound_cases[lo][up] > 0;
            cs << " [" << (lo ? "linf attained" : "linf open") << "/" << (up ? "usup attained" : "usup open")
               << "]=" << stats.bound_cases[lo][up];
        }
    bool replays = stats.reset_free_feasible > 0 && stats.witness_replays == stats.reset_free_feasible;
    rep.line(5, replays && corners && feas.failures == 0,
             "reset-free witnesses replayed " + std::to_string(stats.witness_replays) + "/" +
                 std::to_string(stats.reset_free_feasible) + ";" + cs.str());

    bool structural = true;
    std::string st;
    for (LemmaKind k : {LemmaKind::OneP3, LemmaKind::OneP5, LemmaKind::OneP6, LemmaKind::OneP4}) {
        SuiteResult r = suite_structural(kSeed + 10 + static_cast<std::uint64_t>(k), k, 1000);
        structural = structural && r.ok() && r.cases == 1000;
        st += "\n    " + suite_summary(r);
    }
    rep.line(6, structural, "structural finders" + st);

    std::vector<std::filesystem::path> two_one;
    for (const auto& e : std::filesystem::directory_iterator(models / "two_one"))
        if (e.path().extension() == ".pta") two_one.push_back(e.path());
    std::sort(two_one.begin(), two_one.end());
    bool probe_ok = two_one.size() >= kShippedTwoOneModels;
    std::string pr;
    for (const auto& path : two_one) {
        Pta a = parse_model(read_file(path.string()));
        std::filesystem::path prop_path = path;
        prop_path.replace_extension(".prop");
        SystemProperty psi = parse_property(read_file(prop_path.string()), a);
        TwoOnePta two = validate_two_one(a, &psi);
        Thresholds t = thresholds(two.pta, psi);
        auto p0 = Clock::now();
        PeriodicityReport r = periodicity_probe(two, psi, kProbeHorizonMult);
        double secs = since(p0);
        bool ok = r.t1 && r.period && *r.t1 >= t.s1 && *r.t1 <= t.s1 + t.s0 && *r.period >= 1 &&
                  *r.period <= t.s0 && secs <= kProbeSecondsPerModel;
        long hi = Integer(t.s1 + kProbeHorizonMult * t.s0).get_si();
        // The full sweep is recomputed point by point, independently of the probe.
        std::vector<bool> full;
        for (long p = 0; p <= hi; ++p)
            full.push_back(satisfies(two.pta, ParamPoint(ParameterValuation{{0, Rational(p)}}), psi));
        ok = ok && full == r.verdicts;
        if (ok) {
            long t1 = r.t1->get_si(), c = r.period->get_si();
            for (long p = t1; p + c <= hi; ++p) ok = ok && full[p] == full[p + c];
        }
        probe_ok = probe_ok && ok;
        pr += "\n    " + path.filename().string() + " S0=" + t.s0.get_str() + " S1=" + t.s1.get_str() +
              (r.t1 ? " T1=" + r.t1->get_str() + " c=" + r.period->get_str() : std::string(" no (T1, c)")) +
              (ok ? " consistent" : " INCONSISTENT") + " time=" + fixed(secs) + "s";
    }
    rep.line(7, probe_ok,
             "periodicity probe on " + std::to_string(two_one.size()) +
                 " shipped models (experimental: the two-one synthesis theorem is not certified)" + pr);

    SuiteResult lu = suite_lu_monotonicity(kSeed + 8, 100);
    rep.line(8, lu.ok(), "L/U monotonicity: " + suite_summary(lu));

    int s1 = 0, s2 = 0;
    std::string cmd = "\"" + binary + "\" selftest --seed 42";
    std::string a = run_capture(cmd, &s1);
    std::string b = run_capture(cmd, &s2);
    rep.line(9, s1 == 0 && s2 == 0 && !a.empty() && a == b,
             "selftest --seed 42 twice: " + std::to_string(a.size()) + " bytes, " +
                 (a == b ? "identical" : "different") + ", status " + std::to_string(s1) + "/" +
                 std::to_string(s2));

    std::cout << (rep.all ? "all criteria passed" : "some criteria failed") << std::endl;
    return rep.all ? 0 : 1;
}
