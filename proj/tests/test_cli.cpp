#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "cli.hpp"

using namespace ptasynth;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ptasynth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string model(const std::string& name) { return std::string(PTASYNTH_MODELS) + "/" + name; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("synth on the gate model") {
    Result r = invoke({"synth", "--model", model("gate.pta"), "--prop", model("ef.prop")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("[F] p in (0, 2)") != std::string::npos);
    CHECK(r.out.find("[T] p = 2") != std::string::npos);
    CHECK(r.out.find("[T] p in (2, inf)") != std::string::npos);
}

TEST_CASE("synth exits 3 on an empty region") {
    Result r = invoke({"synth", "--model", model("gate.pta"), "--prop", "EF q1 & x < 1"});
    CHECK(r.code == kExitEmpty);
}

TEST_CASE("check") {
    Result unsat = invoke({"check", "--model", model("gate.pta"), "--prop", model("ef.prop"), "--set", "p=1"});
    CHECK(unsat.code == kExitOk);
    CHECK(first_line(unsat.out) == "unsat");
    Result sat = invoke({"check", "--model", model("gate.pta"), "--prop", model("ef.prop"), "--set", "p=3"});
    CHECK(first_line(sat.out) == "sat");
    Result missing = invoke({"check", "--model", model("gate.pta"), "--prop", model("ef.prop")});
    CHECK(missing.code == kExitUsage);
}

TEST_CASE("usage and parse errors exit 2") {
    CHECK(invoke({"parse", "--model", model("bad.pta")}).code == kExitUsage);
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"parse", "--model", model("no_such_file.pta")}).code == kExitUsage);
    CHECK(invoke({"runs", "--model", model("gate.pta"), "--max-len", "x"}).code == kExitUsage);
    CHECK(invoke({"feasible", "--model", model("gate.pta"), "--run", "3", "--set", "p=1"}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("domain overrides need --force when the model declares one") {
    std::string declared = model("nat_gate.pta");
    CHECK(invoke({"parse", "--model", declared, "--time", "dense"}).code == kExitUsage);
    CHECK(invoke({"parse", "--model", declared, "--time", "dense", "--force"}).code == kExitOk);
    Result nat = invoke({"synth", "--model", declared, "--prop", model("ef.prop")});
    CHECK(nat.out.find("[T] p = 4") != std::string::npos);
    CHECK(invoke({"parse", "--model", model("gate.pta"), "--time", "nat"}).code == kExitOk);
    Result r = invoke({"parse", "--model", model("gate.pta"), "--time", "nat", "--param-domain", "int"});
    CHECK(r.out.find("domain: time=nat param=int") != std::string::npos);
    Result forced = invoke({"synth", "--model", model("gate.pta"), "--prop", model("ef.prop"), "--time", "nat",
                         "--param-domain", "int"});
    CHECK(forced.code == kExitOk);
}

TEST_CASE("analyze2 reports the experimental probe") {
    Result r = invoke({"analyze2", "--model", model("two_one/m03_parity.pta"), "--prop", model("two_one/m03_parity.prop")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("S0 = 9, S1 = 36") != std::string::npos);
    CHECK(r.out.find("EXPERIMENTAL") != std::string::npos);
    CHECK(r.out.find("period c=2") != std::string::npos);
    Result bad = invoke({"analyze2", "--model", model("two_param.pta"), "--prop", model("ef.prop")});
    CHECK(bad.code == kExitUsage);
}

TEST_CASE("scan-run") {
    Result r = invoke({"scan-run", "--model", model("two_one/m03_parity.pta"), "--trace", model("traces/m03_p39.json"),
                    "--lemma", "oneP4"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("revalidation: ok") != std::string::npos);
    CHECK(invoke({"scan-run", "--model", model("two_one/m03_parity.pta"), "--trace", model("traces/m03_p39.json"),
               "--lemma", "oneP9"})
              .code == kExitUsage);
}

TEST_CASE("runs, transform, feasible, run-region, decompose, oracle") {
    CHECK(invoke({"runs", "--model", model("gate.pta"), "--max-len", "1"}).out == "0: []  q0\n1: [0]  q0 -[0]-> q1\n");
    CHECK(invoke({"transform", "--model", model("gate.pta"), "--prop", model("ef.prop"), "--run", "[0]"}).code == kExitOk);
    Result f = invoke({"feasible", "--model", model("gate.pta"), "--run", "0", "--set", "p=1"});
    CHECK(first_line(f.out) == "infeasible");
    CHECK(invoke({"run-region", "--model", model("gate.pta"), "--run", "0"}).code == kExitOk);
    CHECK(invoke({"decompose", "--model", model("gate.pta"), "--prop", model("ef.prop")}).out.find("cells: 5") !=
          std::string::npos);
    Result o = invoke({"oracle", "--model", model("gate.pta"), "--prop", model("ef.prop"), "--grid", "p=0..3"});
    CHECK(o.out == "p\tverdict\n0\tunsat\n1\tunsat\n2\tsat\n3\tsat\n");
}

TEST_CASE("selftest --quick is deterministic") {
    Result a = invoke({"selftest", "--quick", "--seed", "3"});
    Result b = invoke({"selftest", "--quick", "--seed", "3"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
}
