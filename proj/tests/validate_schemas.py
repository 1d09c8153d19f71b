"""Runs every JSON-emitting subcommand and validates its --out file."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BIN = sys.argv[1]
ROOT = pathlib.Path(sys.argv[2])
SCHEMAS = ROOT / "schemas"
M = ROOT / "models"

resources = []
for path in SCHEMAS.glob("*.schema.json"):
    resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
registry = Registry().with_resources(resources)


def schema(name, pointer=None):
    doc = json.loads((SCHEMAS / name).read_text())
    if pointer:
        doc = {"$ref": f"{name}#/$defs/{pointer}"}
    return doc


G = ["--model", str(M / "gate.pta")]
T1 = str(M / "two_one" / "m03_parity")
CASES = [
    (["parse", *G], schema("misc.schema.json", "parse"), 0),
    (["runs", *G, "--max-len", "2"], schema("misc.schema.json", "runs"), 0),
    (["transform", *G, "--prop", str(M / "ef.prop"), "--run", "0"], schema("misc.schema.json", "transform"), 0),
    (["oracle", *G, "--prop", str(M / "ef.prop"), "--grid", "p=0..3"], schema("misc.schema.json", "oracle"), 0),
    (["check", *G, "--prop", str(M / "ef.prop"), "--set", "p=3"], schema("check.schema.json"), 0),
    (["check", *G, "--prop", str(M / "ag.prop"), "--set", "p=3"], schema("check.schema.json"), 0),
    (["feasible", *G, "--run", "0", "--set", "p=1"], schema("feasible.schema.json"), 0),
    (["feasible", *G, "--run", "0", "--set", "p=5"], schema("feasible.schema.json"), 0),
    (["decompose", *G, "--prop", str(M / "ef.prop")], schema("decompose.schema.json"), 0),
    (["synth", *G, "--prop", str(M / "ef.prop")], schema("region.schema.json"), 0),
    (["synth", *G, "--prop", str(M / "ag.prop")], schema("region.schema.json"), 0),
    (["run-region", *G, "--run", "0"], schema("region.schema.json"), 0),
    (["synth", "--model", str(M / "two_param.pta"), "--prop", str(M / "ef.prop")], schema("region.schema.json"), 0),
    (["analyze2", "--model", T1 + ".pta", "--prop", T1 + ".prop", "--check-runs", "2"], schema("analyze2.schema.json"), 0),
    (["scan-run", "--model", T1 + ".pta", "--prop", T1 + ".prop", "--trace", str(M / "traces" / "m03_p39.json"),
      "--lemma", "oneP4"], schema("scan_run.schema.json"), 0),
]

failures = 0
with tempfile.TemporaryDirectory() as tmp:
    for k, (args, sch, code) in enumerate(CASES):
        out = pathlib.Path(tmp) / f"{k}.json"
        proc = subprocess.run([BIN, *args, "--out", str(out)], capture_output=True, text=True)
        label = " ".join(args[:1] + [a for a in args[1:] if not a.startswith("/")])
        if proc.returncode != code:
            print(f"[FAIL] {label}: exit {proc.returncode}\n{proc.stderr}")
            failures += 1
            continue
        try:
            jsonschema.Draft202012Validator(sch, registry=registry).validate(json.loads(out.read_text()))
            print(f"[PASS] {label}")
        except jsonschema.ValidationError as e:
            print(f"[FAIL] {label}: {e.message} at {list(e.absolute_path)}")
            failures += 1
sys.exit(1 if failures else 0)
