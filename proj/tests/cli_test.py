"""Exit codes, --json schemas and report determinism of the command-line tool.

usage: cli_test.py <tamebounds binary> <source dir>
"""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BIN = sys.argv[1]
ROOT = sys.argv[2]
failures = []


def load_schema(name):
    with open(os.path.join(ROOT, "schemas", name)) as f:
        return json.load(f)


SCHEMAS = {n: load_schema(n) for n in ("config.schema.json", "report.schema.json", "output.schema.json")}
REGISTRY = Registry().with_resources(
    [(s["$id"], Resource.from_contents(s)) for s in SCHEMAS.values()]
    + [(n, Resource.from_contents(s)) for n, s in SCHEMAS.items()]
)


def validate(doc, name):
    v = jsonschema.Draft202012Validator(SCHEMAS[name], registry=REGISTRY)
    errors = sorted(v.iter_errors(doc), key=str)
    if errors:
        failures.append(f"{name}: {errors[0].message}")


def run(args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([BIN] + args, capture_output=True, text=True, env=e)


def expect(args, code, contains=None, schema=True, env=None):
    r = run(args, env)
    label = " ".join(args)
    if r.returncode != code:
        failures.append(f"{label}: exit {r.returncode}, expected {code}\n{r.stdout}{r.stderr}")
        return r
    if contains and contains not in r.stdout + r.stderr:
        failures.append(f"{label}: output lacks {contains!r}\n{r.stdout}{r.stderr}")
    if schema and "--json" in args and r.stdout.strip():
        validate(json.loads(r.stdout), "output.schema.json")
    return r


# degree
expect(["degree", "-w", "linear:1", "-b", "1"], 0, "degree: 8")
expect(["degree", "-w", "const:4", "-b", "1"], 0, "degree: 10")
expect(["degree", "-w", "geom:1,2", "-b", "1"], 0, "degree: INF")
r = expect(["--json", "degree", "-w", "linear:1"], 0)
if r.returncode == 0 and json.loads(r.stdout)["degree"] != "8":
    failures.append("json degree of linear:1 is not 8")
expect(["degree", "-w", "const:pi", "-a", "1/(e*pi)"], 3, "enclosure [")
expect(["degree", "-w", "nope:1"], 2)
expect(["degree"], 2)
expect(["degree", "-w", "linear:1", "-b", "1"], 0, "degree: 8", env={"TAMEBOUNDS_PRECISION_BITS": "512"})

# constants
expect(["constants", "-w", "linear:1"], 0, "N: 9")
expect(["--json", "constants", "-w", "linear:1", "-K", "interval:0,1"], 0, '"N": 9')
expect(["constants", "-w", "const:1/(2e)"], 0, "degenerate: N - 1 = 0")
expect(["constants", "-w", "geom:1,2"], 3, "not admissible")
expect(["--json", "constants", "-w", "geom:1,2"], 3, '"admissible": false')

# check
expect(["check", "zero-bound", "-f", "cheb:5", "-I", "interval:-1,1"], 0, "verdict: holds")
expect(["check", "remez-1d", "-f", "cheb:5", "-I", "interval:-1,1", "-E", "0,0.5"], 0, "verdict: holds")
expect(["--json", "check", "sublevel", "-f", "poly:0,1", "-K", "interval:0,1", "-t", "1"], 0, '"verdict": "holds"')
expect(["--json", "check", "remez-nd", "-f", "waves:1@2;1@0", "-K", "box:0,0|1,1", "-E", "0,0|1/2,1/2"], 0)
expect(["--json", "check", "mo", "-f", "poly:0,1", "-K", "interval:-1,1", "-B", "ball:0|1/2"], 0, "skipped")
expect(["--strict", "check", "mo", "-f", "poly:0,1", "-K", "interval:-1,1", "-B", "ball:0|1/2"], 3)
expect(["check", "nonsense", "-f", "cheb:5", "-I", "interval:-1,1"], 2)
expect(["check", "remez-1d", "-f", "cheb:5", "-I", "interval:-1,1"], 2, "needs -E")
expect(["check", "zero-bound", "-f", "cheb:5", "-I", "interval:1,-1"], 2)

# compare
expect(["--json", "compare", "markov", "-n", "2"], 0, '"degree": 10')
expect(["--json", "compare", "bernstein", "-n", "3", "-c", "1/(3e)"], 0, '"degree": 0')
expect(["--json", "compare", "analytic", "--eps", "1"], 0)
expect(["--json", "compare", "comtet", "-x", "5"], 0, '"n": 82')
expect(["--json", "compare", "bracket", "-w", "const:4"], 0, '"d_2mu": 21')
expect(["compare", "comtet", "-x", "1"], 2)
expect(["compare", "bracket", "-w", "geom:1,2"], 2)

# suite
with open(os.path.join(ROOT, "configs", "default.json")) as f:
    validate(json.load(f), "config.schema.json")

with tempfile.TemporaryDirectory() as tmp:
    def write(name, doc):
        path = os.path.join(tmp, name)
        with open(path, "w") as f:
            json.dump(doc, f)
        return path

    small = write("small.json", {
        "seed": 7, "trials": 2,
        "weights": ["const:4", "linear:1"],
        "functions": ["cheb:5", "waves:1@2;1@0"],
        "bodies": ["interval:-1,1", "box:0,0|1,1"],
    })
    out1 = os.path.join(tmp, "a.json")
    out2 = os.path.join(tmp, "b.json")
    expect(["suite", small, "-o", out1, "--quiet"], 0)
    expect(["suite", small, "-o", out2, "--quiet"], 0)
    with open(out1, "rb") as f1, open(out2, "rb") as f2:
        if f1.read() != f2.read():
            failures.append("suite reports differ between identical runs")
    with open(out1) as f:
        report = json.load(f)
    validate(report, "report.schema.json")
    if not any(r["id"].startswith("cli.roundtrip/") and r["verdict"] == "holds" for r in report["records"]):
        failures.append("report has no passing round-trip record")
    timed = os.path.join(tmp, "t.json")
    expect(["suite", small, "-o", timed, "--quiet", "--timing"], 0)
    with open(timed) as f:
        doc = json.load(f)
        validate(doc, "report.schema.json")
        if not all("seconds" in r for r in doc["records"]):
            failures.append("--timing did not add seconds")

    empty = write("empty.json", {"trials": 0})
    r = expect(["suite", empty, "--quiet"], 0)
    if r.returncode == 0:
        doc = json.loads(r.stdout)
        validate(doc, "report.schema.json")
        if doc["records"] or doc["summary"]["total"] != 0:
            failures.append("trials=0 did not give an empty report")

    expect(["suite", write("bad.json", {"trails": 3})], 2, "unknown config key")
    expect(["suite", write("bad2.json", {"weights": ["wobble:1"]})], 2)
    expect(["suite", os.path.join(tmp, "missing.json")], 2)
    bad = os.path.join(tmp, "bad3.json")
    with open(bad, "w") as f:
        f.write("{not json")
    expect(["suite", bad], 2)

for msg in failures:
    print("FAIL:", msg)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
