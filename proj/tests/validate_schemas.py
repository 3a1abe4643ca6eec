"""Runs every CLI subcommand once and validates its JSON against docs/schemas."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMAS = sys.argv[1], sys.argv[2]


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def run(args, expect=(0,)):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if proc.returncode not in expect:
        raise SystemExit(f"{args}: exit {proc.returncode}\n{proc.stderr}")
    return proc


failures = 0


def check(name, doc):
    global failures
    try:
        jsonschema.validate(doc, schema(name))
        if "type" in schema(name)["properties"]:
            assert doc["type"] == name, doc["type"]
        print(f"ok   {name}")
    except (jsonschema.ValidationError, AssertionError) as e:
        failures += 1
        print(f"FAIL {name}: {e}")


with tempfile.TemporaryDirectory() as tmp:
    gf = os.path.join(tmp, "u.json")
    seq = os.path.join(tmp, "d.json")
    bf = os.path.join(tmp, "b.json")

    run(["--m", "4", "--out", gf, "apply", "--catalog", "sawtooth", "--map", "identity"])
    check("grid_function", json.load(open(gf)))
    run(["--p", "2", "--out", seq, "transform", "--op", "D", "--input", gf])
    check("bochner_sequence", json.load(open(seq)))
    run(["--out", bf, "transform", "--op", "B", "--input", gf])
    check("bochner_function", json.load(open(bf)))
    check("grid_function", json.loads(run(["transform", "--op", "Dinv", "--input", seq]).stdout))
    check("grid_function", json.loads(run(["transform", "--op", "L", "--input", bf]).stdout))
    check("bochner_sequence", json.loads(run(["--p", "2", "transform", "--op", "R", "--input", bf]).stdout))

    cases = [
        ("norm", ["--p", "2", "norm", "--dsl", "sin(2*pi*t)"]),
        ("norm", ["--p", "inf", "norm", "--catalog", "spike", "--params", '{"width": 0.5}']),
        ("ap_certificate", ["--window", "-6", "6", "ap-scan", "--catalog", "sin2pi", "--eps", "1e-9", "-W", "3", "--curve"]),
        ("ap_certificate", ["ap-scan", "--catalog", "noise", "--eps", "1e-9", "-W", "1", "--mode", "stepanov"]),
        ("aa_check", ["--window", "-6", "6", "aa-check", "--catalog", "sin2pi", "--shifts", "1", "2", "3", "4", "--probes", "0", "0.5"]),
        ("tightness", ["tight", "--catalog", "sawtooth", "--radii", "0.5", "0.9"]),
        ("ui_modulus", ["ui-mod", "--input", gf, "--deltas", "0", "0.25", "1"]),
        ("measure_defects", ["defect", "--catalog", "sawtooth", "--ref-catalog", "sin2pi", "--eps", "0.1", "0.5"]),
        ("hypothesis", ["hyp", "H1", "--catalog", "identity"]),
        ("hypothesis", ["hyp", "H3", "--catalog", "comb-step", "--dim", "1"]),
        ("modulus", ["alpha", "--catalog", "identity", "--deltas", "0.1", "0.5"]),
        ("probe", ["probe", "--catalog", "sin2pi", "--w-catalog", "sawtooth", "--map", "identity", "--scales", "1", "10"]),
        ("verification", ["verify", "all", "--seed", "42"]),
    ]
    for name, args in cases:
        check(name, json.loads(run(args, expect=(0, 1)).stdout))

    failing = run(["hyp", "eq49", "--catalog", "section7"], expect=(1,))
    check("hypothesis", json.loads(failing.stdout))
    for args in (["norm", "--dsl", "sin("], ["norm", "--dsl", "ln(t)"], ["norm", "--bogus"]):
        check("error", json.loads(run(args, expect=(2, 3)).stderr.strip().splitlines()[0]))

sys.exit(1 if failures else 0)
