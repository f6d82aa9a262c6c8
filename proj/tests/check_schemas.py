"""Run the CLI over the test inputs and validate every report against docs/shiftlab.schema.json."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

binary, data_dir, schema_path = sys.argv[1:4]
with open(schema_path) as f:
    root = json.load(f)
jsonschema.Draft202012Validator.check_schema(root)


def validator(name):
    return jsonschema.Draft202012Validator({"$defs": root["$defs"], "$ref": "#/$defs/" + name})


def data(name):
    return os.path.join(data_dir, name)


failures = 0


def check(name, args, expect_codes=(0,)):
    global failures
    proc = subprocess.run([binary] + args, capture_output=True, text=True)
    if proc.returncode not in expect_codes:
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        return None
    doc = json.loads(proc.stdout)
    errors = sorted(validator(name).iter_errors(doc), key=lambda e: list(e.path))
    for e in errors[:5]:
        print(f"FAIL {' '.join(args)}: {'/'.join(map(str, e.path))}: {e.message[:200]}")
    failures += bool(errors)
    return doc


inputs = sorted(f for f in os.listdir(data_dir) if f.endswith(".json") and not f.startswith("bad_"))
for f in inputs:
    with open(data(f)) as fh:
        errs = list(validator("weight_sequence").iter_errors(json.load(fh)))
    if errs:
        print(f"FAIL input {f}: {errs[0].message}")
        failures += 1
    check("classification", ["classify", data(f), "--horizon", "24"], (0, 2))
    check("decomposition", ["decompose", data(f), "--horizon", "24"])

with tempfile.TemporaryDirectory() as tmp:
    u = os.path.join(tmp, "u.json")
    check("classification", ["classify", data("dostawa.json"), "--horizon", "9", "--dump-matrix", u])
    with open(u) as fh:
        if list(validator("matrix").iter_errors(json.load(fh))):
            print("FAIL dumped matrix")
            failures += 1
    check("symmetry_certificate", ["verify", data("dostawa.json"), "--conjugation", u])
    m = os.path.join(tmp, "m.json")
    subprocess.run([binary, "dump-matrix", data("finite_palindrome.json"), "--out", m], check=True)
    with open(m) as fh:
        if list(validator("matrix").iter_errors(json.load(fh))):
            print("FAIL dump-matrix")
            failures += 1

check("conjugation_report", ["conjugation", data("finite_palindrome.json")])
check("conjugation_report", ["conjugation", data("finite_j12.json")])
check("conjugation_report", ["conjugation", data("finite_j12.json"), "--fit", "--restarts", "2"])
check("closedness", ["analyze", data("dostawa.json"), "--closedness", "--horizon", "12"])
check("analyze_zero_block", ["analyze", "--dostawa", "a=k", "b=1/k", "--horizon", "9"])
check("analyze_power", ["analyze", data("dostawa.json"), "--power", "3", "--horizon", "12"])
check("wtn_report", ["wtn", "--N", "6", "--M", "2", "--restarts", "2", "--budget", "3"])
check("wtn_report", ["wtn", "--N", "6", "--M", "2", "--restarts", "2", "--budget", "3", "--rows", "first-power"])

print("schema check:", "FAIL" if failures else "PASS", f"({failures} failures)")
sys.exit(1 if failures else 0)
