"""Validate CLI JSON reports against the shipped schema and check that
repeated runs are byte-identical."""

import json
import subprocess
import sys

import jsonschema

CORPUS = [
    (["check", "w = conj(w) + 2*i*z*conj(z)"], 0),
    (["check", "w = conj(w) + 2*i*(-z1*conj(z1) + z2*conj(z2))", "--order", "8"], 0),
    (["check", "w = conj(w) + 2*i*z^2*conj(z)^2"], 2),
    (["check", "w = conj(w) + 2*i*z*conj(z"], 1),
    (["check", "v = x^2 + y^2 + (x^2 + y^2)^2", "--order", "12"], 0),
    (["check", "v = x^2 + y^2 + x^3/(1 - u)", "--jet", "--order", "8"], 0),
    (["check", "v = x^2 + y^2 + x^3", "--point", "-2/3, 1 + 4/27*i"], 2),
    (["levi", "v = x^2 + y^2 + x^3", "--grid", "-1", "1", "3"], 0),
    (["signature", "v = x1^2 + y1^2 - x2^2 - y2^2 + x1^3"], 0),
    (["associate", "v = x^2 + y^2 + x^3*y", "--point", "1, i", "--order", "8"], 0),
    (["propagate", "w = conj(w) + 2*i*z*conj(z)", "--point", "0,0", "--point", "1,i"], 0),
    (["propagate", "v = x^2 + y^2 + x^3", "--point", "0,0", "--point", "1/2, 1 + 3/8*i"], 0),
]


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, expected in CORPUS:
        runs = [subprocess.run([cli, *args, "--format", "json"], capture_output=True) for _ in range(2)]
        label = " ".join(args)
        if runs[0].returncode != expected:
            print(f"FAIL exit {runs[0].returncode} != {expected}: {label}")
            failures += 1
        if runs[0].stdout != runs[1].stdout:
            print(f"FAIL nondeterministic output: {label}")
            failures += 1
        errors = list(validator.iter_errors(json.loads(runs[0].stdout)))
        for e in errors:
            print(f"FAIL schema: {label}: {e.message} at {list(e.absolute_path)}")
        failures += len(errors)
    timed = subprocess.run([cli, *CORPUS[0][0], "--format", "json", "--timing"], capture_output=True)
    for e in validator.iter_errors(json.loads(timed.stdout)):
        print(f"FAIL schema with timing: {e.message}")
        failures += 1
    print(f"{len(CORPUS)} reports checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
