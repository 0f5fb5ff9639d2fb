#!/usr/bin/env python3
"""Run every CLI command with --format json and validate against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
data = root / "tests" / "data"

runs = {
    "constants": [["constants"]],
    "table": [["table"]],
    "counterexample": [["counterexample"]],
    "audit": [
        ["audit", "--dist", str(data / "poisson_half.csv"), "--target", "poisson:1"],
        ["audit", "--dist", str(data / "std_normal_grid.csv"), "--target", "gaussian:hermite:4"],
        ["audit", "--dist", str(data / "poisson_half.csv"), "--target", "negbin:2:0.5"],
    ],
    "sweep": [["sweep", "--suite", s, "--seed", "5"] for s in
              ("family-bounds", "conjecture-deg2", "hermite4", "orthonormality")],
}

failed = 0
for name, cmds in runs.items():
    schema = json.loads((root / "schemas" / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    for args in cmds:
        out = subprocess.run([cli, "--format", "json", *args], capture_output=True, text=True)
        try:
            jsonschema.validate(json.loads(out.stdout), schema)
            print(f"ok   {' '.join(args)}")
        except (json.JSONDecodeError, jsonschema.ValidationError) as e:
            failed += 1
            print(f"FAIL {' '.join(args)}: {e}")
sys.exit(1 if failed else 0)
