#!/usr/bin/env python3
"""End-to-end checks of the divbound executable: exit codes, output values,
determinism."""
import json
import os
import subprocess
import sys

cli, data = sys.argv[1], sys.argv[2]
failures = 0


def run(*args, env=None):
    return subprocess.run([cli, *args], capture_output=True, text=True, env=env)


def check(name, cond, extra=""):
    global failures
    print(("ok   " if cond else "FAIL ") + name + (f" ({extra})" if extra and not cond else ""))
    failures += 0 if cond else 1


r = run("--format", "json", "constants")
c = json.loads(r.stdout)
check("constants exit 0", r.returncode == 0)
check("constants beta0", abs(c["beta0"] + 0.75309) < 5e-6, c["beta0"])
check("constants alpha0", abs(c["alpha0"] - 6.4466) < 5e-4, c["alpha0"])
check("constants local_max", abs(c["local_max"] - 0.9545) < 5e-5, c["local_max"])
check("constants residuals", c["beta0_residual"] <= 1e-10 and c["alpha0_residual"] <= 1e-10)
c64 = json.loads(run("--format", "json", "--nodes", "64", "constants").stdout)
check("constants ignore nodes", all(c64[k] == c[k] for k in ("beta0", "alpha0", "local_max")))

r = run("--format", "json", "table")
t = json.loads(r.stdout)
check("table exit 0", r.returncode == 0)
rows = {row["alpha"]: row for row in t["rows"]}
check("table row 1", abs(rows[1.0]["beta0_alpha"] + 0.8660) < 1e-4 and abs(rows[1.0]["integral"] - 0.52046) < 1e-5)
check("table row 2.5", abs(rows[2.5]["beta0_alpha"] + 0.8018) < 1e-4 and abs(rows[2.5]["integral"] - 0.48181) < 1e-5)
check("table all pass", t["all_pass"] and all(row["passes"] for row in t["rows"]))

r = run("--format", "json", "counterexample")
ce = json.loads(r.stdout)
check("counterexample exit 0", r.returncode == 0)
check("counterexample values", ce["violated"] and ce["bound"] == 4.5 and abs(ce["divergence"] - 3.3195) < 1e-3)

pois = os.path.join(data, "poisson_half.csv")
r = run("--format", "json", "audit", "--dist", pois, "--target", "poisson:1")
a = json.loads(r.stdout)
check("audit poisson exit 0", r.returncode == 0)
check("audit poisson margin", a["satisfied"] and abs(a["margin"] - 0.0284264) < 1e-5, a.get("margin"))
r = run("--format", "json", "audit", "--dist", os.path.join(data, "std_normal_grid.csv"), "--target",
        "gaussian:hermite:4")
check("audit grid equal to target", r.returncode == 0 and abs(json.loads(r.stdout)["margin"]) < 1e-10)

r = run("audit", "--dist", os.path.join(data, "negative_prob.csv"), "--target", "poisson:1")
check("negative probability exit 2", r.returncode == 2 and "line 4" in r.stderr, r.stderr)
r = run("audit", "--dist", os.path.join(data, "unnormalized.csv"), "--target", "poisson:1")
check("unnormalized exit 2", r.returncode == 2)
r = run("audit", "--dist", os.path.join(data, "unnormalized.csv"), "--target", "poisson:1", "--renormalize")
check("renormalize accepted", r.returncode == 0)
r = run("audit", "--dist", os.path.join(data, "bad_header.csv"), "--target", "poisson:1")
check("bad header exit 2", r.returncode == 2 and "line 1" in r.stderr)
r = run("audit", "--dist", pois, "--target", "weibull:2")
check("bad target exit 2", r.returncode == 2)
r = run("audit", "--dist", pois, "--target", "gamma:0:laguerre:2")
check("support mismatch exit 2", r.returncode == 2)
r = run("audit", "--dist", "/nonexistent.csv", "--target", "poisson:1")
check("missing file exit 2", r.returncode == 2)

r = run("--format", "json", "audit", "--dist", os.path.join(data, "std_normal_grid.csv"), "--target",
        "gaussian:hermite:6")
check("hermite 6 audit is not a proven claim", r.returncode == 0 and not json.loads(r.stdout)["proven"])

for args in (["bogus"], ["--nodes", "8", "constants"], ["--nodes", "5000", "table"], ["--format", "xml", "constants"],
             ["sweep", "--suite", "nope"], ["audit", "--target", "poisson:1"], []):
    r = run(*args)
    check("usage error exit 2: " + " ".join(args), r.returncode == 2, r.returncode)

r = run("--format", "json", "--seed", "7", "sweep", "--suite", "conjecture-deg2")
s = json.loads(r.stdout)
check("sweep conjecture-deg2 seed 7", r.returncode == 0 and s["failures"] == 0 and s["seed"] == 7)
r = run("--format", "json", "--seed", "1", "sweep", "--suite", "family-bounds")
s = json.loads(r.stdout)
check("sweep family-bounds seed 1", r.returncode == 0 and s["failures"] == 0 and s["cases"] == 1000)

for fmt in ("json", "csv", "pretty"):
    for cmd in (["table"], ["--seed", "9", "sweep", "--suite", "family-bounds", "--cases", "200"]):
        a1 = run("--format", fmt, *cmd).stdout
        a2 = run("--format", fmt, *cmd).stdout
        check(f"byte-identical {fmt} {' '.join(cmd)}", a1 == a2 and len(a1) > 0)

r = run("--format", "csv", "--seed", "5", "sweep", "--suite", "hermite4")
check("seed recorded in csv", "# seed=5" in r.stdout)

env = dict(os.environ, DIVBOUND_SIMD="scalar")
check("scalar kernels give same table",
      run("--format", "json", "table", env=env).stdout == run("--format", "json", "table").stdout)
env = dict(os.environ, DIVBOUND_NODES="64")
check("node env var", json.loads(run("--format", "json", "constants", env=env).stdout)["nodes"] == 64)

sys.exit(1 if failures else 0)
