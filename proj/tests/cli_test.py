#!/usr/bin/env python3
# CLI contract checks for fibre_sieve. Usage: cli_test.py PATH_TO_fibre_sieve DATA_DIR
import json
import os
import shutil
import subprocess
import sys
import tempfile

EXE, DATA = sys.argv[1], sys.argv[2]
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("FIBRE_SIEVE_DATA", None)
    if env:
        e.update(env)
    p = subprocess.run([EXE, *args], capture_output=True, text=True, env=e)
    return p.returncode, p.stdout, p.stderr


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


# help contract
code, out, _ = run("--help")
check(code == 0 and "Exit codes" in out and "FIBRE_SIEVE_DATA" in out, "top-level --help")
flags = {
    "enumerate": ["--p", "--k", "--points", "--format", "--out"],
    "torsion": ["--format", "--out"],
    "ramify": ["--format", "--out"],
    "genus": ["--format", "--out"],
    "sieve": ["--primes", "--workers", "--format", "--out"],
    "cusp-check": ["--primes", "--workers", "--format", "--out"],
    "validate": ["--format", "--out"],
}
for sub, fl in flags.items():
    code, out, _ = run(sub, "--help")
    check(code == 0 and all(f in out for f in fl), f"{sub} --help documents {' '.join(fl)}")

# exit codes
check(run("sieve", "b3b5e7")[0] == 10, "empty surviving set exits 10")
code, out, _ = run("sieve", "s3b5e7")
check(code == 0 and "[(0,1)-inf]" in out, "nonempty surviving set exits 0")
check(run("sieve", "b3b5d7", "--primes", "5..30")[0] == 2, "prime range below 11 is a usage error")
check(run("sieve", "b3b5d7", "--primes", "30..11")[0] == 2, "reversed prime range is a usage error")
check(run("sieve", "b3b5d7", "--workers", "0")[0] == 2, "zero workers is a usage error")
check(run("frobnicate")[0] == 2, "unknown subcommand is a usage error")
check(run("sieve")[0] == 2, "missing descriptor is a usage error")
check(run("enumerate", "e7", "--p", "7")[0] == 3, "bad reduction prime is rejected")
check(run("enumerate", "d7", "--p", "12")[0] == 2, "composite p is a usage error")
check(run("sieve", "no_such_pair")[0] == 3, "unknown descriptor is a data error")

with tempfile.TemporaryDirectory() as tmp:
    bad = json.load(open(os.path.join(DATA, "members", "d7.json")))
    bad["mordell_weil"]["rank_proof"] = "x"
    path = os.path.join(tmp, "bad.json")
    json.dump(bad, open(path, "w"))
    code, _, err = run("validate", path)
    check(code == 3 and "rank_proof" in err, "unknown key is a data error naming the key")
    open(os.path.join(tmp, "cut.json"), "w").write(open(os.path.join(DATA, "members", "d7.json")).read()[:300])
    code, _, err = run("validate", os.path.join(tmp, "cut.json"))
    check(code == 3 and "cut.json:" in err, "truncated file is a data error with position")

# validate and genus
for name in ["x0_15", "s3b5", "d7", "e7", "b3b5d7", "s3b5d7", "b3b5e7", "s3b5e7"]:
    check(run("validate", name)[0] == 0, f"validate {name}")
for name, g in [("b3b5d7", 97), ("s3b5d7", 153), ("b3b5e7", 73), ("s3b5e7", 113)]:
    code, out, _ = run("genus", name, "--format", "machine")
    check(code == 0 and json.loads(out)["results"]["genus"] == g, f"genus {name} = {g}")

# enumerate
code, out, _ = run("enumerate", "d7", "--p", "11", "--format", "machine")
n = json.loads(out)["results"]["count"]
check(code == 0 and 6 <= n <= 18, "X(d7) over F_11 lies in the Hasse window")
code, out, _ = run("enumerate", "x0_15", "--p", "11", "--format", "machine")
check(code == 0 and json.loads(out)["results"]["count"] % 8 == 0, "15A1 over F_11 is divisible by 8")
code, out, _ = run("enumerate", "b3b5d7", "--p", "11", "--k", "2", "--format", "machine")
check(code == 0 and json.loads(out)["results"]["count"] > 0, "fibre product over F_121")

# machine output is byte-identical across runs and worker counts
outs = [run("sieve", "b3b5d7", "--format", "machine", "--workers", w)[1] for w in ("1", "3", "1")]
check(outs[0] == outs[1] == outs[2], "sieve machine output identical for 1 and 3 workers and reruns")
sieve_text = outs[0]
doc = json.loads(sieve_text)
check(doc["schema_version"] == 1 and doc["command"] == "sieve" and "content_hash" in doc, "machine document shape")
check(len(doc["results"]["primes"]) == 21 and all(p["used"] for p in doc["results"]["primes"]), "elimination matrix rows")
outs = [run("cusp-check", "s3b5d7", "--format", "machine", "--workers", w)[1] for w in ("1", "2")]
check(outs[0] == outs[1], "cusp-check machine output identical across workers")

# narrowed range gives a superset
wide = {tuple(s) for s in json.loads(run("sieve", "b3b5d7", "--primes", "11..30", "--format", "machine")[1])["results"]["survivors"]}
full = {tuple(s) for s in doc["results"]["survivors"]}
check(full <= wide, "survivors for 11..30 contain the full-range survivors")

with tempfile.TemporaryDirectory() as tmp:
    # --out writes the same document
    target = os.path.join(tmp, "r.json")
    code, out, _ = run("sieve", "b3b5d7", "--format", "machine", "--out", target)
    check(code == 0 and out == "" and open(target).read() == sieve_text, "--out writes the machine document")
    # data directory override
    copy = os.path.join(tmp, "data")
    shutil.copytree(DATA, copy)
    pj = os.path.join(copy, "pairs", "b3b5d7.json")
    d = json.load(open(pj))
    d["primes"]["hi"] = 30
    json.dump(d, open(pj, "w"), indent=2, sort_keys=True)
    code, out, _ = run("sieve", "b3b5d7", "--format", "machine", env={"FIBRE_SIEVE_DATA": copy})
    used = json.loads(out)["results"]["used_primes"] if code == 0 else []
    check(code == 0 and max(used) == 29, "FIBRE_SIEVE_DATA selects the data directory")
    empty = os.path.join(tmp, "empty")
    os.mkdir(empty)
    check(run("sieve", "b3b5d7", env={"FIBRE_SIEVE_DATA": empty})[0] == 3, "labels resolve only under FIBRE_SIEVE_DATA")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
