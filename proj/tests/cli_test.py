"""Exit codes and report contracts of the agcurv command line."""
import json
import os
import subprocess
import sys
import tempfile

CLI = sys.argv[1]
failures = []


def run(*args, env=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=env)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


with tempfile.TemporaryDirectory() as tmp:
    path = lambda name: os.path.join(tmp, name)

    r = run("gen", "--n", "2", "--seed", "7", "--out", path("m.json"))
    check(r.returncode == 0, "gen exits 0")
    check(run("validate", path("m.json")).returncode == 0, "validate of generated manifest exits 0")
    check(run("build", path("m.json")).returncode == 0, "build exits 0")

    run("gen", "--n", "1", "--kind", "zero", "--out", path("z.json"))
    r = run("classify", path("z.json"))
    report = json.loads(r.stdout)
    check(r.returncode == 0 and report["schema"] == "agcurv/1", "classify report carries the schema")
    check(abs(report["classification"]["constants"]["lambda"] + 2.0) < 1e-12, "zero structure lambda = -2n")
    check(report["classification"]["flags"]["einstein"], "zero structure is Einstein")
    check("timings" not in report, "timings are opt-in")
    check("timings" in json.loads(run("classify", path("z.json"), "--timings").stdout),
          "--timings adds timings")

    run("gen", "--n", "3", "--kind", "zero", "--out", path("z3.json"))
    m = json.load(open(path("z3.json")))
    m["structure"]["A13"][0][0][1][2] = [1.0, 0.0]
    m["structure"]["A13_lower"][0][0][1][2] = [1.0, 0.0]
    json.dump(m, open(path("bad.json"), "w"))
    r = run("validate", path("bad.json"))
    check(r.returncode == 1, "inadmissible manifest: validate exits 1")

    m = json.load(open(path("m.json")))
    m["n"] = 3
    json.dump(m, open(path("shape.json"), "w"))
    r = run("validate", path("shape.json"))
    check(r.returncode == 2 and "structure.B3u" in r.stderr, "shape error names structure.B3u")

    open(path("broken.json"), "w").write("{not json")
    check(run("validate", path("broken.json")).returncode == 2, "malformed JSON exits 2")
    check(run("validate", path("missing.json")).returncode == 2, "missing file exits 2")
    check(run("validate").returncode == 2, "missing argument exits 2")
    check(run("frobnicate").returncode == 2, "unknown command exits 2")
    check(run("hypersurface", path("m.json")).returncode == 2, "missing hypersurface section exits 2")
    check(run("gen", "--kind", "nonsense").returncode == 2, "unknown kind exits 2")

    a = run("audit", "--trials", "10", "--seed", "1", "--n", "2")
    b = run("audit", "--trials", "10", "--seed", "1", "--n", "2")
    check(a.returncode == 0 and a.stdout == b.stdout, "audit batch is byte-identical")
    check(run("audit", path("m.json")).returncode == 0, "single-manifest audit exits 0")

    env = dict(os.environ, AGCURV_TOLERANCE="1e-7")
    g = json.loads(run("gen", "--n", "1", env=env).stdout)
    check(g["options"]["tolerance"] == 1e-7, "AGCURV_TOLERANCE sets the default tolerance")

    # Kenmotsu hypersurface of an ambient manifold with vanishing components.
    z = json.load(open(path("z.json")))
    zero = lambda *shape: [zero(*shape[1:]) for _ in range(shape[0])] if shape else [0.0, 0.0]
    ident = [[[1.0, 0.0] if i == j else [0.0, 0.0] for j in range(3)] for i in range(3)]
    z["hypersurface"] = {
        "n": 2,
        "Bab_c": zero(1, 1, 1), "Ban_b": zero(1, 1), "Bna_b": zero(1, 1),
        "Bab_n": zero(1, 1), "Bn_nb": zero(1),
        "frame_change": {"C": ident},
    }
    json.dump(z, open(path("h.json"), "w"))
    r = run("hypersurface", path("h.json"))
    check(r.returncode == 1, "inconsistent ambient data: hypersurface exits 1")
    if r.returncode in (0, 1):
        h = json.loads(r.stdout)
        check(h["kenmotsu_hypersurface"]["verdict"] == "not-applicable", "verdict is reported")

if failures:
    print(f"{len(failures)} failure(s)")
    sys.exit(1)
