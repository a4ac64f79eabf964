"""Time the integer kernels on gmpy2 vs pure Python ints.

The dominant cost is the fraction-free inversion of the Gram matrices,
so the benchmark runs the Weingarten computation for the largest cached
orders of each category. The pure run happens in a subprocess with
FREEDF_PURE_PYTHON=1 so the backend choice is made at import time.

Usage: python benchmarks/bench_backend.py
"""

import json
import os
import subprocess
import sys
import time

CASES = [
    ("o+", 10, 7),
    ("o+", 12, 7),
    ("s+", 6, 9),
    ("h+", 10, 9),
    ("b+", 7, 9),
]


def run_cases():
    from freedf._backend import BACKEND
    from freedf.categories import parse_category
    from freedf.weingarten import _WG_CACHE, weingarten

    out = []
    for cat_text, m, n in CASES:
        _WG_CACHE.clear()
        cat = parse_category(cat_text)
        t0 = time.perf_counter()
        weingarten(cat, m, n)
        out.append((cat_text, m, n, time.perf_counter() - t0))
    return BACKEND, out


def main():
    if os.environ.get("_FREEDF_BENCH_CHILD"):
        backend, rows = run_cases()
        json.dump({"backend": backend, "rows": rows}, sys.stdout)
        return

    results = {}
    for pure in (False, True):
        env = dict(os.environ)
        env["_FREEDF_BENCH_CHILD"] = "1"
        env.pop("FREEDF_CACHE_DIR", None)
        if pure:
            env["FREEDF_PURE_PYTHON"] = "1"
        else:
            env.pop("FREEDF_PURE_PYTHON", None)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__)], env=env, capture_output=True, text=True
        )
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            sys.exit(1)
        doc = json.loads(proc.stdout)
        results[doc["backend"]] = doc["rows"]

    backends = sorted(results)
    print("case            " + "".join("%12s" % b for b in backends))
    for idx in range(len(CASES)):
        cat_text, m, n = CASES[idx]
        label = "%s m=%-2d n=%-2d" % (cat_text, m, n)
        cells = ""
        for b in backends:
            cells += "%11.3fs" % results[b][idx][3]
        print("%-16s%s" % (label, cells))
    if "gmpy2" in results and "python" in results:
        tg = sum(r[3] for r in results["gmpy2"])
        tp = sum(r[3] for r in results["python"])
        print("total gmpy2 %.3fs  python %.3fs  speedup %.2fx" % (tg, tp, tp / tg))
    else:
        print("only one backend available (%s); install gmpy2 to compare" % backends[0])


if __name__ == "__main__":
    main()
