#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Micro benchmarks exercise the raw kernel functions on both backends in
process; the macro benchmark (coset expansion, convolution and the
factorization check) re-runs this script in a subprocess with
HECKEFORGE_PURE=1 so the whole engine goes through the fallback.

Usage: python benchmarks/bench_kernels.py [--macro-only|--micro-only]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def _rand_mats(count, n, seed=0):
    rng = random.Random(seed)
    return [[rng.randrange(-50, 51) for _ in range(n * n)] for _ in range(count)]


def bench_micro():
    from heckeforge import _pykernels

    backends = {"python": _pykernels}
    try:
        from heckeforge import _ckernels
        backends["cython"] = _ckernels
    except ImportError:
        pass

    mats = _rand_mats(400, 3)
    results = {}
    for name, mod in backends.items():
        t0 = time.perf_counter()
        for a in mats:
            for b in mats[:40]:
                mod.mat_mul(a, b, 3)
        t_mul = time.perf_counter() - t0

        t0 = time.perf_counter()
        for a in mats:
            mod.adjugate(a, 3)
            mod.bareiss_det(a, 3)
        t_adj = time.perf_counter() - t0

        t0 = time.perf_counter()
        for a in mats:
            for b in mats[:40]:
                mod.mul_is_iwahori(a, 1, b, 2, 3, 2, 1)
        t_mem = time.perf_counter() - t0
        results[name] = {"mat_mul": t_mul, "adjugate+det": t_adj,
                         "fold-membership": t_mem}
    return results


def bench_macro():
    from heckeforge import kernels
    from heckeforge.hecke import expand_Vp, verify_gritsenko
    from heckeforge.matrices import GlnContext

    ctx = GlnContext(3, 2, 1)
    t0 = time.perf_counter()
    cs = expand_Vp(ctx)
    sq = cs * cs
    t_fold = time.perf_counter() - t0

    t0 = time.perf_counter()
    ok, _ = verify_gritsenko(GlnContext(3, 3, 1))
    t_grits = time.perf_counter() - t0
    assert ok
    return {"backend": kernels.BACKEND,
            "Vp-expand+square": t_fold,
            "gritsenko-n3-p3": t_grits,
            "folded-cosets": len(sq)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--micro-only", action="store_true")
    ap.add_argument("--macro-only", action="store_true")
    ap.add_argument("--json", action="store_true", help="machine output")
    args = ap.parse_args()

    out = {}
    if not args.macro_only:
        out["micro"] = bench_micro()
    if not args.micro_only:
        out["macro"] = [bench_macro()]
        if os.environ.get("HECKEFORGE_PURE") != "1":
            env = dict(os.environ, HECKEFORGE_PURE="1")
            proc = subprocess.run(
                [sys.executable, __file__, "--macro-only", "--json"],
                capture_output=True, text=True, env=env, check=True)
            out["macro"].extend(json.loads(proc.stdout)["macro"])

    if args.json:
        print(json.dumps(out))
        return

    if "micro" in out:
        print("== micro (400 random 3x3 integer matrices) ==")
        for name, times in out["micro"].items():
            for op, t in times.items():
                print(f"  {name:7s} {op:17s} {t * 1000:9.1f} ms")
        if len(out["micro"]) == 2:
            for op in out["micro"]["python"]:
                ratio = out["micro"]["python"][op] / out["micro"]["cython"][op]
                print(f"  speedup {op:17s} {ratio:9.2f}x")
    if "macro" in out:
        print("== macro (coset engine) ==")
        for row in out["macro"]:
            print(f"  backend={row['backend']}: Vp-square "
                  f"{row['Vp-expand+square'] * 1000:.0f} ms, "
                  f"gritsenko(3,3) {row['gritsenko-n3-p3'] * 1000:.0f} ms")


if __name__ == "__main__":
    main()
