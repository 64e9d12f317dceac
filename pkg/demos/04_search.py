#!/usr/bin/env python3
"""Randomized search for extremal coefficients, compared with both bound families.

Run: python3 demos/04_search.py   (about ten seconds)
"""

from biuniv.gsigma import ClassParams
from biuniv.search import SearchConfig, maximize

p = ClassParams(delta=1, t=0.75, m=0)

for mode in ("paper", "schur"):
    cfg = SearchConfig(samples=50_000, seed=42, mode=mode, refine_steps=100)
    print(f"--- {mode} mode")
    for functional, r in (("a2", None), ("a3", None), ("fs", 0.0), ("fs", 1.0)):
        rep = maximize(functional, p, r, cfg)
        label = functional if r is None else f"fs(r={r})"
        printed = "n/a" if rep.bound_printed is None else f"{rep.bound_printed:.4f}"
        print(f"{label:10s} empirical {rep.empirical_max:.4f}  printed {printed}  "
              f"derived {rep.bound_derived:.4f}  printed exceeded: {rep.violation_printed}")
    # |a2| depends on |p1| only, so any feasible unit-modulus p1 is a maximizer
    best = maximize("a2", p, config=cfg).argmax
    print(f"a2 argmax |p1| = {abs(best.p1):.6f}, |q2| = {abs(best.q2):.4f}")
