#!/usr/bin/env python3
"""Printed versus re-derived coefficient bounds over the default grid.

Run: python3 demos/03_bounds_audit.py
"""

from biuniv.bounds import (bound_report, derived_a2_bound, derived_a3_bound,
                           printed_a2_bound, printed_a3_bound)
from biuniv.gsigma import ClassParams, default_grid

p = ClassParams(delta=1, t=0.75, m=0)
print("weights Lambda2, Lambda3:", p.lambda2, p.lambda3)
for r in (0.0, 1.0, 2.0):
    rep = bound_report(p, r).to_dict()
    print(f"r={r}: fs printed {rep['fs_printed']:.6f} ({rep['fs_case']['printed']}), "
          f"derived {rep['fs_derived']:.6f} ({rep['fs_case']['derived']})")

print()
print(f"{'delta':>5} {'t':>5} {'m':>2} {'pa2':>9} {'da2':>9} {'pa3':>9} {'da3':>9}")
below = 0
for q in default_grid():
    pa2, da2 = printed_a2_bound(q), derived_a2_bound(q)
    below += pa2 < da2
    if q.m == 0:
        print(f"{q.delta:5} {q.t:5} {q.m:2} {pa2:9.5f} {da2:9.5f} "
              f"{printed_a3_bound(q):9.5f} {derived_a3_bound(q):9.5f}")
print(f"\nprinted |a2| bound below the derived one at {below} of 60 grid points")
