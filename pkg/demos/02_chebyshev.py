#!/usr/bin/env python3
"""Chebyshev polynomials of the second kind and their generating function.

Run: python3 demos/02_chebyshev.py
"""

import numpy as np

from biuniv.chebyshev import h_coeffs, h_coeffs_as_printed, t_poly, u_poly, u_poly_trig

t = 0.75
ns = np.arange(8)
print("n        :", ns)
print("U_n(0.75):", np.round([u_poly(n, t) for n in ns], 6))
print("trig form:", np.round([u_poly_trig(n, t) for n in ns], 6))
print("T_n(0.75):", np.round([t_poly(n, t) for n in ns], 6))

# 1/(1 - 2tz + z^2) generates U_n(t) ...
print("1/(1-2tz+z^2):", np.round(h_coeffs(t, 7).coeffs.real, 6))
# ... while the sign-flipped denominator grows geometrically
print("1/(1-2tz-z^2):", np.round(h_coeffs_as_printed(t, 7).coeffs.real, 6))

for n in (10, 20, 29):
    print(f"n={n:2d}  U_n = {u_poly(n, t): .4g}   sign-flipped c_n = "
          f"{h_coeffs_as_printed(t, n).coeffs[-1].real: .4g}")
