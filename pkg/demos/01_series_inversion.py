#!/usr/bin/env python3
"""Power series arithmetic and compositional inversion.

Run: python3 demos/01_series_inversion.py
"""

import numpy as np

from biuniv.series import compose, identity, normalized, reverse, salagean

# f(z) = z + 0.1 z^2 + 0.05 z^3 + 0.01 z^4, truncated at order 6
f = normalized([0.1, 0.05, 0.01], order=6)
print("f      :", np.round(f.coeffs.real, 6))

# the inverse g satisfies f(g(w)) = w up to the truncation order
g = reverse(f)
print("g      :", np.round(g.coeffs.real, 6))
print("f(g(w)):", np.round(compose(f, g).coeffs.real, 12))

# low-order coefficients of g follow a fixed pattern in a2, a3, a4
a2, a3, a4 = 0.1, 0.05, 0.01
print("pattern:", [-a2, 2 * a2**2 - a3, -(5 * a2**3 - 5 * a2 * a3 + a4)])

# Salagean operator: D^m multiplies a_k by k^m
print("D^2 f  :", salagean(f, 2).coeffs.real)

# inversion is an involution
print("g^-1==f:", reverse(g).allclose(f, 1e-12), " f∘g == id:",
      compose(f, g).allclose(identity(6), 1e-12))
