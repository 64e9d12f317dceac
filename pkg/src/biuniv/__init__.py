"""Numerical audit of coefficient bounds for a Chebyshev-subordinate class
of bi-univalent functions.

Modules
-------
series      truncated complex power series (product, composition, reversion,
            Salagean operator)
chebyshev   Chebyshev polynomials and their generating function
schwarz     admissible Schwarz coefficient data and Schur parameters
gsigma      the class parameters and its coefficient system
bounds      printed and re-derived coefficient / Fekete-Szego bounds
search      seeded extremal search over admissible data
cli         command-line entry point ``biuniv``
"""

__version__ = "0.1.0"

from .errors import (BiunivError, BoundUndefined, DegenerateDenominator, DomainError,
                     InconsistentPair, NonzeroConstantTerm, NotNormalized)
from .series import PowerSeries, compose, evaluate, mul, reverse, salagean
from .chebyshev import h_coeffs, t_poly, u_poly, u_poly_trig
from .schwarz import Mode, SchurParams, SchwarzPair, admissible, coeffs_from_schur, sample
from .gsigma import ClassParams, MemberCoeffs, coeffs_from_schwarz, induced_q2, weight
from .bounds import (derived_a2_bound, derived_a3_bound, derived_fs_bound,
                     printed_a2_bound, printed_a3_bound, printed_fs_bound, sigma_printed)
from .search import ExtremalReport, SearchConfig, maximize, sweep
