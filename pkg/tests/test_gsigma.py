import numpy as np
import pytest

from _support import admissible_pairs
from biuniv.errors import DomainError, NotNormalized
from biuniv.gsigma import (ClassParams, MemberCoeffs, class_pair, coeffs_from_schwarz,
                           default_grid, induced_q2, lhs_series, membership_residual,
                           weight)
from biuniv.schwarz import Mode, SchwarzPair
from biuniv.series import PowerSeries, identity, normalized


@pytest.mark.parametrize("delta,m,k,expected", [
    (1, 0, 2, 2), (1, 0, 3, 3), (2, 1, 3, 15), (1.5, 1, 2, 5),
])
def test_weight(delta, m, k, expected):
    assert weight(ClassParams(delta, 0.75, m), k) == pytest.approx(expected, abs=1e-14)


def test_weight_closed_form_matches_bracket():
    for p in default_grid():
        for k in (2, 3, 4):
            bracket = (1 - p.delta) * k**p.m + p.delta * k ** (p.m + 1)
            assert weight(p, k) == pytest.approx(bracket, rel=1e-14)
            assert weight(p, k) > 0


@pytest.mark.parametrize("delta,t,m", [(0.5, 0.75, 0), (1, 0.5, 0), (1, 1.0, 0),
                                       (1, 0.75, -1), (1, 0.75, 1.5)])
def test_domain_rejected(delta, t, m):
    with pytest.raises(DomainError):
        ClassParams(delta, t, m)


def test_default_grid_shape_and_order():
    grid = default_grid()
    assert len(grid) == 60
    assert grid == sorted(grid, key=lambda p: (p.delta, p.t, p.m))


def test_coeffs_from_schwarz_examples():
    p = ClassParams(1, 0.75, 0)
    c = coeffs_from_schwarz(SchwarzPair.from_forward(1, 0, 0), p)
    assert c.a2 == pytest.approx(0.75, abs=1e-15)
    assert c.a3 == pytest.approx(1.25 / 3, abs=1e-15)

    zero = coeffs_from_schwarz(SchwarzPair.from_forward(0, 0, 0), p)
    assert zero.a2 == 0 and zero.a3 == 0

    c = coeffs_from_schwarz(SchwarzPair.from_forward(0.5, 0.5, 0), ClassParams(2, 0.6, 1))
    assert c.a2 == pytest.approx(0.1, abs=1e-15)
    assert c.a3 == pytest.approx((1.2 * 0.5 + 0.44 * 0.25) / 15, abs=1e-15)
    assert c.a3 == pytest.approx(0.047333, abs=1e-6)


def test_induced_q2_examples():
    p = ClassParams(1, 0.75, 0)
    assert induced_q2(1, 0, p) == pytest.approx((3 * (1.125 - 1.25 / 3) - 1.25) / 1.5, abs=1e-15)
    assert induced_q2(1, 0, p) == pytest.approx(0.583333, abs=1e-6)
    assert induced_q2(0, 0, p) == 0
    for params in default_grid()[::7]:
        for p2 in (0.3, -0.8j, 0.5 + 0.5j):
            assert induced_q2(0, p2, params) == pytest.approx(-p2, abs=1e-14)


def test_lhs_series_examples():
    p = ClassParams(1, 0.75, 0)
    np.testing.assert_allclose(lhs_series(identity(3), p, 2).coeffs, [1, 0, 0])
    np.testing.assert_allclose(lhs_series(normalized([0.3]), p, 1).coeffs, [1, 0.6])
    out = lhs_series(normalized([0.1, 0.05]), ClassParams(2, 0.6, 1), 2)
    np.testing.assert_allclose(out.coeffs, [1, 0.6, 0.75], atol=1e-15)
    with pytest.raises(NotNormalized):
        lhs_series(PowerSeries([0, 2, 0]), p, 1)


def test_membership_residual_examples():
    p = ClassParams(1, 0.75, 0)
    for pair in admissible_pairs(p, Mode.PAPER, 50, seed=1):
        assert membership_residual(pair, p) <= 1e-12
    assert membership_residual(class_pair(0, 0, p), p) == 0.0

    pair = class_pair(0.4 + 0.2j, -0.3j, p)
    c = coeffs_from_schwarz(pair, p)
    bumped = MemberCoeffs(c.a2, c.a3 + 0.01)
    assert membership_residual(pair, p, bumped) == pytest.approx(p.lambda3 * 0.01, rel=1e-9)


@pytest.mark.parametrize("mode", list(Mode))
def test_coefficient_system_identities(mode):
    for params in default_grid()[::5]:
        u1, u2, l2, l3 = params.u1, params.u2, params.lambda2, params.lambda3
        for pair in admissible_pairs(params, mode, 50, seed=params.m):
            c = coeffs_from_schwarz(pair, params)
            # p1 and q1 recovered from a2 through the first-order equations
            assert abs(l2 * c.a2 / u1 + (-l2 * c.a2 / u1)) <= 1e-12
            assert abs(-l2 * c.a2 / u1 - pair.q1) <= 1e-12
            s = pair.p1**2 + pair.q1**2
            assert abs(2 * l2**2 * c.a2**2 - u1**2 * s) <= 1e-12
            assert abs(u1 * (pair.p2 + pair.q2) + u2 * s - 2 * l3 * c.a2**2) <= 1e-12
            assert abs(c.a3 - (u1 * (pair.p2 - pair.q2) / (2 * l3) + c.a2**2)) <= 1e-12
