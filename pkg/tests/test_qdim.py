from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from fusionlab import (AffineLabel, LevelMismatch, PrecisionUnavailable, QDim, enumerate_labels,
                       fuse_affine, parse_label, qdim_mul, qdim_numeric, qdim_of, qint, qint_reduce)
from fusionlab.qdim import equal_tier, qdim_value


@pytest.fixture(autouse=True)
def high_precision():
    with mpmath.workdps(60):
        yield


def test_qint_reduce_examples():
    assert qint_reduce(6, 4) == (0, 0)
    assert qint_reduce(7, 4) == (-1, 5)
    assert qint_reduce(3, 4) == (1, 3)
    assert qint_reduce(-2, 4) == (-1, 2)


@given(k=st.integers(1, 20), t=st.integers(-200, 200))
def test_qint_reduce_numeric(k, t):
    mpmath.mp.dps = 60  # hypothesis runs outside the fixture's context
    eps, n = qint_reduce(t, k)
    assert eps == 0 or 1 <= n <= k + 1
    expected = oracles.qint(k, t, 40)
    got = eps * oracles.qint(k, n, 40) if eps else 0
    assert abs(expected - got) < mpmath.mpf(10) ** -30


def test_product_examples():
    assert qdim_mul(qint(4, 2), qint(4, 2)) == qint(4, 1) + qint(4, 3)
    x = qint(5, 3) + qint(5, 2).with_sqrt()
    assert qdim_mul(qint(5, 1), x) == x
    # at k=2, [1] + [3] and 2[1] are different coefficient vectors with the same value
    y = qdim_mul(qint(2, 2), qint(2, 2))
    assert y == qint(2, 1) + qint(2, 3)
    assert y != qint(2, 1).scaled(2)
    assert equal_tier(y, qint(2, 1).scaled(2)) == 'numeric'


def test_level_mismatch():
    with pytest.raises(LevelMismatch):
        qdim_mul(qint(3, 1), qint(4, 1))


def test_numeric_examples():
    assert qdim_numeric(qint(3, 1), 10) == '1.000000000'
    assert qdim_numeric(qdim_of('para-orb', 3, parse_label('para-orb', 3, 'PII:1,0')), 10) == '3.236067977'
    assert qdim_numeric(qint(3, 1).with_sqrt(), 10) == '1.732050807'
    assert qdim_numeric(qdim_of('para-orb', 4, parse_label('para-orb', 4, 'PT:2:+')), 10) == '2.000000000'
    assert qdim_numeric(qint(3, 1).scaled(Fraction(1, 8)), 4) == '0.1250'


def test_numeric_precision_ceiling(monkeypatch):
    monkeypatch.setenv('FUSIONLAB_PRECISION_DIGITS', '50')
    assert len(qdim_numeric(qint(3, 2), 50).replace('.', '')) == 50
    with pytest.raises(PrecisionUnavailable):
        qdim_numeric(qint(3, 2), 51)
    monkeypatch.setenv('FUSIONLAB_PRECISION_DIGITS', '5')  # raised to the 40-digit floor
    assert qdim_numeric(qint(3, 2), 40).startswith('1.618033988749894848204586834365638117720')


@pytest.mark.parametrize('k', range(3, 13))
def test_qdim_of_matches_closed_forms(k):
    for x in enumerate_labels('para-orb', k):
        value = qdim_value(qdim_of('para-orb', k, x))
        assert abs(value - oracles.orbifold_para_qdim(k, str(x))) < mpmath.mpf(10) ** -35
        assert value >= 1 - mpmath.mpf(10) ** -30


@pytest.mark.parametrize('k', range(1, 13))
def test_verlinde_identity_exact(k):
    for i in range(k + 1):
        for j in range(k + 1):
            total = QDim.zero(k)
            for x, m in fuse_affine(k, AffineLabel(i), AffineLabel(j)):
                total = total + qint(k, x.i + 1).scaled(m)
            assert qdim_mul(qint(k, i + 1), qint(k, j + 1)) == total


def _element(k, data):
    a = [Fraction(v) for v in data[:k + 1]]
    b = [Fraction(v) for v in data[k + 1:2 * k + 2]]
    return QDim(k, tuple(a), tuple(b))


coeffs = st.lists(st.integers(-3, 3), min_size=14, max_size=14)


@settings(max_examples=60, deadline=None)
@given(k=st.integers(1, 6), x=coeffs, y=coeffs, z=coeffs)
def test_ring_laws(k, x, y, z):
    x, y, z = _element(k, x), _element(k, y), _element(k, z)
    assert qdim_mul(x, y) == qdim_mul(y, x)
    assert qdim_mul(qdim_mul(x, y), z) == qdim_mul(x, qdim_mul(y, z))
    assert qdim_mul(x, y + z) == qdim_mul(x, y) + qdim_mul(x, z)
    assert qdim_mul(QDim.one(k), x) == x
    with mpmath.workdps(60):
        lhs = qdim_value(qdim_mul(x, y))
        rhs = qdim_value(x) * qdim_value(y)
        assert abs(lhs - rhs) <= mpmath.mpf(10) ** -35 * max(1, abs(rhs))
