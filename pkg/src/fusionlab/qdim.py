"""Exact quantum dimensions.

A value is ``sum_n a_n [n] + sqrt(k) * sum_n b_n [n]`` over the quantum integers
``[n] = sin(n pi/(k+2)) / sin(pi/(k+2))``, ``1 <= n <= k+1``. Those form a basis of the
Verlinde ring ``Q[c]/(S_{k+1}(c))`` with ``c = 2 cos(pi/(k+2))``, so arithmetic on the
coefficient vectors is exact ring arithmetic. Numeric evaluation goes through mpmath.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import mpmath

from .catalog import coerce_algebra
from .errors import LevelMismatch, PrecisionUnavailable
from .labels import AlgebraKind, Twisted, TwistedTilde, TypeI, TypeII

__all__ = ['QDim', 'qint', 'qint_reduce', 'qdim_mul', 'qdim_add', 'qdim_of', 'qdim_numeric',
           'qdim_value', 'precision_ceiling', 'MIN_DIGITS', 'equal_tier']

#: numeric evaluation never uses fewer significant digits than this
MIN_DIGITS = 40
_DEFAULT_CEILING = 1000
_GUARD = 20


def precision_ceiling() -> int:
    """Largest number of digits :func:`qdim_numeric` will produce.

    Read from ``FUSIONLAB_PRECISION_DIGITS`` when set; values below 40 are raised to 40.
    """
    raw = os.environ.get('FUSIONLAB_PRECISION_DIGITS')
    if not raw:
        return _DEFAULT_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise PrecisionUnavailable(f'FUSIONLAB_PRECISION_DIGITS={raw!r} is not an integer') from None
    return max(value, MIN_DIGITS)


def qint_reduce(t: int, k: int) -> Tuple[int, int]:
    """Return ``(eps, n)`` with ``[t] = eps * [n]`` and ``1 <= n <= k+1``.

    Uses ``[-t] = -[t]`` and period ``2(k+2)``. When ``[t]`` vanishes the result is ``(0, 0)``.
    """
    h = k + 2
    r = t % (2 * h)
    if r == 0 or r == h:
        return 0, 0
    if r < h:
        return 1, r
    return -1, 2 * h - r


def _zero(k):
    return (Fraction(0),) * (k + 1)


@dataclass(frozen=True)
class QDim:
    k: int
    a: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.a) != self.k + 1 or len(self.b) != self.k + 1:
            raise ValueError('coefficient vectors must have length k+1')
        object.__setattr__(self, 'a', tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, 'b', tuple(Fraction(x) for x in self.b))

    @classmethod
    def zero(cls, k: int) -> 'QDim':
        return cls(k, _zero(k), _zero(k))

    @classmethod
    def one(cls, k: int) -> 'QDim':
        return qint(k, 1)

    def _check(self, other):
        if not isinstance(other, QDim):
            return NotImplemented
        if other.k != self.k:
            raise LevelMismatch(f'levels {self.k} and {other.k} differ')
        return other

    def __add__(self, other):
        return qdim_add(self, other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return qdim_mul(self, other)

    __rmul__ = __mul__

    def scaled(self, factor) -> 'QDim':
        f = Fraction(factor)
        return QDim(self.k, tuple(x * f for x in self.a), tuple(x * f for x in self.b))

    def with_sqrt(self) -> 'QDim':
        """Multiply by ``sqrt(k)``."""
        return QDim(self.k, tuple(self.k * x for x in self.b), self.a)

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.b)

    def __str__(self):
        def part(vec):
            return ' + '.join(f'{c}[{n}]' if c != 1 else f'[{n}]'
                              for n, c in enumerate(vec, 1) if c)
        pa, pb = part(self.a), part(self.b)
        if pa and pb:
            return f'{pa} + sqrt({self.k})*({pb})'
        if pb:
            return f'sqrt({self.k})*({pb})'
        return pa or '0'


def qint(k: int, n: int) -> QDim:
    """The quantum integer ``[n]``, reduced into the basis."""
    eps, m = qint_reduce(n, k)
    a = list(_zero(k))
    if eps:
        a[m - 1] = Fraction(eps)
    return QDim(k, tuple(a), _zero(k))


def _mul_vec(k, x, y):
    out = [Fraction(0)] * (k + 1)
    for m, cx in enumerate(x, 1):
        if not cx:
            continue
        for n, cy in enumerate(y, 1):
            if not cy:
                continue
            c = cx * cy
            # [m][n] = sum_{j < min(m,n)} [m+n-1-2j]
            for j in range(min(m, n)):
                eps, t = qint_reduce(m + n - 1 - 2 * j, k)
                if eps:
                    out[t - 1] += eps * c
    return out


def qdim_add(x: QDim, y: QDim) -> QDim:
    x._check(y)
    return QDim(x.k, tuple(p + q for p, q in zip(x.a, y.a)),
                tuple(p + q for p, q in zip(x.b, y.b)))


def qdim_mul(x: QDim, y: QDim) -> QDim:
    x._check(y)
    k = x.k
    aa, bb = _mul_vec(k, x.a, y.a), _mul_vec(k, x.b, y.b)
    ab, ba = _mul_vec(k, x.a, y.b), _mul_vec(k, x.b, y.a)
    return QDim(k, tuple(p + k * q for p, q in zip(aa, bb)),
                tuple(p + q for p, q in zip(ab, ba)))


def qdim_of(algebra, k: int, x) -> QDim:
    """Quantum dimension of a module label.

    Orbifold-affine values are an extension: both halves of ``L(k,i)`` and of the twisted
    ``Lbar(k,i)`` get ``[i+1]``.
    """
    algebra = coerce_algebra(algebra)
    if algebra is not AlgebraKind.PARA_ORB:
        return qint(k, x.i + 1)
    if isinstance(x, TypeI):
        return qint(k, x.i + 1)
    if isinstance(x, TypeII):
        return qint(k, x.i + 1).scaled(2)
    if isinstance(x, TwistedTilde):
        return qint(k, k // 2 + 1).scaled(Fraction(1, 2)).with_sqrt()
    if isinstance(x, Twisted):
        base = qint(k, x.i + 1).with_sqrt()
        return base.scaled(Fraction(1, 2)) if 2 * x.i == k else base
    raise TypeError(f'not a para-orb label: {x!r}')


def qdim_value(x: QDim, dps: int = MIN_DIGITS + _GUARD):
    """Evaluate at working precision ``dps`` and return an :class:`mpmath.mpf`."""
    with mpmath.workdps(dps):
        theta = mpmath.pi / (x.k + 2)
        s1 = mpmath.sin(theta)
        rat = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * mpmath.sin(n * theta)
                          for n, c in enumerate(x.a, 1) if c)
        irr = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * mpmath.sin(n * theta)
                          for n, c in enumerate(x.b, 1) if c)
        return +((rat + mpmath.sqrt(x.k) * irr) / s1)


def qdim_numeric(x: QDim, digits: int = 10) -> str:
    """Decimal string with ``digits`` significant digits, truncated toward zero."""
    if digits < 1:
        raise PrecisionUnavailable('digits must be positive')
    ceiling = precision_ceiling()
    if digits > ceiling:
        raise PrecisionUnavailable(f'{digits} digits requested, ceiling is {ceiling}')
    dps = max(digits, MIN_DIGITS) + _GUARD
    with mpmath.workdps(dps):
        v = qdim_value(x, dps)
        if v == 0 or abs(v) < mpmath.mpf(10) ** (-(dps - _GUARD // 2)):
            return '0.' + '0' * (digits - 1) if digits > 1 else '0'
        sign = '-' if v < 0 else ''
        v = abs(v)
        # nudge by far less than the last kept digit so exact values like 2 do not print 1.99..
        v = v * (1 + mpmath.mpf(10) ** (-(dps - _GUARD // 2)))
        e = int(mpmath.floor(mpmath.log10(v)))
        scaled = int(mpmath.floor(v * mpmath.mpf(10) ** (digits - 1 - e)))
        if scaled >= 10 ** digits:  # log10 landed just below a power of ten
            e += 1
            scaled //= 10
    text = str(scaled)
    frac_len = digits - 1 - e
    if frac_len <= 0:
        return sign + text + '0' * (-frac_len)
    if e < 0:
        return sign + '0.' + '0' * (-e - 1) + text
    return sign + text[:e + 1] + '.' + text[e + 1:]


def equal_tier(x: QDim, y: QDim, rel_tol=None):
    """Return ``'exact'``, ``'numeric'`` or ``None`` for how ``x == y`` was established."""
    x._check(y)
    if x == y:
        return 'exact'
    with mpmath.workdps(MIN_DIGITS + _GUARD):
        tol = mpmath.mpf(10) ** -30 if rel_tol is None else mpmath.mpf(rel_tol)
        vx, vy = qdim_value(x), qdim_value(y)
        scale = max(abs(vx), abs(vy))
        if scale == 0 or abs(vx - vy) <= tol * scale:
            return 'numeric'
    return None
