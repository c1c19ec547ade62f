"""Fusion for the level-k affine sl2 ring and its Z2-orbifold."""

from __future__ import annotations

from functools import lru_cache

from .catalog import check_level, contragredient, enumerate_labels
from .errors import ParityError
from .labels import AffineLabel, AlgebraKind, FusionOutcome, OrbAffineLabel, Sign, PLUS

__all__ = ['fusion_range', 'sign_of', 'fuse_affine', 'fuse_orb_affine']


def fusion_range(k: int, i: int, j: int) -> range:
    """The admissible ``l`` with ``|i-j| <= l <= i+j``, ``i+j+l`` even and ``i+j+l <= 2k``."""
    return range(abs(i - j), min(i + j, 2 * k - i - j) + 1, 2)


def sign_of(i: int, j: int, l: int, variant: Sign = PLUS) -> Sign:
    """``sign(i,j,l)^variant``: ``+`` iff ``i+j-l`` is divisible by 4, flipped for variant ``-``."""
    if (i + j + l) % 2:
        raise ParityError(f'i+j+l = {i + j + l} is odd')
    base = Sign.PLUS if (i + j - l) % 4 == 0 else Sign.MINUS
    return base * variant


def fuse_affine(k: int, a: AffineLabel, b: AffineLabel) -> FusionOutcome:
    return FusionOutcome([AffineLabel(l) for l in fusion_range(k, a.i, b.i)])


def fuse_orb_affine(k: int, a: OrbAffineLabel, b: OrbAffineLabel) -> FusionOutcome:
    check_level(AlgebraKind.AFFINE_ORB, k)
    return _fuse_orb_affine(k, a, b)


@lru_cache(maxsize=None)
def _fuse_orb_affine(k, a, b):
    if a.twisted and b.twisted:
        return _twisted_twisted(k, a, b)
    if a.twisted:
        a, b = b, a
    # a is untwisted; the output lives in the sector of b
    s = a.sign * b.sign
    return FusionOutcome([OrbAffineLabel(b.twisted, l, sign_of(a.i, b.i, l, s))
                          for l in fusion_range(k, a.i, b.i)])


def _twisted_twisted(k, t1, t2):
    # N_{T1,T2}^U = N_{T1,U'}^{T2'}: the multiplicity of T2' in U' x T1
    target = contragredient(AlgebraKind.AFFINE_ORB, k, t2)
    out = {}
    for u in enumerate_labels(AlgebraKind.AFFINE_ORB, k):
        if u.twisted:
            continue
        n = _fuse_orb_affine(k, contragredient(AlgebraKind.AFFINE_ORB, k, u), t1).mult(target)
        if n:
            out[u] = n
    return FusionOutcome(out)
