"""One entry point for fusing two labels of any of the four algebras."""

from __future__ import annotations

from .affine_rings import fuse_affine, fuse_orb_affine
from .catalog import FoldConvention, check_level, coerce_algebra
from .labels import (AffineLabel, AlgebraKind, FusionOutcome, K0Label, OrbAffineLabel, TypeI,
                     PLUS, MINUS)
from .para_rings import fuse_k0, fuse_orb_para

__all__ = ['fuse', 'fuse_outcomes', 'unit_label', 'simple_current_label']


def fuse(algebra, k: int, a, b, fold=FoldConvention.PRESERVE, literal: bool = False) -> FusionOutcome:
    algebra = coerce_algebra(algebra)
    check_level(algebra, k)
    if algebra is AlgebraKind.AFFINE:
        return fuse_affine(k, a, b)
    if algebra is AlgebraKind.AFFINE_ORB:
        return fuse_orb_affine(k, a, b)
    if algebra is AlgebraKind.PARA:
        return fuse_k0(k, a, b)
    return fuse_orb_para(k, a, b, fold, literal)


def fuse_outcomes(algebra, k: int, x: FusionOutcome, y: FusionOutcome, **kw) -> FusionOutcome:
    """Bilinear extension of :func:`fuse` to multisets."""
    total = FusionOutcome()
    for a, m in x:
        for b, n in y:
            total = total + fuse(algebra, k, a, b, **kw).scaled(m * n)
    return total


def unit_label(algebra, k: int):
    algebra = coerce_algebra(algebra)
    return {
        AlgebraKind.AFFINE: lambda: AffineLabel(0),
        AlgebraKind.AFFINE_ORB: lambda: OrbAffineLabel(False, 0, PLUS),
        AlgebraKind.PARA: lambda: K0Label(k, 0),
        AlgebraKind.PARA_ORB: lambda: TypeI(k, 0, PLUS),
    }[algebra]()


def simple_current_label(algebra, k: int):
    """The distinguished simple current: the ``-`` partner of the unit for orbifolds."""
    algebra = coerce_algebra(algebra)
    return {
        AlgebraKind.AFFINE: lambda: AffineLabel(k),
        AlgebraKind.AFFINE_ORB: lambda: OrbAffineLabel(False, 0, MINUS),
        AlgebraKind.PARA: lambda: K0Label(k, 1 % k),
        AlgebraKind.PARA_ORB: lambda: TypeI(k, 0, MINUS),
    }[algebra]()
