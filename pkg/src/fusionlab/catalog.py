"""Levels, complete label sets, canonical forms, conformal weights and contragredients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import InvalidLevel, LabelSyntaxError, SignMismatch, Unsupported
from .labels import (AffineLabel, AlgebraKind, K0Label, OrbAffineLabel, Sign, Twisted,
                     TwistedTilde, TypeI, TypeII, PLUS, MINUS)

__all__ = ['FoldConvention', 'RawUntwisted', 'RawTwisted', 'check_level', 'enumerate_labels',
           'canonicalize_k0', 'sigma_partner', 'sigma_stable', 'type_ii_representative',
           'canonicalize_orb_para', 'fold_twisted', 'contragredient', 'lowest_weight',
           'parse_label', 'format_label', 'coerce_algebra', 'label_count']


class FoldConvention(str, Enum):
    """How a sign decoration travels through ``W(k,l) = W(k,k-l)``."""
    PRESERVE = 'preserve'
    FLIP = 'flip'


def coerce_algebra(algebra) -> AlgebraKind:
    return algebra if isinstance(algebra, AlgebraKind) else AlgebraKind(algebra)


def check_level(algebra, k) -> int:
    algebra = coerce_algebra(algebra)
    if isinstance(k, bool) or not isinstance(k, int):
        raise InvalidLevel(f'level must be an integer, got {k!r}')
    if k < algebra.min_level:
        raise InvalidLevel(f'{algebra} requires k >= {algebra.min_level}, got k={k}')
    return k


# ---------------------------------------------------------------------------
# parafermion labels and the sigma action

def canonicalize_k0(k: int, i: int, j: int) -> K0Label:
    """Representative of ``M^{i,j}`` with ``1 <= i <= k`` and ``0 <= j < i``."""
    if not 0 <= i <= k:
        raise ValueError(f'first index {i} outside 0..{k}')
    j %= k
    if i == 0 or (i < k and j >= i):
        i, j = k - i, (k - i + j) % k
    return K0Label(i, j)


def sigma_partner(k: int, m: K0Label) -> K0Label:
    """Image of ``M^{i,j}`` under sigma, i.e. ``M^{i,i-j}``."""
    return canonicalize_k0(k, m.i, m.i - m.j)


def sigma_stable(k: int, m: K0Label) -> bool:
    return sigma_partner(k, m) == m


def type_ii_representative(k: int, m: K0Label) -> K0Label:
    """The member of the sigma orbit of a non-stable ``m`` that is used as the type II label."""
    return min(m, sigma_partner(k, m), key=lambda x: (x.i, x.j))


@dataclass(frozen=True)
class RawUntwisted:
    i: int
    j: int
    sign: Optional[Sign] = None


@dataclass(frozen=True)
class RawTwisted:
    l: int
    sign: Sign
    tilde: bool = False


def fold_twisted(k: int, l: int, sign: Sign, fold: FoldConvention = FoldConvention.PRESERVE):
    """``W(k,l)^s`` with ``0 <= l <= k`` brought into ``0 <= l <= k//2``."""
    if not 0 <= l <= k:
        raise ValueError(f'twisted index {l} outside 0..{k}')
    if 2 * l > k:
        l = k - l
        if fold is FoldConvention.FLIP:
            sign = -sign
    return Twisted(l, sign)


def canonicalize_orb_para(k: int, raw, fold: FoldConvention = FoldConvention.PRESERVE):
    if isinstance(raw, RawTwisted):
        if raw.sign is None:
            raise SignMismatch('twisted labels need a sign')
        if raw.tilde:
            if k % 2:
                raise ValueError('Wtilde exists only for even k')
            return TwistedTilde(raw.sign)
        return fold_twisted(k, raw.l, raw.sign, fold)
    m = canonicalize_k0(k, raw.i, raw.j)
    if sigma_stable(k, m):
        if raw.sign is None:
            raise SignMismatch(f'{m} is sigma-stable and needs a sign')
        return TypeI(m.i, m.j, raw.sign)
    if raw.sign is not None:
        raise SignMismatch(f'{m} is not sigma-stable and takes no sign')
    rep = type_ii_representative(k, m)
    return TypeII(rep.i, rep.j)


# ---------------------------------------------------------------------------
# enumeration

def label_count(algebra, k: int) -> int:
    """Closed-form size of the complete label set."""
    algebra = coerce_algebra(algebra)
    if algebra is AlgebraKind.AFFINE:
        return k + 1
    if algebra is AlgebraKind.AFFINE_ORB:
        return 4 * (k + 1)
    if algebra is AlgebraKind.PARA:
        return k * (k + 1) // 2
    if k % 2:
        return (k + 1) * (k + 7) // 4
    return (k * k + 8 * k + 28) // 4


def _k0_labels(k):
    return [K0Label(i, j) for i in range(1, k + 1) for j in range(i)]


def _enumerate(algebra: AlgebraKind, k: int) -> list:
    if algebra is AlgebraKind.AFFINE:
        return [AffineLabel(i) for i in range(k + 1)]
    if algebra is AlgebraKind.AFFINE_ORB:
        return [OrbAffineLabel(tw, i, s) for tw in (False, True) for i in range(k + 1)
                for s in (PLUS, MINUS)]
    if algebra is AlgebraKind.PARA:
        return _k0_labels(k)
    out = []
    for m in _k0_labels(k):
        if sigma_stable(k, m):
            out.extend([TypeI(m.i, m.j, PLUS), TypeI(m.i, m.j, MINUS)])
        elif type_ii_representative(k, m) == m:
            out.append(TypeII(m.i, m.j))
    out.extend(Twisted(i, s) for i in range(k // 2 + 1) for s in (PLUS, MINUS))
    if k % 2 == 0:
        out.extend([TwistedTilde(PLUS), TwistedTilde(MINUS)])
    return sorted(out, key=lambda x: x.sort_key())


_ENUM_CACHE: dict = {}


def enumerate_labels(algebra, k: int) -> list:
    """All inequivalent irreducible module labels, in canonical order."""
    algebra = coerce_algebra(algebra)
    check_level(algebra, k)
    key = (algebra, k)
    if key not in _ENUM_CACHE:
        _ENUM_CACHE[key] = tuple(_enumerate(algebra, k))
    return list(_ENUM_CACHE[key])


# ---------------------------------------------------------------------------
# contragredients and weights

def contragredient(algebra, k: int, x):
    algebra = coerce_algebra(algebra)
    if algebra is AlgebraKind.AFFINE_ORB:
        if x.twisted:
            return OrbAffineLabel(True, k - x.i, x.sign)
        if x.i % 2:
            return OrbAffineLabel(False, x.i, -x.sign)
        return x
    if algebra is AlgebraKind.PARA:
        # M^{i,j} fuses with M^{i,i-j} to the vacuum; the two coincide only for stable labels
        return sigma_partner(k, x)
    return x


def _k0_weight(k: int, i: int, j: int) -> Fraction:
    d = i - 2 * j
    return Fraction(k * d - d * d + 2 * k * j * (i - j + 1), 2 * k * (k + 2))


def _twisted_affine_base(k: int, i: int) -> Fraction:
    return Fraction(i * (i - k), 4 * (k + 2))


def lowest_weight(algebra, k: int, x) -> Fraction:
    """Exact conformal weight of the top level of ``x``."""
    algebra = coerce_algebra(algebra)
    if algebra is AlgebraKind.AFFINE:
        return Fraction(x.i * (x.i + 2), 4 * (k + 2))
    if algebra is AlgebraKind.AFFINE_ORB:
        if x.twisted:
            shift = Fraction(k, 16) if x.sign is PLUS else Fraction(k + 8, 16)
            return _twisted_affine_base(k, x.i) + shift
        if x.i == 0:
            return Fraction(0) if x.sign is PLUS else Fraction(1)
        return Fraction(x.i * (x.i + 2), 4 * (k + 2))
    if algebra is AlgebraKind.PARA:
        return _k0_weight(k, x.i, x.j)
    if isinstance(x, TypeII):
        return _k0_weight(k, x.i, x.j)
    if isinstance(x, TypeI):
        if x.sign is PLUS:
            return _k0_weight(k, x.i, x.j)
        raise Unsupported(f'no closed form for the weight of {x}')
    if isinstance(x, Twisted) and x.sign is PLUS:
        return _twisted_affine_base(k, x.i) + Fraction(k - 1, 16)
    raise Unsupported(f'no closed form for the weight of {x}')


def twisted_para_base_weight(k: int, i: int) -> Fraction:
    """Weight ``i(i-k)/(4(k+2)) + (k-1)/16`` of the lowest vector of the twisted K0 module at i."""
    return _twisted_affine_base(k, i) + Fraction(k - 1, 16)


# ---------------------------------------------------------------------------
# text grammar

_LABEL_RE = re.compile(r'^(A|AU|AT|P|PI|PII|PT|PTt):(.*)$')
_INT = r'(-?\d+)'
_SIGN = r'([+-])'
_BODY = {
    'A': re.compile(rf'^{_INT}$'),
    'AU': re.compile(rf'^{_INT}:{_SIGN}$'),
    'AT': re.compile(rf'^{_INT}:{_SIGN}$'),
    'P': re.compile(rf'^{_INT},{_INT}$'),
    'PI': re.compile(rf'^{_INT},{_INT}:{_SIGN}$'),
    'PII': re.compile(rf'^{_INT},{_INT}$'),
    'PT': re.compile(rf'^{_INT}:{_SIGN}$'),
    'PTt': re.compile(rf'^{_SIGN}$'),
}
_TAGS = {
    AlgebraKind.AFFINE: {'A'},
    AlgebraKind.AFFINE_ORB: {'AU', 'AT'},
    AlgebraKind.PARA: {'P'},
    AlgebraKind.PARA_ORB: {'PI', 'PII', 'PT', 'PTt'},
}


def format_label(x) -> str:
    return str(x)


def parse_label(algebra, k: int, text: str, fold: FoldConvention = FoldConvention.PRESERVE):
    """Parse a label string, validate its range and return the canonical label.

    Parafermion pairs and twisted indices are canonicalized, so ``P:0,1`` at ``k=3`` parses to
    ``P:3,1``. A ``PI``/``PII`` tag must agree with whether the pair is sigma-stable.
    """
    algebra = coerce_algebra(algebra)
    check_level(algebra, k)
    m = _LABEL_RE.match(text.strip())
    if not m or m.group(1) not in _TAGS[algebra]:
        raise LabelSyntaxError(f'{text!r} is not a {algebra} label')
    tag = m.group(1)
    body = _BODY[tag].match(m.group(2))
    if not body:
        raise LabelSyntaxError(f'malformed label {text!r}')
    g = body.groups()

    def index(s, hi):
        v = int(s)
        if not 0 <= v <= hi:
            raise LabelSyntaxError(f'index {v} outside 0..{hi} in {text!r}')
        return v

    if tag == 'A':
        return AffineLabel(index(g[0], k))
    if tag in ('AU', 'AT'):
        return OrbAffineLabel(tag == 'AT', index(g[0], k), Sign.parse(g[1]))
    if tag == 'P':
        return canonicalize_k0(k, index(g[0], k), int(g[1]))
    if tag == 'PTt':
        if k % 2:
            raise LabelSyntaxError(f'{text!r}: Wtilde exists only for even k')
        return TwistedTilde(Sign.parse(g[0]))
    if tag == 'PT':
        return canonicalize_orb_para(k, RawTwisted(index(g[0], k), Sign.parse(g[1])), fold)
    sign = Sign.parse(g[2]) if tag == 'PI' else None
    try:
        return canonicalize_orb_para(k, RawUntwisted(index(g[0], k), int(g[1]), sign))
    except SignMismatch as exc:
        raise LabelSyntaxError(f'{text!r}: {exc}') from None
