"""Fusion for the parafermion ring K0 and its Z2-orbifold.

The orbifold products are organised as a decision table: each clause carries a guard over the
pair of inputs and a rule producing the raw output. :func:`clauses_for` returns every clause
whose guard accepts a pair, and :func:`fuse_orb_para` refuses to proceed unless exactly one
does, which turns any gap or overlap in the table into a loud error instead of a wrong answer.

Labels used below (``i`` is the first parafermion index of a type I label):

* ``unit``  -- ``(M^{k,0})^s``
* ``fam``   -- ``(M^{i,i/2})^s`` for even ``2 <= i <= k``
* ``half``  -- ``(M^{k/2,0})^s``, even k only
* ``II``    -- a type II label
* ``W``     -- ``W(k,j)^s`` with ``j != k/2``
* ``Wh``    -- ``W(k,k/2)^s``, even k only
* ``Wt``    -- ``Wtilde(k,k/2)^s``, even k only
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .affine_rings import fusion_range, sign_of
from .catalog import (FoldConvention, canonicalize_k0, check_level, enumerate_labels,
                      fold_twisted, sigma_stable, type_ii_representative)
from .errors import InternalDispatchGap
from .labels import (AlgebraKind, FusionOutcome, K0Label, Twisted, TwistedTilde, TypeI, TypeII,
                     PLUS, MINUS)

__all__ = ['fuse_k0', 'k0_product', 'fuse_orb_para', 'clauses_for', 'classify', 'CLAUSES',
           'Clause', 'TWISTED_TWISTED', 'family_outputs']

PRESERVE = FoldConvention.PRESERVE


# ---------------------------------------------------------------------------
# the parafermion ring itself

def k0_product(k: int, i: int, ip: int, j: int, jp: int) -> list:
    """Outputs of ``M^{i,i'} x M^{j,j'}``, one canonical label per admissible ``l``."""
    return [canonicalize_k0(k, l, (2 * ip - i + 2 * jp - j + l) // 2)
            for l in fusion_range(k, i, j)]


def fuse_k0(k: int, a: K0Label, b: K0Label) -> FusionOutcome:
    return FusionOutcome(k0_product(k, a.i, a.j, b.i, b.j))


# ---------------------------------------------------------------------------
# helpers shared by the orbifold clauses

def classify(k: int, x) -> str:
    if isinstance(x, TypeI):
        if (x.i, x.j) == (k, 0):
            return 'unit'
        if k % 2 == 0 and (x.i, x.j) == (k // 2, 0):
            return 'half'
        return 'fam'
    if isinstance(x, TypeII):
        return 'II'
    if isinstance(x, TwistedTilde):
        return 'Wt'
    return 'Wh' if k % 2 == 0 and 2 * x.i == k else 'W'


def _orbit_outputs(k, m: K0Label) -> list:
    """A parafermion module viewed as orbifold labels: both halves, or the type II label."""
    if sigma_stable(k, m):
        return [TypeI(m.i, m.j, PLUS), TypeI(m.i, m.j, MINUS)]
    rep = type_ii_representative(k, m)
    return [TypeII(rep.i, rep.j)]


def _pair(k, l, fold):
    return [fold_twisted(k, l, PLUS, fold), fold_twisted(k, l, MINUS, fold)]


def _tw_index(t):
    return t.i


def _below_half(k, i, j):
    """The part ``l < k/2`` of the fusion range of ``(i, j)``."""
    return [l for l in fusion_range(k, i, j) if 2 * l < k]


def _in_middle(k, i, j):
    return k % 2 == 0 and (k // 2) in fusion_range(k, i, j)


def _half_pos(k):
    return TypeI(k // 2, 0, PLUS)


# ---------------------------------------------------------------------------
# untwisted x untwisted

def _uu_unit(k, a, b, fold, literal):
    if classify(k, a) != 'unit':
        a, b = b, a
    return [TypeI(b.i, b.j, a.sign * b.sign)]


def _uu_fam_fam(k, a, b, fold, literal):
    s = a.sign * b.sign
    out = []
    for l in fusion_range(k, a.i, b.i):
        m = canonicalize_k0(k, l, l // 2)
        out.append(TypeI(m.i, m.j, sign_of(a.i, b.i, l, s)))
    return out


def _uu_fam_half(k, a, b, fold, literal):
    if classify(k, a) != 'fam':
        a, b = b, a
    out = []
    for l in _below_half(k, a.i, k // 2):
        m = canonicalize_k0(k, l, (2 * l - k) // 4)
        rep = type_ii_representative(k, m)
        out.append(TypeII(rep.i, rep.j))
    out.append(TypeI(k // 2, 0, a.sign * b.sign))
    return out


def _uu_half_half(k, a, b, fold, literal):
    s = a.sign * b.sign
    out = []
    for m in range(0, k + 1, 2):
        c = canonicalize_k0(k, m, m // 2)
        out.append(TypeI(c.i, c.j, s))
    return out


def _uu_one_ii(k, a, b, fold, literal):
    if not isinstance(a, TypeI):
        a, b = b, a
    out = []
    for m in k0_product(k, a.i, a.j, b.i, b.j):
        out.extend(_orbit_outputs(k, m))
    return out


def family_outputs(k, a: TypeII, b: TypeII) -> tuple:
    """The two output families of a type II x type II product, kept separate."""
    fa = [x for m in k0_product(k, a.i, a.j, b.i, b.j) for x in _orbit_outputs(k, m)]
    fb = [x for m in k0_product(k, a.i, a.j, b.i, b.i - b.j) for x in _orbit_outputs(k, m)]
    return fa, fb


def _uu_ii_ii(k, a, b, fold, literal):
    fa, fb = family_outputs(k, a, b)
    return fa + fb


# ---------------------------------------------------------------------------
# untwisted x twisted; u is the untwisted factor, t the twisted one

def _signed_sum(k, i, j, s, fold, ls):
    return [fold_twisted(k, l, sign_of(i, j, l, s), fold) for l in ls]


def _ut_unit(k, u, t, fold, literal):
    s = u.sign * t.sign
    if isinstance(t, TwistedTilde):
        return [TwistedTilde(s)]
    return [Twisted(t.i, s)]


def _ut_fam_w(k, u, t, fold, literal):
    # full-range sum, each l emitted with its own sign and then folded; when k/2 is in the
    # range the Wtilde term carries the opposite variant at l = k/2
    s = u.sign * t.sign
    out = _signed_sum(k, u.i, t.i, s, fold, fusion_range(k, u.i, t.i))
    if _in_middle(k, u.i, t.i):
        out.append(TwistedTilde(sign_of(u.i, t.i, k // 2, -s)))
    return out


def _ut_fam_mid(k, u, t, fold, literal):
    s = u.sign * t.sign
    h = k // 2
    tilde_in = isinstance(t, TwistedTilde)
    if literal:
        out = _signed_sum(k, u.i, h, s, fold, _below_half(k, u.i, h))
    else:
        # transpose of the fam x W entries, which keeps every untwisted label self-dual
        v = -s if tilde_in else s
        out = [Twisted(l, sign_of(u.i, l, h, v)) for l in _below_half(k, u.i, h)]
    # i = 2 mod 4 swaps W(k,k/2) and Wtilde, i = 0 mod 4 keeps the input kind
    swap = u.i % 4 == 2
    out.append(Twisted(h, s) if tilde_in == swap else TwistedTilde(s))
    return out


def _ut_ii_w(k, u, t, fold, literal):
    out = []
    for l in fusion_range(k, u.i, t.i):
        out.extend(_pair(k, l, fold))
    if _in_middle(k, u.i, t.i):
        out.extend([TwistedTilde(PLUS), TwistedTilde(MINUS)])
    return out


def _ut_ii_mid(k, u, t, fold, literal):
    h = k // 2
    out = []
    for l in _below_half(k, u.i, h):
        out.extend(_pair(k, l, fold))
    if u.i % 2 == 0:
        tilde_in = isinstance(t, TwistedTilde)
        # i' odd swaps W(k,k/2) and Wtilde, i' even keeps the input kind
        swap = u.j % 2 == 1
        if tilde_in == swap:
            out.extend([Twisted(h, PLUS), Twisted(h, MINUS)])
        else:
            out.extend([TwistedTilde(PLUS), TwistedTilde(MINUS)])
    return out


def _ut_half_w(k, u, t, fold, literal):
    h = k // 2
    out = []
    for l in _below_half(k, h, t.i):
        out.extend(_pair(k, l, fold))
    if t.i % 2 == 0:
        s = u.sign * t.sign
        out.extend([Twisted(h, s), TwistedTilde(s)])
    return out


def _ut_half_mid(k, u, t, fold, literal):
    s = u.sign * t.sign
    h = k // 2
    if literal:
        out = _signed_sum(k, h, h, s, fold, range(0, h, 2))
    else:
        out = [Twisted(l, s) for l in range(0, h, 2)]
    if k % 4 == 0:
        if isinstance(t, TwistedTilde):
            out.append(TwistedTilde(s if literal else -s))
        else:
            out.append(Twisted(h, s))
    return out


# ---------------------------------------------------------------------------
# the decision table

@dataclass(frozen=True)
class Clause:
    tag: str
    twisted: bool  # whether the clause handles untwisted x twisted pairs
    guard: Callable
    rule: Callable


def _both(kinds_a, kinds_b):
    def guard(k, a, b):
        ka, kb = classify(k, a), classify(k, b)
        return (ka in kinds_a and kb in kinds_b) or (ka in kinds_b and kb in kinds_a)
    return guard


def _ut(u_kind, t_kinds, extra=lambda k, u, t: True):
    def guard(k, u, t):
        return classify(k, u) == u_kind and classify(k, t) in t_kinds and extra(k, u, t)
    return guard


def _even(k):
    return k % 2 == 0


def _parity_matches(k, u, t):
    return (u.i + t.i) % 2 == (k // 2) % 2


CLAUSES = (
    # untwisted x untwisted
    Clause('unit x untwisted', False, _both({'unit'}, {'unit', 'fam', 'half'}), _uu_unit),
    Clause('fam x fam', False, _both({'fam'}, {'fam'}), _uu_fam_fam),
    Clause('fam x half', False, _both({'fam'}, {'half'}), _uu_fam_half),
    Clause('half x half', False, _both({'half'}, {'half'}), _uu_half_half),
    Clause('type I x II', False, _both({'unit', 'fam', 'half'}, {'II'}), _uu_one_ii),
    Clause('II x II', False, _both({'II'}, {'II'}), _uu_ii_ii),
    # untwisted x twisted
    Clause('unit x twisted', True, _ut('unit', {'W', 'Wh', 'Wt'}), _ut_unit),
    Clause('fam x W (odd k)', True, _ut('fam', {'W'}, lambda k, u, t: not _even(k)), _ut_fam_w),
    Clause('fam x W (parity off)', True,
           _ut('fam', {'W'}, lambda k, u, t: _even(k) and not _parity_matches(k, u, t)),
           _ut_fam_w),
    Clause('fam x W (parity on)', True,
           _ut('fam', {'W'}, lambda k, u, t: _even(k) and _parity_matches(k, u, t)
               and not _in_middle(k, u.i, t.i)),
           _ut_fam_w),
    Clause('fam x W (middle)', True,
           _ut('fam', {'W'}, lambda k, u, t: _even(k) and _in_middle(k, u.i, t.i)),
           _ut_fam_w),
    Clause('fam x Wh (i = 2 mod 4)', True, _ut('fam', {'Wh'}, lambda k, u, t: u.i % 4 == 2), _ut_fam_mid),
    Clause('fam x Wt (i = 2 mod 4)', True, _ut('fam', {'Wt'}, lambda k, u, t: u.i % 4 == 2), _ut_fam_mid),
    Clause('fam x Wh (i = 0 mod 4)', True, _ut('fam', {'Wh'}, lambda k, u, t: u.i % 4 == 0), _ut_fam_mid),
    Clause('fam x Wt (i = 0 mod 4)', True, _ut('fam', {'Wt'}, lambda k, u, t: u.i % 4 == 0), _ut_fam_mid),
    Clause('II x W (odd k)', True, _ut('II', {'W'}, lambda k, u, t: not _even(k)), _ut_ii_w),
    Clause('II x W (parity on)', True,
           _ut('II', {'W'}, lambda k, u, t: _even(k) and _parity_matches(k, u, t)
               and not _in_middle(k, u.i, t.i)),
           _ut_ii_w),
    Clause('II x W (middle)', True,
           _ut('II', {'W'}, lambda k, u, t: _even(k) and _in_middle(k, u.i, t.i)),
           _ut_ii_w),
    Clause('II x W (parity off)', True,
           _ut('II', {'W'}, lambda k, u, t: _even(k) and not _parity_matches(k, u, t)),
           _ut_ii_w),
    Clause('II x Wh (i odd)', True, _ut('II', {'Wh'}, lambda k, u, t: u.i % 2 == 1), _ut_ii_mid),
    Clause('II x Wt (i odd)', True, _ut('II', {'Wt'}, lambda k, u, t: u.i % 2 == 1), _ut_ii_mid),
    Clause('II x Wh (i even, j odd)', True,
           _ut('II', {'Wh'}, lambda k, u, t: u.i % 2 == 0 and u.j % 2 == 1), _ut_ii_mid),
    Clause('II x Wh (i even, j even)', True,
           _ut('II', {'Wh'}, lambda k, u, t: u.i % 2 == 0 and u.j % 2 == 0), _ut_ii_mid),
    Clause('II x Wt (i even, j odd)', True,
           _ut('II', {'Wt'}, lambda k, u, t: u.i % 2 == 0 and u.j % 2 == 1), _ut_ii_mid),
    Clause('II x Wt (i even, j even)', True,
           _ut('II', {'Wt'}, lambda k, u, t: u.i % 2 == 0 and u.j % 2 == 0), _ut_ii_mid),
    Clause('half x W (j odd)', True, _ut('half', {'W'}, lambda k, u, t: t.i % 2 == 1), _ut_half_w),
    Clause('half x W (j even)', True, _ut('half', {'W'}, lambda k, u, t: t.i % 2 == 0), _ut_half_w),
    Clause('half x Wh (k = 2 mod 4)', True, _ut('half', {'Wh'}, lambda k, u, t: k % 4 == 2), _ut_half_mid),
    Clause('half x Wt (k = 2 mod 4)', True, _ut('half', {'Wt'}, lambda k, u, t: k % 4 == 2), _ut_half_mid),
    Clause('half x Wh (k = 0 mod 4)', True, _ut('half', {'Wh'}, lambda k, u, t: k % 4 == 0), _ut_half_mid),
    Clause('half x Wt (k = 0 mod 4)', True, _ut('half', {'Wt'}, lambda k, u, t: k % 4 == 0), _ut_half_mid),
)

#: tag of the derived twisted x twisted path
TWISTED_TWISTED = 'twisted-twisted (duality)'


def _orient(a, b):
    """Put an untwisted factor first when exactly one factor is twisted."""
    if a.sector == 'twisted' and b.sector == 'untwisted':
        return b, a
    return a, b


def clauses_for(k: int, a, b) -> list:
    """Tags of every table entry accepting ``(a, b)``; a well-formed table yields exactly one."""
    if a.sector == 'twisted' and b.sector == 'twisted':
        return [TWISTED_TWISTED]
    x, y = _orient(a, b)
    mixed = x.sector != y.sector
    return [c.tag for c in CLAUSES if c.twisted == mixed and c.guard(k, x, y)]


_BY_TAG = {c.tag: c for c in CLAUSES}


def fuse_orb_para(k: int, a, b, fold: FoldConvention = PRESERVE,
                  literal: bool = False) -> FusionOutcome:
    """Fuse two orbifold-parafermion labels.

    For even k, the direct rules for an untwisted label against ``W(k,k/2)`` or ``Wtilde``
    disagree in sign with the general untwisted x ``W(k,j)`` rules. By default those entries
    are rebuilt from the general rules by self-duality (and the half x ``Wtilde`` diagonal
    sign is flipped when 4 divides k), which makes the ring commutative and associative.
    ``literal=True`` keeps the uncorrected entries.
    """
    check_level(AlgebraKind.PARA_ORB, k)
    return _fuse(k, a, b, FoldConvention(fold), bool(literal))


@lru_cache(maxsize=None)
def _fuse(k, a, b, fold, literal=False):
    tags = clauses_for(k, a, b)
    if len(tags) != 1:
        raise InternalDispatchGap(f'{a} x {b} at k={k} matched clauses {tags}')
    if tags[0] == TWISTED_TWISTED:
        return _twisted_twisted(k, a, b, fold, literal)
    x, y = _orient(a, b)
    return FusionOutcome(Counter(_BY_TAG[tags[0]].rule(k, x, y, fold, literal)))


def _twisted_twisted(k, t1, t2, fold, literal):
    # every label is self-dual, so N_{T1,T2}^U = N_{T1,U}^{T2}: the multiplicity of T2 in U x T1
    out = {}
    for u in enumerate_labels(AlgebraKind.PARA_ORB, k):
        if u.sector != 'untwisted':
            continue
        n = _fuse(k, u, t1, fold, literal).mult(t2)
        if n:
            out[u] = n
    return FusionOutcome(out)
