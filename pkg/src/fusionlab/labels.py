"""Module labels for the four algebras, signs, and fusion outcomes.

Every label is a small frozen dataclass, so labels are hashable, immutable and cheap to send
between worker processes. The text form of each label follows one shared grammar::

    A:i                 affine L(k,i)
    AU:i:+  AT:i:-      orbifold-affine, untwisted L(k,i)^s and twisted Lbar(k,i)^s
    P:i,j               parafermion M^{i,j}
    PI:i,j:+  PII:i,j   orbifold-parafermion, type I (M^{i,j})^s and type II M^{i,j}
    PT:i:+  PTt:-       orbifold-parafermion twisted W(k,i)^s and Wtilde(k,k/2)^s

Parsing needs the level (to validate ranges and canonicalize), so it lives in
:mod:`fusionlab.catalog`; this module only formats.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Union

__all__ = ['Sign', 'PLUS', 'MINUS', 'AlgebraKind', 'Rational', 'AffineLabel', 'OrbAffineLabel',
           'K0Label', 'TypeI', 'TypeII', 'Twisted', 'TwistedTilde', 'OrbParaLabel', 'Label',
           'UNTWISTED', 'TWISTED', 'FusionOutcome', 'sort_key']

#: exact rational numbers are plain :class:`fractions.Fraction` instances
Rational = Fraction

UNTWISTED = 'untwisted'
TWISTED = 'twisted'


class Sign(IntEnum):
    """A ``+``/``-`` decoration. Multiplication combines decorations, negation flips them."""
    PLUS = 1
    MINUS = -1

    def __neg__(self) -> 'Sign':
        return Sign(-int(self))

    def __mul__(self, other) -> 'Sign':
        return Sign(int(self) * int(other))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return '+' if self is Sign.PLUS else '-'

    @classmethod
    def parse(cls, text: str) -> 'Sign':
        if text == '+':
            return cls.PLUS
        if text == '-':
            return cls.MINUS
        raise ValueError(f'not a sign: {text!r}')


PLUS = Sign.PLUS
MINUS = Sign.MINUS


class AlgebraKind(str, Enum):
    AFFINE = 'affine'
    AFFINE_ORB = 'affine-orb'
    PARA = 'para'
    PARA_ORB = 'para-orb'

    def __str__(self) -> str:
        return self.value

    @property
    def is_orbifold(self) -> bool:
        return self in (AlgebraKind.AFFINE_ORB, AlgebraKind.PARA_ORB)

    @property
    def min_level(self) -> int:
        return 3 if self is AlgebraKind.PARA_ORB else 1


def _sign_rank(sign) -> int:
    return 0 if sign is None or sign is Sign.PLUS else 1


@dataclass(frozen=True)
class AffineLabel:
    """The integrable level-k module ``L(k,i)``."""
    i: int

    sector = UNTWISTED

    def sort_key(self):
        return (0, self.i, 0, 0)

    def __str__(self):
        return f'A:{self.i}'


@dataclass(frozen=True)
class OrbAffineLabel:
    """``L(k,i)^s`` (untwisted) or ``Lbar(k,i)^s`` (twisted) for the orbifold ``L(k,0)^sigma``."""
    twisted: bool
    i: int
    sign: Sign

    @property
    def sector(self) -> str:
        return TWISTED if self.twisted else UNTWISTED

    def sort_key(self):
        return (int(self.twisted), self.i, 0, _sign_rank(self.sign))

    def __str__(self):
        return f"{'AT' if self.twisted else 'AU'}:{self.i}:{self.sign}"


@dataclass(frozen=True)
class K0Label:
    """The parafermion module ``M^{i,j}``; canonical when ``1 <= i <= k`` and ``0 <= j < i``."""
    i: int
    j: int

    sector = UNTWISTED

    def sort_key(self):
        return (0, self.i, self.j, 0)

    def __str__(self):
        return f'P:{self.i},{self.j}'


@dataclass(frozen=True)
class TypeI:
    """One of the two halves ``(M^{i,j})^s`` of a sigma-stable parafermion module."""
    i: int
    j: int
    sign: Sign

    sector = UNTWISTED

    @property
    def base(self) -> K0Label:
        return K0Label(self.i, self.j)

    def sort_key(self):
        return (0, self.i, self.j, _sign_rank(self.sign))

    def __str__(self):
        return f'PI:{self.i},{self.j}:{self.sign}'


@dataclass(frozen=True)
class TypeII:
    """A parafermion module ``M^{i,j}`` that stays irreducible under the orbifold."""
    i: int
    j: int

    sector = UNTWISTED

    @property
    def base(self) -> K0Label:
        return K0Label(self.i, self.j)

    def sort_key(self):
        return (0, self.i, self.j, 0)

    def __str__(self):
        return f'PII:{self.i},{self.j}'


@dataclass(frozen=True)
class Twisted:
    """The twisted type module ``W(k,i)^s``."""
    i: int
    sign: Sign

    sector = TWISTED

    def sort_key(self):
        return (1, self.i, 0, _sign_rank(self.sign))

    def __str__(self):
        return f'PT:{self.i}:{self.sign}'


@dataclass(frozen=True)
class TwistedTilde:
    """The extra twisted module ``Wtilde(k,k/2)^s`` present for even k."""
    sign: Sign

    sector = TWISTED

    def sort_key(self):
        return (2, 0, 0, _sign_rank(self.sign))

    def __str__(self):
        return f'PTt:{self.sign}'


OrbParaLabel = Union[TypeI, TypeII, Twisted, TwistedTilde]
Label = Union[AffineLabel, OrbAffineLabel, K0Label, TypeI, TypeII, Twisted, TwistedTilde]


def sort_key(label):
    return label.sort_key()


class FusionOutcome:
    """An immutable multiset of labels with positive integer multiplicities.

    Entries are kept in canonical label order, so two equal outcomes also print identically.
    """

    __slots__ = ('_entries', '_lookup')

    def __init__(self, entries=()):
        counts = Counter()
        if isinstance(entries, (dict, Counter)):
            items = entries.items()
        else:
            items = ((e, 1) if not isinstance(e, tuple) else e for e in entries)
        for label, mult in items:
            if mult < 0:
                raise ValueError(f'negative multiplicity for {label}')
            if mult:
                counts[label] += mult
        self._entries = tuple(sorted(counts.items(), key=lambda e: e[0].sort_key()))
        self._lookup = dict(self._entries)

    @classmethod
    def of(cls, *labels) -> 'FusionOutcome':
        return cls(labels)

    def __iter__(self) -> Iterator:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __contains__(self, label) -> bool:
        return label in self._lookup

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionOutcome):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __add__(self, other: 'FusionOutcome') -> 'FusionOutcome':
        merged = Counter(self._lookup)
        merged.update(other._lookup)
        return FusionOutcome(merged)

    def scaled(self, factor: int) -> 'FusionOutcome':
        return FusionOutcome({label: mult * factor for label, mult in self._entries})

    def mult(self, label) -> int:
        return self._lookup.get(label, 0)

    def labels(self) -> list:
        return [label for label, _ in self._entries]

    def total(self) -> int:
        return sum(mult for _, mult in self._entries)

    def counter(self) -> Counter:
        return Counter(self._lookup)

    def __str__(self) -> str:
        return ' '.join(str(label) if mult == 1 else f'{mult}*{label}'
                        for label, mult in self._entries)

    def __repr__(self) -> str:
        return f'FusionOutcome({{{", ".join(f"{l}: {m}" for l, m in self._entries)}}})'


def outcome_from(labels: Iterable) -> FusionOutcome:
    return FusionOutcome(list(labels))
