"""Exhaustive checks of the ring axioms on a dense fusion table.

The table ``N[a, b, c]`` holds the multiplicity of label ``c`` in ``a x b``. Building it is the
expensive part and is spread over worker processes by first index; every check then runs on
the array. Counterexamples are kept in canonical order and capped, so a report does not depend
on the number of workers.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .affine_rings import fusion_range
from .catalog import (FoldConvention, check_level, coerce_algebra, contragredient,
                      enumerate_labels, fold_twisted, label_count, parse_label, sigma_partner,
                      sigma_stable, type_ii_representative)
from .errors import UnknownCheck
from .fusion import fuse, simple_current_label, unit_label
from .labels import (AlgebraKind, FusionOutcome, K0Label, OrbAffineLabel, Twisted, TwistedTilde,
                     TypeI, TypeII, PLUS, MINUS)
from .para_rings import clauses_for, fuse_k0
from .qdim import QDim, equal_tier, qdim_mul, qdim_of

__all__ = ['CHECKS', 'CheckResult', 'Report', 'FusionTable', 'build_table', 'verify_ring',
           'verify_table', 'TableMutation', 'apply_mutation', 'random_mutations',
           'mutate_and_detect', 'MAX_COUNTEREXAMPLES']

CHECKS = ('counts', 'unit', 'simple-current', 'commutativity', 'associativity', 'grading',
          'duality', 'qdim-mult', 'dispatch-coverage', 'restriction')
MAX_COUNTEREXAMPLES = 100


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckResult:
    name: str
    instances_checked: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    elapsed: float = 0.0
    applicable: bool = True
    tiers: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def fail(self, inputs, expected, actual):
        self.failure_count += 1
        if len(self.failures) < MAX_COUNTEREXAMPLES:
            self.failures.append({'inputs': [str(x) for x in inputs],
                                  'expected': str(expected), 'actual': str(actual)})

    def to_dict(self) -> dict:
        d = {'name': self.name, 'applicable': self.applicable, 'passed': self.passed,
             'instances_checked': self.instances_checked, 'failure_count': self.failure_count,
             'failures': self.failures, 'elapsed': round(self.elapsed, 6)}
        if self.tiers:
            d['tiers'] = dict(self.tiers)
        return d


@dataclass
class Report:
    algebra: AlgebraKind
    level: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {'algebra': str(self.algebra), 'level': self.level, 'passed': self.passed,
                'checks': [c.to_dict() for c in self.checks]}

    def summary(self) -> str:
        lines = [f'{self.algebra} k={self.level}: {"PASS" if self.passed else "FAIL"}']
        for c in self.checks:
            state = 'n/a' if not c.applicable else ('ok' if c.passed else 'FAIL')
            extra = f' failures={c.failure_count}' if c.failure_count else ''
            tiers = ''.join(f' {t}={n}' for t, n in sorted(c.tiers.items()))
            lines.append(f'  {c.name:<18} {state:<4} instances={c.instances_checked}{extra}{tiers}')
        return '\n'.join(lines)


# ---------------------------------------------------------------------------
# the table

class FusionTable:
    """Dense multiplicities ``N[a, b, c]`` over a fixed, canonically ordered label list."""

    def __init__(self, algebra, k, labels, N):
        self.algebra = coerce_algebra(algebra)
        self.k = k
        self.labels = tuple(labels)
        self.index = {x: n for n, x in enumerate(self.labels)}
        self.N = N

    def __len__(self):
        return len(self.labels)

    def outcome(self, a, b) -> FusionOutcome:
        row = self.N[self.index[a], self.index[b]]
        return FusionOutcome({self.labels[c]: int(m) for c in np.flatnonzero(row) for m in [row[c]]})

    def vector(self, outcome) -> np.ndarray:
        v = np.zeros(len(self.labels), dtype=np.int64)
        for x, m in outcome:
            v[self.index[x]] += m
        return v

    def from_vector(self, v) -> FusionOutcome:
        return FusionOutcome({self.labels[c]: int(v[c]) for c in np.flatnonzero(v)})

    def copy(self) -> 'FusionTable':
        return FusionTable(self.algebra, self.k, self.labels, self.N.copy())

    @classmethod
    def from_document(cls, doc: dict) -> 'FusionTable':
        """Rebuild a table from the JSON document written by ``fusionlab table``."""
        algebra = coerce_algebra(doc['algebra'])
        k = int(doc['level'])
        labels = [parse_label(algebra, k, m['id']) for m in doc['modules']]
        index = {x: n for n, x in enumerate(labels)}
        N = np.zeros((len(labels),) * 3, dtype=np.int64)
        ordered = bool(doc.get('ordered', False))
        for entry in doc['fusion']:
            a = index[parse_label(algebra, k, entry['left'])]
            b = index[parse_label(algebra, k, entry['right'])]
            for out in entry['outputs']:
                c = index[parse_label(algebra, k, out['id'])]
                N[a, b, c] = out['mult']
                if not ordered:
                    N[b, a, c] = out['mult']
        return cls(algebra, k, labels, N)


def _rows(args):
    algebra, k, fold, literal, labels, firsts = args
    index = {x: n for n, x in enumerate(labels)}
    out = np.zeros((len(firsts), len(labels), len(labels)), dtype=np.int64)
    for r, a in enumerate(firsts):
        for b_idx, b in enumerate(labels):
            for c, m in fuse(algebra, k, labels[a], b, fold, literal):
                out[r, b_idx, index[c]] = m
    return firsts, out


def _partition(n, workers):
    return [list(range(w, n, workers)) for w in range(workers) if w < n]


def build_table(algebra, k: int, fold=FoldConvention.PRESERVE, literal: bool = False,
                workers: int = 1) -> FusionTable:
    algebra = coerce_algebra(algebra)
    check_level(algebra, k)
    fold = FoldConvention(fold)
    labels = enumerate_labels(algebra, k)
    n = len(labels)
    N = np.zeros((n, n, n), dtype=np.int64)
    jobs = [(algebra, k, fold, literal, labels, part) for part in _partition(n, max(1, workers))]
    if workers <= 1:
        results = map(_rows, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = list(pool.map(_rows, jobs))
        pool.shutdown()
    for firsts, block in results:
        N[firsts] = block
    return FusionTable(algebra, k, labels, N)


# ---------------------------------------------------------------------------
# individual checks

def _sector(x) -> int:
    return 1 if x.sector == 'twisted' else 0


def _check_counts(t: FusionTable, res: CheckResult):
    expected = enumerate_labels(t.algebra, t.k)
    res.instances_checked = 1
    if len(t.labels) != label_count(t.algebra, t.k):
        res.fail(['count'], label_count(t.algebra, t.k), len(t.labels))
    elif list(t.labels) != expected:
        res.fail(['labels'], ' '.join(map(str, expected)), ' '.join(map(str, t.labels)))


def _check_unit(t: FusionTable, res: CheckResult):
    u = t.index[unit_label(t.algebra, t.k)]
    eye = np.eye(len(t), dtype=np.int64)
    for a, x in enumerate(t.labels):
        res.instances_checked += 1
        for left, row in (((u, a), t.N[u, a]), ((a, u), t.N[a, u])):
            if not (row == eye[a]).all():
                res.fail([t.labels[i] for i in left], x, t.from_vector(row))


def _check_simple_current(t: FusionTable, res: CheckResult):
    u = t.index[unit_label(t.algebra, t.k)]
    j = t.index[simple_current_label(t.algebra, t.k)]
    for a, x in enumerate(t.labels):
        res.instances_checked += 1
        row = t.N[j, a]
        if row.sum() != 1 or row.max() != 1:
            res.fail([t.labels[j], x], 'a single label', t.from_vector(row))
    # the orbifold currents and L(k,k) have order 2; the parafermion current has order k
    order = t.k if t.algebra is AlgebraKind.PARA else 2
    power = np.eye(len(t), dtype=np.int64)[u]
    for _ in range(order):
        power = power @ t.N[j]
    res.instances_checked += 1
    if not (power == np.eye(len(t), dtype=np.int64)[u]).all():
        res.fail([t.labels[j], f'^{order}'], t.labels[u], t.from_vector(power))


def _check_commutativity(t: FusionTable, res: CheckResult):
    n = len(t)
    res.instances_checked = n * n
    bad = np.argwhere((t.N != t.N.transpose(1, 0, 2)).any(axis=2))
    for a, b in bad:
        res.fail([t.labels[a], t.labels[b]], t.outcome(t.labels[b], t.labels[a]),
                 t.outcome(t.labels[a], t.labels[b]))


def _assoc_block(args):
    N, firsts = args
    found = []
    for a in firsts:
        lhs = np.einsum('bx,xcd->bcd', N[a], N)   # (a x b) x c
        rhs = np.einsum('bcx,xd->bcd', N, N[a])   # a x (b x c)
        for b, c in np.argwhere((lhs != rhs).any(axis=2)):
            found.append((a, int(b), int(c), lhs[b, c], rhs[b, c]))
    return found


def _check_associativity(t: FusionTable, res: CheckResult, workers: int = 1):
    n = len(t)
    res.instances_checked = n ** 3
    jobs = [(t.N, part) for part in _partition(n, max(1, workers))]
    if workers <= 1 or n < 8:
        results = map(_assoc_block, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = list(pool.map(_assoc_block, jobs))
        pool.shutdown()
    found = sorted((f for block in results for f in block), key=lambda f: f[:3])
    for a, b, c, lhs, rhs in found:
        res.fail([t.labels[a], t.labels[b], t.labels[c]], t.from_vector(lhs), t.from_vector(rhs))


def _check_grading(t: FusionTable, res: CheckResult):
    sec = np.array([_sector(x) for x in t.labels])
    n = len(t)
    res.instances_checked = n * n
    for a in range(n):
        for b in range(n):
            want = sec[a] ^ sec[b]
            outs = np.flatnonzero(t.N[a, b])
            if (sec[outs] != want).any():
                res.fail([t.labels[a], t.labels[b]], 'twisted' if want else 'untwisted',
                         t.from_vector(t.N[a, b]))


def _check_duality(t: FusionTable, res: CheckResult):
    n = len(t)
    res.instances_checked = n ** 3
    D = np.array([t.index[contragredient(t.algebra, t.k, x)] for x in t.labels])
    M = t.N[:, D, :][:, :, D].transpose(0, 2, 1)   # M[a, b, c] = N[a, c', b']
    for a, b, c in np.argwhere(t.N != M):
        res.fail([t.labels[a], t.labels[b], t.labels[c]], int(M[a, b, c]), int(t.N[a, b, c]))


def _check_qdim(t: FusionTable, res: CheckResult):
    q = [qdim_of(t.algebra, t.k, x) for x in t.labels]
    n = len(t)
    res.tiers = {'exact': 0, 'numeric': 0}
    for a in range(n):
        for b in range(n):
            res.instances_checked += 1
            prod = qdim_mul(q[a], q[b])
            total = QDim.zero(t.k)
            for c in np.flatnonzero(t.N[a, b]):
                total = total + q[c].scaled(int(t.N[a, b, c]))
            tier = equal_tier(total, prod)
            if tier is None:
                res.fail([t.labels[a], t.labels[b]], prod, total)
            else:
                res.tiers[tier] += 1


def _check_dispatch(t: FusionTable, res: CheckResult):
    if t.algebra is not AlgebraKind.PARA_ORB:
        res.applicable = False
        return
    for a in t.labels:
        for b in t.labels:
            res.instances_checked += 1
            tags = clauses_for(t.k, a, b)
            if len(tags) != 1:
                res.fail([a, b], 'exactly one clause', tags or 'no clause')


def _iota(k, m: K0Label) -> FusionOutcome:
    """A parafermion module seen as a sum of orbifold labels."""
    if sigma_stable(k, m):
        return FusionOutcome([TypeI(m.i, m.j, PLUS), TypeI(m.i, m.j, MINUS)])
    rep = type_ii_representative(k, m)
    return FusionOutcome([TypeII(rep.i, rep.j)])


def _iota_twisted(k, l) -> FusionOutcome:
    w = fold_twisted(k, l, PLUS)
    out = [Twisted(w.i, PLUS), Twisted(w.i, MINUS)]
    if 2 * w.i == k:
        out += [TwistedTilde(PLUS), TwistedTilde(MINUS)]
    return FusionOutcome(out)


def _check_restriction(t: FusionTable, res: CheckResult):
    k = t.k
    if t.algebra is AlgebraKind.AFFINE_ORB:
        # forgetting signs: U x U and U x T give the affine range once each; T(i) x T(j)
        # gives the affine range of (i, k - j)
        n = len(t)
        for a in range(n):
            for b in range(n):
                x, y = t.labels[a], t.labels[b]
                res.instances_checked += 1
                got = {}
                for c in np.flatnonzero(t.N[a, b]):
                    z = t.labels[c]
                    got[(z.twisted, z.i)] = got.get((z.twisted, z.i), 0) + int(t.N[a, b, c])
                if x.twisted and y.twisted:
                    want = {(False, l): 1 for l in fusion_range(k, x.i, k - y.i)}
                else:
                    want = {(x.twisted or y.twisted, l): 1 for l in fusion_range(k, x.i, y.i)}
                if got != want:
                    res.fail([x, y], sorted(want), sorted(got.items()))
        return
    if t.algebra is AlgebraKind.AFFINE:
        for x in t.labels:
            for y in t.labels:
                res.instances_checked += 1
                got = sorted(z.i for z, _ in t.outcome(x, y))
                if got != list(fusion_range(k, x.i, y.i)):
                    res.fail([x, y], list(fusion_range(k, x.i, y.i)), got)
        return
    if t.algebra is AlgebraKind.PARA:
        # forgetting the second index gives the affine range, up to l ~ k - l from
        # the identification of M^{i,j} with M^{k-i,*}
        for x in t.labels:
            for y in t.labels:
                res.instances_checked += 1
                got = sorted(min(z.i, k - z.i) for z, m in t.outcome(x, y) for _ in range(m))
                want = sorted(min(l, k - l) for l in fusion_range(k, x.i, y.i))
                if got != want:
                    res.fail([x, y], want, got)
        return
    # para-orb: iota(A) x iota(B) = iota(A x B) + iota(sigma(A) x B), and for the twisted
    # sector iota(A) x iotaT(j) = 2 * sum over the affine range of iotaT(l)
    k0 = enumerate_labels(AlgebraKind.PARA, k)
    for A in k0:
        va = t.vector(_iota(k, A))
        for B in k0:
            res.instances_checked += 1
            got = np.einsum('a,b,abc->c', va, t.vector(_iota(k, B)), t.N)
            want = FusionOutcome()
            for m, mult in fuse_k0(k, A, B) + fuse_k0(k, sigma_partner(k, A), B):
                want = want + _iota(k, m).scaled(mult)
            if not (got == t.vector(want)).all():
                res.fail([A, B], want, t.from_vector(got))
        for j in range(k // 2 + 1):
            res.instances_checked += 1
            got = np.einsum('a,b,abc->c', va, t.vector(_iota_twisted(k, j)), t.N)
            want = FusionOutcome()
            for l in fusion_range(k, A.i, j):
                want = want + _iota_twisted(k, l)
            want = want.scaled(2)
            if not (got == t.vector(want)).all():
                res.fail([A, f'twisted {j}'], want, t.from_vector(got))


_RUNNERS = {
    'counts': _check_counts,
    'unit': _check_unit,
    'simple-current': _check_simple_current,
    'commutativity': _check_commutativity,
    'associativity': _check_associativity,
    'grading': _check_grading,
    'duality': _check_duality,
    'qdim-mult': _check_qdim,
    'dispatch-coverage': _check_dispatch,
    'restriction': _check_restriction,
}


def _resolve(checks) -> list:
    if checks is None:
        return list(CHECKS)
    if isinstance(checks, str):
        checks = [c for c in checks.split(',') if c]
    unknown = [c for c in checks if c not in _RUNNERS]
    if unknown:
        raise UnknownCheck(f'unknown check(s): {", ".join(unknown)}; known: {", ".join(CHECKS)}')
    return [c for c in CHECKS if c in set(checks)]


def verify_table(table: FusionTable, checks=None, workers: int = 1) -> Report:
    report = Report(table.algebra, table.k)
    for name in _resolve(checks):
        res = CheckResult(name)
        start = time.perf_counter()
        if name == 'associativity':
            _check_associativity(table, res, workers)
        else:
            _RUNNERS[name](table, res)
        res.elapsed = time.perf_counter() - start
        report.checks.append(res)
    return report


def verify_ring(algebra, k: int, checks=None, workers: int = 1,
                fold=FoldConvention.PRESERVE, literal: bool = False) -> Report:
    """Build the fusion table of ``algebra`` at level ``k`` and run the selected checks."""
    algebra = coerce_algebra(algebra)
    check_level(algebra, k)
    names = _resolve(checks)
    table = build_table(algebra, k, fold, literal, workers)
    return verify_table(table, names, workers)


# ---------------------------------------------------------------------------
# mutation harness

@dataclass(frozen=True)
class TableMutation:
    """Change one output of ``left x right`` (and of ``right x left``).

    ``kind`` is ``'flip'`` (move one copy of ``target`` to its opposite sign), ``'drop'``
    (remove one copy of ``target``) or ``'none'``.
    """
    kind: str
    left: Optional[object] = None
    right: Optional[object] = None
    target: Optional[object] = None

    def __str__(self):
        if self.kind == 'none':
            return 'identity'
        return f'{self.kind} {self.target} in {self.left} x {self.right}'


def _flipped(x):
    if isinstance(x, OrbAffineLabel):
        return OrbAffineLabel(x.twisted, x.i, -x.sign)
    if isinstance(x, TypeI):
        return TypeI(x.i, x.j, -x.sign)
    if isinstance(x, Twisted):
        return Twisted(x.i, -x.sign)
    if isinstance(x, TwistedTilde):
        return TwistedTilde(-x.sign)
    raise ValueError(f'{x} carries no sign')


def apply_mutation(table: FusionTable, mutation: TableMutation) -> FusionTable:
    out = table.copy()
    if mutation.kind == 'none':
        return out
    if mutation.kind not in ('flip', 'drop'):
        raise ValueError(f'unknown mutation kind {mutation.kind!r}')
    a, b = out.index[mutation.left], out.index[mutation.right]
    c = out.index[mutation.target]
    if out.N[a, b, c] == 0:
        raise ValueError(f'{mutation.target} does not occur in {mutation.left} x {mutation.right}')
    for x, y in {(a, b), (b, a)}:
        out.N[x, y, c] -= 1
        if mutation.kind == 'flip':
            out.N[x, y, out.index[_flipped(mutation.target)]] += 1
    return out


def random_mutations(table: FusionTable, count: int, seed: int = 0) -> list:
    """``count`` distinct random single-entry mutations, reproducible from ``seed``."""
    rng = random.Random(seed)
    n = len(table)
    seen, out = set(), []
    while len(out) < count:
        a, b = rng.randrange(n), rng.randrange(n)
        outs = np.flatnonzero(table.N[a, b])
        c = int(outs[rng.randrange(len(outs))])
        target = table.labels[c]
        kinds = ['drop']
        try:
            _flipped(target)
            kinds.append('flip')
        except ValueError:
            pass
        m = TableMutation(rng.choice(kinds), table.labels[a], table.labels[b], target)
        key = (m.kind, frozenset((a, b)), c)
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out


def mutate_and_detect(algebra, k: int, mutation: TableMutation, table: FusionTable = None,
                      workers: int = 1) -> Report:
    """Run associativity and qdim-mult against a table carrying one deliberate error."""
    if table is None:
        table = build_table(algebra, k, workers=workers)
    return verify_table(apply_mutation(table, mutation), ['associativity', 'qdim-mult'], workers)
