"""The eleven acceptance criteria, one test each.

Every test records a one-line verdict that is printed in the terminal summary (see conftest).
Running this file directly also prints the verdicts.
"""

import time
from fractions import Fraction

import pytest

import oracles
from conftest import ACCEPTANCE
from fusionlab import (AffineLabel, K0Label, OrbAffineLabel, enumerate_labels, fuse, label_count,
                       lowest_weight, parse_label, PLUS, MINUS)
from fusionlab.affine_rings import _fuse_orb_affine
from fusionlab.catalog import twisted_para_base_weight
from fusionlab.cli import run
from fusionlab.fusion import simple_current_label, unit_label
from fusionlab.labels import Twisted
from fusionlab.para_rings import _fuse as _fuse_orb_para
from fusionlab.verify import (build_table, mutate_and_detect, random_mutations, verify_table)

WORKERS = 4
_TABLES = {}


def table(alg, k):
    if (alg, k) not in _TABLES:
        _TABLES[alg, k] = build_table(alg, k, workers=WORKERS)
    return _TABLES[alg, k]


def record(number, name, ok, detail):
    ACCEPTANCE[number] = (name, bool(ok), detail)
    print(f'[{"PASS" if ok else "FAIL"}] {number}. {name}: {detail}')
    assert ok, detail


def levels(alg, hi):
    return range(3 if alg == 'para-orb' else 1, hi + 1)


def test_01_counts():
    bad = []
    for k in range(1, 31):
        if len(enumerate_labels('affine-orb', k)) != 4 * (k + 1):
            bad.append(('affine-orb', k))
        if len(enumerate_labels('para', k)) != k * (k + 1) // 2:
            bad.append(('para', k))
    for k in range(3, 31):
        want = (k + 1) * (k + 7) // 4 if k % 2 else (k * k + 8 * k + 28) // 4
        if len(enumerate_labels('para-orb', k)) != want or label_count('para-orb', k) != want:
            bad.append(('para-orb', k))
    spots = [len(enumerate_labels('para-orb', k)) for k in (3, 4, 5, 6)]
    ok = not bad and spots == [10, 19, 18, 28]
    record(1, 'counts', ok, f'k<=30 all closed forms hold, para-orb k=3..6 -> {spots}'
           if ok else f'mismatches {bad}, spots {spots}')


def test_02_unit_and_simple_current():
    start = time.perf_counter()
    bad = []
    for alg in ('affine-orb', 'para-orb'):
        for k in levels(alg, 12):
            u, j = unit_label(alg, k), simple_current_label(alg, k)
            if fuse(alg, k, j, j).labels() != [u]:
                bad.append((alg, k, 'order'))
            for x in enumerate_labels(alg, k):
                if fuse(alg, k, u, x).labels() != [x] or fuse(alg, k, x, u).labels() != [x]:
                    bad.append((alg, k, str(x), 'unit'))
                y = fuse(alg, k, j, x)
                if y.total() != 1 or fuse(alg, k, j, y.labels()[0]).labels() != [x]:
                    bad.append((alg, k, str(x), 'current'))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 5
    record(2, 'unit and simple-current laws', ok,
           f'all labels k<=12, {elapsed:.2f}s (limit 5s)' + (f', failures {bad[:5]}' if bad else ''))


def test_03_commutativity():
    start = time.perf_counter()
    bad, pairs = [], 0
    for alg in ('affine-orb', 'para-orb'):
        for k in levels(alg, 10):
            labels = enumerate_labels(alg, k)
            for a in labels:
                for b in labels:
                    pairs += 1
                    if fuse(alg, k, a, b) != fuse(alg, k, b, a):
                        bad.append((alg, k, str(a), str(b)))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record(3, 'commutativity', ok, f'{pairs} ordered pairs, {elapsed:.2f}s (limit 10s)'
           + (f', failures {len(bad)} e.g. {bad[:3]}' if bad else ''))


def test_04_associativity():
    lines, ok, slowest = [], True, 0.0
    for alg, ks in (('affine-orb', range(1, 11)), ('para-orb', range(3, 9))):
        for k in ks:
            # time the level from cold caches: table construction plus the check
            _fuse_orb_affine.cache_clear()
            _fuse_orb_para.cache_clear()
            start = time.perf_counter()
            fresh = build_table(alg, k, workers=WORKERS)
            report = verify_table(fresh, ['associativity'], WORKERS)
            elapsed = time.perf_counter() - start
            _TABLES[alg, k] = fresh
            slowest = max(slowest, elapsed)
            res = report['associativity']
            if not res.passed or elapsed >= 120:
                ok = False
                lines.append(f'{alg} k={k}: {res.failure_count} failures, {elapsed:.1f}s')
    record(4, 'associativity', ok, f'all triples, slowest level {slowest:.1f}s (limit 120s)'
           + (f'; {lines}' if lines else ''))


def _run_check(name, algs, hi):
    failures, instances = [], 0
    for alg in algs:
        for k in levels(alg, hi):
            res = verify_table(table(alg, k), [name])[name]
            instances += res.instances_checked
            if not res.passed:
                failures.append((alg, k, res.failure_count, res.failures[:1]))
    return failures, instances


def test_05_grading():
    failures, n = _run_check('grading', ('affine-orb', 'para-orb'), 10)
    record(5, 'Z2 grading', not failures, f'{n} pairs' + (f', failures {failures}' if failures else ''))


def test_06_duality():
    failures, n = _run_check('duality', ('affine-orb', 'para-orb'), 8)
    record(6, 'duality symmetry', not failures,
           f'{n} triples k<=8' + (f', failures {failures}' if failures else ''))


def test_07_qdim_multiplicativity():
    tiers, failures, n = {'exact': 0, 'numeric': 0}, [], 0
    for k in levels('para-orb', 10):
        res = verify_table(table('para-orb', k), ['qdim-mult'])['qdim-mult']
        n += res.instances_checked
        for t, c in res.tiers.items():
            tiers[t] += c
        if not res.passed:
            failures.append((k, res.failure_count, res.failures[:1]))
    record(7, 'qdim multiplicativity', not failures,
           f'{n} pairs, exact tier {tiers["exact"]}, numeric tier {tiers["numeric"]}, '
           f'failures {sum(f[1] for f in failures)}')


def test_08_restriction():
    failures, n = _run_check('restriction', ('affine', 'affine-orb', 'para', 'para-orb'), 10)
    record(8, 'restriction consistency', not failures,
           f'{n} instances k<=10' + (f', failures {failures}' if failures else ''))


def _cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def test_09_spot_values(capsys):
    checks = []

    def same_tokens(out, text):
        return sorted(out.split()) == sorted(text.split())

    code, out = _cli(capsys, 'fuse', '--algebra', 'para-orb', '--level', '4', 'PI:2,1:+', 'PI:2,1:+')
    checks.append(('(M21)+ x (M21)+ at k=4', code == 0 and same_tokens(out, 'PI:4,0:+ PI:2,1:- PI:4,2:+')))
    code, out = _cli(capsys, 'fuse', '--algebra', 'para-orb', '--level', '4', 'PI:4,2:+', 'PII:1,0')
    checks.append(('(M42)+ x M10 at k=4', code == 0 and out == 'PII:3,1'))
    code, out = _cli(capsys, 'fuse', '--algebra', 'para-orb', '--level', '3', 'PI:2,1:+', 'PT:1:+')
    checks.append(('(M21)+ x W(3,1)+', code == 0 and same_tokens(out, 'PT:1:- PT:0:+')))
    code, out = _cli(capsys, 'fuse', '--algebra', 'affine-orb', '--level', '1', 'AT:0:+', 'AT:0:+')
    checks.append(('Lbar(1,0)+ x Lbar(1,0)+', code == 0 and out == 'AU:1:-'))
    code, out = _cli(capsys, 'fuse', '--algebra', 'affine-orb', '--level', '4', 'AU:1:+', 'AU:1:+')
    checks.append(('L(4,1)+ x L(4,1)+', code == 0 and same_tokens(out, 'AU:0:- AU:2:+')))
    code, out = _cli(capsys, 'fuse', '--algebra', 'affine', '--level', '1', 'A:1', 'A:1')
    checks.append(('L(1,1) x L(1,1)', code == 0 and out == 'A:0'))
    code, out = _cli(capsys, 'qdim', '--algebra', 'para-orb', '--level', '3', 'PII:1,0', '--digits', '10')
    checks.append(('qdim M10 at k=3', code == 0 and out == '3.236067977'))
    code, out = _cli(capsys, 'qdim', '--algebra', 'para-orb', '--level', '4', 'PT:2:+', '--digits', '10')
    checks.append(('qdim W(4,2)+', code == 0 and out == '2.000000000'))
    code, out = _cli(capsys, 'dual', '--algebra', 'affine-orb', '--level', '4', 'AU:3:+')
    checks.append(('dual L(4,3)+', code == 0 and out == 'AU:3:-'))
    code, out = _cli(capsys, 'weight', '--algebra', 'affine-orb', '--level', '4', 'AT:1:-')
    checks.append(('weight Lbar(4,1)-', code == 0 and out == '5/8'))
    code, _ = _cli(capsys, 'verify', '--algebra', 'affine-orb', '--level', '5')
    checks.append(('verify affine-orb k=5 exits 0', code == 0))
    bad = [name for name, good in checks if not good]
    record(9, 'spot values through the CLI', not bad,
           f'{len(checks) - len(bad)}/{len(checks)} reproduced' + (f', wrong: {bad}' if bad else ''))


def test_10_mutation_sensitivity():
    detected, missed = 0, []
    for alg in ('para-orb', 'affine-orb'):
        base = table(alg, 4)
        for m in random_mutations(base, 20, seed=20240417):
            report = mutate_and_detect(alg, 4, m, table=base)
            if report.passed:
                missed.append(f'{alg}: {m}')
            else:
                detected += 1
    record(10, 'mutation sensitivity', not missed,
           f'{detected}/40 single-entry mutations detected' + (f', missed {missed}' if missed else ''))


def test_11_weights():
    bad = []
    for k in range(1, 31):
        affine = [lowest_weight('affine', k, AffineLabel(i)) for i in range(k + 1)]
        if affine != [oracles.affine_weight(k, i) for i in range(k + 1)] or len(set(affine)) != k + 1:
            bad.append(('affine', k))
        for i in range(k + 1):
            for s, minus in ((PLUS, False), (MINUS, True)):
                if lowest_weight('affine-orb', k, OrbAffineLabel(True, i, s)) != \
                        oracles.twisted_affine_weight(k, i, minus):
                    bad.append(('twisted affine', k, i, s))
        for m in enumerate_labels('para', k):
            if lowest_weight('para', k, m) != oracles.k0_weight(k, m.i, m.j):
                bad.append(('para', k, str(m)))
        if k >= 3:
            for i in range(k // 2 + 1):
                w = oracles.twisted_para_weight(k, i)
                if twisted_para_base_weight(k, i) != w or \
                        lowest_weight('para-orb', k, Twisted(i, PLUS)) != w:
                    bad.append(('twisted para', k, i))
    spots = [lowest_weight('para', 3, K0Label(1, 0)) == Fraction(1, 15),
             lowest_weight('affine-orb', 4, OrbAffineLabel(True, 1, MINUS)) == Fraction(5, 8),
             lowest_weight('affine-orb', 7, OrbAffineLabel(False, 0, MINUS)) == 1,
             lowest_weight('para', 6, parse_label('para', 6, 'P:0,0')) == 0]
    ok = not bad and all(spots)
    record(11, 'weight values', ok, 'exact rationals agree for k<=30, affine weights distinct'
           if ok else f'mismatches {bad[:5]}, spots {spots}')


if __name__ == '__main__':
    raise SystemExit(pytest.main([__file__, '-q']))
