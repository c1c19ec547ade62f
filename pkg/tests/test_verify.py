import pytest

from fusionlab import InvalidLevel, OrbAffineLabel, UnknownCheck, parse_label, verify_ring, PLUS, MINUS
from fusionlab.verify import (CHECKS, FusionTable, TableMutation, apply_mutation, build_table,
                              mutate_and_detect, random_mutations, verify_table)


def test_para_orb_k3_passes_with_triple_count():
    report = verify_ring('para-orb', 3)
    assert report.passed, report.summary()
    assert report['associativity'].instances_checked == 1000


def test_affine_orb_k1_triple_count():
    report = verify_ring('affine-orb', 1)
    assert report.passed
    assert report['associativity'].instances_checked == 512


def test_invalid_inputs():
    with pytest.raises(InvalidLevel):
        verify_ring('para-orb', 2)
    with pytest.raises(UnknownCheck):
        verify_ring('para-orb', 3, checks=['associativity', 'bogus'])


def test_check_selection_keeps_canonical_order():
    report = verify_ring('affine', 3, checks='duality,unit')
    assert [c.name for c in report.checks] == ['unit', 'duality']


@pytest.mark.parametrize('alg,k', [('affine', 6), ('para', 5), ('para-orb', 6)])
def test_all_checks_pass(alg, k):
    report = verify_ring(alg, k)
    assert report.passed, report.summary()
    assert [c.name for c in report.checks] == list(CHECKS)


def test_report_independent_of_workers():
    table = build_table('para-orb', 4, literal=True)
    one = verify_table(table, ['associativity', 'commutativity'], workers=1).to_dict()
    two = verify_table(table, ['associativity', 'commutativity'], workers=3).to_dict()
    for d in (one, two):
        for c in d['checks']:
            c.pop('elapsed')
    assert one == two
    assoc = next(c for c in one['checks'] if c['name'] == 'associativity')
    assert assoc['failure_count'] > 100
    assert len(assoc['failures']) == 100


def test_parallel_build_matches_serial():
    assert (build_table('para-orb', 5, workers=3).N == build_table('para-orb', 5).N).all()


def test_literal_even_k_table_fails():
    report = verify_ring('para-orb', 4, literal=True)
    assert not report['associativity'].passed
    assert not report['duality'].passed
    assert report['qdim-mult'].passed  # the sign-summed content is right


def test_flip_convention_breaks_even_k():
    assert verify_ring('para-orb', 5, fold='flip').passed
    assert not verify_ring('para-orb', 4, fold='flip', checks=['associativity']).passed


def test_mutation_examples():
    k = 4
    table = build_table('affine-orb', k)
    flip = TableMutation('flip', OrbAffineLabel(False, 1, PLUS), OrbAffineLabel(False, 1, PLUS),
                         OrbAffineLabel(False, 2, PLUS))
    report = mutate_and_detect('affine-orb', k, flip, table=table)
    assert not report['associativity'].passed
    assert mutate_and_detect('affine-orb', k, TableMutation('none'), table=table).passed

    P = lambda s: parse_label('para-orb', 3, s)  # noqa: E731
    drop = TableMutation('drop', P('PI:2,1:+'), P('PT:1:+'), P('PT:0:+'))
    assert not mutate_and_detect('para-orb', 3, drop)['qdim-mult'].passed


def test_mutation_is_symmetric():
    table = build_table('affine-orb', 2)
    a, b = OrbAffineLabel(False, 1, PLUS), OrbAffineLabel(True, 0, MINUS)
    c = next(iter(table.outcome(a, b)))[0]
    mutated = apply_mutation(table, TableMutation('drop', a, b, c))
    assert mutated.outcome(a, b) == mutated.outcome(b, a) != table.outcome(a, b)


def test_random_mutations_reproducible():
    table = build_table('para-orb', 4)
    assert random_mutations(table, 5, seed=7) == random_mutations(table, 5, seed=7)


def test_table_round_trip():
    from fusionlab.cli import table_document
    table = build_table('para-orb', 4)
    for ordered in (False, True):
        again = FusionTable.from_document(table_document(table, ordered))
        assert (again.N == table.N).all() and again.labels == table.labels
