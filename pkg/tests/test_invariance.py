import itertools
import random

import pytest

from gauge_ca import symmetric_group
from gauge_ca.classical_gi_ca import bare_rule, gauged_rule
from gauge_ca.gauge_group import Convention, GaugeTransformation
from gauge_ca.invariance import (
    GlobalWitness,
    InvarianceReport,
    LocalWitness,
    Verdict,
    check_global_invariance,
    check_line_invariance,
    check_local_invariance,
    find_uncompensable,
    replay,
    replay_uncompensable,
    z_automaton,
)
from gauge_ca.lattice import Cell, Ring

from conftest import TAU


def test_local_abelian(z2):
    r = check_local_invariance(z2, gauged_rule(2))
    assert r.verdict is Verdict.INVARIANT
    # |cells|^2 * |links| * |G|^2 = 4 * 4 * 2 * 2 * 2
    assert r.cases_checked == 128
    assert r.witness is None


def test_local_nonabelian(s3):
    r = check_local_invariance(s3, gauged_rule(3))
    assert r.ok
    assert r.cases_checked == 9 * 6 * 9 * 6 * 6 == 17496


def test_bare_rule_has_local_counterexample(z2):
    r = check_local_invariance(z2, bare_rule())
    assert r.verdict is Verdict.COUNTEREXAMPLE
    assert isinstance(r.witness, LocalWitness)
    assert replay(r.witness, bare_rule())
    assert str(r.witness)


def test_literal_convention_fails_off_involutions(s3):
    # transporting with the same element in both directions breaks invariance for N=3
    rule = gauged_rule(3, Convention.LITERAL)
    r = check_local_invariance(s3, rule)
    assert r.verdict is Verdict.COUNTEREXAMPLE
    assert replay(r.witness, rule)
    assert check_local_invariance(symmetric_group(2), gauged_rule(2, Convention.LITERAL)).ok


def _oracle_failures(group, rule, order_seed):
    """Recompute every local case from scratch in a shuffled order."""
    covariant = rule.convention is Convention.COVARIANT
    cells = [Cell(a, b) for a in range(group.n) for b in range(group.n)]
    cases = list(itertools.product(cells, group.elements, cells, group.elements, group.elements))
    random.Random(order_seed).shuffle(cases)
    failures = set()
    for cx, a, cy, gx, gy in cases:
        gy_link = gy.inverse() if covariant else gy
        a2 = gx @ a @ gy_link
        back = a2.inverse() if covariant else a2
        lhs = (a2(gy(cy.left)), back(gx(cx.right)))
        fwd = a.inverse() if covariant else a
        rhs = (gx(a(cy.left)), gy(fwd(cx.right)))
        if lhs != rhs:
            failures.add((cx, a, cy, gx, gy))
    return len(cases), failures


@pytest.mark.parametrize("convention", list(Convention))
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_local_result_independent_of_order(s3, convention, seed):
    rule = gauged_rule(3, convention)
    total, failures = _oracle_failures(s3, rule, seed)
    r = check_local_invariance(s3, rule)
    assert total == 17496
    assert r.ok == (not failures)
    if not r.ok:
        w = r.witness
        assert (w.cell_x, w.link, w.cell_next, w.g_x, w.g_next) in failures


def test_literal_failure_count_pinned(s3):
    _, failures = _oracle_failures(s3, gauged_rule(3, Convention.LITERAL), 0)
    assert len(failures) == 11664


@pytest.mark.parametrize("size,steps", [(2, 3), (3, 2)])
def test_local_implies_global(z2, size, steps):
    assert check_local_invariance(z2, gauged_rule(2)).ok
    r = check_global_invariance(z2, gauged_rule(2), Ring(size), steps)
    assert r.ok
    assert r.cases_checked == (4 * 2) ** size * 2**size * steps


@pytest.mark.slow
def test_global_nonabelian_ring2(s3):
    r = check_global_invariance(s3, gauged_rule(3), Ring(2), 1)
    assert r.ok and r.cases_checked == (9 * 6) ** 2 * 36


def test_global_bare_counterexample_replays(z2):
    r = check_global_invariance(z2, bare_rule(), Ring(2), 1)
    assert r.verdict is Verdict.COUNTEREXAMPLE
    assert isinstance(r.witness, GlobalWitness)
    assert replay(r.witness, bare_rule())
    assert not replay(r.witness, gauged_rule(2))


def test_global_literal_counterexample_replays(s3):
    rule = gauged_rule(3, Convention.LITERAL)
    r = check_global_invariance(s3, rule, Ring(2), 1)
    assert not r.ok and replay(r.witness, rule)


def test_budget_sets_partial_flag(z2):
    r = check_global_invariance(z2, gauged_rule(2), Ring(3), 1, budget=100)
    assert r.partial and r.ok and r.cases_checked <= 100


def test_report_invariant_enforced():
    with pytest.raises(ValueError):
        InvarianceReport(Verdict.COUNTEREXAMPLE, 1)


def test_line_invariance(z2, s3):
    assert check_line_invariance(z2, gauged_rule(2), steps=3, samples=50, seed=4).ok
    assert check_line_invariance(s3, gauged_rule(3), steps=3, samples=50, seed=4).ok
    r = check_line_invariance(z2, bare_rule(), steps=2, samples=50, seed=4)
    assert not r.ok and replay(r.witness, bare_rule())


def test_z_is_identity_homomorphism(s3):
    ring = Ring(3)
    ident = GaugeTransformation(ring, 3)
    assert z_automaton(ident) == ident
    rng = random.Random(5)
    for _ in range(20):
        a = GaugeTransformation(ring, 3, {x: rng.choice(s3.elements) for x in range(3)})
        b = GaugeTransformation(ring, 3, {x: rng.choice(s3.elements) for x in range(3)})
        assert z_automaton(a) == a
        assert z_automaton(a.compose(b)) == z_automaton(a).compose(z_automaton(b))


def test_uncompensable_witness(z2):
    w = find_uncompensable(z2, Ring(3))
    assert w is not None
    # a single flipped cell splits into two differently coloured halves
    assert w.config.support() == frozenset()
    assert w.gamma == GaugeTransformation.single(TAU, 2, Ring(3))
    assert w.position == 0
    assert w.stepped == Cell(0, 0) and w.transformed_then_stepped == Cell(0, 1)
    assert replay_uncompensable(w, z2)


def test_uniform_transformations_are_compensable(z2):
    from gauge_ca.classical_gi_ca import step_bare
    from gauge_ca.gauge_group import apply_global_matter
    from gauge_ca.lattice import all_matter_configurations

    ring = Ring(3)
    g = GaugeTransformation.uniform(TAU, ring)
    for m in all_matter_configurations(ring, 2):
        assert step_bare(apply_global_matter(g, m)) == apply_global_matter(g, step_bare(m))


def test_gauged_rule_compensates_every_transformation(z2):
    r = check_global_invariance(z2, gauged_rule(2), Ring(3), 1)
    assert r.ok
