import itertools

import pytest

from gauge_ca.classical_gi_ca import bare_rule, gauged_rule
from gauge_ca.equivalence import (
    EquivalenceVerdict,
    NotEquivalentError,
    RuleVariant,
    check_equivalence,
    check_proposition_statements,
    check_simulation,
    gauge_fix,
    is_gauge_invariant,
)
from gauge_ca.gauge_group import GaugeTransformation, apply_global
from gauge_ca.lattice import Ring

from conftest import TAU

RING = Ring(2)
T = RuleVariant(gauged_rule(2))
SWAP = RuleVariant.uniform(gauged_rule(2), TAU, RING)
AT0 = RuleVariant(gauged_rule(2), GaugeTransformation.single(TAU, 0, RING))
AT1 = RuleVariant(gauged_rule(2), GaugeTransformation.single(TAU, 1, RING))
BARE = RuleVariant(bare_rule())


def test_reflexive_with_identity_witnesses(z2):
    r = check_simulation(T, T, z2, RING)
    assert r.verdict is EquivalenceVerdict.SIMULATES
    assert len(r.witnesses) == 64
    assert all(g.is_identity and g2.is_identity for g, g2 in r.witnesses.values())


def test_swap_variant_is_equivalent(z2):
    assert check_simulation(T, SWAP, z2, RING).verdict is EquivalenceVerdict.SIMULATES
    assert check_simulation(SWAP, T, z2, RING).verdict is EquivalenceVerdict.SIMULATES
    assert check_equivalence(T, SWAP, z2, RING).verdict is EquivalenceVerdict.EQUIVALENT


def test_witnesses_replay(z2):
    r = check_simulation(T, SWAP, z2, RING)
    for c, (g, g2) in r.witnesses.items():
        assert apply_global(g, T(c)) == SWAP(apply_global(g2, c))


def test_bare_not_simulating(z2):
    r = check_simulation(T, BARE, z2, RING)
    assert r.verdict is EquivalenceVerdict.NOT_SIMULATED
    assert r.failing is not None
    gammas = [GaugeTransformation(RING, 2, dict(enumerate(p))) for p in itertools.product(z2.elements, repeat=2)]
    tc = T(r.failing)
    for g, g2 in itertools.product(gammas, repeat=2):
        assert apply_global(g, tc) != BARE(apply_global(g2, r.failing))


def test_symmetric_and_transitive_on_sample(z2):
    variants = [T, SWAP, AT0, AT1, BARE]
    eq = {}
    for i, j in itertools.product(range(len(variants)), repeat=2):
        eq[i, j] = check_equivalence(variants[i], variants[j], z2, RING).verdict is EquivalenceVerdict.EQUIVALENT
    for i in range(len(variants)):
        assert eq[i, i]
    for i, j in eq:
        assert eq[i, j] == eq[j, i]
    for i, j, k in itertools.product(range(len(variants)), repeat=3):
        if eq[i, j] and eq[j, k]:
            assert eq[i, k]
    assert eq[0, 1] and eq[0, 2] and not eq[0, 4]


def test_proposition_statements_swap(z2):
    r = check_proposition_statements(T, SWAP, z2, RING)
    assert r.statements == (True, True, True)
    assert r.hypotheses_hold and r.statements_agree


def test_proposition_statements_self(z2):
    r = check_proposition_statements(T, T, z2, RING)
    assert r.statements == (True, True, True)
    assert all(g.is_identity and g2.is_identity for g, g2 in r.witnesses.values())


def test_proposition_records_violated_hypotheses(z2):
    r = check_proposition_statements(T, BARE, z2, RING)
    assert r.hypotheses_hold is False
    assert r.statements is not None


def test_invariance_of_variants(z2):
    assert is_gauge_invariant(T, z2, RING)
    assert is_gauge_invariant(SWAP, z2, RING)
    assert not is_gauge_invariant(BARE, z2, RING)


def test_budget_partial(z2):
    r = check_equivalence(T, SWAP, z2, RING, budget=10)
    assert r.partial


def test_frame_errors(z2, s3):
    with pytest.raises(ValueError):
        check_simulation(T, T, s3, RING)
    with pytest.raises(ValueError):
        check_simulation(T, SWAP, z2, Ring(3))


def test_gauge_fix_prefers_identity_post(z2):
    assert gauge_fix([SWAP, T], z2, RING) is T
    assert gauge_fix([SWAP], z2, RING) is SWAP


def test_gauge_fix_lexicographic(z2):
    # AT1 assigns (id, tau) and AT0 assigns (tau, id); the former is smaller
    assert gauge_fix([AT0, SWAP, AT1], z2, RING) is AT1


def test_gauge_fix_errors(z2):
    with pytest.raises(ValueError):
        gauge_fix([], z2, RING)
    with pytest.raises(NotEquivalentError) as exc:
        gauge_fix([T, SWAP, BARE], z2, RING)
    assert exc.value.pair == (0, 2)
