import pytest
from hypothesis import given
from hypothesis import strategies as st

from gauge_ca.lattice import (
    QUIESCENT,
    Cell,
    GaugedConfiguration,
    Line,
    Ring,
    all_gauged_configurations,
    make_configuration,
    support,
)
from gauge_ca.permutation import GaugeElement


def test_empty_ring_is_quiescent():
    c = make_configuration(Ring(4), [])
    assert [c[x] for x in range(4)] == [QUIESCENT] * 4
    assert support(c) == frozenset()


def test_single_right_mover():
    c = make_configuration(Ring(4), [(0, (0, 1))])
    assert c[0] == Cell(0, 1)
    assert support(c) == {0}


def test_line_finite_support():
    c = make_configuration(Line(), [(0, (1, 1)), (5, (1, 0))])
    assert support(c) == {0, 5}
    assert c[-100] == c[3] == c[1000] == QUIESCENT


def test_support_of_single_cell():
    assert support(make_configuration(Line(), [(3, (0, 1))])) == {3}


def test_ring_wraps_reads():
    c = make_configuration(Ring(4), [(3, (1, 0))])
    assert c[-1] == Cell(1, 0)
    assert c[7] == Cell(1, 0)


@pytest.mark.parametrize("assignments", [[(4, (0, 1))], [(-1, (0, 1))]])
def test_position_outside_ring(assignments):
    with pytest.raises(ValueError, match="outside ring"):
        make_configuration(Ring(4), assignments)


def test_component_bound():
    with pytest.raises(ValueError, match="outside 0..1"):
        make_configuration(Ring(4), [(0, (2, 0))])
    make_configuration(Ring(4), [(0, (2, 0))], n=3)


def test_duplicate_position():
    with pytest.raises(ValueError, match="twice"):
        make_configuration(Ring(4), [(0, (0, 1)), (0, (1, 0))])


def test_ring_size_positive():
    with pytest.raises(ValueError):
        Ring(0)


def test_quiescent_cells_not_stored():
    c = make_configuration(Line(), [(2, (0, 0)), (3, (1, 0))])
    assert support(c) == {3}
    assert c == make_configuration(Line(), [(3, (1, 0))])


def test_field_defaults_to_identity():
    g = GaugedConfiguration(make_configuration(Ring(3), []), {1: GaugeElement((1, 0))})
    assert g.link(0).is_identity
    assert g.link(1) == GaugeElement((1, 0))
    assert g.link(4) == GaugeElement((1, 0))
    assert g.field_support() == {1}


def test_field_alphabet_mismatch():
    with pytest.raises(ValueError):
        GaugedConfiguration(make_configuration(Ring(3), []), {0: GaugeElement((1, 2, 0))})


def test_enumeration_count():
    configs = list(all_gauged_configurations(Ring(3), 2, [GaugeElement((0, 1)), GaugeElement((1, 0))]))
    assert len(configs) == 512
    assert len(set(configs)) == 512


cells = st.tuples(st.integers(0, 2), st.integers(0, 2))


@given(st.dictionaries(st.integers(-50, 50), cells, max_size=12))
def test_make_get_roundtrip(assign):
    c = make_configuration(Line(), assign.items(), n=3)
    for x in range(-55, 56):
        assert c[x] == Cell(*assign.get(x, (0, 0)))
    assert support(c) == {x for x, v in assign.items() if v != (0, 0)}
