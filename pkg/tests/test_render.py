import xml.etree.ElementTree as ET

import numpy as np
import pytest

from gauge_ca.classical_gi_ca import run
from gauge_ca.cli import render, simulate
from gauge_ca.lattice import GaugedConfiguration, Ring, make_configuration
from gauge_ca.qca import QuantumState
from gauge_ca.render import diagram_grid, render_spacetime
from gauge_ca.scenario import parse_scenario

from conftest import GOLDEN, SCENARIOS

GOLDENS = sorted(GOLDEN.glob("*.txt"))


def load(name):
    return parse_scenario((SCENARIOS / f"{name}.scn").read_text())


def grid(name):
    """Rows indexed by time (row 0 is t=0) of the scenario's diagram."""
    return diagram_grid(render(load(name)))[::-1]


def right_glyphs(g):
    return g[:, 1::3]


def left_glyphs(g):
    return g[:, 0::3]


@pytest.mark.parametrize("path", GOLDENS, ids=lambda p: p.stem)
def test_golden(path):
    assert render(load(path.stem)) == path.read_text()


def test_golden_set_complete():
    assert {p.stem for p in GOLDENS} >= {"fig6a", "fig6b", "fig6c", "fig7a", "fig7b", "fig9a", "fig9b"}


def test_deterministic():
    assert render(load("fig7b")) == render(load("fig7b"))


def test_fig6a_diagonal():
    g = grid("fig6a")
    for t in range(g.shape[0]):
        occupied = [x for x in range(8) if right_glyphs(g)[t, x] != "."]
        assert occupied == [(1 + t) % 8]
    assert (left_glyphs(g) == ".").all()


def test_fig6b_compensated_matches_fig6a():
    a = simulate(load("fig6a")).final
    b = simulate(load("fig6b_compensated"))
    assert b.labels[-1] == "g"
    assert b.final == a
    assert grid("fig6b_compensated")[-1].tolist() == grid("fig6a")[-1].tolist()


def test_fig6b_is_fig6a_seen_in_another_frame():
    a, b = grid("fig6a"), grid("fig6b")
    flip = np.vectorize(lambda ch: {".": "#", "#": "."}.get(ch, ch))
    for t in range(a.shape[0]):
        for x in range(8):
            cell_a, cell_b = a[t, 3 * x : 3 * x + 2], b[t, 3 * x : 3 * x + 2]
            assert (cell_b == (flip(cell_a) if x == 4 else cell_a)).all()
        links = b[t, 2::3]
        assert [x for x in range(8) if links[x] != "-"] == [3, 4]


def test_fig6c_diverges_at_the_flipped_link():
    a, c = grid("fig6a"), grid("fig6c")
    cells = [i for i in range(a.shape[1]) if i % 3 != 2]
    assert (a[0, cells] == c[0, cells]).all()
    assert all((a[t, cells] != c[t, cells]).any() for t in range(1, a.shape[0]))
    # the flipped link emits a pair at once
    assert c[1, 3 * 4] == "#" and c[1, 3 * 5 + 1] == "#"
    # the original right-mover is flipped to empty when it crosses the link
    assert a[4, 3 * 5 + 1] == "#" and c[4, 3 * 5 + 1] == "."


def test_fig9b_is_fig9a_swapped_on_odd_steps():
    a, b = grid("fig9a"), grid("fig9b")
    swap = np.vectorize(lambda ch: {".": "#", "#": "."}.get(ch, ch))
    for t in range(a.shape[0]):
        assert (b[t] == (swap(a[t]) if t % 2 else a[t])).all()


def test_quiescent_trace():
    c = GaugedConfiguration(make_configuration(Ring(5), []))
    text = render_spacetime(run(c, 3))
    g = diagram_grid(text)
    assert g.shape == (4, 15)
    assert set(g[:, 0::3].ravel()) | set(g[:, 1::3].ravel()) == {"."}
    assert set(g[:, 2::3].ravel()) == {"-"}
    assert text.splitlines()[0].startswith("# Ring(5)")


def test_header_documents_glyphs():
    head = [l for l in render(load("fig7a")).splitlines() if l.startswith("#")]
    assert any("-=()" in l for l in head)
    assert any("o=2" in l for l in head)


def test_mixed_and_empty_traces():
    a = GaugedConfiguration(make_configuration(Ring(3), []))
    b = GaugedConfiguration(make_configuration(Ring(4), []))
    with pytest.raises(ValueError):
        render_spacetime([a, b])
    with pytest.raises(ValueError):
        render_spacetime([a, QuantumState.vacuum(3)])
    with pytest.raises(ValueError):
        render_spacetime([])
    with pytest.raises(ValueError):
        render_spacetime([a], format="png")
    with pytest.raises(ValueError):
        render_spacetime([a], labels=["0", "1"])


@pytest.mark.parametrize("name", ["fig6c", "fig7b", "quantum_interacting", "line_example"])
def test_svg_well_formed(name):
    svg = render(load(name), "svg")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    rects = root.findall("{http://www.w3.org/2000/svg}rect")
    assert rects


def test_quantum_text_diagram():
    g = grid("quantum_free")
    assert g.shape[0] == load("quantum_free").steps + 1
    assert set(g.ravel()) <= set(".:+x#-~")


def test_large_alphabet_links():
    s = parse_scenario("[model]\nkind = nonabelian\nn = 5\n[topology]\nkind = ring\nsize = 3\n[field]\n1 = (0 4)\n[run]\nsteps = 1\n")
    text = render(s)
    assert "*=other" in text
    assert diagram_grid(text)[0, 5] == "*"
