"""Space-time diagrams in text and SVG.

Time flows upward: the last row is printed first. Each cell is drawn as two
glyphs (left component, right component) followed by the glyph of the link to
its right.
"""

from __future__ import annotations

from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .lattice import GaugedConfiguration, Ring
from .permutation import GaugeElement, all_permutations
from .qca import QuantumState, mean_field, occupation_probabilities

VALUE_GLYPHS = ".#o3456789abcdefghijklmnopqrstuvwxyz"
LINK_IDENTITY = "-"
LINK_GLYPHS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
PROB_LEVELS = ((1e-9, "."), (0.25, ":"), (0.5, "+"), (0.75, "x"), (float("inf"), "#"))
VALUE_COLOURS = ("#ffffff", "#000000", "#9a9a9a", "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd")


def _link_labels(n: int) -> dict[GaugeElement, str]:
    if n > 4:
        return {}
    others = [g for g in all_permutations(n) if not g.is_identity]
    return {g: LINK_GLYPHS[i] for i, g in enumerate(sorted(others))}


def _window(trace: Sequence[GaugedConfiguration], window: Optional[tuple[int, int]]) -> list[int]:
    topo = trace[0].topology
    if isinstance(topo, Ring):
        return list(topo.positions())
    if window is not None:
        return list(range(window[0], window[1] + 1))
    xs = set()
    for c in trace:
        xs |= c.matter.support() | c.field_support()
    if not xs:
        return list(range(0, 4))
    return list(range(min(xs) - 2, max(xs) + 3))


def _check_trace(trace: Sequence) -> None:
    if not trace:
        raise ValueError("empty trace")
    topo = trace[0].topology if isinstance(trace[0], GaugedConfiguration) else None
    for c in trace:
        if type(c) is not type(trace[0]):
            raise ValueError("trace mixes classical and quantum states")
        if isinstance(c, GaugedConfiguration):
            if c.topology != topo or c.n != trace[0].n:
                raise ValueError("trace mixes topologies or alphabets")
        elif isinstance(c, QuantumState):
            if c.n_cells != trace[0].n_cells:
                raise ValueError("trace mixes ring sizes")
        else:
            raise TypeError(f"cannot render {type(c).__name__}")


def render_spacetime(
    trace: Sequence,
    format: str = "text",
    labels: Optional[Sequence[str]] = None,
    window: Optional[tuple[int, int]] = None,
) -> str:
    """Render a classical or quantum trace. ``labels`` name the rows (default: time)."""
    _check_trace(trace)
    labels = list(labels) if labels is not None else [str(t) for t in range(len(trace))]
    if len(labels) != len(trace):
        raise ValueError("one label per row")
    if format not in ("text", "svg"):
        raise ValueError(f"unknown format {format!r}")
    if isinstance(trace[0], QuantumState):
        return _quantum_text(trace, labels) if format == "text" else _quantum_svg(trace, labels)
    return _classical_text(trace, labels, window) if format == "text" else _classical_svg(trace, labels, window)


def _classical_text(trace, labels, window) -> str:
    first = trace[0]
    n = first.n
    xs = _window(trace, window)
    links = _link_labels(n)
    width = max(len(lab) for lab in labels)
    head = [
        f"# {first.topology} N={n} x={xs[0]}..{xs[-1]}, time flows upward",
        "# each cell: <left><right><link to the right>",
        "# values: " + " ".join(f"{VALUE_GLYPHS[v]}={v}" for v in range(n)),
        "# links: " + " ".join([f"{LINK_IDENTITY}=()"] + [f"{s}={g.to_cycles()}" for g, s in links.items()] + ([] if links else ["*=other"])),
    ]
    rows = []
    for lab, conf in zip(labels, trace):
        body = "".join(
            VALUE_GLYPHS[conf[x].left] + VALUE_GLYPHS[conf[x].right] + _link_glyph(conf.link(x), links) for x in xs
        )
        rows.append(f"{lab:>{width}} {body}")
    return "\n".join(head + rows[::-1]) + "\n"


def _link_glyph(g: GaugeElement, links: dict) -> str:
    # beyond N=4 every non-identity element shares one glyph
    return LINK_IDENTITY if g.is_identity else links.get(g, "*")


def _prob_glyph(p: float) -> str:
    for bound, glyph in PROB_LEVELS:
        if p < bound:
            return glyph
    return "#"


def _quantum_text(trace, labels) -> str:
    n = trace[0].n_cells
    width = max(len(lab) for lab in labels)
    head = [
        f"# Ring({n}) quantum, time flows upward",
        "# each cell: <left-mover><right-mover><link to the right>",
        "# occupation probability: .=0 :<0.25 +<0.5 x<0.75 #>=0.75",
        "# links (mean counter): -=0 +>0 ~<0",
    ]
    rows = []
    for lab, state in zip(labels, trace):
        probs = occupation_probabilities(state)
        field = mean_field(state)
        body = ""
        for x in range(n):
            f = field[x]
            link = "-" if abs(f) < 1e-9 else ("+" if f > 0 else "~")
            body += _prob_glyph(probs[x, 0]) + _prob_glyph(probs[x, 1]) + link
        rows.append(f"{lab:>{width}} {body}")
    return "\n".join(head + rows[::-1]) + "\n"


_SQ = 12
_LINK = 6


def _svg(rows: list[list[tuple[str, str]]], labels, title: str) -> str:
    """Rows of (kind, fill) tuples; kind is 'cell' or 'link'. First row is t=0."""
    label_w = 8 * max(len(lab) for lab in labels) + 8
    width = label_w + sum(_SQ if kind == "cell" else _LINK for kind, _ in rows[0])
    height = _SQ * len(rows)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{escape(title)}</title>",
    ]
    for r, (lab, row) in enumerate(zip(labels, rows)):
        y = (len(rows) - 1 - r) * _SQ
        parts.append(f'<text x="0" y="{y + _SQ - 2}" font-size="10" font-family="monospace">{escape(lab)}</text>')
        x = label_w
        for kind, fill in row:
            w = _SQ if kind == "cell" else _LINK
            if kind == "cell":
                parts.append(
                    f'<rect x="{x}" y="{y}" width="{w}" height="{_SQ}" fill="{fill}" stroke="#808080" stroke-width="0.5"/>'
                )
            elif fill is not None:
                parts.append(f'<rect x="{x}" y="{y + _SQ // 4}" width="{w}" height="{_SQ // 2}" fill="{fill}"/>')
            x += w
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _classical_svg(trace, labels, window) -> str:
    xs = _window(trace, window)
    rows = []
    for conf in trace:
        row = []
        for x in xs:
            c = conf[x]
            row.append(("cell", VALUE_COLOURS[c.left % len(VALUE_COLOURS)]))
            row.append(("cell", VALUE_COLOURS[c.right % len(VALUE_COLOURS)]))
            row.append(("link", None if conf.link(x).is_identity else "#2ca02c"))
        rows.append(row)
    return _svg(rows, labels, f"{trace[0].topology} N={trace[0].n}")


def _grey(p: float) -> str:
    v = int(round(255 * (1 - min(max(p, 0.0), 1.0))))
    return f"#{v:02x}{v:02x}{v:02x}"


def _quantum_svg(trace, labels) -> str:
    rows = []
    for state in trace:
        probs = occupation_probabilities(state)
        field = mean_field(state)
        row = []
        for x in range(state.n_cells):
            row.append(("cell", _grey(probs[x, 0])))
            row.append(("cell", _grey(probs[x, 1])))
            row.append(("link", None if abs(field[x]) < 1e-9 else "#2ca02c"))
        rows.append(row)
    return _svg(rows, labels, f"Ring({trace[0].n_cells}) quantum")


def diagram_grid(text: str) -> np.ndarray:
    """Character grid of a text diagram's body, top row first (for structural tests)."""
    body = [line.split()[-1] for line in text.splitlines() if line.strip() and not line.startswith("#")]
    return np.array([list(b) for b in body])
