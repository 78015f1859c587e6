"""Classical transport automata with and without a gauge field.

Every link ``(x, x+1)`` fires once per step and writes exactly two
components: the new left component of cell ``x`` (taken from the left
component of ``x+1``) and the new right component of cell ``x+1`` (taken from
the right component of ``x``). The bare rule copies them; the gauged rule
transports them through the link element. The gauge field itself is static.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .gauge_group import DEFAULT_CONVENTION, Convention
from .lattice import Cell, GaugedConfiguration, MatterConfiguration, Ring
from .permutation import GaugeElement


@dataclass(frozen=True)
class LinkRule:
    """Which local rule drives the automaton.

    ``kind="bare"`` ignores the gauge field entirely (the field is carried
    along unchanged); ``kind="gauged"`` transports components through it.
    """

    n: int = 2
    kind: Literal["bare", "gauged"] = "gauged"
    convention: Convention = DEFAULT_CONVENTION

    def __post_init__(self) -> None:
        if self.kind not in ("bare", "gauged"):
            raise ValueError(f"unknown rule kind {self.kind!r}")

    def local(self, right_in: int, link: GaugeElement, left_in: int) -> tuple[int, int]:
        """Local rule on one link.

        ``right_in`` is the right component of cell ``x``, ``left_in`` the left
        component of ``x+1``. Returns ``(new left of x, new right of x+1)``.
        """
        if self.kind == "bare":
            return left_in, right_in
        if self.convention is Convention.COVARIANT:
            return link.perm[left_in], link.inverse().perm[right_in]
        return link.perm[left_in], link.perm[right_in]


def gauged_rule(n: int = 2, convention: Convention = DEFAULT_CONVENTION) -> LinkRule:
    return LinkRule(n, "gauged", convention)


def bare_rule(n: int = 2) -> LinkRule:
    return LinkRule(n, "bare")


def _candidates(config: GaugedConfiguration) -> list[int]:
    topo = config.topology
    if isinstance(topo, Ring):
        return list(topo.positions())
    xs = set()
    for s in config.matter.support():
        xs.update((s - 1, s + 1))
    for k in config.field_support():
        xs.update((k, k + 1))
    return sorted(xs)


def step_bare(config: MatterConfiguration) -> MatterConfiguration:
    """Left components move one cell left, right components one cell right."""
    topo = config.topology
    if isinstance(topo, Ring):
        xs = topo.positions()
    else:
        xs = sorted({s + d for s in config.support() for d in (-1, 1)})
    cells = [(x, Cell(config[x + 1].left, config[x - 1].right)) for x in xs]
    return MatterConfiguration(topo, config.n, cells)


def step(rule: LinkRule, config: GaugedConfiguration) -> GaugedConfiguration:
    if rule.n != config.n:
        raise ValueError(f"rule on alphabet {rule.n}, configuration on {config.n}")
    topo = config.topology
    new_left: dict[int, int] = {}
    new_right: dict[int, int] = {}
    for x in _candidates(config):
        # link (x, x+1) writes left of x; link (x-1, x) writes right of x
        new_left[x], _ = rule.local(config[x].right, config.link(x), config[x + 1].left)
        _, new_right[x] = rule.local(config[x - 1].right, config.link(x - 1), config[x].left)
    cells = [(topo.wrap(x), Cell(new_left[x], new_right[x])) for x in new_left]
    return GaugedConfiguration(MatterConfiguration(topo, config.n, cells), config.field_items())


def step_gauged(config: GaugedConfiguration, convention: Convention = DEFAULT_CONVENTION) -> GaugedConfiguration:
    return step(LinkRule(config.n, "gauged", convention), config)


def run(config: GaugedConfiguration, steps: int, rule: LinkRule | None = None) -> list[GaugedConfiguration]:
    """Trace of length ``steps + 1`` starting with ``config``."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rule = rule or gauged_rule(config.n)
    trace = [config]
    for _ in range(steps):
        trace.append(step(rule, trace[-1]))
    return trace
