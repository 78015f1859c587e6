"""Machine checks of the gauge-invariance relation ``Z(gamma) o F = F o gamma``.

Three levels are provided:

* :func:`check_local_invariance` enumerates every input of one link together
  with every pair of local transformations at its two ends;
* :func:`check_global_invariance` enumerates every configuration and every
  transformation of a small ring, for several steps;
* :func:`check_line_invariance` samples finite-support configurations on the
  infinite line with a seeded generator.

:func:`find_uncompensable` exhibits the failure of the bare rule in its
strongest form: a configuration and transformation for which *no*
transformation applied after the step can restore agreement.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .classical_gi_ca import LinkRule, step, step_bare
from .gauge_group import (
    GaugeGroup,
    GaugeTransformation,
    apply_global,
    apply_global_matter,
    enumerate_transformations,
    transform_link,
)
from .lattice import (
    Cell,
    GaugedConfiguration,
    Line,
    MatterConfiguration,
    Ring,
    all_gauged_configurations,
    all_matter_configurations,
)
from .permutation import GaugeElement

ZMap = Callable[[GaugeTransformation], GaugeTransformation]
LocalZ = Callable[[GaugeElement, GaugeElement], "tuple[GaugeElement, GaugeElement]"]


class Verdict(enum.Enum):
    INVARIANT = "invariant"
    COUNTEREXAMPLE = "counterexample"


def z_automaton(gamma: GaugeTransformation) -> GaugeTransformation:
    """The identity automaton on group-valued configurations."""
    return gamma


def _z_identity_local(g_x: GaugeElement, g_next: GaugeElement) -> tuple[GaugeElement, GaugeElement]:
    return g_x, g_next


@dataclass(frozen=True)
class LocalWitness:
    cell_x: Cell
    link: GaugeElement
    cell_next: Cell
    g_x: GaugeElement
    g_next: GaugeElement
    output: str  # "left@x" or "right@x+1"
    transformed_then_stepped: int
    stepped_then_transformed: int

    def __str__(self) -> str:
        return (
            f"c_x={tuple(self.cell_x)} A={self.link.to_cycles()} c_x+1={tuple(self.cell_next)} "
            f"g_x={self.g_x.to_cycles()} g_x+1={self.g_next.to_cycles()} {self.output}: "
            f"{self.transformed_then_stepped}!={self.stepped_then_transformed}"
        )


@dataclass(frozen=True)
class GlobalWitness:
    config: GaugedConfiguration
    gamma: GaugeTransformation
    steps: int
    position: int
    what: str  # "cell" or "link"

    def __str__(self) -> str:
        return f"t={self.steps} gamma={dict((x, g.to_cycles()) for x, g in self.gamma.items())} mismatch {self.what}@{self.position}"


Witness = Union[LocalWitness, GlobalWitness]


@dataclass(frozen=True)
class InvarianceReport:
    verdict: Verdict
    cases_checked: int
    witness: Optional[Witness] = None
    partial: bool = False

    def __post_init__(self) -> None:
        if (self.verdict is Verdict.COUNTEREXAMPLE) != (self.witness is not None):
            raise ValueError("a counterexample verdict needs a witness and only then")

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.INVARIANT


def _local_outputs(rule: LinkRule, cx: Cell, a: GaugeElement, cy: Cell, gx, gy, convention, z_local):
    a2 = transform_link(gx, a, gy, convention)
    lhs = rule.local(gx.perm[cx.right], a2, gy.perm[cy.left])
    zx, zy = z_local(gx, gy)
    l0, r0 = rule.local(cx.right, a, cy.left)
    rhs = (zx.perm[l0], zy.perm[r0])
    return lhs, rhs


def check_local_invariance(group: GaugeGroup, rule: LinkRule, z_local: LocalZ = _z_identity_local) -> InvarianceReport:
    """Exhaustive check over (c_x, A, c_x+1, g_x, g_x+1) with link values in ``group``."""
    if rule.n != group.n:
        raise ValueError(f"rule on alphabet {rule.n}, group on {group.n}")
    cells = [Cell(a, b) for a in range(group.n) for b in range(group.n)]
    cases = 0
    for cx, a, cy, gx, gy in itertools.product(cells, group.elements, cells, group.elements, group.elements):
        cases += 1
        lhs, rhs = _local_outputs(rule, cx, a, cy, gx, gy, rule.convention, z_local)
        if lhs != rhs:
            which = 0 if lhs[0] != rhs[0] else 1
            witness = LocalWitness(cx, a, cy, gx, gy, ("left@x", "right@x+1")[which], lhs[which], rhs[which])
            return InvarianceReport(Verdict.COUNTEREXAMPLE, cases, witness)
    return InvarianceReport(Verdict.INVARIANT, cases)


def _first_difference(a: GaugedConfiguration, b: GaugedConfiguration) -> tuple[str, int]:
    xs = sorted(a.matter.support() | b.matter.support())
    for x in xs:
        if a[x] != b[x]:
            return "cell", x
    for x in sorted(a.field_support() | b.field_support()):
        if a.link(x) != b.link(x):
            return "link", x
    raise ValueError("configurations are equal")


def _z_power(z: ZMap, gamma: GaugeTransformation, t: int) -> GaugeTransformation:
    for _ in range(t):
        gamma = z(gamma)
    return gamma


def _compare(rule: LinkRule, config, gamma, steps, z, trace=None):
    """Return the first (t, witness) where F^t(gamma c) != Z^t(gamma)(F^t c), else None."""
    conv = rule.convention
    if trace is None:
        trace = [config]
        for _ in range(steps):
            trace.append(step(rule, trace[-1]))
    moved = apply_global(gamma, config, conv)
    for t in range(1, steps + 1):
        moved = step(rule, moved)
        expected = apply_global(_z_power(z, gamma, t), trace[t], conv)
        if moved != expected:
            what, pos = _first_difference(moved, expected)
            return GlobalWitness(config, gamma, t, pos, what)
    return None


def check_global_invariance(
    group: GaugeGroup,
    rule: LinkRule,
    topology: Ring,
    steps: int = 1,
    z: ZMap = z_automaton,
    budget: Optional[int] = None,
) -> InvarianceReport:
    """Exhaustive ``F^t(gamma(c)) == Z^t(gamma)(F^t(c))`` for ``t = 1..steps``.

    Each (configuration, transformation, t) triple counts as one case. With a
    ``budget`` the enumeration stops before exceeding it and the report is
    flagged partial.
    """
    if not isinstance(topology, Ring):
        raise ValueError("exhaustive global checking needs a ring; use check_line_invariance")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    gammas = list(enumerate_transformations(group, topology))
    cases = 0
    for config in all_gauged_configurations(topology, group.n, group.elements):
        if budget is not None and cases + len(gammas) * steps > budget:
            return InvarianceReport(Verdict.INVARIANT, cases, partial=True)
        trace = [config]
        for _ in range(steps):
            trace.append(step(rule, trace[-1]))
        for gamma in gammas:
            witness = _compare(rule, config, gamma, steps, z, trace)
            if witness is not None:
                return InvarianceReport(Verdict.COUNTEREXAMPLE, cases + witness.steps, witness)
            cases += steps
    return InvarianceReport(Verdict.INVARIANT, cases)


def random_configuration(group: GaugeGroup, rng: random.Random, lo: int, hi: int, topology=None) -> GaugedConfiguration:
    topology = topology or Line()
    n = group.n
    cells = [(x, (rng.randrange(n), rng.randrange(n))) for x in range(lo, hi)]
    field = [(x, rng.choice(group.elements)) for x in range(lo, hi)]
    return GaugedConfiguration(MatterConfiguration(topology, n, cells), field)


def check_line_invariance(
    group: GaugeGroup,
    rule: LinkRule,
    steps: int = 3,
    samples: int = 200,
    seed: int = 0,
    width: int = 8,
    z: ZMap = z_automaton,
) -> InvarianceReport:
    """Randomized check on the infinite line; supports are drawn from ``[0, width)``."""
    rng = random.Random(seed)
    line = Line()
    cases = 0
    for _ in range(samples):
        config = random_configuration(group, rng, 0, width, line)
        gamma = GaugeTransformation(line, group.n, [(x, rng.choice(group.elements)) for x in range(-1, width + 1)])
        witness = _compare(rule, config, gamma, steps, z)
        if witness is not None:
            return InvarianceReport(Verdict.COUNTEREXAMPLE, cases + witness.steps, witness)
        cases += steps
    return InvarianceReport(Verdict.INVARIANT, cases)


def replay(witness: Witness, rule: LinkRule, z: ZMap = z_automaton) -> bool:
    """True when re-evaluating the witness directly reproduces the inequality."""
    conv = rule.convention
    if isinstance(witness, LocalWitness):
        w = witness
        a2 = transform_link(w.g_x, w.link, w.g_next, conv)
        lhs = rule.local(w.g_x(w.cell_x.right), a2, w.g_next(w.cell_next.left))
        l0, r0 = rule.local(w.cell_x.right, w.link, w.cell_next.left)
        zx, zy = _z_identity_local(w.g_x, w.g_next)
        return lhs != (zx(l0), zy(r0))
    before = witness.config
    after = apply_global(witness.gamma, before, conv)
    for _ in range(witness.steps):
        before = step(rule, before)
        after = step(rule, after)
    return after != apply_global(_z_power(z, witness.gamma, witness.steps), before, conv)


@dataclass(frozen=True)
class UncompensableWitness:
    """A bare-rule step that no after-the-fact gauge transformation repairs.

    ``position`` is a cell where ``R(gamma(c))`` and ``R(c)`` differ by
    something no single local element can produce.
    """

    config: MatterConfiguration
    gamma: GaugeTransformation
    position: int
    stepped: Cell
    transformed_then_stepped: Cell


def _compensable_at(group: GaugeGroup, target: Cell, source: Cell) -> bool:
    return any(source.transformed(g) == target for g in group.elements)


def find_uncompensable(group: GaugeGroup, topology: Ring) -> Optional[UncompensableWitness]:
    """Lexicographically first ``(c, gamma)`` with no ``gamma'`` such that ``gamma'(R c) = R(gamma c)``.

    Since transformations act cellwise and independently, a compensating
    ``gamma'`` exists exactly when every cell can be matched separately.
    """
    gammas = list(enumerate_transformations(group, topology))
    for config in all_matter_configurations(topology, group.n):
        plain = step_bare(config)
        for gamma in gammas:
            moved = step_bare(apply_global_matter(gamma, config))
            for x in topology.positions():
                if not _compensable_at(group, moved[x], plain[x]):
                    return UncompensableWitness(config, gamma, x, plain[x], moved[x])
    return None


def replay_uncompensable(witness: UncompensableWitness, group: GaugeGroup) -> bool:
    """Brute force over every ``gamma'`` of the ring; True if none compensates."""
    topo = witness.config.topology
    plain = step_bare(witness.config)
    moved = step_bare(apply_global_matter(witness.gamma, witness.config))
    return all(apply_global_matter(g2, plain) != moved for g2 in enumerate_transformations(group, topo))
