"""Local gauge groups, gauge transformations and their action on configurations.

Every instantiated group acts cellwise (radius 0): an element ``sigma`` maps a
cell ``(a, b)`` to ``(sigma(a), sigma(b))``. On a gauged configuration a local
transformation at ``x`` also acts on the two links touching ``x``. Two link
conventions are available, see :class:`Convention`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .lattice import (
    GaugedConfiguration,
    MatterConfiguration,
    Ring,
    Topology,
)
from .permutation import GaugeElement, all_permutations, compose  # noqa: F401  (re-export)


class Convention(enum.Enum):
    """How a link element transforms and how it transports matter.

    COVARIANT
        A link element maps the frame of ``x+1`` into the frame of ``x``. Under
        ``(g_x, g_{x+1})`` it becomes ``g_x o A o g_{x+1}^-1``; the rule carries a
        left-mover across it with ``A`` and a right-mover with ``A^-1``.
    LITERAL
        ``A -> g_x o A o g_{x+1}`` and ``A`` transports both movers. Identical
        to COVARIANT whenever every element is an involution and the group is
        abelian (the N=2 example), but not gauge-invariant for S(N), N >= 3.
    """

    COVARIANT = "covariant"
    LITERAL = "literal"


DEFAULT_CONVENTION = Convention.COVARIANT


@dataclass(frozen=True)
class GaugeGroup:
    n: int
    elements: tuple[GaugeElement, ...]
    name: str = ""
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        elements = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(elements)})
        check_group_axioms(self)

    @property
    def identity(self) -> GaugeElement:
        return GaugeElement.identity(self.n)

    def index(self, g: GaugeElement) -> int:
        return self._index[g]

    def __contains__(self, g: object) -> bool:
        return g in self._index

    def __iter__(self) -> Iterator[GaugeElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def is_abelian(self) -> bool:
        return all(compose(a, b) == compose(b, a) for a in self for b in self)


def check_group_axioms(group: GaugeGroup) -> None:
    """Raise ``ValueError`` unless ``group`` is closed, has the identity and inverses."""
    members = set(group.elements)
    if not members:
        raise ValueError("a group needs at least one element")
    for g in members:
        if g.n != group.n:
            raise ValueError(f"{g!r} acts on {g.n} values, group declared on {group.n}")
    if GaugeElement.identity(group.n) not in members:
        raise ValueError("identity missing")
    for a in members:
        if a.inverse() not in members:
            raise ValueError(f"inverse of {a!r} missing")
        for b in members:
            if compose(a, b) not in members:
                raise ValueError(f"{a!r} o {b!r} not in group")


def abelian_group() -> GaugeGroup:
    """``{I (x) I, tau (x) tau}`` on the binary alphabet, with ``tau`` the bit flip."""
    return GaugeGroup(2, (GaugeElement.identity(2), GaugeElement((1, 0))), name="Z2")


def symmetric_group(n: int) -> GaugeGroup:
    """``{sigma (x) sigma | sigma in S(n)}``."""
    return GaugeGroup(n, tuple(all_permutations(n)), name=f"S({n})")


def transform_link(
    g_left: GaugeElement, a: GaugeElement, g_right: GaugeElement, convention: Convention = DEFAULT_CONVENTION
) -> GaugeElement:
    """New value of a link element under local transformations at both of its ends."""
    if convention is Convention.COVARIANT:
        return compose(compose(g_left, a), g_right.inverse())
    return compose(compose(g_left, a), g_right)


class GaugeTransformation:
    """A position-indexed family of local gauge elements.

    Positions not listed carry the identity. On a line only finitely many
    positions may be non-identity.
    """

    __slots__ = ("topology", "n", "_assignment", "_hash")

    def __init__(self, topology: Topology, n: int, assignment: Mapping[int, GaugeElement] | Iterable = ()):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        stored = {}
        for x, g in items:
            x = topology.check(x)
            if g.n != n:
                raise ValueError(f"element at {x} acts on {g.n} values, expected {n}")
            if not g.is_identity:
                stored[x] = g
        self.topology = topology
        self.n = n
        self._assignment = dict(sorted(stored.items()))
        self._hash = None

    @classmethod
    def uniform(cls, g: GaugeElement, topology: Ring) -> GaugeTransformation:
        if not isinstance(topology, Ring):
            raise ValueError("a uniform non-identity transformation has infinite support on a line")
        return cls(topology, g.n, {x: g for x in topology.positions()})

    @classmethod
    def single(cls, g: GaugeElement, at: int, topology: Topology) -> GaugeTransformation:
        return cls(topology, g.n, {at: g})

    def __getitem__(self, x: int) -> GaugeElement:
        g = self._assignment.get(self.topology.wrap(x))
        return g if g is not None else GaugeElement.identity(self.n)

    def items(self):
        return self._assignment.items()

    def support(self) -> frozenset[int]:
        return frozenset(self._assignment)

    @property
    def is_identity(self) -> bool:
        return not self._assignment

    def inverse(self) -> GaugeTransformation:
        return GaugeTransformation(self.topology, self.n, {x: g.inverse() for x, g in self.items()})

    def compose(self, other: GaugeTransformation) -> GaugeTransformation:
        """Pointwise ``self o other`` (apply ``other`` first)."""
        _same_frame(self, other.topology, other.n)
        xs = self.support() | other.support()
        return GaugeTransformation(self.topology, self.n, {x: compose(self[x], other[x]) for x in xs})

    def sort_key(self) -> tuple:
        """Lexicographic key over the dense assignment (ring) or the sparse one (line)."""
        if isinstance(self.topology, Ring):
            return tuple(self[x].perm for x in self.topology.positions())
        return tuple((x, g.perm) for x, g in self.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaugeTransformation):
            return NotImplemented
        return (self.topology, self.n, self._assignment) == (other.topology, other.n, other._assignment)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.topology, self.n, tuple(self._assignment.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{x}: {g.to_cycles()}" for x, g in self.items())
        return f"GaugeTransformation({self.topology}, {{{body}}})"


def _same_frame(gamma: GaugeTransformation, topology: Topology, n: int) -> None:
    if gamma.topology != topology:
        raise ValueError(f"transformation lives on {gamma.topology}, configuration on {topology}")
    if gamma.n != n:
        raise ValueError(f"transformation acts on {gamma.n} values, configuration has {n}")


def apply_local(
    g: GaugeElement, at: int, config: GaugedConfiguration, convention: Convention = DEFAULT_CONVENTION
) -> GaugedConfiguration:
    """Extended local transformation at ``at``: ``(A0, c, A1) -> (A0 o g^{+-1}, g(c), g o A1)``.

    ``A0`` sits on link ``(at-1, at)`` and ``A1`` on ``(at, at+1)``. The
    exponent on the left link is ``-1`` under COVARIANT and ``+1`` under
    LITERAL.
    """
    topo = config.topology
    x = topo.check(at)
    if g.n != config.n:
        raise ValueError(f"element acts on {g.n} values, configuration has {config.n}")
    matter = dict(config.matter.items())
    matter[x] = config[x].transformed(g)
    field = dict(config.field_items())
    left, right = topo.wrap(x - 1), x
    ident = GaugeElement.identity(config.n)
    # Ring(1): both ends of the single link are x.
    field[left] = transform_link(ident, config.link(left), g, convention)
    field[right] = transform_link(g, field.get(right, ident), ident, convention)
    return GaugedConfiguration(MatterConfiguration(topo, config.n, matter), field)


def apply_global(
    gamma: GaugeTransformation, config: GaugedConfiguration, convention: Convention = DEFAULT_CONVENTION
) -> GaugedConfiguration:
    """Apply every local factor of ``gamma`` at once."""
    _same_frame(gamma, config.topology, config.n)
    if gamma.is_identity:
        return config
    topo = config.topology
    matter = dict(config.matter.items())
    for x, g in gamma.items():
        matter[x] = config[x].transformed(g)
    touched = set(config.field_support())
    for x in gamma.support():
        touched.add(topo.wrap(x - 1))
        touched.add(x)
    field = {x: transform_link(gamma[x], config.link(x), gamma[x + 1], convention) for x in touched}
    return GaugedConfiguration(MatterConfiguration(topo, config.n, matter), field)


def apply_global_matter(gamma: GaugeTransformation, matter: MatterConfiguration) -> MatterConfiguration:
    """Action of ``gamma`` on a configuration that has no gauge field."""
    _same_frame(gamma, matter.topology, matter.n)
    cells = dict(matter.items())
    for x, g in gamma.items():
        cells[x] = matter[x].transformed(g)
    return MatterConfiguration(matter.topology, matter.n, cells)


def enumerate_transformations(group: GaugeGroup, topology: Ring) -> Iterator[GaugeTransformation]:
    """All ``|G|^size`` transformations of a ring, lexicographically ordered."""
    if not isinstance(topology, Ring):
        raise ValueError("exhaustive enumeration needs a ring")
    for combo in itertools.product(group.elements, repeat=topology.size):
        yield GaugeTransformation(topology, group.n, enumerate(combo))
