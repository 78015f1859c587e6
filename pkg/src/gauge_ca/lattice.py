"""One-dimensional lattice substrate.

Configurations live either on a ring of ``size`` cells (positions
``0..size-1``, indices wrap) or on the infinite line with finitely many
non-quiescent cells. Storage is sparse in both cases: only cells different
from the quiescent cell ``(0, 0)`` and links different from the identity are
kept. Link ``x`` is the link between positions ``x`` and ``x + 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .permutation import GaugeElement


@dataclass(frozen=True)
class Ring:
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"ring size must be positive, got {self.size}")

    def wrap(self, x: int) -> int:
        return x % self.size

    def check(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise ValueError(f"position {x} outside ring 0..{self.size - 1}")
        return x

    def positions(self) -> range:
        return range(self.size)

    def __str__(self) -> str:
        return f"Ring({self.size})"


@dataclass(frozen=True)
class Line:
    def wrap(self, x: int) -> int:
        return x

    def check(self, x: int) -> int:
        return x

    def __str__(self) -> str:
        return "Line"


Topology = Union[Ring, Line]


class Cell(NamedTuple):
    left: int
    right: int

    def transformed(self, g: GaugeElement) -> Cell:
        return Cell(g.perm[self.left], g.perm[self.right])


QUIESCENT = Cell(0, 0)


def _freeze(items: Iterable[tuple[int, object]]) -> Mapping:
    return MappingProxyType(dict(sorted(items)))


class MatterConfiguration:
    """Immutable assignment of a :class:`Cell` to every lattice position."""

    __slots__ = ("topology", "n", "_cells", "_hash")

    def __init__(self, topology: Topology, n: int, cells: Mapping[int, Cell] | Iterable = ()):
        if n < 1:
            raise ValueError(f"alphabet size must be positive, got {n}")
        items = cells.items() if isinstance(cells, Mapping) else cells
        stored = {}
        for x, cell in items:
            x = topology.check(x)
            cell = Cell(*cell)
            for v in cell:
                if not 0 <= v < n:
                    raise ValueError(f"component value {v} at position {x} outside 0..{n - 1}")
            if cell != QUIESCENT:
                stored[x] = cell
        self.topology = topology
        self.n = n
        self._cells = _freeze(stored.items())
        self._hash = None

    def __getitem__(self, x: int) -> Cell:
        return self._cells.get(self.topology.wrap(x), QUIESCENT)

    def cell(self, x: int) -> Cell:
        return self[x]

    def items(self):
        """Non-quiescent ``(position, cell)`` pairs, sorted by position."""
        return self._cells.items()

    def support(self) -> frozenset[int]:
        return frozenset(self._cells)

    def as_tuple(self) -> tuple[Cell, ...]:
        if not isinstance(self.topology, Ring):
            raise TypeError("dense view only exists on a ring")
        return tuple(self[x] for x in self.topology.positions())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatterConfiguration):
            return NotImplemented
        return (self.topology, self.n) == (other.topology, other.n) and self._cells == other._cells

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.topology, self.n, tuple(self._cells.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{x}: ({c.left},{c.right})" for x, c in self.items())
        return f"MatterConfiguration({self.topology}, n={self.n}, {{{body}}})"


class GaugedConfiguration:
    """Matter cells interleaved with a gauge field on the links.

    ``field[x]`` is the element sitting on link ``(x, x+1)``; links not listed
    carry the identity.
    """

    __slots__ = ("matter", "_field", "_hash")

    def __init__(self, matter: MatterConfiguration, field: Mapping[int, GaugeElement] | Iterable = ()):
        items = field.items() if isinstance(field, Mapping) else field
        stored = {}
        for x, g in items:
            x = matter.topology.check(x)
            if g.n != matter.n:
                raise ValueError(f"link {x} carries a permutation of {g.n} values, alphabet has {matter.n}")
            if not g.is_identity:
                stored[x] = g
        self.matter = matter
        self._field = _freeze(stored.items())
        self._hash = None

    @property
    def topology(self) -> Topology:
        return self.matter.topology

    @property
    def n(self) -> int:
        return self.matter.n

    def __getitem__(self, x: int) -> Cell:
        return self.matter[x]

    def link(self, x: int) -> GaugeElement:
        g = self._field.get(self.topology.wrap(x))
        return g if g is not None else GaugeElement.identity(self.n)

    def field_items(self):
        """Non-identity ``(link, element)`` pairs, sorted by link."""
        return self._field.items()

    def field_support(self) -> frozenset[int]:
        return frozenset(self._field)

    def with_matter(self, matter: MatterConfiguration) -> GaugedConfiguration:
        return GaugedConfiguration(matter, self._field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaugedConfiguration):
            return NotImplemented
        return self.matter == other.matter and self._field == other._field

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.matter, tuple(self._field.items())))
        return self._hash

    def __repr__(self) -> str:
        links = ", ".join(f"{x}: {g.to_cycles()}" for x, g in self.field_items())
        return f"GaugedConfiguration({self.matter!r}, field={{{links}}})"


def make_configuration(
    topology: Topology, assignments: Iterable[tuple[int, tuple[int, int]]] = (), n: int = 2
) -> MatterConfiguration:
    """Build a matter configuration; unassigned positions are quiescent.

    Assigning the same position twice is an error.
    """
    seen: set[int] = set()
    cells = []
    for x, cell in assignments:
        if x in seen:
            raise ValueError(f"position {x} assigned twice")
        seen.add(x)
        cells.append((x, cell))
    return MatterConfiguration(topology, n, cells)


def support(config: MatterConfiguration | GaugedConfiguration) -> frozenset[int]:
    if isinstance(config, GaugedConfiguration):
        config = config.matter
    return config.support()


def forget_field(config: GaugedConfiguration) -> MatterConfiguration:
    return config.matter


def with_identity_field(matter: MatterConfiguration) -> GaugedConfiguration:
    return GaugedConfiguration(matter)


def all_matter_configurations(topology: Ring, n: int) -> Iterator[MatterConfiguration]:
    """Every matter configuration of a ring, in lexicographic order."""
    cells = [Cell(a, b) for a in range(n) for b in range(n)]
    for combo in itertools.product(cells, repeat=topology.size):
        yield MatterConfiguration(topology, n, enumerate(combo))


def all_gauged_configurations(topology: Ring, n: int, links: Iterable[GaugeElement]) -> Iterator[GaugedConfiguration]:
    """Every (matter, field) pair of a ring with link values drawn from ``links``."""
    links = list(links)
    fields = list(itertools.product(links, repeat=topology.size))
    for matter in all_matter_configurations(topology, n):
        for field in fields:
            yield GaugedConfiguration(matter, enumerate(field))
