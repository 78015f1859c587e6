"""Permutations of a finite alphabet {0, ..., n-1}.

A :class:`GaugeElement` is the permutation ``sigma`` underlying a local gauge
transformation ``sigma (x) sigma``: it acts on a cell by permuting both of its
components identically, and on a single component as ``sigma`` itself.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class GaugeElement:
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(int(v) for v in self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a bijection on 0..{len(perm) - 1}: {perm}")

    @classmethod
    def identity(cls, n: int) -> GaugeElement:
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> GaugeElement:
        perm = list(range(n))
        perm[a], perm[b] = perm[b], perm[a]
        return cls(tuple(perm))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> GaugeElement:
        """Parse cycle notation such as ``(0 1)(2 3)``, ``(0,1,2)`` or ``()``.

        ``id`` is accepted as a synonym for the identity. Each cycle ``(a b c)``
        maps a to b, b to c and c to a.
        """
        text = text.strip()
        if text in ("", "id", "()"):
            return cls.identity(n)
        stripped = _CYCLE_RE.sub("", text).strip()
        if stripped:
            raise ValueError(f"malformed cycle notation: {text!r}")
        perm = list(range(n))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(text):
            tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
            try:
                cycle = [int(t) for t in tokens]
            except ValueError:
                raise ValueError(f"non-integer entry in cycle ({body})") from None
            for v in cycle:
                if not 0 <= v < n:
                    raise ValueError(f"cycle entry {v} outside 0..{n - 1}")
                if v in seen:
                    raise ValueError(f"value {v} appears in more than one cycle")
                seen.add(v)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                perm[a] = b
        return cls(tuple(perm))

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.perm))

    def __call__(self, value: int) -> int:
        return self.perm[value]

    def __matmul__(self, other: GaugeElement) -> GaugeElement:
        return compose(self, other)

    def inverse(self) -> GaugeElement:
        inv = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            inv[v] = i
        return GaugeElement(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting from its smallest entry."""
        out = []
        seen: set[int] = set()
        for start in range(self.n):
            if start in seen or self.perm[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            v = self.perm[start]
            while v != start:
                cycle.append(v)
                seen.add(v)
                v = self.perm[v]
            out.append(tuple(cycle))
        return out

    def to_cycles(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"GaugeElement{self.to_cycles()}"


def compose(a: GaugeElement, b: GaugeElement) -> GaugeElement:
    """Return ``a o b``, i.e. the map ``v -> a(b(v))``."""
    if a.n != b.n:
        raise ValueError(f"cannot compose permutations of sizes {a.n} and {b.n}")
    return GaugeElement(tuple(a.perm[v] for v in b.perm))


def all_permutations(n: int) -> list[GaugeElement]:
    return [GaugeElement(p) for p in permutations(range(n))]
