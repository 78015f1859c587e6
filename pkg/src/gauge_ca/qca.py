"""Sparse state-vector simulator for the U(1) gauge-invariant quantum automaton.

Basis states on a ring of ``n`` cells carry, per cell, a left-mover and a
right-mover occupation bit and, per link ``(x, x+1)``, an integer counter
``l`` truncated to ``|l| <= l_max``. States are dicts from basis states to
complex amplitudes.

One step applies the scattering gate on every link to
``(right-mover at x, l, left-mover at x+1)``, producing the new left-mover at
``x`` and the new right-mover at ``x+1``, then the sign gate ``S`` on every
freshly formed cell. Link gates act on disjoint factors, so they are applied
to each basis term simultaneously.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np
import scipy.sparse as sp

from .lattice import Cell


class TruncationError(ArithmeticError):
    """A gate would move the link counter outside ``[-l_max, l_max]``."""


@dataclass(frozen=True)
class ScatteringParams:
    mass: float = 0.5
    epsilon: float = 0.1
    charge: float = 1.0
    l_max: int = 8
    # The interaction phase exp(i/2 eps^2 g^2 L^2) multiplies the block matrix
    # from the right, so it is evaluated on the incoming counter. Set False to
    # evaluate it on the outgoing counter instead.
    phase_first: bool = True

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError("lattice spacing must be positive")
        if self.l_max < 0:
            raise ValueError("l_max must be non-negative")

    @property
    def s(self) -> float:
        return math.sin(self.mass * self.epsilon)

    @property
    def c(self) -> float:
        return math.cos(self.mass * self.epsilon)

    def interaction_phase(self, l: int) -> complex:
        return cmath.exp(0.5j * self.epsilon**2 * self.charge**2 * l * l)


class BasisState(NamedTuple):
    occupations: tuple[Cell, ...]
    field: tuple[int, ...]

    @classmethod
    def make(cls, occupations: Iterable[Sequence[int]], field: Iterable[int] | None = None) -> BasisState:
        occ = tuple(Cell(*c) for c in occupations)
        fld = tuple(int(v) for v in field) if field is not None else (0,) * len(occ)
        if len(fld) != len(occ):
            raise ValueError("one link per cell on a ring")
        for c in occ:
            if c.left not in (0, 1) or c.right not in (0, 1):
                raise ValueError(f"occupation bits must be 0 or 1, got {tuple(c)}")
        return cls(occ, fld)

    @property
    def n_cells(self) -> int:
        return len(self.occupations)

    def particle_count(self) -> int:
        return sum(c.left + c.right for c in self.occupations)


def _check_bits(*bits: int) -> None:
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"occupation bits must be 0 or 1, got {b}")


def gate_terms(params: ScatteringParams, m: int, l: int, n: int) -> list[tuple[complex, int, int, int]]:
    """Image of ``|m, l, n>`` under the scattering gate, as ``(amplitude, m', l', n')`` terms."""
    _check_bits(m, n)
    s, c = params.s, params.c
    if (m, n) == (0, 0):
        terms = [(1.0 + 0j, 0, l, 0)]
    elif (m, n) == (1, 0):
        terms = [(-1j * s, 1, l, 0), (c + 0j, 0, l - 1, 1)]
    elif (m, n) == (0, 1):
        terms = [(-1j * s, 0, l, 1), (c + 0j, 1, l + 1, 0)]
    else:
        terms = [(-1.0 + 0j, 1, l, 1)]
    out = []
    for amp, m2, l2, n2 in terms:
        if amp == 0:
            continue
        if abs(l2) > params.l_max:
            raise TruncationError(f"counter {l2} outside [-{params.l_max}, {params.l_max}]")
        amp *= params.interaction_phase(l if params.phase_first else l2)
        out.append((amp, m2, l2, n2))
    return out


def scattering_gate(params: ScatteringParams, amplitudes: Mapping[tuple[int, int, int], complex]) -> dict:
    """Apply the scattering gate to a superposition over ``(m, l, n)``."""
    out: dict[tuple[int, int, int], complex] = {}
    for (m, l, n), a in amplitudes.items():
        for amp, m2, l2, n2 in gate_terms(params, m, l, n):
            key = (m2, l2, n2)
            out[key] = out.get(key, 0j) + a * amp
    return out


def s_gate(amplitudes: Mapping[tuple[int, int], complex]) -> dict:
    """Sign gate on the two incoming components of a cell: ``|11> -> -|11>``."""
    out = {}
    for (a, b), amp in amplitudes.items():
        _check_bits(a, b)
        out[(a, b)] = -amp if (a, b) == (1, 1) else amp
    return out


class QuantumState:
    """Finite superposition of basis states of one ring."""

    __slots__ = ("amplitudes", "n_cells")

    def __init__(self, amplitudes: Mapping[BasisState, complex]):
        amps = {b: complex(a) for b, a in amplitudes.items() if a != 0}
        sizes = {b.n_cells for b in amps}
        if len(sizes) > 1:
            raise ValueError(f"basis states of different ring sizes: {sorted(sizes)}")
        self.amplitudes = amps
        self.n_cells = sizes.pop() if sizes else 0

    @classmethod
    def basis(cls, occupations, field=None) -> QuantumState:
        return cls({BasisState.make(occupations, field): 1.0})

    @classmethod
    def vacuum(cls, n_cells: int) -> QuantumState:
        return cls.basis([(0, 0)] * n_cells)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def items(self):
        return self.amplitudes.items()

    def norm(self) -> float:
        return math.sqrt(math.fsum(abs(a) ** 2 for a in self.amplitudes.values()))

    def normalized(self) -> QuantumState:
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return QuantumState({b: a / nrm for b, a in self.items()})

    def inner(self, other: QuantumState) -> complex:
        """``<self|other>``."""
        return sum((a.conjugate() * other.amplitudes.get(b, 0j) for b, a in self.items()), 0j)

    def distance(self, other: QuantumState) -> float:
        keys = self.amplitudes.keys() | other.amplitudes.keys()
        return math.sqrt(
            math.fsum(abs(self.amplitudes.get(k, 0j) - other.amplitudes.get(k, 0j)) ** 2 for k in keys)
        )

    def max_abs_field(self) -> int:
        return max((abs(l) for b in self.amplitudes for l in b.field), default=0)

    def __repr__(self) -> str:
        return f"QuantumState({len(self)} terms, n_cells={self.n_cells})"


def qca_step(params: ScatteringParams, state: QuantumState) -> QuantumState:
    out: dict[BasisState, complex] = {}
    n = state.n_cells
    for basis, amp in state.items():
        occ, fld = basis
        per_link = [gate_terms(params, occ[x].right, fld[x], occ[(x + 1) % n].left) for x in range(n)]
        for combo in itertools.product(*per_link):
            a = amp
            left = [0] * n
            right = [0] * n
            field = [0] * n
            for x, (g, m2, l2, n2) in enumerate(combo):
                a *= g
                left[x] = m2
                field[x] = l2
                right[(x + 1) % n] = n2
            for x in range(n):
                if left[x] and right[x]:
                    a = -a
            key = BasisState(tuple(Cell(left[x], right[x]) for x in range(n)), tuple(field))
            out[key] = out.get(key, 0j) + a
    return QuantumState(out)


def evolve(params: ScatteringParams, state: QuantumState, steps: int) -> list[QuantumState]:
    trace = [state]
    for _ in range(steps):
        trace.append(qca_step(params, trace[-1]))
    return trace


Phases = Union[Sequence[float], Mapping[int, float]]


def _phi_at(phi: Phases, x: int) -> float:
    if isinstance(phi, Mapping):
        return float(phi.get(x, 0.0))
    return float(phi[x])


def gauge_phase(phi: Phases, basis: BasisState) -> float:
    """Total phase angle picked up by ``basis`` under the transformation ``phi``.

    At each cell ``x``: ``phi(x)`` per occupied component, ``l * phi(x)`` from
    the left link ``(x-1, x)`` and ``-l * phi(x)`` from the right link.
    """
    n = basis.n_cells
    theta = 0.0
    for x in range(n):
        p = _phi_at(phi, x)
        c = basis.occupations[x]
        theta += p * (c.left + c.right)
        theta += p * basis.field[(x - 1) % n]
        theta -= p * basis.field[x]
    return theta


def gauge_transform_q(phi: Phases, state: QuantumState) -> QuantumState:
    return QuantumState({b: a * cmath.exp(1j * gauge_phase(phi, b)) for b, a in state.items()})


def check_q_invariance(params: ScatteringParams, state: QuantumState, phi: Phases) -> float:
    """``|| step(gamma psi) - gamma(step psi) ||``; zero for a gauge-invariant step."""
    lhs = qca_step(params, gauge_transform_q(phi, state))
    rhs = gauge_transform_q(phi, qca_step(params, state))
    return lhs.distance(rhs)


def occupation_probabilities(state: QuantumState) -> np.ndarray:
    """``(n_cells, 2)`` array of left-/right-mover occupation probabilities."""
    probs = np.zeros((state.n_cells, 2))
    for b, a in state.items():
        w = abs(a) ** 2
        for x, c in enumerate(b.occupations):
            probs[x, 0] += w * c.left
            probs[x, 1] += w * c.right
    return probs


def mean_field(state: QuantumState) -> np.ndarray:
    out = np.zeros(state.n_cells)
    for b, a in state.items():
        out += abs(a) ** 2 * np.asarray(b.field, dtype=float)
    return out


# -- single-gate matrices ------------------------------------------------------


def gate_basis(l_max: int) -> list[tuple[int, int, int]]:
    """The largest subspace of ``|m, l, n>``, ``|l| <= l_max``, mapped into itself by the gate.

    ``|1, l, 0>`` is paired with ``|0, l-1, 1>``; a pair is kept only when both
    counters fit.
    """
    out = []
    for l in range(-l_max, l_max + 1):
        out.append((0, l, 0))
        out.append((1, l, 1))
        if l - 1 >= -l_max:
            out.append((1, l, 0))
            out.append((0, l - 1, 1))
    return sorted(out, key=lambda t: (t[1], t[0], t[2]))


def scattering_matrix(params: ScatteringParams) -> tuple[list[tuple[int, int, int]], np.ndarray]:
    """Dense matrix of the gate on :func:`gate_basis`, built column by column from the gate."""
    basis = gate_basis(params.l_max)
    index = {b: i for i, b in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    for j, b in enumerate(basis):
        for key, amp in scattering_gate(params, {b: 1.0}).items():
            mat[index[key], j] += amp
    return basis, mat


def unitarity_deviation(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0]))))


# -- observables on a truncated ring -------------------------------------------


def truncated_basis(n_cells: int, l_max: int) -> list[BasisState]:
    """Every basis state of the ring with ``|l| <= l_max`` on each link."""
    cells = [Cell(a, b) for a in (0, 1) for b in (0, 1)]
    counters = range(-l_max, l_max + 1)
    return [
        BasisState(occ, fld)
        for occ in itertools.product(cells, repeat=n_cells)
        for fld in itertools.product(counters, repeat=n_cells)
    ]


def state_vector(state: QuantumState, basis: Sequence[BasisState]) -> np.ndarray:
    index = {b: i for i, b in enumerate(basis)}
    vec = np.zeros(len(basis), dtype=complex)
    for b, a in state.items():
        vec[index[b]] = a
    return vec


def gauge_operator(phi: Phases, basis: Sequence[BasisState]) -> sp.csr_matrix:
    return sp.diags([cmath.exp(1j * gauge_phase(phi, b)) for b in basis], format="csr")


def number_operator(basis: Sequence[BasisState]) -> sp.csr_matrix:
    return sp.diags([float(b.particle_count()) for b in basis], format="csr", dtype=complex)


def raising_operator(basis: Sequence[BasisState], x: int, component: str = "right") -> sp.csr_matrix:
    """Adds a fermion in the given component of cell ``x`` (zero if already occupied)."""
    if component not in ("left", "right"):
        raise ValueError("component is 'left' or 'right'")
    index = {b: i for i, b in enumerate(basis)}
    rows, cols = [], []
    for j, b in enumerate(basis):
        cell = b.occupations[x]
        if getattr(cell, component):
            continue
        new = cell._replace(**{component: 1})
        target = BasisState(b.occupations[:x] + (new,) + b.occupations[x + 1 :], b.field)
        rows.append(index[target])
        cols.append(j)
    return sp.csr_matrix((np.ones(len(rows), dtype=complex), (rows, cols)), shape=(len(basis), len(basis)))


def _commutator_norm(a: sp.spmatrix, b: sp.spmatrix) -> float:
    comm = (a @ b - b @ a).tocoo()
    return float(np.sqrt(np.sum(np.abs(comm.data) ** 2)))


def check_observable_gauge_constraint(op, phi: Phases, basis: Sequence[BasisState]) -> float:
    """Frobenius norm of ``[gamma_phi, O]``; zero iff ``O`` is gauge-invariant under ``phi``."""
    op = sp.csr_matrix(op)
    if op.shape != (len(basis), len(basis)):
        raise ValueError(f"operator of shape {op.shape} on a basis of size {len(basis)}")
    return _commutator_norm(gauge_operator(phi, basis), op)


def check_state_gauge_constraint(rho, phi: Phases, basis: Sequence[BasisState]) -> float:
    """Frobenius norm of ``[gamma_phi, rho]`` for a density matrix ``rho``."""
    return check_observable_gauge_constraint(rho, phi, basis)
