"""Gauge-equivalence of automata, by brute force on small rings.

``T`` is simulated by ``T'`` when every configuration ``c`` admits
transformations ``gamma, gamma'`` with ``gamma(T(c)) == T'(gamma'(c))``; the
two are equivalent when each simulates the other. The witnesses may depend on
``c`` and are stored per configuration.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .classical_gi_ca import LinkRule, step
from .gauge_group import GaugeGroup, GaugeTransformation, apply_global, enumerate_transformations
from .lattice import GaugedConfiguration, Ring, all_gauged_configurations
from .permutation import GaugeElement


@dataclass(frozen=True)
class RuleVariant:
    """``post o base``: the base rule followed by a fixed gauge transformation each step."""

    base: LinkRule
    post: Optional[GaugeTransformation] = None

    @classmethod
    def uniform(cls, base: LinkRule, g: GaugeElement, topology: Ring) -> RuleVariant:
        return cls(base, GaugeTransformation.uniform(g, topology))

    @property
    def n(self) -> int:
        return self.base.n

    def post_is_identity(self) -> bool:
        return self.post is None or self.post.is_identity

    def __call__(self, config: GaugedConfiguration) -> GaugedConfiguration:
        out = step(self.base, config)
        if self.post_is_identity():
            return out
        return apply_global(self.post, out, self.base.convention)

    def sort_key(self) -> tuple:
        return () if self.post is None else self.post.sort_key()


class EquivalenceVerdict(enum.Enum):
    SIMULATES = "simulates"
    EQUIVALENT = "equivalent"
    NOT_SIMULATED = "not simulated"


@dataclass
class EquivalenceReport:
    verdict: EquivalenceVerdict
    witnesses: dict = field(default_factory=dict)  # config -> (gamma, gamma')
    failing: Optional[GaugedConfiguration] = None
    cases_checked: int = 0
    partial: bool = False
    statements: Optional[tuple[bool, bool, bool]] = None
    hypotheses_hold: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.verdict is not EquivalenceVerdict.NOT_SIMULATED

    @property
    def statements_agree(self) -> Optional[bool]:
        if self.statements is None:
            return None
        return len(set(self.statements)) == 1


class NotEquivalentError(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"variants {i} and {j} are not gauge-equivalent")
        self.pair = (i, j)


def _frame(group: GaugeGroup, topology: Ring, *variants: RuleVariant):
    if not isinstance(topology, Ring):
        raise ValueError("equivalence is only decided on rings")
    for v in variants:
        if v.n != group.n:
            raise ValueError(f"variant on alphabet {v.n}, group on {group.n}")
        if v.post is not None and v.post.topology != topology:
            raise ValueError(f"post-transformation lives on {v.post.topology}, check runs on {topology}")
        if v.base.convention is not variants[0].base.convention:
            raise ValueError("variants use different field conventions")
    return list(all_gauged_configurations(topology, group.n, group.elements)), list(
        enumerate_transformations(group, topology)
    )


def _enumeration_size(group: GaugeGroup, topology: Ring) -> int:
    return (group.n**2 * len(group)) ** topology.size


def check_simulation(
    t: RuleVariant, t2: RuleVariant, group: GaugeGroup, topology: Ring, budget: Optional[int] = None
) -> EquivalenceReport:
    """Is ``t`` simulated by ``t2``? Searches every ``(gamma, gamma')`` per configuration."""
    if budget is not None and _enumeration_size(group, topology) > budget:
        return EquivalenceReport(EquivalenceVerdict.SIMULATES, partial=True)
    configs, gammas = _frame(group, topology, t, t2)
    conv = t.base.convention
    witnesses = {}
    cases = 0
    for c in configs:
        image: dict[GaugedConfiguration, GaugeTransformation] = {}
        tc = t(c)
        for gamma in gammas:
            image.setdefault(apply_global(gamma, tc, conv), gamma)
        found = None
        for gamma2 in gammas:
            cases += 1
            hit = image.get(t2(apply_global(gamma2, c, conv)))
            if hit is not None:
                found = (hit, gamma2)
                break
        if found is None:
            return EquivalenceReport(EquivalenceVerdict.NOT_SIMULATED, witnesses, failing=c, cases_checked=cases)
        witnesses[c] = found
    return EquivalenceReport(EquivalenceVerdict.SIMULATES, witnesses, cases_checked=cases)


def check_equivalence(
    t: RuleVariant, t2: RuleVariant, group: GaugeGroup, topology: Ring, budget: Optional[int] = None
) -> EquivalenceReport:
    forward = check_simulation(t, t2, group, topology, budget)
    if not forward.ok:
        return forward
    backward = check_simulation(t2, t, group, topology, budget)
    if not backward.ok:
        return EquivalenceReport(
            EquivalenceVerdict.SIMULATES,
            forward.witnesses,
            failing=backward.failing,
            cases_checked=forward.cases_checked + backward.cases_checked,
        )
    return EquivalenceReport(
        EquivalenceVerdict.EQUIVALENT,
        forward.witnesses,
        cases_checked=forward.cases_checked + backward.cases_checked,
        partial=forward.partial or backward.partial,
    )


def is_gauge_invariant(variant: RuleVariant, group: GaugeGroup, topology: Ring) -> bool:
    """``F(gamma(c)) == gamma(F(c))`` for every ``c`` and ``gamma`` of the ring (Z = identity)."""
    configs, gammas = _frame(group, topology, variant)
    conv = variant.base.convention
    for c in configs:
        fc = variant(c)
        for gamma in gammas:
            if variant(apply_global(gamma, c, conv)) != apply_global(gamma, fc, conv):
                return False
    return True


def check_proposition_statements(
    t: RuleVariant, t2: RuleVariant, group: GaugeGroup, topology: Ring, budget: Optional[int] = None
) -> EquivalenceReport:
    """Evaluate the three characterizations of "t is simulated by t2" separately.

    (1) for all c, some gamma, gamma' with gamma(T c) = T'(gamma' c)
    (2) for all c, some gamma with T c = T'(gamma c)
    (3) for all c and all gamma, some gamma' with gamma(T c) = T'(gamma' c)

    They are guaranteed to agree when both rules are gauge-invariant under
    ``Z = identity``; ``hypotheses_hold`` records whether that was the case.
    """
    if budget is not None and _enumeration_size(group, topology) > budget:
        return EquivalenceReport(EquivalenceVerdict.SIMULATES, partial=True)
    configs, gammas = _frame(group, topology, t, t2)
    conv = t.base.convention
    identity = GaugeTransformation(topology, group.n)
    cases = 0

    def simulated_by(c, gamma) -> Optional[GaugeTransformation]:
        nonlocal cases
        target = apply_global(gamma, t(c), conv)
        for gamma2 in gammas:
            cases += 1
            if t2(apply_global(gamma2, c, conv)) == target:
                return gamma2
        return None

    s1 = all(any(simulated_by(c, g) is not None for g in gammas) for c in configs)
    s2 = all(simulated_by(c, identity) is not None for c in configs)
    s3 = all(all(simulated_by(c, g) is not None for g in gammas) for c in configs)

    hyp = is_gauge_invariant(t, group, topology) and is_gauge_invariant(t2, group, topology)
    sim = check_simulation(t, t2, group, topology)
    return EquivalenceReport(
        sim.verdict,
        sim.witnesses,
        failing=sim.failing,
        cases_checked=cases,
        statements=(s1, s2, s3),
        hypotheses_hold=hyp,
    )


def gauge_fix(variants: Sequence[RuleVariant], group: GaugeGroup, topology: Ring) -> RuleVariant:
    """Pick one representative among pairwise gauge-equivalent variants.

    A variant without post-transformation wins; otherwise the one whose post
    assignment is lexicographically least.
    """
    if not variants:
        raise ValueError("gauge_fix needs at least one variant")
    for i in range(len(variants)):
        for j in range(i + 1, len(variants)):
            if check_equivalence(variants[i], variants[j], group, topology).verdict is not EquivalenceVerdict.EQUIVALENT:
                raise NotEquivalentError(i, j)
    for v in variants:
        if v.post_is_identity():
            return v
    return min(variants, key=RuleVariant.sort_key)
