"""Command-line scenario runner.

    gauge-ca simulate FILE [--format text|svg] [--steps N] [--out PATH]
    gauge-ca check FILE [--seed N]

``check`` prints one line per requested check,
``PASS|FAIL <name> cases=<n> [witness=...]``, and exits 0 iff every check
passes. Parse errors and failures of the checking machinery itself (as
opposed to a check failing) exit with status 2.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

from .classical_gi_ca import LinkRule
from .equivalence import (
    EquivalenceVerdict,
    RuleVariant,
    check_equivalence,
    check_proposition_statements,
)
from .gauge_group import GaugeGroup, GaugeTransformation, abelian_group, apply_global, symmetric_group
from .invariance import check_global_invariance, check_line_invariance, check_local_invariance
from .lattice import GaugedConfiguration, MatterConfiguration, Ring
from .qca import (
    QuantumState,
    TruncationError,
    check_q_invariance,
    evolve,
    gauge_transform_q,
)
from .render import render_spacetime
from .scenario import Scenario, ScenarioError, parse_scenario

QUANTUM_TOLERANCE = 1e-10
NORM_TOLERANCE = 1e-9
GLOBAL_BUDGET = 200_000


def group_of(s: Scenario) -> GaugeGroup:
    return abelian_group() if s.kind == "abelian" else symmetric_group(s.n)


def rule_of(s: Scenario) -> LinkRule:
    return LinkRule(s.n, s.rule, s.convention)


def variant_of(s: Scenario, topology=None) -> RuleVariant:
    topology = topology or s.topology
    if s.post is None:
        return RuleVariant(rule_of(s))
    return RuleVariant.uniform(rule_of(s), s.post, topology)


def initial_classical(s: Scenario) -> GaugedConfiguration:
    matter = MatterConfiguration(s.topology, s.n, s.matter)
    return GaugedConfiguration(matter, s.field)


def initial_quantum(s: Scenario) -> QuantumState:
    n = s.topology.size
    occ = [(0, 0)] * n
    for x, cell in s.matter:
        occ[x] = cell
    field = [0] * n
    for x, l in s.field:
        field[x] = l
    return QuantumState.basis(occ, field)


def _transformation(s: Scenario) -> GaugeTransformation:
    return GaugeTransformation(s.topology, s.n, s.gauge)


def _phases(s: Scenario) -> dict[int, float]:
    return dict(s.gauge)


@dataclass
class Simulation:
    trace: list
    labels: list[str]

    @property
    def final(self):
        return self.trace[-1]


def simulate(s: Scenario) -> Simulation:
    """Run a scenario. A gauge transformation applied after the run shows up as an extra row ``g``."""
    start = s.gauge and s.gauge_when in ("start", "both")
    end = s.gauge and s.gauge_when in ("end", "both")
    labels = [str(t) for t in range(s.steps + 1)]
    if s.quantum:
        psi = initial_quantum(s)
        if start:
            psi = gauge_transform_q(_phases(s), psi)
        trace = evolve(s.params, psi, s.steps)
        if end:
            sign = -1.0 if s.gauge_when == "both" else 1.0
            trace.append(gauge_transform_q({x: sign * p for x, p in s.gauge}, trace[-1]))
            labels.append("g")
        return Simulation(trace, labels)
    variant = variant_of(s)
    conv = s.convention
    config = initial_classical(s)
    gamma = _transformation(s)
    if start:
        config = apply_global(gamma, config, conv)
    trace = [config]
    for _ in range(s.steps):
        trace.append(variant(trace[-1]))
    if end:
        post = gamma.inverse() if s.gauge_when == "both" else gamma
        trace.append(apply_global(post, trace[-1], conv))
        labels.append("g")
    return Simulation(trace, labels)


def render(s: Scenario, format: str = "text") -> str:
    sim = simulate(s)
    return render_spacetime(sim.trace, format, sim.labels, s.window)


# -- checks ----------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""
    error: bool = False

    def line(self) -> str:
        if self.error:
            return f"ERROR {self.name} {self.detail}"
        tail = f" {self.detail}" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} cases={self.cases}{tail}"


def _check_local(s: Scenario) -> CheckResult:
    r = check_local_invariance(group_of(s), rule_of(s))
    return CheckResult("local_invariance", r.ok, r.cases_checked, "" if r.ok else f"witness={r.witness}")


def _check_global(s: Scenario) -> CheckResult:
    ring = Ring(s.check_size)
    r = check_global_invariance(group_of(s), rule_of(s), ring, s.check_steps, budget=GLOBAL_BUDGET)
    detail = f"ring={s.check_size} steps={s.check_steps}" + (" partial" if r.partial else "")
    if not r.ok:
        detail += f" witness={r.witness}"
    return CheckResult("global_invariance", r.ok, r.cases_checked, detail)


def _check_line(s: Scenario) -> CheckResult:
    r = check_line_invariance(group_of(s), rule_of(s), max(s.check_steps, 1), s.trials, s.seed)
    return CheckResult("line_invariance", r.ok, r.cases_checked, f"seed={s.seed}" + ("" if r.ok else f" witness={r.witness}"))


def _check_equivalence(s: Scenario) -> CheckResult:
    ring = Ring(s.check_size)
    t = RuleVariant(rule_of(s))
    t2 = variant_of(s, ring)
    r = check_equivalence(t, t2, group_of(s), ring)
    ok = r.verdict is EquivalenceVerdict.EQUIVALENT
    detail = f"ring={s.check_size} verdict={r.verdict.value.replace(' ', '_')}"
    if r.failing is not None:
        detail += f" witness={r.failing!r}"
    return CheckResult("equivalence", ok, r.cases_checked, detail)


def _check_proposition(s: Scenario) -> CheckResult:
    ring = Ring(s.check_size)
    r = check_proposition_statements(RuleVariant(rule_of(s)), variant_of(s, ring), group_of(s), ring)
    # the characterization only promises agreement under its hypotheses
    ok = (not r.hypotheses_hold) or r.statements_agree
    flags = "".join("T" if b else "F" for b in r.statements)
    detail = f"statements={flags} hypotheses={'hold' if r.hypotheses_hold else 'violated'}"
    return CheckResult("proposition", ok, r.cases_checked, detail)


def _check_quantum_invariance(s: Scenario) -> CheckResult:
    rng = random.Random(s.seed)
    trace = evolve(s.params, gauge_transform_q(_phases(s), initial_quantum(s)), max(s.steps - 1, 0))
    worst = 0.0
    cases = 0
    for _ in range(s.trials):
        phi = [rng.uniform(0, 2 * math.pi) for _ in range(s.topology.size)]
        for psi in trace:
            worst = max(worst, check_q_invariance(s.params, psi, phi))
            cases += 1
    return CheckResult("quantum_invariance", worst <= QUANTUM_TOLERANCE, cases, f"seed={s.seed} max_commutator={worst:.3e}")


def _check_quantum_norm(s: Scenario) -> CheckResult:
    trace = evolve(s.params, initial_quantum(s), s.steps)
    dev = max(abs(psi.norm() - 1.0) for psi in trace)
    return CheckResult("quantum_norm", dev <= NORM_TOLERANCE, len(trace), f"max_deviation={dev:.3e}")


CHECKS = {
    "local_invariance": _check_local,
    "global_invariance": _check_global,
    "line_invariance": _check_line,
    "equivalence": _check_equivalence,
    "proposition": _check_proposition,
    "quantum_invariance": _check_quantum_invariance,
    "quantum_norm": _check_quantum_norm,
}


def run_checks(s: Scenario) -> tuple[int, str]:
    """Execute the scenario's checks. Exit status 0 all pass, 1 some fail, 2 machinery error."""
    results = []
    for name in s.checks:
        try:
            results.append(CHECKS[name](s))
        except (TruncationError, ValueError) as exc:
            results.append(CheckResult(name, False, 0, f"{type(exc).__name__}: {exc}", error=True))
    status = 2 if any(r.error for r in results) else (0 if all(r.passed for r in results) else 1)
    return status, "\n".join(r.line() for r in results) + ("\n" if results else "")


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gauge-ca", description="Gauge-invariant cellular automata scenarios.")
    sub = p.add_subparsers(dest="command", required=True)
    sim = sub.add_parser("simulate", help="run a scenario and draw its space-time diagram")
    sim.add_argument("file", type=Path)
    sim.add_argument("--format", choices=("text", "svg"), default="text")
    sim.add_argument("--steps", type=int, help="override [run] steps")
    sim.add_argument("--out", type=Path, help="write the diagram here instead of stdout")
    chk = sub.add_parser("check", help="run the checks listed in a scenario")
    chk.add_argument("file", type=Path)
    chk.add_argument("--seed", type=int, help="override [run] seed")
    chk.add_argument("--steps", type=int, help="override [run] steps")
    chk.add_argument("--out", type=Path, help="write the report here as well")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        s = parse_scenario(args.file.read_text())
    except ScenarioError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 2
    if args.steps is not None:
        if args.steps < 0:
            print("--steps must be non-negative", file=sys.stderr)
            return 2
        s = replace(s, steps=args.steps)
    if args.command == "simulate":
        try:
            out = render(s, args.format)
        except TruncationError as exc:
            print(f"TruncationError: {exc}", file=sys.stderr)
            return 2
        if args.out:
            args.out.write_text(out)
        else:
            sys.stdout.write(out)
        return 0
    if args.seed is not None:
        if args.seed < 0:
            print("--seed must be non-negative", file=sys.stderr)
            return 2
        s = replace(s, seed=args.seed)
    status, report = run_checks(s)
    sys.stdout.write(report)
    if args.out:
        args.out.write_text(report)
    return status


if __name__ == "__main__":
    sys.exit(main())
