"""Plain-text scenario files.

A scenario is a sequence of sections, each opened by ``[name]`` on its own
line and followed by ``key = value`` lines. ``#`` starts a comment. Grammar::

    file      := { blank | comment | section }
    section   := "[" name "]" NEWLINE { entry }
    entry     := key "=" value

    [model]     kind = abelian | nonabelian | quantum
                n = <int>                       (nonabelian, >= 3)
                rule = gauged | bare            (classical, default gauged)
                convention = covariant | literal
                mass, epsilon, charge = <real>  (quantum)
                l_max = <int>                   (quantum)
                interaction = before | after    (quantum, default before)
    [topology]  kind = ring | line
                size = <int>                    (ring)
                window = <int>..<int>           (line, rendering range)
    [matter]    <pos> = <left>,<right>
    [field]     <pos> = <cycles>                (classical, e.g. (0 1))
                <pos> = <int>                   (quantum link counter)
    [gauge]     when = start | end | both
                <pos> = <cycles>                (classical)
                phi(<pos>) = <real>             (quantum)
    [run]       steps = <int>
                post = <cycles>                 (classical; uniform transformation after each step)
                checks = <name>, <name>, ...
                seed, trials, check_size, check_steps = <int>

``when = both`` applies the transformation before the run and its inverse
after it. Unknown sections or keys, repeated keys and out-of-range values are
reported with their line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from .gauge_group import Convention
from .lattice import Line, Ring, Topology
from .permutation import GaugeElement
from .qca import ScatteringParams

SECTIONS = ("model", "topology", "matter", "field", "gauge", "run")
CLASSICAL_CHECKS = ("local_invariance", "global_invariance", "line_invariance", "equivalence", "proposition")
QUANTUM_CHECKS = ("quantum_invariance", "quantum_norm")

_SECTION_RE = re.compile(r"^\[\s*([A-Za-z_]+)\s*\]$")
_ENTRY_RE = re.compile(r"^([^=]+?)\s*=\s*(.*)$")
_PHI_RE = re.compile(r"^phi\(\s*(-?\d+)\s*\)$")
_WINDOW_RE = re.compile(r"^(-?\d+)\s*\.\.\s*(-?\d+)$")


class ScenarioError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class Scenario:
    kind: str = "abelian"  # abelian | nonabelian | quantum
    n: int = 2
    rule: str = "gauged"
    convention: Convention = Convention.COVARIANT
    params: Optional[ScatteringParams] = None
    topology: Topology = field(default_factory=lambda: Ring(8))
    window: Optional[tuple[int, int]] = None
    matter: tuple[tuple[int, tuple[int, int]], ...] = ()
    field: tuple[tuple[int, Union[GaugeElement, int]], ...] = ()
    gauge: tuple[tuple[int, Union[GaugeElement, float]], ...] = ()
    gauge_when: str = "start"
    steps: int = 0
    post: Optional[GaugeElement] = None
    checks: tuple[str, ...] = ()
    seed: int = 0
    trials: int = 20
    check_size: int = 2
    check_steps: int = 1

    @property
    def quantum(self) -> bool:
        return self.kind == "quantum"


@dataclass
class _Entry:
    key: str
    value: str
    line: int
    key_col: int
    value_col: int


def _tokenize(text: str) -> dict[str, list[_Entry]]:
    sections: dict[str, list[_Entry]] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip()) + 1
        m = _SECTION_RE.match(stripped)
        if m:
            name = m.group(1).lower()
            if name not in SECTIONS:
                raise ScenarioError(lineno, indent, f"unknown section [{name}]")
            if name in sections:
                raise ScenarioError(lineno, indent, f"section [{name}] appears twice")
            sections[name] = []
            current = name
            continue
        if stripped.startswith("["):
            raise ScenarioError(lineno, indent, "malformed section header")
        m = _ENTRY_RE.match(stripped)
        if not m:
            raise ScenarioError(lineno, indent, "expected 'key = value'")
        if current is None:
            raise ScenarioError(lineno, indent, "entry before any section")
        key, value = m.group(1).strip(), m.group(2).strip()
        if not value:
            raise ScenarioError(lineno, indent + len(stripped), f"missing value for '{key}'")
        value_col = indent + stripped.index("=") + 1
        value_col += len(stripped[stripped.index("=") + 1 :]) - len(stripped[stripped.index("=") + 1 :].lstrip())
        sections[current].append(_Entry(key, value, lineno, indent, value_col))
    return sections


def _keyed(entries: list[_Entry], allowed: tuple[str, ...], section: str) -> dict[str, _Entry]:
    out: dict[str, _Entry] = {}
    for e in entries:
        if e.key not in allowed:
            raise ScenarioError(e.line, e.key_col, f"unknown key '{e.key}' in [{section}]")
        if e.key in out:
            raise ScenarioError(e.line, e.key_col, f"key '{e.key}' repeated in [{section}]")
        out[e.key] = e
    return out


def _int(e: _Entry, lo: Optional[int] = None) -> int:
    try:
        v = int(e.value)
    except ValueError:
        raise ScenarioError(e.line, e.value_col, f"'{e.key}' expects an integer, got '{e.value}'") from None
    if lo is not None and v < lo:
        raise ScenarioError(e.line, e.value_col, f"'{e.key}' must be >= {lo}, got {v}")
    return v


def _float(e: _Entry) -> float:
    try:
        return float(e.value)
    except ValueError:
        raise ScenarioError(e.line, e.value_col, f"'{e.key}' expects a real number, got '{e.value}'") from None


def _choice(e: _Entry, options: tuple[str, ...]) -> str:
    v = e.value.lower()
    if v not in options:
        raise ScenarioError(e.line, e.value_col, f"'{e.key}' must be one of {', '.join(options)}; got '{e.value}'")
    return v


def _position(e: _Entry, topology: Topology, text: Optional[str] = None) -> int:
    text = e.key if text is None else text
    try:
        x = int(text)
    except ValueError:
        raise ScenarioError(e.line, e.key_col, f"expected an integer position, got '{text}'") from None
    if isinstance(topology, Ring) and not 0 <= x < topology.size:
        raise ScenarioError(e.line, e.key_col, f"position {x} outside ring 0..{topology.size - 1}")
    return x


def _cycles(e: _Entry, n: int) -> GaugeElement:
    try:
        return GaugeElement.from_cycles(e.value, n)
    except ValueError as exc:
        raise ScenarioError(e.line, e.value_col, f"bad group element '{e.value}' for N={n}: {exc}") from None


def _unique_positions(pairs, entries, what):
    seen = set()
    for (x, _), e in zip(pairs, entries):
        if x in seen:
            raise ScenarioError(e.line, e.key_col, f"{what} position {x} given twice")
        seen.add(x)


def parse_scenario(text: str) -> Scenario:
    sections = _tokenize(text)
    if "model" not in sections:
        raise ScenarioError(1, 1, "missing [model] section")

    model = _keyed(
        sections["model"],
        ("kind", "n", "rule", "convention", "mass", "epsilon", "charge", "l_max", "interaction"),
        "model",
    )
    if "kind" not in model:
        raise ScenarioError(sections["model"][0].line if sections["model"] else 1, 1, "[model] needs 'kind'")
    kind = _choice(model["kind"], ("abelian", "nonabelian", "quantum"))
    quantum = kind == "quantum"
    classical_only = ("n", "rule", "convention")
    quantum_only = ("mass", "epsilon", "charge", "l_max", "interaction")
    for key, e in model.items():
        if quantum and key in classical_only or not quantum and key in quantum_only:
            raise ScenarioError(e.line, e.key_col, f"'{key}' does not apply to a {kind} model")

    if kind == "abelian":
        if "n" in model:
            e = model["n"]
            if _int(e) != 2:
                raise ScenarioError(e.line, e.value_col, "the abelian model has N = 2")
        n = 2
    elif kind == "nonabelian":
        if "n" not in model:
            raise ScenarioError(model["kind"].line, model["kind"].value_col, "nonabelian model needs 'n' (N undefined)")
        n = _int(model["n"])
        if n < 3:
            raise ScenarioError(model["n"].line, model["n"].value_col, f"nonabelian model needs N >= 3, got {n}")
    else:
        n = 2

    rule = _choice(model["rule"], ("gauged", "bare")) if "rule" in model else "gauged"
    convention = Convention(_choice(model["convention"], ("covariant", "literal"))) if "convention" in model else Convention.COVARIANT
    params = None
    if quantum:
        defaults = ScatteringParams()
        try:
            params = ScatteringParams(
                mass=_float(model["mass"]) if "mass" in model else defaults.mass,
                epsilon=_float(model["epsilon"]) if "epsilon" in model else defaults.epsilon,
                charge=_float(model["charge"]) if "charge" in model else defaults.charge,
                l_max=_int(model["l_max"], 0) if "l_max" in model else defaults.l_max,
                phase_first=(_choice(model["interaction"], ("before", "after")) == "before")
                if "interaction" in model
                else True,
            )
        except ValueError as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(model["kind"].line, 1, str(exc)) from None

    topo_entries = _keyed(sections.get("topology", []), ("kind", "size", "window"), "topology")
    window = None
    if "kind" not in topo_entries or _choice(topo_entries["kind"], ("ring", "line")) == "ring":
        if "window" in topo_entries:
            e = topo_entries["window"]
            raise ScenarioError(e.line, e.key_col, "'window' only applies to a line")
        topology: Topology = Ring(_int(topo_entries["size"], 1)) if "size" in topo_entries else Ring(8)
    else:
        if quantum:
            e = topo_entries["kind"]
            raise ScenarioError(e.line, e.value_col, "the quantum model runs on a ring only")
        if "size" in topo_entries:
            e = topo_entries["size"]
            raise ScenarioError(e.line, e.key_col, "'size' only applies to a ring")
        topology = Line()
        if "window" in topo_entries:
            e = topo_entries["window"]
            m = _WINDOW_RE.match(e.value)
            if not m or int(m.group(1)) > int(m.group(2)):
                raise ScenarioError(e.line, e.value_col, f"window must read 'a..b' with a <= b, got '{e.value}'")
            window = (int(m.group(1)), int(m.group(2)))

    bound = 2 if quantum else n
    matter = []
    matter_entries = sections.get("matter", [])
    for e in matter_entries:
        x = _position(e, topology)
        parts = [p.strip() for p in e.value.split(",")]
        if len(parts) != 2:
            raise ScenarioError(e.line, e.value_col, f"cell must read 'left,right', got '{e.value}'")
        try:
            cell = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise ScenarioError(e.line, e.value_col, f"cell components must be integers, got '{e.value}'") from None
        for v in cell:
            if not 0 <= v < bound:
                raise ScenarioError(e.line, e.value_col, f"component {v} outside 0..{bound - 1} (N={bound})")
        matter.append((x, cell))
    _unique_positions(matter, matter_entries, "matter")

    fld = []
    field_entries = sections.get("field", [])
    for e in field_entries:
        x = _position(e, topology)
        if quantum:
            l = _int(e)
            if abs(l) > params.l_max:
                raise ScenarioError(e.line, e.value_col, f"counter {l} outside [-{params.l_max}, {params.l_max}]")
            fld.append((x, l))
        else:
            fld.append((x, _cycles(e, n)))
    _unique_positions(fld, field_entries, "field")

    gauge = []
    when = "start"
    gauge_entries = []
    for e in sections.get("gauge", []):
        if e.key == "when":
            if any(g.key == "when" for g in gauge_entries):
                raise ScenarioError(e.line, e.key_col, "key 'when' repeated in [gauge]")
            when = _choice(e, ("start", "end", "both"))
            gauge_entries.append(e)
            continue
        if quantum:
            m = _PHI_RE.match(e.key)
            if not m:
                raise ScenarioError(e.line, e.key_col, f"quantum gauge entries read 'phi(<pos>) = <real>', got '{e.key}'")
            gauge.append((_position(e, topology, m.group(1)), _float(e)))
        else:
            gauge.append((_position(e, topology), _cycles(e, n)))
        gauge_entries.append(e)
    _unique_positions(gauge, [e for e in gauge_entries if e.key != "when"], "gauge")

    run = _keyed(
        sections.get("run", []), ("steps", "post", "checks", "seed", "trials", "check_size", "check_steps"), "run"
    )
    steps = _int(run["steps"], 0) if "steps" in run else 0
    post = None
    if "post" in run:
        if quantum:
            e = run["post"]
            raise ScenarioError(e.line, e.key_col, "'post' does not apply to a quantum model")
        post = _cycles(run["post"], n)
    checks: tuple[str, ...] = ()
    if "checks" in run:
        e = run["checks"]
        names = [c.strip() for c in e.value.split(",") if c.strip()]
        allowed = QUANTUM_CHECKS if quantum else CLASSICAL_CHECKS
        for c in names:
            if c not in allowed:
                raise ScenarioError(e.line, e.value_col, f"unknown check '{c}' for a {kind} model")
        if "equivalence" in names and post is None:
            raise ScenarioError(e.line, e.value_col, "the equivalence check needs 'post' in [run]")
        checks = tuple(names)
    return Scenario(
        kind=kind,
        n=n,
        rule=rule,
        convention=convention,
        params=params,
        topology=topology,
        window=window,
        matter=tuple(sorted(matter)),
        field=tuple(sorted(fld)),
        gauge=tuple(sorted(gauge)),
        gauge_when=when,
        steps=steps,
        post=post,
        checks=checks,
        seed=_int(run["seed"], 0) if "seed" in run else 0,
        trials=_int(run["trials"], 1) if "trials" in run else 20,
        check_size=_int(run["check_size"], 1) if "check_size" in run else 2,
        check_steps=_int(run["check_steps"], 1) if "check_steps" in run else 1,
    )


def render_scenario(s: Scenario) -> str:
    """Canonical text of a scenario; ``parse_scenario`` of it equals ``s``."""
    out = ["[model]", f"kind = {s.kind}"]
    if s.quantum:
        p = s.params
        out += [
            f"mass = {p.mass!r}",
            f"epsilon = {p.epsilon!r}",
            f"charge = {p.charge!r}",
            f"l_max = {p.l_max}",
            f"interaction = {'before' if p.phase_first else 'after'}",
        ]
    else:
        if s.kind == "nonabelian":
            out.append(f"n = {s.n}")
        out += [f"rule = {s.rule}", f"convention = {s.convention.value}"]
    out += ["", "[topology]"]
    if isinstance(s.topology, Ring):
        out += ["kind = ring", f"size = {s.topology.size}"]
    else:
        out.append("kind = line")
        if s.window is not None:
            out.append(f"window = {s.window[0]}..{s.window[1]}")
    out += ["", "[matter]"] + [f"{x} = {l},{r}" for x, (l, r) in s.matter]
    out += ["", "[field]"] + [f"{x} = {v if s.quantum else v.to_cycles()}" for x, v in s.field]
    out += ["", "[gauge]", f"when = {s.gauge_when}"]
    if s.quantum:
        out += [f"phi({x}) = {v!r}" for x, v in s.gauge]
    else:
        out += [f"{x} = {g.to_cycles()}" for x, g in s.gauge]
    out += ["", "[run]", f"steps = {s.steps}"]
    if s.post is not None:
        out.append(f"post = {s.post.to_cycles()}")
    if s.checks:
        out.append(f"checks = {', '.join(s.checks)}")
    out += [f"seed = {s.seed}", f"trials = {s.trials}", f"check_size = {s.check_size}", f"check_steps = {s.check_steps}"]
    return "\n".join(out) + "\n"


def with_steps(s: Scenario, steps: int) -> Scenario:
    return replace(s, steps=steps)
