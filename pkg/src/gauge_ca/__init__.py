"""Gauge-invariant cellular automata: simulation and machine-checked invariance."""

from .classical_gi_ca import LinkRule, bare_rule, gauged_rule, run, step, step_bare, step_gauged
from .gauge_group import (
    Convention,
    GaugeGroup,
    GaugeTransformation,
    abelian_group,
    apply_global,
    apply_local,
    enumerate_transformations,
    symmetric_group,
)
from .lattice import Cell, GaugedConfiguration, Line, MatterConfiguration, Ring, make_configuration, support
from .permutation import GaugeElement, compose

__version__ = "0.1.0"
