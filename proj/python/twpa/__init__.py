"""Josephson travelling-wave parametric amplifier models (classical and quantum)."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

GHz = 1e9
pH = 1e-12
pF = 1e-12
fF = 1e-15
um = 1e-6


def reference_line(junction_capacitance=329 * fF):
    """2000-cell line with 10 um cells, 100 pH junctions and 39 fF to ground."""
    return LineParams.from_inductance(10 * um, 100 * pH, junction_capacitance, 39 * fF, 2000)  # noqa: F405


def reference_resonator():
    return ResonatorParams(10 * fF, 100 * pH, 7.036 * pF)  # noqa: F405
