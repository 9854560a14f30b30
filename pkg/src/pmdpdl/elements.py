"""Chain elements and their polarization-only Jones operators.

A network is an ordered list of three element kinds: birefringent delay
sections (Pmd), attenuation elements (Pdl) and ideal polarizers. The delay
action of a Pmd lives in the pulse engine; its operator here is only the
carrier-phase rotation, which is the identity at omega0 = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polarization import (
    Axis3,
    JonesVector,
    pdl_operator,
    pmd_phase_operator,
    projector,
)


@dataclass(frozen=True)
class Pmd:
    """Birefringent delay: differential group delay dgd along the given axis."""

    axis: Axis3
    dgd: float

    def __post_init__(self):
        if not (math.isfinite(self.dgd) and self.dgd >= 0):
            raise ValueError(f"dgd must be >= 0 and finite, got {self.dgd!r}")


@dataclass(frozen=True)
class Pdl:
    """Polarization-dependent attenuation of strength mu along the given axis."""

    axis: Axis3
    mu: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu >= 0):
            raise ValueError(f"mu must be >= 0 and finite, got {self.mu!r}")


@dataclass(frozen=True)
class Polarizer:
    """Ideal polarizer transmitting the given (normalized) state."""

    state: JonesVector

    def __post_init__(self):
        self.state.require_normalized("polarizer state")


Element = Pmd | Pdl | Polarizer


def element_operator(element: Element, omega0: float = 0.0) -> np.ndarray:
    """2x2 Jones operator of one element (the delay itself excluded)."""
    if isinstance(element, Pmd):
        return pmd_phase_operator(element.axis, element.dgd, omega0)
    if isinstance(element, Pdl):
        return pdl_operator(element.axis, element.mu)
    if isinstance(element, Polarizer):
        return projector(element.state)
    raise TypeError(f"not a network element: {element!r}")
