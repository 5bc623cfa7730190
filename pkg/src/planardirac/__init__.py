"""Verification toolkit for the two-component planar Dirac equation.

Layers:

- ``algebra``: exact 2x2 Pauli/gamma/SO(2,1)-generator algebra and the
  closed-form matrix exponential.
- ``planewave``: plane-wave solutions, indefinite-metric orthonormalization,
  and residual oracles for the Dirac and Klein-Gordon operators.
- ``fock``: finite-mode second quantization on a 4^M-dimensional space,
  anti-commutator checks, Hamiltonian positivity, and hole-electron pair
  operators with their bosonic commutators.
- ``nonrel``: spectral time evolution, the non-relativistic (Schrodinger)
  reduction, minimal coupling, and a Landau-level validation.
- ``cli``: subcommands running each verification suite with JSON reports.
"""

from .planewave import (
    Branch,
    DegenerateNormalizationError,
    Momentum,
    PhysicalParams,
    PlaneWaveSolution,
    dispersion_omega,
    plane_wave,
)

__all__ = [
    "Branch",
    "DegenerateNormalizationError",
    "Momentum",
    "PhysicalParams",
    "PlaneWaveSolution",
    "dispersion_omega",
    "plane_wave",
]

__version__ = "0.1.0"
