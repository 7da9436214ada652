"""Two-objective constrained evaluation of a dam design.

fit1 is the concrete volume in cubic meters; fit2 is the worst (largest)
Willam-Warnke margin over all stress sample points and load cases, so
negative fit2 means the whole body stays inside the failure surface.
Constraints are the geometric/stability set (radius ordering, overhang
slope, central angle) reduced to a single non-negative violation sum;
a design is feasible iff that sum is zero.

Degenerate geometry (non-positive interpolated radius or thickness) is
not an error: the design is marked infeasible and receives the
configured penalty-ceiling objective values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import willam_warnke as ww
from .geometry import (
    CanyonProfile,
    ControlLevels,
    DamGeometry,
    DegenerateGeometryError,
    DesignVector,
    LOWER_BOUNDS,
    UPPER_BOUNDS,
)
from .stress_model import LoadCase, evaluate_stresses, sample_grid

__all__ = ["Evaluation", "DamProblem", "PENALTY_FIT1", "PENALTY_FIT2"]

# worst-case objective ceilings for degenerate designs
PENALTY_FIT1 = 3.4e5
PENALTY_FIT2 = 1.3


@dataclass(frozen=True)
class Evaluation:
    fit1: float
    fit2: float
    violation: float
    feasible: bool
    diagnostics: dict = field(default_factory=dict)


@dataclass
class DamProblem:
    """Bundles geometry, stress surrogate, and failure criterion into the
    constrained two-objective evaluation used by the optimizer."""

    levels: ControlLevels = field(default_factory=ControlLevels.evenly_spaced)
    canyon: CanyonProfile | None = None
    strength: ww.StrengthParams = field(default_factory=ww.StrengthParams)
    load_cases: tuple = (
        LoadCase(kind="hydrostatic"),
        LoadCase(kind="pseudo_seismic"),
    )
    gamma_allow: float = 0.65
    quadrature_order: int = 32
    n_depths: int = 6
    n_arc: int = 9
    moment_share: float = 0.02
    penalty_fit1: float = PENALTY_FIT1
    penalty_fit2: float = PENALTY_FIT2
    lower: np.ndarray = field(default_factory=lambda: LOWER_BOUNDS.copy())
    upper: np.ndarray = field(default_factory=lambda: UPPER_BOUNDS.copy())

    def __post_init__(self):
        if self.canyon is None:
            self.canyon = CanyonProfile(
                h=self.levels.h, w_crest=135.0, w_base=0.35 * 135.0
            )
        self.coeffs = ww.solve_coefficients(self.strength)

    @property
    def dimension(self) -> int:
        return 20

    @property
    def bounds(self):
        return self.lower, self.upper

    def _penalized(self, violation: float, diag: dict) -> Evaluation:
        return Evaluation(
            fit1=self.penalty_fit1,
            fit2=self.penalty_fit2,
            violation=violation,
            feasible=False,
            diagnostics=diag,
        )

    def evaluate(self, design) -> Evaluation:
        if isinstance(design, DesignVector):
            x = design.to_array()
        else:
            x = np.asarray(design, dtype=float)
            design = DesignVector.from_array(x)
        if np.any(x < self.lower - 1e-9) or np.any(x > self.upper + 1e-9):
            raise ValueError("design outside variable bounds")

        geo = DamGeometry(design=design, levels=self.levels, canyon=self.canyon)

        # ordering constraints stay computable even for degenerate shapes,
        # keeping a violation gradient among penalized designs
        order_cons = design.rd / design.ru - 1.0
        try:
            geo.check_radii()
        except DegenerateGeometryError:
            viol = float(np.maximum(order_cons, 0.0).sum()) + 1.0
            return self._penalized(viol, {"degenerate": "radius"})

        cons = geo.geometric_constraints(gamma_allow=self.gamma_allow)
        violation = float(np.maximum(cons, 0.0).sum())

        fit1 = geo.volume(self.quadrature_order)

        try:
            grid = sample_grid(geo, self.canyon, self.n_depths, self.n_arc)
            fld = evaluate_stresses(
                geo, self.canyon, self.load_cases, grid, self.moment_share
            )
        except DegenerateGeometryError:
            return self._penalized(violation + 1.0, {"degenerate": "thickness"})

        margins = ww.criterion_values(fld.states, self.strength, self.coeffs)
        fit2 = float(margins.max())
        validity = ww.hydrostatic_validity(fld.states, self.strength)
        n_invalid = int((~validity).sum())

        return Evaluation(
            fit1=float(fit1),
            fit2=fit2,
            violation=violation,
            feasible=violation == 0.0,
            diagnostics={
                "constraints": cons.tolist(),
                "validity_warnings": n_invalid,
            },
        )

    def evaluate_batch(self, X: np.ndarray):
        """(n, 20) designs -> objective array (n, 2) and violation array (n,)."""
        X = np.asarray(X, dtype=float)
        F = np.empty((len(X), 2))
        viol = np.empty(len(X))
        for i, row in enumerate(X):
            e = self.evaluate(row)
            F[i] = (e.fit1, e.fit2)
            viol[i] = e.violation
        return F, viol
