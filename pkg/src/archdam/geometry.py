"""Parabolic double-curvature arch dam geometry.

The dam is described by 20 shape variables: a crest overhang slope gamma,
a profile ratio beta, and crown thickness / upstream radius / downstream
radius at six control levels spaced evenly over the height. Thickness and
radii are interpolated over depth with a degree-5 Lagrange polynomial;
both faces are parabolic in the cross-valley coordinate.

Coordinate frame: z measured downward from the crest (z = 0 crest,
z = h base), x across the valley, y positive downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DegenerateGeometryError",
    "InvalidLevelsError",
    "ControlLevels",
    "CanyonProfile",
    "DesignVector",
    "DamGeometry",
    "DEFAULT_HEIGHT",
    "LOWER_BOUNDS",
    "UPPER_BOUNDS",
    "VARIABLE_NAMES",
    "lagrange_basis",
    "crown_profile_g",
    "central_angle_deg",
]

DEFAULT_HEIGHT = 142.65  # m, Morrow Point dam

VARIABLE_NAMES = (
    ["gamma", "beta"]
    + [f"tc{i}" for i in range(1, 7)]
    + [f"ru{i}" for i in range(1, 7)]
    + [f"rd{i}" for i in range(1, 7)]
)

# Variable bounds, ordered as VARIABLE_NAMES.
LOWER_BOUNDS = np.array(
    [0.0, 0.5, 3, 5, 7, 9, 11, 12, 104, 91, 78, 65, 52, 39, 104, 91, 78, 65, 52, 39],
    dtype=float,
)
UPPER_BOUNDS = np.array(
    [0.3, 1.0, 10, 14, 19, 23, 26, 31, 135, 118, 101, 85, 68, 51, 135, 118, 101, 85, 68, 51],
    dtype=float,
)


class DegenerateGeometryError(ValueError):
    """Interpolated radius is non-positive somewhere in the dam body."""


class InvalidLevelsError(ValueError):
    """Control levels are not strictly increasing."""


@dataclass(frozen=True)
class ControlLevels:
    """Depths of the interpolation control levels, crest first."""

    h: float
    z: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        object.__setattr__(self, "z", z)
        if z.ndim != 1 or len(z) < 2 or np.any(np.diff(z) <= 0):
            raise InvalidLevelsError("control levels must be strictly increasing")
        if self.h <= 0:
            raise InvalidLevelsError("dam height must be positive")

    @classmethod
    def evenly_spaced(cls, h: float = DEFAULT_HEIGHT, n_segments: int = 5) -> "ControlLevels":
        return cls(h=h, z=np.linspace(0.0, h, n_segments + 1))

    @property
    def n_levels(self) -> int:
        return len(self.z)


@dataclass(frozen=True)
class CanyonProfile:
    """Symmetric trapezoidal valley: half-width linear in depth."""

    h: float
    w_crest: float
    w_base: float

    def __post_init__(self):
        if self.w_crest <= 0 or self.w_base <= 0:
            raise ValueError("canyon half-widths must be positive")
        if self.w_base > self.w_crest:
            raise ValueError("canyon must not widen with depth")

    def half_width(self, z):
        z = np.asarray(z, dtype=float)
        return self.w_crest + (self.w_base - self.w_crest) * np.clip(z / self.h, 0.0, 1.0)


@dataclass(frozen=True)
class DesignVector:
    """The 20 shape variables: gamma, beta, tc[6], ru[6], rd[6]."""

    gamma: float
    beta: float
    tc: np.ndarray
    ru: np.ndarray
    rd: np.ndarray

    def __post_init__(self):
        for name in ("tc", "ru", "rd"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (6,):
                raise ValueError(f"{name} must have exactly 6 entries")
            object.__setattr__(self, name, v)

    @classmethod
    def from_array(cls, x) -> "DesignVector":
        x = np.asarray(x, dtype=float)
        if x.shape != (20,):
            raise ValueError("design vector must have exactly 20 entries")
        return cls(gamma=float(x[0]), beta=float(x[1]), tc=x[2:8], ru=x[8:14], rd=x[14:20])

    def to_array(self) -> np.ndarray:
        return np.concatenate([[self.gamma, self.beta], self.tc, self.ru, self.rd])


def lagrange_basis(z, i: int, levels: ControlLevels):
    """i-th Lagrange basis polynomial (1-based level index) at depth z."""
    nodes = levels.z
    n = len(nodes)
    if not 1 <= i <= n:
        raise IndexError(f"level index {i} outside 1..{n}")
    z = np.asarray(z, dtype=float)
    num = np.ones_like(z)
    den = 1.0
    zi = nodes[i - 1]
    for m in range(n):
        if m == i - 1:
            continue
        num = num * (z - nodes[m])
        den *= zi - nodes[m]
    return num / den


def crown_profile_g(z, gamma: float, beta: float, h: float):
    """Upstream crown curve y = g(z); zero at the crest, slope zero at z = beta*h."""
    if h <= 0:
        raise ValueError("dam height must be positive")
    if beta == 0:
        raise ZeroDivisionError("beta must be non-zero")
    z = np.asarray(z, dtype=float)
    return gamma * z**2 / (2.0 * beta * h) - gamma * z


def central_angle_deg(half_width, ru):
    """Tangent-angle definition of the arch central angle, degrees."""
    return np.degrees(2.0 * np.arctan(np.asarray(half_width, dtype=float) / np.asarray(ru, dtype=float)))


class _LagrangeInterpolant:
    """Barycentric Lagrange interpolant with derivative, exact at the nodes."""

    def __init__(self, nodes: np.ndarray, values: np.ndarray):
        self.x = np.asarray(nodes, dtype=float)
        self.f = np.asarray(values, dtype=float)
        n = len(self.x)
        if len(self.f) != n:
            raise ValueError("nodes/values length mismatch")
        d = self.x[:, None] - self.x[None, :]
        np.fill_diagonal(d, 1.0)
        prod = d.prod(axis=1)
        if np.any(prod == 0.0):
            raise InvalidLevelsError("coincident control levels")
        self.w = 1.0 / prod
        # differentiation matrix for derivative values at the nodes
        D = (self.w[None, :] / self.w[:, None]) / np.where(d == 0.0, 1.0, d)
        np.fill_diagonal(D, 0.0)
        np.fill_diagonal(D, -D.sum(axis=1))
        self._D = D
        self._span = float(self.x[-1] - self.x[0])

    def _masks(self, z: np.ndarray):
        dz = z[:, None] - self.x[None, :]
        hit = np.abs(dz) <= 1e-12 * max(self._span, 1.0)
        at_node = hit.any(axis=1)
        return dz, hit, at_node

    def __call__(self, z):
        z_in = np.asarray(z, dtype=float)
        z1 = np.atleast_1d(z_in).astype(float)
        dz, hit, at_node = self._masks(z1)
        out = np.empty_like(z1)
        if at_node.any():
            out[at_node] = self.f[hit[at_node].argmax(axis=1)]
        off = ~at_node
        if off.any():
            r = self.w[None, :] / dz[off]
            out[off] = (r * self.f[None, :]).sum(axis=1) / r.sum(axis=1)
        return out.reshape(z_in.shape) if z_in.ndim else float(out[0])

    def derivative(self, z):
        z_in = np.asarray(z, dtype=float)
        z1 = np.atleast_1d(z_in).astype(float)
        dz, hit, at_node = self._masks(z1)
        out = np.empty_like(z1)
        if at_node.any():
            idx = hit[at_node].argmax(axis=1)
            out[at_node] = self._D[idx] @ self.f
        off = ~at_node
        if off.any():
            r = self.w[None, :] / dz[off]
            p = (r * self.f[None, :]).sum(axis=1) / r.sum(axis=1)
            num = (self.w[None, :] * (p[:, None] - self.f[None, :]) / dz[off] ** 2).sum(axis=1)
            out[off] = num / r.sum(axis=1)
        return out.reshape(z_in.shape) if z_in.ndim else float(out[0])


def _gauss_legendre(n: int, a, b):
    """Nodes and weights on [a, b]; a, b may be arrays (broadcast)."""
    t, w = np.polynomial.legendre.leggauss(n)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid[..., None] + half[..., None] * t, half[..., None] * w


@dataclass
class DamGeometry:
    """Evaluable dam shape: face surfaces, interpolants, constraints, volume."""

    design: DesignVector
    levels: ControlLevels = field(default_factory=ControlLevels.evenly_spaced)
    canyon: CanyonProfile | None = None

    def __post_init__(self):
        if self.canyon is None:
            # default canyon is supplied by the problem configuration; this
            # fallback keeps bare geometry tests independent of it
            self.canyon = CanyonProfile(h=self.levels.h, w_crest=135.0, w_base=0.35 * 135.0)
        z = self.levels.z
        self._tc = _LagrangeInterpolant(z, self.design.tc)
        self._ru = _LagrangeInterpolant(z, self.design.ru)
        self._rd = _LagrangeInterpolant(z, self.design.rd)

    # -- interpolated section properties ------------------------------------

    def g(self, z):
        return crown_profile_g(z, self.design.gamma, self.design.beta, self.levels.h)

    def g_slope(self, z):
        z = np.asarray(z, dtype=float)
        return self.design.gamma * z / (self.design.beta * self.levels.h) - self.design.gamma

    def tc(self, z):
        return self._tc(z)

    def ru(self, z):
        return self._ru(z)

    def rd(self, z):
        return self._rd(z)

    def check_radii(self, n_samples: int = 101) -> None:
        """Raise DegenerateGeometryError if a radius dips non-positive."""
        zs = np.linspace(0.0, self.levels.h, n_samples)
        if np.min(self._ru(zs)) <= 0.0 or np.min(self._rd(zs)) <= 0.0:
            raise DegenerateGeometryError("interpolated radius non-positive")

    # -- faces ---------------------------------------------------------------

    def faces(self, x, z):
        """Upstream and downstream face offsets (y_u, y_d) at (x, z)."""
        x = np.asarray(x, dtype=float)
        ru = self._ru(z)
        rd = self._rd(z)
        if np.any(np.asarray(ru) <= 0.0) or np.any(np.asarray(rd) <= 0.0):
            raise DegenerateGeometryError("interpolated radius non-positive")
        g = self.g(z)
        y_u = x**2 / (2.0 * ru) + g
        y_d = x**2 / (2.0 * rd) + g + self._tc(z)
        return y_u, y_d

    # -- integral and constraint quantities ----------------------------------

    def volume(self, order: int = 32) -> float:
        """Concrete volume by tensor-product Gauss-Legendre quadrature,
        x-extent clipped to the canyon half-width at each depth."""
        if order < 2:
            raise ValueError("quadrature order must be at least 2")
        zq, wz = _gauss_legendre(order, 0.0, self.levels.h)
        w = self.canyon.half_width(zq)
        xq, wx = _gauss_legendre(order, -w, w)  # (order, order), per-depth extent
        tc = self._tc(zq)[:, None]
        ru = self._ru(zq)[:, None]
        rd = self._rd(zq)[:, None]
        thick = np.abs(tc + xq**2 / 2.0 * (1.0 / rd - 1.0 / ru))
        return float(np.einsum("ij,ij,i->", thick, wx, wz))

    def central_angle(self, z):
        """Arch central angle at depth z, degrees."""
        return central_angle_deg(self.canyon.half_width(z), self._ru(z))

    def face_slopes(self, z):
        """(upstream, downstream) crown-line slopes dy/dz at x = 0."""
        gs = self.g_slope(z)
        return gs, gs + self._tc.derivative(z)

    def geometric_constraints(self, gamma_allow: float = 0.65, n_depths: int = 50) -> np.ndarray:
        """Signed constraint values, feasible where <= 0.

        Layout: 6 radius-ordering values rd_i/ru_i - 1, one overhang-slope
        value per face (worst over sampled depths), one central-angle value
        (worst over sampled depths, normalized by the 130 degree ceiling).
        """
        d = self.design
        out = np.empty(9)
        out[:6] = d.rd / d.ru - 1.0
        zs = np.linspace(0.0, self.levels.h, n_depths)
        s_u, s_d = self.face_slopes(zs)
        out[6] = np.max(np.abs(s_u)) / gamma_allow - 1.0
        out[7] = np.max(np.abs(s_d)) / gamma_allow - 1.0
        phi = self.central_angle(zs)
        out[8] = np.max(np.maximum(90.0 - phi, phi - 130.0)) / 130.0
        return out
