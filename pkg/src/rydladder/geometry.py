"""Atom-array geometries for Rydberg ladders and their van der Waals couplings.

All lengths are in micrometers.  Energies and frequencies are stored in
rad/us internally; the command-line layer converts from the conventional
"units of 2pi MHz" on ingestion.  The functions here are unit-agnostic:
they return couplings in whatever unit ``c6 / length**6`` comes out in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi

# Default C6 coefficient for 87Rb, in (2pi MHz) um^6 before the 2pi factor.
DEFAULT_C6 = 858386.0 * TWO_PI


class LadderKind(str, Enum):
    CHAIN = "chain"
    TWO_LEG = "two-leg"
    THREE_LEG = "three-leg"
    PRISM = "prism"
    IN_PLANE_TRIANGLE = "in-plane-triangle"


# Number of atoms per rung for each geometry.
N_LEGS = {
    LadderKind.CHAIN: 1,
    LadderKind.TWO_LEG: 2,
    LadderKind.THREE_LEG: 3,
    LadderKind.PRISM: 3,
    LadderKind.IN_PLANE_TRIANGLE: 3,
}


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class LadderSpec:
    """Geometry parameters of a ladder of rungs along x.

    ``shift`` is the leftward in-plane displacement of the middle leg and is
    only meaningful for the in-plane-triangle kind; ``None`` selects the
    equilateral triangle, shift = sqrt(3)/2 * a_y.
    """

    kind: LadderKind
    n_rungs: int
    a_x: float
    a_y: float
    shift: float | None = None
    prism_height: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", LadderKind(self.kind))
        if self.n_rungs < 1:
            raise GeometryError(f"n_rungs must be >= 1, got {self.n_rungs}")
        if self.a_x <= 0 or self.a_y <= 0:
            raise GeometryError(
                f"lattice spacings must be positive, got a_x={self.a_x}, a_y={self.a_y}"
            )
        if self.shift is not None and self.kind is not LadderKind.IN_PLANE_TRIANGLE:
            raise GeometryError(f"shift is only valid for in-plane-triangle, not {self.kind.value}")
        if self.prism_height is not None and self.kind is not LadderKind.PRISM:
            raise GeometryError(f"prism_height is only valid for prism, not {self.kind.value}")

    @property
    def n_legs(self) -> int:
        return N_LEGS[self.kind]

    @property
    def rho(self) -> float:
        return self.a_y / self.a_x


@dataclass(frozen=True)
class AtomArray:
    """Concrete atom positions with rung/leg bookkeeping.

    Atom index ``a`` belongs to rung ``rung_of[a]`` (1-based) and leg
    ``leg_of[a]``.  Legs carry the spin labels they encode: for the two-leg
    ladder legs are -1 (bottom) and +1 (top); for three-atom rungs the middle
    leg is 0.  ``detuning_offset`` holds the extra detuning Delta_0 applied
    to middle-leg atoms (zero elsewhere).
    """

    spec: LadderSpec
    positions: np.ndarray          # (n_atoms, 3)
    rung_of: np.ndarray            # (n_atoms,) int, 1..n_rungs
    leg_of: np.ndarray             # (n_atoms,) int spin label of the leg
    detuning_offset: np.ndarray    # (n_atoms,)

    @property
    def n_atoms(self) -> int:
        return len(self.positions)

    @property
    def n_rungs(self) -> int:
        return self.spec.n_rungs

    @property
    def n_legs(self) -> int:
        return self.spec.n_legs

    def atoms_of_rung(self, rung: int) -> np.ndarray:
        return np.flatnonzero(self.rung_of == rung)

    def with_detuning_offsets(self, offsets: np.ndarray) -> "AtomArray":
        offsets = np.asarray(offsets, dtype=float)
        if offsets.shape != self.detuning_offset.shape:
            raise GeometryError("offset array shape mismatch")
        return AtomArray(self.spec, self.positions, self.rung_of, self.leg_of, offsets)


# Per-rung local coordinates (y, z) for each kind, ordered bottom -> top so
# that atom index = (rung - 1) * n_legs + local index.  Spin labels follow
# the figure conventions: bottom leg -> -1, middle -> 0, top -> +1.
def _rung_template(spec: LadderSpec) -> tuple[list[tuple[float, float, float]], list[int]]:
    ay = spec.a_y
    if spec.kind is LadderKind.CHAIN:
        return [(0.0, 0.0, 0.0)], [0]
    if spec.kind is LadderKind.TWO_LEG:
        return [(0.0, 0.0, 0.0), (0.0, ay, 0.0)], [-1, +1]
    if spec.kind is LadderKind.THREE_LEG:
        return [(0.0, 0.0, 0.0), (0.0, ay, 0.0), (0.0, 2 * ay, 0.0)], [-1, 0, +1]
    if spec.kind is LadderKind.PRISM:
        # Equilateral triangle of side a_y; the middle atom sits out of plane.
        h = spec.prism_height if spec.prism_height is not None else math.sqrt(3.0) / 2.0 * ay
        return [(0.0, 0.0, 0.0), (0.0, ay / 2.0, h), (0.0, ay, 0.0)], [-1, 0, +1]
    if spec.kind is LadderKind.IN_PLANE_TRIANGLE:
        # Same triangle flattened into the plane; the middle atom is shifted
        # to the left (negative x) by `shift`.
        s = spec.shift if spec.shift is not None else math.sqrt(3.0) / 2.0 * ay
        return [(0.0, 0.0, 0.0), (-s, ay / 2.0, 0.0), (0.0, ay, 0.0)], [-1, 0, +1]
    raise GeometryError(f"unknown kind {spec.kind}")


def build_ladder(spec: LadderSpec, delta0: float = 0.0) -> AtomArray:
    """Place atoms for the given ladder.  Rung i sits at x = (i-1) * a_x.

    ``delta0`` is the middle-leg detuning offset applied uniformly; per-atom
    offsets can be replaced later with :meth:`AtomArray.with_detuning_offsets`.
    """
    template, legs = _rung_template(spec)
    positions = []
    rung_of = []
    leg_of = []
    for i in range(spec.n_rungs):
        x0 = i * spec.a_x
        for (dx, y, z), leg in zip(template, legs):
            positions.append((x0 + dx, y, z))
            rung_of.append(i + 1)
            leg_of.append(leg)
    positions = np.array(positions, dtype=float)
    rung_of = np.array(rung_of, dtype=int)
    leg_of = np.array(leg_of, dtype=int)
    if len(np.unique(positions, axis=0)) != len(positions):
        raise GeometryError("atom positions are not distinct")
    offsets = np.where((leg_of == 0) & (spec.n_legs == 3), delta0, 0.0)
    return AtomArray(spec, positions, rung_of, leg_of, offsets)


@dataclass(frozen=True)
class CouplingMatrix:
    """Pairwise van der Waals energies v[i, j] = c6 / r_ij^6.

    ``named`` holds the canonical couplings (V0, V0p, V1, ...) of the
    ladder figures where they are defined for the geometry kind.
    """

    v: np.ndarray
    named: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.v[key]


def _named_couplings(atoms: AtomArray, c6: float) -> dict:
    spec = atoms.spec
    ax, ay = spec.a_x, spec.a_y

    def v_of(r2):
        return c6 / r2**3

    named = {}
    kind = spec.kind
    if kind is LadderKind.CHAIN:
        named["V1"] = v_of(ax**2)
    elif kind is LadderKind.TWO_LEG:
        named["V0"] = v_of(ay**2)
        named["V1"] = v_of(ax**2)
        named["V2"] = v_of(ax**2 + ay**2)
    elif kind is LadderKind.THREE_LEG:
        named["V0"] = v_of(ay**2)
        named["V0p"] = v_of((2 * ay) ** 2)
        named["V1"] = v_of(ax**2)
        named["V2"] = v_of(ax**2 + ay**2)
        named["V3"] = v_of(ax**2 + (2 * ay) ** 2)
    elif kind is LadderKind.PRISM:
        h = spec.prism_height if spec.prism_height is not None else math.sqrt(3.0) / 2.0 * ay
        mid2 = (ay / 2.0) ** 2 + h**2
        named["V0"] = v_of(ay**2)
        named["V0p"] = v_of(mid2)
        named["V1"] = v_of(ax**2)
        named["V2"] = v_of(ax**2 + mid2)       # middle <-> outer, adjacent rung
        named["V3"] = v_of(ax**2 + ay**2)      # outer <-> opposite outer
    elif kind is LadderKind.IN_PLANE_TRIANGLE:
        s = spec.shift if spec.shift is not None else math.sqrt(3.0) / 2.0 * ay
        mid2 = s**2 + (ay / 2.0) ** 2
        named["V0"] = v_of(ay**2)
        named["V0p"] = v_of(mid2)
        named["V1"] = v_of(ax**2)
        # The middle atom leans toward the previous rung, so the coupling to
        # the outer atoms behind it (V2) is stronger than ahead of it (V4).
        named["V2"] = v_of((ax - s) ** 2 + (ay / 2.0) ** 2)
        named["V3"] = v_of(ax**2 + ay**2)
        named["V4"] = v_of((ax + s) ** 2 + (ay / 2.0) ** 2)
    return named


def pairwise_couplings(atoms: AtomArray, c6: float = DEFAULT_C6) -> CouplingMatrix:
    """Full symmetric matrix of van der Waals pair energies."""
    pos = atoms.positions
    diff = pos[:, None, :] - pos[None, :, :]
    r2 = np.einsum("ijk,ijk->ij", diff, diff)
    n = len(pos)
    off = ~np.eye(n, dtype=bool)
    if np.any(r2[off] == 0.0):
        raise GeometryError("coincident atoms have infinite coupling")
    v = np.zeros_like(r2)
    v[off] = c6 / r2[off] ** 3
    return CouplingMatrix(v=v, named=_named_couplings(atoms, c6))


def blockade_radius(c6: float, omega: float) -> float:
    """Distance at which the pair energy equals the Rabi frequency."""
    if omega <= 0:
        raise GeometryError(f"omega must be positive, got {omega}")
    return (c6 / omega) ** (1.0 / 6.0)
