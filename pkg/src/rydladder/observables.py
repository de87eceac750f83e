"""Local spin measurements, order parameters, entropies, phase labels."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basis import BasisError, RydbergBasis, Spin1Basis, StateDictionary
from .geometry import AtomArray


class Phase(str, Enum):
    FM = "FM"
    AFM = "AFM"
    FRDW = "FRDW"
    PRDW = "PRDW"
    DISORDER = "Disorder"
    UNCLASSIFIED = "unclassified"


@dataclass
class SiteProfile:
    lz: np.ndarray    # per-site <L^z_i>
    lz2: np.ndarray   # per-site <(L^z_i)^2>


@dataclass
class OrderParameters:
    m_fm: float
    m_afm: float
    m_rdw: float
    chi_fm: float
    chi_afm: float
    chi_rdw: float
    # absolute-value variants, nonzero in symmetric finite-size ground states
    m_fm_abs: float
    m_afm_abs: float
    m_rdw_abs: float


def site_profile_spin(psi: np.ndarray, basis: Spin1Basis) -> SiteProfile:
    m = basis.digits().astype(float)
    w = np.abs(psi) ** 2
    return SiteProfile(lz=w @ m, lz2=w @ (m * m))


def site_profile_rydberg(
    psi: np.ndarray, basis: RydbergBasis, atoms: AtomArray
) -> SiteProfile:
    """Occupation-based L^z on the full Rydberg state (no sector projection).

    L^z_i = n_{i,+1} - n_{i,-1} and (L^z_i)^2 = n_{i,+1} + n_{i,-1} evaluated
    from the outer-leg occupations directly.
    """
    if basis.n_atoms != atoms.n_atoms:
        raise BasisError("basis does not match the atom array")
    w = np.abs(psi) ** 2
    occ_mean = w @ basis.occupations().astype(float)
    n_r = atoms.n_rungs
    lz = np.zeros(n_r)
    lz2 = np.zeros(n_r)
    for i in range(1, n_r + 1):
        rung = atoms.atoms_of_rung(i)
        up = rung[atoms.leg_of[rung] == +1]
        down = rung[atoms.leg_of[rung] == -1]
        lz[i - 1] = occ_mean[up].sum() - occ_mean[down].sum()
        lz2[i - 1] = occ_mean[up].sum() + occ_mean[down].sum()
    return SiteProfile(lz=lz, lz2=lz2)


def site_profile(psi, basis, atoms: AtomArray | None = None) -> SiteProfile:
    if isinstance(basis, Spin1Basis):
        return site_profile_spin(psi, basis)
    if atoms is None:
        raise BasisError("Rydberg-state profiles need the atom array")
    return site_profile_rydberg(psi, basis, atoms)


def order_parameters(psi: np.ndarray, basis: Spin1Basis) -> OrderParameters:
    """FM / AFM / RDW order parameters and their fluctuation susceptibilities.

    All three operators are diagonal in the L^z basis, so moments are plain
    weighted sums.  chi_O = L (<O^2> - <O>^2); the staggering sign is
    (-1)^i with i = 1..L.
    """
    L = basis.n_sites
    m = basis.digits().astype(float)
    w = np.abs(psi) ** 2
    sign = (-1.0) ** np.arange(1, L + 1)
    diag = {
        "fm": m.sum(axis=1) / L,
        "afm": (m * sign).sum(axis=1) / L,
        "rdw": (m * m * sign).sum(axis=1) / L,
    }
    means = {k: float(w @ v) for k, v in diag.items()}
    seconds = {k: float(w @ (v * v)) for k, v in diag.items()}
    abs_means = {k: float(w @ np.abs(v)) for k, v in diag.items()}
    chi = {k: L * (seconds[k] - means[k] ** 2) for k in diag}
    return OrderParameters(
        m_fm=means["fm"],
        m_afm=means["afm"],
        m_rdw=means["rdw"],
        chi_fm=chi["fm"],
        chi_afm=chi["afm"],
        chi_rdw=chi["rdw"],
        m_fm_abs=abs_means["fm"],
        m_afm_abs=abs_means["afm"],
        m_rdw_abs=abs_means["rdw"],
    )


def reduced_density_matrix(psi: np.ndarray, n_sites: int, cut: int) -> np.ndarray:
    if not 1 <= cut < n_sites:
        raise ValueError(f"cut must lie strictly inside the chain, got {cut}")
    a = np.asarray(psi).reshape(3**cut, 3 ** (n_sites - cut))
    return a @ a.conj().T


def renyi_entropy(psi: np.ndarray, n_sites: int, cut: int, order: int = 2) -> float:
    """Entanglement entropy of sites 1..cut, in nats.

    order 1 is the von Neumann entropy, order 2 the second Renyi entropy.
    """
    a = np.asarray(psi).reshape(3**cut, 3 ** (n_sites - cut))
    s = np.linalg.svd(a, compute_uv=False)
    p = s * s
    p = p[p > 1e-15]
    if order == 1:
        return float(-np.sum(p * np.log(p)))
    if order == 2:
        return float(-np.log(np.sum(p * p)))
    raise ValueError("order must be 1 or 2")


def classify_phase(op: OrderParameters, threshold: float = 0.1) -> Phase:
    """Zero/nonzero pattern of the absolute order parameters.

    The absolute-value variants are used so that symmetric finite-size
    ground states classify correctly.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    fm = op.m_fm_abs > threshold
    afm = op.m_afm_abs > threshold
    rdw = op.m_rdw_abs > threshold
    pattern = (fm, afm, rdw)
    table = {
        (True, False, False): Phase.FM,
        (False, True, False): Phase.AFM,
        (True, True, True): Phase.FRDW,
        (False, False, True): Phase.PRDW,
        (False, False, False): Phase.DISORDER,
    }
    return table.get(pattern, Phase.UNCLASSIFIED)


def susceptibility_peak(xs, chis):
    """Quadratic interpolation of the peak through the three points around
    the sampled maximum.  Returns (x_peak, chi_peak, interior_flag)."""
    xs = np.asarray(xs, dtype=float)
    chis = np.asarray(chis, dtype=float)
    if len(xs) < 3:
        raise ValueError("need at least three scan points")
    k = int(np.argmax(chis))
    if k == 0 or k == len(xs) - 1:
        return float(xs[k]), float(chis[k]), False
    x0, x1, x2 = xs[k - 1 : k + 2]
    y0, y1, y2 = chis[k - 1 : k + 2]
    coef = np.polyfit([x0, x1, x2], [y0, y1, y2], 2)
    if coef[0] >= 0:
        return float(x1), float(y1), False
    xp = -coef[1] / (2 * coef[0])
    yp = np.polyval(coef, xp)
    return float(xp), float(yp), True
