"""Cat states and their squeezed-state approximations.

Even/odd cat states N±(|beta> ± |-beta>), squeezed vacuum and squeezed single
photon in the photon-number basis, plus the closed-form squeezing parameters
that maximize the approximation fidelity at a given cat amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockVector, TruncationError, fidelity, fock_basis_state

__all__ = [
    "cat_state",
    "squeezed_vacuum",
    "squeezed_single_photon",
    "r_opt",
    "r_opt_v",
    "annihilate",
    "approximation_fidelity_sweep",
    "SweepRow",
]


def _check_beta(beta: float, cutoff: int):
    if beta < 0:
        raise ValueError("beta must be >= 0")
    if beta**2 > cutoff / 3:
        raise TruncationError(
            f"cutoff {cutoff} too small for beta={beta:.3f} (need beta^2 <= cutoff/3)"
        )


def cat_state(beta: float, parity: str, cutoff: int) -> FockVector:
    """Cat state N±(|beta> ± |-beta>) with real amplitude beta >= 0.

    Built from the parity-pure Fock expansion, so the odd state is exactly
    |1> in the beta -> 0 limit (where the coherent form degenerates to 0/0).
    Renormalized over the truncated support; discarded weight in ``leakage``.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    _check_beta(beta, cutoff)
    if beta == 0.0:
        return fock_basis_state(0 if parity == "even" else 1, cutoff)
    offset = 0 if parity == "even" else 1
    norm_const = 1.0 / math.sqrt(2.0 * (1.0 + (1 if parity == "even" else -1) * math.exp(-2.0 * beta**2)))
    amps = np.zeros(cutoff + 1, dtype=complex)
    prefactor = 2.0 * norm_const * math.exp(-(beta**2) / 2.0)
    for n in range(offset, cutoff + 1, 2):
        amps[n] = prefactor * beta**n / math.sqrt(math.factorial(n))
    captured = float(np.sum(np.abs(amps) ** 2))
    return FockVector(cutoff, amps / math.sqrt(captured), max(0.0, 1.0 - captured))


def squeezed_vacuum(r: float, cutoff: int) -> FockVector:
    """Squeezed vacuum S_r|0>: even photon numbers only.

    amps_{2n} = (tanh r)^n sqrt((2n)!) / (sqrt(cosh r) 2^n n!), renormalized
    over the truncation.
    """
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    if cutoff < 2 and r > 0:
        raise ValueError("cutoff must be >= 2 to hold a squeezed vacuum")
    amps = np.zeros(cutoff + 1, dtype=complex)
    t, c = math.tanh(r), math.cosh(r)
    for n in range(0, cutoff // 2 + 1):
        amps[2 * n] = (
            t**n * math.sqrt(math.factorial(2 * n)) / (math.sqrt(c) * 2**n * math.factorial(n))
        )
    captured = float(np.sum(np.abs(amps) ** 2))
    return FockVector(cutoff, amps / math.sqrt(captured), max(0.0, 1.0 - captured))


def squeezed_single_photon(r: float, cutoff: int) -> FockVector:
    """Squeezed single photon S_r|1>: odd photon numbers only.

    amps_{2n+1} = (tanh r)^n sqrt((2n+1)!) / ((cosh r)^{3/2} 2^n n!),
    renormalized over the truncation. Equals |1> at r = 0.
    """
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    amps = np.zeros(cutoff + 1, dtype=complex)
    t, c = math.tanh(r), math.cosh(r)
    for n in range(0, (cutoff - 1) // 2 + 1):
        amps[2 * n + 1] = (
            t**n * math.sqrt(math.factorial(2 * n + 1)) / (c**1.5 * 2**n * math.factorial(n))
        )
    captured = float(np.sum(np.abs(amps) ** 2))
    return FockVector(cutoff, amps / math.sqrt(captured), max(0.0, 1.0 - captured))


def r_opt(beta: float) -> float:
    """Squeezing that maximizes F(S_r|1>, odd cat of amplitude beta).

    Closed form: ln sqrt(2 beta^2/3 + sqrt(9 + 4 beta^4)/3). Zero at beta=0.
    """
    if beta < 0:
        raise ValueError("beta must be >= 0")
    return math.log(math.sqrt(2.0 * beta**2 / 3.0 + math.sqrt(9.0 + 4.0 * beta**4) / 3.0))


def r_opt_v(beta: float) -> float:
    """Squeezing that maximizes F(S_r|0>, even cat of amplitude beta).

    Closed form: ln sqrt(2 beta^2 + sqrt(1 + 4 beta^4)).
    """
    if beta < 0:
        raise ValueError("beta must be >= 0")
    return math.log(math.sqrt(2.0 * beta**2 + math.sqrt(1.0 + 4.0 * beta**4)))


def annihilate(vec: FockVector) -> FockVector:
    """Apply the annihilation operator and renormalize.

    Used to check that a photon-subtracted squeezed vacuum equals the
    squeezed single photon.
    """
    n = np.arange(1, vec.cutoff + 1)
    amps = np.zeros(vec.cutoff + 1, dtype=complex)
    amps[:-1] = np.sqrt(n) * vec.amps[1:]
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ValueError("annihilation of the vacuum is the zero vector")
    return FockVector(vec.cutoff, amps / norm)


@dataclass(frozen=True)
class SweepRow:
    beta: float
    r: float
    fidelity: float


def approximation_fidelity_sweep(kind: str, beta_grid, cutoff: int = 15):
    """Fidelity of the squeezed approximation to a cat state across beta.

    kind='odd' compares S_{r_opt(beta)}|1> against the odd cat; kind='even'
    compares S_{r_opt_v(beta)}|0> against the even cat. Returns one SweepRow
    per grid point.
    """
    if kind not in ("even", "odd"):
        raise ValueError(f"kind must be 'even' or 'odd', got {kind!r}")
    betas = list(beta_grid)
    if not betas:
        raise ValueError("beta grid must be nonempty")
    rows = []
    for beta in betas:
        if kind == "odd":
            r = r_opt(beta)
            approx = squeezed_single_photon(r, cutoff)
        else:
            r = r_opt_v(beta)
            approx = squeezed_vacuum(r, cutoff)
        cat = cat_state(beta, kind, cutoff)
        rows.append(SweepRow(float(beta), r, fidelity(cat, approx)))
    return rows
