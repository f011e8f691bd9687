"""Coherent-state qubit teleportation and entanglement swapping.

The teleporter takes an input qubit mu|alpha> + nu|-alpha> in mode a and a
resource state of amplitude beta = sqrt(2) alpha in mode b. The resource is
split on a 50:50 beamsplitter with vacuum mode c to form a coherent-state
Bell pair, a second 50:50 beamsplitter mixes a and b, and photon numbers
(n, m) are counted in modes a and b. Exactly one nonzero count heralds
success; the output lives in mode c up to a Pauli correction.

Correction bookkeeping depends on the photon-number parity of the resource:
for odd-parity resources (odd cat, squeezed single photon) odd counts need
only I or X, even counts need a Z; for even-parity resources the roles swap.
Only the X correction (a pi phase shift) is ever applied; outcomes needing a
Z are reported but excluded from fidelity averaging unless explicitly
included for diagnostics, in which case the comparison target absorbs an
ideal Z (sign flip of the |-alpha> component).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .catstates import cat_state, r_opt, r_opt_v, squeezed_single_photon, squeezed_vacuum
from .fock import (
    FockVector,
    MultiModeState,
    apply_beamsplitter,
    apply_phase_shift,
    coherent_state,
    fidelity,
    fock_basis_state,
    project_photon_number,
    tensor,
)

__all__ = [
    "QubitSuperposition",
    "ResourceSpec",
    "InputSpec",
    "OutcomeRecord",
    "ProtocolSummary",
    "RESOURCE_KINDS",
    "INPUT_FAMILIES",
    "resource_parity",
    "build_teleporter_input",
    "enumerate_outcomes",
    "classify_outcome",
    "apply_correction",
    "run_teleportation",
    "per_outcome_fidelity",
    "success_probability_sweep",
    "run_entanglement_swap",
]

RESOURCE_KINDS = (
    "ideal-odd-cat",
    "ideal-even-cat",
    "squeezed-single-photon",
    "squeezed-vacuum",
)

_ODD_PARITY_KINDS = {"ideal-odd-cat", "squeezed-single-photon"}


def resource_parity(kind: str) -> str:
    """Photon-number parity of a resource kind: 'odd' or 'even'."""
    if kind in _ODD_PARITY_KINDS:
        return "odd"
    if kind in ("ideal-even-cat", "squeezed-vacuum"):
        return "even"
    raise ValueError(f"unknown resource kind {kind!r}")


@dataclass(frozen=True)
class QubitSuperposition:
    """Coherent-state qubit mu|alpha> + nu|-alpha> (normalized on demand)."""

    mu: complex
    nu: complex
    alpha: float

    def to_fock(self, cutoff: int) -> FockVector:
        plus = coherent_state(self.alpha, cutoff)
        minus = coherent_state(-self.alpha, cutoff)
        amps = self.mu * plus.amps + self.nu * minus.amps
        return FockVector(cutoff, amps).normalized()

    def z_flipped(self) -> "QubitSuperposition":
        """Qubit after an ideal Z: the |-alpha> component changes sign."""
        return QubitSuperposition(self.mu, -self.nu, self.alpha)


@dataclass(frozen=True)
class ResourceSpec:
    """Resource state of cat amplitude beta.

    Squeezed kinds use the closed-form optimal squeezing for that amplitude:
    r_opt(beta) for the squeezed single photon, r_opt_v(beta) for the
    squeezed vacuum.
    """

    kind: str
    beta: float

    def __post_init__(self):
        resource_parity(self.kind)  # validates kind

    @property
    def parity(self) -> str:
        return resource_parity(self.kind)

    def to_fock(self, cutoff: int) -> FockVector:
        if self.kind == "ideal-odd-cat":
            return cat_state(self.beta, "odd", cutoff)
        if self.kind == "ideal-even-cat":
            return cat_state(self.beta, "even", cutoff)
        if self.kind == "squeezed-single-photon":
            return squeezed_single_photon(r_opt(self.beta), cutoff)
        return squeezed_vacuum(r_opt_v(self.beta), cutoff)


@dataclass(frozen=True)
class InputSpec:
    """Input state of qubit amplitude alpha.

    kinds: 'coherent', 'odd-cat', 'even-cat', 'squeezed-single-photon'
    (built at r_opt(alpha)), 'squeezed-vacuum' (r_opt_v(alpha)), or
    'superposition' with explicit (mu, nu).
    """

    kind: str
    alpha: float
    mu: complex = None
    nu: complex = None

    def to_fock(self, cutoff: int) -> FockVector:
        if self.kind == "coherent":
            return coherent_state(self.alpha, cutoff)
        if self.kind == "odd-cat":
            return cat_state(self.alpha, "odd", cutoff)
        if self.kind == "even-cat":
            return cat_state(self.alpha, "even", cutoff)
        if self.kind == "squeezed-single-photon":
            return squeezed_single_photon(r_opt(self.alpha), cutoff)
        if self.kind == "squeezed-vacuum":
            return squeezed_vacuum(r_opt_v(self.alpha), cutoff)
        if self.kind == "superposition":
            return self.qubit().to_fock(cutoff)
        raise ValueError(f"unknown input kind {self.kind!r}")

    def qubit(self) -> QubitSuperposition | None:
        """Exact coherent-qubit decomposition, or None (squeezed kinds)."""
        if self.kind == "coherent":
            return QubitSuperposition(1.0, 0.0, self.alpha)
        if self.kind == "odd-cat":
            return QubitSuperposition(1.0, -1.0, self.alpha)
        if self.kind == "even-cat":
            return QubitSuperposition(1.0, 1.0, self.alpha)
        if self.kind == "superposition":
            if self.mu is None or self.nu is None:
                raise ValueError("superposition input needs mu and nu")
            return QubitSuperposition(self.mu, self.nu, self.alpha)
        return None

    def at_alpha(self, alpha: float) -> "InputSpec":
        """Same family rebuilt at a different qubit amplitude."""
        return replace(self, alpha=alpha)


# Standard input families: (mu, nu) coefficients at the swept alpha.
INPUT_FAMILIES = {
    "odd-cat-superposition": (1.0, -1.0),
    "biased-superposition": (0.5, -math.sqrt(3.0) / 2.0),
    "coherent": (1.0, 0.0),
    "even-cat-superposition": (1.0, 1.0),
}


@dataclass(frozen=True)
class OutcomeRecord:
    """One photon-number measurement result of the two detectors."""

    n: int
    m: int
    probability: float
    correction: str  # "I", "X", "Z", "XZ", or "none" for rejected outcomes
    accepted: bool
    fidelity: float = None


@dataclass(frozen=True)
class ProtocolSummary:
    """Aggregate of one protocol run.

    ``average_fidelity`` is probability-weighted over the accepted outcomes
    that need no Z correction (the odd detector counts for an odd-parity
    resource). ``degenerate`` flags a run with zero accepted weight.
    """

    success_probability: float
    average_fidelity: float
    outcomes: tuple
    config: dict = field(default_factory=dict)
    degenerate: bool = False

    def both_nonzero_weight(self) -> float:
        return sum(o.probability for o in self.outcomes if o.n > 0 and o.m > 0)

    def outcome(self, n: int, m: int) -> OutcomeRecord:
        for o in self.outcomes:
            if o.n == n and o.m == m:
                return o
        raise KeyError((n, m))


def build_teleporter_input(
    input_state: FockVector, resource: FockVector, cutoff: int
) -> MultiModeState:
    """Three-mode state just before the photon-number measurement.

    tensor(input_a, resource_b, vacuum_c), 50:50 beamsplitter on (b, c),
    then 50:50 on (a, b).
    """
    if input_state.cutoff != cutoff or resource.cutoff != cutoff:
        raise ValueError("input and resource must be built at the working cutoff")
    st = tensor([input_state, resource, fock_basis_state(0, cutoff)])
    st = apply_beamsplitter(st, 1, 2, 0.5)
    return apply_beamsplitter(st, 0, 1, 0.5)


def classify_outcome(n: int, m: int, parity: str = "odd"):
    """(accepted, correction label) for detector counts under a resource parity.

    Acceptance requires exactly one nonzero count. With an odd-parity
    resource, odd counts map to I/X and even counts to Z/XZ; with an
    even-parity resource the parities swap.
    """
    if (n == 0) == (m == 0):
        return False, "none"
    k = n if m == 0 else m
    needs_z = (k % 2 == 0) if parity == "odd" else (k % 2 == 1)
    if m == 0:
        return True, "Z" if needs_z else "I"
    return True, "XZ" if needs_z else "X"


def apply_correction(state: FockVector, n: int, m: int, parity: str = "odd"):
    """Apply the physical correction for an accepted outcome.

    I leaves the state alone; X is a pi phase shift. Z and XZ outcomes get
    only the X part applied here (the Z is never physically applied; fidelity
    for those outcomes is taken against a Z-flipped target instead).
    Raises on rejected outcomes.
    """
    accepted, label = classify_outcome(n, m, parity)
    if not accepted:
        raise ValueError(f"outcome (n={n}, m={m}) is not an accepted outcome")
    if "X" in label:
        state = state.phase_shifted(math.pi)
    return state, label


def enumerate_outcomes(state3: MultiModeState, parity: str = "odd"):
    """All (n, m) outcome records for detectors on modes a and b (no fidelities)."""
    if state3.num_modes != 3:
        raise ValueError("expected a 3-mode teleporter state")
    probs = np.sum(np.abs(state3.amps) ** 2, axis=2)
    records = []
    for n in range(state3.mode_cutoffs[0] + 1):
        for m in range(state3.mode_cutoffs[1] + 1):
            accepted, label = classify_outcome(n, m, parity)
            records.append(
                OutcomeRecord(n, m, float(probs[n, m]), label, accepted)
            )
    return records


def _z_target(input_spec: InputSpec, cutoff: int) -> FockVector:
    qubit = input_spec.qubit()
    if qubit is None:
        return None
    return qubit.z_flipped().to_fock(cutoff)


def _average(pairs):
    """Probability-weighted mean over (probability, fidelity) pairs."""
    weight = sum(p for p, _ in pairs)
    if weight == 0.0:
        return None
    return sum(p * f for p, f in pairs) / weight


def run_teleportation(
    input_spec: InputSpec,
    resource_spec: ResourceSpec,
    cutoff: int = 15,
    include_z_outcomes: bool = False,
) -> ProtocolSummary:
    """Full teleportation run: outcome table, success probability, fidelity.

    Per-outcome fidelity compares the corrected conditional output against
    the input state (Z/XZ outcomes against the Z-flipped input, where the
    input has an exact qubit decomposition). The average covers the no-Z
    outcomes; pass ``include_z_outcomes=True`` to fold Z/XZ outcomes into the
    average as a diagnostic.
    """
    input_vec = input_spec.to_fock(cutoff)
    resource_vec = resource_spec.to_fock(cutoff)
    state3 = build_teleporter_input(input_vec, resource_vec, cutoff)
    parity = resource_spec.parity
    z_target = _z_target(input_spec, cutoff)

    records = []
    averaged = []
    success = 0.0
    for rec in enumerate_outcomes(state3, parity):
        if not rec.accepted or rec.probability == 0.0:
            records.append(rec)
            continue
        success += rec.probability
        _, cond = project_photon_number(state3, [(0, rec.n), (1, rec.m)])
        out = FockVector(cutoff, cond.amps)
        out, label = apply_correction(out, rec.n, rec.m, parity)
        target = input_vec if "Z" not in label else z_target
        fid = fidelity(target, out) if target is not None else None
        rec = replace(rec, fidelity=fid)
        records.append(rec)
        if fid is not None and ("Z" not in label or include_z_outcomes):
            averaged.append((rec.probability, fid))

    avg = _average(averaged)
    config = {
        "protocol": "teleportation",
        "input": input_spec,
        "resource": resource_spec,
        "cutoff": cutoff,
        "include_z_outcomes": include_z_outcomes,
    }
    return ProtocolSummary(
        success_probability=success,
        average_fidelity=avg,
        outcomes=tuple(records),
        config=config,
        degenerate=avg is None,
    )


def per_outcome_fidelity(
    input_spec: InputSpec,
    resource_spec: ResourceSpec,
    m: int,
    cutoff: int = 15,
) -> float:
    """Fidelity conditioned on the single outcome (n=0, m).

    Returns None when the outcome has zero probability or no comparison
    target exists (Z-type outcome without a qubit decomposition).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    summary = run_teleportation(input_spec, resource_spec, cutoff)
    return summary.outcome(0, m).fidelity


def success_probability_sweep(
    beta_grid,
    input_families=None,
    resource_kinds=("ideal-odd-cat", "squeezed-single-photon"),
    cutoff: int = 15,
):
    """Success probability per (beta, input family, resource kind).

    Input families are (mu, nu) superpositions at alpha = beta / sqrt(2);
    defaults to the four standard families in INPUT_FAMILIES. Returns rows
    of (beta, family_name, resource_kind, p_success).
    """
    betas = list(beta_grid)
    if not betas:
        raise ValueError("beta grid must be nonempty")
    families = dict(INPUT_FAMILIES if input_families is None else input_families)
    rows = []
    for beta in betas:
        alpha = beta / math.sqrt(2.0)
        for name, (mu, nu) in families.items():
            spec = InputSpec("superposition", alpha, mu, nu)
            for kind in resource_kinds:
                summary = run_teleportation(spec, ResourceSpec(kind, beta), cutoff)
                rows.append((float(beta), name, kind, summary.success_probability))
    return rows


def _bell_pair(phi: FockVector, cutoff: int) -> MultiModeState:
    """Split phi on a 50:50 beamsplitter with vacuum: the two-mode Bell state."""
    st = tensor([phi, fock_basis_state(0, cutoff)])
    return apply_beamsplitter(st, 0, 1, 0.5)


def run_entanglement_swap(
    phi_spec: InputSpec,
    resource_spec: ResourceSpec,
    cutoff: int = 15,
) -> ProtocolSummary:
    """Entanglement swapping: teleport one half of a Bell pair.

    |phi> of amplitude beta is split with vacuum into a Bell pair on modes
    (a, b); the resource (same amplitude beta) is split into a Bell pair on
    (c, d); the teleporter beamsplitter mixes (b, c) and photon numbers
    (n, m) are counted there. Per-outcome fidelity compares the corrected
    conditional state on (a, d) against the reference Bell pair on (a, b),
    modes matched by position. Z-type outcomes carry no fidelity.
    """
    phi = phi_spec.to_fock(cutoff)
    res = resource_spec.to_fock(cutoff)
    parity = resource_spec.parity
    vac = fock_basis_state(0, cutoff)

    reference = _bell_pair(phi, cutoff)
    st = tensor([phi, vac, res, vac])
    st = apply_beamsplitter(st, 0, 1, 0.5)
    st = apply_beamsplitter(st, 2, 3, 0.5)
    st = apply_beamsplitter(st, 1, 2, 0.5)

    records = []
    averaged = []
    success = 0.0
    for n in range(cutoff + 1):
        for m in range(cutoff + 1):
            prob, cond = project_photon_number(st, [(1, n), (2, m)])
            accepted, label = classify_outcome(n, m, parity)
            if not accepted or prob == 0.0:
                records.append(OutcomeRecord(n, m, prob, label, accepted))
                continue
            success += prob
            if "X" in label:
                cond = apply_phase_shift(cond, 1, math.pi)
            fid = fidelity(reference, cond) if "Z" not in label else None
            records.append(OutcomeRecord(n, m, prob, label, accepted, fid))
            if fid is not None:
                averaged.append((prob, fid))

    avg = _average(averaged)
    config = {
        "protocol": "entanglement-swap",
        "phi": phi_spec,
        "resource": resource_spec,
        "cutoff": cutoff,
    }
    return ProtocolSummary(
        success_probability=success,
        average_fidelity=avg,
        outcomes=tuple(records),
        config=config,
        degenerate=avg is None,
    )
