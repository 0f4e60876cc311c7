"""NOON-state post-selection: success probability, phase alignment, fidelity.

A NOON component is a basis state with all photons bunched in one port. The
ideal target is their equal-magnitude superposition; per-port output phase
shifters can align any phases for free, so the fidelity reduces to the closed
form (sum |c_j|)^2 / (K sum |c_j|^2), which is 1 exactly when the magnitudes
are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import serialize
from .errors import NotUnitaryError, ShapeError, SpecError, ZeroProbabilityError
from .evolve import PERMANENT_CAP, TransitionTable, transition_amplitude
from .fock import FockBasis, FockState, QuantumState, enumerate_basis, format_occupations
from .unitary import UNITARY_TOL, max_unitarity_defect

ZERO_WEIGHT = 1e-24


@dataclass(frozen=True)
class NoonReport:
    """Post-selection outcome for the K bunched components of an N-photon table."""

    photons: int
    modes: int
    raw_amplitudes: tuple[complex, ...]
    success_probability: float
    optimal_phases_deg: tuple[float, ...]
    normalized_amplitudes: tuple[float, ...]
    fidelity: float

    def to_payload(self) -> dict:
        return {
            "photons": self.photons,
            "modes": self.modes,
            "success_probability": serialize.fixed(self.success_probability, 4),
            "fidelity": serialize.fixed(self.fidelity, 4),
            "components": [
                {
                    "state": format_occupations(_bunched(j, self.photons, self.modes)),
                    "mag": serialize.fixed(abs(c), 6),
                    "phase_deg": serialize.fixed(math.degrees(np.angle(c)), 6),
                    "normalized_mag": serialize.fixed(m, 4),
                    "optimal_phase_deg": serialize.fixed(p, 2),
                }
                for j, (c, m, p) in enumerate(zip(
                    self.raw_amplitudes, self.normalized_amplitudes,
                    self.optimal_phases_deg))
            ],
        }


def _bunched(port: int, photons: int, modes: int) -> FockState:
    occ = [0] * modes
    occ[port] = photons
    return tuple(occ)


def noon_components(basis: FockBasis) -> list[FockState]:
    """The K one-port-bunched states |N e_j> in port order."""
    return [_bunched(j, basis.photons, basis.modes) for j in range(basis.modes)]


def _report_from_amplitudes(raw: np.ndarray, photons: int, modes: int) -> NoonReport:
    success = float(np.sum(np.abs(raw) ** 2))
    if success <= ZERO_WEIGHT:
        raise ZeroProbabilityError("no probability weight on the bunched components")
    magnitudes = np.abs(raw)
    # A shifter on port j multiplies |..n_j..> by exp(i n_j theta_j); the
    # bunched component picks up exp(i N theta_j), so -arg(c_j)/N aligns it.
    phases = tuple(float(-math.degrees(np.angle(c)) / photons) for c in raw)
    normalized = tuple(float(m) for m in magnitudes / math.sqrt(success))
    fidelity = float(np.sum(magnitudes)) ** 2 / (modes * success)
    return NoonReport(photons, modes, tuple(complex(c) for c in raw), success,
                      phases, normalized, fidelity)


def extract_noon(table: TransitionTable, photons: int) -> NoonReport:
    """Post-select the bunched components and report success, phases, fidelity."""
    if table.photons != photons:
        raise ShapeError(
            f"table carries {table.photons} photons, expected {photons}")
    if photons < 1:
        raise ShapeError("NOON extraction needs at least one photon")
    raw = np.array([table.amplitude(occ) for occ in noon_components(table.basis)])
    return _report_from_amplitudes(raw, photons, table.modes)


def post_select(table: TransitionTable, kept) -> tuple[QuantumState, float]:
    """Project a table onto the kept states and renormalize.

    Returns the renormalized state (canonical global phase) and the kept
    probability weight.
    """
    states = list(dict.fromkeys(tuple(occ) for occ in kept))
    if not states:
        raise SpecError("post-selection must keep at least one state")
    for occ in states:
        if occ not in table.basis:
            raise SpecError(f"selected state {occ} is not in the table's basis")
    indices = [table.basis.index_of(occ) for occ in states]
    probability = float(sum(abs(table.amplitudes[i]) ** 2 for i in indices))
    if probability <= ZERO_WEIGHT:
        raise ZeroProbabilityError("post-selection kept zero probability")
    amps = np.zeros(len(table.basis), dtype=complex)
    for i in indices:
        amps[i] = table.amplitudes[i]
    state = QuantumState(table.basis, amps / math.sqrt(probability)).canonical()
    return state, probability


def fidelity_against(state: QuantumState, target: QuantumState) -> float:
    """Pure-state overlap |<target|state>|^2."""
    if state.basis != target.basis:
        raise ShapeError("states live on different bases")
    if not state.is_normalized() or not target.is_normalized():
        raise SpecError("fidelity is defined for normalized states")
    return float(abs(np.vdot(target.amplitudes, state.amplitudes)) ** 2)


def ideal_noon_state(modes: int, photons: int, phases_deg=None) -> QuantumState:
    """The equal-superposition target (1/sqrt(K)) sum_j e^{i phi_j} |N e_j>."""
    basis = enumerate_basis(modes, photons)
    amps = np.zeros(len(basis), dtype=complex)
    if phases_deg is None:
        phases_deg = [0.0] * modes
    for j, occ in enumerate(noon_components(basis)):
        amps[basis.index_of(occ)] = np.exp(1j * math.radians(phases_deg[j])) / math.sqrt(modes)
    return QuantumState(basis, amps)


def apply_phase_shifts(obj, phases_deg):
    """Apply per-port phase shifters: |..n_j..> gains exp(i n_j theta_j).

    Accepts a QuantumState or a TransitionTable and returns the same kind.
    """
    if isinstance(obj, TransitionTable):
        basis, amps = obj.basis, obj.amplitudes
    elif isinstance(obj, QuantumState):
        basis, amps = obj.basis, obj.amplitudes
    else:
        raise TypeError(f"cannot phase-shift {type(obj).__name__}")
    phases = np.asarray(phases_deg, dtype=float)
    if phases.shape != (basis.modes,):
        raise ShapeError(f"need one phase per port, got shape {phases.shape}")
    factors = np.array([
        np.exp(1j * math.radians(float(np.dot(occ, phases)))) for occ in basis.states])
    shifted = amps * factors
    if isinstance(obj, TransitionTable):
        return TransitionTable(obj.input, basis, shifted)
    return QuantumState(basis, shifted)


def _zero_report(photons: int, modes: int) -> NoonReport:
    zeros = (0.0,) * modes
    return NoonReport(photons, modes, (0j,) * modes, 0.0, zeros, zeros, 0.0)


def sweep_inputs(matrix, total_photons: int, modes: int,
                 cap: int = PERMANENT_CAP) -> list[tuple[FockState, NoonReport]]:
    """Rank every n-photon input by its NOON success probability.

    Only the K bunched output amplitudes enter a NoonReport, so each input is
    scored from those directly; the reports are identical to running
    extract_noon on the full table. Inputs with no bunched weight get a
    zero-success placeholder (fidelity 0) and rank last. Ties break on the
    lexicographic order of the input occupations.
    """
    u = np.asarray(matrix, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {u.shape}")
    if u.shape[0] != modes:
        raise ShapeError(f"matrix has {u.shape[0]} ports, sweep asked for {modes}")
    if total_photons < 1:
        raise ShapeError("sweep needs at least one photon")
    defect = max_unitarity_defect(u)
    if defect > UNITARY_TOL:
        raise NotUnitaryError(
            f"sweep needs an exactly unitary matrix (defect {defect:.3e})")

    basis = enumerate_basis(modes, total_photons)
    targets = noon_components(basis)
    rows = []
    for occ in basis.states:
        raw = np.array([transition_amplitude(u, occ, t, cap=cap) for t in targets])
        try:
            report = _report_from_amplitudes(raw, total_photons, modes)
        except ZeroProbabilityError:
            report = _zero_report(total_photons, modes)
        rows.append((occ, report))
    rows.sort(key=lambda row: (-row[1].success_probability, row[0]))
    return rows
