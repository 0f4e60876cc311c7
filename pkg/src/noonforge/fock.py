"""Occupation-number states and basis enumeration for n photons over m ports."""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, InputError, SpecError

FockState = tuple[int, ...]

DEFAULT_STATE_CAP = 10_000_000
CAP_ENV_VAR = "NOONFORGE_CAP"

_TERM_RE = re.compile(
    r"^\s*(?:(?P<amp>[+-]?\d+(?:\.\d+)?)(?:@(?P<phase>[+-]?\d+(?:\.\d+)?))?\s*\*\s*)?"
    r"\|(?P<ket>[^>|]*)>\s*$"
)


def state_cap() -> int:
    """Basis-size cap, overridable through the NOONFORGE_CAP environment variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_STATE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError(f"{CAP_ENV_VAR} must be positive, got {cap}")
    return cap


def basis_size(modes: int, photons: int) -> int:
    """Number of occupation vectors of `photons` photons over `modes` ports."""
    return math.comb(photons + modes - 1, modes - 1)


def _occupations(photons: int, modes: int):
    # Yields tuples in lexicographically descending order: (n,0,...,0) first.
    if modes == 1:
        yield (photons,)
        return
    for first in range(photons, -1, -1):
        for rest in _occupations(photons - first, modes - 1):
            yield (first,) + rest


class FockBasis:
    """Complete, deterministically ordered n-photon basis over m ports.

    States are ordered lexicographically descending on the occupation tuple,
    so the bunched states |n,0,...,0>, ... appear at predictable positions.
    """

    def __init__(self, modes: int, photons: int, cap: int | None = None):
        if modes < 1:
            raise InputError(f"mode count must be at least 1, got {modes}")
        if photons < 0:
            raise InputError(f"photon number must be non-negative, got {photons}")
        size = basis_size(modes, photons)
        limit = state_cap() if cap is None else cap
        if size > limit:
            raise CapacityError(
                f"basis of {size} states for {photons} photons over {modes} modes "
                f"exceeds the cap of {limit}"
            )
        self.modes = modes
        self.photons = photons
        self.states: tuple[FockState, ...] = tuple(_occupations(photons, modes))
        self._index = {state: i for i, state in enumerate(self.states)}

    def index_of(self, state: FockState) -> int:
        """Position of `state`; KeyError if it is not in this basis."""
        return self._index[tuple(state)]

    def __contains__(self, state) -> bool:
        return tuple(state) in self._index

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FockBasis)
                and other.modes == self.modes and other.photons == self.photons)

    def __hash__(self) -> int:
        return hash((self.modes, self.photons))

    def __repr__(self) -> str:
        return f"FockBasis(modes={self.modes}, photons={self.photons}, size={len(self)})"


def enumerate_basis(modes: int, photons: int, cap: int | None = None) -> FockBasis:
    """Enumerate the complete n-photon, m-mode occupation basis."""
    return FockBasis(modes, photons, cap=cap)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Complex superposition over a FockBasis, aligned with ``basis.states``."""

    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (len(self.basis),):
            raise SpecError(
                f"amplitude vector of length {amps.shape} does not match "
                f"basis of {len(self.basis)} states"
            )
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_occupations(cls, basis: FockBasis, occupations: FockState) -> "QuantumState":
        amps = np.zeros(len(basis), dtype=complex)
        amps[basis.index_of(occupations)] = 1.0
        return cls(basis, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = 1e-9) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> "QuantumState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero state")
        return QuantumState(self.basis, self.amplitudes / n)

    def canonical(self) -> "QuantumState":
        """Rotate the global phase so the first nonzero amplitude is real-positive."""
        for amp in self.amplitudes:
            if abs(amp) > 1e-12:
                return QuantumState(self.basis, self.amplitudes * (abs(amp) / amp))
        return self

    def amplitude(self, occupations: FockState) -> complex:
        return complex(self.amplitudes[self.basis.index_of(occupations)])


def format_occupations(occupations: FockState) -> str:
    return ",".join(str(n) for n in occupations)


def parse_occupations(text: str) -> FockState:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) < 2 or any(not p for p in parts):
        raise SpecError(f"ket must list at least two comma-separated occupations: {text!r}")
    try:
        occ = tuple(int(p) for p in parts)
    except ValueError:
        raise SpecError(f"occupations must be integers: {text!r}") from None
    if any(n < 0 for n in occ):
        raise SpecError(f"occupations must be non-negative: {text!r}")
    return occ


def state_from_spec(spec: str) -> tuple[FockBasis, QuantumState]:
    """Parse a ket spec into a normalized state.

    Grammar: a bare occupation list ``"0,0,1,1"``, or a superposition of
    terms ``[amp[@phase_deg]*]|KET>`` joined by ``+``, e.g.
    ``"0.7*|2,0> + 0.7@90*|0,2>"``.
    """
    text = spec.strip()
    if not text:
        raise SpecError("empty state spec")
    if "|" not in text:
        occ = parse_occupations(text)
        basis = enumerate_basis(len(occ), sum(occ))
        return basis, QuantumState.from_occupations(basis, occ)

    terms = []
    for chunk in text.split("+"):
        m = _TERM_RE.match(chunk)
        if m is None:
            raise SpecError(f"malformed term {chunk!r} in spec {spec!r}")
        amp = float(m.group("amp")) if m.group("amp") else 1.0
        phase_deg = float(m.group("phase")) if m.group("phase") else 0.0
        occ = parse_occupations(m.group("ket"))
        terms.append((amp * np.exp(1j * np.deg2rad(phase_deg)), occ))

    modes = len(terms[0][1])
    photons = sum(terms[0][1])
    for _, occ in terms[1:]:
        if len(occ) != modes:
            raise SpecError(f"terms mix {modes} and {len(occ)} modes in spec {spec!r}")
        if sum(occ) != photons:
            raise SpecError(
                f"terms mix photon numbers {photons} and {sum(occ)} in spec {spec!r}"
            )

    basis = enumerate_basis(modes, photons)
    amps = np.zeros(len(basis), dtype=complex)
    for coeff, occ in terms:
        amps[basis.index_of(occ)] += coeff
    if np.linalg.norm(amps) == 0.0:
        raise SpecError(f"terms cancel to the zero state in spec {spec!r}")
    return basis, QuantumState(basis, amps).normalized()


def state_to_spec(state: QuantumState, tol: float = 1e-12) -> str:
    """Render a state in the ket-spec grammar (single kets stay bare lists)."""
    nonzero = [(i, a) for i, a in enumerate(state.amplitudes) if abs(a) > tol]
    if len(nonzero) == 1 and abs(abs(nonzero[0][1]) - 1.0) <= tol:
        return format_occupations(state.basis.states[nonzero[0][0]])
    parts = []
    for i, amp in nonzero:
        mag = abs(amp)
        deg = math.degrees(math.atan2(amp.imag, amp.real))
        ket = format_occupations(state.basis.states[i])
        if abs(deg) <= 1e-9:
            parts.append(f"{mag:.6f}*|{ket}>")
        else:
            parts.append(f"{mag:.6f}@{deg:.2f}*|{ket}>")
    return " + ".join(parts)
