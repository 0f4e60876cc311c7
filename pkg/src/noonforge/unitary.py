"""Complex matrix algebra for near-unitary scattering data.

Matrices are plain complex ndarrays. Scattering data arrives rounded to a
couple of decimals and whole degrees, so it is only approximately unitary;
``unitarize`` projects it onto the nearest exact unitary before any
multiphoton evolution. Phases are degrees at every external surface and
radians internally.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np
import scipy.linalg

from . import serialize
from .errors import (
    BranchCutError,
    MatrixFileError,
    NotHermitianError,
    NotUnitaryError,
    ShapeError,
    SingularMatrixError,
)

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-10
BRANCH_CUT_TOL = 1e-12


def _as_decimal(value) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        return Decimal(repr(value))
    try:
        return Decimal(value)
    except (InvalidOperation, TypeError):
        raise MatrixFileError(f"not a decimal value: {value!r}") from None


@dataclass(frozen=True)
class PolarEntry:
    """One scattering amplitude as magnitude and phase in degrees.

    Values are stored as Decimal so that file round-trips preserve the
    original decimal strings bit-exactly.
    """

    magnitude: Decimal
    phase_deg: Decimal

    def __post_init__(self):
        object.__setattr__(self, "magnitude", _as_decimal(self.magnitude))
        object.__setattr__(self, "phase_deg", _as_decimal(self.phase_deg))
        if not self.magnitude.is_finite() or not self.phase_deg.is_finite():
            raise MatrixFileError(f"entry values must be finite: {self}")
        if self.magnitude < 0:
            raise MatrixFileError(f"magnitude must be non-negative: {self}")

    @property
    def value(self) -> complex:
        return float(self.magnitude) * np.exp(1j * math.radians(float(self.phase_deg)))


def from_polar(entries) -> np.ndarray:
    """Build a complex matrix from a square grid of PolarEntry (or (mag, deg) pairs)."""
    rows = list(entries)
    dim = len(rows)
    if dim < 2:
        raise ShapeError(f"matrix must be at least 2x2, got {dim} rows")
    matrix = np.empty((dim, dim), dtype=complex)
    for r, row in enumerate(rows):
        cells = list(row)
        if len(cells) != dim:
            raise ShapeError(f"row {r} has {len(cells)} entries, expected {dim}")
        for c, cell in enumerate(cells):
            if not isinstance(cell, PolarEntry):
                mag, deg = cell
                cell = PolarEntry(mag, deg)
            matrix[r, c] = cell.value
    return matrix


def _square(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ShapeError("matrix entries must be finite")
    return m


def unitarity_defect(matrix) -> float:
    """Frobenius norm of M^H M - I; zero iff M is exactly unitary."""
    m = _square(matrix)
    return float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])))


def max_unitarity_defect(matrix) -> float:
    """Max-entry norm of M^H M - I (the per-entry unitarity tolerance)."""
    m = _square(matrix)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def is_unitary(matrix, tol: float = UNITARY_TOL) -> bool:
    return max_unitarity_defect(matrix) <= tol


def unitarize(matrix) -> np.ndarray:
    """Project onto the nearest unitary in Frobenius norm (SVD polar factor).

    For nonsingular M = W S V^H the factor W V^H is the unique Frobenius-nearest
    unitary, and it keeps per-entry deviations small enough that amplitudes
    computed from rounded scattering data stay reproducible.
    """
    m = _square(matrix)
    w, s, vh = np.linalg.svd(m)
    if s[0] == 0.0 or s[-1] < 1e-12 * s[0]:
        raise SingularMatrixError("matrix is singular; no unitary polar factor")
    return w @ vh


class PatternKind(enum.Enum):
    SUBSPACE_I = "subspace-I"
    SUBSPACE_II = "subspace-II"


# Entry-equality pairs implied by a splitter with two independent processes:
# each process stamps one (magnitude, phase) pair into two positions.
_SUBSPACE_I_PAIRS = (
    ((0, 0), (1, 1)),
    ((0, 1), (1, 0)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
    ((2, 0), (3, 1)),
    ((2, 1), (3, 0)),
    ((2, 2), (3, 3)),
    ((2, 3), (3, 2)),
)


@dataclass(frozen=True)
class SymmetryPattern:
    """Expected internal structure of a 4x4 splitter matrix."""

    kind: PatternKind
    equality_pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    @classmethod
    def subspace_i(cls) -> "SymmetryPattern":
        """Shared-process pattern: 8 pairwise-equal entry positions."""
        return cls(PatternKind.SUBSPACE_I, _SUBSPACE_I_PAIRS)

    @classmethod
    def subspace_ii(cls) -> "SymmetryPattern":
        """Four independent processes: no equal entries, columns normalized."""
        return cls(PatternKind.SUBSPACE_II, ())


@dataclass(frozen=True)
class SymmetryViolation:
    kind: str
    location: tuple
    deviation: float
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.location}: {self.detail}"


def _wrap_degrees(delta: float) -> float:
    return (delta + 180.0) % 360.0 - 180.0


def validate_symmetry(matrix, pattern: SymmetryPattern, tol_mag: float,
                      tol_phase_deg: float) -> list[SymmetryViolation]:
    """Check a 4x4 splitter against its expected symmetry pattern.

    Equality-pair patterns report one violation per pair whose entries differ
    by more than `tol_mag` in magnitude or `tol_phase_deg` in phase. The
    independent-process pattern instead checks each column norm against 1
    within `tol_mag`.
    """
    m = _square(matrix)
    if m.shape[0] != 4:
        raise ShapeError(f"symmetry patterns are defined for 4x4 matrices, got {m.shape}")
    for (r1, c1), (r2, c2) in pattern.equality_pairs:
        if max(r1, c1, r2, c2) >= m.shape[0]:
            raise ShapeError(f"pattern index out of range for shape {m.shape}")

    violations = []
    if pattern.kind is PatternKind.SUBSPACE_II:
        for c in range(m.shape[1]):
            norm = float(np.linalg.norm(m[:, c]))
            dev = abs(norm - 1.0)
            if dev > tol_mag:
                violations.append(SymmetryViolation(
                    "column_norm", (c,), dev,
                    f"column {c} has norm {norm:.4f}, expected 1 within {tol_mag}"))
        return violations

    for pair in pattern.equality_pairs:
        (r1, c1), (r2, c2) = pair
        a, b = m[r1, c1], m[r2, c2]
        dmag = abs(abs(a) - abs(b))
        dphase = abs(_wrap_degrees(math.degrees(np.angle(a) - np.angle(b))))
        if dmag > tol_mag or dphase > tol_phase_deg:
            violations.append(SymmetryViolation(
                "entry_pair", pair, max(dmag, dphase),
                f"{pair[0]} vs {pair[1]}: d|.|={dmag:.4f}, dphase={dphase:.2f} deg"))
    return violations


def effective_hamiltonian(matrix) -> np.ndarray:
    """Hermitian generator A with exp(-iA) = U, via the principal matrix log.

    Time and hbar are folded into A (t=1 convention): only the product enters
    the evolution operator. Refuses inputs with an eigenvalue at -1, where the
    principal branch is ambiguous.
    """
    u = _square(matrix)
    if unitarity_defect(u) > UNITARY_TOL:
        raise NotUnitaryError(
            f"matrix is not unitary (defect {unitarity_defect(u):.3e}); "
            "call unitarize() first")
    # Schur of a unitary matrix is a diagonalization with an exactly unitary
    # eigenbasis, so the reconstructed generator is Hermitian to rounding.
    t, q = scipy.linalg.schur(u, output="complex")
    eigvals = np.diag(t)
    if np.any(np.abs(eigvals + 1.0) <= BRANCH_CUT_TOL):
        raise BranchCutError(
            "unitary has an eigenvalue at -1 (log branch cut); perturb the "
            "matrix slightly before extracting a generator")
    a = q @ np.diag(-np.angle(eigvals)) @ q.conj().T
    return 0.5 * (a + a.conj().T)


def matrix_exp(hamiltonian) -> np.ndarray:
    """exp(-iA) for Hermitian A, via eigendecomposition."""
    a = _square(hamiltonian)
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
        raise NotHermitianError("generator must be Hermitian")
    w, v = np.linalg.eigh(a)
    return v @ np.diag(np.exp(-1j * w)) @ v.conj().T


@dataclass(frozen=True)
class MatrixFile:
    """A scattering matrix together with its file metadata.

    `entries` is the row-major grid of PolarEntry whose decimal strings
    round-trip bit-exactly through load/save.
    """

    dim: int
    label: str
    entries: tuple[PolarEntry, ...]
    meta: dict | None = None

    def __post_init__(self):
        if self.dim < 2:
            raise MatrixFileError(f"dim must be at least 2, got {self.dim}")
        if len(self.entries) != self.dim * self.dim:
            raise MatrixFileError(
                f"expected {self.dim * self.dim} entries, got {len(self.entries)}")

    def to_array(self) -> np.ndarray:
        grid = [self.entries[r * self.dim:(r + 1) * self.dim] for r in range(self.dim)]
        return from_polar(grid)

    @classmethod
    def from_array(cls, matrix, label: str, meta: dict | None = None) -> "MatrixFile":
        m = _square(matrix)
        entries = tuple(
            PolarEntry(Decimal(repr(float(abs(v)))),
                       Decimal(repr(float(np.angle(v, deg=True)))))
            for v in m.ravel())
        return cls(m.shape[0], label, entries, meta)


def loads_matrix(text: str) -> MatrixFile:
    doc = serialize.loads(text)
    if not isinstance(doc, dict):
        raise MatrixFileError("matrix file must contain a JSON object")
    try:
        dim = doc["dim"]
        label = doc["label"]
        raw_entries = doc["entries"]
    except KeyError as exc:
        raise MatrixFileError(f"matrix file missing field {exc}") from None
    if not isinstance(dim, int):
        raise MatrixFileError(f"dim must be an integer, got {dim!r}")
    if not isinstance(raw_entries, list):
        raise MatrixFileError("entries must be a list")
    entries = []
    for i, cell in enumerate(raw_entries):
        if not isinstance(cell, dict) or set(cell) != {"mag", "phase_deg"}:
            raise MatrixFileError(
                f"entry {i} must be an object with mag and phase_deg: {cell!r}")
        entries.append(PolarEntry(cell["mag"], cell["phase_deg"]))
    meta = doc.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise MatrixFileError("meta must be an object")
    return MatrixFile(dim, str(label), tuple(entries), meta)


def load_matrix(path) -> MatrixFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixFileError(f"cannot read matrix file {path}: {exc}") from exc
    try:
        return loads_matrix(text)
    except MatrixFileError as exc:
        raise MatrixFileError(f"{path}: {exc}") from None


def dumps_matrix(mf: MatrixFile) -> str:
    payload: dict = {"dim": mf.dim, "label": mf.label}
    payload["entries"] = [
        {"mag": serialize.decimal_token(e.magnitude),
         "phase_deg": serialize.decimal_token(e.phase_deg)}
        for e in mf.entries
    ]
    if mf.meta is not None:
        payload["meta"] = {
            str(k): serialize.decimal_token(v) if isinstance(v, Decimal) else v
            for k, v in sorted(mf.meta.items())
        }
    return serialize.dumps(payload)


def save_matrix(path, mf: MatrixFile) -> None:
    Path(path).write_text(dumps_matrix(mf))
