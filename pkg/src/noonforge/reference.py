"""Bundled splitter matrices and their golden reference outputs.

The two four-port splitter matrices ship as data files transcribed
digit-for-digit from their source; the tables below hold the multiphoton
outputs quoted for them, against which the reproduce command and the
acceptance suite check this implementation. Quoted magnitudes carry the
source's 3-decimal rounding and phases its whole-degree rounding.
"""

from __future__ import annotations

from importlib import resources

from .modes import Subspace, load_subspace
from .unitary import MatrixFile, load_matrix

SPLITTER_I = "splitter_i"
SPLITTER_II = "splitter_ii"

_MATRIX_FILES = {
    SPLITTER_I: "splitter_i.json",
    SPLITTER_II: "splitter_ii.json",
}
_SUBSPACE_FILES = {
    "I": "subspace_i.json",
    "II": "subspace_ii.json",
    "III": "subspace_iii.json",
}


def data_path(filename: str):
    """Filesystem path of a bundled data file."""
    return resources.files("noonforge").joinpath("data", filename)


def bundled_matrix(name: str) -> MatrixFile:
    """Load one of the bundled splitter matrices ("splitter_i"/"splitter_ii")."""
    try:
        filename = _MATRIX_FILES[name]
    except KeyError:
        raise KeyError(f"no bundled matrix named {name!r}") from None
    return load_matrix(data_path(filename))


def bundled_subspace(label: str) -> Subspace:
    """Load a bundled subspace declaration ("I", "II" or "III")."""
    try:
        filename = _SUBSPACE_FILES[label]
    except KeyError:
        raise KeyError(f"no bundled subspace labeled {label!r}") from None
    return load_subspace(data_path(filename))


# ---------------------------------------------------------------------------
# Golden outputs for the subspace-II splitter.
# ---------------------------------------------------------------------------

TWO_PHOTON_INPUT = (0, 0, 1, 1)

# Full two-photon output table: occupations -> (magnitude, phase_deg).
TWO_PHOTON_OUTPUT = {
    (2, 0, 0, 0): (0.339, 48.0),
    (0, 2, 0, 0): (0.333, 15.0),
    (0, 0, 2, 0): (0.342, 149.0),
    (0, 0, 0, 2): (0.350, -136.0),
    (1, 1, 0, 0): (0.470, -148.0),
    (0, 0, 1, 1): (0.499, -167.0),
    (1, 0, 1, 0): (0.143, -124.0),
    (1, 0, 0, 1): (0.085, 77.0),
    (0, 1, 1, 0): (0.089, 14.0),
    (0, 1, 0, 1): (0.143, -97.0),
}

# Components below this magnitude come from nearly cancelling two-term sums,
# where the 2-decimal/1-degree rounding of the splitter entries moves the
# phase by more than the quoted-phase tolerance; phase agreement is therefore
# gated on the dominant components only.
DOMINANT_MAGNITUDE = 0.2

TWO_PHOTON_SUCCESS_RANGE = (0.45, 0.50)
TWO_PHOTON_FIDELITY_MIN = 0.998
TWO_PHOTON_NOON_NORMALIZED = (0.497, 0.488, 0.501, 0.513)

ENTANGLED_SELECTION = ((1, 1, 0, 0), (0, 0, 1, 1))
ENTANGLED_MAGNITUDES = (0.686, 0.728)
ENTANGLED_PROBABILITY_RANGE = (0.44, 0.52)

THREE_PHOTON_INPUT = (0, 1, 1, 1)
THREE_PHOTON_NOON = {
    (3, 0, 0, 0): (0.335, -15.0),
    (0, 3, 0, 0): (0.259, -45.0),
    (0, 0, 3, 0): (0.290, 53.0),
    (0, 0, 0, 3): (0.291, -23.0),
}
THREE_PHOTON_SUCCESS = 0.348
THREE_PHOTON_SUCCESS_TOL = 0.02
THREE_PHOTON_FIDELITY = 0.992
THREE_PHOTON_FIDELITY_TOL = 0.005
THREE_PHOTON_NOON_NORMALIZED = (0.568, 0.439, 0.492, 0.493)

FOUR_PHOTON_INPUT = (1, 1, 1, 1)
FOUR_PHOTON_NOON = {
    (4, 0, 0, 0): (0.295, -42.0),
    (0, 4, 0, 0): (0.296, -109.0),
    (0, 0, 4, 0): (0.279, 144.0),
    (0, 0, 0, 4): (0.291, -67.0),
}
# The source quotes both 33.7% and 34.8% for this preparation; either band
# is accepted and the computed value is always reported.
FOUR_PHOTON_SUCCESS_BANDS = ((0.337, 0.02), (0.348, 0.02))
FOUR_PHOTON_FIDELITY_MIN = 0.995
FOUR_PHOTON_NOON_NORMALIZED = (0.508, 0.510, 0.481, 0.501)

MAGNITUDE_TOL = 0.02
RELATIVE_PHASE_TOL_DEG = 4.0

SYMMETRY_TOL_MAG = 0.02
SYMMETRY_TOL_PHASE_DEG = 2.0
SYMMETRY_MAX_VIOLATIONS = 2
COLUMN_NORM_TOL = 0.1
