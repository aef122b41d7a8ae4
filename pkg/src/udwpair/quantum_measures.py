"""Correlation measures on the X-structured two-detector state.

The X shape decouples the 4x4 spectrum into two 2x2 blocks (inner: rows
2,3; outer: rows 1,4), so everything here has both a closed form tied to
that structure and a generic matrix route.  The pairs

* spectrum_closed   vs spectrum_general
* negativity_closed vs negativity_full

are kept as independent implementations on purpose: the tests drive both
and demand agreement, which guards each against transcription slips in
the other.

Conventions: coherence_rec is in bits (log base 2); negativity is the
absolute sum of negative partial-transpose eigenvalues (transpose taken
over the first detector).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .detector_state import XDensityMatrix

__all__ = [
    "MeasureSet",
    "Spectrum4",
    "coherence_l1",
    "spectrum_closed",
    "spectrum_general",
    "coherence_rec",
    "negativity_full",
    "negativity_closed",
    "negativity_pair",
    "measure_set",
]

logger = logging.getLogger(__name__)

# Eigenvalue dust below zero tolerated by the entropy; anything lower is a bug.
_EIG_CLAMP = 1e-10
_REC_CLAMP = 1e-12


@dataclass(frozen=True)
class Spectrum4:
    """Eigenvalues of the X state, block ordered:
    (inner low, inner high, outer low, outer high)."""

    lam1: float
    lam2: float
    lam3: float
    lam4: float

    def as_tuple(self):
        return (self.lam1, self.lam2, self.lam3, self.lam4)


@dataclass(frozen=True)
class MeasureSet:
    c_l1: float
    c_rec: float
    negativity: float


def coherence_l1(m: XDensityMatrix) -> float:
    """Sum of the moduli of all off-diagonal entries: 2|rho14| + 2|rho23|."""
    return 2.0 * abs(m.rho14) + 2.0 * abs(m.rho23)


def spectrum_closed(m: XDensityMatrix) -> Spectrum4:
    """Literal transcription of the block eigenvalues via the
    sqrt(p^2 + 4|off|^2 - 2pq + q^2) discriminants."""
    s_in = math.sqrt(
        m.rho22 ** 2 + 4.0 * abs(m.rho23) ** 2 - 2.0 * m.rho22 * m.rho33 + m.rho33 ** 2
    )
    s_out = math.sqrt(
        m.rho11 ** 2 + 4.0 * abs(m.rho14) ** 2 - 2.0 * m.rho11 * m.rho44 + m.rho44 ** 2
    )
    return Spectrum4(
        0.5 * (m.rho22 + m.rho33 - s_in),
        0.5 * (m.rho22 + m.rho33 + s_in),
        0.5 * (m.rho11 + m.rho44 - s_out),
        0.5 * (m.rho11 + m.rho44 + s_out),
    )


def _block_eigs(a: float, b: float, c: complex):
    # hypot form for the discriminant, then the small root via the
    # determinant so it never suffers cancellation
    half = 0.5 * (a + b)
    d = math.hypot(0.5 * (a - b), abs(c))
    hi = half + d
    det = a * b - abs(c) ** 2
    lo = det / hi if hi > 0.0 else half - d
    return lo, hi


def spectrum_general(m: XDensityMatrix) -> Spectrum4:
    """Block eigenvalues computed the numerically careful way."""
    in_lo, in_hi = _block_eigs(m.rho22, m.rho33, m.rho23)
    out_lo, out_hi = _block_eigs(m.rho11, m.rho44, m.rho14)
    return Spectrum4(in_lo, in_hi, out_lo, out_hi)


def _entropy_bits(values) -> float:
    total = 0.0
    for v in values:
        if v < -_EIG_CLAMP:
            raise ValueError(f"eigenvalue {v!r} is negative beyond tolerance")
        if v <= 0.0:
            continue  # 0 log 0 = 0, and dust in [-1e-10, 0) counts as 0
        total -= v * math.log2(v)
    return total


def coherence_rec(m: XDensityMatrix) -> float:
    """Relative entropy of coherence in bits:
    S(diagonal part) - S(full state)."""
    rec = _entropy_bits(m.diagonals()) - _entropy_bits(spectrum_general(m).as_tuple())
    if rec < -_REC_CLAMP:
        raise ValueError(f"relative entropy of coherence came out negative: {rec!r}")
    return 0.0 if rec < 0.0 else rec


def negativity_full(m: XDensityMatrix) -> float:
    """Negativity from the dense partial transpose over the first detector."""
    pt = m.as_matrix().reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
    evals = np.linalg.eigvalsh(pt)
    return float(-evals[evals < 0.0].sum())


def negativity_closed(m: XDensityMatrix) -> float:
    """Negativity from the X structure: the partial transpose swaps the
    coherences between the blocks, and only the block holding rho14 can
    dip negative for states reachable here."""
    return max(
        0.0,
        math.hypot(abs(m.rho14), 0.5 * (m.rho33 - m.rho22))
        - 0.5 * (m.rho22 + m.rho33),
    )


def negativity_pair(m: XDensityMatrix):
    """Both negativity routes; logs a warning if they disagree.

    The closed form only tracks the partial-transpose block built from the
    inner populations and rho14.  The other block (outer populations and
    rho23) stays positive for every state this package builds, but a
    hand-crafted X matrix can break that, in which case the full route is
    the trustworthy one.
    """
    full = negativity_full(m)
    closed = negativity_closed(m)
    if abs(full - closed) > 1e-12:
        logger.warning(
            "negativity routes disagree: full=%r closed=%r (closed form covers one "
            "partial-transpose block only)",
            full,
            closed,
        )
    return full, closed


def measure_set(m: XDensityMatrix) -> MeasureSet:
    return MeasureSet(coherence_l1(m), coherence_rec(m), negativity_full(m))
