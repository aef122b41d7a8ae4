"""Joint detector state assembly.

After both detectors have fired, the reduced two-detector state in the
basis |gg>, |ge>, |eg>, |ee> has an X shape: four real populations plus
the two anti-diagonal coherences rho14 and rho23.  This module builds that
state from the five correlator scalars along two independent routes:

* assemble_main: the compact per-element expressions in terms of
  cosh/sinh(omega), cos/sin(2 kappa) and the phase gamma.
* assemble_appendix: the expansion of the evolution operator into the 16
  vacuum moments f_(jklm) (signature j,k,l,m in {+1,-1}) with explicit
  per-term gap phases exp(+-i Omega tau0), then the four basis-projector
  combinations weighted by cos/sin(theta).

The two must agree entrywise to 1e-12, which the test suite enforces over
random parameter draws.

Phase conventions: rho14 carries exp(-i (Omega_A tau_A0 + Omega_B tau_B0))
and rho23 carries exp(-i (Omega_A tau_A0 - Omega_B tau_B0)).  The sign in
the rho23 prefactor is the one consistent with the moment expansion (an
alternative convention with a plus sign appears in some closed-form
listings of the same elements; the modulus, which is all that enters the
measures, is identical either way).  The moment expansion's central-phase
factor exp(+-2i x) inside f_(jklm) carries the commutator scalar kappa.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .field_correlators import CorrelatorSet, DetectorParams

__all__ = [
    "InitialState",
    "FSignature",
    "XDensityMatrix",
    "AssemblyError",
    "f_jklm",
    "assemble_main",
    "assemble_appendix",
]

# Deviations beyond this are formula bugs and raise; below it, negative
# population dust is clamped to zero.
_RAISE_TOL = 1e-9


class AssemblyError(RuntimeError):
    """A built state violates a physical invariant beyond float dust."""


@dataclass(frozen=True)
class InitialState:
    """Entanglement angle of the initial pure state
    cos(theta)|gg> + sin(theta)|ee>, theta in [0, pi/2]."""

    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and 0.0 <= self.theta <= math.pi / 2.0):
            raise ValueError(f"InitialState.theta must lie in [0, pi/2], got {self.theta!r}")


@dataclass(frozen=True)
class FSignature:
    """Signature (j, k, l, m), each +1 or -1, labelling one vacuum moment."""

    j: int
    k: int
    l: int
    m: int

    def __post_init__(self):
        for name in ("j", "k", "l", "m"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"FSignature.{name} must be +1 or -1, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class XDensityMatrix:
    """X-structured two-detector state: populations rho11..rho44 and
    anti-diagonal coherences rho14, rho23 in the basis |gg>,|ge>,|eg>,|ee>.

    Instances are immutable; build them with from_elements(), which
    validates trace, positivity of the populations, and positive
    semidefiniteness of both 2x2 blocks.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex
    rho23: complex

    @classmethod
    def from_elements(cls, rho11, rho22, rho33, rho44, rho14, rho23):
        diags = [float(rho11), float(rho22), float(rho33), float(rho44)]
        trace = math.fsum(diags)
        if abs(trace - 1.0) > _RAISE_TOL:
            raise AssemblyError(f"trace deviates from 1 by {trace - 1.0:.3e}")
        names = ("rho11", "rho22", "rho33", "rho44")
        for i, (name, v) in enumerate(zip(names, diags)):
            if v < -_RAISE_TOL:
                raise AssemblyError(f"population {name} is negative: {v:.3e}")
            if v < 0.0:
                diags[i] = 0.0  # dust within tolerance
        rho14 = complex(rho14)
        rho23 = complex(rho23)
        for name, d1, d2, off in (
            ("outer", diags[0], diags[3], rho14),
            ("inner", diags[1], diags[2], rho23),
        ):
            excess = abs(off) ** 2 - d1 * d2
            if excess > _RAISE_TOL:
                raise AssemblyError(
                    f"{name} block violates |off-diagonal|^2 <= product of populations "
                    f"by {excess:.3e}"
                )
            low_eig = 0.5 * (d1 + d2) - math.hypot(0.5 * (d1 - d2), abs(off))
            if low_eig < -_RAISE_TOL:
                raise AssemblyError(f"{name} block eigenvalue is negative: {low_eig:.3e}")
        return cls(diags[0], diags[1], diags[2], diags[3], rho14, rho23)

    def diagonals(self):
        return (self.rho11, self.rho22, self.rho33, self.rho44)

    def as_matrix(self) -> np.ndarray:
        """Reconstruct the full 4x4 complex matrix (exactly Hermitian)."""
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.diagonals()
        m[0, 3] = self.rho14
        m[3, 0] = self.rho14.conjugate()
        m[1, 2] = self.rho23
        m[2, 1] = self.rho23.conjugate()
        return m


def f_jklm(sig: FSignature, c: CorrelatorSet) -> complex:
    """One vacuum moment of the expanded evolution operator.

    Sixteen-term closed form; the central phase carries the commutator
    scalar and the hyperbolic weights carry the anticommutator:

        (1/16) [ (1 + jl + km + jklm)
               + (1 + jl)(k + m) f_A
               + ((l + jkm) e^{2i kappa} + (j + klm) e^{-2i kappa}) f_B
               + ((jk + lm) e^{omega} + (jm + kl) e^{-omega}) f_A f_B ]

    The eight signatures with an odd number of minus signs have every
    integer coefficient equal to zero, so they vanish identically.
    """
    j, k, l, m = sig.j, sig.k, sig.l, sig.m
    e_plus = cmath.exp(2j * c.kappa)
    e_minus = e_plus.conjugate()
    ew = math.exp(c.omega)
    ewm = math.exp(-c.omega)
    const = 1 + j * l + k * m + j * k * l * m
    a_part = (1 + j * l) * (k + m) * c.f_a
    b_part = ((l + j * k * m) * e_plus + (j + k * l * m) * e_minus) * c.f_b
    ab_part = ((j * k + l * m) * ew + (j * m + k * l) * ewm) * (c.f_a * c.f_b)
    return (const + a_part + b_part + ab_part) / 16.0


def assemble_main(
    s: InitialState, c: CorrelatorSet, *, delta: float | None = None
) -> XDensityMatrix:
    """Build the X state from the compact per-element closed forms.

    delta is the gap-weighted switch-time difference
    Omega_A tau_A0 - Omega_B tau_B0 entering the phase of rho23; the five
    correlator scalars do not determine it.  None selects -gamma, which is
    the value under the default time origin tau_A0 = 0.
    """
    if delta is None:
        delta = -c.gamma
    th = s.theta
    c2 = math.cos(2.0 * th)
    cs = math.cos(th) * math.sin(th)
    fa, fb = c.f_a, c.f_b
    sym = fa * fb * math.cosh(c.omega)        # even combination, feeds all populations
    sh = math.sinh(c.omega)
    c2k = math.cos(2.0 * c.kappa)
    s2k = math.sin(2.0 * c.kappa)
    cg = math.cos(c.gamma)
    sg = math.sin(c.gamma)

    even = c2 * (fa + fb * c2k)
    odd = c2 * (fa - fb * c2k)
    cross_m = fb * (fa * sh * cg - s2k * sg)
    cross_p = fb * (fa * sh * cg + s2k * sg)

    r11 = 0.25 * (1.0 + sym + even) + 0.5 * cs * cross_m
    r22 = 0.25 * (1.0 - sym + odd) - 0.5 * cs * cross_m
    r33 = 0.25 * (1.0 - sym - odd) - 0.5 * cs * cross_p
    r44 = 0.25 * (1.0 + sym - even) + 0.5 * cs * cross_p

    core = 0.25 * fb * complex(fa * sh, c2 * s2k)
    b14 = core + 0.5 * cs * complex((1.0 + sym) * cg, (fa + fb * c2k) * sg)
    b23 = -core + 0.5 * cs * complex((1.0 - sym) * cg, (fa - fb * c2k) * sg)
    r14 = cmath.exp(-1j * c.gamma) * b14
    r23 = cmath.exp(-1j * delta) * b23
    return XDensityMatrix.from_elements(r11, r22, r33, r44, r14, r23)


def _moment_table(c):
    def f(j, k, l, m):
        return f_jklm(FSignature(j, k, l, m), c)

    return {
        "pppp": f(+1, +1, +1, +1),
        "mmmm": f(-1, -1, -1, -1),
        "mmpp": f(-1, -1, +1, +1),
        "ppmm": f(+1, +1, -1, -1),
        "mpmp": f(-1, +1, -1, +1),
        "pmpm": f(+1, -1, +1, -1),
        "pmmp": f(+1, -1, -1, +1),
        "mppm": f(-1, +1, +1, -1),
    }


def _real_part(name, z):
    if abs(z.imag) > _RAISE_TOL:
        raise AssemblyError(f"population {name} picked up an imaginary part: {z.imag:.3e}")
    return z.real


def assemble_appendix(
    s: InitialState, a: DetectorParams, b: DetectorParams, c: CorrelatorSet
) -> XDensityMatrix:
    """Build the X state from the 16 vacuum moments and explicit gap phases.

    Takes the detector parameters for the phase bookkeeping (each term
    carries its own exp(+-i Omega tau0) factors).  Cross-checks
    assemble_main; the two agree entrywise to 1e-12.
    """
    phi_a = a.energy_gap * a.switch_time
    phi_b = b.energy_gap * b.switch_time
    gamma = phi_a + phi_b
    if abs(gamma - c.gamma) > 1e-9:
        raise ValueError(
            f"correlator gamma {c.gamma!r} does not match the detectors' phases ({gamma!r})"
        )
    th = s.theta
    cc = math.cos(th) ** 2
    ss = math.sin(th) ** 2
    cs = math.cos(th) * math.sin(th)
    eg = cmath.exp(1j * gamma)
    eg_c = eg.conjugate()
    f = _moment_table(c)

    r11 = cc * f["pppp"] + cs * (f["mmpp"] * eg + f["ppmm"] * eg_c) + ss * f["mmmm"]
    r22 = cc * f["mpmp"] + cs * (f["pmmp"] * eg + f["mppm"] * eg_c) + ss * f["pmpm"]
    r33 = cc * f["pmpm"] + cs * (f["mppm"] * eg + f["pmmp"] * eg_c) + ss * f["mpmp"]
    r44 = cc * f["mmmm"] + cs * (f["ppmm"] * eg + f["mmpp"] * eg_c) + ss * f["pppp"]
    r14 = (
        cc * f["mmpp"] * eg_c
        + cs * f["pppp"]
        + cs * f["mmmm"] * cmath.exp(-2j * gamma)
        + ss * f["ppmm"] * eg_c
    )
    e_delta = cmath.exp(-1j * (phi_a - phi_b))
    r23 = (
        cc * f["pmmp"] * e_delta
        + cs * f["mpmp"] * cmath.exp(2j * phi_b)
        + cs * f["pmpm"] * cmath.exp(-2j * phi_a)
        + ss * f["mppm"] * e_delta
    )
    return XDensityMatrix.from_elements(
        _real_part("rho11", r11),
        _real_part("rho22", r22),
        _real_part("rho33", r33),
        _real_part("rho44", r44),
        r14,
        r23,
    )
