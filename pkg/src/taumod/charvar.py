"""SL(2) character variety of the once-punctured torus.

Monodromy matrices in the (a, nu, m) coordinates, trace coordinates and the
Fricke cubic, the Goldman bracket, and the coordinate maps between primal
(a, nu, m) and dual (atil, nutil, m) data under the S-transformation.

Branch policy: the dual/primal maps use principal logs and arccos; the branch
is then fixed by requiring the tr(M_A M_B) relation, trying the sign partner
(and half-integer shifts for chart completion) and recording which candidate
was used.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .numdiff import central
from .precision import DEFAULT_CTX, DegenerateError, PoleError, PrecisionContext
from .specfun import loggamma_c

PI = math.pi

# simultaneous a -> a+1/2, nutil -> nutil+2pi leaves every trace relation
# invariant; MABS_TOL decides when a candidate branch is accepted
MABS_TOL = 1e-8


@dataclass(frozen=True)
class MonodromyPoint:
    """Coordinates (a, nu, m): A-cycle exponent, conjugate coordinate, puncture exponent."""

    a: complex
    nu: complex
    m: complex = 0.0

    def __post_init__(self):
        if abs(cmath.sin(2 * PI * complex(self.a))) < 1e-12:
            raise DegenerateError(f"sin(2 pi a) vanishes at a={self.a}")

    def as_tuple(self):
        return complex(self.a), complex(self.nu), complex(self.m)


@dataclass(frozen=True)
class DualMonodromyPoint:
    """Dual coordinates (atil, nutil, m) attached to the B-cycle decomposition."""

    atil: complex
    nutil: complex
    m: complex = 0.0
    branch_flips: int = field(default=0, compare=False)

    def __post_init__(self):
        if abs(cmath.sin(2 * PI * complex(self.atil))) < 1e-12:
            raise DegenerateError(f"sin(2 pi atil) vanishes at atil={self.atil}")

    def as_tuple(self):
        return complex(self.atil), complex(self.nutil), complex(self.m)


@dataclass(frozen=True)
class MonodromyRep:
    M_A: np.ndarray
    M_B: np.ndarray
    M_0: np.ndarray

    def constraint_residual(self) -> float:
        lhs = (np.linalg.inv(self.M_B) @ np.linalg.inv(self.M_A)
               @ self.M_B @ self.M_A @ self.M_0)
        return float(np.abs(lhs - np.eye(2)).max())


@dataclass(frozen=True)
class TraceCoords:
    A: complex
    B: complex
    C: complex


def build_monodromy(p: MonodromyPoint) -> MonodromyRep:
    """M_A diagonal, M_B explicit, M_0 reconstructed from the group relation."""
    a, nu, m = p.as_tuple()
    s = cmath.sin(2 * PI * a)
    if abs(s) < 1e-12:
        raise DegenerateError("sin(2 pi a) ~ 0")
    M_A = np.diag([cmath.exp(2j * PI * a), cmath.exp(-2j * PI * a)])
    M_B = np.array([
        [cmath.exp(-0.5j * nu) * cmath.sin(PI * (2 * a - m)),
         cmath.exp(0.5j * nu) * cmath.sin(PI * m)],
        [-cmath.exp(-0.5j * nu) * cmath.sin(PI * m),
         cmath.exp(0.5j * nu) * cmath.sin(PI * (2 * a + m))],
    ]) / s
    # M_B^{-1} M_A^{-1} M_B M_A M_0 = 1
    M_0 = np.linalg.inv(M_A) @ np.linalg.inv(M_B) @ M_A @ M_B
    return MonodromyRep(M_A, M_B, M_0)


def trace_a(a) -> complex:
    return 2 * cmath.cos(2 * PI * complex(a))


def trace_b(a, nu, m) -> complex:
    a, nu, m = complex(a), complex(nu), complex(m)
    s = cmath.sin(2 * PI * a)
    return (cmath.exp(-0.5j * nu) * cmath.sin(PI * (2 * a - m))
            + cmath.exp(0.5j * nu) * cmath.sin(PI * (2 * a + m))) / s


def trace_ab(a, nu, m) -> complex:
    a, nu, m = complex(a), complex(nu), complex(m)
    s = cmath.sin(2 * PI * a)
    return (cmath.exp(-0.5j * nu + 2j * PI * a) * cmath.sin(PI * (2 * a - m))
            + cmath.exp(0.5j * nu - 2j * PI * a) * cmath.sin(PI * (2 * a + m))) / s


def trace_coords(p: MonodromyPoint) -> TraceCoords:
    a, nu, m = p.as_tuple()
    return TraceCoords(trace_a(a), trace_b(a, nu, m), trace_ab(a, nu, m))


def fricke_residual(t: TraceCoords, m) -> complex:
    m = complex(m)
    return (t.A ** 2 + t.B ** 2 + t.C ** 2 - t.A * t.B * t.C
            - (cmath.exp(2j * PI * m) + cmath.exp(-2j * PI * m)) - 2)


def _dual_trace_b(atil, nutil, m) -> complex:
    """RHS of the tr M_A relation written in dual coordinates."""
    atil, nutil, m = complex(atil), complex(nutil), complex(m)
    s = cmath.sin(2 * PI * atil)
    return (cmath.exp(-0.5j * nutil) * cmath.sin(PI * (2 * atil - m))
            + cmath.exp(0.5j * nutil) * cmath.sin(PI * (2 * atil + m))) / s


def _dual_trace_ab(atil, nutil, m) -> complex:
    """RHS of the tr M_A M_B relation written in dual coordinates."""
    atil, nutil, m = complex(atil), complex(nutil), complex(m)
    s = cmath.sin(2 * PI * atil)
    return (cmath.exp(-0.5j * nutil - 2j * PI * atil) * cmath.sin(PI * (2 * atil - m))
            + cmath.exp(0.5j * nutil + 2j * PI * atil) * cmath.sin(PI * (2 * atil + m))) / s


def _nutil_formula(a, atil, nu, m) -> complex:
    """nutil = 4 pi a - 2i log[sin(pi atil - pi m/2 - nu/4)/sin(pi atil + pi m/2 - nu/4)]."""
    a, atil, nu, m = complex(a), complex(atil), complex(nu), complex(m)
    num = cmath.sin(PI * atil - PI * m / 2 - nu / 4)
    den = cmath.sin(PI * atil + PI * m / 2 - nu / 4)
    if min(abs(num), abs(den)) < 1e-14:
        raise DegenerateError("sine ratio in the dual-coordinate map degenerates")
    return 4 * PI * a - 2j * cmath.log(num / den)


def a_from_dual(d: DualMonodromyPoint, nu) -> complex:
    """A-cycle exponent from dual data: principal log of the cosine ratio."""
    atil, _, m = d.as_tuple()
    nu = complex(nu)
    num = 2 * cmath.cos(2 * PI * atil) - cmath.exp(1j * PI * m - 0.5j * nu) - cmath.exp(-1j * PI * m + 0.5j * nu)
    den = 2 * cmath.cos(2 * PI * atil) - cmath.exp(1j * PI * m + 0.5j * nu) - cmath.exp(-1j * PI * m - 0.5j * nu)
    if abs(den) < 1e-14 or abs(num) < 1e-14:
        raise DegenerateError("vanishing numerator/denominator in a_from_dual")
    if abs(num - den) < 1e-14 * max(1.0, abs(num)):
        # m = 0 direction: the ratio degenerates to 1 and only pins a mod 1/2
        return 0j
    return cmath.log(num / den) / (4j * PI)


def dual_from_primal(p: MonodromyPoint) -> DualMonodromyPoint:
    """(a, nu, m) -> (atil, nutil, m): principal arccos for atil, then the
    tr M_A M_B relation picks the sign; m=0 uses the exact dictionary."""
    a, nu, m = p.as_tuple()
    if abs(m) < 1e-14:
        return DualMonodromyPoint(nu / (4 * PI), -4 * PI * a, m)
    B = trace_b(a, nu, m)
    if abs(B - 2) < 1e-12 or abs(B + 2) < 1e-12:
        raise DegenerateError(f"parabolic point B={B}; dual exponent undefined")
    at0 = np.arccos(complex(B) / 2) / (2 * PI)
    C = trace_ab(a, nu, m)
    for flips, cand in enumerate((at0, -at0)):
        nutil = _nutil_formula(a, cand, nu, m)
        if abs(_dual_trace_ab(cand, nutil, m) - C) < MABS_TOL:
            return DualMonodromyPoint(cand, nutil, m, branch_flips=flips)
    raise DegenerateError("no arccos branch satisfied the tr M_A M_B relation")


def nu_from_dual(d: DualMonodromyPoint) -> tuple[complex, complex]:
    """(atil, nutil, m) -> (a, nu): the mirror of dual_from_primal."""
    atil, nutil, m = d.as_tuple()
    if abs(m) < 1e-14:
        return -nutil / (4 * PI), 4 * PI * atil
    A = _dual_trace_b(atil, nutil, m)   # = tr M_A
    if abs(A - 2) < 1e-12 or abs(A + 2) < 1e-12:
        raise DegenerateError("parabolic tr M_A; primal exponent undefined")
    a0 = np.arccos(complex(A) / 2) / (2 * PI)
    Cdual = _dual_trace_ab(atil, nutil, m)
    for cand in (a0, -a0):
        num = cmath.sin(PI * cand - PI * m / 2 - nutil / 4)
        den = cmath.sin(PI * cand + PI * m / 2 - nutil / 4)
        if min(abs(num), abs(den)) < 1e-14:
            continue
        nu = 4 * PI * atil - 2j * cmath.log(num / den)
        if abs(trace_ab(cand, nu, m) - Cdual) < MABS_TOL:
            return cand, nu
    raise DegenerateError("no branch satisfied the tr M_A M_B relation in nu_from_dual")


def eta_of_nu(p: MonodromyPoint) -> complex:
    """eta with e^{2 pi i eta} = Gam(1-2a)Gam(2a-m)/(Gam(2a)Gam(1-2a-m)) e^{i nu/2}."""
    a, nu, m = p.as_tuple()
    return nu / (4 * PI) + (1j / (2 * PI)) * (
        loggamma_c(2 * a) + loggamma_c(1 - 2 * a - m)
        - loggamma_c(1 - 2 * a) - loggamma_c(2 * a - m))


def delta_nu(a, m) -> complex:
    """4 pi eta - nu; depends on (a, m) only."""
    a, m = complex(a), complex(m)
    return 2j * (loggamma_c(2 * a) + loggamma_c(1 - 2 * a - m)
                 - loggamma_c(1 - 2 * a) - loggamma_c(2 * a - m))


def goldman_residual(p: MonodromyPoint, ctx: PrecisionContext = DEFAULT_CTX,
                     fd_step: float = 1e-5) -> complex:
    """{A,B} - (C - AB/2) with {f,g} = (1/2pi)(df/da dg/dnu - df/dnu dg/da),
    via central finite differences."""
    a, nu, m = p.as_tuple()
    h = fd_step

    def A_f(aa, nn):
        return trace_a(aa)

    def B_f(aa, nn):
        return trace_b(aa, nn, m)

    dA_da = central(lambda x: A_f(x, nu), a, h)
    dA_dnu = central(lambda x: A_f(a, x), nu, h)
    dB_da = central(lambda x: B_f(x, nu), a, h)
    dB_dnu = central(lambda x: B_f(a, x), nu, h)
    bracket = (dA_da * dB_dnu - dA_dnu * dB_da) / (2 * PI)
    C = trace_ab(a, nu, m)
    return bracket - (C - 0.5 * trace_a(a) * trace_b(a, nu, m))


def apply_symmetry(p: MonodromyPoint, kind: str, k: int = 1) -> MonodromyPoint:
    """Coordinate redundancies that fix the trace coordinates.

    kind='m_flip':  m -> -m with nu -> nu + 2i log[sin pi(2a-m)/sin pi(2a+m)]
    kind='sign_flip': (a, nu) -> (-a, -nu)
    kind='shift': a -> a + k (traces exactly periodic)
    """
    a, nu, m = p.as_tuple()
    if kind == "m_flip":
        num = cmath.sin(PI * (2 * a - m))
        den = cmath.sin(PI * (2 * a + m))
        if min(abs(num), abs(den)) < 1e-14:
            raise PoleError("m_flip log argument vanishes")
        return MonodromyPoint(a, nu + 2j * cmath.log(num / den), -m)
    if kind == "sign_flip":
        return MonodromyPoint(-a, -nu, m)
    if kind == "shift":
        return MonodromyPoint(a + k, nu, m)
    raise ValueError("kind must be 'm_flip', 'sign_flip' or 'shift'")
