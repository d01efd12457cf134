"""Complex special functions: theta, eta, Weierstrass, Lame, 2F1, Barnes G, Li2.

Everything downstream consumes these. Evaluation near the real-tau boundary
goes through exact modular reduction (T-shifts and S-inversion) so that
double precision survives small Im(tau); the reduction identities themselves
are part of the verified surface, so this is not circular: raw-series and
reduced evaluations are cross-checked in the test suite.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import mpmath as mp
import numpy as np
from scipy.special import loggamma as _loggamma

from .precision import (
    DEFAULT_CTX,
    BranchCutError,
    ConvergenceError,
    PoleError,
    PrecisionContext,
    ResonanceError,
)

PI = math.pi
TWOPI = 2 * math.pi
LOG2PI = math.log(2 * math.pi)

# Im(tau) below which theta-family evaluations S-reduce; chosen so the raw
# series never loses more than ~3 digits to cancellation.
TAU_REDUCE_IMAG = 0.8


@dataclass(frozen=True)
class HalfPlanePoint:
    """Modular parameter constrained to the upper half-plane, arg in (0, pi)."""

    tau: complex

    def __post_init__(self):
        if not complex(self.tau).imag > 0:
            raise ValueError(f"tau must have positive imaginary part, got {self.tau}")

    @property
    def value(self) -> complex:
        return complex(self.tau)

    def s_dual(self) -> "HalfPlanePoint":
        return HalfPlanePoint(-1 / self.value)


def _as_tau(tau) -> complex:
    t = tau.value if isinstance(tau, HalfPlanePoint) else complex(tau)
    if not t.imag > 0:
        raise ValueError(f"tau must lie in the upper half-plane, got {t}")
    return t


def loggamma_c(z) -> complex:
    return complex(_loggamma(complex(z)))


def gamma_c(z) -> complex:
    return cmath.exp(loggamma_c(z))


# ----------------------------------------------------------------------
# theta_1 and friends
# ----------------------------------------------------------------------

def _lattice_distance(z, tau) -> float:
    """Distance from z to the period lattice Z + tau Z."""
    z, tau = complex(z), complex(tau)
    y = z.imag / tau.imag
    x = z.real - y * tau.real
    best = math.inf
    for p in (math.floor(x), math.ceil(x)):
        for q in (math.floor(y), math.ceil(y)):
            best = min(best, abs(z - p - q * tau))
    return best


def _theta1_raw(z: complex, tau: complex, order: int, ctx: PrecisionContext) -> complex:
    """Series summed symmetrically in n (pairs n, -n-1), Gaussian tail bound."""
    z, tau = complex(z), complex(tau)
    total = 0j
    tol = ctx.tol
    shrinking = False
    prev_mag = math.inf
    for n in range(ctx.max_terms):
        mag = 0.0
        for nn in (n, -n - 1):
            k = nn + 0.5
            t = (-1) ** (nn % 2) * cmath.exp(1j * PI * tau * k * k + TWOPI * 1j * k * z)
            if order:
                t *= (TWOPI * 1j * k) ** order
            total += t
            mag = max(mag, abs(t))
        if n > 0 and mag < prev_mag:
            shrinking = True
        # once past the Gaussian peak, twice the last pair bounds the tail
        if shrinking and 2 * mag < tol:
            return -1j * total
        prev_mag = mag
    raise ConvergenceError(
        f"theta1 series did not reach tol={tol} within {ctx.max_terms} terms "
        f"(z={z}, tau={tau})")


def _theta1_mpmath(z: complex, tau: complex, order: int) -> complex:
    with mp.workdps(30):
        q = mp.exp(1j * mp.pi * mp.mpmathify(tau))
        val = mp.jtheta(1, mp.pi * mp.mpmathify(z), q, derivative=order)
        return complex(val * mp.pi ** order)


def theta1(z, tau, deriv_order: int = 0, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """Jacobi theta_1(z | tau), or its z-derivative of order 1..3."""
    if deriv_order not in (0, 1, 2, 3):
        raise ValueError("deriv_order must be in 0..3")
    z = complex(z)
    t = _as_tau(tau)
    if ctx.extended:
        return _theta1_mpmath(z, t, deriv_order)

    # integer shift of z costs only a sign
    nshift = round(z.real)
    if nshift:
        return (-1) ** (nshift % 2) * theta1(z - nshift, t, deriv_order, ctx)

    n = round(t.real)
    if n:
        # theta1(z | tau + 1) = e^{i pi/4} theta1(z | tau)
        return cmath.exp(1j * PI * n / 4) * theta1(z, t - n, deriv_order, ctx)
    if t.imag < TAU_REDUCE_IMAG:
        # S-step: theta1(z|tau) = -i(-i tau)^{-1/2} e^{i pi z^2 taut} theta1(z*taut | taut)
        taut = -1 / t
        c = -1j / cmath.sqrt(-1j * t)
        beta = 2j * PI * taut
        g = cmath.exp(1j * PI * z * z * taut)
        gd = [g,
              beta * z * g,
              (beta + (beta * z) ** 2) * g,
              (3 * beta * beta * z + (beta * z) ** 3) * g]
        tot = 0j
        for j in range(deriv_order + 1):
            tot += comb(deriv_order, j) * gd[deriv_order - j] * taut ** j * theta1(z * taut, taut, j, ctx)
        return c * tot
    return _theta1_raw(z, t, deriv_order, ctx)


def dedekind_eta(tau, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """Dedekind eta: q^{1/24} prod (1 - q^n), with modular reduction."""
    t = _as_tau(tau)
    n = round(t.real)
    if n:
        return cmath.exp(1j * PI * n / 12) * dedekind_eta(t - n, ctx)
    if t.imag < TAU_REDUCE_IMAG:
        # eta(-1/sig) = sqrt(-i sig) eta(sig) with -1/sig = tau
        sig = -1 / t
        return dedekind_eta(sig, ctx) * cmath.sqrt(-1j * sig)
    q = cmath.exp(TWOPI * 1j * t)
    prod = 1.0 + 0j
    qn = 1.0 + 0j
    aq = abs(q)
    for k in range(1, ctx.max_terms + 1):
        qn *= q
        prod *= 1 - qn
        if abs(qn) * 2 / (1 - aq) < ctx.tol:
            return cmath.exp(TWOPI * 1j * t / 24) * prod
    raise ConvergenceError(f"eta product did not converge at tau={t}")


def eta1_const(tau, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """-theta1'''(0)/(6 theta1'(0)); transforms as eta1(-1/tau) = tau^2 eta1 - i pi tau."""
    t = _as_tau(tau)
    n = round(t.real)
    if n:
        return eta1_const(t - n, ctx)
    if t.imag < TAU_REDUCE_IMAG:
        sig = -1 / t
        return sig ** 2 * eta1_const(sig, ctx) - 1j * PI * sig
    return -theta1(0.0, t, 3, ctx) / (6 * theta1(0.0, t, 1, ctx))


def _log_theta1_d2(z: complex, tau: complex, ctx: PrecisionContext) -> complex:
    t0 = theta1(z, tau, 0, ctx)
    t1 = theta1(z, tau, 1, ctx)
    t2 = theta1(z, tau, 2, ctx)
    return t2 / t0 - (t1 / t0) ** 2


def _log_theta1_d3(z: complex, tau: complex, ctx: PrecisionContext) -> complex:
    t0 = theta1(z, tau, 0, ctx)
    t1 = theta1(z, tau, 1, ctx)
    t2 = theta1(z, tau, 2, ctx)
    t3 = theta1(z, tau, 3, ctx)
    return t3 / t0 - 3 * t2 * t1 / t0 ** 2 + 2 * (t1 / t0) ** 3


@lru_cache(maxsize=512)
def _wp_pin_const(tau: complex, tol: float, max_terms: int) -> complex:
    """Additive constant pinned by wp(z) - z^{-2} -> 0 at z -> 0.

    Averaging h(z) = z^{-2} + (log theta1)''(z) over 4 rays kills the z^2,
    z^4, z^6 Taylor terms of the even function h, leaving O(z0^8).
    """
    ctx = PrecisionContext(tol=tol, max_terms=max_terms)
    z0 = 0.02
    acc = 0j
    for k in range(4):
        zk = z0 * cmath.exp(1j * PI * k / 4)
        acc += 1 / (zk * zk) + _log_theta1_d2(zk, tau, ctx)
    return acc / 4


def weierstrass(z, tau, order: int = 0, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """Weierstrass p-function (order 0) or its derivative (order 1) on (1, tau).

    Built as -(log theta1)'' plus a constant pinned by the Laurent property.
    """
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    z = complex(z)
    t = _as_tau(tau)
    n = round(t.real)
    if n:
        return weierstrass(z, t - n, order, ctx)
    if t.imag < TAU_REDUCE_IMAG:
        sig = -1 / t
        return sig ** (2 + order) * weierstrass(z * sig, sig, order, ctx)
    if _lattice_distance(z, t) < ctx.pole_threshold:
        raise PoleError(f"z={z} is within pole_threshold of the lattice for tau={t}")
    if order == 0:
        return -_log_theta1_d2(z, t, ctx) + _wp_pin_const(t, ctx.tol, ctx.max_terms)
    return -_log_theta1_d3(z, t, ctx)


def lame(xi, z, tau, kind: str = "x", ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """Lame functions: x(xi,z) = theta1(z-xi) theta1'(0) / (theta1(z) theta1(xi)),
    y = d/dxi x (analytic, via theta log-derivatives)."""
    xi, z = complex(xi), complex(z)
    t = _as_tau(tau)
    if min(_lattice_distance(z, t), _lattice_distance(xi, t)) < ctx.pole_threshold:
        raise PoleError("z or xi too close to the lattice")
    tz = theta1(z, t, 0, ctx)
    txi = theta1(xi, t, 0, ctx)
    tzx = theta1(z - xi, t, 0, ctx)
    x = tzx * theta1(0.0, t, 1, ctx) / (tz * txi)
    if kind == "x":
        return x
    if kind != "y":
        raise ValueError("kind must be 'x' or 'y'")
    if _lattice_distance(z - xi, t) < ctx.pole_threshold:
        raise PoleError("z - xi too close to the lattice")
    return x * (-theta1(z - xi, t, 1, ctx) / tzx - theta1(xi, t, 1, ctx) / txi)


# ----------------------------------------------------------------------
# Gauss 2F1 with the two quoted continuation formulas
# ----------------------------------------------------------------------

def _is_nonpos_int(w: complex, tol: float = 1e-12) -> bool:
    return abs(w.imag) < tol and w.real < 0.5 and abs(w.real - round(w.real)) < tol


def _is_int(w: complex, tol: float = 1e-12) -> bool:
    return abs(w.imag) < tol and abs(w.real - round(w.real)) < tol


def _hyp_series(a, b, c, x, ctx: PrecisionContext) -> complex:
    # geometric tail: allow a generous multiple of the Gaussian-series cutoff
    cap = max(16 * ctx.max_terms, 512)
    total = 1.0 + 0j
    term = 1.0 + 0j
    for n in range(cap):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        if abs(term) < ctx.tol * max(1.0, abs(total)):
            return total
    raise ConvergenceError(f"2F1 series stalled at |x|={abs(x):.3f}")


def gauss_2f1(a, b, c, x, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """2F1(a,b;c;x) on the principal branch, continued by the x -> 1-x and
    x -> 1/x connection formulas outside the unit neighbourhood."""
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    if _is_nonpos_int(c):
        raise ResonanceError(f"c={c} is a non-positive integer")
    if ctx.extended:
        with mp.workdps(30):
            return complex(mp.hyp2f1(a, b, c, x))
    if abs(x) < 0.75:
        return _hyp_series(a, b, c, x, ctx)
    if abs(1 - x) < 0.75:
        if _is_int(c - a - b):
            raise ResonanceError(f"c-a-b={c - a - b} integer: 1-x formula degenerates")
        t1 = cmath.exp(loggamma_c(c) + loggamma_c(c - a - b) - loggamma_c(c - a) - loggamma_c(c - b)) \
            * _hyp_series(a, b, 1 + a + b - c, 1 - x, ctx)
        t2 = cmath.exp(loggamma_c(a + b - c) + loggamma_c(c) - loggamma_c(a) - loggamma_c(b)) \
            * (1 - x) ** (c - a - b) * _hyp_series(c - a, c - b, c - a - b + 1, 1 - x, ctx)
        return t1 + t2
    if _is_int(a - b):
        raise ResonanceError(f"a-b={a - b} integer: 1/x formula degenerates")
    t1 = cmath.exp(loggamma_c(c) + loggamma_c(b - a) - loggamma_c(b) - loggamma_c(c - a)) \
        * (-x) ** (-a) * _hyp_series(a, a - c + 1, a - b + 1, 1 / x, ctx)
    t2 = cmath.exp(loggamma_c(c) + loggamma_c(a - b) - loggamma_c(a) - loggamma_c(c - b)) \
        * (-x) ** (-b) * _hyp_series(b, b - c + 1, b - a + 1, 1 / x, ctx)
    return t1 + t2


# ----------------------------------------------------------------------
# Barnes G
# ----------------------------------------------------------------------

_ZETA_PRIME_M1 = float(mp.zeta(-1, derivative=1))
_BERN = [float(mp.bernoulli(2 * k + 2)) for k in range(1, 13)]


def log_barnes_g1p(z, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """log G(1+z): recurrence G(1+w) = Gamma(w) G(w) into Re >= 8, then the
    asymptotic series.  Branch: continuous along the shift path with
    principal log-gamma; G(1)=G(2)=G(3)=1 by construction."""
    z = complex(z)
    if _is_int(z) and round(z.real) <= -1:
        raise PoleError(f"G(1+z) has a zero/pole structure at z={z}; log diverges")
    lg = mp.loggamma if ctx.extended else loggamma_c
    acc = mp.mpc(0) if ctx.extended else 0j
    w = mp.mpmathify(z) if ctx.extended else z
    with mp.workdps(30 if ctx.extended else mp.mp.dps):
        while complex(w).real < 8:
            acc -= lg(1 + w)
            w = w + 1
        if ctx.extended:
            lw = mp.log(w)
            s = w * w * (0.5 * lw - 0.75) + 0.5 * w * LOG2PI - lw / 12 + _ZETA_PRIME_M1
            for k in range(1, 13):
                s += _BERN[k - 1] / (2 * k * (2 * k + 2) * w ** (2 * k))
            return complex(s + acc)
    lw = cmath.log(w)
    s = w * w * (0.5 * lw - 0.75) + 0.5 * w * LOG2PI - lw / 12 + _ZETA_PRIME_M1
    for k in range(1, 13):
        s += _BERN[k - 1] / (2 * k * (2 * k + 2) * w ** (2 * k))
    return s + acc


def log_ghat(x, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """log of G(1+x)/G(1-x)."""
    return log_barnes_g1p(x, ctx) - log_barnes_g1p(-complex(x), ctx)


def barnes_ghat(x, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    x = complex(x)
    if _is_int(x) and round(x.real) != 0:
        raise PoleError(f"Ghat has zeros/poles at nonzero integers, got x={x}")
    if abs(x) < 1e-15:
        return 1.0 + 0j
    return cmath.exp(log_ghat(x, ctx))


def dlog_barnes_g1p(z) -> complex:
    """d/dz log G(1+z) = log(2 pi)/2 + 1/2 - z + z psi(z)."""
    from scipy.special import digamma
    z = complex(z)
    return 0.5 * LOG2PI + 0.5 - z + z * complex(digamma(z))


def dlog_ghat(x) -> complex:
    """d/dx log Ghat(x) = log(2 pi) - pi x cot(pi x)."""
    x = complex(x)
    if abs(x) < 1e-9:
        return LOG2PI - 1.0 + 0j
    return LOG2PI - PI * x / cmath.tan(PI * x)


def barnes_g_ratio4(a, atil, m, ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """Full Barnes prefactor of the modular connection constant:
    [G(1+2a)G(1-2a)/(G(1-m+2a)G(1-m-2a))] * [G(1-m+2at)G(1-m-2at)/(G(1+2at)G(1-2at))]."""
    a, atil, m = complex(a), complex(atil), complex(m)
    s = (log_barnes_g1p(2 * a, ctx) + log_barnes_g1p(-2 * a, ctx)
         - log_barnes_g1p(-m + 2 * a, ctx) - log_barnes_g1p(-m - 2 * a, ctx)
         + log_barnes_g1p(-m + 2 * atil, ctx) + log_barnes_g1p(-m - 2 * atil, ctx)
         - log_barnes_g1p(2 * atil, ctx) - log_barnes_g1p(-2 * atil, ctx))
    return cmath.exp(s)


# ----------------------------------------------------------------------
# dilogarithm, cut on (1, inf)
# ----------------------------------------------------------------------

def _dilog_series(z: complex, ctx: PrecisionContext) -> complex:
    total = 0j
    zk = z
    cap = max(16 * ctx.max_terms, 256)
    for k in range(1, cap):
        total += zk / (k * k)
        zk *= z
        if abs(zk) < ctx.tol * (k + 1) ** 2:
            return total
    raise ConvergenceError("dilog series stalled")


def _dilog_logexp(w: complex, ctx: PrecisionContext) -> complex:
    """Li2(e^w) for |w| < 2 pi via the Jonquiere-type expansion."""
    if w == 0:
        return PI * PI / 6 + 0j
    total = PI * PI / 6 + w * (1 - cmath.log(-w)) - w * w / 4
    wk = w * w * w
    fact = 6.0
    for j in range(1, 40):
        # zeta(1-2j) = -B_{2j}/(2j); odd negative zeta values only
        zv = -float(mp.bernoulli(2 * j)) / (2 * j)
        term = zv * wk / fact
        total += term
        wk *= w * w
        fact *= (2 * j + 2) * (2 * j + 3)
        if abs(term) < ctx.tol:
            return total
    raise ConvergenceError("dilog log-expansion stalled")


def dilog(z, ctx: PrecisionContext = DEFAULT_CTX, side: int = 0) -> complex:
    """Li_2 with logarithmic cut on (1, inf).

    side: for z on the cut, +1 evaluates the limit from above, -1 from below;
    0 raises BranchCutError there.
    """
    z = complex(z)
    if z.imag == 0 and z.real > 1:
        if side == 0:
            raise BranchCutError(f"z={z.real} lies on the (1, inf) cut; pass side=+1 or -1")
        z += 1e-300j * side
    if ctx.extended:
        with mp.workdps(30):
            return complex(mp.polylog(2, mp.mpmathify(z)))
    if abs(z) <= 0.5:
        return _dilog_series(z, ctx)
    if abs(z) >= 2:
        return -dilog(1 / z, ctx) - PI * PI / 6 - 0.5 * cmath.log(-z) ** 2
    return _dilog_logexp(cmath.log(z), ctx)


# ----------------------------------------------------------------------
# b -> 0 double-sine exponent
# ----------------------------------------------------------------------

def double_sine_asymp(x, form: str = "dilog", ctx: PrecisionContext = DEFAULT_CTX) -> complex:
    """Coefficient of 1/b^2 in log S_b(x/b) as b -> 0.

    form='dilog':  (i/4pi) [Li2(e^{2 pi i x}) - Li2(e^{-2 pi i x})]
    form='ghat' :  log[ Ghat(x) (sin(pi x)/pi)^x ]
    form='class':  (i/2pi) [Li2(e^{2 pi i x}) - pi^2/6 - pi^2 x(x-1)]
    The three agree where the principal branches align.
    """
    x = complex(x)
    if _is_int(x):
        raise PoleError(f"double-sine exponent is singular at integer x={x}")
    if form == "dilog":
        return (1j / (4 * PI)) * (dilog(cmath.exp(2j * PI * x), ctx) - dilog(cmath.exp(-2j * PI * x), ctx))
    if form == "ghat":
        return log_ghat(x, ctx) + x * cmath.log(cmath.sin(PI * x) / PI)
    if form == "class":
        return (1j / (2 * PI)) * (dilog(cmath.exp(2j * PI * x), ctx) - PI * PI / 6 - PI * PI * x * (x - 1))
    raise ValueError("form must be 'dilog', 'ghat' or 'class'")
