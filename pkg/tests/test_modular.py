import cmath
import math

import numpy as np
import pytest

from taumod import charvar as cv
from taumod import modular as md
from taumod.numdiff import central, central4
from taumod.specfun import dedekind_eta, theta1

PI = math.pi
TWOPI = 2 * PI

P_REF = cv.MonodromyPoint(0.23, 1.1, 0.17)
D_REF = cv.dual_from_primal(P_REF)


def test_upsilon_hat_m0(ctx):
    d0 = cv.dual_from_primal(cv.MonodromyPoint(0.23, 1.1, 0.0))
    v = md.upsilon_hat(0.23, d0.atil, d0.nutil, 0.0, ctx)
    assert abs(v - cmath.exp(1j * d0.atil * d0.nutil)) < 1e-13
    assert abs(v - cmath.exp(-1j * 1.1 * 0.23)) < 1e-13


def test_upsilon_hat_even_in_nutil(ctx):
    v1 = md.upsilon_hat(0.23, D_REF.atil, D_REF.nutil, 0.17, ctx)
    v2 = md.upsilon_hat(0.23, -D_REF.atil, -D_REF.nutil, 0.17, ctx)
    assert abs(v1 - v2) < 1e-12


def test_upsilon_full(ctx):
    assert abs(md.upsilon_full(cv.MonodromyPoint(0.23, 1.1, 0.0), ctx)
               - cmath.exp(-1j * 1.1 * 0.23)) < 1e-14
    # differential consistency with the one-forms
    from taumod import trinion as tr
    assert np.abs(tr.upsilon_dlog_residual(P_REF, ctx)).max() < 1e-6


def test_upsilon_dlog_matches_fd(ctx):
    # d log Upsilon along nu AT FIXED atil equals the analytic chart component
    from taumod import trinion as tr
    from taumod.charvar import DualMonodromyPoint, a_from_dual
    d = D_REF
    h = 1e-6

    def logU(nu):
        raw = a_from_dual(DualMonodromyPoint(d.atil, 0.0, 0.17), nu)
        a = min((rawc + k / 2 for rawc in (raw, -raw) for k in (-1, 0, 1)),
                key=lambda c: abs(c - 0.23))
        p = cv.MonodromyPoint(a, nu, 0.17)
        return cmath.log(md.upsilon_full(p, ctx))

    fd = (logU(1.1 + h) - logU(1.1 - h)) / (2 * h)
    an = tr.dlog_upsilon_chart(P_REF, ctx, d).components[1]
    assert abs(fd - an) < 1e-6


def test_gen_g0_gradients_and_relations(ctx):
    at, nu, m = D_REF.atil, 1.1, 0.17
    g = md.gen_g0_gradients(at, nu, m, ctx)
    for key, idx in (("atil", 0), ("nu", 1), ("m", 2)):
        base = [at, nu, m]

        def f(x, idx=idx):
            v = list(base)
            v[idx] = x
            return md.gen_g0(*v, ctx)

        assert abs(central4(f, base[idx], 1e-4) - g[key]) < 1e-8
    a_c, nut_c = md.chart_coords_coherent(at, nu, m, ctx)
    assert abs(a_c - 0.23) < 1e-12
    assert abs(g["nu"] - 1j * a_c) == 0
    assert abs(g["atil"] - 1j * nut_c) == 0


def test_gen_g_relation(ctx):
    # dG/da = -i nu with nu(a) from inverting the implied exponent
    at, m = D_REF.atil, 0.17

    def nu_of_a(target):
        x = 1.1 + 0j
        for _ in range(60):
            f = md.chart_coords_coherent(at, x, m, ctx)[0] - target
            df = central(lambda w: md.chart_coords_coherent(at, w, m, ctx)[0], x, 1e-6)
            x -= f / df
            if abs(f) < 1e-13:
                break
        return x

    h = 1e-5
    gp = md.gen_g(0.23 + h, at, nu_of_a(0.23 + h), m, ctx)
    gm = md.gen_g(0.23 - h, at, nu_of_a(0.23 - h), m, ctx)
    assert abs((gp - gm) / (2 * h) + 1j * 1.1) < 1e-6


def test_legendre_relation(ctx):
    assert abs(md.gen_g0_legendre_residual(P_REF, ctx)) < 1e-8
    assert abs(md.gen_g0_legendre_residual(cv.MonodromyPoint(0.31, 1.7, 0.22), ctx)) < 1e-8


def test_shift_cocycle(ctx):
    assert md.shift_residual(P_REF, 0, ctx) == 0
    for n in (1, -1, 2, -2):
        assert abs(md.shift_residual(P_REF, n, ctx)) < 1e-9
    # composition: shifting twice equals the n=2 factor
    u0 = md.upsilon_hat(0.23, D_REF.atil, D_REF.nutil, 0.17, ctx)
    u2 = md.upsilon_hat(0.23, D_REF.atil + 1, D_REF.nutil, 0.17, ctx)
    assert abs(u2 - cmath.exp(1j * D_REF.nutil) * u0) < 1e-9


def test_c1_kernel(ctx):
    at = 1.1 / (4 * PI)
    v = md.c1_kernel(md.KernelPoint(0.23, at, 0.0), ctx)
    assert abs(v - math.sqrt(2) * cmath.exp(-4j * PI * 0.23 * at)) < 1e-12
    # |S| on the m=0 grid is sqrt 2 identically
    assert abs(abs(v) - math.sqrt(2)) < 1e-12
    # derivative fd-consistency at generic m
    k = md.KernelPoint(0.23, D_REF.atil, 0.17)
    nu_c, nut_c = md.complete_kernel_point(k, ctx)
    assert abs(nu_c - 1.1) < 1e-9
    h = 1e-6
    fd = central(lambda w: md.complete_kernel_point(md.KernelPoint(0.23, w, 0.17), ctx)[0],
                 D_REF.atil, h)
    assert abs(fd - md.dnu_datil_analytic(0.23, D_REF.atil, nu_c, 0.17)) < 1e-7
    # sign symmetry of the constituents
    v1 = md.c1_kernel(md.KernelPoint(0.2, 0.12, 0.0), ctx)
    v2 = md.c1_kernel(md.KernelPoint(-0.2, -0.12, 0.0), ctx)
    assert abs(abs(v1) - abs(v2)) < 1e-10


def test_saddle(ctx):
    k = md.KernelPoint(0.23, D_REF.atil, 0.17)
    assert abs(md.saddle_residual(k, 1.1, ctx)) < 1e-8
    assert abs(md.saddle_constant(k, 1.1, ctx) - md.saddle_constant_closed(0.17, ctx)) < 1e-8
    # first-order response off the saddle
    eps = 1e-3
    d2 = central(lambda w: md.saddle_residual(k, w, ctx), 1.1, 1e-5)
    assert abs(md.saddle_residual(k, 1.1 + eps, ctx) - d2 * eps) < 5 * eps ** 2


def test_dilog_barnes(ctx):
    for x in (0.27, 0.31 + 0.07j):
        assert abs(md.dilog_barnes_residual(x, ctx)) < 1e-10
    # x = 1/2 explicit evaluation
    lhs = md.dilog_barnes_residual(0.5, ctx)
    assert abs(lhs) < 1e-12
    # Schwarz reflection
    r = md.dilog_barnes_residual(0.3 + 0.1j, ctx)
    rc = md.dilog_barnes_residual(0.3 - 0.1j, ctx)
    assert abs(r.conjugate() - rc) < 1e-12


def test_zd_series_m0_closed_form(ctx):
    p0 = cv.MonodromyPoint(0.23, 1.1, 0.0)
    z = md.zd_series(p0, 3j, 0.3, md.free_field_provider(), 8, ctx)
    Q = 0.23 * 3j + 1.1 / (4 * PI)
    closed = (cmath.exp(TWOPI * 1j * 0.23 ** 2 * 3j) / dedekind_eta(3j, ctx) ** 2
              * theta1(Q + 0.3, 3j, 0, ctx) * theta1(Q - 0.3, 3j, 0, ctx))
    assert abs(z - closed) < 1e-10
    # rho integer shift periodicity
    z2 = md.zd_series(p0, 3j, 1.3, md.free_field_provider(), 8, ctx)
    assert abs(z - z2) < 1e-10


def test_zd_series_leading_asymptotics(ctx):
    p = cv.MonodromyPoint(0.23, 1.1, 0.17)
    z = md.zd_series(p, 10j, 0.3, md.leading_provider(), 8, ctx)
    lead = -(cmath.exp(-0.5j * (1.1 + cv.delta_nu(0.23, 0.17)))
             * cmath.exp(TWOPI * 1j * 10j * (0.23 - 0.5) ** 2) / dedekind_eta(10j, ctx))
    assert abs(z / lead - 1) < 1e-6


def test_kyiv_residual_m0(ctx):
    assert abs(md.kyiv_residual_m0(0.23, 1.1, 3j, 0.3, ctx)) < 1e-10
    # rho = Q: both sides vanish
    Q = 0.23 * 3j + 1.1 / (4 * PI)
    assert abs(md.kyiv_residual_m0(0.23, 1.1, 3j, Q, ctx)) < 1e-10
    # cutoff stability
    r6 = md.kyiv_residual_m0(0.23, 1.1, 3j, 0.3, ctx, cutoff=6)
    r10 = md.kyiv_residual_m0(0.23, 1.1, 3j, 0.3, ctx, cutoff=10)
    assert abs(r6 - r10) < 1e-10


def test_fredholm_m0(ctx):
    Q = 0.23 * 2j + 0.1
    pr, th = md.fredholm_m0(Q, 0.3, 2j, 40, ctx)
    assert abs(pr - th) < 1e-10
    pr0, th0 = md.fredholm_m0(0.3, 0.3, 2j, 30, ctx)
    assert pr0 == 0 and abs(th0) < 1e-14
    pr20, _ = md.fredholm_m0(Q, 0.3, 2j, 20, ctx)
    assert abs(pr20 - pr) < abs(cmath.exp(TWOPI * 1j * 2j * 20))


def test_kernel_integral_m0(ctx):
    assert abs(md.kernel_integral_m0(0.23, 1.2j, 0.0, ctx)) < 1e-8
    assert abs(md.kernel_integral_m0(0.23, 1.2j, 0.3, ctx)) < 1e-8
    # pure Gaussian at a = 0
    assert abs(md.kernel_integral_m0(0.0, 1.2j, 0.0, ctx)) < 1e-10


def test_block_provider_contract(ctx):
    lead = md.leading_provider()
    assert lead.coeff(0, 0.23, 0.17) == 1
    assert lead.coeff(3, 0.23, 0.17) == 0
    ff = md.free_field_provider()
    with pytest.raises(ValueError):
        ff.block(0.23, 0.17, 3j, ctx)
    assert abs(ff.block(0.23, 0.0, 3j, ctx)
               - cmath.exp(TWOPI * 1j * 3j * 0.23 ** 2) / dedekind_eta(3j, ctx)) < 1e-14
