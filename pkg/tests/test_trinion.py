import cmath
import math

import numpy as np
import pytest

from taumod import charvar as cv
from taumod import trinion as tr
from taumod.precision import ResonanceError

PI = math.pi
TWOPI = 2 * PI

P_REF = cv.MonodromyPoint(0.23, 1.1, 0.17)


def test_lax_matrix_structure():
    # z -> +i inf: upper-triangular limit; z -> -i inf: lower-triangular
    L = tr.lax_3pt(10j, "A", a=0.23, m=0.17)
    up = TWOPI * 1j * np.array([[0.23, 0.17], [0, -0.23]])
    assert np.abs(L - up).max() < 1e-20
    L = tr.lax_3pt(-10j, "A", a=0.23, m=0.17)
    lo = TWOPI * 1j * np.array([[0.23, 0], [-0.17, -0.23]])
    assert np.abs(L - lo).max() < 1e-20
    assert abs(np.trace(tr.lax_3pt(0.3 - 0.2j, "A", a=0.23, m=0.17))) < 1e-12
    # residue at z=0 (- m sigma_1) has eigenvalues +- m
    h = 1e-7
    res = h * tr.lax_3pt(h, "A", a=0.23, m=0.17)
    ev = sorted(np.linalg.eigvals(res).real)
    assert abs(ev[0] + 0.17) < 1e-6 and abs(ev[1] - 0.17) < 1e-6


def test_frames_displayed_entries():
    fr = tr.frames("A", P_REF, delta_overrides={"zero": 0.0})
    assert np.abs(fr.G_zero - np.array([[1, -1], [1, 1]])).max() < 1e-14
    assert abs(fr.G_minus[1, 0] - 0.17 / 0.46) < 1e-14
    assert abs(np.linalg.det(fr.G_plus) - 1) < 1e-13
    fr2 = tr.frames("A", P_REF)
    assert abs(np.linalg.det(fr2.G_zero) - 2) < 1e-12


def test_frames_diagonalization_contracts():
    a, _, m = P_REF.as_tuple()
    fr = tr.frames("A", P_REF)
    L_minus = -np.linalg.inv(fr.G_minus) @ (a * tr.SIGMA3) @ fr.G_minus
    L_zero = np.linalg.inv(fr.G_zero) @ (m * tr.SIGMA3) @ fr.G_zero
    L_plus = np.linalg.inv(fr.G_plus) @ (a * tr.SIGMA3) @ fr.G_plus
    assert np.abs(L_plus + L_minus + L_zero).max() < 1e-12
    assert np.abs(L_zero + m * np.array([[0, 1], [1, 0]])).max() < 1e-12


def test_frames_resonance_guard():
    # 2a + m integer
    with pytest.raises(ResonanceError):
        tr.frames("A", cv.MonodromyPoint(0.26, 1.1, 0.48))
    # 2m integer
    with pytest.raises(ResonanceError):
        tr.frames("A", cv.MonodromyPoint(0.23, 1.1, 0.5))


def test_y3pt_solves_lax_ode(ctx):
    fr = tr.frames("A", P_REF)
    h = 1e-5
    for z in (-0.3j, 0.1 - 0.4j, -0.2 - 0.8j):
        Yp = tr.y3pt_A(z + h, P_REF, fr, ctx)
        Ym = tr.y3pt_A(z - h, P_REF, fr, ctx)
        Y0 = tr.y3pt_A(z, P_REF, fr, ctx)
        L = tr.lax_3pt(z, "A", a=0.23, m=0.17)
        assert np.abs((Yp - Ym) / (2 * h) - Y0 @ L).max() < 1e-6


def test_y3pt_cusp_factorization(ctx):
    fr = tr.frames("A", P_REF)
    # z -> -i inf: exponent-stripped limit is X_norm, z-independent
    consts = []
    for z in (-5j, -7j):
        pw = 1j * PI - TWOPI * 1j * z
        D = np.diag([cmath.exp(-0.23 * pw), cmath.exp(0.23 * pw)])
        consts.append(tr.y3pt_A(z, P_REF, fr, ctx) @ np.linalg.inv(fr.G_minus) @ np.linalg.inv(D))
    assert np.abs(consts[0] - consts[1]).max() < 1e-6
    assert np.abs(consts[1] - fr.X_norm).max() < 1e-6


def test_y3pt_origin_factorization(ctx):
    fr = tr.frames("A", P_REF)
    m = 0.17

    def c0_at(z):
        D = np.diag([(TWOPI * 1j * z) ** m, (TWOPI * 1j * z) ** (-m)])
        return tr.y3pt_A(z, P_REF, fr, ctx) @ np.linalg.inv(fr.G_zero) @ np.linalg.inv(D)

    z1 = 1e-5 * cmath.exp(-1j * PI / 4)
    r = 0.1 ** (1 - 2 * m)
    C0 = (c0_at(z1 / 10) - r * c0_at(z1)) / (1 - r)
    assert np.abs(C0 - np.eye(2)).max() < 1e-6


def test_monodromies_from_frames(ctx):
    t = cv.trace_coords(P_REF)
    d = cv.dual_from_primal(P_REF)
    for side in ("A", "B"):
        fr = tr.frames(side, P_REF, d)
        MA, MB = tr.monodromy_from_frames(fr, P_REF, d)
        assert abs(np.trace(MA) - t.A) < 1e-10
        assert abs(np.trace(MB) - t.B) < 1e-10
        assert abs(np.linalg.det(MB) - 1) < 1e-12
        M0 = np.linalg.inv(MA) @ np.linalg.inv(MB) @ MA @ MB
        assert abs(np.trace(M0) - 2 * math.cos(TWOPI * 0.17)) < 1e-10


def test_free_phases_do_not_move_traces(ctx):
    d = cv.dual_from_primal(P_REF)
    base = tr.frames("A", P_REF, d)
    shifted = tr.frames("A", P_REF, d, delta_overrides={"minus": 0.3, "plus": -0.2})
    MA0, MB0 = tr.monodromy_from_frames(base, P_REF, d)
    MA1, MB1 = tr.monodromy_from_frames(shifted, P_REF, d)
    assert abs(np.trace(MA0) - np.trace(MA1)) < 1e-12
    assert abs(np.trace(MB0) - np.trace(MB1)) < 1e-12


def test_omega_analytic_vs_fd(ctx):
    for side in ("A", "B"):
        dev = np.abs(tr.omega_3pt(side, P_REF, ctx).as_array()
                     - tr.omega_3pt_fd(side, P_REF, ctx).as_array()).max()
        assert dev < 1e-6


def test_omega_m0_slice():
    # on the m=0 slice omega^A = i a d nu and omega^B = i atil d nutil
    res = tr.upsilon_dlog_residual(cv.MonodromyPoint(0.23, 1.1, 0.0))
    assert np.abs(res).max() < 1e-10


def test_theorem_connection_constant(ctx, rng):
    for _ in range(10):
        a = rng.uniform(0.08, 0.42)
        nu = rng.uniform(0.3, 3.2)
        m = rng.uniform(0.05, 0.4)
        res = tr.upsilon_dlog_residual(cv.MonodromyPoint(a, nu, m), ctx)
        assert np.abs(res).max() < 1e-6


def test_theorem_shift_periodicity(ctx):
    r1 = np.abs(tr.upsilon_dlog_residual(P_REF, ctx)).max()
    r2 = np.abs(tr.upsilon_dlog_residual(cv.MonodromyPoint(1.23, 1.1, 0.17), ctx)).max()
    assert abs(r1 - r2) < 1e-8
