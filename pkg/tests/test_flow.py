import cmath
import dataclasses
import math

import pytest

from taumod import charvar as cv
from taumod import flow as fl
from taumod.numdiff import central
from taumod.precision import PoleError

PI = math.pi
TWOPI = 2 * PI

CFG = fl.FlowConfig()


def test_hamiltonian_m0():
    assert fl.hamiltonian(0.2 + 0.3j, 1 + 1j, 1.1j, 0.0) == (1 + 1j) ** 2


def test_hamiltonian_parity_and_dual_path(ctx):
    Q, P, tau, m = 0.2 + 0.3j, 1 + 1j, 1.1j, 0.17
    assert abs(fl.hamiltonian(-Q, P, tau, m, ctx) - fl.hamiltonian(Q, P, tau, m, ctx)) < 1e-12
    # independent evaluation through the theta log-derivative and series eta1
    from taumod import specfun as sf
    t0 = sf.theta1(2 * Q, tau, 0, ctx)
    t1 = sf.theta1(2 * Q, tau, 1, ctx)
    t2 = sf.theta1(2 * Q, tau, 2, ctx)
    wp = -(t2 / t0 - (t1 / t0) ** 2) + sf._wp_pin_const(tau, ctx.tol, ctx.max_terms)
    ref = P * P - m * m * wp - 2 * m * m * (-sf.theta1(0, tau, 3, ctx) / (6 * sf.theta1(0, tau, 1, ctx)))
    assert abs(fl.hamiltonian(Q, P, tau, m, ctx) - ref) < 1e-10


def test_rhs(ctx):
    st = fl.FlowState(1.3j, 0.21 + 0.11j, 0.8 + 0.5j, 0j)
    dq, dp = fl.rhs(st, 0.0, ctx)
    assert dp == 0 and abs(dq - st.P / (TWOPI * 1j)) < 1e-15
    dq, dp = fl.rhs(st, 0.22, ctx)
    # conjugate momentum is 2P: Hamilton equations carry a factor 1/2
    h = 1e-6
    dH_dP = central(lambda w: fl.hamiltonian(st.Q, w, st.tau, 0.22, ctx), st.P, h)
    dH_dQ = central(lambda w: fl.hamiltonian(w, st.P, st.tau, 0.22, ctx), st.Q, h)
    assert abs(dq - 0.5 * dH_dP / (TWOPI * 1j)) < 1e-6
    assert abs(dp + 0.5 * dH_dQ / (TWOPI * 1j)) < 1e-6
    # odd wp': flipping Q flips dP
    st2 = fl.FlowState(1.3j, -st.Q, st.P, 0j)
    assert abs(fl.rhs(st2, 0.22, ctx)[1] + dp) < 1e-12


def test_init_cusp():
    p = cv.MonodromyPoint(0.23, 1.1, 0.0)
    st = fl.init_cusp(p, CFG)
    assert abs(st.Q - (0.23 * 8j + 1.1 / (4 * PI))) < 1e-14
    assert abs(st.P - TWOPI * 1j * 0.23) < 1e-15
    assert abs(st.log_tau - TWOPI * 1j * 0.23 ** 2 * 8j) < 1e-14
    with pytest.raises(fl.InsufficientHeightError):
        fl.init_cusp(cv.MonodromyPoint(0.01, 1.1, 0.17), fl.FlowConfig(T_max=2.0))


def test_init_zero():
    d = cv.dual_from_primal(cv.MonodromyPoint(0.23, 1.1, 0.17))
    st = fl.init_zero(d, CFG)
    etat = cv.eta_of_nu(cv.MonodromyPoint(d.atil, d.nutil, 0.17))
    assert abs(st.P + TWOPI * 1j * etat) == 0
    assert abs(st.Q - (d.atil - etat * 1j * CFG.eps)) < 1e-14
    # exponential form of etat
    from taumod.specfun import loggamma_c
    R = cmath.exp(loggamma_c(1 - 2 * d.atil) + loggamma_c(2 * d.atil - 0.17)
                  - loggamma_c(2 * d.atil) - loggamma_c(1 - 2 * d.atil - 0.17))
    assert abs(cmath.exp(TWOPI * 1j * etat) - R * cmath.exp(0.5j * d.nutil)) < 1e-12


def test_m0_flow_exact(ctx):
    p = cv.MonodromyPoint(0.23, 1.1, 0.0)
    end = fl.integrate(fl.init_cusp(p, CFG), 1j, 0.0, CFG, ctx)
    assert abs(end.Q - (0.23j + 1.1 / (4 * PI))) < 1e-10
    assert abs(end.log_tau - TWOPI * 1j * 0.23 ** 2 * 1j) < 1e-10


def test_reversibility(ctx):
    p = cv.MonodromyPoint(0.23, 1.1, 0.17)
    start = fl.init_cusp(p, CFG)
    fwd = fl.integrate(start, 1j, 0.17, CFG, ctx)
    back = fl.integrate(fwd, start.tau, 0.17, CFG, ctx)
    assert abs(back.Q - start.Q) < 1e-8
    assert abs(back.P - start.P) < 1e-8


def test_requadrature(ctx):
    cfg = dataclasses.replace(CFG, keep_trace=True)
    p = cv.MonodromyPoint(0.23, 1.1, 0.17)
    run = fl.integrate(fl.init_cusp(p, cfg), 1j, 0.17, cfg, ctx, trace_points=8193)
    drift = abs(fl.requadrature(run.trace) - (run.log_tau - run.trace[0]["log_tau"]))
    assert drift < 1e-8
    assert set(run.trace[0]) == {"tau", "Q", "P", "H", "log_tau"}


def test_ham_modular_residual(ctx):
    assert abs(fl.ham_modular_residual(0.2 + 0.3j, 1 + 1j, 1.1j, 0.0, ctx)) < 1e-13
    assert abs(fl.ham_modular_residual(0.2 + 0.3j, 1 + 1j, 1.1j, 0.17, ctx)) < 1e-8
    r0 = fl.ham_modular_residual(0.2 + 0.3j, 1 + 1j, 1.1j, 0.17, ctx)
    r1 = fl.ham_modular_residual(1.2 + 0.3j, 1 + 1j, 1.1j, 0.17, ctx)
    assert abs(r1 - r0) < 1e-8


def test_pole_guard(ctx):
    # free m=0 flight steered so 2Q crosses the lattice point 1 mid-path
    state = fl.FlowState(2j, 0.3, -0.8 * PI, 0j)
    with pytest.raises(PoleError):
        fl.integrate(state, 1j, 0.0, dataclasses.replace(CFG, pole_threshold=1e-2), ctx)


def test_modular_state_check(ctx):
    rep = fl.modular_state_check(cv.MonodromyPoint(0.23, 1.1, 0.17), CFG, ctx)
    assert rep["Q_residual"] < 1e-4
    assert rep["P_residual"] < 1e-4


def test_modular_state_check_m0(ctx):
    rep = fl.modular_state_check(cv.MonodromyPoint(0.23, 1.1, 0.0), CFG, ctx)
    assert rep["Q_residual"] < 1e-10
    assert rep["P_residual"] < 1e-10


def test_connection_ratio(ctx):
    rep = fl.connection_ratio(cv.MonodromyPoint(0.15, 0.8, 0.1), CFG, ctx)
    assert rep["residual"] < 1e-3
    fine = fl.connection_ratio(cv.MonodromyPoint(0.15, 0.8, 0.1),
                               dataclasses.replace(CFG, T_max=10.0, eps=0.01), ctx)
    assert fine["residual"] < rep["residual"]


def test_connection_ratio_m0(ctx):
    rep = fl.connection_ratio(cv.MonodromyPoint(0.23, 1.1, 0.0), CFG, ctx)
    assert abs(rep["numeric"] - cmath.exp(-1j * 1.1 * 0.23)) < 1e-8
    assert rep["residual"] < 1e-8
