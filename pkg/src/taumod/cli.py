"""Command-line surface.

    taumod <command> [--config FILE] [--set key=value]... [--only suite] [--out PATH]

Commands: eval, map, upsilon, flow, kernel, verify.  The configuration is a
single JSON document (file, or stdin with '--config -'); --set flags override
individual keys.  Complex values are written [re, im] on input and
{"re": ..., "im": ...} on output.  Reports are single JSON objects with a
fixed key order; exit code 0 iff all residuals pass, 1 on numerical failure,
2 on usage errors.  TOOL_PRECISION=double|extended selects the working
precision.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import charvar as cv
from . import flow as fl
from . import modular as md
from . import specfun as sf
from . import trinion as tr
from . import verify as vf
from .precision import PrecisionContext, WorkingPrecision

PI = math.pi


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------------
# config plumbing
# ----------------------------------------------------------------------

def _parse_scalar(v):
    if isinstance(v, list):
        if len(v) != 2 or not all(isinstance(x, (int, float)) for x in v):
            raise UsageError(f"complex values are [re, im]; got {v!r}")
        return complex(v[0], v[1])
    if isinstance(v, (int, float)):
        if isinstance(v, float) and not math.isfinite(v):
            raise UsageError(f"non-finite value {v!r}")
        return v
    return v


def _coerce(value: str):
    """Parse a --set value: JSON if possible, else a bare string."""
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return value


def load_config(path: str | None, sets: list[str]) -> dict:
    cfg: dict = {}
    if path:
        try:
            raw = sys.stdin.read() if path == "-" else open(path).read()
        except OSError as e:
            raise UsageError(f"cannot read config: {e}")
        try:
            cfg = json.loads(raw)
        except json.JSONDecodeError as e:
            raise UsageError(f"config is not valid JSON: {e}")
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
    for item in sets or []:
        if "=" not in item:
            raise UsageError(f"--set expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        node = cfg
        parts = key.split(".")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
            if not isinstance(node, dict):
                raise UsageError(f"--set path {key!r} collides with a scalar")
        node[parts[-1]] = _coerce(val)
    return cfg


def _take(cfg: dict, known: dict, command: str) -> dict:
    """Extract parameters, rejecting unknown keys.  known maps key -> (required, default)."""
    out = {}
    for k, v in cfg.items():
        if k not in known:
            raise UsageError(f"unknown key {k!r} for command {command!r} "
                             f"(known: {', '.join(sorted(known))})")
    for k, (required, default) in known.items():
        if k in cfg:
            out[k] = _parse_scalar(cfg[k])
        elif required:
            raise UsageError(f"missing required key {k!r} for command {command!r}")
        else:
            out[k] = default
    return out


def _c(x) -> dict:
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def make_context() -> PrecisionContext:
    prec = os.environ.get("TOOL_PRECISION", "double").lower()
    if prec not in ("double", "extended"):
        raise UsageError(f"TOOL_PRECISION must be 'double' or 'extended', got {prec!r}")
    return PrecisionContext(working_precision=WorkingPrecision(prec))


def assemble_report(command, inputs, outputs, residuals, tolerances, warnings, t0) -> dict:
    passed = all(residuals.get(k, 0.0) <= tolerances.get(k, math.inf) for k in residuals)
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "residuals": residuals,
        "tolerances": tolerances,
        "pass": bool(passed),
        "timing_ms": round(1000 * (time.time() - t0), 3),
        "warnings": warnings,
    }


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

_EVAL_FNS = {
    "theta1": (("z", "tau"), ("order",)),
    "eta": (("tau",), ()),
    "eta1": (("tau",), ()),
    "wp": (("z", "tau"), ("order",)),
    "lame": (("xi", "z", "tau"), ("kind",)),
    "hyp2f1": (("a", "b", "c", "x"), ()),
    "ghat": (("x",), ()),
    "g_ratio4": (("a", "atil", "m"), ()),
    "dilog": (("z",), ()),
    "double_sine": (("x",), ("form",)),
}


def cmd_eval(cfg: dict, ctx: PrecisionContext, t0: float) -> dict:
    fn = cfg.get("fn")
    if fn not in _EVAL_FNS:
        raise UsageError(f"fn must be one of {sorted(_EVAL_FNS)}; got {fn!r}")
    req, opt = _EVAL_FNS[fn]
    known = {"fn": (True, None)}
    known.update({k: (True, None) for k in req})
    known.update({k: (False, None) for k in opt})
    p = _take(cfg, known, "eval")
    if fn == "theta1":
        val = sf.theta1(p["z"], p["tau"], int(p["order"] or 0), ctx)
    elif fn == "eta":
        val = sf.dedekind_eta(p["tau"], ctx)
    elif fn == "eta1":
        val = sf.eta1_const(p["tau"], ctx)
    elif fn == "wp":
        val = sf.weierstrass(p["z"], p["tau"], int(p["order"] or 0), ctx)
    elif fn == "lame":
        val = sf.lame(p["xi"], p["z"], p["tau"], p["kind"] or "x", ctx)
    elif fn == "hyp2f1":
        val = sf.gauss_2f1(p["a"], p["b"], p["c"], p["x"], ctx)
    elif fn == "ghat":
        val = sf.barnes_ghat(p["x"], ctx)
    elif fn == "g_ratio4":
        val = sf.barnes_g_ratio4(p["a"], p["atil"], p["m"], ctx)
    elif fn == "dilog":
        val = sf.dilog(p["z"], ctx)
    else:
        val = sf.double_sine_asymp(p["x"], p["form"] or "dilog", ctx)
    inputs = {k: (_c(v) if isinstance(v, complex) else v) for k, v in p.items() if v is not None}
    return assemble_report("eval", inputs, {"value": _c(val)}, {}, {}, ctx.warnings, t0)


def cmd_map(cfg: dict, ctx: PrecisionContext, t0: float) -> dict:
    p = _take(cfg, {"a": (True, None), "nu": (True, None), "m": (False, 0.0)}, "map")
    point = cv.MonodromyPoint(p["a"], p["nu"], p["m"])
    d = cv.dual_from_primal(point)
    t = cv.trace_coords(point)
    rep = cv.build_monodromy(point)
    residuals = {
        "fricke": abs(cv.fricke_residual(t, p["m"])),
        "group_relation": rep.constraint_residual(),
    }
    outputs = {
        "atil": _c(d.atil), "nutil": _c(d.nutil),
        "eta": _c(cv.eta_of_nu(point)), "delta_nu": _c(cv.delta_nu(p["a"], p["m"])),
        "tr_A": _c(t.A), "tr_B": _c(t.B), "tr_AB": _c(t.C),
        "branch_flips": d.branch_flips,
    }
    return assemble_report("map", {k: _c(v) for k, v in p.items()}, outputs, residuals,
                           {"fricke": 1e-10, "group_relation": 1e-10}, ctx.warnings, t0)


def cmd_upsilon(cfg: dict, ctx: PrecisionContext, t0: float, out: str | None) -> dict:
    known = {"a": (False, None), "nu": (False, None), "m": (False, 0.0), "grid": (False, None)}
    p = _take(cfg, known, "upsilon")
    if p["grid"] is not None:
        return _emit_table("upsilon_grid", cfg["grid"], p["m"], out, ctx, t0)
    if p["a"] is None or p["nu"] is None:
        raise UsageError("missing required key 'a' (and 'nu') for command 'upsilon'")
    point = cv.MonodromyPoint(p["a"], p["nu"], p["m"])
    d = cv.dual_from_primal(point)
    ups = md.upsilon_full(point, ctx, d)
    uhat = (md.upsilon_hat(p["a"], d.atil, d.nutil, p["m"], ctx)
            if abs(complex(p["m"])) > 1e-14 else ups)
    res = float(np.abs(tr.upsilon_dlog_residual(point, ctx)).max())
    outputs = {"upsilon": _c(ups), "upsilon_hat": _c(uhat),
               "atil": _c(d.atil), "nutil": _c(d.nutil)}
    return assemble_report("upsilon", {k: _c(v) for k, v in p.items() if k != "grid" and v is not None},
                           outputs, {"dlog_vs_oneforms": res}, {"dlog_vs_oneforms": 1e-6},
                           ctx.warnings, t0)


def cmd_flow(cfg: dict, ctx: PrecisionContext, t0: float, out: str | None) -> dict:
    known = {"a": (True, None), "nu": (True, None), "m": (False, 0.0),
             "T_max": (False, 8.0), "eps": (False, 0.02),
             "rtol": (False, 1e-10), "atol": (False, 1e-12),
             "trace_points": (False, None)}
    p = _take(cfg, known, "flow")
    point = cv.MonodromyPoint(p["a"], p["nu"], p["m"])
    fcfg = fl.FlowConfig(T_max=float(p["T_max"]), eps=float(p["eps"]),
                         rtol=float(p["rtol"]), atol=float(p["atol"]),
                         keep_trace=out is not None)
    rep = fl.connection_ratio(point, fcfg, ctx)
    if out:
        run = fl.integrate(fl.init_cusp(point, fcfg), 1j * fcfg.eps, p["m"], fcfg, ctx,
                           trace_points=int(p["trace_points"]) if p["trace_points"] else None)
        with open(out, "w") as f:
            for r in run.trace:
                f.write(json.dumps({k: _c(r[k]) for k in ("tau", "Q", "P", "H", "log_tau")}) + "\n")
    outputs = {
        "numeric": _c(rep["numeric"]), "numeric_raw": _c(rep["numeric_raw"]),
        "closed_form": _c(rep["closed_form"]),
        "Q_end": _c(rep["end_state"].Q), "P_end": _c(rep["end_state"].P),
        "log_tau_end": _c(rep["end_state"].log_tau),
    }
    residuals = {"connection_ratio": rep["residual"]}
    inputs = {k: (_c(v) if isinstance(v, complex) else v) for k, v in p.items() if v is not None}
    return assemble_report("flow", inputs, outputs, residuals,
                           {"connection_ratio": 1e-3}, ctx.warnings, t0)


def cmd_kernel(cfg: dict, ctx: PrecisionContext, t0: float, out: str | None) -> dict:
    known = {"a": (False, None), "atil": (False, None), "m": (False, 0.0),
             "tau": (False, None), "grid": (False, None)}
    p = _take(cfg, known, "kernel")
    if p["grid"] is not None:
        return _emit_table("kernel_grid", cfg["grid"], p["m"], out, ctx, t0)
    if p["a"] is None or p["atil"] is None:
        raise UsageError("missing required key 'a' (and 'atil') for command 'kernel'")
    k = md.KernelPoint(p["a"], p["atil"], p["m"])
    val = md.c1_kernel(k, ctx)
    outputs = {"kernel": _c(val)}
    residuals = {}
    tolerances = {}
    if abs(complex(p["m"])) < 1e-14:
        closed = math.sqrt(2) * np.exp(-4j * PI * complex(p["a"]) * complex(p["atil"]))
        residuals["m0_closed_form"] = abs(val - closed)
        tolerances["m0_closed_form"] = 1e-12
        tau = p["tau"] if p["tau"] is not None else 1.2j
        residuals["m0_contour_integral"] = abs(md.kernel_integral_m0(p["a"], tau, 0.0, ctx))
        tolerances["m0_contour_integral"] = 1e-8
    inputs = {kk: (_c(v) if isinstance(v, complex) else v) for kk, v in p.items() if v is not None}
    return assemble_report("kernel", inputs, outputs, residuals, tolerances, ctx.warnings, t0)


def cmd_verify(cfg: dict, ctx: PrecisionContext, t0: float, only: str | None) -> dict:
    p = _take(cfg, {"seed": (False, 42), "only": (False, None)}, "verify")
    only = only or p["only"]
    reports = vf.run_all(seed=int(p["seed"]), only=only, ctx=ctx)
    outputs = {"suites": [r.as_dict() for r in reports], "seed": int(p["seed"])}
    residuals = {}
    tolerances = {}
    for r in reports:
        for c in r.checks:
            key = f"{r.suite}: {c.name}"
            residuals[key] = c.worst
            tolerances[key] = c.tol
    return assemble_report("verify", {"seed": int(p["seed"]), "only": only},
                           outputs, residuals, tolerances, ctx.warnings, t0)


# ----------------------------------------------------------------------
# CSV tables
# ----------------------------------------------------------------------

def _parse_range(spec, name):
    try:
        lo, hi, n = str(spec).split(":")
        return np.linspace(float(lo), float(hi), int(n))
    except Exception:
        raise UsageError(f"grid.{name} must be 'start:stop:count', got {spec!r}")


def emit_table(kind: str, grid: dict, m, output_path: str | None,
               ctx: PrecisionContext) -> list[str]:
    """CSV rows for a parameter grid; degenerate points flagged, not fatal."""
    m = _parse_scalar(m)
    if kind == "upsilon_grid":
        avals = _parse_range(grid.get("a", "0.05:0.45:20"), "a")
        nvals = _parse_range(grid.get("nu", f"0:{4 * PI}:20"), "nu")
        rows = ["a,nu,m_re,m_im,upsilon_re,upsilon_im,atil_re,atil_im,nutil_re,nutil_im,degenerate"]
        for a in map(float, avals):
            for nu in map(float, nvals):
                try:
                    pt = cv.MonodromyPoint(a, nu, m)
                    d = cv.dual_from_primal(pt)
                    u = md.upsilon_full(pt, ctx, d)
                    rows.append(f"{a!r},{nu!r},{complex(m).real!r},{complex(m).imag!r},"
                                f"{u.real!r},{u.imag!r},{complex(d.atil).real!r},{complex(d.atil).imag!r},"
                                f"{complex(d.nutil).real!r},{complex(d.nutil).imag!r},0")
                except Exception:
                    rows.append(f"{a!r},{nu!r},{complex(m).real!r},{complex(m).imag!r},,,,,,,1")
        return rows
    if kind == "kernel_grid":
        avals = _parse_range(grid.get("a", "0.05:0.45:20"), "a")
        atvals = _parse_range(grid.get("atil", "0.05:0.45:20"), "atil")
        rows = ["a,atil,m_re,m_im,kernel_re,kernel_im,kernel_abs,degenerate"]
        for a in map(float, avals):
            for at in map(float, atvals):
                try:
                    val = md.c1_kernel(md.KernelPoint(a, at, m), ctx)
                    rows.append(f"{a!r},{at!r},{complex(m).real!r},{complex(m).imag!r},"
                                f"{val.real!r},{val.imag!r},{abs(val)!r},0")
                except Exception:
                    rows.append(f"{a!r},{at!r},{complex(m).real!r},{complex(m).imag!r},,,,1")
        return rows
    raise UsageError(f"unknown table kind {kind!r}")


def _emit_table(kind, grid, m, out, ctx, t0) -> dict:
    if not isinstance(grid, dict):
        raise UsageError("grid must be an object with range specs, e.g. "
                         '{"a": "0.05:0.45:20", "nu": "0:12.57:20"}')
    rows = emit_table(kind, grid, m, out, ctx)
    if out:
        with open(out, "w", newline="\n") as f:
            f.write("\n".join(rows) + "\n")
    outputs = {"kind": kind, "rows": len(rows) - 1, "path": out}
    return assemble_report("table", {"kind": kind, "m": _c(m) if isinstance(m, complex) else m},
                           outputs, {}, {}, ctx.warnings, t0)


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def run(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="taumod",
        description="Evaluate and verify modular transformations of isomonodromic tau functions.")
    parser.add_argument("command", choices=["eval", "map", "upsilon", "flow", "kernel", "verify"])
    parser.add_argument("--config", help="JSON config file, or '-' for stdin")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config key (dotted paths allowed)")
    parser.add_argument("--only", help="verify: run a single suite")
    parser.add_argument("--out", help="output path (CSV table or JSONL flow trace)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    t0 = time.time()
    try:
        ctx = make_context()
        cfg = load_config(args.config, args.set)
        if args.command == "eval":
            report = cmd_eval(cfg, ctx, t0)
        elif args.command == "map":
            report = cmd_map(cfg, ctx, t0)
        elif args.command == "upsilon":
            report = cmd_upsilon(cfg, ctx, t0, args.out)
        elif args.command == "flow":
            report = cmd_flow(cfg, ctx, t0, args.out)
        elif args.command == "kernel":
            report = cmd_kernel(cfg, ctx, t0, args.out)
        else:
            report = cmd_verify(cfg, ctx, t0, args.only)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (KeyError, TypeError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"numerical failure: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    print(json.dumps(report, indent=2))
    if not report["pass"]:
        worst = max(((report["residuals"][k] / report["tolerances"].get(k, math.inf), k)
                     for k in report["residuals"]), default=(0, "?"))
        print(f"numerical failure: residual '{worst[1]}' exceeds tolerance", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
