"""Command-line front end.

Subcommands: bands, map, homoclinic, boundstate, verify, sweep.  Outputs are
deterministic UTF-8 JSON (schema_version + resolved config + data) or
RFC-4180 CSV with a fixed, documented header row.  Lengths are decimal
radians (pi/2 = 1.5707963267948966, pi = 3.141592653589793).

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import sys

import click
import numpy as np

from .bound_state import (assemble_profile, charge, default_n_cells,
                          shoot_bound_state)
from .dmap import (CurveMode, MapState, ScaledState, Symmetry, inverse_period_map,
                   jacobian, link_step, period_map, scaled_map_truncated,
                   symmetry_curve)
from .errors import DomainError, NecklaceError
from .graph import GraphParams, PiecewiseProfile
from .homoclinic import (Orbit, sech_approximation, shoot_homoclinic,
                         unstable_direction)
from .ode import first_invariant, integrate_ivp, propagate
from .spectral import (band_edge_curvature, classify_flat_band, find_bands,
                       monodromy_matrix, trace, trace_hyperbolic)

SCHEMA_VERSION = 1

EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


# ---------------------------------------------------------------------------
# output plumbing

def _payload(config: dict, data: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "config": config, "data": data}


def _write_json(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _write_csv(header: list[str], rows, out_path: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    text = buf.getvalue()
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit(fmt: str, payload: dict, header, rows, out_path: str | None) -> None:
    try:
        if fmt == "json":
            _write_json(payload, out_path)
        else:
            _write_csv(header, rows, out_path)
    except OSError as exc:
        click.echo(f"error: I/O failure: {exc}", err=True)
        sys.exit(EXIT_IO)


def _split_out(out_path: str, tag: str) -> str:
    """foo.json -> foo_link.json etc."""
    if "." in out_path.rsplit("/", 1)[-1]:
        stem, ext = out_path.rsplit(".", 1)
        return f"{stem}_{tag}.{ext}"
    return f"{out_path}_{tag}"


def _fail_numerical(exc: Exception) -> None:
    click.echo(f"error: numerical failure: {exc}", err=True)
    sys.exit(EXIT_NUMERICAL)


def _parse_symmetries(symmetry: str) -> list[Symmetry]:
    if symmetry == "both":
        return [Symmetry.LINK_CENTERED, Symmetry.RING_CENTERED]
    return [Symmetry.LINK_CENTERED if symmetry == "link" else Symmetry.RING_CENTERED]


def _resolve_eps(eps: float | None, lam: float | None) -> float:
    if (eps is None) == (lam is None):
        raise click.UsageError("provide exactly one of --eps or --lambda")
    if eps is not None:
        if eps <= 0:
            raise click.UsageError("--eps must be positive")
        return eps
    if lam >= 0:
        raise click.UsageError("--lambda must be negative")
    return math.sqrt(-lam)


def _params(L: float) -> GraphParams:
    try:
        return GraphParams(L=L)
    except DomainError as exc:
        raise click.UsageError(str(exc))


# ---------------------------------------------------------------------------
# serialization helpers

def _orbit_data(orbit: Orbit) -> dict:
    d = orbit.diagnostics
    return {
        "eps": orbit.eps,
        "L": orbit.params.L,
        "symmetry": orbit.symmetry.value,
        "seed_parameter": orbit.seed_parameter,
        "n": orbit.n.tolist(),
        "alpha": orbit.alpha.tolist(),
        "beta": orbit.beta.tolist(),
        "gamma": orbit.gamma.tolist(),
        "delta": orbit.delta.tolist(),
        "diagnostics": {
            "all_positive": d.all_positive,
            "monotone_tail_index": d.monotone_tail_index,
            "tail_decay_ratio": d.tail_decay_ratio,
            "l2_distance_to_sech": d.l2_distance_to_sech,
            "sech_shift": d.sech_shift,
            "max_state_norm": d.max_state_norm,
        },
    }


def _orbit_rows(orbit: Orbit):
    return [
        [int(n), repr(float(al)), repr(float(be)), repr(float(ga)), repr(float(de))]
        for n, al, be, ga, de in zip(orbit.n, orbit.alpha, orbit.beta,
                                     orbit.gamma, orbit.delta)
    ]


ORBIT_HEADER = ["n", "alpha", "beta", "gamma", "delta"]
PROFILE_HEADER = ["edge_kind", "cell", "x", "phi", "dphi"]


def _profile_rows(profile: PiecewiseProfile):
    rows = []
    for cell in profile.cells:
        for kind, xs, ps, ds in (("link", cell.link_x, cell.link_phi, cell.link_dphi),
                                 ("ring", cell.ring_x, cell.ring_phi, cell.ring_dphi)):
            for x, p, dp in zip(xs, ps, ds):
                rows.append([kind, cell.cell, repr(float(x)), repr(float(p)),
                             repr(float(dp))])
    return rows


def _profile_data(profile: PiecewiseProfile) -> dict:
    cells = []
    for cell in profile.cells:
        cells.append({
            "cell": cell.cell,
            "link_x": cell.link_x.tolist(),
            "link_phi": cell.link_phi.tolist(),
            "link_dphi": cell.link_dphi.tolist(),
            "ring_x": cell.ring_x.tolist(),
            "ring_phi": cell.ring_phi.tolist(),
            "ring_dphi": cell.ring_dphi.tolist(),
        })
    return {"eps": profile.eps, "L": profile.params.L, "cells": cells}


def _boundstate_data(bs) -> dict:
    profile = bs.profile
    params = profile.params
    if bs.symmetry is Symmetry.LINK_CENTERED:
        x_center = params.L / 2.0
    else:
        x_center = params.L + math.pi / 2.0
    xs = np.concatenate([np.concatenate([c.link_x, c.ring_x]) for c in profile.cells])
    xs = np.unique(xs)
    sech = bs.eps / np.cosh(bs.eps * (xs - x_center))
    return {
        "symmetry": bs.symmetry.value,
        "source": bs.source.value,
        "lambda": bs.lam,
        "eps": bs.eps,
        "Q": bs.Q,
        "E": bs.E,
        "h2_norm": bs.h2_norm,
        "max_kirchhoff_residual": bs.max_kirchhoff_residual,
        "vertex_x": [c.cell * params.P for c in profile.cells],
        "sech_comparison": {"x": xs.tolist(), "phi": sech.tolist(),
                            "x_center": x_center},
        "profile": _profile_data(profile),
    }


# ---------------------------------------------------------------------------
# CLI

@click.group()
def main() -> None:
    """Spectral bands, discrete-map orbits, and NLS bound states on the
    periodic necklace graph."""


_L_OPT = click.option("--L", "L", type=float, default=math.pi / 2,
                      show_default=True, help="Link length (decimal radians).")
_TOL_OPT = click.option("--tol", type=float, default=1e-10, show_default=True,
                        help="Integration tolerance.")
_OUT_OPT = click.option("--out", "out_path", type=str, default=None,
                        help="Output path (default: stdout).")
_FMT_OPT = click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
                        default="json", show_default=True)


@main.command()
@_L_OPT
@click.option("--omega-max", type=float, default=6.0, show_default=True)
@click.option("--grid", type=int, default=4000, show_default=True)
@_OUT_OPT
@_FMT_OPT
def bands(L, omega_max, grid, out_path, fmt):
    """Spectral bands, flat bands, and the (omega, T) trace table."""
    params = _params(L)
    if omega_max <= 0:
        raise click.UsageError("--omega-max must be positive")
    if grid < 16:
        raise click.UsageError("--grid must be >= 16")
    config = {"subcommand": "bands", "L": L, "omega_max": omega_max,
              "grid": grid, "format": fmt, "out": out_path}
    try:
        band_list = find_bands(params, omega_max, grid)
        m_max = int(math.floor(omega_max))
        flats = [classify_flat_band(m, params, band_list)
                 for m in range(1, m_max + 1)]
        omegas = np.linspace(1e-9, omega_max, grid)
        traces = np.array([trace(w, params) for w in omegas])
    except NecklaceError as exc:
        _fail_numerical(exc)
    in_band = np.abs(traces) <= 2.0
    data = {
        "bands": [{"omega_lo": b.omega_lo, "omega_hi": b.omega_hi,
                   "lambda_lo": b.lambda_lo, "lambda_hi": b.lambda_hi}
                  for b in band_list],
        "flat_bands": [{"m": f.m, "lambda": f.lam, "location": f.location.value,
                        "host_band_index": f.host_band_index} for f in flats],
        "band_edge_curvature": band_edge_curvature(params),
        "trace": {"omega": omegas.tolist(), "T": traces.tolist(),
                  "in_band": in_band.tolist()},
    }
    rows = [[repr(float(w)), repr(float(t)), int(flag)]
            for w, t, flag in zip(omegas, traces, in_band)]
    _emit(fmt, _payload(config, data), ["omega", "T", "in_band"], rows, out_path)


@main.command("map")
@_L_OPT
@click.option("--eps", type=float, required=True, help="Amplitude parameter.")
@click.option("--alpha0", type=float, default=None,
              help="Scaled seed alpha (default: on the unstable direction).")
@click.option("--beta0", type=float, default=None,
              help="Scaled seed beta (default: on the unstable direction).")
@click.option("--seed-norm", type=float, default=1e-3, show_default=True,
              help="Scaled seed norm when no explicit seed is given.")
@click.option("--steps", type=int, default=50, show_default=True)
@_TOL_OPT
@_OUT_OPT
@_FMT_OPT
def map_cmd(L, eps, alpha0, beta0, seed_norm, steps, tol, out_path, fmt):
    """Iterate the period map and report its phase-plane structure."""
    params = _params(L)
    if eps <= 0:
        raise click.UsageError("--eps must be positive")
    if (alpha0 is None) != (beta0 is None):
        raise click.UsageError("--alpha0 and --beta0 must be given together")
    config = {"subcommand": "map", "L": L, "eps": eps, "alpha0": alpha0,
              "beta0": beta0, "seed_norm": seed_norm, "steps": steps,
              "tol": tol, "format": fmt, "out": out_path}
    try:
        direction = unstable_direction(eps, params)
        if alpha0 is None:
            scaled_dir = np.array([direction[0] / eps, direction[1] / eps ** 2])
            scaled_dir /= np.linalg.norm(scaled_dir)
            alpha0, beta0 = seed_norm * scaled_dir
        state = ScaledState(alpha0, beta0).unscaled(eps)
        ns, als, bes, gas, des = [], [], [], [], []
        for n in range(steps + 1):
            mid = link_step(state, eps, params, tol)
            ns.append(n)
            als.append(state.a / eps)
            bes.append(state.b / eps ** 2)
            gas.append(mid.a / eps)
            des.append(mid.b / eps ** 2)
            if state.scaled(eps).norm > 5.0:
                break
            state = period_map(state, eps, params, tol)
        jac = jacobian(MapState(0.0, 0.0), eps, params)
        evals = np.linalg.eigvals(jac).real
        curve_alpha = np.linspace(0.0, 1.2, 25)
        curves = {}
        for sym, key in ((Symmetry.LINK_CENTERED, "link"),
                         (Symmetry.RING_CENTERED, "ring")):
            curves[key] = {
                "alpha": curve_alpha.tolist(),
                "beta_asymptotic": [symmetry_curve(a, eps, params, sym,
                                                   CurveMode.ASYMPTOTIC, tol)
                                    for a in curve_alpha],
            }
    except NecklaceError as exc:
        _fail_numerical(exc)
    data = {
        "iterates": {"n": ns, "alpha": als, "beta": bes,
                     "gamma": gas, "delta": des},
        "origin_jacobian": jac.tolist(),
        "origin_eigenvalues": sorted(evals.tolist()),
        "trace_hyperbolic": trace_hyperbolic(eps, params),
        "unstable_direction": direction.tolist(),
        "symmetry_curves": curves,
        "nonzero_fixed_point_alpha": 1.0 / math.sqrt(2.0),
    }
    rows = [[n, repr(float(a)), repr(float(b)), repr(float(g)), repr(float(d))]
            for n, a, b, g, d in zip(ns, als, bes, gas, des)]
    _emit(fmt, _payload(config, data), ORBIT_HEADER, rows, out_path)


@main.command()
@_L_OPT
@click.option("--eps", type=float, required=True)
@click.option("--symmetry", type=click.Choice(["link", "ring", "both"]),
              default="link", show_default=True)
@_OUT_OPT
@_FMT_OPT
def homoclinic(L, eps, symmetry, out_path, fmt):
    """Reversible homoclinic orbit(s) of the period map."""
    params = _params(L)
    if eps <= 0:
        raise click.UsageError("--eps must be positive")
    syms = _parse_symmetries(symmetry)
    if len(syms) > 1 and out_path is None:
        raise click.UsageError("--symmetry both writes two files; --out is required")
    config = {"subcommand": "homoclinic", "L": L, "eps": eps,
              "symmetry": symmetry, "format": fmt, "out": out_path}
    for sym in syms:
        try:
            orbit = shoot_homoclinic(eps, params, sym)
        except NecklaceError as exc:
            _fail_numerical(exc)
        data = _orbit_data(orbit)
        # phase-plane companions: symmetry curve and unstable line
        alpha_grid = np.linspace(0.0, 1.2, 49)
        data["symmetry_curve"] = {
            "alpha": alpha_grid.tolist(),
            "beta": [symmetry_curve(a, eps, params, sym) for a in alpha_grid],
        }
        direction = unstable_direction(eps, params)
        data["unstable_direction_scaled_slope"] = (
            (direction[1] / eps ** 2) / (direction[0] / eps))
        data["sech_approximation"] = {
            "alpha": [sech_approximation(eps, 0.0, int(n), params).alpha
                      for n in orbit.n],
            "beta": [sech_approximation(eps, 0.0, int(n), params).beta
                     for n in orbit.n],
        }
        path = out_path
        if len(syms) > 1:
            path = _split_out(out_path, "link" if sym is Symmetry.LINK_CENTERED
                              else "ring")
        cfg = dict(config, symmetry=sym.value)
        _emit(fmt, _payload(cfg, data), ORBIT_HEADER, _orbit_rows(orbit), path)


@main.command()
@_L_OPT
@click.option("--eps", type=float, default=None)
@click.option("--lambda", "lam", type=float, default=None,
              help="Frequency Lambda = -eps**2 (negative).")
@click.option("--symmetry", type=click.Choice(["link", "ring", "both"]),
              default="link", show_default=True)
@click.option("--method", type=click.Choice(["direct", "orbit", "both"]),
              default="direct", show_default=True,
              help="Direct shooting, orbit assembly, or cross-checked both.")
@click.option("--samples-per-edge", type=int, default=64, show_default=True)
@_TOL_OPT
@_OUT_OPT
@_FMT_OPT
def boundstate(L, eps, lam, symmetry, method, samples_per_edge, tol, out_path, fmt):
    """Bound-state profile(s), with mass, energy, and vertex residuals."""
    params = _params(L)
    eps_val = _resolve_eps(eps, lam)
    syms = _parse_symmetries(symmetry)
    if len(syms) > 1 and out_path is None:
        raise click.UsageError("--symmetry both writes two files; --out is required")
    config = {"subcommand": "boundstate", "L": L, "eps": eps_val,
              "lambda": -eps_val ** 2, "symmetry": symmetry, "method": method,
              "samples_per_edge": samples_per_edge, "tol": tol,
              "format": fmt, "out": out_path}
    for sym in syms:
        try:
            states = {}
            if method in ("direct", "both"):
                states["direct"] = shoot_bound_state(
                    -eps_val ** 2, params, sym, tol=tol,
                    samples_per_edge=samples_per_edge)
            if method in ("orbit", "both"):
                orbit = shoot_homoclinic(eps_val, params, sym)
                states["orbit"] = assemble_profile(
                    orbit, samples_per_edge=samples_per_edge, tol=tol)
        except NecklaceError as exc:
            _fail_numerical(exc)
        primary = states.get("direct", states.get("orbit"))
        data = _boundstate_data(primary)
        if len(states) == 2:
            data["cross_method"] = {
                "Q_direct": states["direct"].Q,
                "Q_orbit": states["orbit"].Q,
                "sup_direct": states["direct"].profile.sup_abs(),
                "sup_orbit": states["orbit"].profile.sup_abs(),
            }
        path = out_path
        if len(syms) > 1:
            path = _split_out(out_path, "link" if sym is Symmetry.LINK_CENTERED
                              else "ring")
        cfg = dict(config, symmetry=sym.value)
        _emit(fmt, _payload(cfg, data), PROFILE_HEADER,
              _profile_rows(primary.profile), path)


# ---------------------------------------------------------------------------
# verify

def _verify_checks(eps_list, params, tol, kirchhoff_factor):
    """Run the cross-module invariant suite; yields (name, passed, detail)."""
    checks = []

    def add(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    # linear spectrum
    omegas = np.linspace(0.1, 6.0, 61)
    worst_det = max(abs(np.linalg.det(monodromy_matrix(w, params).as_array()) - 1.0)
                    for w in omegas)
    add("monodromy_det_one", worst_det < 1e-10, f"max |det-1| = {worst_det:.2e}")

    worst_tr = max(abs(trace(w, params) - monodromy_matrix(w, params).trace)
                   for w in omegas)
    add("trace_formula", worst_tr < 1e-10, f"max formula mismatch = {worst_tr:.2e}")

    e0 = eps_list[0]
    th = trace_hyperbolic(e0, params)
    expected = (2.0 * math.cosh(e0 * math.pi) * math.cosh(e0 * params.L)
                + 2.5 * math.sinh(e0 * math.pi) * math.sinh(e0 * params.L))
    add("hyperbolic_trace", abs(th - expected) < 1e-12,
        f"mismatch = {abs(th - expected):.2e}")

    nu2 = band_edge_curvature(params)
    nu2_ref = (params.L + math.pi / 2.0) * (params.L + 2.0 * math.pi)
    add("band_edge_curvature", abs(nu2 - nu2_ref) < 1e-12,
        f"nu^2 = {nu2:.6f}")

    # edge ODE oracles
    e = e0
    sol = integrate_ivp(e, 0.0, e, 4.0, tol=tol)
    exact = e / np.cosh(e * sol.x)
    err = float(np.max(np.abs(sol.psi - exact)))
    add("sech_oracle", err < 1e-8 and sol.invariant_drift < 1e-12,
        f"sup error = {err:.2e}, drift = {sol.invariant_drift:.2e}")

    c = e / math.sqrt(2.0)
    pv, pd = propagate(c, 0.0, e, params.P, tol)
    add("constant_oracle", abs(pv - c) + abs(pd) < 1e-9,
        f"deviation = {abs(pv - c) + abs(pd):.2e}")

    # map structure
    fp = period_map(MapState(c, 0.0), e, params, tol)
    fp_dev = abs(fp.a - c) + abs(fp.b)
    add("nonzero_fixed_point", fp_dev < 1e-8, f"deviation = {fp_dev:.2e}")

    jac = jacobian(MapState(0.0, 0.0), e, params)
    det_err = abs(np.linalg.det(jac) - 1.0)
    tr_err = abs(np.trace(jac) - th)
    add("origin_jacobian", det_err < 1e-7 and tr_err < 1e-7,
        f"|det-1| = {det_err:.2e}, |trace mismatch| = {tr_err:.2e}")

    st = MapState(0.3 * e, -0.1 * e ** 2)
    rt = inverse_period_map(period_map(st, e, params, tol), e, params, tol)
    inv_err = abs(rt.a - st.a) + abs(rt.b - st.b)
    add("inverse_map", inv_err < 1e-9, f"roundtrip error = {inv_err:.2e}")

    # homoclinic orbits and bound states per eps
    diag_by_eps = {}
    for eps in eps_list:
        for sym, key in ((Symmetry.LINK_CENTERED, "link"),
                         (Symmetry.RING_CENTERED, "ring")):
            orbit = shoot_homoclinic(eps, params, sym)
            d = orbit.diagnostics
            lam_minus = float(np.min(np.linalg.eigvals(
                jacobian(MapState(0.0, 0.0), eps, params)).real))
            ratio_err = abs(d.tail_decay_ratio - lam_minus)
            add(f"homoclinic_{key}_eps{eps:g}",
                d.all_positive and d.monotone_tail_index <= 2
                and ratio_err < 1e-3 and d.l2_distance_to_sech < 0.5 * eps,
                f"positive = {d.all_positive}, mono N = {d.monotone_tail_index}, "
                f"ratio error = {ratio_err:.2e}, "
                f"l2/eps = {d.l2_distance_to_sech / eps:.3f}")
            diag_by_eps.setdefault(key, {})[eps] = d
            if sym is Symmetry.LINK_CENTERED:
                bs = assemble_profile(orbit)
                mu = math.sqrt((params.L + 2.0 * math.pi)
                               / (params.L + math.pi / 2.0))
                q_dev = abs(bs.Q - 2.0 * mu * eps)
                add(f"Q_leading_order_eps{eps:g}", q_dev < 2.0 * eps ** 2,
                    f"|Q - 2 mu eps| = {q_dev:.2e} vs 2 eps^2 = {2 * eps ** 2:.2e}")
                # kirchhoff_factor != 1 is the negative-control hook: it scales
                # the ring flux data and must make this check fail
                perturbed = dataclasses.replace(orbit, d=kirchhoff_factor * orbit.d)
                try:
                    bs_p = assemble_profile(perturbed, residual_tol=math.inf)
                    residual = bs_p.max_kirchhoff_residual
                except NecklaceError:
                    residual = math.inf
                add(f"kirchhoff_residual_eps{eps:g}", residual < 1e-8,
                    f"residual = {residual:.2e}")

    # eps-halving checks when at least two eps are given
    pairs = [(a, b) for a, b in zip(eps_list, eps_list[1:]) if abs(a - 2 * b) < 1e-12]
    for big, small in pairs:
        for key in ("link", "ring"):
            c_big = diag_by_eps[key][big].l2_distance_to_sech / big
            c_small = diag_by_eps[key][small].l2_distance_to_sech / small
            add(f"sech_distance_stable_{key}_{big:g}_to_{small:g}",
                c_small < 1.25 * c_big + 1e-6,
                f"C({big:g}) = {c_big:.3f}, C({small:g}) = {c_small:.3f}")
        # truncated-map remainder order by eps-halving
        pt = ScaledState(0.4, -0.2)
        orders = []
        for eps in (big, small):
            full = period_map(pt.unscaled(eps), eps, params, 1e-12).scaled(eps)
            trunc = scaled_map_truncated(pt, eps, params)
            orders.append((abs(full.alpha - trunc.alpha),
                           abs(full.beta - trunc.beta)))
        p_alpha = math.log2(orders[0][0] / orders[1][0])
        p_beta = math.log2(orders[0][1] / orders[1][1])
        add(f"truncation_order_{big:g}_to_{small:g}",
            p_alpha > 3.5 and p_beta > 2.5,
            f"alpha order = {p_alpha:.2f}, beta order = {p_beta:.2f}")

    return checks


@main.command()
@_L_OPT
@click.option("--eps", "eps_csv", type=str, default="0.04,0.02",
              show_default=True, help="Comma-separated eps list.")
@_TOL_OPT
@click.option("--kirchhoff-factor", type=float, default=1.0, hidden=True,
              help="Negative-control hook: perturbs a vertex-condition check.")
@_OUT_OPT
@_FMT_OPT
def verify(L, eps_csv, tol, kirchhoff_factor, out_path, fmt):
    """Run the cross-module invariant suite and report pass/fail."""
    params = _params(L)
    try:
        eps_list = [float(s) for s in eps_csv.split(",") if s.strip()]
    except ValueError:
        raise click.UsageError("--eps must be a comma-separated list of numbers")
    if not eps_list or any(e <= 0 for e in eps_list):
        raise click.UsageError("--eps values must be positive")
    config = {"subcommand": "verify", "L": L, "eps": eps_list, "tol": tol,
              "format": fmt, "out": out_path}
    try:
        checks = _verify_checks(eps_list, params, tol, kirchhoff_factor)
    except NecklaceError as exc:
        _fail_numerical(exc)
    n_fail = sum(1 for c in checks if not c["passed"])
    data = {"checks": checks, "n_checks": len(checks), "n_failed": n_fail,
            "all_passed": n_fail == 0}
    rows = [[c["name"], int(c["passed"]), c["detail"]] for c in checks]
    _emit(fmt, _payload(config, data), ["name", "passed", "detail"], rows, out_path)
    if n_fail:
        click.echo(f"verify: {n_fail} of {len(checks)} checks failed", err=True)
        sys.exit(EXIT_NUMERICAL)


@main.command()
@_L_OPT
@click.option("--eps", "eps_csv", type=str, default="0.08,0.04,0.02",
              show_default=True, help="Comma-separated eps list.")
@click.option("--symmetry", type=click.Choice(["link", "ring", "both"]),
              default="both", show_default=True)
@_TOL_OPT
@_OUT_OPT
@_FMT_OPT
def sweep(L, eps_csv, symmetry, tol, out_path, fmt):
    """Homoclinic orbit and bound-state summary across an eps sweep."""
    params = _params(L)
    try:
        eps_list = [float(s) for s in eps_csv.split(",") if s.strip()]
    except ValueError:
        raise click.UsageError("--eps must be a comma-separated list of numbers")
    if not eps_list or any(e <= 0 for e in eps_list):
        raise click.UsageError("--eps values must be positive")
    syms = _parse_symmetries(symmetry)
    config = {"subcommand": "sweep", "L": L, "eps": eps_list,
              "symmetry": symmetry, "tol": tol, "format": fmt, "out": out_path}
    records = []
    for eps in eps_list:
        for sym in syms:
            try:
                orbit = shoot_homoclinic(eps, params, sym)
                bs = assemble_profile(orbit, tol=tol)
            except NecklaceError as exc:
                _fail_numerical(exc)
            d = orbit.diagnostics
            records.append({
                "eps": eps, "lambda": -eps ** 2, "symmetry": sym.value,
                "Q": bs.Q, "E": bs.E, "h2_norm": bs.h2_norm,
                "alpha0": float(orbit.alpha[orbit.n.tolist().index(0)]),
                "tail_decay_ratio": d.tail_decay_ratio,
                "l2_distance_to_sech": d.l2_distance_to_sech,
                "max_kirchhoff_residual": bs.max_kirchhoff_residual,
            })
    header = ["eps", "lambda", "symmetry", "Q", "E", "h2_norm", "alpha0",
              "tail_decay_ratio", "l2_distance_to_sech", "max_kirchhoff_residual"]
    rows = [[repr(r["eps"]), repr(r["lambda"]), r["symmetry"], repr(r["Q"]),
             repr(r["E"]), repr(r["h2_norm"]), repr(r["alpha0"]),
             repr(r["tail_decay_ratio"]), repr(r["l2_distance_to_sech"]),
             repr(r["max_kirchhoff_residual"])] for r in records]
    _emit(fmt, _payload(config, {"records": records}), header, rows, out_path)


if __name__ == "__main__":
    main()
