"""Command-line front end.

    sgqe density  --config cfg.json [--out density.csv] [--outcome zero|one|none]
    sgqe wigner   --config cfg.json [--out wigner.csv] [--kind reduced|zero|one|interference]
    sgqe summary  --config cfg.json [--out summary.json]
    sgqe validate --config cfg.json [--out report.json] [--outcome zero|one|none]
    sgqe figures  --which 2|3|4 [--out cfg.json]

Exit codes: 0 success, 1 validation failure, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .branches import BranchSign, branch_overlap, branch_x_amplitude
from .config import ConfigError, ScenarioConfig, figure_preset, load_config
from .distributions import (density_conditioned, density_unconditioned, distinguishability_report,
                            fringe_visibility)
from .errors import SGQEError
from .grids import Grid1D, Grid2D
from .measurement import MeasurementOutcome
from .model import HBAR, derive_scales
from .phase_space import (WignerKind, normalizations, phase_space_distance, uncertainty_area_conditioned,
                          uncertainty_area_reduced, wigner_field)
from .validation import report, run_validation

log = logging.getLogger("sgqe")

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT = 0, 1, 2


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_csv(path: Path, header: dict, columns: list[str], rows) -> None:
    buf = io.StringIO()
    buf.write("# " + json.dumps(header, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    path.write_text(buf.getvalue())


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".json")


def _out_path(args, cfg: ScenarioConfig, command: str, default: str) -> Path:
    return Path(args.out or cfg.outputs.get(command) or default)


def cmd_density(cfg: ScenarioConfig, out: Path) -> dict:
    p = cfg.params
    lam = p.wavelength
    g = cfg.grid
    uncond = density_unconditioned(p, g, cfg.t)
    zero = density_conditioned(p, g, cfg.t, MeasurementOutcome.ZERO_PHOTONS)
    one = density_conditioned(p, g, cfg.t, MeasurementOutcome.ONE_PHOTON)
    up = branch_x_amplitude(p, BranchSign.PLUS, g.values, cfg.t)
    dn = branch_x_amplitude(p, BranchSign.MINUS, g.values, cfg.t)
    cross = 2.0 * np.real(np.conj(up) * dn)
    cols = {
        "x_over_lambda": g.values / lam,
        "P_unconditioned": uncond.values * lam,
        "P0": zero.values * lam,
        "P1": one.values * lam,
        "interference_term": cross * lam,
    }
    _write_csv(out, {"command": "density", "params": cfg.resolved()}, list(cols),
               zip(*cols.values()))
    rel = Grid1D(g.x_min / lam, g.x_max / lam, g.points)
    side = {
        "tool": "sgqe", "tool_version": __version__, "command": "density", "data": out.name,
        "params": cfg.resolved(),
        "integrals": {k: float(rel.integrate(np.array([float(_fmt(v)) for v in cols[k]])))
                      for k in ("P_unconditioned", "P0", "P1", "interference_term")},
        "ensemble_fractions": {"P0": zero.ensemble_fraction, "P1": one.ensemble_fraction},
        "min": {k: float(cols[k].min()) for k in ("P_unconditioned", "P0", "P1")},
    }
    _sidecar(out).write_text(_dump(side))
    return side


_KINDS = {"reduced": WignerKind.REDUCED, "zero": WignerKind.CONDITIONED_ZERO,
          "one": WignerKind.CONDITIONED_ONE, "interference": WignerKind.INTERFERENCE}


def cmd_wigner(cfg: ScenarioConfig, out: Path, kind: str = "reduced") -> dict:
    p = cfg.params
    lam = p.wavelength
    hk = HBAR * p.k
    grid = Grid2D(Grid1D(cfg.grid.x_min, cfg.grid.x_max, cfg.wigner_x_points), cfg.p_grid)
    field = wigner_field(p, grid, cfg.t, _KINDS[kind])
    w = field.values * (2.0 * math.pi * HBAR)  # density per unit (x/lambda)(p/hbar k)
    X, P = grid.mesh()
    _write_csv(out, {"command": "wigner", "kind": kind, "params": cfg.resolved()},
               ["x_over_lambda", "p_over_hbar_k", "W"],
               zip((X / lam).ravel(), (P / hk).ravel(), w.ravel()))
    side = {
        "tool": "sgqe", "tool_version": __version__, "command": "wigner", "kind": kind,
        "data": out.name, "time_s": cfg.t, "params": cfg.resolved(),
        "min": float(w.min()), "max": float(w.max()),
        "integral": float(field.integral()),
    }
    _sidecar(out).write_text(_dump(side))
    return side


def cmd_summary(cfg: ScenarioConfig) -> dict:
    p = cfg.params
    T = p.transit_time
    sc = derive_scales(p)
    n0, n1 = normalizations(p)
    quarter_h2 = HBAR * HBAR / 4.0
    i0 = density_conditioned(p, cfg.grid, cfg.t, MeasurementOutcome.ZERO_PHOTONS).integral()
    i1 = density_conditioned(p, cfg.grid, cfg.t, MeasurementOutcome.ONE_PHOTON).integral()
    det_r = uncertainty_area_reduced(p, T).det
    det_0 = uncertainty_area_conditioned(p, MeasurementOutcome.ZERO_PHOTONS).det
    det_1 = uncertainty_area_conditioned(p, MeasurementOutcome.ONE_PHOTON).det
    dist = distinguishability_report(p)
    vis = fringe_visibility(p, cfg.t, MeasurementOutcome.ZERO_PHOTONS) if cfg.t >= T else None
    return {
        "tool": "sgqe", "tool_version": __version__,
        "params": cfg.resolved(),
        "derived": {"k_per_m": sc.k, "a_m_per_s2": sc.a, "delta_p0_kg_m_per_s": sc.delta_p0,
                    "epsilon_T": sc.epsilon_T, "hbar_k_over_delta_p0": HBAR * sc.k / sc.delta_p0},
        "D_T": phase_space_distance(p, T),
        "N0": n0, "N1": n1,
        "overlap_abs": abs(branch_overlap(p, T)),
        "integral_P0": i0, "integral_P1": i1,
        "det_reduced": det_r, "det_zero": det_0, "det_one": det_1,
        "det_reduced_over_hbar2_4": det_r / quarter_h2,
        "det_zero_over_hbar2_4": det_0 / quarter_h2,
        "det_one_over_hbar2_4": det_1 / quarter_h2,
        "distinguishable": dist.distinguishable,
        "distinguishable_strict": dist.strict,
        "momentum_separation_over_width": dist.momentum_separation_over_width,
        "visibility": vis,
    }


def cmd_validate(cfg: ScenarioConfig, outcome: MeasurementOutcome) -> dict:
    checks = run_validation(cfg.params, cfg.t, cfg.grid, cfg.p_grid, outcome, cfg.wigner_x_points)
    rep = report(checks)
    rep.update({"tool": "sgqe", "tool_version": __version__, "params": cfg.resolved()})
    return rep


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sgqe", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=f"sgqe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, outcome=False):
        p.add_argument("--config", required=True, help="JSON scenario file")
        p.add_argument("--out", help="output path")
        if outcome:
            p.add_argument("--outcome", choices=["zero", "one", "none"])

    common(sub.add_parser("density", help="position densities as CSV"), outcome=True)
    w = sub.add_parser("wigner", help="Wigner function on the phase-space grid as CSV")
    common(w)
    w.add_argument("--kind", choices=sorted(_KINDS), default="reduced")
    common(sub.add_parser("summary", help="scalar diagnostics as JSON"))
    common(sub.add_parser("validate", help="oracle-vs-closed-form checks"), outcome=True)
    f = sub.add_parser("figures", help="emit a reference-regime configuration")
    f.add_argument("--which", type=int, choices=[2, 3, 4], required=True)
    f.add_argument("--out")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "figures":
        _emit(_dump(figure_preset(args.which)), args.out)
        return EXIT_OK
    try:
        cfg = load_config(args.config)
        outcome = MeasurementOutcome(getattr(args, "outcome", None) or cfg.outcome.value)
        if args.command == "density":
            cmd_density(cfg, _out_path(args, cfg, "density", "density.csv"))
        elif args.command == "wigner":
            cmd_wigner(cfg, _out_path(args, cfg, "wigner", "wigner.csv"), args.kind)
        elif args.command == "summary":
            _emit(_dump(cmd_summary(cfg)), args.out or cfg.outputs.get("summary"))
        else:
            rep = cmd_validate(cfg, outcome)
            _emit(_dump(rep), args.out or cfg.outputs.get("validate"))
            if not rep["ok"]:
                log.error("failed checks: %s", ", ".join(rep["failed"]))
                return EXIT_FAILED
    except (SGQEError, ConfigError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_BAD_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
