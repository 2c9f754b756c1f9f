"""Command-line interface: spectrum tables, mixing roots, wavefunction export,
and the validation suites.

Configuration comes from flags plus an optional plain key-value file (one
`key = value` per line, later flags override the file). Output is fully
deterministic: numbers are printed with 12 significant digits, rows are
sorted by (channel, j, n), and no timestamps enter data records.

Exit codes: 0 success, 1 computation error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import mixing, oracle, radial, spectra, validate
from .core import QuantumNumberError, Scenario, as_half_integer

THREADS_ENV = "MONOPOLE_SPECTRA_THREADS"

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_CONFIG = 2


def fmt12(x) -> str:
    return f"{float(x):.12g}"


def _round12(x: float) -> float:
    return float(fmt12(x))


# --- config file ---------------------------------------------------------------


def parse_config_text(text: str) -> dict[str, str]:
    """Parse `key = value` lines; blank lines and #-comments are ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def serialize_config(cfg: dict[str, str]) -> str:
    """Canonical `key = value` text; parse -> serialize is byte-stable."""
    return "".join(f"{k} = {v}\n" for k, v in cfg.items())


_BOOLEAN_KEYS = {"no-monopole", "include-inadmissible"}


def _apply_config_file(argv: list[str]) -> list[str]:
    """Expand --config FILE into flags injected right after the subcommand, so
    that explicitly passed flags (later in argv) override the file."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv
    with open(known.config, "r", encoding="utf-8") as fh:
        cfg = parse_config_text(fh.read())
    injected: list[str] = []
    for key, value in cfg.items():
        if key in _BOOLEAN_KEYS:
            if value.lower() in ("1", "true", "yes", "on"):
                injected.append(f"--{key}")
        else:
            injected.extend([f"--{key}", value])
    out = list(argv)
    for i, tok in enumerate(out):
        if not tok.startswith("-"):  # the subcommand
            return out[: i + 1] + injected + out[i + 1 :]
    return out + injected


# --- parsing helpers -------------------------------------------------------------


def parse_n_range(spec: str) -> list[int]:
    """'0..3', '2', or '0,2,5'."""
    spec = spec.strip()
    if ".." in spec:
        lo, _, hi = spec.partition("..")
        lo_i, hi_i = int(lo), int(hi)
        return list(range(lo_i, hi_i + 1))
    if "," in spec:
        return [int(tok) for tok in spec.split(",")]
    return [int(spec)]


def parse_grid_spec(spec: str) -> np.ndarray:
    """'r0:r1:N' -> N uniformly spaced radii from r0 to r1 inclusive."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec must be r0:r1:N, got {spec!r}")
    r0, r1, n = float(parts[0]), float(parts[1]), int(parts[2])
    return radial.uniform_grid(r0, r1, n)


def _scenario_from_args(args) -> Scenario:
    charge = Fraction(0) if getattr(args, "no_monopole", False) else as_half_integer(args.k, "k")
    return Scenario(
        geometry=args.geometry,
        potential=args.potential,
        charge=charge,
        mass=float(args.mass),
        alpha=float(args.alpha),
        k_osc=float(args.k_osc),
        radius=float(args.radius),
    )


# --- rendering --------------------------------------------------------------------

_LEVEL_COLUMNS = ("channel", "j2", "n", "E", "admissible", "derivation", "reason")


def _level_rows(levels) -> list[dict]:
    rows = []
    for lv in sorted(levels, key=lambda lv: (lv.channel, lv.j, lv.n)):
        rec = lv.to_record()
        rec["E"] = _round12(rec["E"]) if rec["E"] == rec["E"] else rec["E"]  # keep NaN as-is
        if "epsilon" in rec:
            rec["epsilon"] = _round12(rec["epsilon"])
        rows.append(rec)
    return rows


def render_levels(levels, fmt: str) -> str:
    rows = _level_rows(levels)
    if fmt == "json":
        return json.dumps(rows, sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        lines = [",".join(_LEVEL_COLUMNS)]
        for rec in rows:
            lines.append(
                ",".join(
                    [rec["channel"], str(rec["j2"]), str(rec["n"]), fmt12(rec["E"]),
                     str(rec["admissible"]).lower(), rec["derivation"],
                     '"' + rec["reason"].replace('"', "'") + '"' if rec["reason"] else ""]
                )
            )
        return "\n".join(lines) + "\n"
    if fmt == "table":
        header = f"{'channel':<12} {'j2':>3} {'n':>3} {'E':>20} {'ok':>3}  reason"
        lines = [header, "-" * len(header)]
        for rec in rows:
            lines.append(
                f"{rec['channel']:<12} {rec['j2']:>3} {rec['n']:>3} {fmt12(rec['E']):>20} "
                f"{'y' if rec['admissible'] else 'n':>3}  {rec['reason']}"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands -------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    try:
        scen = _scenario_from_args(args)
        j = as_half_integer(args.j, "j")
        n_values = parse_n_range(args.n)
        channels = args.channel.split(",") if args.channel else None
    except (ValueError, QuantumNumberError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        chans = channels if channels is not None else spectra.default_channels(scen, j)
        tasks = [(ch, n) for ch in chans for n in n_values]
        workers = max(1, int(os.environ.get(THREADS_ENV, "1")))
        if workers > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                levels = list(pool.map(lambda t: spectra.single_level(scen, j, t[1], t[0]), tasks))
        else:
            levels = [spectra.single_level(scen, j, n, ch) for ch, n in tasks]
        if not args.include_inadmissible:
            levels = [lv for lv in levels if lv.admissible]
        _emit(render_levels(levels, args.format), args.output)
        return EXIT_OK
    except (spectra.SpectrumError, QuantumNumberError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def cmd_roots(args) -> int:
    try:
        k = as_half_integer(args.k, "k")
        j = as_half_integer(args.j, "j")
    except QuantumNumberError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        from .core import channel_kind, couplings

        kind = channel_kind(j, k)
        out: dict = {"j2": int(j * 2), "k2": int(k * 2), "channel_kind": kind}
        if kind == "min-j":
            out["notice"] = (
                "j = |k| - 1 is the reduced single-component channel; no 3x3 mixing system exists"
            )
            text = json.dumps(out, sort_keys=True, indent=1) + "\n"
            _emit(text, args.output)
            return EXIT_OK
        cp = couplings(j, k)
        inv = mixing.cubic_invariants(j, k)
        triple = mixing.mixing_roots(j, k)
        out.update(
            {
                "c": _round12(cp.c),
                "d": _round12(cp.d),
                "cubic": {
                    "r": _round12(float(inv.r)),
                    "s": _round12(float(inv.s)),
                    "t": _round12(float(inv.t)),
                    "p_from_matrix": _round12(float(inv.p)),
                    "q_from_matrix": _round12(float(inv.q)),
                    "p_closed_form": _round12(float(inv.p_closed)),
                    "q_closed_form": _round12(float(inv.q_closed)),
                    "discriminant": _round12(float(inv.disc)),
                },
                "roots": [_round12(a) for a in triple.a],
                "L": [_round12(l) for l in triple.l],
            }
        )
        if kind == "j-equals-k":
            out["caution"] = "j = |k|: one root is exactly zero and the transform is degenerate"
        elif k == 0:
            # c = d makes the middle root equal 2c^2 exactly: the unit-diagonal
            # transform degenerates and the parity split takes its place
            out["caution"] = "k = 0: parity split diagonalizes the system (transform degenerate)"
            if j >= 1:
                pair = mixing.parity_eigenvalues(j)
                out["parity_pair"] = [str(pair[0]), str(pair[1])]
        else:
            s = mixing.transform_matrix(cp.c, cp.d, triple)
            out["transform"] = [[_round12(v) for v in row] for row in s.tolist()]
            out["eigen_residual"] = _round12(mixing.transform_residual(cp.c, cp.d, triple, s))
        _emit(json.dumps(out, sort_keys=True, indent=1) + "\n", args.output)
        return EXIT_OK
    except (mixing.MixingError, QuantumNumberError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def cmd_validate(args) -> int:
    try:
        report = validate.run_suites([args.suite] if args.suite != "all" else "all")
    except KeyError as exc:
        print(f"error: unknown suite {exc}", file=sys.stderr)
        return EXIT_CONFIG
    results = report.pop("_objects")
    for res in results:
        print(res.line())
    if args.report:
        payload = {"envelope": report["envelope"], "results": report["results"]}
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
            fh.write("\n")
    if report["results"]["passed"]:
        print("all hard criteria passed")
        return EXIT_OK
    print(f"hard criteria failed: {', '.join(report['results']['hard_failures'])}", file=sys.stderr)
    return EXIT_COMPUTE


def cmd_wavefunction(args) -> int:
    try:
        scen = _scenario_from_args(args)
        j = as_half_integer(args.j, "j")
        grid = parse_grid_spec(args.grid)
        channel = args.channel or spectra.default_channels(scen, j)[0]
    except (ValueError, QuantumNumberError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        problem = radial.build_problem(scen, channel, j)
        if scen.potential == "none":
            if args.energy is None or float(args.energy) >= 0:
                raise radial.RadialError("the free reduced channel profile needs --energy E < 0")
            level = spectra.peculiar_flat_level(float(args.energy), scen)
        else:
            level = spectra.single_level(scen, j, int(args.n), channel)
        if not level.admissible:
            print(f"error: level inadmissible: {level.reason}", file=sys.stderr)
            return EXIT_COMPUTE
        sol = radial.analytic_solution(problem, level, grid=grid)
        res = _wavefunction_residual(problem, level)
        header = {
            "closed_form": sol.closed_form,
            "channel": channel,
            "j2": int(j * 2),
            "n": level.n,
            "E": _round12(level.energy),
            "l2_norm": _round12(sol.norm),
            "nodes": sol.node_count(),
        }
        if res is not None:
            header["ode_residual"] = _round12(res)
        lines = [json.dumps(header, sort_keys=True), "r,u"]
        for r, u in zip(sol.grid, sol.values):
            lines.append(f"{fmt12(r)},{fmt12(u)}")
        _emit("\n".join(lines) + "\n", args.output)
        return EXIT_OK
    except (radial.RadialError, spectra.SpectrumError, oracle.OracleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def _wavefunction_residual(problem, level):
    """Validation residual on the solver's own grid (the export grid may be
    too coarse near a fractional-power origin to reflect the closed form)."""
    try:
        check_sol = radial.analytic_solution(problem, level)
        return radial.residual(problem, check_sol, level)
    except radial.RadialError:
        return None


# --- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monopole-spectra",
        description="Energy spectra of a nonrelativistic spin-1 particle in a Dirac "
        "monopole field (flat and Lobachevsky geometry) with numerical validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_flags(p):
        p.add_argument("--config", help="key = value file; flags override it")
        p.add_argument("--geometry", choices=["flat", "lobachevsky"], default="flat")
        p.add_argument("--potential", choices=["none", "coulomb", "oscillator"], default="coulomb")
        p.add_argument("--k", default="1", help="monopole charge, half-integer (e.g. 1/2)")
        p.add_argument("--no-monopole", action="store_true", help="force the k = 0 limit")
        p.add_argument("--j", default="0", help="total angular momentum, half-integer")
        p.add_argument("--alpha", default="0", help="Coulomb coupling")
        p.add_argument("--k-osc", dest="k_osc", default="0", help="oscillator constant")
        p.add_argument("--mass", default="1", help="particle mass (natural units)")
        p.add_argument("--radius", default="1", help="curvature radius (Lobachevsky)")
        p.add_argument("--output", help="write to file instead of stdout")

    p_spec = sub.add_parser("spectrum", help="emit energy-level records")
    add_scenario_flags(p_spec)
    p_spec.add_argument("--n", default="0..3", help="radial index range, e.g. 0..3")
    p_spec.add_argument("--channel", help="comma-separated channel list (default: all for scenario)")
    p_spec.add_argument("--include-inadmissible", action="store_true")
    p_spec.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p_spec.set_defaults(func=cmd_spectrum)

    p_roots = sub.add_parser("roots", help="mixing-matrix invariants, roots, and transform")
    p_roots.add_argument("--config", help="key = value file; flags override it")
    p_roots.add_argument("--k", required=True)
    p_roots.add_argument("--j", required=True)
    p_roots.add_argument("--output")
    p_roots.set_defaults(func=cmd_roots)

    p_val = sub.add_parser("validate", help="run validation suites against the oracle")
    p_val.add_argument("--suite", choices=list(validate.SUITE_NAMES) + ["all"], default="all")
    p_val.add_argument("--report", help="write the JSON report here")
    p_val.set_defaults(func=cmd_validate)

    p_wf = sub.add_parser("wavefunction", help="export a closed-form radial solution as CSV")
    add_scenario_flags(p_wf)
    p_wf.add_argument("--n", default="0", help="radial index")
    p_wf.add_argument("--channel", help="channel label (default: first for scenario)")
    p_wf.add_argument("--energy", help="energy for the free reduced-channel profile (E < 0)")
    p_wf.add_argument("--grid", default="0.001:40:4000", help="r0:r1:N")
    p_wf.set_defaults(func=cmd_wavefunction)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
