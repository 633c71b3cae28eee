"""Command-line front end: deterministic CSV/JSON emission for every pipeline.

Subcommands: onsite | spectrum | band | breather | dispersion-compare |
validate.  Floats are written with their shortest round-trip representation
so identical configurations reproduce byte-identical files.  Exit codes:
0 success, 1 usage error, 2 numerical failure, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bands import dispersion_compare, lowest_excitation_dispersion, solve_bands
from .breather import band_expansions, geometric_grid, linear_grid, run_breather
from .onsite import ModelParams, semiclassical_levels, solve_onsite
from .oracle import dense_hamiltonian, direct_evolution
from .qham import assemble_qblock
from .symbasis import build_sector, sector_census


class UsageError(Exception):
    """Bad invocation: unknown flags or config keys, malformed values."""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose failures map to exit code 1 instead of 2."""

    def error(self, message):
        raise UsageError(message)


def _to_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


# Converter per config key; doubles as the registry of recognized keys.
_CONVERTERS = {
    "n": int, "ncut": int, "osc_dim": int, "levels": int, "steps": int,
    "center": int,
    "a4": float, "a3": float, "c": float, "threshold": float,
    "t_max": float, "decades": float,
    "alpha": str, "c_sweep": str, "grid": str, "out": str, "format": str,
    "serial": _to_bool, "census": _to_bool, "computed": _to_bool,
    "inject_defect": _to_bool,
}

_MODEL_DEFAULTS = {"n": 13, "ncut": 6, "a4": 0.2, "a3": 0.0, "c": 0.05,
                   "osc_dim": None}
_OUTPUT_DEFAULTS = {"out": ".", "format": "csv", "serial": False}

_SUBCOMMAND_DEFAULTS = {
    "onsite": {"a4": 0.2, "a3": 0.0, "osc_dim": None, "levels": 9,
               **_OUTPUT_DEFAULTS},
    "spectrum": {**_MODEL_DEFAULTS, "threshold": 0.5, "alpha": None,
                 "c_sweep": None, "census": False, **_OUTPUT_DEFAULTS},
    "band": {**_MODEL_DEFAULTS, "threshold": 0.5, "alpha": None,
             **_OUTPUT_DEFAULTS},
    "breather": {**_MODEL_DEFAULTS, "threshold": 0.5, "alpha": "1",
                 "center": None, "t_max": 100.0, "steps": 201,
                 "grid": "linear", "decades": 5.0, **_OUTPUT_DEFAULTS},
    "dispersion-compare": {"n": 13, "ncut": 6, "a4": 0.0, "a3": 0.0,
                           "c": 0.1, "osc_dim": None, "computed": False,
                           **_OUTPUT_DEFAULTS},
    "validate": {"n": 4, "ncut": 3, "a4": 0.2, "a3": 0.0, "c": 0.3,
                 "osc_dim": None, "inject_defect": False,
                 **{**_OUTPUT_DEFAULTS, "format": "json"}},
}


def _add_model_flags(sub):
    sub.add_argument("--n", type=int, default=None, help="lattice sites")
    sub.add_argument("--ncut", type=int, default=None,
                     help="total excitation cutoff")
    sub.add_argument("--a4", type=float, default=None,
                     help="quartic on-site coefficient")
    sub.add_argument("--a3", type=float, default=None,
                     help="cubic on-site coefficient")
    sub.add_argument("--osc-dim", type=int, default=None, dest="osc_dim",
                     help="oscillator truncation (default max(40, 4*ncut))")


def _add_output_flags(sub):
    sub.add_argument("--out", default=None, help="output directory")
    sub.add_argument("--format", default=None, choices=["csv", "json"],
                     help="data file format")
    sub.add_argument("--serial", action="store_true", default=None,
                     help="force serial execution (always on; accepted for "
                          "script compatibility)")
    sub.add_argument("--config", default=None, metavar="FILE",
                     help="flat key=value config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kglattice",
        description="Eigenspectrum, bound-state bands and breather dynamics "
                    "of a 1D nonlinear Klein-Gordon lattice.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    onsite = subparsers.add_parser(
        "onsite", help="single-well quantum vs semiclassical levels")
    onsite.add_argument("--a4", type=float, default=None)
    onsite.add_argument("--a3", type=float, default=None)
    onsite.add_argument("--osc-dim", type=int, default=None, dest="osc_dim")
    onsite.add_argument("--levels", type=int, default=None,
                        help="number of levels to emit")
    _add_output_flags(onsite)

    spectrum = subparsers.add_parser(
        "spectrum", help="full sector spectrum with bound-state tags")
    _add_model_flags(spectrum)
    spectrum.add_argument("--c", type=float, default=None,
                          help="nearest-neighbour coupling")
    spectrum.add_argument("--c-sweep", default=None, dest="c_sweep",
                          metavar="C1,C2,...",
                          help="emit one spectrum file per coupling value")
    spectrum.add_argument("--alpha", default=None,
                          metavar="A1,A2,...", help="bands to tag")
    spectrum.add_argument("--threshold", type=float, default=None,
                          help="overlap threshold for band identification")
    spectrum.add_argument("--census", action="store_true", default=None,
                          help="also dump sector sizes (k, sector_size)")
    _add_output_flags(spectrum)

    band = subparsers.add_parser(
        "band", help="identified bound bands: dispersion, overlap, width")
    _add_model_flags(band)
    band.add_argument("--c", type=float, default=None)
    band.add_argument("--alpha", default=None, metavar="A1,A2,...")
    band.add_argument("--threshold", type=float, default=None)
    _add_output_flags(band)

    breather = subparsers.add_parser(
        "breather", help="site-resolved kinetic energy of a Wannier state")
    _add_model_flags(breather)
    breather.add_argument("--c", type=float, default=None)
    breather.add_argument("--alpha", default=None, help="band order")
    breather.add_argument("--center", type=int, default=None,
                          help="initial site (default n // 2)")
    breather.add_argument("--t-max", type=float, default=None, dest="t_max")
    breather.add_argument("--steps", type=int, default=None,
                          help="number of time points")
    breather.add_argument("--grid", default=None,
                          choices=["linear", "geometric"])
    breather.add_argument("--decades", type=float, default=None,
                          help="log span of the geometric grid")
    breather.add_argument("--threshold", type=float, default=None)
    _add_output_flags(breather)

    disp = subparsers.add_parser(
        "dispersion-compare",
        help="analytic single-phonon branches, optionally vs computed band")
    _add_model_flags(disp)
    disp.add_argument("--c", type=float, default=None)
    disp.add_argument("--computed", action="store_true", default=None,
                      help="also diagonalize and emit the lowest excitation")
    _add_output_flags(disp)

    validate = subparsers.add_parser(
        "validate", help="oracle equivalence, dispersion and invariant checks")
    _add_model_flags(validate)
    validate.add_argument("--c", type=float, default=None)
    validate.add_argument("--inject-defect", action="store_true",
                          default=None, dest="inject_defect",
                          help="test mode: perturb Hermiticity to force a "
                               "named failure")
    _add_output_flags(validate)
    return parser


def _load_config_file(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value, "
                             f"got {raw.strip()!r}")
        key = key.strip().replace("-", "_")
        if key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


def _convert(key: str, raw: str):
    try:
        return _CONVERTERS[key](raw)
    except ValueError as exc:
        raise UsageError(f"invalid value for {key}: {raw!r}") from exc


def resolve_config(ns: argparse.Namespace) -> argparse.Namespace:
    """Merge CLI flags over config-file values over built-in defaults.

    Config keys irrelevant to the subcommand are ignored so one file can
    drive several subcommands; unknown keys are rejected at load time.
    """
    file_values = _load_config_file(ns.config) if getattr(ns, "config", None) \
        else {}
    defaults = _SUBCOMMAND_DEFAULTS[ns.subcommand]
    resolved = {"subcommand": ns.subcommand}
    for key, default in defaults.items():
        value = getattr(ns, key, None)
        if value is None and key in file_values:
            value = _convert(key, file_values[key])
        resolved[key] = default if value is None else value
    cfg = argparse.Namespace(**resolved)
    if cfg.format not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {cfg.format!r}")
    if getattr(cfg, "grid", "linear") not in ("linear", "geometric"):
        raise UsageError(f"grid must be linear or geometric, got {cfg.grid!r}")
    return cfg


def _parse_int_list(raw: str, flag: str) -> list[int]:
    try:
        values = [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"invalid {flag} list: {raw!r}") from exc
    if not values:
        raise UsageError(f"empty {flag} list: {raw!r}")
    return values


def _parse_float_list(raw: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"invalid {flag} list: {raw!r}") from exc
    if not values:
        raise UsageError(f"empty {flag} list: {raw!r}")
    return values


def _model_params(cfg: argparse.Namespace, coupling: float | None = None,
                  ) -> ModelParams:
    return ModelParams(a4=cfg.a4, a3=cfg.a3,
                       c=cfg.c if coupling is None else coupling,
                       n=cfg.n, ncut=cfg.ncut, dim=cfg.osc_dim)


def _fmt(value) -> str:
    """Shortest round-trip float formatting; integers stay integers."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _jsonify(value):
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    return None if math.isnan(value) else value


def _write_table(outdir: Path, stem: str, header: list[str], rows,
                 fmt: str) -> str:
    name = f"{stem}.{fmt}"
    path = outdir / name
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        records = [dict(zip(header, (_jsonify(v) for v in row)))
                   for row in rows]
        path.write_text(json.dumps(records, indent=2) + "\n",
                        encoding="utf-8")
    return name


def _write_manifest(outdir: Path, stem: str, payload: dict) -> str:
    name = f"{stem}_manifest.json"
    (outdir / name).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n",
        encoding="utf-8")
    return name


def _model_manifest(params: ModelParams) -> dict:
    return {"n": params.n, "ncut": params.ncut, "a4": params.a4,
            "a3": params.a3, "c": params.c, "osc_dim": params.dim}


def _base_manifest(cfg: argparse.Namespace) -> dict:
    return {"subcommand": cfg.subcommand, "tool_version": __version__,
            "format": cfg.format,
            "float_format": "shortest-round-trip"}


def cmd_onsite(cfg: argparse.Namespace, outdir: Path) -> int:
    if cfg.levels < 1:
        raise ValueError("levels must be at least 1")
    params = ModelParams(a4=cfg.a4, a3=cfg.a3, c=0.0, n=2,
                         ncut=cfg.levels, dim=cfg.osc_dim)
    solution = solve_onsite(params)
    semi = semiclassical_levels(cfg.a3, cfg.a4, cfg.levels - 1)
    rows = [(n, float(solution.gamma[n]), float(semi[n]),
             float(semi[n] - solution.gamma[n]))
            for n in range(cfg.levels)]
    data = _write_table(outdir, "onsite",
                        ["n", "E_quantum", "E_semiclassical", "delta"],
                        rows, cfg.format)
    manifest = _base_manifest(cfg)
    manifest.update({"a4": cfg.a4, "a3": cfg.a3, "osc_dim": params.dim,
                     "levels": cfg.levels, "files": [data]})
    _write_manifest(outdir, "onsite", manifest)
    print(f"wrote {data} ({cfg.levels} levels)")
    return 0


def _bound_tags(spectrum) -> dict[tuple[int, int], int]:
    """(k, lam) -> alpha of the band claiming the state; contested states go
    to the larger overlap (ties to the smaller alpha)."""
    best: dict[tuple[int, int], tuple[float, int]] = {}
    for alpha in sorted(spectrum.bands):
        band = spectrum.bands[alpha]
        for ki, lam in enumerate(band.lams):
            if lam < 0:
                continue
            key = (ki, int(lam))
            overlap = float(band.overlaps[ki])
            if key not in best or overlap > best[key][0]:
                best[key] = (overlap, alpha)
    return {key: alpha for key, (_, alpha) in best.items()}


def _resolve_alphas(cfg: argparse.Namespace) -> list[int]:
    if cfg.alpha is None:
        return list(range(1, min(cfg.ncut, 4) + 1))
    return _parse_int_list(str(cfg.alpha), "--alpha")


def cmd_spectrum(cfg: argparse.Namespace, outdir: Path) -> int:
    couplings = ([cfg.c] if cfg.c_sweep is None
                 else _parse_float_list(cfg.c_sweep, "--c-sweep"))
    alphas = _resolve_alphas(cfg)
    files = []
    for coupling in couplings:
        params = _model_params(cfg, coupling)
        spectrum = solve_bands(params, alphas=alphas,
                               threshold=cfg.threshold)
        tags = _bound_tags(spectrum)
        rows = []
        for ki, sector in enumerate(spectrum.sectors):
            for lam, energy in enumerate(spectrum.energies[ki]):
                rows.append((ki, sector.q, lam, float(energy),
                             tags.get((ki, lam), 0)))
        stem = ("spectrum" if len(couplings) == 1
                else f"spectrum_c{_fmt(coupling)}")
        files.append(_write_table(
            outdir, stem, ["k", "q", "lambda", "energy", "bound_alpha"],
            rows, cfg.format))
    if cfg.census:
        census_rows = list(enumerate(sector_census(spectrum.basis).tolist()))
        files.append(_write_table(outdir, "sector_census",
                                  ["k", "sector_size"], census_rows,
                                  cfg.format))
    manifest = _base_manifest(cfg)
    manifest.update({"model": _model_manifest(_model_params(cfg, couplings[0])),
                     "c_values": couplings, "alphas": alphas,
                     "threshold": cfg.threshold,
                     "gauge": spectrum.gauge, "band_gauge": spectrum.band_gauge,
                     "files": files})
    _write_manifest(outdir, "spectrum", manifest)
    print(f"wrote {', '.join(files)}")
    return 0


def cmd_band(cfg: argparse.Namespace, outdir: Path) -> int:
    alphas = _resolve_alphas(cfg)
    params = _model_params(cfg)
    spectrum = solve_bands(params, alphas=alphas, threshold=cfg.threshold)
    rows = []
    for alpha in alphas:
        band = spectrum.bands[alpha]
        flag = int(band.complete)
        for ki in range(cfg.n):
            rows.append((ki, float(band.qs[ki]), alpha, int(band.lams[ki]),
                         float(band.energies[ki]), float(band.overlaps[ki]),
                         flag))
    data = _write_table(
        outdir, "band",
        ["k", "q", "alpha", "lambda", "energy", "overlap", "complete_flag"],
        rows, cfg.format)
    manifest = _base_manifest(cfg)
    manifest.update({"model": _model_manifest(params), "alphas": alphas,
                     "threshold": cfg.threshold, "gauge": spectrum.gauge,
                     "band_gauge": spectrum.band_gauge, "files": [data]})
    _write_manifest(outdir, "band", manifest)
    print(f"wrote {data}")
    return 0


def _build_grid(cfg: argparse.Namespace) -> np.ndarray:
    if cfg.grid == "linear":
        return linear_grid(cfg.t_max, cfg.steps)
    return geometric_grid(cfg.t_max, cfg.steps, cfg.decades)


def cmd_breather(cfg: argparse.Namespace, outdir: Path) -> int:
    try:
        alpha = int(str(cfg.alpha))
    except ValueError as exc:
        raise UsageError(
            f"breather takes a single alpha, got {cfg.alpha!r}") from exc
    params = _model_params(cfg)
    grid = _build_grid(cfg)
    spectrum = solve_bands(params, alphas=[alpha], threshold=cfg.threshold)
    run = run_breather(spectrum, alpha, center=cfg.center, grid=grid)
    rows = [(float(t), j, float(run.ekin[i, j]))
            for i, t in enumerate(run.times) for j in range(run.n_sites)]
    data = _write_table(outdir, "breather",
                        ["t", "site", "kinetic_energy"], rows, cfg.format)
    grid_spec = {"kind": cfg.grid, "t_max": cfg.t_max, "steps": cfg.steps}
    if cfg.grid == "geometric":
        grid_spec["decades"] = cfg.decades
    manifest = _base_manifest(cfg)
    manifest.update({
        "model": _model_manifest(params), "alpha": alpha,
        "center": run.center, "grid": grid_spec,
        "threshold": cfg.threshold, "contrast_threshold": 0.5,
        "gauge": spectrum.gauge, "band_gauge": run.gauge,
        "mean_energy": run.mean_energy,
        "tau": "inf" if math.isinf(run.lifetime) else run.lifetime,
        "recurrences": [float(t) for t in run.recurrences],
        "files": [data]})
    _write_manifest(outdir, "breather", manifest)
    tau_text = "inf" if math.isinf(run.lifetime) else _fmt(run.lifetime)
    print(f"wrote {data} (tau={tau_text}, "
          f"{len(run.recurrences)} recurrences)")
    return 0


def cmd_dispersion_compare(cfg: argparse.Namespace, outdir: Path) -> int:
    qs = 2.0 * np.pi * np.arange(cfg.n) / cfg.n
    branches = dispersion_compare(cfg.c, qs)
    header = ["k", "q", "hubbard", "harmonic"]
    columns = [np.arange(cfg.n), qs, branches[:, 0], branches[:, 1]]
    params = None
    if cfg.computed:
        params = _model_params(cfg)
        spectrum = solve_bands(params, alphas=[1])
        _, excitation = lowest_excitation_dispersion(spectrum.energies)
        header.append("computed")
        columns.append(excitation)
    rows = [tuple(int(col[i]) if name == "k" else float(col[i])
                  for name, col in zip(header, columns))
            for i in range(cfg.n)]
    data = _write_table(outdir, "dispersion_compare", header, rows,
                        cfg.format)
    manifest = _base_manifest(cfg)
    manifest.update({"n": cfg.n, "c": cfg.c, "computed": bool(cfg.computed),
                     "files": [data]})
    if params is not None:
        manifest["model"] = _model_manifest(params)
    _write_manifest(outdir, "dispersion_compare", manifest)
    print(f"wrote {data}")
    return 0


def _check(name: str, passed: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _validate_checks(cfg: argparse.Namespace) -> list[dict]:
    checks = []

    deviations = []
    for a4 in (0.0, 0.2):
        for coupling in (0.0, 0.05, 0.3):
            params = ModelParams(a4=a4, a3=0.0, c=coupling, n=cfg.n,
                                 ncut=cfg.ncut, dim=cfg.osc_dim)
            solution = solve_onsite(params, check_convergence=False)
            dense = dense_hamiltonian(params.n, params.ncut, solution,
                                      coupling)
            sector_energies = []
            for k in range(params.n):
                sector = build_sector(dense.basis, k)
                block = assemble_qblock(sector, solution, coupling)
                sector_energies.append(np.linalg.eigvalsh(block.matrix))
            merged = np.sort(np.concatenate(sector_energies))
            deviations.append(np.max(np.abs(merged - dense.energies)))
    worst = float(max(deviations))
    checks.append(_check(
        "sector_dense_multiset", worst < 1e-10,
        f"max eigenvalue deviation {worst:.3e} over A4 x C sweep "
        f"(n={cfg.n}, ncut={cfg.ncut})"))

    params = ModelParams(a4=cfg.a4, a3=cfg.a3, c=cfg.c, n=cfg.n,
                         ncut=cfg.ncut, dim=cfg.osc_dim)
    spectrum = solve_bands(params, alphas=[1])
    grid = linear_grid(10.0, 50)
    run = run_breather(spectrum, 1, grid=grid)
    band = spectrum.bands[1]
    expansions = band_expansions(spectrum, band)
    weights = np.exp(-1j * band.qs * run.s0) / math.sqrt(params.n)
    w0 = expansions @ weights
    dense = dense_hamiltonian(params.n, params.ncut, spectrum.onsite, params.c,
                              basis=spectrum.basis)
    direct = direct_evolution(dense, spectrum.onsite, w0, grid)
    dev = float(np.max(np.abs(run.ekin - direct)))
    checks.append(_check(
        "evolution_equivalence", dev < 1e-8,
        f"max kinetic-energy deviation {dev:.3e} over {grid.size} points"))

    norm_dev = float(abs(np.vdot(w0, w0).real - 1.0))
    energy = float((w0.conj() @ (dense.matrix @ w0)).real)
    energy_dev = float(abs(energy - run.mean_energy))
    checks.append(_check(
        "norm_energy_conservation",
        norm_dev < 1e-10 and energy_dev < 1e-10,
        f"norm deviation {norm_dev:.3e}, "
        f"mean-energy deviation {energy_dev:.3e}"))

    flat_params = ModelParams(a4=cfg.a4, a3=cfg.a3, c=0.0, n=cfg.n,
                              ncut=cfg.ncut, dim=cfg.osc_dim)
    flat = run_breather(solve_bands(flat_params, alphas=[1]), 1,
                        grid=linear_grid(10.0, 11))
    variation = float(np.max(np.ptp(flat.ekin, axis=0)))
    checks.append(_check(
        "stationarity_uncoupled", variation < 1e-10,
        f"max temporal kinetic-energy variation {variation:.3e} at c=0"))

    harmonic = ModelParams(a4=0.0, a3=0.0, c=0.1, n=6, ncut=4)
    harmonic_spec = solve_bands(harmonic, alphas=[1])
    _, excitation = lowest_excitation_dispersion(harmonic_spec.energies)
    expected = np.sqrt(1.0 + 2.0 * harmonic.c * np.cos(harmonic_spec.qs))
    disp_dev = float(np.max(np.abs(excitation - expected)))
    checks.append(_check(
        "harmonic_dispersion", disp_dev < 1e-3,
        f"max deviation from sqrt(1 + 2C cos q) is {disp_dev:.3e} "
        f"(n=6, ncut=4, C=0.1)"))

    sector = build_sector(spectrum.basis, 1)
    block = assemble_qblock(sector, spectrum.onsite, params.c)
    matrix = block.matrix.copy()
    if cfg.inject_defect:
        matrix[0, -1] += 1e-6
    residual = float(np.max(np.abs(matrix - matrix.conj().T)))
    checks.append(_check(
        "hermiticity", residual < 1e-12,
        f"max |H - H^dagger| = {residual:.3e} in sector k=1"
        + (" (defect injected)" if cfg.inject_defect else "")))

    census = sector_census(spectrum.basis)
    counted = int(census.sum())
    total = spectrum.basis.configs.shape[0]
    checks.append(_check(
        "sector_completeness", counted == total,
        f"sector sizes sum to {counted}, basis holds {total} configurations"))
    return checks


def cmd_validate(cfg: argparse.Namespace, outdir: Path) -> int:
    checks = _validate_checks(cfg)
    passed = all(c["passed"] for c in checks)
    report = {"subcommand": "validate", "tool_version": __version__,
              "parameters": {"n": cfg.n, "ncut": cfg.ncut, "a4": cfg.a4,
                             "a3": cfg.a3, "c": cfg.c,
                             "inject_defect": bool(cfg.inject_defect)},
              "checks": checks, "passed": passed}
    (outdir / "validate_report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if passed else 3


_HANDLERS = {
    "onsite": cmd_onsite,
    "spectrum": cmd_spectrum,
    "band": cmd_band,
    "breather": cmd_breather,
    "dispersion-compare": cmd_dispersion_compare,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = resolve_config(ns)
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        return _HANDLERS[cfg.subcommand](cfg, outdir)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3
    except (RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
