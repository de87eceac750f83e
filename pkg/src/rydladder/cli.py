"""Config-driven command-line front end.

A run is described by a sectioned key-value config file (INI syntax) with
sections [geometry], [drive], [model], [task], [output].  Frequencies and
energies in the config are interpreted per the ``units`` flag in [drive]:
``two-pi-mhz`` (values are multiplied by 2 pi on ingestion, the convention
of most hardware specs) or ``rad-per-us`` (stored as is).  Lengths are in
micrometers and times in microseconds throughout.

Every run writes ``manifest.json`` with the resolved configuration (always
in rad/us), derived quantities, seeds, and timing; re-running with
``--config manifest.json`` reproduces the outputs bitwise for a fixed
thread count.

Exit codes: 0 ok, 2 config error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .basis import RungConstraint, RydbergBasis, Spin1Basis, StateDictionary, enumerate_rydberg
from .effective import (
    EffectiveCoefficients,
    MatchingError,
    ResonanceError,
    coeffs_in_plane,
    coeffs_prism,
    coeffs_three_leg,
    coeffs_two_leg,
    match_forward,
    match_inverse,
)
from .geometry import DEFAULT_C6, TWO_PI, LadderKind, LadderSpec, blockade_radius, build_ladder, pairwise_couplings
from .hamiltonians import (
    BoundaryCondition,
    Flavor,
    TargetCouplings,
    cahm_hamiltonian,
    effective_spin1_hamiltonian,
    rydberg_hamiltonian,
    sqed_charge_hamiltonian,
    sqed_field_hamiltonian,
)
from .observables import classify_phase, order_parameters, renyi_entropy, site_profile
from .solvers import SolverError, dense_eigs, ground_state, krylov_evolve, sector_eigenstates

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

MODELS = ("rydberg", "effective", "cahm", "sqed-charge", "sqed-field")
TASKS = ("gs", "spectrum", "evolve", "sweep", "match", "compare")
UNITS = ("two-pi-mhz", "rad-per-us")


class ConfigError(ValueError):
    pass


def fmt(x) -> str:
    """Floats with 17 significant digits (lossless round-trip)."""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


@dataclass
class RunConfig:
    # geometry
    kind: str = "two-leg"
    n_rungs: int = 2
    a_x: float = 0.0
    a_y: float = 0.0
    shift: float | None = None
    prism_height: float | None = None
    # drive (stored in rad/us)
    omega: float = 0.0
    delta: float = 0.0
    delta0: float = 0.0
    c6: float = DEFAULT_C6
    # model
    hamiltonian: str = "rydberg"
    flavor: str = "U"
    bc: str = "obc"
    range_cutoff: float | None = None
    k_max: int = 1
    case: int = 2
    staggered: bool = False
    constraint: int | None = None
    targets: dict = field(default_factory=dict)   # U, X, Y, Yp for cahm/sqed
    # task
    task: str = "gs"
    k: int = 5
    initial: str = "all-ground"
    t_total: float = 0.5
    dt: float = 0.002
    m_krylov: int = 20
    axis: str = "omega"
    start: float = 0.0
    stop: float = 0.0
    steps: int = 1
    direction: str = "forward"
    match_case: str = "three-leg-00bc"
    compare_models: tuple = ("rydberg", "effective")
    compare_task: str = "gs"
    # output / reproducibility
    directory: str = "."
    seed: int = 0
    threads: int = 1


_FLOAT_KEYS_ENERGY = {"omega", "delta", "delta0", "start", "stop"}


def _parse_section(cfg: RunConfig, section: str, items: dict, scale: float):
    for key, raw in items.items():
        if not hasattr(cfg, key) and key not in ("rho", "units", "U", "X", "Y", "Yp"):
            raise ConfigError(f"[{section}] unknown key {key!r}")
        try:
            if key in ("n_rungs", "k_max", "case", "k", "steps", "m_krylov", "seed", "threads", "constraint"):
                setattr(cfg, key, int(raw))
            elif key in ("a_x", "a_y", "shift", "prism_height", "t_total", "dt", "range_cutoff"):
                setattr(cfg, key, float(raw))
            elif key in ("staggered",):
                setattr(cfg, key, raw.strip().lower() in ("1", "true", "yes", "on"))
            elif key in _FLOAT_KEYS_ENERGY:
                # sweep axes are always drive energies, so start/stop scale too
                setattr(cfg, key, float(raw) * scale)
            elif key == "c6":
                cfg.c6 = float(raw) * scale
            elif key in ("U", "X", "Y", "Yp"):
                cfg.targets[key] = float(raw) * scale
            elif key == "compare_models":
                models = tuple(m.strip() for m in raw.split(","))
                if len(models) != 2 or any(m not in MODELS for m in models):
                    raise ConfigError(f"[{section}] compare_models must name two of {MODELS}")
                cfg.compare_models = models
            elif key in ("rho", "units"):
                pass  # handled by the caller
            else:
                setattr(cfg, key, raw.strip())
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from exc


def parse_config(path: str | Path) -> RunConfig:
    """Read a config file (INI sections or a manifest JSON)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text()
    if text.lstrip().startswith("{"):
        manifest = json.loads(text)
        data = manifest.get("config", manifest)
        cfg = RunConfig()
        for key, val in data.items():
            if key == "targets":
                cfg.targets = dict(val)
            elif key == "compare_models":
                cfg.compare_models = tuple(val)
            elif hasattr(cfg, key):
                setattr(cfg, key, val)
        _validate(cfg)
        return cfg

    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # keys are case-sensitive (Y vs Yp)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    units = parser.get("drive", "units", fallback="rad-per-us").strip()
    if units not in UNITS:
        raise ConfigError(f"[drive] units must be one of {UNITS}, got {units!r}")
    scale = TWO_PI if units == "two-pi-mhz" else 1.0

    cfg = RunConfig()
    cfg.c6 = DEFAULT_C6  # already in rad/us um^6
    for section in parser.sections():
        if section not in ("geometry", "drive", "model", "task", "output"):
            raise ConfigError(f"unknown section [{section}]")
        _parse_section(cfg, section, dict(parser.items(section)), scale)
    # rho is an alternative to a_x
    if parser.has_option("geometry", "rho"):
        if parser.has_option("geometry", "a_x"):
            raise ConfigError("[geometry] give either a_x or rho, not both")
        rho = float(parser.get("geometry", "rho"))
        if rho <= 0:
            raise ConfigError(f"[geometry] rho must be positive, got {rho}")
        if cfg.a_y <= 0:
            raise ConfigError("[geometry] rho requires a_y")
        cfg.a_x = cfg.a_y / rho
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    if cfg.kind not in [k.value for k in LadderKind]:
        raise ConfigError(f"[geometry] kind must be one of {[k.value for k in LadderKind]}")
    if cfg.hamiltonian not in MODELS:
        raise ConfigError(f"[model] hamiltonian must be one of {MODELS}")
    if cfg.task not in TASKS:
        raise ConfigError(f"[task] task must be one of {TASKS}")
    if cfg.hamiltonian == "rydberg" and (cfg.a_x <= 0 or cfg.a_y <= 0):
        raise ConfigError("[geometry] a_x and a_y (or rho) must be positive")
    if cfg.task == "evolve" and cfg.dt <= 0:
        raise ConfigError("[task] dt must be positive")
    if cfg.task == "sweep":
        if cfg.axis not in ("omega", "delta", "delta0"):
            raise ConfigError("[task] sweep axis must be omega, delta, or delta0")
        if cfg.steps < 1:
            raise ConfigError("[task] steps must be >= 1")
    if cfg.task == "compare" and cfg.compare_task not in ("gs", "evolve"):
        raise ConfigError("[task] compare_task must be gs or evolve")


# ---------------------------------------------------------------------------
# model assembly


def ladder_spec(cfg: RunConfig) -> LadderSpec:
    return LadderSpec(
        kind=LadderKind(cfg.kind),
        n_rungs=cfg.n_rungs,
        a_x=cfg.a_x,
        a_y=cfg.a_y,
        shift=cfg.shift,
        prism_height=cfg.prism_height,
    )


def geometry_coeffs(cfg: RunConfig) -> tuple[EffectiveCoefficients, list]:
    """Closed-form effective coefficients for the configured geometry."""
    kind = LadderKind(cfg.kind)
    spec = ladder_spec(cfg)
    rho = spec.rho
    v0 = cfg.c6 / cfg.a_y**6
    if kind is LadderKind.TWO_LEG:
        return coeffs_two_leg(v0, cfg.delta, cfg.omega, rho, cfg.k_max, cfg.staggered)
    if kind is LadderKind.THREE_LEG:
        return coeffs_three_leg(cfg.case, v0, cfg.delta, cfg.delta0, cfg.omega, rho, cfg.staggered), []
    if kind is LadderKind.PRISM:
        return coeffs_prism(v0, cfg.delta, cfg.delta0, cfg.omega, rho, cfg.staggered), []
    if kind is LadderKind.IN_PLANE_TRIANGLE:
        shift = None if cfg.shift is None else cfg.shift / cfg.a_y
        return coeffs_in_plane(v0, cfg.delta, cfg.delta0, cfg.omega, rho, shift, cfg.staggered), []
    raise ConfigError(f"no effective description for geometry kind {cfg.kind!r}")


@dataclass
class Model:
    op: "SparseOperator"
    basis: object          # RydbergBasis or Spin1Basis
    atoms: object = None   # AtomArray for rydberg models
    dictionary: object = None


def build_model(cfg: RunConfig, which: str | None = None) -> Model:
    which = which or cfg.hamiltonian
    if which == "rydberg":
        atoms = build_ladder(ladder_spec(cfg), delta0=cfg.delta0)
        couplings = pairwise_couplings(atoms, cfg.c6)
        constraint = None
        if cfg.constraint is not None:
            constraint = RungConstraint(atoms.n_legs, cfg.constraint)
        basis = enumerate_rydberg(atoms.n_atoms, constraint)
        op = rydberg_hamiltonian(atoms, cfg.omega, cfg.delta, couplings, basis, cfg.range_cutoff)
        try:
            dictionary = StateDictionary.for_atoms(atoms)
        except Exception:
            dictionary = None
        return Model(op, basis, atoms, dictionary)
    if which == "effective":
        coeffs, longrange = geometry_coeffs(cfg)
        op = effective_spin1_hamiltonian(coeffs, cfg.n_rungs, BoundaryCondition(cfg.bc), longrange)
        return Model(op, Spin1Basis(cfg.n_rungs))
    t = TargetCouplings(
        U=cfg.targets.get("U", 0.0),
        X=cfg.targets.get("X", 0.0),
        Y=cfg.targets.get("Y", 0.0),
        Yp=cfg.targets.get("Yp", 0.0),
    )
    if which == "cahm":
        return Model(cahm_hamiltonian(t, cfg.n_rungs), Spin1Basis(cfg.n_rungs))
    if which == "sqed-field":
        return Model(
            sqed_field_hamiltonian(t, cfg.n_rungs, BoundaryCondition(cfg.bc), Flavor(cfg.flavor)),
            Spin1Basis(cfg.n_rungs),
        )
    if which == "sqed-charge":
        op, charge_cfg = sqed_charge_hamiltonian(t, cfg.n_rungs)
        return Model(op, charge_cfg)
    raise ConfigError(f"unknown model {which!r}")


def initial_state(cfg: RunConfig, model: Model) -> np.ndarray:
    label = cfg.initial.strip()
    dim = model.op.dim
    psi = np.zeros(dim, dtype=complex)
    if label == "all-ground":
        if isinstance(model.basis, RydbergBasis):
            psi[model.basis.index_of(0)] = 1.0
        elif isinstance(model.basis, Spin1Basis):
            psi[model.basis.index_of([0] * model.basis.n_sites)] = 1.0
        else:
            raise ConfigError("all-ground is undefined for this basis")
        return psi
    if label.startswith("spin:"):
        digits = label[5:]
        ms = []
        for ch in digits:
            if ch not in "+-0":
                raise ConfigError(f"spin label digits must be +, -, or 0, got {digits!r}")
            ms.append({"+": 1, "-": -1, "0": 0}[ch])
        if isinstance(model.basis, Spin1Basis):
            if len(ms) != model.basis.n_sites:
                raise ConfigError(f"spin label has {len(ms)} digits for {model.basis.n_sites} sites")
            psi[model.basis.index_of(ms)] = 1.0
            return psi
        if isinstance(model.basis, RydbergBasis) and model.dictionary is not None:
            nl = model.dictionary.n_legs
            spin_to_pattern = {m: p for p, m in model.dictionary.pattern_to_spin.items()}
            config = 0
            for s, m in enumerate(ms):
                config |= spin_to_pattern[m] << (s * nl)
            idx = model.basis.index_of(config)
            if idx < 0:
                raise ConfigError(f"spin label {label!r} maps outside the enumerated basis")
            psi[idx] = 1.0
            return psi
        raise ConfigError("spin labels need a spin basis or a dictionary-bearing geometry")
    if label.startswith("index:"):
        idx = int(label[6:])
        if not 0 <= idx < dim:
            raise ConfigError(f"initial state index {idx} out of range (dim {dim})")
        psi[idx] = 1.0
        return psi
    raise ConfigError(f"unknown initial state label {cfg.initial!r}")


# ---------------------------------------------------------------------------
# tasks


def _write_csv(path: Path, header: list[str], rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")


def _profile(psi, model: Model):
    if isinstance(model.basis, Spin1Basis):
        return site_profile(psi, model.basis)
    return site_profile(psi, model.basis, model.atoms)


def _gs_row(cfg: RunConfig, model: Model, seed: int):
    e0, psi = ground_state(model.op, seed=seed)
    row = {"E0": e0}
    if isinstance(model.basis, Spin1Basis):
        op = order_parameters(psi, model.basis)
        n = model.basis.n_sites
        cut = max(1, n // 2)
        row.update(
            m_fm=op.m_fm, m_afm=op.m_afm, m_rdw=op.m_rdw,
            chi_fm=op.chi_fm, chi_afm=op.chi_afm, chi_rdw=op.chi_rdw,
            S1=renyi_entropy(psi, n, cut, 1) if n > 1 else 0.0,
            S2=renyi_entropy(psi, n, cut, 2) if n > 1 else 0.0,
            phase_label=classify_phase(op).value,
        )
    return row, psi


def task_geom(cfg: RunConfig, outdir: Path) -> dict:
    atoms = build_ladder(ladder_spec(cfg), delta0=cfg.delta0)
    rows = [
        (a, int(atoms.rung_of[a]), int(atoms.leg_of[a]), *map(float, atoms.positions[a]))
        for a in range(atoms.n_atoms)
    ]
    _write_csv(outdir / "geometry.csv", ["atom_id", "rung", "leg", "x", "y", "z"], rows)
    return {"n_atoms": atoms.n_atoms}


def task_coeffs(cfg: RunConfig, outdir: Path) -> dict:
    coeffs, longrange = geometry_coeffs(cfg)
    record = {
        "D": coeffs.D, "R": coeffs.R, "Rp": coeffs.Rp, "J": coeffs.J,
        "flavor": coeffs.flavor.value,
        "const_site": coeffs.const_site, "const_bond": coeffs.const_bond,
        "d_first": coeffs.d_first, "d_last": coeffs.d_last,
        "longrange": [[k, rk, rpk] for k, rk, rpk in longrange],
        "validity": coeffs.validity,
    }
    (outdir / "coeffs.json").write_text(json.dumps(record, indent=2) + "\n")
    print(json.dumps(record, indent=2))
    return record


def task_match(cfg: RunConfig, outdir: Path) -> dict:
    if cfg.direction == "forward":
        if cfg.a_x <= 0 or cfg.a_y <= 0:
            raise ConfigError("[geometry] forward matching needs a_x and a_y (or rho)")
        v0 = cfg.c6 / cfg.a_y**6
        t, const_site, const_offset = match_forward(
            cfg.match_case, v0, cfg.delta, cfg.delta0, cfg.omega, ladder_spec(cfg).rho
        )
        record = {
            "targets": {"U": t.U, "X": t.X, "Y": t.Y, "Yp": t.Yp},
            "const_site": const_site,
            "const_offset": const_offset,
        }
    elif cfg.direction == "inverse":
        t = TargetCouplings(
            U=cfg.targets.get("U", 0.0), X=cfg.targets.get("X", 0.0),
            Y=cfg.targets.get("Y", 0.0), Yp=cfg.targets.get("Yp", 0.0),
        )
        params = match_inverse(t, cfg.match_case, omega=cfg.omega or 1.0)
        record = {"device": params}
    else:
        raise ConfigError(f"[task] direction must be forward or inverse, got {cfg.direction!r}")
    (outdir / "match.json").write_text(json.dumps(record, indent=2) + "\n")
    print(json.dumps(record, indent=2))
    return record


def task_gs(cfg: RunConfig, outdir: Path) -> dict:
    model = build_model(cfg)
    row, _ = _gs_row(cfg, model, cfg.seed)
    header = list(row.keys())
    _write_csv(outdir / "gs.csv", header, [tuple(row.values())])
    return row


def task_spectrum(cfg: RunConfig, outdir: Path) -> dict:
    model = build_model(cfg)
    if model.dictionary is not None and isinstance(model.basis, RydbergBasis):
        res, overlaps, band = sector_eigenstates(model.op, model.basis, model.dictionary, cfg.k)
        rows = [
            (j, float(res.eigenvalues[j]), float(res.residuals[j]), float(overlaps[j]), int(j in set(band)))
            for j in range(min(len(res.eigenvalues), max(cfg.k, int(band.max()) + 1)))
        ]
        _write_csv(outdir / "spectrum.csv", ["level", "energy", "residual", "sector_overlap", "in_band"], rows)
        return {"E0": float(res.eigenvalues[0]), "band": [int(b) for b in band]}
    res = dense_eigs(model.op, k=cfg.k)
    rows = [(j, float(res.eigenvalues[j]), float(res.residuals[j])) for j in range(cfg.k)]
    _write_csv(outdir / "spectrum.csv", ["level", "energy", "residual"], rows)
    return {"E0": float(res.eigenvalues[0])}


def _evolve(cfg: RunConfig, model: Model):
    psi0 = initial_state(cfg, model)
    times, states = krylov_evolve(model.op, psi0, cfg.t_total, cfg.dt, cfg.m_krylov)
    return times, states


def task_evolve(cfg: RunConfig, outdir: Path) -> dict:
    model = build_model(cfg)
    times, states = _evolve(cfg, model)
    rows = []
    for t, psi in zip(times, states):
        prof = _profile(psi, model)
        for s in range(len(prof.lz)):
            rows.append((float(t), s + 1, float(prof.lz[s]), float(prof.lz2[s])))
    _write_csv(outdir / "timeseries.csv", ["t", "site", "lz", "lz2"], rows)
    return {"n_steps": len(times) - 1}


def _sweep_point(cfg: RunConfig, value: float, seed: int):
    point = RunConfig(**{**asdict(cfg)})
    point.targets = dict(cfg.targets)
    point.compare_models = cfg.compare_models
    setattr(point, cfg.axis, value)
    try:
        model = build_model(point)
        row, _ = _gs_row(point, model, seed)
        row["error"] = ""
        return row
    except (SolverError, ResonanceError, FloatingPointError) as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}


def task_sweep(cfg: RunConfig, outdir: Path) -> dict:
    values = np.linspace(cfg.start, cfg.stop, cfg.steps)
    with ThreadPoolExecutor(max_workers=max(1, cfg.threads)) as pool:
        results = list(pool.map(lambda v: _sweep_point(cfg, float(v), cfg.seed), values))
    keys = ["omega", "delta", "m_fm", "m_afm", "m_rdw", "chi_fm", "chi_afm",
            "chi_rdw", "S1", "S2", "E0", "phase_label", "error"]
    rows = []
    for v, row in zip(values, results):
        base = {"omega": cfg.omega, "delta": cfg.delta}
        if cfg.axis in ("omega", "delta"):
            base[cfg.axis] = float(v)
        merged = {**{k: "" for k in keys}, **base, **row}
        rows.append(tuple(merged[k] for k in keys))
    _write_csv(outdir / "scan.csv", keys, rows)
    n_failed = sum(1 for r in results if r.get("error"))
    return {"points": len(rows), "failed": n_failed}


def task_compare(cfg: RunConfig, outdir: Path) -> dict:
    name_a, name_b = cfg.compare_models
    model_a = build_model(cfg, name_a)
    model_b = build_model(cfg, name_b)
    if cfg.compare_task == "gs":
        e_a, _ = ground_state(model_a.op, seed=cfg.seed)
        e_b, _ = ground_state(model_b.op, seed=cfg.seed)
        rel = abs(e_a - e_b) / max(abs(e_a), 1e-300)
        _write_csv(
            outdir / "compare_gs.csv",
            [f"E0_{name_a}", f"E0_{name_b}", "abs_deviation", "rel_deviation"],
            [(e_a, e_b, abs(e_a - e_b), rel)],
        )
        return {"E0_a": e_a, "E0_b": e_b, "max_deviation": abs(e_a - e_b)}
    # compare evolve: paired per-site traces
    times_a, states_a = _evolve(cfg, model_a)
    times_b, states_b = _evolve(cfg, model_b)
    rows = []
    max_dev = 0.0
    for t, pa, pb in zip(times_a, states_a, states_b):
        prof_a = _profile(pa, model_a)
        prof_b = _profile(pb, model_b)
        for s in range(len(prof_a.lz2)):
            dev = abs(float(prof_a.lz2[s]) - float(prof_b.lz2[s]))
            max_dev = max(max_dev, dev)
            rows.append((float(t), s + 1, float(prof_a.lz2[s]), float(prof_b.lz2[s]), dev))
    _write_csv(
        outdir / "compare_evolve.csv",
        ["t", "site", f"lz2_{name_a}", f"lz2_{name_b}", "abs_deviation"],
        rows,
    )
    return {"max_deviation": max_dev}


# ---------------------------------------------------------------------------
# manifest and entry point


def derived_quantities(cfg: RunConfig) -> dict:
    out = {}
    try:
        if cfg.a_x > 0 and cfg.a_y > 0:
            atoms = build_ladder(ladder_spec(cfg), delta0=cfg.delta0)
            named = pairwise_couplings(atoms, cfg.c6).named
            out.update({k: float(v) for k, v in named.items()})
        if cfg.omega > 0:
            out["R_b"] = blockade_radius(cfg.c6, cfg.omega)
        coeffs, longrange = geometry_coeffs(cfg)
        out["coefficients"] = {
            "D": coeffs.D, "R": coeffs.R, "Rp": coeffs.Rp, "J": coeffs.J,
            "flavor": coeffs.flavor.value,
        }
        out["validity"] = coeffs.validity
        if longrange:
            out["longrange"] = [[k, rk, rpk] for k, rk, rpk in longrange]
    except (ConfigError, ResonanceError, ValueError, ZeroDivisionError):
        pass  # derived values are informative only
    return out


def run(cfg: RunConfig, outdir: str | Path | None = None) -> int:
    outdir = Path(outdir if outdir is not None else cfg.directory)
    outdir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    dispatch = {
        "gs": task_gs,
        "spectrum": task_spectrum,
        "evolve": task_evolve,
        "sweep": task_sweep,
        "match": task_match,
        "compare": task_compare,
    }
    summary = dispatch[cfg.task](cfg, outdir)
    wall = time.perf_counter() - t0
    manifest = {
        "tool": "rydladder",
        "version": __version__,
        "config": _config_dict(cfg),
        "derived": derived_quantities(cfg),
        "seed": cfg.seed,
        "threads": cfg.threads,
        "wall_time_s": wall,
        "summary": _jsonable(summary),
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2, default=str) + "\n")
    return EXIT_OK


def _config_dict(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d["compare_models"] = list(cfg.compare_models)
    return d


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rydladder",
        description="Rydberg-ladder simulators, effective spin-1 chains, and parameter matching",
    )
    parser.add_argument("command", choices=("geom", "coeffs", "match", "run") + TASKS,
                        help="task to run ('run' uses the task from the config)")
    parser.add_argument("--config", required=True, help="path to a run config or manifest.json")
    parser.add_argument("--out", default=None, help="output directory (default: config's)")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        cfg = parse_config(args.config)
        if args.command in TASKS:
            cfg.task = args.command
        if args.threads is not None:
            cfg.threads = args.threads
        if args.seed is not None:
            cfg.seed = args.seed
        _validate(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command in ("geom", "coeffs"):
            outdir = Path(args.out if args.out is not None else cfg.directory)
            outdir.mkdir(parents=True, exist_ok=True)
            if args.command == "geom":
                task_geom(cfg, outdir)
            else:
                task_coeffs(cfg, outdir)
            return EXIT_OK
        return run(cfg, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SolverError, MatchingError, ResonanceError, ValueError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
