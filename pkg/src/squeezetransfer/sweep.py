"""Grid sweeps over hopping strength and time, with a CSV/JSON-emitting CLI.

Every (zeta, t) cell is a pure function of the configuration; cells are
computed independently (optionally across threads) and always emitted in
deterministic zeta-major order, so identical configurations produce
byte-identical output files.
"""

from __future__ import annotations

import argparse
import enum
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .dynamics import (
    InitialState,
    ManifoldState,
    SpectralPropagator,
    analytic_rho_atoms,
    analytic_rho_photons,
    coefficients,
    evolve_closed_form_grid,
    initial_vector,
)
from .hamiltonian import ModelParams, build_hamiltonian, extract_manifold_block
from .hilbert import CompositeSpace, DensityMatrix, atom, photon_mode, standard_space
from .operators import (
    QuadraturePair,
    SpinTriple,
    collective_atomic_spin,
    photonic_pseudospin,
    quadratures,
)
from .witness import (
    branch_witnesses,
    closed_form_quadrature_variance,
    kitagawa_ueda_xi,
    ossi,
    sorensen_xi_e2,
)

DISAGREEMENT_TOL = 1e-8

_OSSI_COLUMNS = tuple(
    f"{side}_slack_{name}"
    for side in ("atoms", "photons")
    for name in ("a", "b", "c_x", "c_y", "c_z", "d_x", "d_y", "d_z")
)

OBSERVABLES = ("ineq_a", "ineq_p", "ossi_full", "xi", "xi_e2", "var_x1", "var_x2")
DEFAULT_OBSERVABLES = ("ineq_a", "ineq_p", "var_x1", "var_x2")


class SweepError(RuntimeError):
    """A cell-level failure, annotated with the offending grid point."""


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    NUMERIC_ORACLE = "numeric_oracle"
    BOTH = "both"


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.stop < self.start:
            raise ValueError(f"grid stop {self.stop} < start {self.start}")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepConfig:
    params: ModelParams = field(default_factory=ModelParams)
    branch: InitialState = InitialState.ENTANGLED_SYMMETRIC
    zeta_grid: GridSpec = GridSpec(0.0, 2.0, 201)
    time_grid: GridSpec = GridSpec(0.0, 20.0, 401)
    observables: tuple[str, ...] = DEFAULT_OBSERVABLES
    method: Method = Method.CLOSED_FORM
    output_path: str = "sweep.csv"
    output_format: str = "csv"
    threads: int = 1

    def __post_init__(self):
        if self.zeta_grid.start < 0:
            raise ValueError("zeta must be non-negative")
        unknown = [o for o in self.observables if o not in OBSERVABLES]
        if unknown:
            raise ValueError(f"unknown observables: {unknown}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def columns(self) -> tuple[str, ...]:
        cols: list[str] = []
        for obs in self.observables:
            if obs == "ossi_full":
                cols.extend(_OSSI_COLUMNS)
            else:
                cols.append(obs)
        return tuple(cols)


@dataclass(frozen=True)
class SweepCell:
    zeta: float
    t: float
    values: dict[str, float]
    method_disagreement: Optional[float] = None


@dataclass(frozen=True, eq=False)
class _Workspace:
    """Shared read-only operators reused by every cell."""

    space: CompositeSpace
    atom_space: CompositeSpace
    photon_space: CompositeSpace
    atom_spin: SpinTriple
    photon_spin: SpinTriple
    quad: QuadraturePair


def _make_workspace(n_max: int = 2) -> _Workspace:
    space = standard_space(n_max)
    atom_space = CompositeSpace((atom(), atom()))
    photon_space = CompositeSpace((photon_mode(n_max), photon_mode(n_max)))
    return _Workspace(
        space=space,
        atom_space=atom_space,
        photon_space=photon_space,
        atom_spin=collective_atomic_spin(atom_space),
        photon_spin=photonic_pseudospin(photon_space),
        quad=quadratures(photon_space, 0),
    )


def _cell_values(
    amps: np.ndarray, t: float, branch: InitialState, config: SweepConfig, ws: _Workspace
) -> dict[str, float]:
    state = ManifoldState(amps, t)
    coeffs = coefficients(state)
    need_states = any(o in config.observables for o in ("ossi_full", "xi", "xi_e2"))
    rho_a = rho_p = None
    if need_states:
        rho_a = DensityMatrix(ws.atom_space, analytic_rho_atoms(coeffs))
        rho_p = DensityMatrix(ws.photon_space, analytic_rho_photons(coeffs))
    values: dict[str, float] = {}
    for obs in config.observables:
        if obs in ("ineq_a", "ineq_p"):
            bw = branch_witnesses(coeffs, branch)
            values[obs] = bw.ineq_a if obs == "ineq_a" else bw.ineq_p
        elif obs in ("var_x1", "var_x2"):
            values[obs] = closed_form_quadrature_variance(coeffs, branch)
        elif obs == "xi":
            values[obs] = kitagawa_ueda_xi(rho_a, ws.atom_spin, 2)
        elif obs == "xi_e2":
            values[obs] = sorensen_xi_e2(rho_a, ws.atom_spin, 2)
        elif obs == "ossi_full":
            for side, rho, spin in (
                ("atoms", rho_a, ws.atom_spin),
                ("photons", rho_p, ws.photon_spin),
            ):
                rep = ossi(rho, spin, 2)
                values[f"{side}_slack_a"] = rep.slack_a
                values[f"{side}_slack_b"] = rep.slack_b
                for ax in ("x", "y", "z"):
                    values[f"{side}_slack_c_{ax}"] = rep.slack_c[ax]
                    values[f"{side}_slack_d_{ax}"] = rep.slack_d[ax]
    return values


def _disagreement(primary: dict[str, float], other: dict[str, float]) -> float:
    worst = 0.0
    for key, val in primary.items():
        oth = other[key]
        if math.isnan(val) and math.isnan(oth):
            continue
        worst = max(worst, abs(val - oth))
    return worst


def _cells_for_zeta(config: SweepConfig, zeta: float, ws: _Workspace) -> list[SweepCell]:
    params = config.params.replace(zeta=zeta)
    h = build_hamiltonian(params, ws.space)
    block = extract_manifold_block(h, params.lam)
    times = config.time_grid.values()

    amps_cf = amps_or = None
    if config.method in (Method.CLOSED_FORM, Method.BOTH):
        amps_cf = evolve_closed_form_grid(config.branch, block, times)
    if config.method in (Method.NUMERIC_ORACLE, Method.BOTH):
        prop = SpectralPropagator(h, params.lam)
        full = prop.evolve_grid(initial_vector(config.branch, ws.space), times)
        amps_or = block.basis.conj().T @ full

    primary = amps_cf if amps_cf is not None else amps_or
    cells = []
    for it, t in enumerate(times):
        try:
            values = _cell_values(primary[:, it], t, config.branch, config, ws)
            disagreement = None
            if config.method is Method.BOTH:
                other = _cell_values(amps_or[:, it], t, config.branch, config, ws)
                disagreement = _disagreement(values, other)
        except Exception as exc:
            raise SweepError(f"cell zeta={zeta}, t={t}: {exc}") from exc
        cells.append(SweepCell(float(zeta), float(t), values, disagreement))
    return cells


def run_sweep(config: SweepConfig) -> list[SweepCell]:
    """One cell per grid point, in deterministic zeta-major order."""
    ws = _make_workspace()
    zetas = config.zeta_grid.values()
    if config.threads == 1:
        chunks = [_cells_for_zeta(config, z, ws) for z in zetas]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            futures = [pool.submit(_cells_for_zeta, config, z, ws) for z in zetas]
            chunks = [f.result() for f in futures]
    return [cell for chunk in chunks for cell in chunk]


def _fmt(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return "nan"
    return f"{value:.17g}"


def emit(
    cells: Sequence[SweepCell],
    columns: Sequence[str],
    output_format: str,
    path: str,
    include_disagreement: bool = False,
) -> None:
    """Write cells to disk; byte-stable for identical inputs."""
    if not cells:
        raise ValueError("no cells to emit")
    if output_format == "csv":
        header = ["zeta", "t"] + list(columns)
        if include_disagreement:
            header.append("method_disagreement")
        lines = [",".join(header)]
        for cell in cells:
            row = [_fmt(cell.zeta), _fmt(cell.t)]
            row.extend(_fmt(cell.values[c]) for c in columns)
            if include_disagreement:
                row.append(_fmt(cell.method_disagreement))
            lines.append(",".join(row))
        text = "\n".join(lines) + "\n"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    elif output_format == "json":
        records = []
        for cell in cells:
            rec: dict = {"zeta": cell.zeta, "t": cell.t}
            for c in columns:
                v = cell.values[c]
                rec[c] = None if math.isnan(v) else v
            if include_disagreement:
                d = cell.method_disagreement
                rec["method_disagreement"] = (
                    None if d is None or math.isnan(d) else d
                )
            records.append(rec)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(records, fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"unknown output format {output_format!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squeezetransfer",
        description=(
            "Sweep witness observables of the two-photon-exchange coupled-cavity "
            "model over a (zeta, t) grid and emit a figure-ready dataset."
        ),
    )
    parser.add_argument(
        "--branch",
        choices=["entangled", "separable"],
        default="entangled",
        help="initial state: entangled symmetric two-photon state, or all "
        "photons in cavity 1 (default: entangled)",
    )
    parser.add_argument("--zeta", type=float, help="single hopping value (units of lambda)")
    parser.add_argument(
        "--zeta-range", type=float, nargs=2, metavar=("MIN", "MAX"), default=[0.0, 2.0]
    )
    parser.add_argument(
        "--time-range", type=float, nargs=2, metavar=("MIN", "MAX"), default=[0.0, 20.0],
        help="time window in units of 1/lambda (default: 0 20)",
    )
    parser.add_argument(
        "--steps", type=int, nargs=2, metavar=("NZETA", "NTIME"), default=[201, 401]
    )
    parser.add_argument(
        "--observables",
        default=",".join(DEFAULT_OBSERVABLES),
        help=f"comma-separated subset of {','.join(OBSERVABLES)}",
    )
    parser.add_argument(
        "--method",
        choices=[m.value for m in Method],
        default="closed_form",
    )
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--output", default="sweep.csv")
    parser.add_argument(
        "--params-file",
        help="JSON file with flat keys among: omega, mu, eta, lambda, e_g, e_e",
    )
    parser.add_argument("--threads", type=int, default=1)
    return parser


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    params = ModelParams()
    if args.params_file:
        with open(args.params_file, "r", encoding="utf-8") as fh:
            params = ModelParams.from_mapping(json.load(fh))
    if args.zeta is not None:
        zeta_grid = GridSpec(args.zeta, args.zeta, 1)
    else:
        zeta_grid = GridSpec(args.zeta_range[0], args.zeta_range[1], args.steps[0])
    branch = (
        InitialState.ENTANGLED_SYMMETRIC
        if args.branch == "entangled"
        else InitialState.SEPARABLE_ONE_CAVITY
    )
    return SweepConfig(
        params=params,
        branch=branch,
        zeta_grid=zeta_grid,
        time_grid=GridSpec(args.time_range[0], args.time_range[1], args.steps[1]),
        observables=tuple(s.strip() for s in args.observables.split(",") if s.strip()),
        method=Method(args.method),
        output_path=args.output,
        output_format=args.format,
        threads=args.threads,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        cells = run_sweep(config)
        emit(
            cells,
            config.columns,
            config.output_format,
            config.output_path,
            include_disagreement=config.method is Method.BOTH,
        )
    except (ValueError, SweepError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.method is Method.BOTH:
        worst = max(c.method_disagreement for c in cells)
        print(f"wrote {len(cells)} cells to {config.output_path} "
              f"(max method disagreement {worst:.3e})")
    else:
        print(f"wrote {len(cells)} cells to {config.output_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
