"""Command-line front end.

Exit codes: 0 ok, 1 quad-check failure, 2 usage/invalid configuration, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import approx
from .ball_basis import block_pairs, eval_ball_basis_grad
from .disk_basis import eval_disk_basis_grad
from .functions import BALL_FUNCTIONS, DISK_FUNCTIONS, get_function
from .quadrature import exactness_report, make_rule, monomial_integral, monomials

COMMANDS = ("fit", "sweep", "basis-dump", "quad-dump", "quad-check")
DEFAULT_GRID = {"disk": 101, "ball": 41}
EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_IO = 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    domain: str = "disk"
    degree: int | None = None
    quad: str | None = None
    function: str | None = None
    sweep: tuple[int, int] | None = None
    grid: int | None = None
    out: Path = Path(".")
    point: tuple[float, ...] | None = None
    poly_degree: int | None = None
    seed: int = 0

    def quad_for(self, n: int) -> int:
        """Resolve ``--quad`` (absolute ``Q`` or relative ``n+K``) for degree n."""
        if self.quad is None:
            return approx.min_quad(self.domain, n)
        m = re.fullmatch(r"\s*n\s*(?:\+\s*(\d+))?\s*", self.quad)
        if m:
            return n + int(m.group(1) or 0)
        return int(self.quad)

    def degrees(self) -> list[int]:
        if self.sweep is not None:
            return list(range(self.sweep[0], self.sweep[1] + 1))
        return [self.degree]

    @property
    def grid_size(self) -> int:
        return self.grid if self.grid is not None else DEFAULT_GRID[self.domain]

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.domain not in ("disk", "ball"):
            raise ConfigError(f"unknown domain {self.domain!r}")
        if self.quad is not None and not re.fullmatch(r"\s*(\d+|n\s*(\+\s*\d+)?)\s*", self.quad):
            raise ConfigError(f"--quad must be an integer or of the form n+K, got {self.quad!r}")
        if self.grid is not None and self.grid < 2:
            raise ConfigError("--grid must be at least 2")
        if self.command in ("quad-dump", "quad-check"):
            if self.quad is None or not self.quad.strip().isdigit():
                raise ConfigError(f"{self.command} needs an integer --quad")
            q = int(self.quad)
            if self.domain == "ball" and q < 1:
                raise ConfigError("ball rules need --quad >= 1")
            return
        if self.command == "sweep":
            if self.sweep is None:
                raise ConfigError("sweep needs --sweep A:B")
            if not 0 <= self.sweep[0] <= self.sweep[1]:
                raise ConfigError("--sweep needs 0 <= A <= B")
        elif self.degree is None or self.degree < 0:
            raise ConfigError(f"{self.command} needs a non-negative --degree")
        if self.command == "basis-dump":
            dim = 2 if self.domain == "disk" else 3
            if self.point is None or len(self.point) != dim:
                raise ConfigError(f"basis-dump needs --point with {dim} coordinates")
            if sum(c * c for c in self.point) > 1.0 + 1e-12:
                raise ConfigError("--point lies outside the domain")
            return
        known = DISK_FUNCTIONS if self.domain == "disk" else BALL_FUNCTIONS
        if self.function not in known:
            raise ConfigError(f"--function must be one of {', '.join(known)} for the {self.domain}")
        for n in self.degrees():
            q = self.quad_for(n)
            if q < approx.min_quad(self.domain, n):
                need = "q >= n" if self.domain == "disk" else "q >= n+1"
                raise ConfigError(f"degree {n} with q={q} violates {need} on the {self.domain}")


def _parse_sweep(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+):(\d+)", text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _parse_point(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diskball", description=(
        "Orthonormal polynomial bases, product quadrature and discrete least-squares "
        "approximation on the unit disk and unit ball."))
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--domain", choices=("disk", "ball"), default="disk")
    p.add_argument("--degree", type=int, help="polynomial degree n")
    p.add_argument("--quad", help="quadrature parameter q, or n+K relative to the degree")
    p.add_argument("--function", help="built-in function id")
    p.add_argument("--sweep", type=_parse_sweep, metavar="A:B", help="degree range for sweep")
    p.add_argument("--grid", type=int, metavar="M",
                   help="error lattice resolution per axis (default 101 disk, 41 ball)")
    p.add_argument("--out", type=Path, default=Path("."), metavar="DIR")
    p.add_argument("--point", type=_parse_point, help="x,y[,z] for basis-dump")
    p.add_argument("--poly-degree", type=int,
                   help="degree of the poly-reproduce functions (default: --degree, else 5)")
    p.add_argument("--seed", type=int, default=0, help="seed for poly-reproduce functions")
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(command=args.command, domain=args.domain, degree=args.degree, quad=args.quad,
                     function=args.function, sweep=args.sweep, grid=args.grid, out=args.out,
                     point=args.point, poly_degree=args.poly_degree, seed=args.seed)


def _function(cfg: RunConfig):
    pdeg = cfg.poly_degree if cfg.poly_degree is not None else (
        cfg.degree if cfg.degree is not None else 5)
    return get_function(cfg.domain, cfg.function, poly_degree=pdeg, seed=cfg.seed)


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(r)


def _coord_names(domain):
    return ["x", "y"] if domain == "disk" else ["x", "y", "z"]


def _eval_f(f, pts):
    vals = np.asarray(f(*(pts[:, i] for i in range(pts.shape[1]))), dtype=float)
    return np.broadcast_to(vals, (len(pts),))


def cmd_fit(cfg: RunConfig) -> float:
    """Fit, write coeffs.csv and error_grid.csv, return the max error."""
    f = _function(cfg)
    e = approx.project(cfg.domain, f, cfg.degree, cfg.quad_for(cfg.degree))
    pts = approx.lattice(cfg.domain, cfg.grid_size)
    fv = _eval_f(f, pts)
    av = approx.eval_expansion_many(e, pts)
    err = fv - av
    cfg.out.mkdir(parents=True, exist_ok=True)
    approx.write_coeffs(e, cfg.out / "coeffs.csv")
    _write_csv(cfg.out / "error_grid.csv", _coord_names(cfg.domain) + ["f", "approx", "error"],
               ([*map(_fmt, p), _fmt(a), _fmt(b), _fmt(c)] for p, a, b, c in zip(pts, fv, av, err)))
    max_err = float(np.max(np.abs(err)))
    print(f"fit domain={cfg.domain} function={cfg.function} n={cfg.degree} "
          f"q={e.quad_q} max_error={max_err:.6e}")
    return max_err


def sweep_errors(cfg: RunConfig) -> list[tuple[int, int, float]]:
    """(n, q, max_error) per degree; f is sampled once per distinct q."""
    f = _function(cfg)
    pts = approx.lattice(cfg.domain, cfg.grid_size)
    fv = _eval_f(f, pts)
    degrees = cfg.degrees()
    by_q: dict[int, list[int]] = {}
    for n in degrees:
        by_q.setdefault(cfg.quad_for(n), []).append(n)
    errs = {}
    for q, ns in by_q.items():
        top = max(ns)
        rule = make_rule(cfg.domain, q)
        samples = _eval_f(f, rule.points)
        full = approx.project_samples(cfg.domain, rule, samples, top)
        V = approx.basis_matrix(cfg.domain, pts, top)
        for n in ns:
            size = approx.basis_size(cfg.domain, n)
            approx_vals = full.coeffs[:size] @ V[:size]
            errs[n] = (q, float(np.max(np.abs(fv - approx_vals))))
    return [(n, *errs[n]) for n in degrees]


def cmd_sweep(cfg: RunConfig):
    rows = sweep_errors(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    _write_csv(cfg.out / "convergence.csv", ["n", "q", "max_error"],
               ([n, q, _fmt(e)] for n, q, e in rows))
    for n, q, e in rows:
        print(f"n={n:3d} q={q:3d} max_error={e:.6e}")
    return rows


def cmd_basis_dump(cfg: RunConfig):
    """Write basis.csv with every basis value and gradient at one point."""
    n = cfg.degree
    if cfg.domain == "disk":
        bv = eval_disk_basis_grad(approx.disk_table(n), cfg.point, n)
        idx = [(m, k) for m in range(n + 1) for k in range(m + 1)]
        header = ["degree", "k", "value", "grad_x", "grad_y"]
        grads = (bv.grad_x, bv.grad_y)
    else:
        bv = eval_ball_basis_grad(approx.ball_table(n), cfg.point, n)
        idx = [(m, k, j) for m in range(n + 1) for j, k in block_pairs(m)]
        header = ["degree", "k", "j", "value", "grad_x", "grad_y", "grad_z"]
        grads = (bv.grad_x, bv.grad_y, bv.grad_z)
    cfg.out.mkdir(parents=True, exist_ok=True)
    _write_csv(cfg.out / "basis.csv", header,
               ([*ix, _fmt(bv.values[i]), *(_fmt(g[i]) for g in grads)]
                for i, ix in enumerate(idx)))
    print(f"basis-dump domain={cfg.domain} n={n} values={len(idx)}")
    return bv


def cmd_quad_dump(cfg: RunConfig):
    rule = make_rule(cfg.domain, int(cfg.quad))
    cfg.out.mkdir(parents=True, exist_ok=True)
    _write_csv(cfg.out / "quad.csv", _coord_names(cfg.domain) + ["w"],
               ([*map(_fmt, p), _fmt(w)] for p, w in zip(rule.points, rule.weights)))
    print(f"quad-dump domain={cfg.domain} q={rule.q} points={len(rule)} "
          f"exactness_degree={rule.exactness_degree}")
    return rule


def cmd_quad_check(cfg: RunConfig) -> bool:
    """Run the monomial exactness suite for one rule and print one line per degree."""
    rule = make_rule(cfg.domain, int(cfg.quad))
    report = exactness_report(rule)
    measure_ok = abs(rule.weights.sum() - monomial_integral(cfg.domain, (0,) * rule.dim)) \
        <= 1e-12 * rule.weights.sum()
    positive = bool(np.all(rule.weights > 0))
    for deg, err, ok in report:
        count = sum(1 for _ in monomials(rule.dim, deg))
        print(f"degree {deg:2d}: {count:3d} monomials, max error {err:.3e} "
              f"{'PASS' if ok else 'FAIL'}")
    print(f"weights positive: {'PASS' if positive else 'FAIL'}")
    print(f"weights sum to measure: {'PASS' if measure_ok else 'FAIL'}")
    passed = all(ok for _, _, ok in report) and positive and measure_ok
    print(f"quad-check domain={cfg.domain} q={rule.q} exactness_degree={rule.exactness_degree} "
          f"{'PASS' if passed else 'FAIL'}")
    return passed


def run(cfg: RunConfig) -> int:
    cfg.validate()
    if cfg.command == "fit":
        cmd_fit(cfg)
    elif cfg.command == "sweep":
        cmd_sweep(cfg)
    elif cfg.command == "basis-dump":
        cmd_basis_dump(cfg)
    elif cfg.command == "quad-dump":
        cmd_quad_dump(cfg)
    elif not cmd_quad_check(cfg):
        return EXIT_CHECK_FAILED
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(config_from_args(args))
    except ConfigError as exc:
        print(f"diskball: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"diskball: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
