"""Command-line sweep harness emitting reproducible CSV.

One subcommand per figure-class result: approximation fidelities, success
probabilities, teleportation and entanglement-swapping fidelity sweeps, loss
contours, and Wigner grids. Every output starts with a '#'-prefixed header
echoing the resolved configuration; identical headers produce byte-identical
data rows. Rows are computed fully before anything is written, so a failing
sweep writes nothing.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from . import __version__
from .catstates import approximation_fidelity_sweep
from .fock import coherent_state, fock_basis_state
from .catstates import cat_state, r_opt, r_opt_v, squeezed_single_photon, squeezed_vacuum
from .loss import LossConfig, run_lossy_entswap, run_lossy_teleportation
from .protocols import (
    INPUT_FAMILIES,
    InputSpec,
    ResourceSpec,
    run_entanglement_swap,
    run_teleportation,
)
from .wigner import PhaseGrid, wigner_grid

INPUT_KINDS = (
    "coherent",
    "odd-cat",
    "even-cat",
    "squeezed-single-photon",
    "squeezed-vacuum",
)
RESOURCE_CHOICES = (
    "ideal-odd-cat",
    "ideal-even-cat",
    "squeezed-single-photon",
    "squeezed-vacuum",
)
WIGNER_STATES = ("vacuum", "single-photon", "coherent", "odd-cat", "even-cat", "sq1", "sq0")


class UsageError(Exception):
    pass


def _parse_grid(text: str) -> np.ndarray:
    """Parse 'start:stop:step' into an inclusive grid."""
    try:
        start, stop, step = (float(tok) for tok in text.split(":"))
    except ValueError:
        raise UsageError(f"bad grid {text!r}, expected start:stop:step")
    if step <= 0 or stop < start:
        raise UsageError(f"bad grid {text!r}: need step > 0 and stop >= start")
    grid = np.arange(start, stop + step / 2, step)
    if grid.size == 0:
        raise UsageError(f"grid {text!r} is empty")
    return grid


def _fmt(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(path, header_pairs, columns, rows):
    lines = [f"# tool: cskit {__version__}"]
    for key, value in header_pairs:
        lines.append(f"# {key}: {value}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    env = os.environ.get("CSKIT_JOBS")
    return int(env) if env else 1


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _header(args, extra):
    pairs = [("subcommand", args.command)]
    pairs.extend(extra)
    pairs.append(("seed", args.seed))
    return pairs


# Row workers are module-level so a process pool can pickle them.

def _teleport_row(beta, input_kind, resource_kind, cutoff):
    alpha = beta / math.sqrt(2.0)
    summary = run_teleportation(
        InputSpec(input_kind, alpha), ResourceSpec(resource_kind, beta), cutoff
    )
    return (float(beta), summary.average_fidelity, summary.success_probability)


def _per_outcome_rows(beta, input_kind, resource_kind, cutoff, m_max):
    alpha = beta / math.sqrt(2.0)
    summary = run_teleportation(
        InputSpec(input_kind, alpha), ResourceSpec(resource_kind, beta), cutoff
    )
    return [
        (float(beta), m, summary.outcome(0, m).fidelity) for m in range(1, m_max + 1)
    ]


def _entswap_row(beta, phi_kind, resource_kind, cutoff):
    summary = run_entanglement_swap(
        InputSpec(phi_kind, beta), ResourceSpec(resource_kind, beta), cutoff
    )
    return (float(beta), summary.average_fidelity, summary.success_probability)


def _success_rows(beta, resource_kinds, cutoff):
    rows = []
    alpha = beta / math.sqrt(2.0)
    for name, (mu, nu) in INPUT_FAMILIES.items():
        for kind in resource_kinds:
            summary = run_teleportation(
                InputSpec("superposition", alpha, mu, nu), ResourceSpec(kind, beta), cutoff
            )
            rows.append((float(beta), name, kind, summary.success_probability))
    return rows


def _loss_cell(cell, protocol, input_kind, resource_kind, amplitude, cutoff):
    eta1, eta2 = cell
    loss = LossConfig(eta1, eta2)
    if protocol == "teleport":
        summary = run_lossy_teleportation(
            InputSpec(input_kind, amplitude), ResourceSpec(resource_kind, math.sqrt(2.0) * amplitude),
            loss, cutoff,
        )
    else:
        summary = run_lossy_entswap(
            InputSpec(input_kind, amplitude), ResourceSpec(resource_kind, amplitude),
            loss, beta=amplitude, cutoff=cutoff,
        )
    return (eta1, eta2, summary.average_fidelity)


def _cmd_approx(args):
    grid = _parse_grid(args.beta)
    rows = [
        (row.beta, row.r, row.fidelity)
        for row in approximation_fidelity_sweep(args.kind, grid, args.cutoff)
    ]
    extra = [("kind", args.kind), ("beta-grid", args.beta), ("cutoff", args.cutoff)]
    _emit(args.output, _header(args, extra), ["beta", "r_opt", "fidelity"], rows)


def _cmd_success_prob(args):
    grid = _parse_grid(args.beta)
    kinds = tuple(args.resource)
    chunks = _pmap(partial(_success_rows, resource_kinds=kinds, cutoff=args.cutoff), grid, _jobs(args))
    rows = [row for chunk in chunks for row in chunk]
    extra = [
        ("resource", " ".join(kinds)),
        ("beta-grid", args.beta),
        ("cutoff", args.cutoff),
    ]
    _emit(
        args.output,
        _header(args, extra),
        ["beta", "input_family", "resource_kind", "p_success"],
        rows,
    )


def _cmd_teleport(args):
    grid = _parse_grid(args.beta)
    extra = [
        ("input", args.input),
        ("resource", args.resource),
        ("beta-grid", args.beta),
        ("cutoff", args.cutoff),
    ]
    if args.per_outcome:
        chunks = _pmap(
            partial(
                _per_outcome_rows,
                input_kind=args.input,
                resource_kind=args.resource,
                cutoff=args.cutoff,
                m_max=args.m_max,
            ),
            grid,
            _jobs(args),
        )
        rows = [row for chunk in chunks for row in chunk]
        extra.append(("m-max", args.m_max))
        _emit(args.output, _header(args, extra), ["beta", "m", "fidelity"], rows)
        return
    rows = _pmap(
        partial(_teleport_row, input_kind=args.input, resource_kind=args.resource, cutoff=args.cutoff),
        grid,
        _jobs(args),
    )
    _emit(args.output, _header(args, extra), ["beta", "avg_fidelity", "p_success"], rows)


def _cmd_entswap(args):
    grid = _parse_grid(args.beta)
    rows = _pmap(
        partial(_entswap_row, phi_kind=args.phi, resource_kind=args.resource, cutoff=args.cutoff),
        grid,
        _jobs(args),
    )
    extra = [
        ("phi", args.phi),
        ("resource", args.resource),
        ("beta-grid", args.beta),
        ("cutoff", args.cutoff),
    ]
    _emit(args.output, _header(args, extra), ["beta", "avg_fidelity", "p_success"], rows)


def _cmd_loss(args):
    grid = _parse_grid(args.eta)
    cutoff = args.cutoff if args.cutoff is not None else (6 if args.protocol == "teleport" else 5)
    if args.diagonal:
        cells = [(float(e), float(e)) for e in grid]
    else:
        cells = [(float(e1), float(e2)) for e1 in grid for e2 in grid]
    rows = _pmap(
        partial(
            _loss_cell,
            protocol=args.protocol,
            input_kind=args.input,
            resource_kind=args.resource,
            amplitude=args.amplitude,
            cutoff=cutoff,
        ),
        cells,
        _jobs(args),
    )
    extra = [
        ("protocol", args.protocol),
        ("input", args.input),
        ("resource", args.resource),
        ("amplitude", args.amplitude),
        ("eta-grid", args.eta),
        ("diagonal", args.diagonal),
        ("cutoff", cutoff),
    ]
    _emit(args.output, _header(args, extra), ["eta1", "eta2", "fidelity"], rows)


def _wigner_state(args):
    cutoff = args.cutoff
    if args.state == "vacuum":
        return fock_basis_state(0, cutoff)
    if args.state == "single-photon":
        return fock_basis_state(1, cutoff)
    if args.state == "coherent":
        return coherent_state(args.beta, cutoff)
    if args.state == "odd-cat":
        return cat_state(args.beta, "odd", cutoff)
    if args.state == "even-cat":
        return cat_state(args.beta, "even", cutoff)
    if args.state == "sq1":
        r = args.r if args.r is not None else r_opt(args.beta)
        return squeezed_single_photon(r, cutoff)
    r = args.r if args.r is not None else r_opt_v(args.beta)
    return squeezed_vacuum(r, cutoff)


def _cmd_wigner(args):
    lo, hi = args.range
    if not lo < hi:
        raise UsageError("wigner range must satisfy lo < hi")
    grid = PhaseGrid((lo, hi), (lo, hi), args.steps)
    surface = wigner_grid(_wigner_state(args), grid)
    rows = [
        (float(x), float(p), float(surface[i, j]))
        for i, x in enumerate(grid.xs)
        for j, p in enumerate(grid.ps)
    ]
    extra = [
        ("state", args.state),
        ("beta", args.beta),
        ("r", args.r),
        ("range", f"{lo}:{hi}"),
        ("steps", args.steps),
        ("cutoff", args.cutoff),
    ]
    _emit(args.output, _header(args, extra), ["x", "p", "W"], rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cskit",
        description="Coherent-state teleportation sweeps in a truncated Fock space.",
    )
    parser.add_argument("--version", action="version", version=f"cskit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cutoff_default):
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (env CSKIT_JOBS)")
        p.add_argument("--seed", type=int, default=0, help="echoed into the header")
        if cutoff_default is not None:
            p.add_argument("--cutoff", type=int, default=cutoff_default)

    p = sub.add_parser("approx", help="cat-approximation fidelity vs beta")
    p.add_argument("--kind", choices=("even", "odd"), required=True)
    p.add_argument("--beta", default="0:1.5:0.01", help="grid start:stop:step")
    common(p, 15)
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("success-prob", help="teleportation success probability vs beta")
    p.add_argument("--beta", default="0.05:1.5:0.05")
    p.add_argument(
        "--resource", nargs="+", choices=RESOURCE_CHOICES,
        default=["ideal-odd-cat", "squeezed-single-photon"],
    )
    common(p, 15)
    p.set_defaults(func=_cmd_success_prob)

    p = sub.add_parser("teleport", help="average teleportation fidelity vs beta")
    p.add_argument("--input", choices=INPUT_KINDS, default="squeezed-single-photon")
    p.add_argument("--resource", choices=RESOURCE_CHOICES, default="squeezed-single-photon")
    p.add_argument("--beta", default="0.05:1.2:0.05")
    p.add_argument("--per-outcome", action="store_true", help="emit per-(n=0,m) fidelities")
    p.add_argument("--m-max", type=int, default=5)
    common(p, 15)
    p.set_defaults(func=_cmd_teleport)

    p = sub.add_parser("entswap", help="entanglement-swapping fidelity vs beta")
    p.add_argument("--phi", choices=INPUT_KINDS, default="squeezed-single-photon")
    p.add_argument("--resource", choices=RESOURCE_CHOICES, default="squeezed-single-photon")
    p.add_argument("--beta", default="0.05:1.2:0.05")
    common(p, 15)
    p.set_defaults(func=_cmd_entswap)

    p = sub.add_parser("loss", help="fidelity over an (eta1, eta2) loss grid")
    p.add_argument("--protocol", choices=("teleport", "entswap"), default="teleport")
    p.add_argument("--input", choices=INPUT_KINDS, default="squeezed-single-photon")
    p.add_argument("--resource", choices=RESOURCE_CHOICES, default="squeezed-single-photon")
    p.add_argument("--amplitude", type=float, default=0.5, help="alpha (teleport) or beta (entswap)")
    p.add_argument("--eta", default="0:1:0.05", help="grid start:stop:step for both etas")
    p.add_argument("--diagonal", action="store_true", help="only the eta1=eta2 slice")
    p.add_argument("--cutoff", type=int, default=None)
    common(p, None)
    p.set_defaults(func=_cmd_loss)

    p = sub.add_parser("wigner", help="Wigner function on a phase-space grid")
    p.add_argument("--state", choices=WIGNER_STATES, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--r", type=float, default=None, help="override squeezing for sq1/sq0")
    p.add_argument("--range", type=float, nargs=2, default=(-5.0, 5.0), metavar=("LO", "HI"))
    p.add_argument("--steps", type=int, default=101)
    common(p, 15)
    p.set_defaults(func=_cmd_wigner)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
