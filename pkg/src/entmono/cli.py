"""Command-line front end.

Subcommands: ``example`` (worked-value regressions), ``figure`` (CSV data for
the bound-comparison plots), ``verify`` (randomized campaigns) and ``report``
(ad-hoc bound inspection on a user-supplied state).

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import verify as ver
from .inequalities import MONOGAMY, POLYGAMY, make_ladder_spec, monogamy_report, polygamy_report
from .measures import (
    MeasureKind,
    SQRT2,
    concurrence_pure,
    entropy_pure,
    eof_f,
    negativity_pure,
    renyi_f,
    renyi_pure,
    tsallis_g,
    tsallis_pure,
)
from .qstate import PureState, SchmidtParams, schmidt_state
from .verify import CANONICAL_ORDER, make_config, run_campaign, tightness_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4

NORM_FIX_TOL = 1e-6

# Canonical worked configuration: l0 = l3 = 1/2, l2 = sqrt(2)/2.
_CANONICAL = SchmidtParams((0.5, 0.0, np.sqrt(2.0) / 2.0, 0.5, 0.0))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_text(path: Optional[str], text: str) -> int:
    if path is None or path == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# ---------------------------------------------------------------------------
# example
# ---------------------------------------------------------------------------

def _example_rows(n: int) -> Tuple[List[Tuple[str, float, float]], float]:
    psi = schmidt_state(_CANONICAL)
    from .inequalities import pair_closed_forms

    c = pair_closed_forms(psi, 0, list(CANONICAL_ORDER), "concurrence")
    s3, s2 = np.sqrt(3.0) / 2.0, np.sqrt(2.0) / 2.0
    if n == 1:
        rows = [
            ("C(A|BC)", concurrence_pure(psi, 0), s3),
            ("C(AB1) ", c[0], s2),
            ("C(AB2) ", c[1], 0.5),
        ]
        return rows, 1e-12
    if n == 2:
        rows = [
            ("E(A|BC)", entropy_pure(psi, 0), 0.811278),
            ("E(AB1) ", eof_f(c[0] * c[0]), 0.600876),
            ("E(AB2) ", eof_f(c[1] * c[1]), 0.354579),
        ]
        return rows, 1e-5
    if n == 3:
        rows = [
            ("N(A|BC)", negativity_pure(psi, 0), s3),
            ("N(AB1) ", c[0], s2),
            ("N(AB2) ", c[1], 0.5),
        ]
        return rows, 1e-5
    if n == 4:
        rows = [
            ("T2(A|BC)", tsallis_pure(2.0, psi, 0), 0.375),
            ("T2(AB1) ", tsallis_g(2.0, c[0] * c[0]), 0.25),
            ("T2(AB2) ", tsallis_g(2.0, c[1] * c[1]), 0.125),
        ]
        return rows, 1e-12
    rows = [
        ("E2(A|BC)", renyi_pure(2.0, psi, 0), 0.678072),
        ("E2(AB1) ", renyi_f(2.0, c[0]), 0.415037),
        ("E2(AB2) ", renyi_f(2.0, c[1]), 0.192645),
    ]
    return rows, 1e-5


def cmd_example(args) -> int:
    rows, tol = _example_rows(args.n)
    print(f"Worked configuration {args.n}: canonical state "
          f"l0 = l3 = 1/2, l2 = sqrt(2)/2 (B1 = qubit 2, B2 = qubit 1)")
    ok = True
    for label, computed, reference in rows:
        diff = abs(computed - reference)
        good = diff <= tol
        ok = ok and good
        print(
            f"  {label}  computed={_fmt(computed)}  reference={_fmt(reference)}  "
            f"|diff|={diff:.3e}  {'OK' if good else 'MISMATCH'}"
        )
    print(f"{'PASS' if ok else 'FAIL'} ({sum(1 for r in rows if abs(r[1]-r[2]) <= tol)}/{len(rows)} within {tol:g})")
    return EXIT_OK if ok else 1


# ---------------------------------------------------------------------------
# figure
# ---------------------------------------------------------------------------

_FIGURES = {
    1: dict(kind=lambda: MeasureKind.concurrence(), beta_min=2.0, ks=(0.6, 0.8), baseline="power_two"),
    2: dict(kind=lambda: MeasureKind.eof(), beta_min=SQRT2, ks=(0.5, 0.7, 0.9), baseline="power_two"),
    3: dict(kind=lambda: MeasureKind.cren(), beta_min=2.0, ks=(0.6, 0.8), baseline="power_two"),
    4: dict(kind=lambda: MeasureKind.tsallis(2.0), beta_min=1.0, ks=(0.5, 0.7, 0.9), baseline="power_two"),
    5: dict(kind=lambda: MeasureKind.renyi(2.0), beta_min=1.0, ks=(0.5, 0.7, 0.9), baseline="plain_sum"),
}


def figure_rows(n: int, beta_max: float = 6.0, beta_steps: int = 200):
    """(beta, k, our_rhs, baseline_rhs, lhs) rows for one comparison figure."""
    fig = _FIGURES[n]
    betas = np.linspace(fig["beta_min"], beta_max, beta_steps)
    rows = tightness_table(_CANONICAL, fig["kind"](), betas, fig["ks"])
    out = []
    for r in rows:
        base = r.power_two_rhs if fig["baseline"] == "power_two" else r.plain_sum_rhs
        out.append((r.beta, r.k, r.our_rhs, base, r.lhs))
    return out


def cmd_figure(args) -> int:
    if args.beta_steps < 2:
        print("error: --beta-steps must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    rows = figure_rows(args.n, args.beta_max, args.beta_steps)
    if args.format == "csv":
        lines = ["beta,k,our_rhs,baseline_rhs,lhs"]
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        return _write_text(args.out, "\n".join(lines) + "\n")
    header = f"{'beta':>22} {'k':>6} {'our_rhs':>24} {'baseline_rhs':>24} {'lhs':>24}"
    lines = [header]
    for beta, k, our, base, lhs in rows:
        lines.append(f"{beta:22.12g} {k:6.2f} {our:24.17g} {base:24.17g} {lhs:24.17g}")
    return _write_text(args.out, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _parse_float_list(text: str) -> Tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip() != "")


def cmd_verify(args) -> int:
    try:
        cfg = make_config(
            args.suite,
            trials=args.trials,
            seed=args.seed,
            n_qubits=args.n,
            beta_grid=_parse_float_list(args.beta) if args.beta else None,
            k_grid=_parse_float_list(args.k) if args.k else None,
            q_or_alpha=args.q if args.q is not None else args.alpha,
            tolerance=args.tol,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = run_campaign(cfg)
    print(result.summary())
    if args.out:
        code = _write_text(args.out, json.dumps(result.to_dict(), indent=2) + "\n")
        if code != EXIT_OK:
            return code
    return EXIT_OK if result.passed else 1


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

_KIND_MAP = {
    "concurrence": ("concurrence", MONOGAMY, None),
    "coa": ("concurrence_assist", POLYGAMY, None),
    "eof": ("eof", MONOGAMY, None),
    "eoa": ("eof_assist", POLYGAMY, None),
    "cren": ("cren", MONOGAMY, None),
    "crena": ("cren_assist", POLYGAMY, None),
    "tsallis": ("tsallis", MONOGAMY, 2.0),
    "teoa": ("tsallis", POLYGAMY, 1.5),
    "renyi": ("renyi", MONOGAMY, 2.0),
    "reoa": ("renyi", POLYGAMY, 1.0),
}


def _load_state(args) -> PureState:
    if args.schmidt:
        parts = [float(x) for x in args.schmidt.split(",")]
        if len(parts) not in (5, 6):
            raise ValueError("--schmidt takes 5 coefficients plus an optional phase")
        lam = np.asarray(parts[:5], dtype=float)
        phi = parts[5] if len(parts) == 6 else 0.0
        nrm = float(np.sqrt(np.sum(lam * lam)))
        if abs(nrm - 1.0) > NORM_FIX_TOL:
            raise _DataError(f"Schmidt coefficients have norm {nrm!r}, off by more than {NORM_FIX_TOL}")
        lam = lam / nrm
        return schmidt_state(SchmidtParams(tuple(lam), phi % (2 * np.pi)))
    amps = []
    try:
        with open(args.amplitudes) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                re_part, im_part = line.split()
                amps.append(complex(float(re_part), float(im_part)))
    except OSError as exc:
        raise _IOErrorExit(f"cannot read {args.amplitudes}: {exc}")
    vec = np.asarray(amps, dtype=np.complex128)
    n = int(round(np.log2(vec.size))) if vec.size else 0
    if vec.size < 2 or 2**n != vec.size:
        raise _DataError(f"amplitude file must hold a power-of-two count of lines, got {vec.size}")
    nrm = float(np.linalg.norm(vec))
    if abs(nrm - 1.0) > NORM_FIX_TOL:
        raise _DataError(f"amplitudes have norm {nrm!r}, off by more than {NORM_FIX_TOL}")
    return PureState(n, vec / nrm)


class _DataError(Exception):
    pass


class _IOErrorExit(Exception):
    pass


def _report_to_dict(rep) -> dict:
    d = dataclasses.asdict(rep)
    d["kind"] = {"tag": rep.kind.tag, "param": rep.kind.param}
    return d


def cmd_report(args) -> int:
    tag, direction, default_param = _KIND_MAP[args.kind]
    param = args.q if args.q is not None else args.alpha
    if tag in ("tsallis", "renyi"):
        kind = MeasureKind(tag, param if param is not None else default_param)
    else:
        kind = MeasureKind(tag)
    try:
        psi = _load_state(args)
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except _IOErrorExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    order: Optional[Sequence[int]] = None
    if args.order:
        order = tuple(int(x) for x in args.order.split(","))
    else:
        from .inequalities import pair_closed_forms

        base = "coa" if direction == POLYGAMY else "concurrence"
        rest = [q for q in range(psi.n_qubits) if q != 0]
        bases = dict(zip(rest, pair_closed_forms(psi, 0, rest, base)))
        found = ver.find_applicable_order(bases, kind, direction, args.k, args.beta)
        if found is not None:
            order = found[0]

    spec = make_ladder_spec(kind, direction, args.k, args.beta)
    build = monogamy_report if direction == MONOGAMY else polygamy_report
    rep = build(psi, 0, order, kind, spec)

    if args.format == "json-lines":
        print(json.dumps(_report_to_dict(rep)))
        return EXIT_OK
    print(f"kind={rep.kind.tag}" + (f"({rep.kind.param:g})" if rep.kind.param is not None else ""))
    print(f"direction={rep.direction} k={rep.k:g} beta={rep.beta:g}")
    print(f"focus={rep.focus} order={list(rep.order)} split={rep.m!r} applicable={rep.applicable}")
    print(f"lhs  = {_fmt(rep.lhs)}")
    for t in rep.terms:
        print(
            f"term {t.index}: value={_fmt(t.value)} coefficient={_fmt(t.coefficient)} "
            f"contribution={_fmt(t.contribution)}"
        )
    print(f"rhs  = {_fmt(rep.rhs)}")
    print(f"slack = {_fmt(rep.slack)}  ({'lhs - rhs' if rep.direction == MONOGAMY else 'rhs - lhs'})")
    for c in rep.conditions:
        rel = ">=" if c.kind == "prefix" else "<="
        print(
            f"condition {c.index} [{c.kind}]: {_fmt(c.lhs)} {rel} {_fmt(c.rhs)} "
            f"-> {'ok' if c.satisfied else 'violated'}"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entmono",
        description="Multiqubit entanglement measures and tightened monogamy/polygamy bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ex = sub.add_parser("example", help="reproduce a worked configuration (1-5)")
    p_ex.add_argument("n", type=int, choices=range(1, 6))
    p_ex.set_defaults(func=cmd_example)

    p_fig = sub.add_parser("figure", help="emit comparison-figure data (1-5)")
    p_fig.add_argument("n", type=int, choices=range(1, 6))
    p_fig.add_argument("--out", default=None, help="output path (default: stdout)")
    p_fig.add_argument("--format", choices=("csv", "text"), default="csv")
    p_fig.add_argument("--beta-max", type=float, default=6.0, dest="beta_max")
    p_fig.add_argument("--beta-steps", type=int, default=200, dest="beta_steps")
    p_fig.set_defaults(func=cmd_figure)

    p_ver = sub.add_parser("verify", help="run a verification campaign")
    p_ver.add_argument("suite", choices=ver.SUITES)
    p_ver.add_argument("--trials", type=int, default=None)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--n", type=int, default=None, help="number of qubits (3-6)")
    p_ver.add_argument("--k", default=None, help="comma-separated k grid, each in (0, 1]")
    p_ver.add_argument("--beta", default=None, help="comma-separated beta grid")
    p_ver.add_argument("--q", type=float, default=None)
    p_ver.add_argument("--alpha", type=float, default=None)
    p_ver.add_argument("--tol", type=float, default=None)
    p_ver.add_argument("--out", default=None, help="also write the result as JSON")
    p_ver.set_defaults(func=cmd_verify)

    p_rep = sub.add_parser("report", help="evaluate one bound on a given state")
    src = p_rep.add_mutually_exclusive_group(required=True)
    src.add_argument("--schmidt", default=None, help="L0,L1,L2,L3,L4[,PHI]")
    src.add_argument("--amplitudes", default=None, help="file with one 're im' pair per line")
    p_rep.add_argument("--kind", required=True, choices=sorted(_KIND_MAP))
    p_rep.add_argument("--k", type=float, required=True)
    p_rep.add_argument("--beta", type=float, required=True)
    p_rep.add_argument("--q", type=float, default=None)
    p_rep.add_argument("--alpha", type=float, default=None)
    p_rep.add_argument("--order", default=None, help="comma-separated remainder qubits")
    p_rep.add_argument("--format", choices=("text", "json-lines"), default="text")
    p_rep.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.trials is not None and args.trials < 1:
        parser.error("--trials must be >= 1")
    if args.command == "report" and not (0.0 < args.k <= 1.0):
        parser.error("--k must lie in (0, 1]")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
