"""Randomized verification campaigns and deterministic grid checks.

Each suite turns one family of claims into a reproducible pass/fail run with
explicit seeds, counts and tolerances. Campaigns never assert slack on cases
whose conditions fail; they tally how many sampled cases were applicable,
and a suite that proved nothing (``applicable == 0``) is a failure.

Determinism: per-trial generators derive from ``(seed, trial index)``, never
from execution order, so trials could run in parallel and merge by reduction
without changing any result.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import inequalities as ineq
from . import measures as meas
from .inequalities import (
    ALL,
    MONOGAMY,
    POLYGAMY,
    LadderSpec,
    MonogamyReport,
    condition_partition,
    make_ladder_spec,
    monogamy_report,
    pair_closed_forms,
    polygamy_report,
    prior_bound,
)
from .measures import SQRT2, MeasureKind
from .qstate import PureState, SchmidtParams, haar_from_rng, schmidt_state

SUITES = (
    "lemma1",
    "ckw",
    "lemma2",
    "ladder-concurrence",
    "ladder-eof",
    "ladder-negativity",
    "ladder-tsallis",
    "ladder-renyi",
    "polygamy-coa",
    "polygamy-eoa",
    "polygamy-teoa",
    "polygamy-reoa",
    "superadditivity",
    "hierarchy",
)

_LADDER_KINDS = {
    "ladder-concurrence": ("concurrence", None),
    "ladder-eof": ("eof", None),
    "ladder-negativity": ("cren", None),
    "ladder-tsallis": ("tsallis", 2.0),
    "ladder-renyi": ("renyi", 2.0),
}
_POLYGAMY_KINDS = {
    "polygamy-coa": ("concurrence_assist", None),
    "polygamy-eoa": ("eof_assist", None),
    "polygamy-teoa": ("tsallis", 1.5),
    "polygamy-reoa": ("renyi", 1.0),
}

_SUITE_DEFAULTS = {
    "lemma1": dict(trials=100_000, n_qubits=3, beta_grid=(1.0,), k_grid=(1.0,), tolerance=1e-12),
    "ckw": dict(trials=10_000, n_qubits=3, beta_grid=(2.0,), k_grid=(1.0,)),
    "lemma2": dict(trials=10_000, n_qubits=3, beta_grid=(2.0, 2.5, 3.0, 4.0)),
    "ladder-concurrence": dict(trials=1_000, n_qubits=4, beta_grid=(2.0, 3.0, 4.0)),
    "ladder-eof": dict(trials=1_000, n_qubits=4, beta_grid=(SQRT2, 2.0, 3.0)),
    "ladder-negativity": dict(trials=1_000, n_qubits=4, beta_grid=(2.0, 3.0)),
    "ladder-tsallis": dict(trials=1_000, n_qubits=4, beta_grid=(1.0, 2.0), q_or_alpha=2.0),
    "ladder-renyi": dict(trials=1_000, n_qubits=4, beta_grid=(1.0, 2.0), q_or_alpha=2.0),
    "polygamy-coa": dict(trials=1_000, n_qubits=3, beta_grid=(0.5, 1.0, 2.0)),
    "polygamy-eoa": dict(trials=1_000, n_qubits=3, beta_grid=(0.25, 0.5, 1.0)),
    "polygamy-teoa": dict(trials=1_000, n_qubits=3, beta_grid=(0.25, 0.5, 1.0), q_or_alpha=1.5),
    "polygamy-reoa": dict(trials=1_000, n_qubits=3, beta_grid=(0.25, 0.5, 1.0), q_or_alpha=1.0),
    "superadditivity": dict(trials=1, n_qubits=3, beta_grid=(1.0,), k_grid=(1.0,)),
    "hierarchy": dict(trials=200, n_qubits=4, beta_grid=(2.5, 3.0, 4.0), k_grid=(0.2, 0.6, 1.0)),
}

_DERIVED_K_MARGIN = 0.01


@dataclass(frozen=True)
class CampaignConfig:
    suite: str
    trials: int = 1_000
    seed: int = 0
    n_qubits: int = 3
    beta_grid: Tuple[float, ...] = (2.0,)
    k_grid: Tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
    q_or_alpha: Optional[float] = None
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not (3 <= self.n_qubits <= 6):
            raise ValueError(f"n_qubits must be in [3, 6], got {self.n_qubits}")
        if len(self.beta_grid) == 0 or len(self.k_grid) == 0:
            raise ValueError("beta_grid and k_grid must be non-empty")
        if any(not (0.0 < k <= 1.0) for k in self.k_grid):
            raise ValueError(f"k grid values must lie in (0, 1], got {self.k_grid}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "beta_grid", tuple(float(b) for b in self.beta_grid))
        object.__setattr__(self, "k_grid", tuple(float(k) for k in self.k_grid))


@dataclass(frozen=True)
class CampaignResult:
    config: CampaignConfig
    checked: int
    applicable: int
    violations: int
    worst_slack: Optional[float]
    worst_case: Optional[dict]

    def __post_init__(self):
        if not (self.violations <= self.applicable <= self.checked):
            raise ValueError("tallies must satisfy violations <= applicable <= checked")

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.applicable > 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def summary(self) -> str:
        lines = [
            f"suite={self.config.suite} trials={self.config.trials} seed={self.config.seed} "
            f"n={self.config.n_qubits}",
            f"checked={self.checked} applicable={self.applicable} violations={self.violations}",
        ]
        if self.worst_slack is not None:
            lines.append(f"worst_slack={self.worst_slack:.6e}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def make_config(suite: str, **overrides) -> CampaignConfig:
    """CampaignConfig with per-suite defaults; keyword overrides win."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    kw = dict(_SUITE_DEFAULTS.get(suite, {}))
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return CampaignConfig(suite=suite, **kw)


class _Tally:
    """Running counts plus the most negative slack seen and its provenance."""

    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self.checked = 0
        self.applicable = 0
        self.violations = 0
        self.worst_slack: Optional[float] = None
        self.worst_case: Optional[dict] = None

    def record(self, slack: float, case: dict) -> None:
        self.applicable += 1
        if self.worst_slack is None or slack < self.worst_slack:
            self.worst_slack = slack
            self.worst_case = case
        if slack < -self.tolerance:
            self.violations += 1

    def result(self, config: CampaignConfig) -> CampaignResult:
        return CampaignResult(
            config, self.checked, self.applicable, self.violations,
            self.worst_slack, self.worst_case,
        )


def _serialize_state(psi: PureState) -> list:
    return [[float(a.real), float(a.imag)] for a in psi.amplitudes]


def _powered_lists(
    bases: List[float], kind: MeasureKind, fam
) -> Tuple[List[float], List[float]]:
    """Condition-scale (value, tail) lists for one remainder ordering."""
    terms = [fam.term(kind, b) for b in bases]
    ssq = 0.0
    tails = []
    for i in range(len(bases) - 1, 0, -1):
        ssq += bases[i] * bases[i]
        tails.append(fam.tail(kind, ssq))
    tails.reverse()
    return [t**fam.cond_exp for t in terms], [t**fam.cond_exp for t in tails]


def find_applicable_order(
    base_values: Dict[int, float],
    kind: MeasureKind,
    direction: str,
    k: float,
    beta: float,
) -> Optional[Tuple[Tuple[int, ...], Union[int, str]]]:
    """First remainder ordering whose condition partition exists, else None.

    ``base_values`` maps each non-focus qubit to its two-qubit closed-form
    scalar (concurrence or assisted concurrence, per the family).
    """
    fam = ineq._family_for(kind, direction, beta)
    for order in itertools.permutations(sorted(base_values)):
        vp, tp = _powered_lists([base_values[q] for q in order], kind, fam)
        part = condition_partition(vp, tp, k)
        if part.m is not None:
            return order, part.m
    return None


def _derived_k(base_values: Dict[int, float], kind: MeasureKind, direction: str, beta: float) -> Optional[float]:
    """Smallest k making some ordering fully conditioned, plus a margin."""
    fam = ineq._family_for(kind, direction, beta)
    best = None
    for order in itertools.permutations(sorted(base_values)):
        vp, tp = _powered_lists([base_values[q] for q in order], kind, fam)
        need = 0.0
        for v, t in zip(vp, tp):
            if t == 0.0:
                continue
            if v == 0.0:
                need = np.inf
                break
            need = max(need, t / v)
        if need <= 1.0 and (best is None or need < best):
            best = need
    if best is None:
        return None
    return min(1.0, best + _DERIVED_K_MARGIN)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _suite_lemma1(cfg: CampaignConfig) -> CampaignResult:
    """Scalar bound pair: relative slack of both directions on random samples."""
    rng = np.random.default_rng(cfg.seed)
    tally = _Tally(cfg.tolerance)
    k = rng.uniform(1e-6, 1.0, cfg.trials)
    t = rng.uniform(0.0, k)
    m = rng.uniform(1.0, 10.0, cfg.trials)
    n = rng.uniform(0.0, 1.0, cfg.trials)

    lo_slack = (1.0 + t) ** m - (1.0 + ((1.0 + k) ** m - 1.0) / k**m * t**m)
    lo_slack /= np.maximum(1.0, (1.0 + t) ** m)
    up_slack = (1.0 + ((1.0 + k) ** n - 1.0) / k**n * t**n) - (1.0 + t) ** n
    up_slack /= np.maximum(1.0, (1.0 + t) ** n)
    tally.checked = 2 * cfg.trials
    for i in range(cfg.trials):
        tally.record(
            float(lo_slack[i]),
            {"side": "lower", "t": float(t[i]), "k": float(k[i]), "m": float(m[i])},
        )
        tally.record(
            float(up_slack[i]),
            {"side": "upper", "t": float(t[i]), "k": float(k[i]), "n": float(n[i])},
        )
    return tally.result(cfg)


def _suite_ckw(cfg: CampaignConfig) -> CampaignResult:
    tally = _Tally(cfg.tolerance)
    for tr in range(cfg.trials):
        psi = haar_from_rng(cfg.n_qubits, np.random.default_rng([cfg.seed, tr]))
        rest = list(range(1, cfg.n_qubits))
        c_global = meas.concurrence_pure(psi, 0)
        pair_sq = sum(c * c for c in pair_closed_forms(psi, 0, rest, "concurrence"))
        tally.checked += 1
        tally.record(
            c_global * c_global - pair_sq,
            {"amplitudes": _serialize_state(psi), "trial": tr},
        )
    return tally.result(cfg)


def _k_candidates(cfg: CampaignConfig, bases: Dict[int, float], kind: MeasureKind,
                  direction: str, beta: float) -> List[float]:
    ks = list(cfg.k_grid)
    der = _derived_k(bases, kind, direction, beta)
    if der is not None and der not in ks:
        ks.append(der)
    return ks


def _ladder_suite(cfg: CampaignConfig, kind: MeasureKind, direction: str) -> CampaignResult:
    tally = _Tally(cfg.tolerance)
    base = "coa" if direction == POLYGAMY else "concurrence"
    for tr in range(cfg.trials):
        psi = haar_from_rng(cfg.n_qubits, np.random.default_rng([cfg.seed, tr]))
        rest = list(range(1, cfg.n_qubits))
        bases = dict(zip(rest, pair_closed_forms(psi, 0, rest, base)))
        for beta in cfg.beta_grid:
            for k in _k_candidates(cfg, bases, kind, direction, beta):
                tally.checked += 1
                found = find_applicable_order(bases, kind, direction, k, beta)
                if found is None:
                    continue
                order, _ = found
                spec = make_ladder_spec(kind, direction, k, beta)
                build = monogamy_report if direction == MONOGAMY else polygamy_report
                rep = build(psi, 0, order, kind, spec)
                tally.record(
                    rep.slack,
                    {
                        "amplitudes": _serialize_state(psi),
                        "trial": tr,
                        "kind": kind.tag,
                        "param": kind.param,
                        "k": k,
                        "beta": beta,
                        "order": list(order),
                        "m": rep.m,
                    },
                )
    return tally.result(cfg)


_HIERARCHY_KINDS = (
    (MeasureKind.concurrence(), 2.0),
    (MeasureKind.eof(), SQRT2),
    (MeasureKind.cren(), 2.0),
)


def _hierarchy_kinds(cfg: CampaignConfig):
    q = cfg.q_or_alpha or 2.0
    return _HIERARCHY_KINDS + (
        (MeasureKind.tsallis(q), 1.0),
        (MeasureKind.renyi(max(q, 2.0)), 1.0),
    )


def _suite_hierarchy(cfg: CampaignConfig) -> CampaignResult:
    """Ladder tightness: rhs(k) non-increasing, dominating the prior bounds.

    For every applicable case with beta strictly above the family's
    exponent-1 point, the k-ladder must dominate the 2^p - 1 ladder, which
    dominates the p ladder, which dominates the plain sum, with equality of
    the first pair at k = 1.
    """
    tally = _Tally(cfg.tolerance)
    ks = sorted(cfg.k_grid)
    eq_tol = 1e-12
    for tr in range(cfg.trials):
        psi = haar_from_rng(cfg.n_qubits, np.random.default_rng([cfg.seed, tr]))
        rest = list(range(1, cfg.n_qubits))
        bases = dict(zip(rest, pair_closed_forms(psi, 0, rest, "concurrence")))
        for kind, threshold in _hierarchy_kinds(cfg):
            for beta in cfg.beta_grid:
                if beta <= threshold:
                    continue
                tally.checked += 1
                found = find_applicable_order(bases, kind, MONOGAMY, ks[0], beta)
                if found is None:
                    continue
                order, msplit = found
                values = [
                    ineq._scalar_map(kind, bases[q]) for q in order
                ]
                spec0 = make_ladder_spec(kind, MONOGAMY, ks[0], beta, m=msplit)
                p2 = prior_bound(values, beta, "power_two", msplit, spec0.power)
                hb = prior_bound(values, beta, "half_beta", msplit, spec0.power)
                ps = prior_bound(values, beta, "plain_sum", msplit, spec0.power)
                rhs = []
                for k in ks:
                    coefs = ineq.ladder_coefficients(
                        LadderSpec(k, beta, spec0.power, msplit, MONOGAMY), len(values)
                    )
                    rhs.append(sum(c * v**beta for c, v in zip(coefs, values)))
                margin = min(
                    min(rhs[i] - rhs[i + 1] for i in range(len(ks) - 1)) if len(ks) > 1 else 0.0,
                    min(r - p2 for r in rhs),
                    p2 - hb,
                    hb - ps,
                )
                if 1.0 in ks:
                    margin = min(margin, eq_tol - abs(rhs[ks.index(1.0)] - p2))
                tally.record(
                    margin,
                    {
                        "amplitudes": _serialize_state(psi),
                        "trial": tr,
                        "kind": kind.tag,
                        "param": kind.param,
                        "beta": beta,
                        "order": list(order),
                        "m": msplit,
                    },
                )
    return tally.result(cfg)


def _suite_superadditivity(cfg: CampaignConfig) -> CampaignResult:
    """Grid checks of the scalar-function composition laws (step 0.01)."""
    tally = _Tally(cfg.tolerance)
    xs = np.arange(0.0, 1.0 + 1e-12, 0.01)
    x, y = np.meshgrid(xs, xs)
    mask = x**2 + y**2 <= 1.0 + 1e-12
    u, w = (x**2)[mask], (y**2)[mask]
    xm, ym = x[mask], y[mask]

    def sweep(name, margins):
        tally.checked += margins.size
        tally.applicable += margins.size
        tally.violations += int(np.sum(margins < -tally.tolerance))
        i = int(np.argmin(margins))
        if tally.worst_slack is None or margins[i] < tally.worst_slack:
            tally.worst_slack = float(margins[i])
            tally.worst_case = {"relation": name, "x": float(xm[i]), "y": float(ym[i])}

    d = meas.eof_f(u + w) ** SQRT2 - (meas.eof_f(u) ** SQRT2 + meas.eof_f(w) ** SQRT2)
    sweep("eof_f_sqrt2_superadditive", d)
    for q in (2.0, 2.5, 3.0):
        d = meas.tsallis_g(q, u + w) - (meas.tsallis_g(q, u) + meas.tsallis_g(q, w))
        sweep(f"tsallis_g_{q}_superadditive", d)
    for q in (1.5, 3.5):
        d = (meas.tsallis_g(q, xm) + meas.tsallis_g(q, ym)) - meas.tsallis_g(q, np.sqrt(u + w))
        sweep(f"tsallis_g_{q}_subadditive", d)
    return tally.result(cfg)


def run_campaign(cfg: CampaignConfig) -> CampaignResult:
    """Execute one suite; deterministic for a fixed config (seed included)."""
    if cfg.suite == "lemma1":
        return _suite_lemma1(cfg)
    if cfg.suite == "ckw":
        return _suite_ckw(cfg)
    if cfg.suite == "lemma2":
        lemma2 = CampaignConfig(
            suite=cfg.suite, trials=cfg.trials, seed=cfg.seed, n_qubits=3,
            beta_grid=cfg.beta_grid, k_grid=cfg.k_grid,
            q_or_alpha=cfg.q_or_alpha, tolerance=cfg.tolerance,
        )
        return _ladder_suite(lemma2, MeasureKind.concurrence(), MONOGAMY)
    if cfg.suite in _LADDER_KINDS:
        tag, default_param = _LADDER_KINDS[cfg.suite]
        param = cfg.q_or_alpha if cfg.q_or_alpha is not None else default_param
        kind = MeasureKind(tag, param)
        return _ladder_suite(cfg, kind, MONOGAMY)
    if cfg.suite in _POLYGAMY_KINDS:
        tag, default_param = _POLYGAMY_KINDS[cfg.suite]
        param = cfg.q_or_alpha if cfg.q_or_alpha is not None else default_param
        kind = MeasureKind(tag, param)
        return _ladder_suite(cfg, kind, POLYGAMY)
    if cfg.suite == "superadditivity":
        return _suite_superadditivity(cfg)
    if cfg.suite == "hierarchy":
        return _suite_hierarchy(cfg)
    raise ValueError(f"unknown suite {cfg.suite!r}")


# ---------------------------------------------------------------------------
# tightness tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TightnessRow:
    beta: float
    k: float
    our_rhs: float
    power_two_rhs: float
    half_beta_rhs: float
    plain_sum_rhs: float
    lhs: float


# Canonical-family remainder ordering: the first partner couples through the
# third ket slot (its pair carries the larger concurrence in the worked
# configurations), the second through the middle slot.
CANONICAL_ORDER = (2, 1)


def tightness_table(
    state: Union[PureState, SchmidtParams],
    kind: MeasureKind,
    beta_grid: Sequence[float],
    k_grid: Sequence[float],
    order: Optional[Sequence[int]] = None,
) -> List[TightnessRow]:
    """Per-(beta, k) comparison of the k-ladder against the prior bounds.

    At k = 1 the ladder reproduces the 2^p - 1 bound exactly. The split
    layout is resolved from the state at each k (ALL when no partition
    exists, which keeps rows comparable).
    """
    if isinstance(state, SchmidtParams):
        psi = schmidt_state(state)
        if order is None:
            order = CANONICAL_ORDER
    else:
        psi = state
    rows: List[TightnessRow] = []
    rest = order if order is not None else [q for q in range(psi.n_qubits) if q != 0]
    bases = dict(zip(rest, pair_closed_forms(psi, 0, list(rest), "concurrence")))
    for beta in beta_grid:
        fam = ineq._family_for(kind, MONOGAMY, beta)
        values = [fam.term(kind, bases[q]) for q in rest]
        lhs = meas.measure_value(kind, psi, 0) ** beta
        for k in k_grid:
            spec = make_ladder_spec(kind, MONOGAMY, k, beta)
            rep = monogamy_report(psi, 0, list(rest), kind, spec)
            layout = rep.m if rep.m is not None else ALL
            rows.append(
                TightnessRow(
                    beta=float(beta),
                    k=float(k),
                    our_rhs=rep.rhs,
                    power_two_rhs=prior_bound(values, beta, "power_two", layout, spec.power),
                    half_beta_rhs=prior_bound(values, beta, "half_beta", layout, spec.power),
                    plain_sum_rhs=prior_bound(values, beta, "plain_sum", layout, spec.power),
                    lhs=float(lhs),
                )
            )
    return rows
