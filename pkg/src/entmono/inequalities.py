"""Tightened monogamy/polygamy bound builders.

The bounds share one template: a left-hand measure of a pure state across
``focus | rest``, and a right-hand sum of two-qubit closed-form terms, each
multiplied by a power of the coefficient

    h = ((1 + k)^p - 1) / k^p,   0 < k <= 1,

with ``p`` an exponent derived from the overall power ``beta`` (``beta/2``
for the concurrence/negativity families, ``beta/sqrt(2)`` for the formation
family, ``beta`` otherwise). Smaller ``k`` gives larger ``h`` and hence a
tighter bound; ``k = 1`` recovers the ``2^p - 1`` ladder of earlier bounds.

Each bound is conditional. Conditions compare a term against the aggregated
remainder behind it ("tail"). Tails are evaluated from the same two-qubit
closed forms: the squared concurrence-like values behind position ``i`` are
summed and mapped through the family's scalar function, which is exactly the
quantity the bound's derivation telescopes over. For three-qubit states this
reduces to the plain two-qubit closed form of the last pair.

Reports never assert: they carry the evaluated conditions and an
``applicable`` flag, and leave slack-sign claims to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import kernels
from .measures import (
    SQRT2,
    MeasureKind,
    UnsupportedMeasureError,
    eof_f,
    measure_value,
    renyi_f,
    tsallis_g,
)
from .qstate import PureState

ALL = "all"
MONOGAMY = "monogamy"
POLYGAMY = "polygamy"

POWER_BETA = "beta"
POWER_HALF = "beta_half"
POWER_SQRT2 = "beta_over_sqrt2"

RENYI_ASSIST_ALPHA_MIN = (np.sqrt(7.0) - 1.0) / 2.0
RENYI_ASSIST_ALPHA_MAX = (np.sqrt(13.0) - 1.0) / 2.0

SplitIndex = Union[int, str, None]  # 1-based split, ALL, or None for auto


def coeff(k: float, p: float) -> float:
    """Ladder base ((1+k)^p - 1) / k^p for k in (0, 1] and p >= 0.

    Equals 2^p - 1 at k = 1; exceeds it for p >= 1 and stays below it for
    p <= 1. Decreasing in k when p > 1.
    """
    if not (0.0 < k <= 1.0):
        raise ValueError(f"k must lie in (0, 1], got {k}")
    if p < 0:
        raise ValueError(f"exponent must be non-negative, got {p}")
    if p == 0.0:
        return 0.0
    return float(((1.0 + k) ** p - 1.0) / k**p)


def lemma1_lower(t: float, k: float, m: float) -> Tuple[float, float]:
    """Both sides of (1+t)^m >= 1 + coeff(k, m) t^m for m >= 1, 0 <= t <= k."""
    if not (0.0 < k <= 1.0):
        raise ValueError(f"k must lie in (0, 1], got {k}")
    if not (0.0 <= t <= k):
        raise ValueError(f"t must lie in [0, k], got t={t}, k={k}")
    if m < 1.0:
        raise ValueError(f"exponent must satisfy m >= 1, got {m}")
    return float((1.0 + t) ** m), float(1.0 + coeff(k, m) * t**m)


def lemma1_upper(t: float, k: float, n: float) -> Tuple[float, float]:
    """Both sides of (1+t)^n <= 1 + coeff(k, n) t^n for 0 <= n <= 1, 0 <= t <= k."""
    if not (0.0 < k <= 1.0):
        raise ValueError(f"k must lie in (0, 1], got {k}")
    if not (0.0 <= t <= k):
        raise ValueError(f"t must lie in [0, k], got t={t}, k={k}")
    if not (0.0 <= n <= 1.0):
        raise ValueError(f"exponent must lie in [0, 1], got {n}")
    if n == 0.0:
        return 1.0, 1.0  # coeff(k, 0) = 0, so both sides collapse to 1
    return float((1.0 + t) ** n), float(1.0 + coeff(k, n) * t**n)


@dataclass(frozen=True)
class LadderSpec:
    """Which bound to build: coefficient k, power beta, exponent rule, split, direction."""

    k: float
    beta: float
    power: str
    m: SplitIndex = None
    direction: str = MONOGAMY

    def __post_init__(self):
        if not (0.0 < self.k <= 1.0):
            raise ValueError(f"k must lie in (0, 1], got {self.k}")
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        if self.power not in (POWER_BETA, POWER_HALF, POWER_SQRT2):
            raise ValueError(f"unknown power rule {self.power!r}")
        if self.direction not in (MONOGAMY, POLYGAMY):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.m is not None and self.m != ALL and (not isinstance(self.m, int) or self.m < 1):
            raise ValueError(f"split index must be a positive int, {ALL!r} or None, got {self.m!r}")

    def exponent(self) -> float:
        if self.power == POWER_HALF:
            return self.beta / 2.0
        if self.power == POWER_SQRT2:
            return self.beta / SQRT2
        return self.beta


@dataclass(frozen=True)
class TermEntry:
    """One right-hand-side term: closed-form value, ladder coefficient, contribution."""

    index: int
    value: float
    coefficient: float
    contribution: float


@dataclass(frozen=True)
class ConditionCheck:
    """One evaluated condition; ``satisfied`` compares lhs against rhs per kind."""

    index: int
    kind: str  # "prefix": lhs = k*value >= rhs = tail ; "suffix": lhs = value <= rhs = k*tail
    satisfied: bool
    lhs: float
    rhs: float


@dataclass(frozen=True)
class ConditionPartition:
    """Resolved split: m (int), ALL, or None when no prefix works."""

    m: SplitIndex
    checks: Tuple[ConditionCheck, ...]


@dataclass(frozen=True)
class MonogamyReport:
    """Full bookkeeping of one bound evaluation; slack is directional."""

    kind: MeasureKind
    direction: str
    k: float
    beta: float
    focus: int
    order: Tuple[int, ...]
    m: SplitIndex
    lhs: float
    terms: Tuple[TermEntry, ...]
    rhs: float
    slack: float
    conditions: Tuple[ConditionCheck, ...]
    applicable: bool


def ladder_coefficients(spec: LadderSpec, n_terms: int) -> List[float]:
    """Coefficient sequence of the bound with base h = coeff(k, exponent).

    ALL mode: [h^0, h^1, ..., h^(n_terms-1)]. Split mode at m: exponents
    0..m-1 on the first m terms, m+1 on the middle block, m on the final
    term. A single term always gets coefficient 1.
    """
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    if n_terms == 1:
        return [1.0]
    return _ladder_from_base(coeff(spec.k, spec.exponent()), n_terms, spec.m)


def condition_partition(
    values: Sequence[float], tails: Sequence[float], k: float
) -> ConditionPartition:
    """Largest split consistent with the two condition families.

    ``values`` and ``tails`` must already be on the comparison scale the
    relevant bound states (squared, sqrt(2)-powered, or plain). ``tails[i]``
    is the aggregated remainder behind position i. Returns ALL when the
    prefix condition holds everywhere, the largest valid split m otherwise,
    or None when no prefix works.
    """
    if not (0.0 < k <= 1.0):
        raise ValueError(f"k must lie in (0, 1], got {k}")
    values = [float(v) for v in values]
    tails = [float(t) for t in tails]
    if len(tails) != len(values) - 1:
        raise ValueError(
            f"expected {len(values) - 1} tails for {len(values)} values, got {len(tails)}"
        )
    ncond = len(tails)
    prefix_ok = [k * values[i] >= tails[i] for i in range(ncond)]
    suffix_ok = [values[i] <= k * tails[i] for i in range(ncond)]

    def check(i: int, kind: str) -> ConditionCheck:
        if kind == "prefix":
            return ConditionCheck(i + 1, kind, prefix_ok[i], k * values[i], tails[i])
        return ConditionCheck(i + 1, kind, suffix_ok[i], values[i], k * tails[i])

    if all(prefix_ok):
        return ConditionPartition(ALL, tuple(check(i, "prefix") for i in range(ncond)))
    run = 0
    while run < ncond and prefix_ok[run]:
        run += 1
    for m in range(min(run, ncond - 1), 0, -1):
        if all(suffix_ok[j] for j in range(m, ncond)):
            checks = tuple(
                check(i, "prefix" if i < m else "suffix") for i in range(ncond)
            )
            return ConditionPartition(m, checks)
    return ConditionPartition(None, tuple(check(i, "prefix") for i in range(ncond)))


# ---------------------------------------------------------------------------
# family plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Family:
    base: str  # "concurrence" or "coa": which two-qubit closed form feeds the terms
    power: str
    cond_exp: float  # conditions compare value**cond_exp against tail**cond_exp

    def term(self, kind: MeasureKind, b: float) -> float:
        return _scalar_map(kind, b)

    def tail(self, kind: MeasureKind, ssq: float) -> float:
        # ssq is the sum of squared base values behind the position; it may
        # exceed 1 for assisted terms, where the scalar maps cap at their
        # endpoint value (the monotone extension keeps the chain valid).
        return _scalar_map(kind, float(np.sqrt(max(ssq, 0.0))))


def _scalar_map(kind: MeasureKind, c: float) -> float:
    """Two-qubit measure value as a function of the concurrence-like scalar c."""
    tag = kind.tag
    if tag in ("concurrence", "concurrence_assist", "cren", "cren_assist"):
        return float(c)
    c = min(max(float(c), 0.0), 1.0)
    if tag in ("eof", "eof_assist"):
        return eof_f(c * c)
    if tag == "tsallis":
        return tsallis_g(kind.param, c * c)
    if tag == "renyi":
        return renyi_f(kind.param, c)
    raise UnsupportedMeasureError(f"no scalar map for measure {tag!r}")


def _family_for(kind: MeasureKind, direction: str, beta: float) -> _Family:
    tag = kind.tag
    plain = tag.replace("_assist", "")
    if direction == MONOGAMY:
        if kind.is_assist:
            raise UnsupportedMeasureError("monogamy bounds take plain (non-assist) kinds")
        if plain in ("concurrence", "cren"):
            if beta < 2.0:
                raise UnsupportedMeasureError(f"{plain} monogamy requires beta >= 2, got {beta}")
            return _Family("concurrence", POWER_HALF, 2.0)
        if plain == "eof":
            if beta < SQRT2 - 1e-15:
                raise UnsupportedMeasureError(f"eof monogamy requires beta >= sqrt(2), got {beta}")
            return _Family("concurrence", POWER_SQRT2, SQRT2)
        if plain == "tsallis":
            if beta < 1.0:
                raise UnsupportedMeasureError(f"tsallis monogamy requires beta >= 1, got {beta}")
            if not (2.0 <= kind.param <= 3.0):
                raise UnsupportedMeasureError(f"tsallis monogamy requires q in [2, 3], got {kind.param}")
            return _Family("concurrence", POWER_BETA, 1.0)
        if plain == "renyi":
            if beta < 1.0:
                raise UnsupportedMeasureError(f"renyi monogamy requires beta >= 1, got {beta}")
            if kind.param < 2.0:
                raise UnsupportedMeasureError(f"renyi monogamy requires alpha >= 2, got {kind.param}")
            return _Family("concurrence", POWER_BETA, 1.0)
    else:
        if beta == 0.0:
            raise ValueError("beta = 0 makes the polygamy ladder degenerate")
        if plain in ("concurrence", "cren"):
            if not (0.0 < beta <= 2.0):
                raise UnsupportedMeasureError(
                    f"{plain} polygamy requires beta in (0, 2], got {beta}"
                )
            return _Family("coa", POWER_HALF, 2.0)
        if plain == "eof":
            if not (0.0 < beta <= 1.0):
                raise UnsupportedMeasureError(f"eof polygamy requires beta in (0, 1], got {beta}")
            return _Family("coa", POWER_BETA, 1.0)
        if plain == "tsallis":
            if not (0.0 < beta <= 1.0):
                raise UnsupportedMeasureError(f"tsallis polygamy requires beta in (0, 1], got {beta}")
            if not (1.0 <= kind.param <= 2.0 or 3.0 <= kind.param <= 4.0):
                raise UnsupportedMeasureError(
                    f"tsallis polygamy requires q in [1, 2] or [3, 4], got {kind.param}"
                )
            return _Family("coa", POWER_BETA, 1.0)
        if plain == "renyi":
            if not (0.0 < beta <= 1.0):
                raise UnsupportedMeasureError(f"renyi polygamy requires beta in (0, 1], got {beta}")
            if not (RENYI_ASSIST_ALPHA_MIN <= kind.param <= RENYI_ASSIST_ALPHA_MAX):
                raise UnsupportedMeasureError(
                    "renyi polygamy requires alpha in "
                    f"[(sqrt(7)-1)/2, (sqrt(13)-1)/2], got {kind.param}"
                )
            return _Family("coa", POWER_BETA, 1.0)
    raise UnsupportedMeasureError(f"measure {tag!r} unsupported for {direction} bounds")


def make_ladder_spec(
    kind: MeasureKind, direction: str, k: float, beta: float, m: SplitIndex = None
) -> LadderSpec:
    """LadderSpec with the exponent rule the given kind/direction mandates."""
    fam = _family_for(kind, direction, beta)
    return LadderSpec(k=k, beta=beta, power=fam.power, m=m, direction=direction)


def pair_closed_forms(psi: PureState, focus: int, order: Sequence[int], base: str) -> List[float]:
    """Two-qubit closed-form scalars (concurrence or assisted) for each pair (focus, b)."""
    amps = psi.amplitudes
    out = []
    for b in order:
        lam = kernels.wootters_lambdas(kernels.pair_marginal(amps, psi.n_qubits, focus, b))
        if base == "concurrence":
            out.append(float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))
        else:
            out.append(float(lam.sum()))
    return out


def _resolve_order(psi: PureState, focus: int, order: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if not (0 <= focus < psi.n_qubits):
        raise ValueError(f"focus qubit {focus} out of range")
    rest = tuple(q for q in range(psi.n_qubits) if q != focus)
    if order is None:
        return rest
    order = tuple(int(q) for q in order)
    if sorted(order) != sorted(rest):
        raise ValueError(f"order {order} is not a permutation of the non-focus qubits {rest}")
    return order


def _build_report(
    psi: PureState,
    focus: int,
    order: Optional[Sequence[int]],
    kind: MeasureKind,
    spec: LadderSpec,
    direction: str,
) -> MonogamyReport:
    if spec.direction != direction:
        raise ValueError(f"ladder spec direction {spec.direction!r} does not match {direction!r}")
    fam = _family_for(kind, direction, spec.beta)
    if fam.power != spec.power:
        raise ValueError(
            f"ladder spec power {spec.power!r} does not match the {kind.tag} {direction} rule {fam.power!r}"
        )
    order = _resolve_order(psi, focus, order)
    n_terms = len(order)

    bases = pair_closed_forms(psi, focus, order, fam.base)
    terms = [fam.term(kind, b) for b in bases]
    # aggregated remainders: sum of squared base scalars strictly behind position i
    ssq = 0.0
    tail_ssq = [0.0] * n_terms
    for i in range(n_terms - 1, -1, -1):
        tail_ssq[i] = ssq
        ssq += bases[i] * bases[i]
    tails = [fam.tail(kind, tail_ssq[i]) for i in range(n_terms - 1)]

    vp = [t**fam.cond_exp for t in terms]
    tp = [t**fam.cond_exp for t in tails]

    if spec.m is None:
        part = condition_partition(vp, tp, spec.k)
        resolved = part.m
        checks = part.checks
        applicable = part.m is not None
    else:
        part = condition_partition(vp, tp, spec.k)
        resolved = spec.m
        if spec.m == ALL:
            checks = tuple(
                ConditionCheck(i + 1, "prefix", spec.k * vp[i] >= tp[i], spec.k * vp[i], tp[i])
                for i in range(n_terms - 1)
            )
        else:
            if n_terms < 3 or not (1 <= spec.m <= n_terms - 2):
                raise ValueError(f"split index {spec.m} invalid for {n_terms} terms")
            checks = tuple(
                ConditionCheck(i + 1, "prefix", spec.k * vp[i] >= tp[i], spec.k * vp[i], tp[i])
                if i < spec.m
                else ConditionCheck(i + 1, "suffix", vp[i] <= spec.k * tp[i], vp[i], spec.k * tp[i])
                for i in range(n_terms - 1)
            )
        applicable = all(c.satisfied for c in checks)

    layout = resolved if resolved is not None else ALL
    coefs = ladder_coefficients(
        LadderSpec(spec.k, spec.beta, spec.power, layout, direction), n_terms
    )
    entries = tuple(
        TermEntry(i + 1, terms[i], coefs[i], coefs[i] * terms[i] ** spec.beta)
        for i in range(n_terms)
    )
    rhs = float(sum(e.contribution for e in entries))
    lhs_kind = MeasureKind(kind.tag.replace("_assist", ""), kind.param)
    lhs = measure_value(lhs_kind, psi, focus) ** spec.beta
    slack = (lhs - rhs) if direction == MONOGAMY else (rhs - lhs)
    return MonogamyReport(
        kind=kind,
        direction=direction,
        k=spec.k,
        beta=spec.beta,
        focus=focus,
        order=order,
        m=resolved,
        lhs=float(lhs),
        terms=entries,
        rhs=rhs,
        slack=float(slack),
        conditions=checks,
        applicable=applicable,
    )


def monogamy_report(
    psi: PureState,
    focus: int,
    order: Optional[Sequence[int]],
    kind: MeasureKind,
    spec: LadderSpec,
) -> MonogamyReport:
    """Lower-bound report: lhs = measure(focus|rest)^beta, rhs = coefficient ladder.

    ``spec.m = None`` resolves the split from the state via
    :func:`condition_partition`; an explicit split or ALL evaluates that
    bound's conditions as stated. Slack is lhs - rhs and is only meaningful
    when ``applicable`` is true.
    """
    return _build_report(psi, focus, order, kind, spec, MONOGAMY)


def polygamy_report(
    psi: PureState,
    focus: int,
    order: Optional[Sequence[int]],
    kind: MeasureKind,
    spec: LadderSpec,
) -> MonogamyReport:
    """Upper-bound report for the assistance families; slack is rhs - lhs.

    Terms are assisted closed forms on the two-qubit marginals; the
    left-hand side is the plain pure-state measure (assistance coincides
    with it on pure inputs). Accepts plain or assist kind tags.
    """
    return _build_report(psi, focus, order, kind, spec, POLYGAMY)


PRIOR_FAMILIES = ("plain_sum", "half_beta", "power_two")


def prior_bound(
    values: Sequence[float],
    beta: float,
    family: str,
    m: SplitIndex = ALL,
    power: str = POWER_HALF,
) -> float:
    """Baseline right-hand sides used for tightness comparisons.

    ``plain_sum`` is the unweighted sum of beta-th powers; ``half_beta`` and
    ``power_two`` are the ladders with bases p and 2^p - 1 respectively,
    where p follows the measure's exponent rule (``power``).
    """
    if family not in PRIOR_FAMILIES:
        raise ValueError(f"unknown prior family {family!r}")
    values = [float(v) for v in values]
    spec = LadderSpec(1.0, beta, power, m if m is not None else ALL, MONOGAMY)
    p = spec.exponent()
    if family == "plain_sum":
        h = 1.0
    elif family == "half_beta":
        h = p
    else:
        h = 2.0**p - 1.0
    coefs = _ladder_from_base(h, len(values), spec.m)
    return float(sum(c * v**beta for c, v in zip(coefs, values)))


def _ladder_from_base(h: float, n_terms: int, m: SplitIndex) -> List[float]:
    if n_terms == 1:
        return [1.0]
    if m == ALL or m is None:
        return [h**j for j in range(n_terms)]
    if not (1 <= m <= n_terms - 2):
        raise ValueError(f"split index {m} invalid for {n_terms} terms")
    return [h**j for j in range(m)] + [h ** (m + 1)] * (n_terms - 1 - m) + [h**m]
