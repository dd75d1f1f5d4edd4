"""Decision procedures built on the capacity and region machinery.

These answer the operational questions about a channel:

* the single-user capacity (no feedback and perfect feedback agree on
  it), with the partner frozen at its best constant;
* whether one independent look at the output, relayed by the idle
  partner via compress-forward, strictly beats that capacity (a
  sufficient condition evaluated at the capacity-achieving input);
* the full compress-forward rate curve as the idle partner's input mixes
  toward a second symbol, with the analytic slope at the start;
* the (1 - p) scaling of the achievable frontier under output erasure;
* for additive channels, the exact classification of when the extra look
  helps, via the joint-input bound and the support-partition condition.

All capacities and bounds are in bits. Reports serialize to plain dicts
with stable field names; ``inf`` values are emitted as the string "inf"
to keep the JSON strict.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from ._util import entropy_bits, fresh_symbol
from .channel import ErasureSpec, Mac, Pmf, erasure_extend, induced_channel
from .errors import InputError
from .groups import (EquivClassPartition, GroupSpec, channel_given_sum,
                     equivalence_classes, verify_additive)
from .infotheory import kl_divergence_vec
from .optimize import DEFAULT_TOL, max_support_input, maximize_joint_mi
from .regions import cover_leung_frontier, default_weight_fan

DEGENERATE_EPS = 1e-12
STRICT_MARGIN = 1e-9


def _json_num(v):
    if v is None:
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return float(v)


def _free_alphabets(mac: Mac, user: int):
    if user not in (1, 2):
        raise InputError(f"user must be 1 or 2, got {user!r}")
    if user == 1:
        return mac.x1_alphabet, mac.x2_alphabet, 2
    return mac.x2_alphabet, mac.x1_alphabet, 1


@dataclass(frozen=True, eq=False)
class SingleRateResult:
    """Best one-user rate with the partner constant, and how it is achieved.

    ``maximizer_set`` lists every partner symbol whose induced capacity
    ties the best one within the requested tolerance; ``p_star`` is a
    maximal-support capacity-achieving input for ``xk_star``.
    """

    user: int
    value: float
    p_star: Pmf
    xk_star: str
    maximizer_set: tuple[str, ...]
    per_symbol: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "user": self.user,
            "value": self.value,
            "p_star": {"alphabet": list(self.p_star.alphabet),
                       "probs": [float(v) for v in self.p_star.probs]},
            "xk_star": self.xk_star,
            "maximizer_set": list(self.maximizer_set),
            "per_symbol": {k: float(v) for k, v in self.per_symbol.items()},
        }


def single_rate_capacity(mac: Mac, user: int, tol: float = DEFAULT_TOL) -> SingleRateResult:
    """max over p(x_j) and partner constants x_k of I(X_j; Y | X_k = x_k).

    The inner optimizer runs two orders of magnitude tighter than ``tol``
    so that mathematically tied partner symbols land inside the ``tol``
    tie window.
    """
    _, other_alpha, other = _free_alphabets(mac, user)
    inner_tol = tol / 100.0
    per_symbol: dict[str, float] = {}
    inputs: dict[str, Pmf] = {}
    for sym in other_alpha:
        res = max_support_input(induced_channel(mac, other, sym), tol=inner_tol)
        per_symbol[sym] = res.value
        inputs[sym] = res.argmax_input
    best_val = max(per_symbol.values())
    # First symbol in alphabet order within noise of the maximum, so ties
    # resolve by label rather than by which float came out a hair larger.
    best_sym = next(s for s in other_alpha
                    if per_symbol[s] >= best_val - 1e-13)
    maximizers = tuple(s for s in other_alpha
                       if per_symbol[s] >= best_val - (tol + 1e-12))
    return SingleRateResult(
        user=user,
        value=best_val,
        p_star=inputs[best_sym],
        xk_star=best_sym,
        maximizer_set=maximizers,
        per_symbol=per_symbol,
    )


@dataclass(frozen=True)
class PairEvaluation:
    """One (xk_star, xbar_k) candidate in the gain condition, fully logged."""

    xk_star: str
    xbar_k: str
    lhs: float | None
    rhs: float
    divergence: float
    factor: float | None
    skipped_degenerate: bool

    def to_dict(self) -> dict:
        return {
            "xk_star": self.xk_star,
            "xbar_k": self.xbar_k,
            "lhs": _json_num(self.lhs),
            "rhs": _json_num(self.rhs),
            "divergence": _json_num(self.divergence),
            "factor": _json_num(self.factor),
            "skipped_degenerate": self.skipped_degenerate,
        }


@dataclass(frozen=True, eq=False)
class GainConditionReport:
    """Outcome of the sufficient condition for an independent-look gain."""

    user: int
    holds: bool
    witness: tuple[Pmf, str, str] | None
    lhs: float | None
    rhs: float | None
    degenerate_denominator: bool
    pairs: tuple[PairEvaluation, ...]
    note: str | None = None

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            p_star, xk_star, xbar_k = self.witness
            witness = {
                "p_star": {"alphabet": list(p_star.alphabet),
                           "probs": [float(v) for v in p_star.probs]},
                "xk_star": xk_star,
                "xbar_k": xbar_k,
            }
        return {
            "user": self.user,
            "holds": self.holds,
            "witness": witness,
            "lhs": _json_num(self.lhs),
            "rhs": _json_num(self.rhs),
            "degenerate_denominator": self.degenerate_denominator,
            "pairs": [p.to_dict() for p in self.pairs],
            "note": self.note,
        }


def _mi_fixed_partner(mac: Mac, user: int, xk_sym: str, p: Pmf) -> float:
    other = 2 if user == 1 else 1
    rows = induced_channel(mac, other, xk_sym).rows
    py = p.probs @ rows
    val = float(entropy_bits(py) - p.probs @ entropy_bits(rows, axis=1))
    return max(val, 0.0)


def _pair_quantities(mac: Mac, user: int, xk_star: str, xbar_k: str, p_star: Pmf):
    """All ingredients of the gain inequality for one candidate pair."""
    other = 2 if user == 1 else 1
    rows_star = induced_channel(mac, other, xk_star).rows
    rows_bar = induced_channel(mac, other, xbar_k).rows
    p = p_star.probs

    rhs = _mi_fixed_partner(mac, user, xk_star, p_star)
    mi_bar = _mi_fixed_partner(mac, user, xbar_k, p_star)
    divergence = kl_divergence_vec(p @ rows_bar, p @ rows_star)

    h_y_given_xj = float(p @ entropy_bits(rows_star, axis=1))
    pair = (p[:, None, None] * rows_star[:, :, None] * rows_star[:, None, :]).sum(axis=0)
    h_yyp = float(entropy_bits(pair))
    h_y = float(entropy_bits(pair.sum(axis=1)))
    denominator = max(h_yyp - h_y, 0.0)
    return rhs, mi_bar, divergence, h_y_given_xj, denominator


def _combine(mi_bar: float, divergence: float, factor: float) -> float:
    """mi_bar + divergence * factor with infinite-divergence semantics.

    A diverging term means the mixed-in symbol reaches outputs the
    baseline constant cannot; the sign of the parenthesized factor then
    decides the limit.
    """
    if math.isinf(divergence):
        return math.inf if factor > 0.0 else -math.inf
    return mi_bar + divergence * factor


def gain_sufficient_condition(mac: Mac, user: int, tol: float = DEFAULT_TOL,
                              strict_margin: float = STRICT_MARGIN) -> GainConditionReport:
    """Does one relayed independent look strictly beat the one-user capacity?

    Evaluates, for every tied best partner constant ``x_k*`` (by capacity
    then label) and every alternative ``xbar_k`` (by label), whether

        I(Xj; Y | Xk = xbar_k) + D(p(y|xbar_k) || p(y|xk*)) *
            (1 - H(Y | Xj, Xk = xk*) / H(Y' | Y, Xk = xk*))
            >  I(Xj; Y | Xk = xk*)

    at the maximal-support capacity-achieving input for ``x_k*``. The
    first strict success (margin ``strict_margin``) wins; pairs whose
    denominator H(Y' | Y, Xk = xk*) vanishes are skipped and flagged.
    Only the maximal-support representative input is tried per
    ``x_k*``; when the condition fails, other capacity-achieving inputs
    might still certify a gain, and the report says so.
    """
    _, other_alpha, _ = _free_alphabets(mac, user)
    sr = single_rate_capacity(mac, user, tol=tol)
    # Capacity descending, then label; capacities are quantized so that
    # numerically tied symbols order by label.
    candidates = sorted(
        sr.maximizer_set,
        key=lambda s: (-round(sr.per_symbol[s] * 1e12), other_alpha.index(s)))

    pairs: list[PairEvaluation] = []
    degenerate = False
    winner: PairEvaluation | None = None
    winner_input: Pmf | None = None
    inner_tol = tol / 100.0
    other = 2 if user == 1 else 1

    for xk_star in candidates:
        p_star = max_support_input(induced_channel(mac, other, xk_star),
                                   tol=inner_tol).argmax_input
        for xbar in other_alpha:
            rhs, mi_bar, div, h_y_xj, denom = _pair_quantities(
                mac, user, xk_star, xbar, p_star)
            if denom <= DEGENERATE_EPS:
                degenerate = True
                pairs.append(PairEvaluation(xk_star, xbar, None, rhs, div,
                                            None, True))
                continue
            factor = 1.0 - h_y_xj / denom
            lhs = _combine(mi_bar, div, factor)
            ev = PairEvaluation(xk_star, xbar, lhs, rhs, div, factor, False)
            pairs.append(ev)
            if winner is None and lhs - rhs > strict_margin:
                winner = ev
                winner_input = p_star
        if winner is not None:
            break

    if winner is not None:
        return GainConditionReport(
            user=user, holds=True,
            witness=(winner_input, winner.xk_star, winner.xbar_k),
            lhs=winner.lhs, rhs=winner.rhs,
            degenerate_denominator=degenerate,
            pairs=tuple(pairs),
        )
    evaluated = [p for p in pairs if not p.skipped_degenerate]
    best = max(evaluated, key=lambda p: p.lhs - p.rhs, default=None)
    return GainConditionReport(
        user=user, holds=False,
        witness=None,
        lhs=None if best is None else best.lhs,
        rhs=None if best is None else best.rhs,
        degenerate_denominator=degenerate,
        pairs=tuple(pairs),
        note="representative maximizers only",
    )


# ---------------------------------------------------------------------------
# Compress-forward rate curve.


@dataclass(frozen=True, eq=False)
class CFCurve:
    """Relay rate as the partner mixes away from its best constant.

    At mixing weight ``a`` the partner sends ``x_k*`` with probability
    ``1 - a`` and ``xbar_k`` otherwise, quantizes its independent look into
    an erasure description kept with probability ``b``, and the achieved
    rate is the compress-forward value with the best ``b`` for that
    ``a``. Points where the look carries nothing given the output are
    flagged and fall back to the no-relay rate.
    """

    a_grid: tuple[float, ...]
    rates: tuple[float, ...]
    b_values: tuple[float, ...]
    flagged: tuple[bool, ...]
    derivative_at_zero: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("a,rate,b,flagged\n")
        for a, r, b, f in zip(self.a_grid, self.rates, self.b_values, self.flagged):
            buf.write(f"{a!r},{r!r},{b!r},{int(f)}\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "a_grid": [float(a) for a in self.a_grid],
            "rates": [float(r) for r in self.rates],
            "b_values": [float(b) for b in self.b_values],
            "flagged": [bool(f) for f in self.flagged],
            "derivative_at_zero": _json_num(self.derivative_at_zero),
        }


def _cf_point(mac: Mac, user: int, xk_star: str, xbar_k: str, p_star: Pmf,
              a: float) -> tuple[float, float, bool]:
    """(rate, b, flagged) of the compress-forward bound at mixing weight a."""
    free_alpha, other_alpha, other = _free_alphabets(mac, user)
    pk = np.zeros(len(other_alpha))
    pk[other_alpha.index(xk_star)] += 1.0 - a
    pk[other_alpha.index(xbar_k)] += a

    if user == 1:
        w = mac.pmf  # (xj, xk, y)
    else:
        w = mac.pmf.transpose(1, 0, 2)
    pj = p_star.probs
    joint = (pj[:, None, None, None] * pk[None, :, None, None]
             * w[:, :, :, None] * w[:, :, None, :])  # (xj, xk, y, y')

    m_jk = joint.sum(axis=(2, 3))
    m_jky = joint.sum(axis=3)
    m_ky = m_jky.sum(axis=0)
    m_kyy = joint.sum(axis=0)
    m_k = m_jk.sum(axis=0)
    m_y = m_ky.sum(axis=0)

    h = lambda t: float(entropy_bits(t))
    i1 = max(h(m_jk) + h(m_ky) - h(m_k) - h(m_jky), 0.0)       # I(Xj;Y|Xk)
    i2 = max(h(m_k) + h(m_y) - h(m_ky), 0.0)                   # I(Xk;Y)
    h_c = max(h(m_jky) - h(m_jk), 0.0)                         # H(Y|Xj,Xk)
    h_yp = max(h(m_kyy) - h(m_ky), 0.0)                        # H(Y'|Xk,Y)
    i_pp = max(h_yp - h_c, 0.0)                                # I(Xj;Y'|Xk,Y)

    if h_yp <= DEGENERATE_EPS:
        return i1, 0.0, True
    b = min(1.0, i2 / h_yp)
    rate = i1 + min(i2 - b * h_c, b * i_pp)
    return max(rate, 0.0), b, False


def compress_forward_curve(mac: Mac, user: int, xk_star: str, xbar_k: str,
                           p_star: Pmf, a_grid) -> CFCurve:
    """Evaluate the relay rate over a grid of partner mixing weights.

    ``a_grid`` must be sorted within [0, 1] and contain 0; the first
    point then reproduces the one-user capacity whenever ``p_star`` and
    ``x_k*`` come from :func:`single_rate_capacity`. The slope at 0 is
    computed analytically from the same ingredients as the gain
    condition; it is infinite when the divergence term blows up and NaN
    when the denominator vanishes.
    """
    a_grid = tuple(float(a) for a in a_grid)
    if not a_grid or any(not 0.0 <= a <= 1.0 for a in a_grid):
        raise InputError("a_grid must be a non-empty subset of [0, 1]")
    if list(a_grid) != sorted(a_grid):
        raise InputError("a_grid must be sorted")
    if a_grid[0] != 0.0:
        raise InputError("a_grid must contain 0")
    _, other_alpha, _ = _free_alphabets(mac, user)
    for sym in (xk_star, xbar_k):
        if sym not in other_alpha:
            raise InputError(f"symbol {sym!r} not in the partner alphabet")

    rates, bs, flags = [], [], []
    for a in a_grid:
        r, b, f = _cf_point(mac, user, xk_star, xbar_k, p_star, a)
        rates.append(r)
        bs.append(b)
        flags.append(f)

    rhs, mi_bar, div, h_y_xj, denom = _pair_quantities(
        mac, user, xk_star, xbar_k, p_star)
    if denom <= DEGENERATE_EPS:
        deriv = math.nan
    else:
        factor = 1.0 - h_y_xj / denom
        lhs = _combine(mi_bar, div, factor)
        deriv = lhs - rhs

    return CFCurve(a_grid, tuple(rates), tuple(bs), tuple(flags), deriv)


# ---------------------------------------------------------------------------
# Erasure scaling of the achievable frontier.


@dataclass(frozen=True)
class ScalingRow:
    weights: tuple[float, float]
    value_extended: float
    value_base: float
    gap: float

    def to_dict(self) -> dict:
        return {
            "w1": self.weights[0], "w2": self.weights[1],
            "value_extended": self.value_extended,
            "value_base": self.value_base,
            "gap": self.gap,
        }


@dataclass(frozen=True)
class ScalingReport:
    """Per-weight check of frontier(erased) against (1 - p) frontier(base).

    Both sides are inner approximations from the same seeded optimizer,
    so the gap mixes the scaling identity with residual optimizer noise;
    it is reported, not asserted to vanish.
    """

    erasure_prob: float
    max_abs_gap: float
    rows: tuple[ScalingRow, ...]

    def to_dict(self) -> dict:
        return {
            "erasure_prob": self.erasure_prob,
            "max_abs_gap": self.max_abs_gap,
            "rows": [r.to_dict() for r in self.rows],
        }


def erasure_scaling_check(mac: Mac, p: float, weights=None, restarts: int = 25,
                          seed: int = 0, u_card: int | None = None,
                          tol: float = DEFAULT_TOL) -> ScalingReport:
    """Compare the frontier of the erasure-extended channel to the scaled base."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"erasure probability must lie in [0, 1], got {p!r}")
    if weights is None:
        weights = default_weight_fan()
    base = cover_leung_frontier(mac, weights=weights, restarts=restarts,
                                u_card=u_card, seed=seed, tol=tol)
    extended_mac = erasure_extend(
        mac, ErasureSpec(p, fresh_symbol(mac.y_alphabet)))
    ext = cover_leung_frontier(extended_mac, weights=weights, restarts=restarts,
                               u_card=u_card, seed=seed, tol=tol)
    rows = []
    for pb, pe in zip(base.points, ext.points):
        gap = abs(pe.value - (1.0 - p) * pb.value)
        rows.append(ScalingRow(pb.weights, pe.value, pb.value, gap))
    return ScalingReport(
        erasure_prob=p,
        max_abs_gap=max(r.gap for r in rows),
        rows=tuple(rows),
    )


# ---------------------------------------------------------------------------
# Additive-channel classification.


@dataclass(frozen=True, eq=False)
class AdditiveClassification:
    """Exact classification of the independent-look gain on an additive channel.

    ``conclusion`` is "equal" when either the joint-input bound already
    collapses to the one-user capacity (condition1) or the class
    partition of the sum channel shields the output (condition2);
    otherwise it is "strictly_greater", cross-validated against the gain
    sufficient condition.
    """

    user: int
    condition1: bool
    condition2: bool
    conclusion: str
    joint_mi: float
    single_rate: float
    partition: EquivClassPartition
    gain_report: GainConditionReport | None = None

    def to_dict(self) -> dict:
        return {
            "user": self.user,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "conclusion": self.conclusion,
            "evidence": {
                "joint_mi": self.joint_mi,
                "single_rate": self.single_rate,
                "partition": self.partition.to_dict(),
                "gain": None if self.gain_report is None else self.gain_report.to_dict(),
            },
        }


def classify_additive_gain(mac: Mac, group: GroupSpec, user: int,
                           tol: float = 1e-6) -> AdditiveClassification:
    """Decide whether independent looks help a user of an additive channel.

    Requires ``group`` to certify additivity (raises otherwise).
    ``condition1`` compares the joint-input bound with the one-user
    capacity at tolerance ``tol``; ``condition2`` evaluates the class
    partition of the sum channel at the full embedded support of the free
    user (any sub-support partition refines this one, and row equality in
    the coarse classes implies it in the refined ones). On a strict
    conclusion the gain condition is re-checked and must agree.
    """
    report = verify_additive(mac, group)
    if not report.additive:
        raise InputError(
            "channel is not additive under the given group: "
            + "; ".join(report.violations[:3])
        )
    cap_tol = min(tol / 100.0, DEFAULT_TOL)
    joint = maximize_joint_mi(mac, tol=cap_tol).value
    sr = single_rate_capacity(mac, user, tol=cap_tol)
    condition1 = (joint - sr.value) <= tol

    sum_channel = channel_given_sum(mac, group)
    embed = group.embed_x1 if user == 1 else group.embed_x2
    support = tuple(group.elements[i] for i in embed)
    partition = equivalence_classes(sum_channel, support=support)
    condition2 = partition.markov_ok

    gain_report = None
    if condition1 or condition2:
        conclusion = "equal"
    else:
        conclusion = "strictly_greater"
        gain_report = gain_sufficient_condition(mac, user, tol=cap_tol)
        if not gain_report.holds:
            raise RuntimeError(
                "inconsistent classification: neither condition holds but the "
                "gain sufficient condition failed; this contradicts the "
                "additive-channel characterization"
            )
    return AdditiveClassification(
        user=user,
        condition1=condition1,
        condition2=condition2,
        conclusion=conclusion,
        joint_mi=joint,
        single_rate=sr.value,
        partition=partition,
        gain_report=gain_report,
    )
