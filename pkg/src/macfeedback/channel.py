"""Discrete memoryless two-user multiple-access channel model.

The central object is :class:`Mac`, the conditional law ``p(y | x1, x2)``
stored as a rank-3 tensor over named finite alphabets. Probability vectors
and tables come as :class:`Pmf`, :class:`ConditionalPmf` and
:class:`JointDist`. All objects are immutable after construction and all
operations are pure functions, so everything is safe to share between
threads.

Symbol labels are opaque strings. No operation in this package ever parses
a label to do arithmetic; algebraic structure enters only through explicit
group tables (see :mod:`macfeedback.groups`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import clamp_tiny, freeze
from .errors import InputError

SUM_TOL = 1e-9


def _check_alphabet(labels, where: str) -> tuple[str, ...]:
    labels = tuple(str(s) for s in labels)
    if len(labels) == 0:
        raise InputError(f"{where}: alphabet is empty")
    if len(set(labels)) != len(labels):
        dup = next(s for s in labels if labels.count(s) > 1)
        raise InputError(f"{where}: duplicate symbol {dup!r}")
    return labels


@dataclass(frozen=True, eq=False)
class Pmf:
    """A probability mass function over a named finite alphabet.

    Parameters
    ----------
    alphabet : sequence of str
        Distinct symbol labels.
    probs : array-like
        Nonnegative weights summing to 1 within 1e-9 (renormalized to sum
        to 1 exactly after validation).
    """

    alphabet: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self):
        alphabet = _check_alphabet(self.alphabet, "Pmf")
        probs = clamp_tiny(self.probs)
        if probs.ndim != 1 or probs.shape[0] != len(alphabet):
            raise InputError(
                f"Pmf: got {probs.shape} weights for {len(alphabet)} symbols"
            )
        if np.any(probs < 0.0):
            raise InputError("Pmf: negative mass")
        if np.any(probs > 1.0 + SUM_TOL):
            raise InputError("Pmf: mass above 1")
        total = probs.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise InputError(f"Pmf: mass sums to {total!r}, not 1")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "probs", freeze(probs / total))

    def __len__(self) -> int:
        return len(self.alphabet)

    def prob(self, symbol: str) -> float:
        return float(self.probs[self.alphabet.index(symbol)])

    @staticmethod
    def point_mass(alphabet, symbol: str) -> "Pmf":
        alphabet = tuple(alphabet)
        probs = np.zeros(len(alphabet))
        probs[alphabet.index(symbol)] = 1.0
        return Pmf(alphabet, probs)

    @staticmethod
    def uniform(alphabet) -> "Pmf":
        alphabet = tuple(alphabet)
        return Pmf(alphabet, np.full(len(alphabet), 1.0 / len(alphabet)))


@dataclass(frozen=True, eq=False)
class ConditionalPmf:
    """A channel matrix: one output distribution per input symbol.

    ``rows[i]`` is the distribution of the output given input symbol
    ``input_alphabet[i]``. Every row must sum to 1 within 1e-9.
    """

    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self):
        ia = _check_alphabet(self.input_alphabet, "ConditionalPmf input")
        oa = _check_alphabet(self.output_alphabet, "ConditionalPmf output")
        rows = clamp_tiny(self.rows)
        if rows.shape != (len(ia), len(oa)):
            raise InputError(
                f"ConditionalPmf: rows shape {rows.shape} does not match "
                f"({len(ia)}, {len(oa)})"
            )
        if np.any(rows < 0.0) or np.any(rows > 1.0 + SUM_TOL):
            raise InputError("ConditionalPmf: entries outside [0, 1]")
        sums = rows.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > SUM_TOL)
        if bad.size:
            i = int(bad[0])
            raise InputError(
                f"ConditionalPmf: row {ia[i]!r} sums to {sums[i]!r}"
            )
        object.__setattr__(self, "input_alphabet", ia)
        object.__setattr__(self, "output_alphabet", oa)
        object.__setattr__(self, "rows", freeze(rows / sums[:, None]))

    def row(self, symbol: str) -> np.ndarray:
        return self.rows[self.input_alphabet.index(symbol)]


@dataclass(frozen=True, eq=False)
class Mac:
    """A two-transmitter channel ``p(y | x1, x2)`` on finite alphabets.

    The tensor is indexed ``pmf[x1][x2][y]``. Construction checks shapes
    and label uniqueness only; probabilistic validity is reported by
    :func:`validate_mac` so that malformed tensors can be diagnosed rather
    than rejected opaquely. Every other operation in the package assumes a
    Mac with an empty validation report.

    Feedback variants (no feedback, perfect feedback, one or two
    independent feedback looks) are parameters of the analyses, not state
    stored here: they all share this one conditional law.
    """

    x1_alphabet: tuple[str, ...]
    x2_alphabet: tuple[str, ...]
    y_alphabet: tuple[str, ...]
    pmf: np.ndarray
    name: str = ""

    def __post_init__(self):
        a1 = _check_alphabet(self.x1_alphabet, "Mac x1")
        a2 = _check_alphabet(self.x2_alphabet, "Mac x2")
        ay = _check_alphabet(self.y_alphabet, "Mac y")
        pmf = clamp_tiny(self.pmf)
        if pmf.shape != (len(a1), len(a2), len(ay)):
            raise InputError(
                f"Mac: pmf shape {pmf.shape} does not match alphabets "
                f"({len(a1)}, {len(a2)}, {len(ay)})"
            )
        object.__setattr__(self, "x1_alphabet", a1)
        object.__setattr__(self, "x2_alphabet", a2)
        object.__setattr__(self, "y_alphabet", ay)
        object.__setattr__(self, "pmf", freeze(pmf))

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.pmf.shape


@dataclass(frozen=True, eq=False)
class JointDist:
    """A joint distribution over named axes, stored as a dense tensor."""

    axes: tuple[tuple[str, tuple[str, ...]], ...]
    table: np.ndarray

    def __post_init__(self):
        axes = tuple((str(n), _check_alphabet(a, f"JointDist axis {n!r}"))
                     for n, a in self.axes)
        names = [n for n, _ in axes]
        if len(set(names)) != len(names):
            raise InputError("JointDist: duplicate axis name")
        table = clamp_tiny(self.table)
        want = tuple(len(a) for _, a in axes)
        if table.shape != want:
            raise InputError(
                f"JointDist: table shape {table.shape} does not match {want}"
            )
        if np.any(table < 0.0):
            raise InputError("JointDist: negative mass")
        total = table.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise InputError(f"JointDist: mass sums to {total!r}, not 1")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "table", freeze(table / total))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.axes)

    def alphabet(self, name: str) -> tuple[str, ...]:
        for n, a in self.axes:
            if n == name:
                return a
        raise InputError(f"JointDist: no axis named {name!r}")

    def _axis_index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.axes):
            if n == name:
                return i
        raise InputError(f"JointDist: no axis named {name!r}")

    def marginal_table(self, names) -> np.ndarray:
        """Marginal tensor over the given axes, in the order given."""
        names = (names,) if isinstance(names, str) else tuple(names)
        keep = [self._axis_index(n) for n in names]
        drop = tuple(i for i in range(self.table.ndim) if i not in keep)
        t = self.table.sum(axis=drop) if drop else self.table
        kept_sorted = sorted(keep)
        perm = [kept_sorted.index(k) for k in keep]
        return t.transpose(perm) if perm != sorted(perm) else t

    def marginal(self, names) -> "JointDist":
        names = (names,) if isinstance(names, str) else tuple(names)
        axes = tuple((n, self.alphabet(n)) for n in names)
        return JointDist(axes, self.marginal_table(names))

    def to_pmf(self) -> Pmf:
        if len(self.axes) != 1:
            raise InputError("to_pmf: joint has more than one axis")
        return Pmf(self.axes[0][1], self.table)

    def condition(self, name: str, symbol: str) -> "JointDist":
        """The joint over the remaining axes given ``name == symbol``.

        Raises if the conditioning event has zero probability.
        """
        i = self._axis_index(name)
        alpha = self.axes[i][1]
        if symbol not in alpha:
            raise InputError(f"condition: {symbol!r} not in axis {name!r}")
        sl = np.take(self.table, alpha.index(symbol), axis=i)
        mass = sl.sum()
        if mass <= 0.0:
            raise InputError(
                f"condition: event {name}={symbol!r} has zero probability"
            )
        axes = tuple(a for j, a in enumerate(self.axes) if j != i)
        return JointDist(axes, sl / mass)


def validate_mac(mac: Mac) -> list[str]:
    """Check the probabilistic invariants of a Mac and report violations.

    Returns an empty list when for every input pair the output slice is a
    distribution: entries in [0, 1] and sum within 1e-9 of 1. Each
    violation message names the offending ``(x1, x2)`` slice and the
    residual, so this doubles as a lint for hand-written channel files.
    """
    report: list[str] = []
    pmf = mac.pmf
    neg = np.argwhere(pmf < 0.0)
    for i, j, k in neg:
        report.append(
            f"negative mass: pmf[{mac.x1_alphabet[i]!r}][{mac.x2_alphabet[j]!r}]"
            f"[{mac.y_alphabet[k]!r}] = {pmf[i, j, k]!r}"
        )
    over = np.argwhere(pmf > 1.0 + SUM_TOL)
    for i, j, k in over:
        report.append(
            f"mass above 1: pmf[{mac.x1_alphabet[i]!r}][{mac.x2_alphabet[j]!r}]"
            f"[{mac.y_alphabet[k]!r}] = {pmf[i, j, k]!r}"
        )
    sums = pmf.sum(axis=2)
    for i, j in np.argwhere(np.abs(sums - 1.0) > SUM_TOL):
        report.append(
            f"row (x1={mac.x1_alphabet[i]!r}, x2={mac.x2_alphabet[j]!r}) "
            f"sums to {sums[i, j]!r}, residual {sums[i, j] - 1.0:.6g}"
        )
    return report


def induced_channel(mac: Mac, fix_user: int, fixed_symbol: str) -> ConditionalPmf:
    """Point-to-point channel seen by one user when the other sends a constant.

    ``fix_user`` is the transmitter held at ``fixed_symbol``; the returned
    channel maps the free user's alphabet to the output alphabet.
    """
    if fix_user not in (1, 2):
        raise InputError(f"fix_user must be 1 or 2, got {fix_user!r}")
    fixed_alpha = mac.x1_alphabet if fix_user == 1 else mac.x2_alphabet
    if fixed_symbol not in fixed_alpha:
        raise InputError(
            f"symbol {fixed_symbol!r} not in user {fix_user} alphabet"
        )
    k = fixed_alpha.index(fixed_symbol)
    if fix_user == 1:
        rows = mac.pmf[k, :, :]
        free_alpha = mac.x2_alphabet
    else:
        rows = mac.pmf[:, k, :]
        free_alpha = mac.x1_alphabet
    return ConditionalPmf(free_alpha, mac.y_alphabet, rows)


def independent_copy_joint(mac: Mac, input_dist: JointDist, copies: int = 1) -> JointDist:
    """Joint law of inputs and ``copies`` independent channel outputs.

    With ``copies=2`` the result is ``p(x1, x2) p(y|x1, x2) p(y'|x1, x2)``:
    the second output axis (named ``y'``) is a statistically identical,
    conditionally independent draw of the channel given the same inputs.
    This is the building block for every two-look quantity.
    """
    if copies not in (1, 2):
        raise InputError(f"copies must be 1 or 2, got {copies!r}")
    if len(input_dist.axes) != 2:
        raise InputError("input joint must have exactly two axes (x1, x2)")
    (n1, a1), (n2, a2) = input_dist.axes
    if a1 != mac.x1_alphabet or a2 != mac.x2_alphabet:
        raise InputError("input joint alphabets do not match the channel")
    if "y" in (n1, n2) or "y'" in (n1, n2):
        raise InputError("input axis names collide with output axes y, y'")
    p_in = input_dist.table
    w = mac.pmf
    if copies == 1:
        table = p_in[:, :, None] * w
        axes = (input_dist.axes[0], input_dist.axes[1], ("y", mac.y_alphabet))
    else:
        table = (p_in[:, :, None] * w)[:, :, :, None] * w[:, :, None, :]
        axes = (input_dist.axes[0], input_dist.axes[1],
                ("y", mac.y_alphabet), ("y'", mac.y_alphabet))
    return JointDist(axes, table)


@dataclass(frozen=True)
class ErasureSpec:
    """Parameters of an output erasure stage appended to a channel."""

    erasure_prob: float
    erasure_symbol: str

    def __post_init__(self):
        if not 0.0 <= self.erasure_prob <= 1.0:
            raise InputError(
                f"erasure_prob must lie in [0, 1], got {self.erasure_prob!r}"
            )


def erasure_extend(mac: Mac, spec: ErasureSpec) -> Mac:
    """Compose the channel output with an independent erasure stage.

    With probability ``1 - p`` the new output equals the old one; with
    probability ``p`` it is the erasure symbol, independently of
    everything else. The output alphabet grows by the erasure symbol.
    """
    if spec.erasure_symbol in mac.y_alphabet:
        raise InputError(
            f"erasure symbol {spec.erasure_symbol!r} already in the output alphabet"
        )
    p = spec.erasure_prob
    n1, n2, ny = mac.shape
    new = np.zeros((n1, n2, ny + 1))
    new[:, :, :ny] = (1.0 - p) * mac.pmf
    new[:, :, ny] = p
    name = f"{mac.name}+erasure({p:g})" if mac.name else ""
    return Mac(mac.x1_alphabet, mac.x2_alphabet,
               mac.y_alphabet + (spec.erasure_symbol,), new, name=name)
