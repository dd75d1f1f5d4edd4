"""Capacity maximization over input simplices.

The workhorse is the classical alternating-maximization capacity
iteration with its two-sided stopping certificate: at every step the
current mutual information is a lower bound on capacity and the largest
per-input divergence from the mixture output is an upper bound, so the
loop can stop with a guaranteed gap instead of mere stagnation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import entropy_bits
from .channel import ConditionalPmf, Mac, Pmf
from .errors import InputError

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10000


@dataclass(frozen=True, eq=False)
class OptResult:
    """Outcome of a capacity maximization.

    ``value`` is the mutual information of ``argmax_input`` through the
    channel (a certified lower bound on capacity, within the requested
    tolerance of it when ``converged``); ``output_dist`` is the induced
    output distribution.
    """

    value: float
    argmax_input: Pmf
    output_dist: Pmf
    iterations: int
    converged: bool


def _divergence_rows(rows: np.ndarray, py: np.ndarray) -> np.ndarray:
    """D(row_x || py) in bits for every input x, with 0 log 0 = 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(rows > 0.0, rows / np.where(py > 0.0, py, 1.0), 1.0)
        terms = np.where(rows > 0.0, rows * np.log2(ratio), 0.0)
        # An output reachable from x but not under py means infinite gain.
        blown = (rows > 0.0) & (py <= 0.0)
        terms = np.where(blown, np.inf, terms)
    return terms.sum(axis=1)


def blahut_arimoto(ch: ConditionalPmf, tol: float = DEFAULT_TOL,
                   max_iter: int = DEFAULT_MAX_ITER,
                   init: np.ndarray | None = None) -> OptResult:
    """Capacity of a point-to-point channel with a convergence certificate.

    Stops once the gap between the per-input divergence maximum (upper
    bound) and its average under the current input (lower bound) falls
    below ``tol`` bits; ``converged`` is False when ``max_iter`` is
    exhausted first. The returned value is the exact mutual information
    of the returned input, so it never overshoots capacity.

    ``init`` optionally replaces the uniform starting input; it must be
    strictly positive for the iteration to be able to grow every symbol.
    """
    if tol <= 0.0:
        raise InputError(f"tol must be positive, got {tol!r}")
    rows = ch.rows
    m = rows.shape[0]
    if init is None:
        r = np.full(m, 1.0 / m)
    else:
        r = np.asarray(init, dtype=np.float64)
        if r.shape != (m,) or np.any(r <= 0.0):
            raise InputError("init must be a strictly positive vector over the inputs")
        r = r / r.sum()

    lower = -np.inf
    upper = np.inf
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        py = r @ rows
        div = _divergence_rows(rows, py)
        pos = r > 0.0  # div is finite wherever r is positive
        new_lower = float(r[pos] @ div[pos])
        new_upper = float(div.max())
        assert new_lower >= lower - 1e-12, "capacity lower bound decreased"
        lower, upper = new_lower, new_upper
        if upper - lower <= tol:
            converged = True
            break
        finite = np.isfinite(div)
        if not finite.all():
            # An input underflowed to zero mass yet reaches an otherwise
            # unreachable output; give it a large finite boost instead of
            # propagating inf - inf.
            div = np.where(finite, div, div[finite].max(initial=0.0) + 64.0)
        shift = div - div.max()
        r = r * np.exp2(shift)
        r = r / r.sum()

    py = r @ rows
    value = lower if lower > 0.0 else 0.0
    return OptResult(
        value=value,
        argmax_input=Pmf(ch.input_alphabet, r),
        output_dist=Pmf(ch.output_alphabet, py),
        iterations=iterations,
        converged=converged,
    )


def product_labels(a1, a2) -> tuple[str, ...]:
    """Labels for the flattened product alphabet, row-major in (x1, x2)."""
    return tuple(f"({s},{t})" for s in a1 for t in a2)


def maximize_joint_mi(mac: Mac, tol: float = DEFAULT_TOL,
                      max_iter: int = DEFAULT_MAX_ITER) -> OptResult:
    """max over joint inputs p(x1, x2) of I(X1, X2; Y).

    Treats the input pair as one super-symbol and runs the capacity
    iteration on the flattened channel; the maximizing joint comes back
    as a distribution over the product alphabet, row-major in (x1, x2).
    """
    n1, n2, ny = mac.shape
    flat = ConditionalPmf(
        product_labels(mac.x1_alphabet, mac.x2_alphabet),
        mac.y_alphabet,
        mac.pmf.reshape(n1 * n2, ny),
    )
    return blahut_arimoto(flat, tol=tol, max_iter=max_iter)


def max_support_input(ch: ConditionalPmf, tol: float = DEFAULT_TOL,
                      max_iter: int = DEFAULT_MAX_ITER) -> OptResult:
    """A capacity-achieving input in the relative interior of the optimal face.

    The set of capacity-achieving inputs is a convex face of the simplex.
    One capacity run per input symbol is launched from a start biased
    toward that symbol's vertex; the uniform average of the resulting
    maximizers lands in the interior of the face (mutual information is
    concave in the input, so the average is still within tolerance of
    capacity), and one final refinement sweep re-tightens the value. The
    result keeps positive mass on every symbol that any optimum uses,
    which is what downstream support arguments need.
    """
    rows = ch.rows
    m = rows.shape[0]
    beta = 0.1
    total_iters = 0
    all_converged = True
    solutions = []
    for i in range(m):
        start = np.full(m, beta / m)
        start[i] += 1.0 - beta
        res = blahut_arimoto(ch, tol=tol, max_iter=max_iter, init=start)
        total_iters += res.iterations
        all_converged = all_converged and res.converged
        solutions.append(res.argmax_input.probs)
    avg = np.mean(solutions, axis=0)

    # One refinement sweep; multiplicative, so it cannot kill support.
    py = avg @ rows
    div = _divergence_rows(rows, py)
    finite = np.isfinite(div)
    shift = div - div[finite].max() if finite.any() else div
    refined = avg * np.exp2(np.where(finite, shift, 0.0))
    refined = refined / refined.sum()

    py = refined @ rows
    value = float(entropy_bits(py) - refined @ entropy_bits(rows, axis=1))
    return OptResult(
        value=value if value > 0.0 else 0.0,
        argmax_input=Pmf(ch.input_alphabet, refined),
        output_dist=Pmf(ch.output_alphabet, py),
        iterations=total_iters + 1,
        converged=all_converged,
    )
