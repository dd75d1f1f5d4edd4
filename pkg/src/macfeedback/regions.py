"""Achievable-rate frontier and cut-set outer bounds.

The inner bound is the classical Cover-Leung region: rate pairs
satisfying, for some auxiliary distribution ``p(u) p(x1|u) p(x2|u)``,

    R1      <= I(X1; Y | U, X2)
    R2      <= I(X2; Y | U, X1)
    R1 + R2 <= I(X1, X2; Y).

Frontier points are found by weighted-sum scalarization over the two
non-trivial corners of each pentagon, maximized by projected coordinate
ascent with finite-difference gradients over the factored simplices.
Ascent may stop at a local optimum; every emitted point is nevertheless a
certified achievable point because its pentagon is re-evaluated exactly
from the stored auxiliary input.

Outer bounds are the cut-set values: per-user bounds that give the free
user one or two looks at the output depending on the feedback model, and
the joint-input sum-rate bound.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from ._util import entropy_bits, project_rows_to_simplex
from .channel import ConditionalPmf, JointDist, Mac, Pmf
from .errors import InputError
from .infotheory import conditional_mi, mutual_information
from .optimize import DEFAULT_TOL, blahut_arimoto, max_support_input, maximize_joint_mi

RATE_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class CLInput:
    """An auxiliary variable with conditionally independent inputs.

    Stored factored as ``p(u)``, ``p(x1|u)``, ``p(x2|u)``; the
    conditional independence of the two inputs given U is structural, it
    is never re-estimated from a joint table.
    """

    p_u: Pmf
    p_x1_given_u: ConditionalPmf
    p_x2_given_u: ConditionalPmf

    def __post_init__(self):
        if (self.p_x1_given_u.input_alphabet != self.p_u.alphabet
                or self.p_x2_given_u.input_alphabet != self.p_u.alphabet):
            raise InputError("CLInput: conditionals not indexed by the U alphabet")

    @property
    def u_cardinality(self) -> int:
        return len(self.p_u.alphabet)

    def joint_with(self, mac: Mac) -> JointDist:
        """The joint law p(u) p(x1|u) p(x2|u) p(y|x1, x2)."""
        a1 = self.p_x1_given_u.output_alphabet
        a2 = self.p_x2_given_u.output_alphabet
        if a1 != mac.x1_alphabet or a2 != mac.x2_alphabet:
            raise InputError("CLInput alphabets do not match the channel")
        table = (self.p_u.probs[:, None, None, None]
                 * self.p_x1_given_u.rows[:, :, None, None]
                 * self.p_x2_given_u.rows[:, None, :, None]
                 * mac.pmf[None, :, :, :])
        axes = (("u", self.p_u.alphabet), ("x1", mac.x1_alphabet),
                ("x2", mac.x2_alphabet), ("y", mac.y_alphabet))
        return JointDist(axes, table)

    def to_dict(self) -> dict:
        return {
            "u": list(self.p_u.alphabet),
            "p_u": [float(v) for v in self.p_u.probs],
            "p_x1_given_u": [[float(v) for v in row] for row in self.p_x1_given_u.rows],
            "p_x2_given_u": [[float(v) for v in row] for row in self.p_x2_given_u.rows],
        }


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float

    def __post_init__(self):
        for name, v in (("r1", self.r1), ("r2", self.r2)):
            if v < -RATE_FLOOR:
                raise InputError(f"RatePair: {name} is negative ({v!r})")
        object.__setattr__(self, "r1", max(float(self.r1), 0.0))
        object.__setattr__(self, "r2", max(float(self.r2), 0.0))

    def weighted(self, w1: float, w2: float) -> float:
        return w1 * self.r1 + w2 * self.r2


@dataclass(frozen=True)
class FrontierPoint:
    weights: tuple[float, float]
    rates: RatePair
    value: float
    witness: CLInput


@dataclass(frozen=True)
class RegionFrontier:
    """Scalarized frontier points, sorted from the R1 axis toward R2."""

    points: tuple[FrontierPoint, ...]
    provenance: str  # "inner_bound" or "outer_bound"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("w1,w2,R1,R2,provenance\n")
        for pt in self.points:
            buf.write(f"{pt.weights[0]!r},{pt.weights[1]!r},"
                      f"{pt.rates.r1!r},{pt.rates.r2!r},{self.provenance}\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "points": [
                {
                    "w1": pt.weights[0],
                    "w2": pt.weights[1],
                    "R1": pt.rates.r1,
                    "R2": pt.rates.r2,
                    "value": pt.value,
                    "witness": pt.witness.to_dict(),
                }
                for pt in self.points
            ],
        }


def cover_leung_bounds(mac: Mac, q: CLInput) -> tuple[float, float, float]:
    """The three pentagon bounds (b1, b2, bsum) for one auxiliary input."""
    joint = q.joint_with(mac)
    b1 = conditional_mi(joint, "x1", "y", ("u", "x2"))
    b2 = conditional_mi(joint, "x2", "y", ("u", "x1"))
    bsum = mutual_information(joint, ("x1", "x2"), "y")
    return b1, b2, bsum


def default_weight_fan(n: int = 17) -> list[tuple[float, float]]:
    """n weight directions sweeping from (1, 0) to (0, 1)."""
    return [(1.0 - k / (n - 1), k / (n - 1)) for k in range(n)]


# ---------------------------------------------------------------------------
# Batched pentagon evaluation: the ascent inner loop and the lattice oracle
# both evaluate many auxiliary inputs at once.


def _batch_entropy(t: np.ndarray) -> np.ndarray:
    return entropy_bits(t.reshape(t.shape[0], -1), axis=1)


def batch_pentagon(mac_pmf: np.ndarray, p_u: np.ndarray, p_x1: np.ndarray,
                   p_x2: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pentagon bounds for a batch of factored auxiliary inputs.

    Shapes: ``p_u (B, U)``, ``p_x1 (B, U, n1)``, ``p_x2 (B, U, n2)``;
    returns three length-B arrays (b1, b2, bsum).
    """
    j = (p_u[:, :, None, None, None]
         * p_x1[:, :, :, None, None]
         * p_x2[:, :, None, :, None]
         * mac_pmf[None, None, :, :, :])
    m_ux1x2 = j.sum(axis=4)
    m_ux2y = j.sum(axis=2)
    m_ux1y = j.sum(axis=3)
    m_x1x2y = j.sum(axis=1)
    m_ux1 = m_ux1x2.sum(axis=3)
    m_ux2 = m_ux1x2.sum(axis=2)
    m_x1x2 = m_ux1x2.sum(axis=1)
    m_y = m_x1x2y.sum(axis=(1, 2))

    h_full = _batch_entropy(j)
    h_ux1x2 = _batch_entropy(m_ux1x2)
    h_ux2y = _batch_entropy(m_ux2y)
    h_ux1y = _batch_entropy(m_ux1y)
    h_ux1 = _batch_entropy(m_ux1)
    h_ux2 = _batch_entropy(m_ux2)
    h_x1x2 = _batch_entropy(m_x1x2)
    h_x1x2y = _batch_entropy(m_x1x2y)
    h_y = _batch_entropy(m_y)

    b1 = np.maximum(h_ux1x2 + h_ux2y - h_ux2 - h_full, 0.0)
    b2 = np.maximum(h_ux1x2 + h_ux1y - h_ux1 - h_full, 0.0)
    bsum = np.maximum(h_x1x2 + h_y - h_x1x2y, 0.0)
    return b1, b2, bsum


def pentagon_corners(b1, b2, bsum, w1: float, w2: float):
    """Best weighted value over the pentagon and the achieving corner.

    For nonnegative weights the optimum sits at one of the two dominant
    corners, (b1, min(b2, bsum - b1)) or (min(b1, bsum - b2), b2).
    Returns (value, r1, r2) arrays for batched inputs.
    """
    b1 = np.asarray(b1)
    r2a = np.minimum(b2, bsum - b1)
    r1b = np.minimum(b1, bsum - b2)
    val_a = w1 * b1 + w2 * r2a
    val_b = w1 * r1b + w2 * np.asarray(b2)
    use_a = val_a >= val_b
    value = np.where(use_a, val_a, val_b)
    r1 = np.where(use_a, b1, r1b)
    r2 = np.where(use_a, r2a, b2)
    return value, r1, r2


# ---------------------------------------------------------------------------
# Projected finite-difference ascent over (p_u, p_x1|u, p_x2|u).

_FD_STEP = 1e-4
_STEP_LADDER = (1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001)
_IMPROVE_TOL = 1e-11


class _AscentProblem:
    def __init__(self, mac: Mac, u_card: int, w1: float, w2: float):
        self.pmf = mac.pmf
        self.u = u_card
        self.n1, self.n2, _ = mac.shape
        self.w1 = w1
        self.w2 = w2
        self.dim = u_card * (1 + self.n1 + self.n2)

    def split(self, theta: np.ndarray):
        b = theta.shape[0]
        u, n1, n2 = self.u, self.n1, self.n2
        p_u = theta[:, :u]
        p1 = theta[:, u:u + u * n1].reshape(b, u, n1)
        p2 = theta[:, u + u * n1:].reshape(b, u, n2)
        return p_u, p1, p2

    def project(self, theta: np.ndarray) -> np.ndarray:
        p_u, p1, p2 = self.split(theta)
        return np.concatenate([
            project_rows_to_simplex(p_u),
            project_rows_to_simplex(p1).reshape(theta.shape[0], -1),
            project_rows_to_simplex(p2).reshape(theta.shape[0], -1),
        ], axis=1)

    def value(self, theta: np.ndarray) -> np.ndarray:
        proj = self.project(theta)
        p_u, p1, p2 = self.split(proj)
        b1, b2, bsum = batch_pentagon(self.pmf, p_u, p1, p2)
        value, _, _ = pentagon_corners(b1, b2, bsum, self.w1, self.w2)
        return value

    def ascend_many(self, theta0: np.ndarray,
                    max_iter: int = 120) -> tuple[np.ndarray, np.ndarray]:
        """Run one independent ascent per row of ``theta0``, in lockstep.

        Rows never interact; batching exists purely to amortize array
        overhead. Each row stops after two consecutive non-improving
        iterations (or a vanishing gradient) and the loop ends when every
        row has stopped. Returns the final (projected) parameter rows and
        their objective values.
        """
        s, dim = theta0.shape
        theta = self.project(theta0)
        best = self.value(theta)
        stall = np.zeros(s, dtype=np.int64)
        eye = np.eye(dim)
        ladder = np.asarray(_STEP_LADDER)
        for _ in range(max_iter):
            idx = np.flatnonzero(stall < 2)
            if idx.size == 0:
                break
            th = theta[idx]
            probes = (th[:, None, :] + _FD_STEP * eye[None, :, :]).reshape(-1, dim)
            grads = (self.value(probes).reshape(idx.size, dim)
                     - best[idx, None]) / _FD_STEP
            scale = np.abs(grads).max(axis=1)
            alive = scale > 0.0
            dirs = grads / np.maximum(scale, 1e-300)[:, None]
            cands = th[:, None, :] + ladder[None, :, None] * dirs[:, None, :]
            cvals = self.value(cands.reshape(-1, dim)).reshape(idx.size, -1)
            kbest = np.argmax(cvals, axis=1)
            cbest = cvals[np.arange(idx.size), kbest]
            improved = alive & (cbest > best[idx] + _IMPROVE_TOL)
            accepted = self.project(cands[np.arange(idx.size), kbest])
            gi = idx[improved]
            theta[gi] = accepted[improved]
            best[gi] = cbest[improved]
            stall[gi] = 0
            stall[idx[~improved]] += 1
            stall[idx[~alive]] = 2
        return theta, best


def _structured_starts(mac: Mac, u_card: int, tol: float) -> list[np.ndarray]:
    """Deterministic ascent seeds: uniform plus one per constant-partner corner."""
    from .channel import induced_channel

    n1, n2, _ = mac.shape
    dim = u_card * (1 + n1 + n2)
    starts = []

    uniform = np.concatenate([
        np.full(u_card, 1.0 / u_card),
        np.full(u_card * n1, 1.0 / n1),
        np.full(u_card * n2, 1.0 / n2),
    ])
    starts.append(uniform)

    def corner(point_user: int, sym_idx: int) -> np.ndarray:
        theta = uniform.copy()
        theta[:u_card] = 0.0
        theta[0] = 1.0
        if point_user == 2:
            sym = mac.x2_alphabet[sym_idx]
            best1 = max_support_input(induced_channel(mac, 2, sym), tol=tol)
            row1 = best1.argmax_input.probs
            row2 = np.zeros(n2)
            row2[sym_idx] = 1.0
        else:
            sym = mac.x1_alphabet[sym_idx]
            best2 = max_support_input(induced_channel(mac, 1, sym), tol=tol)
            row2 = best2.argmax_input.probs
            row1 = np.zeros(n1)
            row1[sym_idx] = 1.0
        theta[u_card:u_card + n1] = row1
        theta[u_card + u_card * n1:u_card + u_card * n1 + n2] = row2
        assert theta.shape == (dim,)
        return theta

    for j in range(n2):
        starts.append(corner(2, j))
    for i in range(n1):
        starts.append(corner(1, i))
    return starts


def cover_leung_frontier(mac: Mac, weights=None, restarts: int = 25,
                         u_card: int | None = None, seed: int = 0,
                         tol: float = DEFAULT_TOL,
                         max_iter: int = 120) -> RegionFrontier:
    """Scalarized inner-bound frontier over auxiliary inputs.

    For each weight direction the pentagon corner objective is maximized
    by projected ascent from deterministic structured starts plus
    ``restarts`` seeded random starts. Every returned point re-evaluates
    its pentagon exactly from the stored witness, so points are certified
    achievable regardless of how well the ascent did.

    The default auxiliary cardinality is ``|X1| |X2| + 2``, a standard
    support-size heuristic with slack; override ``u_card`` to taste.
    """
    if weights is None:
        weights = default_weight_fan()
    weights = [(float(w1), float(w2)) for w1, w2 in weights]
    for w1, w2 in weights:
        if w1 < 0 or w2 < 0 or (w1 == 0 and w2 == 0):
            raise InputError(f"weights must be nonnegative and not both zero: ({w1}, {w2})")
    n1, n2, _ = mac.shape
    if u_card is None:
        u_card = n1 * n2 + 2
    if u_card < 1:
        raise InputError("u_card must be at least 1")

    structured = _structured_starts(mac, u_card, tol)
    root = np.random.SeedSequence(seed)
    weight_seeds = root.spawn(len(weights))

    points = []
    for (w1, w2), wseed in zip(weights, weight_seeds):
        problem = _AscentProblem(mac, u_card, w1, w2)
        rng = np.random.default_rng(wseed)
        starts = list(structured)
        for _ in range(restarts):
            starts.append(_random_start(rng, u_card, n1, n2))
        thetas, vals = problem.ascend_many(np.array(starts), max_iter=max_iter)
        best_theta = thetas[int(np.argmax(vals))]
        q = _theta_to_clinput(best_theta, problem, mac)
        b1, b2, bsum = cover_leung_bounds(mac, q)
        vals, r1, r2 = pentagon_corners(
            np.array([b1]), np.array([b2]), np.array([bsum]), w1, w2)
        points.append(FrontierPoint(
            weights=(w1, w2),
            rates=RatePair(float(r1[0]), float(r2[0])),
            value=float(vals[0]),
            witness=q,
        ))

    points.sort(key=lambda pt: pt.weights[1] / (pt.weights[0] + pt.weights[1]))
    return RegionFrontier(tuple(points), provenance="inner_bound")


def _random_start(rng: np.random.Generator, u_card: int, n1: int, n2: int) -> np.ndarray:
    return np.concatenate([
        rng.dirichlet(np.ones(u_card)),
        rng.dirichlet(np.ones(n1), size=u_card).ravel(),
        rng.dirichlet(np.ones(n2), size=u_card).ravel(),
    ])


def _theta_to_clinput(theta: np.ndarray, problem: _AscentProblem, mac: Mac) -> CLInput:
    proj = problem.project(theta[None, :])
    p_u, p1, p2 = problem.split(proj)
    u_labels = tuple(f"u{k}" for k in range(problem.u))
    return CLInput(
        p_u=Pmf(u_labels, p_u[0]),
        p_x1_given_u=ConditionalPmf(u_labels, mac.x1_alphabet, p1[0]),
        p_x2_given_u=ConditionalPmf(u_labels, mac.x2_alphabet, p2[0]),
    )


# ---------------------------------------------------------------------------
# Cut-set outer bounds.


def two_look_channel(mac: Mac, user: int, fixed_symbol: str) -> ConditionalPmf:
    """Channel from the free user to a pair of independent outputs.

    The partner's symbol is held fixed; each output coordinate is an
    independent draw of the channel given the inputs.
    """
    from .channel import induced_channel

    one = induced_channel(mac, fix_user=(2 if user == 1 else 1),
                          fixed_symbol=fixed_symbol)
    rows = one.rows
    ny = rows.shape[1]
    pair_rows = (rows[:, :, None] * rows[:, None, :]).reshape(rows.shape[0], ny * ny)
    pair_alpha = tuple(f"({a},{b})" for a in one.output_alphabet
                       for b in one.output_alphabet)
    return ConditionalPmf(one.input_alphabet, pair_alpha, pair_rows)


def cutset_single_rate(mac: Mac, user: int, model: str,
                       tol: float = DEFAULT_TOL) -> float:
    """Cut-set bound on one user's rate under the given feedback model.

    With perfect feedback the partner's feedback signal is the output
    itself, so the bound collapses to the best single-look capacity over
    the partner's constants. With one or two independent feedback looks
    the free user's cut carries the output plus one independent copy, so
    the bound is the best two-look capacity; the two independent-look
    models give the same number because only the partner's feedback
    signal enters this cut.
    """
    if user not in (1, 2):
        raise InputError(f"user must be 1 or 2, got {user!r}")
    model = str(model).upper()
    if model not in ("PF", "IF", "DF"):
        raise InputError(f"model must be PF, IF or DF, got {model!r}")
    from .channel import induced_channel

    other = 2 if user == 1 else 1
    other_alpha = mac.x2_alphabet if user == 1 else mac.x1_alphabet
    best = 0.0
    for sym in other_alpha:
        if model == "PF":
            ch = induced_channel(mac, fix_user=other, fixed_symbol=sym)
        else:
            ch = two_look_channel(mac, user, sym)
        best = max(best, blahut_arimoto(ch, tol=tol).value)
    return best


def cutset_sum_rate(mac: Mac, tol: float = DEFAULT_TOL) -> float:
    """Cut-set bound on the sum rate: the best joint-input information."""
    return maximize_joint_mi(mac, tol=tol).value
