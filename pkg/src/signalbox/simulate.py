"""Communication cost of a table and the signal-deficit verdict.

A table is "classical" when the signal it already carries pays for the
communication needed to simulate it with local strategies plus shared
randomness.  Three ingredients meet here:

* the disturbance cost, the unavoidable average weight any simulation
  must place on one-bit strategies (a function of the table's functional
  value alone),
* the signal actually present, measured either as channel information
  (:func:`signalbox.signaling.signal_info`) or as the largest marginal
  shift (:func:`signalbox.correlation.signaling_deltas`),
* a minimal-cost decomposition over the deterministic strategy catalog,
  found two independent ways: a closed-form weight assignment for the
  single-shift family, and a self-contained LP over any basis.

The deficit ``eta = C - S`` is zero exactly when the signal covers the
cost; a positive deficit certifies nonclassicality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlation import (
    FULL_BASIS,
    PLUS_LOCAL_IDS,
    VIOLATING_IDS,
    Correlation,
    StrategyKind,
    catalog,
    disturbance_cost,
    functional_value,
    marginal,
    signaling_deltas,
)
from .errors import DomainError, InfeasibleError, PreconditionError
from .signaling import signal_info
from .simplex import solve_lp

_RESIDUAL_TOL = 1e-9
_CLASSICAL_TOL = 1e-9
# Mixture weights below this are float noise and are dropped from results.
_WEIGHT_CUTOFF = 1e-12


@dataclass(frozen=True)
class Decomposition:
    """Mixture over catalog strategies reproducing a table.

    ``weights`` maps strategy id to probability (zeros omitted),
    ``cost`` is the total weight on one-bit strategies in bits, and
    ``residual`` the max-norm reconstruction error.
    """

    weights: dict
    cost: float
    residual: float


@dataclass(frozen=True)
class ClassificationReport:
    """Everything the signal-deficit criterion looks at.

    ``signal`` is the measure selected by the ``measure`` argument of
    :func:`classify`; both candidates are always carried alongside, with
    their separate verdicts, because they can genuinely disagree.
    """

    functional: float
    disturbance: float
    signal: float
    strength: float
    cost: float
    eta: float
    classical: bool
    signal_mutual_info: float
    signal_delta: float
    classical_by_mutual_info: bool
    classical_by_delta: bool
    alpha_star: float
    b_star: int
    measure: str


def verify_reconstruction(corr: Correlation, decomposition: Decomposition) -> float:
    """Max-norm error between a table and a weighted strategy sum.

    The weights are taken as given; they do not need to sum to one, so
    the function also measures deliberately wrong reconstructions.
    """
    total = np.zeros((2, 2, 2, 2))
    for ident, weight in decomposition.weights.items():
        total += weight * catalog(ident).as_correlation().p
    return float(np.max(np.abs(corr.p - total)))


def _signed_bob_shift(corr: Correlation) -> float:
    """Signed marginal shift of bob's b=0 channel when alice flips a."""
    return float(marginal(corr, "bob", 0, 0)[0]) - float(marginal(corr, "bob", 0, 1)[0])


def closed_form_decompose(corr: Correlation, sigma: float = 0.0) -> Decomposition:
    """Direct weight assignment for tables with one active marginal shift.

    Applies to tables whose only signaling channel is bob's b=0 marginal
    (the other three shifts vanish) with shift magnitude within the
    positivity window for the chosen ``sigma``.  The eight violating
    strategies receive

        symmetric six:  (cost - sigma) / 8
        imbalanced pair: (cost + 3 sigma) / 8 +/- shift / 2

    and the local remainder is solved over the eight locals whose signed
    functional is +2.  ``sigma`` moves weight between the symmetric and
    imbalanced assignments without changing the total cost; any value in
    ``[0, cost]`` yields the same cost and residual.

    Raises :class:`~signalbox.errors.PreconditionError` when several
    shifts are active or the shift exceeds the window, and
    :class:`~signalbox.errors.InfeasibleError` when the local remainder
    leaves the positive span of the +2 locals.
    """
    cost = disturbance_cost(corr)
    if not -1e-12 <= sigma <= cost + 1e-12:
        raise DomainError(f"sigma {sigma} outside [0, {cost}]")
    sigma = min(max(sigma, 0.0), cost)

    deltas = signaling_deltas(corr)
    side_shifts = (deltas.to_bob_at_b1, deltas.to_alice_at_a1, deltas.to_alice_at_a0)
    if max(side_shifts) > 1e-9:
        raise PreconditionError(
            "closed form handles a single active shift (bob at b=0); "
            f"other channels shift by up to {max(side_shifts)}"
        )
    shift = _signed_bob_shift(corr)
    window = (cost + 3.0 * sigma) / 4.0
    if abs(shift) > window + 1e-12:
        raise PreconditionError(
            f"shift {abs(shift)} exceeds the positivity window {window} "
            f"for sigma={sigma}"
        )

    weights = {}
    base = (cost - sigma) / 8.0
    lifted = (cost + 3.0 * sigma) / 8.0
    for ident in VIOLATING_IDS:
        weights[ident] = base
    weights["signal_0_anb"] = lifted + shift / 2.0
    weights["signal_1_canb"] = lifted - shift / 2.0
    for ident, value in weights.items():
        if value < -1e-9:
            raise PreconditionError(
                f"one-bit weight for {ident} came out negative ({value})"
            )
        weights[ident] = max(0.0, value)

    remainder = corr.p.copy()
    for ident, value in weights.items():
        remainder -= value * catalog(ident).as_correlation().p

    columns = np.stack(
        [catalog(ident).as_correlation().p.ravel() for ident in PLUS_LOCAL_IDS],
        axis=1,
    )
    local_w, _, rank, _ = np.linalg.lstsq(columns, remainder.ravel(), rcond=None)
    if rank < columns.shape[1]:
        raise InfeasibleError("local strategy columns are rank deficient")
    if float(local_w.min()) < -1e-9:
        raise InfeasibleError(
            f"local remainder needs a negative weight ({float(local_w.min())})"
        )
    for ident, value in zip(PLUS_LOCAL_IDS, local_w):
        weights[ident] = max(0.0, float(value))

    weights = {k: v for k, v in weights.items() if v > _WEIGHT_CUTOFF}
    one_bit = sum(
        v for k, v in weights.items() if catalog(k).kind is not StrategyKind.LOCAL
    )
    result = Decomposition(weights=weights, cost=one_bit, residual=0.0)
    residual = verify_reconstruction(corr, result)
    if residual > _RESIDUAL_TOL:
        raise InfeasibleError(
            f"closed-form reconstruction misses the table by {residual}"
        )
    return Decomposition(weights=weights, cost=one_bit, residual=residual)


def lp_min_cost(corr: Correlation, basis=None) -> Decomposition:
    """Minimal one-bit weight over a strategy basis, by linear program.

    Decision variables are the mixture weights over ``basis`` (the full
    32-strategy catalog by default).  The equalities pin every table
    entry plus normalization; the objective charges one bit per unit of
    weight on any non-local strategy.  Infeasibility means the table is
    outside the convex hull of the chosen basis.
    """
    ids = FULL_BASIS if basis is None else tuple(basis)
    if not ids:
        raise DomainError("basis must name at least one strategy")
    strategies = [catalog(ident) for ident in ids]
    columns = np.stack([s.as_correlation().p.ravel() for s in strategies], axis=1)
    a = np.vstack([columns, np.ones((1, len(ids)))])
    rhs = np.concatenate([corr.p.ravel(), [1.0]])
    cost_vec = np.array(
        [0.0 if s.kind is StrategyKind.LOCAL else 1.0 for s in strategies]
    )
    solution = solve_lp(cost_vec, a, rhs)
    weights = {}
    for ident, value in zip(ids, solution.x):
        if value > _WEIGHT_CUTOFF:
            weights[ident] = float(value)
    result = Decomposition(
        weights=weights, cost=float(solution.objective), residual=0.0
    )
    return Decomposition(
        weights=weights,
        cost=float(solution.objective),
        residual=verify_reconstruction(corr, result),
    )


def communication_cost(corr: Correlation) -> float:
    """Bits of communication needed to simulate the table.

    Equals ``max(disturbance_cost, largest marginal shift)``: the
    decomposition theorems make both quantities floors, and one of the
    two is always attainable.
    """
    return max(disturbance_cost(corr), signaling_deltas(corr).max)


def classify(
    corr: Correlation, measure: str = "mutual_info", b_set=(0, 1)
) -> ClassificationReport:
    """Signal-deficit verdict for a table.

    ``measure`` selects which signal notion the verdict uses:
    ``"mutual_info"`` for the channel information (bob restricted to
    ``b_set``), ``"delta"`` for the largest marginal shift in any
    direction.  The report carries both measures and both verdicts
    regardless, because they can disagree on the same table.

    A table is classical when the deficit ``eta = C - S`` vanishes,
    i.e. when the observed signal pays for the disturbance cost.
    """
    if measure not in ("mutual_info", "delta"):
        raise DomainError(f"measure must be 'mutual_info' or 'delta', got {measure!r}")
    lam = functional_value(corr)
    cost_floor = disturbance_cost(corr)
    channel = signal_info(corr, b_set=b_set)
    shift_max = signaling_deltas(corr).max

    def verdict(signal):
        total = max(cost_floor, signal)
        eta = total - signal
        return total, eta, eta <= _CLASSICAL_TOL

    _, _, classical_mi = verdict(channel.info)
    _, _, classical_delta = verdict(shift_max)
    signal = channel.info if measure == "mutual_info" else shift_max
    total, eta, classical = verdict(signal)
    return ClassificationReport(
        functional=lam,
        disturbance=cost_floor,
        signal=signal,
        strength=channel.strength,
        cost=total,
        eta=eta,
        classical=classical,
        signal_mutual_info=channel.info,
        signal_delta=shift_max,
        classical_by_mutual_info=classical_mi,
        classical_by_delta=classical_delta,
        alpha_star=channel.alpha_star,
        b_star=channel.b_star,
        measure=measure,
    )


def tsirelson_signal_box() -> Correlation:
    """Functional value 2*sqrt(2) with the saturating b=0 channel.

    The correlators match :func:`signalbox.quantum.tsirelson_box`, but
    the marginals are skewed so that bob's b=0 channel is exactly
    {1, 1/2}, the same channel the saturating measurement settings
    produce.  Under the channel-information measure the verdict is
    nonclassical with deficit (sqrt(2) - 1) - (log2(5) - 2); under the
    shift measure the shift of 1/2 covers the cost and the verdict flips
    to classical.  The two verdicts disagreeing is the point of the
    construction.
    """
    root = math.sqrt(2.0)
    hi = (2.0 + root) / 8.0
    lo = (2.0 - root) / 8.0
    p = np.empty((2, 2, 2, 2))
    # a=0, b=0: bob answers 0 with certainty, alice is biased.
    p[0, 0] = np.array([[2.0 * hi, 0.0], [2.0 * lo, 0.0]])
    # a=1, b=0: uniform marginals, anticorrelated pattern.
    p[1, 0] = np.array([[lo, hi], [hi, lo]])
    # b=1: uniform marginals, correlated pattern, no shift.
    p[0, 1] = np.array([[hi, lo], [lo, hi]])
    p[1, 1] = np.array([[hi, lo], [lo, hi]])
    return Correlation(p)


def _sig12(value: float) -> float:
    return float(f"{value:.12g}")


def decomposition_json_dict(decomposition: Decomposition) -> dict:
    """JSON payload with weights keyed by strategy id, 12 digits."""
    return {
        "weights": {
            ident: _sig12(w) for ident, w in sorted(decomposition.weights.items())
        },
        "cost": _sig12(decomposition.cost),
        "residual": _sig12(decomposition.residual),
    }


def report_json_dict(report: ClassificationReport) -> dict:
    """JSON payload for a classification report, 12 digits."""
    return {
        "lambda": _sig12(report.functional),
        "c_lambda": _sig12(report.disturbance),
        "S": _sig12(report.signal),
        "s": _sig12(report.strength),
        "C": _sig12(report.cost),
        "eta": _sig12(report.eta),
        "classical": report.classical,
        "S_mutual_info": _sig12(report.signal_mutual_info),
        "S_delta": _sig12(report.signal_delta),
        "classical_mutual_info": report.classical_by_mutual_info,
        "classical_delta": report.classical_by_delta,
        "alpha_star": _sig12(report.alpha_star),
        "b_star": report.b_star,
        "measure": report.measure,
    }
