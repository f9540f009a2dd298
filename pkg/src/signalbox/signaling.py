"""Information carried by the setting-to-marginal signaling channel.

When a correlation table signals from alice to bob, bob's marginal at a
fixed setting ``b`` depends on alice's setting ``a``.  That dependence is
a binary channel: input ``a`` with prior ``(alpha, 1 - alpha)``, output
``y``.  This module measures the channel two ways.

* :func:`signal_strength` is the raw marginal shift, the largest change
  of ``P(y = 0)`` when alice flips her setting.
* :func:`signal_info` is the largest mutual information the channel can
  carry over any input prior, in bits.

Both look only at the alice-to-bob direction, which is the one a
sequential measurement can exercise.  Use
:func:`signalbox.correlation.signaling_deltas` for all four directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .correlation import Correlation, catalog, marginal, mix
from .errors import DomainError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def binary_entropy(q: float) -> float:
    """Entropy of a (q, 1 - q) coin in bits, with 0 log 0 = 0."""
    if q < -1e-12 or q > 1.0 + 1e-12:
        raise DomainError(f"binary_entropy argument {q} outside [0, 1]")
    q = min(1.0, max(0.0, q))
    if q == 0.0 or q == 1.0:
        return 0.0
    return -q * math.log2(q) - (1.0 - q) * math.log2(1.0 - q)


def channel_mutual_info(alpha: float, p0: float, p1: float) -> float:
    """Mutual information of a binary-input channel, in bits.

    The input is 0 with probability ``alpha``; the output is 0 with
    probability ``p0`` or ``p1`` depending on the input.  Computed as
    output entropy minus average conditional entropy.
    """
    if alpha < -1e-12 or alpha > 1.0 + 1e-12:
        raise DomainError(f"input weight {alpha} outside [0, 1]")
    alpha = min(1.0, max(0.0, alpha))
    blended = alpha * p0 + (1.0 - alpha) * p1
    return (
        binary_entropy(blended)
        - alpha * binary_entropy(p0)
        - (1.0 - alpha) * binary_entropy(p1)
    )


def _golden_max(fn, lo: float, hi: float, tol: float):
    """Golden-section maximum of a unimodal function on [lo, hi]."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fn(d)
    mid = 0.5 * (a + b)
    return mid, fn(mid)


def _best_input_weight(p0: float, p1: float, tol: float):
    """Maximize the channel information over the input prior."""
    if abs(p0 - p1) < 1e-15:
        return 0.5, 0.0

    def fn(alpha: float) -> float:
        return channel_mutual_info(alpha, p0, p1)

    alpha, value = _golden_max(fn, 0.0, 1.0, tol)
    # The objective is concave in alpha, so the search above is already
    # global.  A coarse grid guards the implementation anyway: if the
    # grid wins by more than rounding, refine around the grid optimum.
    grid_alpha, grid_value = max(
        ((k / 100.0, fn(k / 100.0)) for k in range(101)), key=lambda item: item[1]
    )
    if grid_value > value + 1e-9:
        fine_alpha, fine_value = max(
            ((k / 10000.0, fn(k / 10000.0)) for k in range(10001)),
            key=lambda item: item[1],
        )
        lo = max(0.0, fine_alpha - 1e-4)
        hi = min(1.0, fine_alpha + 1e-4)
        alpha, value = _golden_max(fn, lo, hi, tol)
        if fine_value > value:
            alpha, value = fine_alpha, fine_value
    return alpha, value


@dataclass(frozen=True)
class SignalReport:
    """Outcome of the channel analysis of one correlation table.

    ``info`` is the best mutual information in bits, attained with bob
    setting ``b_star`` and input prior ``alpha_star``.  ``strength`` is
    the largest raw marginal shift over the same settings.
    """

    strength: float
    info: float
    alpha_star: float
    b_star: int


def _channel(corr: Correlation, b: int):
    p0 = float(marginal(corr, "bob", b, 0)[0])
    p1 = float(marginal(corr, "bob", b, 1)[0])
    return p0, p1


def _check_b_set(b_set) -> tuple:
    settings = tuple(b_set)
    if not settings:
        raise DomainError("b_set must name at least one bob setting")
    for b in settings:
        if b not in (0, 1):
            raise DomainError(f"bob setting must be 0 or 1, got {b!r}")
    return settings


def signal_strength(corr: Correlation, b_set=(0, 1)) -> float:
    """Largest alice-to-bob marginal shift over the given bob settings."""
    settings = _check_b_set(b_set)
    gaps = []
    for b in settings:
        p0, p1 = _channel(corr, b)
        gaps.append(abs(p0 - p1))
    return max(gaps)


def signal_info(corr: Correlation, b_set=(0, 1), tol: float = 1e-10) -> SignalReport:
    """Best-case information of the alice-to-bob channel, in bits.

    For each bob setting in ``b_set`` the pair of conditional marginals
    forms a binary channel; the input prior is optimized to ``tol`` by
    golden-section search.  The report keeps the winning setting and
    prior.  Ties go to the setting listed first.
    """
    settings = _check_b_set(b_set)
    best = None
    strength = 0.0
    for b in settings:
        p0, p1 = _channel(corr, b)
        strength = max(strength, abs(p0 - p1))
        alpha, value = _best_input_weight(p0, p1, tol)
        if best is None or value > best[0] + 1e-15:
            best = (value, alpha, b)
    info, alpha_star, b_star = best
    return SignalReport(strength=strength, info=info, alpha_star=alpha_star, b_star=b_star)


def unbalanced_pr(p: float) -> Correlation:
    """Two-strategy signaling mixture with functional value 4 for every p.

    Mixes ``signal_0_anb`` with weight ``p`` against ``signal_1_canb``.
    At ``p = 1/2`` the table is exactly :func:`signalbox.correlation.pr_box`;
    away from the midpoint the mixture trades outcome randomness for
    marginal signaling while the functional stays at 4.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"mixing weight {p} outside [0, 1]")
    return mix(
        [p, 1.0 - p],
        [
            catalog("signal_0_anb").as_correlation(),
            catalog("signal_1_canb").as_correlation(),
        ],
    )


@dataclass(frozen=True)
class RandomnessReport:
    """Randomness versus signal bookkeeping for :func:`unbalanced_pr`.

    ``intrinsic`` is the local outcome randomness min(p, 1 - p) read off
    alice's marginal, ``strength`` the alice-to-bob marginal shift, and
    ``tradeoff`` their weighted sum ``strength + 2 * intrinsic``, which
    this family pins at 1.
    """

    p: float
    intrinsic: float
    strength: float
    tradeoff: float


def randomness_report(p: float) -> RandomnessReport:
    """Evaluate the randomness-signal tradeoff of :func:`unbalanced_pr`."""
    table = unbalanced_pr(p)
    alice = marginal(table, "alice", 0, 0)
    intrinsic = float(min(alice[0], alice[1]))
    strength = signal_strength(table)
    return RandomnessReport(
        p=p,
        intrinsic=intrinsic,
        strength=strength,
        tradeoff=strength + 2.0 * intrinsic,
    )


def cloning_violation(p: float) -> float:
    """Shortfall of the signal strength below its deterministic ceiling.

    For ``unbalanced_pr(p)`` with ``p`` in [0, 1/2] the marginal shift is
    ``1 - 2p``, so the shortfall is ``2p``: exactly twice the intrinsic
    randomness the mixture injects.  A perfect broadcast of alice's
    setting would need the shortfall to vanish.
    """
    if not 0.0 <= p <= 0.5:
        raise DomainError(f"mixing weight {p} outside [0, 1/2]")
    return 1.0 - signal_strength(unbalanced_pr(p))
