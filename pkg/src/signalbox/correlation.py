"""Two-setting, two-outcome bipartite correlation tables.

A correlation is stored as a rank-4 array ``p[a][b][x][y]``: the joint
probability that the first party (alice) sees outcome label ``x`` and the
second party (bob) sees outcome label ``y``, given settings ``a`` and ``b``.
Settings and outcome labels are both in {0, 1}.  An outcome label ``l``
corresponds to the measurement value ``(-1) ** l``, so label 0 is the +1
outcome.

The figure of merit throughout is the four-correlator combination

    E(0,0) + E(0,1) - E(1,0) + E(1,1)

whose absolute value is at most 2 for any mixture of local deterministic
strategies and reaches 4 on the box returned by :func:`pr_box`.

The module also ships a catalog of deterministic strategies.  Identifiers
encode the outcome rules directly.  ``local_<xt>_<yt>`` means alice plays
``xt`` (one of ``0``, ``1``, ``a``, ``na`` for the constant, her setting,
or its negation) and bob plays ``yt`` (same grammar with ``b``).  The
``signal_<xt>_<yt>`` family allows either rule to read both settings; the
product tokens are ``ab``, ``anb``, ``nab``, ``nanb`` for the conjunctions
``a AND b``, ``a AND (NOT b)`` and so on, with a ``c`` prefix for their
complements.  A strategy whose x-rule mentions ``b`` signals toward alice,
one whose y-rule mentions ``a`` signals toward bob.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    NegativeProbabilityError,
    NormalizationError,
    UnknownStrategyError,
    WeightError,
)

NORMALIZATION_TOL = 1e-9
NEGATIVITY_TOL = 1e-9

# Value of outcome label l is (-1) ** l.
OUTCOME_VALUES = np.array([1.0, -1.0])

# Sign carried by E(a, b) in the functional: negative exactly at (1, 0).
FUNCTIONAL_SIGNS = np.array([[1.0, 1.0], [-1.0, 1.0]])


@dataclass(frozen=True, eq=False)
class Correlation:
    """Validated joint outcome table ``p[a][b][x][y]``.

    The wrapped array is coerced to float64, checked for shape,
    negativity and per-setting normalization, and frozen read-only.
    Entries in ``[-1e-9, 0)`` are treated as rounding noise and clamped
    to zero; anything more negative raises
    :class:`~signalbox.errors.NegativeProbabilityError`.
    """

    p: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.p, dtype=float)
        if arr.shape != (2, 2, 2, 2):
            raise DomainError(
                f"correlation table must have shape (2, 2, 2, 2), got {arr.shape}"
            )
        low = float(arr.min())
        if low < -NEGATIVITY_TOL:
            raise NegativeProbabilityError(
                f"probability entry {low} is negative beyond tolerance"
            )
        arr[arr < 0.0] = 0.0
        sums = arr.sum(axis=(2, 3))
        worst = float(np.max(np.abs(sums - 1.0)))
        if worst > NORMALIZATION_TOL:
            raise NormalizationError(
                f"per-setting outcome sums deviate from 1 by {worst}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)

    def expectation(self, a: int, b: int) -> float:
        """Correlator E(a, b) of the two outcome values at one setting pair."""
        _check_setting(a)
        _check_setting(b)
        return float(
            np.einsum("xy,x,y->", self.p[a, b], OUTCOME_VALUES, OUTCOME_VALUES)
        )


def make_correlation(data) -> Correlation:
    """Build a :class:`Correlation` from any nested sequence or array."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"cannot interpret input as a numeric array: {exc}") from exc
    return Correlation(arr)


def _check_setting(value: int) -> None:
    if value not in (0, 1):
        raise DomainError(f"setting must be 0 or 1, got {value!r}")


def signed_functional(corr: Correlation) -> float:
    """The combination E(0,0) + E(0,1) - E(1,0) + E(1,1), sign kept."""
    correlators = np.einsum(
        "abxy,x,y->ab", corr.p, OUTCOME_VALUES, OUTCOME_VALUES
    )
    return float(np.sum(FUNCTIONAL_SIGNS * correlators))


def functional_value(corr: Correlation) -> float:
    """Absolute value of the four-correlator combination.

    At most 2 on mixtures of local deterministic strategies, at most
    2 * sqrt(2) on the sequential qubit tables produced by
    :mod:`signalbox.quantum`, and 4 on :func:`pr_box`.
    """
    return abs(signed_functional(corr))


def disturbance_cost(corr: Correlation) -> float:
    """Excess of the functional over the local bound, in bit units.

    Defined as ``max(0, functional_value / 2 - 1)``: the minimum average
    one-bit-strategy weight any decomposition must spend on the table, as
    established by the decomposition routines in :mod:`signalbox.simulate`.
    """
    return max(0.0, functional_value(corr) / 2.0 - 1.0)


def mix(weights, correlations) -> Correlation:
    """Convex mixture of correlation tables.

    Raises :class:`~signalbox.errors.WeightError` when the weight vector
    has negative entries, does not match the number of tables, or does
    not sum to one within 1e-12.
    """
    w = np.asarray(weights, dtype=float)
    tables = list(correlations)
    if w.ndim != 1 or w.size != len(tables):
        raise WeightError(
            f"need one weight per table, got {w.size} weights for {len(tables)} tables"
        )
    if w.size == 0:
        raise WeightError("cannot mix an empty collection")
    if float(w.min()) < -1e-12:
        raise WeightError(f"negative mixture weight {float(w.min())}")
    total = float(w.sum())
    if abs(total - 1.0) > 1e-12:
        raise WeightError(f"mixture weights sum to {total}, expected 1")
    stack = np.stack([c.p for c in tables])
    return Correlation(np.einsum("i,iabxy->abxy", np.clip(w, 0.0, None), stack))


def marginal(corr: Correlation, side: str, own_setting: int, other_setting: int):
    """One party's outcome distribution at a fixed setting pair.

    Returns a length-2 array over that party's outcome labels.  For
    ``side="alice"`` the settings are (own, other) = (a, b); for
    ``side="bob"`` they are (b, a).  In a nonsignaling table the result
    would not depend on ``other_setting``; the whole point of this
    package is to quantify how much it does.
    """
    _check_setting(own_setting)
    _check_setting(other_setting)
    if side == "alice":
        return corr.p[own_setting, other_setting].sum(axis=1)
    if side == "bob":
        return corr.p[other_setting, own_setting].sum(axis=0)
    raise DomainError(f"side must be 'alice' or 'bob', got {side!r}")


@dataclass(frozen=True)
class SignalDeltas:
    """Marginal shifts induced by the remote setting, one per channel.

    Each field is the absolute change of ``P(outcome label 0)`` for one
    party, at one fixed own setting, when the other party flips theirs.
    """

    to_bob_at_b0: float
    to_bob_at_b1: float
    to_alice_at_a1: float
    to_alice_at_a0: float

    @property
    def max(self) -> float:
        return max(
            self.to_bob_at_b0,
            self.to_bob_at_b1,
            self.to_alice_at_a1,
            self.to_alice_at_a0,
        )

    def as_array(self):
        return np.array(
            [
                self.to_bob_at_b0,
                self.to_bob_at_b1,
                self.to_alice_at_a1,
                self.to_alice_at_a0,
            ]
        )


def signaling_deltas(corr: Correlation) -> SignalDeltas:
    """All four marginal-shift magnitudes of a table."""

    def bob_gap(b: int) -> float:
        return abs(
            float(marginal(corr, "bob", b, 0)[0])
            - float(marginal(corr, "bob", b, 1)[0])
        )

    def alice_gap(a: int) -> float:
        return abs(
            float(marginal(corr, "alice", a, 0)[0])
            - float(marginal(corr, "alice", a, 1)[0])
        )

    return SignalDeltas(bob_gap(0), bob_gap(1), alice_gap(1), alice_gap(0))


class StrategyKind(enum.Enum):
    """Coarse classification of a deterministic strategy."""

    LOCAL = "local"
    ONE_BIT_VIOLATING = "one_bit_violating"
    ONE_BIT_NONVIOLATING = "one_bit_nonviolating"


@dataclass(frozen=True)
class Strategy:
    """Deterministic strategy: outcome rules indexed by the setting pair.

    ``x_rule[a][b]`` is alice's outcome label, ``y_rule[a][b]`` bob's.
    Local strategies simply ignore the remote index.
    """

    id: str
    x_rule: tuple
    y_rule: tuple
    kind: StrategyKind

    def as_correlation(self) -> Correlation:
        """The deterministic (one-hot) correlation table of this strategy."""
        p = np.zeros((2, 2, 2, 2))
        for a in (0, 1):
            for b in (0, 1):
                p[a, b, self.x_rule[a][b], self.y_rule[a][b]] = 1.0
        return Correlation(p)


_RULE_TOKENS = {
    "0": lambda a, b: 0,
    "1": lambda a, b: 1,
    "a": lambda a, b: a,
    "na": lambda a, b: 1 - a,
    "b": lambda a, b: b,
    "nb": lambda a, b: 1 - b,
    "ab": lambda a, b: a & b,
    "anb": lambda a, b: a & (1 - b),
    "nab": lambda a, b: (1 - a) & b,
    "nanb": lambda a, b: (1 - a) & (1 - b),
    "cab": lambda a, b: 1 - (a & b),
    "canb": lambda a, b: 1 - (a & (1 - b)),
    "cnab": lambda a, b: 1 - ((1 - a) & b),
    "cnanb": lambda a, b: 1 - ((1 - a) & (1 - b)),
}


def _rule_table(token: str) -> tuple:
    fn = _RULE_TOKENS[token]
    return tuple(tuple(fn(a, b) for b in (0, 1)) for a in (0, 1))


def _strategy_from_id(ident: str, kind: StrategyKind) -> Strategy:
    _, x_token, y_token = ident.split("_", 2)
    return Strategy(ident, _rule_table(x_token), _rule_table(y_token), kind)


# All 16 local deterministic strategies.
LOCAL_IDS = tuple(
    f"local_{xt}_{yt}" for xt in ("0", "1", "a", "na") for yt in ("0", "1", "b", "nb")
)

# The 8 locals whose signed functional is +2 (the other 8 give -2).
# These span every local table reachable by the closed-form decomposition.
PLUS_LOCAL_IDS = (
    "local_0_0",
    "local_a_0",
    "local_0_nb",
    "local_na_nb",
    "local_a_b",
    "local_1_b",
    "local_na_1",
    "local_1_1",
)

# One-bit strategies with signed functional +4, in an order where the
# pair averages (0,3), (1,2), (4,7), (5,6) each reproduce pr_box().
VIOLATING_IDS = (
    "signal_0_anb",
    "signal_na_cab",
    "signal_a_ab",
    "signal_1_canb",
    "signal_anb_0",
    "signal_nanb_nb",
    "signal_cnanb_b",
    "signal_canb_1",
)

# Pairs of violating strategies whose equal mixture is exactly pr_box().
VIOLATING_PAIRS = (
    ("signal_0_anb", "signal_1_canb"),
    ("signal_na_cab", "signal_a_ab"),
    ("signal_anb_0", "signal_canb_1"),
    ("signal_nanb_nb", "signal_cnanb_b"),
)

# One-bit strategies that echo a setting on both sides; signed functional
# is +2 when the two rules agree and -2 when one side negates.
NONVIOLATING_IDS = (
    "signal_a_a",
    "signal_a_na",
    "signal_na_a",
    "signal_na_na",
    "signal_b_b",
    "signal_b_nb",
    "signal_nb_b",
    "signal_nb_nb",
)

FULL_BASIS = LOCAL_IDS + VIOLATING_IDS + NONVIOLATING_IDS


def _build_catalog() -> dict:
    entries = {}
    for ident in LOCAL_IDS:
        entries[ident] = _strategy_from_id(ident, StrategyKind.LOCAL)
    for ident in VIOLATING_IDS:
        entries[ident] = _strategy_from_id(ident, StrategyKind.ONE_BIT_VIOLATING)
    for ident in NONVIOLATING_IDS:
        entries[ident] = _strategy_from_id(ident, StrategyKind.ONE_BIT_NONVIOLATING)
    return entries


_CATALOG = _build_catalog()


def catalog(ident: str) -> Strategy:
    """Look up a strategy by identifier.

    Raises :class:`~signalbox.errors.UnknownStrategyError` for anything
    not in :data:`FULL_BASIS`.
    """
    try:
        return _CATALOG[ident]
    except KeyError:
        raise UnknownStrategyError(
            f"unknown strategy {ident!r}; see signalbox.strategy_ids()"
        ) from None


def strategy_ids() -> tuple:
    """All catalog identifiers, locals first, 32 in total."""
    return FULL_BASIS


def pr_box() -> Correlation:
    """The extremal box with functional value 4.

    Outcomes are uniformly random on each side but perfectly follow
    ``x XOR y = a AND (NOT b)``, matching the sign pattern of the
    functional.  Equal mixtures of the paired violating strategies
    reproduce this table exactly.
    """
    p = np.zeros((2, 2, 2, 2))
    for a in (0, 1):
        for b in (0, 1):
            for x in (0, 1):
                for y in (0, 1):
                    if (x ^ y) == (a & (1 - b)):
                        p[a, b, x, y] = 0.5
    return Correlation(p)


def to_json_dict(corr: Correlation) -> dict:
    """JSON-ready payload: ``{"p": nested [a][b][x][y] lists}``."""
    return {"p": corr.p.tolist()}


def from_json_dict(payload) -> Correlation:
    """Parse the payload produced by :func:`to_json_dict`, strictly."""
    if not isinstance(payload, dict):
        raise DomainError(f"expected a JSON object, got {type(payload).__name__}")
    if "p" not in payload:
        raise DomainError('payload is missing the "p" entry')
    return make_correlation(payload["p"])


def load_correlation(path) -> Correlation:
    """Read a correlation table from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON: {exc}") from exc
    return from_json_dict(payload)


def save_correlation(corr: Correlation, path) -> None:
    """Write a correlation table to a JSON file."""
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(to_json_dict(corr), handle, indent=2, sort_keys=True)
        handle.write("\n")
