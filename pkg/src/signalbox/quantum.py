"""Sequential qubit measurements and the angle-sweep analysis.

One qubit is measured twice in a row.  Alice measures first with one of
two +/-1 observables, bob second with one of two others.  Because
alice's measurement updates the state, the joint table she and bob
generate can signal from her setting to his marginal, and that signal is
what the rest of the package prices.

Tables are produced by two independent routes and cross-checked on every
call: an explicit project-then-measure computation with 2x2 matrices,
and a closed-form expression that only touches Bloch vectors.  All
observables are +/-1 valued (outcome label l means value (-1)**l), and
all entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlation import Correlation, disturbance_cost, functional_value
from .errors import ConsistencyError, DomainError, NoCrossoverError, NormalizationError
from .signaling import binary_entropy, signal_info

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

_UNIT_TOL = 1e-12
_STATE_TOL = 1e-12
_EIG_FLOOR = -1e-10

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _hermitian_eigenvalues(m) -> tuple:
    """Eigenvalues of a Hermitian 2x2 matrix by the quadratic formula."""
    t = float(m[0, 0].real + m[1, 1].real)
    d = float((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real)
    disc = max(0.0, 0.25 * t * t - d)
    root = math.sqrt(disc)
    return (0.5 * t - root, 0.5 * t + root)


@dataclass(frozen=True, eq=False)
class Observable:
    """A +/-1 observable n.sigma given by its unit Bloch direction."""

    n: np.ndarray

    def __post_init__(self) -> None:
        vec = np.array(self.n, dtype=float)
        if vec.shape != (3,):
            raise DomainError(f"Bloch direction must be a 3-vector, got shape {vec.shape}")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise DomainError(f"Bloch direction has norm {norm}, expected 1")
        vec.setflags(write=False)
        object.__setattr__(self, "n", vec)

    @classmethod
    def from_angle(cls, phi: float) -> "Observable":
        """Observable in the xz-plane at angle ``phi`` from the z-axis."""
        return cls(np.array([math.sin(phi), 0.0, math.cos(phi)]))

    @property
    def matrix(self) -> np.ndarray:
        return self.n[0] * PAULI_X + self.n[1] * PAULI_Y + self.n[2] * PAULI_Z

    def projector(self, label: int) -> np.ndarray:
        """Projector onto the outcome with value (-1)**label."""
        if label not in (0, 1):
            raise DomainError(f"outcome label must be 0 or 1, got {label!r}")
        return 0.5 * (IDENTITY + (-1.0) ** label * self.matrix)


@dataclass(frozen=True, eq=False)
class QubitState:
    """Validated 2x2 density matrix."""

    rho: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.rho, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"density matrix must be 2x2, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > _STATE_TOL:
            raise DomainError("density matrix is not Hermitian")
        trace = float(m[0, 0].real + m[1, 1].real)
        if abs(trace - 1.0) > _STATE_TOL:
            raise NormalizationError(f"density matrix has trace {trace}, expected 1")
        low, _ = _hermitian_eigenvalues(m)
        if low < _EIG_FLOOR:
            raise DomainError(f"density matrix has negative eigenvalue {low}")
        m.setflags(write=False)
        object.__setattr__(self, "rho", m)

    @classmethod
    def from_bloch(cls, r) -> "QubitState":
        vec = np.asarray(r, dtype=float)
        if vec.shape != (3,):
            raise DomainError(f"Bloch vector must be a 3-vector, got shape {vec.shape}")
        if float(np.linalg.norm(vec)) > 1.0 + 1e-12:
            raise DomainError("Bloch vector lies outside the unit ball")
        m = 0.5 * (IDENTITY + vec[0] * PAULI_X + vec[1] * PAULI_Y + vec[2] * PAULI_Z)
        return cls(m)

    @classmethod
    def maximally_mixed(cls) -> "QubitState":
        return cls(0.5 * IDENTITY)

    @property
    def bloch_vector(self) -> np.ndarray:
        m = self.rho
        return np.array(
            [
                float(np.trace(PAULI_X @ m).real),
                float(np.trace(PAULI_Y @ m).real),
                float(np.trace(PAULI_Z @ m).real),
            ]
        )


def projector_update_table(rho: QubitState, a0, a1, b0, b1) -> np.ndarray:
    """Joint table by the explicit two-step measurement computation.

    Entry [a][b][x][y] is Tr(B_y A_x rho A_x) with A, B the outcome
    projectors of alice's and bob's chosen observables.  Alice always
    measures first; her projector sandwiches the state.
    """
    alice = np.stack([np.stack([obs.projector(x) for x in (0, 1)]) for obs in (a0, a1)])
    bob = np.stack([np.stack([obs.projector(y) for y in (0, 1)]) for obs in (b0, b1)])
    table = np.einsum("byij,axjk,kl,axli->abxy", bob, alice, rho.rho, alice)
    return table.real


def expanded_formula_table(rho: QubitState, a0, a1, b0, b1) -> np.ndarray:
    """Joint table by the closed-form expression, Bloch vectors only.

    With r the state's Bloch vector and unit directions a, b, the entry
    at outcome values u = (-1)**x, v = (-1)**y is

        1/4 + u (a.r)/4 + v (b.r)/8 + u v (a.b)/4
            + v (2 (a.b)(a.r) - b.r)/8

    which packages the anticommutator and the sandwiched product
    a b a = 2(a.b) a - b without any matrix arithmetic.  Sharing no code
    with :func:`projector_update_table` is the point: the two routes
    check each other.
    """
    r = rho.bloch_vector
    table = np.empty((2, 2, 2, 2))
    for ia, alice_obs in enumerate((a0, a1)):
        av = alice_obs.n
        a_r = float(av @ r)
        for ib, bob_obs in enumerate((b0, b1)):
            bv = bob_obs.n
            b_r = float(bv @ r)
            a_b = float(av @ bv)
            sandwich = 2.0 * a_b * a_r - b_r
            for x in (0, 1):
                u = (-1.0) ** x
                for y in (0, 1):
                    v = (-1.0) ** y
                    table[ia, ib, x, y] = (
                        0.25
                        + u * a_r / 4.0
                        + v * b_r / 8.0
                        + u * v * a_b / 4.0
                        + v * sandwich / 8.0
                    )
    return table


def sequential_correlation(rho: QubitState, a0, a1, b0, b1) -> Correlation:
    """Correlation table of the two-step measurement, route-checked.

    Both computation routes run on every call and must agree entrywise
    within 1e-8, else :class:`~signalbox.errors.ConsistencyError` is
    raised.  The projector route's numbers are the ones returned.
    """
    direct = projector_update_table(rho, a0, a1, b0, b1)
    closed = expanded_formula_table(rho, a0, a1, b0, b1)
    gap = float(np.max(np.abs(direct - closed)))
    if gap > 1e-8:
        raise ConsistencyError(
            f"projector and closed-form tables disagree by {gap}"
        )
    return Correlation(np.clip(direct, 0.0, None))


def post_measurement_state(rho: QubitState, obs: Observable) -> QubitState:
    """State after an unread measurement of ``obs``: both branches kept."""
    a = obs.matrix
    return QubitState(0.5 * (rho.rho + a @ rho.rho @ a))


def trace_distance(r0: QubitState, r1: QubitState) -> float:
    """Half the trace norm of the difference of two states."""
    low, high = _hermitian_eigenvalues(r0.rho - r1.rho)
    return 0.5 * (abs(low) + abs(high))


def von_neumann_entropy(rho: QubitState) -> float:
    """Entropy of a qubit state in bits, eigenvalues clamped at 0."""
    low, high = _hermitian_eigenvalues(rho.rho)
    total = 0.0
    for lam in (low, high):
        lam = min(1.0, max(0.0, lam))
        if lam > 0.0:
            total -= lam * math.log2(lam)
    return total


def holevo(alpha: float, r0: QubitState, r1: QubitState) -> float:
    """Holevo quantity of the two-state ensemble {alpha: r0, 1-alpha: r1}."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"ensemble weight {alpha} outside [0, 1]")
    blend = QubitState(alpha * r0.rho + (1.0 - alpha) * r1.rho)
    return (
        von_neumann_entropy(blend)
        - alpha * von_neumann_entropy(r0)
        - (1.0 - alpha) * von_neumann_entropy(r1)
    )


def holevo_max(r0: QubitState, r1: QubitState, tol: float = 1e-10):
    """Holevo quantity maximized over the ensemble weight.

    Returns ``(alpha_star, chi)``.  The objective is concave in the
    weight, so golden-section search over [0, 1] finds the optimum.
    """

    def fn(alpha: float) -> float:
        return holevo(alpha, r0, r1)

    a, b = 0.0, 1.0
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


def sigma_settings():
    """The canonical settings that saturate the signal bounds.

    State |0><0|; alice measures z or x, bob measures z for his first
    setting.  Bob's second setting is not pinned down by the saturation
    argument; x is used, which leaves the b=1 channel silent and the
    b=0 channel carrying all the information.
    Returns ``(state, a0, a1, b0, b1)``.
    """
    z = Observable(np.array([0.0, 0.0, 1.0]))
    x = Observable(np.array([1.0, 0.0, 0.0]))
    state = QubitState.from_bloch(np.array([0.0, 0.0, 1.0]))
    return state, z, x, z, x


def theta_geometry(theta: float):
    """Equally spaced xz-plane settings for the angle sweep.

    The four observables sit at angles 0 (b0), theta (a0), 2*theta (b1)
    and 3*theta (a1), so the negatively signed pair (a1, b0) of the
    functional spans 3*theta while the other three pairs span theta,
    giving a functional value |3 cos(theta) - cos(3*theta)|.  Any
    placement where the negative pair spans only theta caps the value
    at 2 near theta = pi/4 and cannot reproduce the known violation.

    The initial state is the +1 eigenstate of the outermost observable
    a1.  Returns ``(state, a0, a1, b0, b1)``.

    Raises :class:`~signalbox.errors.DomainError` outside (0, pi/2).
    """
    if not 0.0 < theta < math.pi / 2.0:
        raise DomainError(f"sweep angle {theta} outside (0, pi/2)")
    b0 = Observable.from_angle(0.0)
    a0 = Observable.from_angle(theta)
    b1 = Observable.from_angle(2.0 * theta)
    a1 = Observable.from_angle(3.0 * theta)
    state = QubitState.from_bloch(a1.n)
    return state, a0, a1, b0, b1


def tsirelson_box() -> Correlation:
    """Nonsignaling table with functional value 2*sqrt(2).

    Uses the theta = pi/4 observable geometry on the maximally mixed
    state: every marginal is uniform (no signaling in either direction)
    while the correlators keep the full quantum value.
    """
    _, a0, a1, b0, b1 = theta_geometry(math.pi / 4.0)
    return sequential_correlation(QubitState.maximally_mixed(), a0, a1, b0, b1)


def signal_corrected_bound() -> float:
    """Functional ceiling for tables whose signal is fully classical.

    Equals ``2 * (mu + 1)`` where ``mu`` is the information carried by
    the saturating settings of :func:`sigma_settings`, computed on the
    spot rather than hard-coded.  A table beating this bound is
    nonclassical outright; one below it is not settled by this test.
    """
    state, a0, a1, b0, b1 = sigma_settings()
    table = sequential_correlation(state, a0, a1, b0, b1)
    mu = signal_info(table).info
    return 2.0 * (mu + 1.0)


@dataclass(frozen=True)
class SweepRow:
    """One angle of the sweep.

    ``restricted_info`` is the channel information with bob limited to
    the two settings the geometry provides; ``holevo_info`` is the
    weight-optimized Holevo quantity of alice's two post-measurement
    states, an upper envelope for any measurement bob could make.
    """

    theta: float
    functional: float
    functional_norm: float
    restricted_info: float
    disturbance: float
    holevo_info: float
    classical: bool


def _sweep_row(theta: float) -> SweepRow:
    state, a0, a1, b0, b1 = theta_geometry(theta)
    table = sequential_correlation(state, a0, a1, b0, b1)
    lam = functional_value(table)
    cost = disturbance_cost(table)
    info = signal_info(table).info
    rho0 = post_measurement_state(state, a0)
    rho1 = post_measurement_state(state, a1)
    _, chi = holevo_max(rho0, rho1)
    return SweepRow(
        theta=theta,
        functional=lam,
        functional_norm=lam / 2.0,
        restricted_info=info,
        disturbance=cost,
        holevo_info=chi,
        classical=info >= cost,
    )


def theta_sweep(theta_min: float, theta_max: float, steps: int):
    """Rows of the angle sweep, ascending, endpoints included."""
    if steps < 2:
        raise DomainError(f"sweep needs at least 2 steps, got {steps}")
    if not theta_max > theta_min:
        raise DomainError(
            f"sweep range is empty: [{theta_min}, {theta_max}]"
        )
    return [_sweep_row(t) for t in np.linspace(theta_min, theta_max, steps)]


def sweep_csv(rows) -> str:
    """Render sweep rows as deterministic CSV at 12 significant digits."""
    lines = ["theta,lambda,lambda_norm,S_restricted,c_lambda,chi,classical"]
    for row in rows:
        lines.append(
            "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d"
            % (
                row.theta,
                row.functional,
                row.functional_norm,
                row.restricted_info,
                row.disturbance,
                row.holevo_info,
                1 if row.classical else 0,
            )
        )
    return "\n".join(lines) + "\n"


def _crossover_gap(theta: float) -> float:
    row = _sweep_row(theta)
    return row.restricted_info - row.disturbance


def find_crossover(theta_min: float, theta_max: float, tol: float = 1e-4) -> float:
    """Angle where the restricted information first covers the cost.

    Bisects ``restricted_info - disturbance`` to within ``tol``.
    Raises :class:`~signalbox.errors.NoCrossoverError` when the interval
    is degenerate or the gap does not change sign across it.
    """
    if not theta_max > theta_min:
        raise NoCrossoverError(
            f"interval [{theta_min}, {theta_max}] does not bracket a sign change"
        )
    lo, hi = theta_min, theta_max
    g_lo = _crossover_gap(lo)
    g_hi = _crossover_gap(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0.0) == (g_hi > 0.0):
        raise NoCrossoverError(
            f"no sign change of info minus cost on [{theta_min}, {theta_max}]"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = _crossover_gap(mid)
        if g_mid == 0.0:
            return mid
        if (g_mid > 0.0) == (g_lo > 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
