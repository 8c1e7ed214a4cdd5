"""Lindblad evolution, closed-form trajectories, steady states and
entanglement-sudden-death solvers for the two-qubit XY model."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParams, DomainError, NoDeath, NotPSD, NotHermitian, StepRejected, TraceNotOne
from .measures import (
    CorrelationSet,
    concurrence_branches,
    concurrence_signed,
    correlations,
    l1_coherence,
    lqu_x,
    negativity,
)
from .model import ModelParams, hamiltonian, spin_lowering, spin_raising
from .states import XState, is_x_shaped, validate

STEADY_RHS_TOL = 1e-12
X_DRIFT_TOL = 1e-8  # sampled states must stay this close to the X pattern
DARK_THRESHOLD = 1e-12
REVIVAL_THRESHOLD = 1e-9


@dataclass
class Trajectory:
    """Time grid with one density matrix and one CorrelationSet per sample.

    ``steady_time`` is the first sampled time where the master-equation right
    hand side dropped below the steady-state tolerance, or None if the run
    finished before that happened.
    """

    times: np.ndarray
    states: list[np.ndarray]
    correlations: list[CorrelationSet]
    params: ModelParams
    dt: float
    steady_time: float | None = None


@dataclass(frozen=True)
class ESDResult:
    """Entanglement death time in units of 1/gamma (gamma * tau), plus any
    (death, rebirth) intervals. math.inf means entanglement never dies."""

    death_time: float
    revivals: tuple[tuple[float, float], ...] = ()


def lindblad_rhs(rho, params: ModelParams) -> np.ndarray:
    """Right-hand side of the thermal master equation.

    d rho/dt = -i[H, rho]
               + gamma (nbar+1) (D[S1-] + D[S2-]) rho
               + gamma  nbar    (D[S1+] + D[S2+]) rho

    with D[A]B = A B A^dag - {A^dag A, B}/2. The result is traceless and
    Hermiticity-preserving; at nbar = 0 only the decay channels act.
    """
    rho = np.asarray(rho, dtype=complex)
    h = hamiltonian(params)
    out = -1j * (h @ rho - rho @ h)
    channels = (
        (params.gamma * (params.nbar + 1.0), spin_lowering(1)),
        (params.gamma * (params.nbar + 1.0), spin_lowering(2)),
        (params.gamma * params.nbar, spin_raising(1)),
        (params.gamma * params.nbar, spin_raising(2)),
    )
    for rate, op in channels:
        if rate == 0.0:
            continue
        num = op.conj().T @ op
        out = out + rate * (op @ rho @ op.conj().T - 0.5 * (num @ rho + rho @ num))
    return out


def _liouvillian(params: ModelParams) -> np.ndarray:
    """16x16 generator acting on row-major vectorized density matrices."""
    cols = []
    for k in range(16):
        basis = np.zeros((4, 4), dtype=complex)
        basis.flat[k] = 1.0
        cols.append(lindblad_rhs(basis, params).ravel())
    return np.column_stack(cols)


def _rk4_step(lv: np.ndarray, y: np.ndarray, dt: float) -> np.ndarray:
    k1 = lv @ y
    k2 = lv @ (y + (0.5 * dt) * k1)
    k3 = lv @ (y + (0.5 * dt) * k2)
    k4 = lv @ (y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def evolve(
    rho0,
    params: ModelParams,
    t_max: float,
    dt: float = 1e-3,
    stride: int = 100,
) -> Trajectory:
    """Integrate the master equation with the classical fixed-step RK4 scheme.

    Parameters
    ----------
    rho0 : XState or 4x4 array
        Initial state; validated before the run.
    t_max, dt : float
        Horizon and step (t_max is rounded to a whole number of steps).
    stride : int
        Sampling interval in steps; the final step is always sampled.

    Every sampled state is validated and, when the initial state is X-shaped,
    checked to stay on the X pattern; a violation raises StepRejected with
    the offending time. Correlations are attached per sample.
    """
    if dt <= 0.0:
        raise DomainError(f"dt must be positive, got {dt}")
    if t_max < 0.0:
        raise DomainError(f"t_max must be non-negative, got {t_max}")
    if stride < 1:
        raise DomainError(f"stride must be >= 1, got {stride}")

    mat0 = rho0.to_matrix() if isinstance(rho0, XState) else np.asarray(rho0, dtype=complex)
    validate(mat0)
    x_born = is_x_shaped(mat0, 1e-9)

    lv = _liouvillian(params)
    n_steps = int(round(t_max / dt))
    y = mat0.ravel().astype(complex)

    times: list[float] = []
    states: list[np.ndarray] = []
    corr: list[CorrelationSet] = []
    steady_time: float | None = None

    def sample(step: int):
        nonlocal steady_time
        t = step * dt
        mat = y.reshape(4, 4).copy()
        try:
            validate(mat)
        except (NotHermitian, TraceNotOne, NotPSD) as exc:
            raise StepRejected(t, str(exc)) from exc
        if x_born and not is_x_shaped(mat, X_DRIFT_TOL):
            raise StepRejected(t, f"state drifted off the X pattern beyond {X_DRIFT_TOL:.1e}")
        times.append(t)
        states.append(mat)
        corr.append(correlations(mat))
        if steady_time is None and np.abs(lv @ y).max() <= STEADY_RHS_TOL:
            steady_time = t

    sample(0)
    for step in range(1, n_steps + 1):
        y = _rk4_step(lv, y, dt)
        if step % stride == 0 or step == n_steps:
            sample(step)

    return Trajectory(np.asarray(times), states, corr, params, dt, steady_time)


# ---------------------------------------------------------------------------
# closed-form trajectories (zero temperature)


def _require_zero_temperature(params: ModelParams):
    if params.nbar != 0.0:
        raise DomainError("closed-form trajectory is defined at nbar = 0")


def analytic_mixture(t: float, params: ModelParams) -> XState:
    """State at time t when the initial condition is the w = 1/2 mixture.

    Only rho22, rho23, rho32 and rho33 depend on J, and that dependence is
    damped away as t grows; rho44 follows from trace completion.
    """
    _require_zero_temperature(params)
    g, j, d, w = params.gamma, params.j, params.delta, params.omega
    om = params.big_omega
    den = g * g + 4.0 * om * om
    e1 = np.exp(-g * t)
    e2 = np.exp(-2.0 * g * t)
    c2, s2 = np.cos(2.0 * om * t), np.sin(2.0 * om * t)

    r11 = (
        4.0 * om * d * d
        + e2 * om * (g * g + 4.0 * w * (d + w))
        + 2.0 * d * e1 * (g * (w - 2.0 * d) * s2 - 2.0 * w * om * c2)
    ) / (4.0 * om * den)

    re14 = (
        -8.0 * d * w * om**3
        + e1 * w * om * (g * g * (w - 2.0 * d) + 4.0 * w * om * om) * c2
        + d * om * e1 * (den * (d + 2.0 * w) + 4.0 * g * w * om * s2)
    ) / (4.0 * om**3 * den)
    im14 = -(
        4.0 * g * d * om
        + e1 * ((g * g * (w - 2.0 * d) + 4.0 * w * om * om) * s2 - 4.0 * g * d * om * c2)
    ) / (4.0 * om * den)

    r22 = (
        4.0 * d * d * om**3
        + e1 * (om**3 * den * np.cos(2.0 * j * t)
                + g * d * (g * om * (2.0 * d - w) * c2 - 2.0 * w * om * om * s2))
        + e2 * om * (-om * om * (g * g + 4.0 * w * (d + w))
                     + w * den * (d + 2.0 * w) * np.exp(g * t))
    ) / (4.0 * om**3 * den)

    r23 = 0.25j * e1 * np.sin(2.0 * j * t)
    r33 = r22 - 0.5 * e1 * np.cos(2.0 * j * t)
    r44 = 1.0 - (r11 + r22 + r33)
    return XState(r11, r22, r33, r44, re14 + 1j * im14, r23)


def analytic_werner(t: float, p: float, params: ModelParams) -> XState:
    """State at time t for a Werner initial condition; independent of J."""
    _require_zero_temperature(params)
    if not -1.0 / 3.0 <= p <= 1.0:
        raise DomainError(f"Werner parameter must lie in [-1/3, 1], got {p}")
    g, d, w = params.gamma, params.delta, params.omega
    om = params.big_omega
    den = g * g + 4.0 * om * om
    e1 = np.exp(-g * t)
    e2 = np.exp(-2.0 * g * t)
    c2, s2 = np.cos(2.0 * om * t), np.sin(2.0 * om * t)

    r11 = (
        4.0 * d * d * om
        - 4.0 * d * d * g * e1 * s2
        + om * e2 * (4.0 * w * w - 4.0 * om * om * p + g * g * (1.0 - p))
    ) / (4.0 * om * den)

    r14 = (1j * d / (2.0 * om**3 * den)) * (
        -2.0 * (g - 2j * w) * om**3
        + e1 * (
            -4j * w * om**3
            - 2j * g * g * w * om * np.sin(om * t) ** 2
            + g * g * om * om * s2
            + 2.0 * g * om * om * (om * c2 - 1j * w * s2)
        )
    )

    r22 = (
        4.0 * om * om * (d * d + e2 * (p * d * d + (p - 1.0) * w * w) + 2.0 * w * w * e1)
        + g * g * ((p - 1.0) * om * om * e2 + 2.0 * e1 * (d * d * c2 + w * w))
    ) / (4.0 * om * om * den)

    r23 = -0.5 * p * e1

    r44 = (
        4.0 * om**3 * (g * g + 3.0 * w * w + om * om)
        - om**3 * e2 * (den * p - (g * g + 4.0 * w * w))
        - 4.0 * w * w * om * den * e1
        + 4.0 * g * d * d * e1 * (om * om * s2 - g * om * c2)
    ) / (4.0 * om**3 * den)

    return XState(r11, r22, r22, r44, r14, r23)


def analytic_independent_mixture(t: float, w: float, gamma: float, omega: float = 1.0) -> XState:
    """Decay of the general w-mixture for non-interacting qubits (J = Delta = 0)."""
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {w}")
    if gamma < 0.0:
        raise DomainError(f"gamma must be non-negative, got {gamma}")
    q = (1.0 - w) / 2.0
    half = 0.5 * gamma * t
    r11 = q * np.exp(-2.0 * gamma * t)
    r14 = q * np.exp(-(gamma + 2j * omega) * t)
    r22 = np.exp(-3.0 * half) * (np.sinh(half) + w * np.cosh(half))
    r33 = (1.0 - w) * np.exp(-3.0 * half) * np.sinh(half)
    r44 = q * np.exp(-2.0 * gamma * t) + 2.0 * np.exp(-half) * np.sinh(half)
    return XState(r11, r22, r33, r44, r14, 0.0)


# ---------------------------------------------------------------------------
# steady states


def steady_state_zero_temp(params: ModelParams) -> XState:
    """Unique steady state at zero temperature; the same for every X-shaped
    initial condition. Entangled iff |Delta| < sqrt(gamma^2 + 4 omega^2)."""
    if params.gamma <= 0.0:
        raise DegenerateParams("gamma > 0 is required for a unique steady state")
    g, d, w = params.gamma, params.delta, params.omega
    den = g * g + 4.0 * params.big_omega**2
    pop = d * d / den
    return XState(
        rho11=pop,
        rho22=pop,
        rho33=pop,
        rho44=(g * g + 3.0 * w * w + params.big_omega**2) / den,
        rho14=-d * (2.0 * w + 1j * g) / den,
        rho23=0.0,
    )


def steady_state_thermal(params: ModelParams) -> XState:
    """Thermal steady state; reduces to the zero-temperature one at nbar = 0
    and to a diagonal state when J = Delta = 0."""
    if params.gamma <= 0.0:
        raise DegenerateParams("gamma > 0 is required for a unique steady state")
    g, d, w, nb = params.gamma, params.delta, params.omega, params.nbar
    k = 2.0 * nb + 1.0
    den = 4.0 * params.big_omega**2 + g * g * k * k
    r11 = (k * k * (d * d + g * g * nb * nb) + 4.0 * nb * nb * w * w) / (k * k * den)
    r14 = -(2.0 * w * d + 1j * g * d * k) / (k * den)
    r22 = (d * d + nb * (nb + 1.0) * den) / (k * k * den)
    r44 = (k * k * (d * d + g * g * (nb + 1.0) ** 2) + 4.0 * (nb + 1.0) ** 2 * w * w) / (k * k * den)
    return XState(r11, r22, r22, r44, r14, 0.0)


def steady_concurrence_thermal(params: ModelParams) -> float:
    """Closed-form steady-state concurrence at mean bath excitation nbar."""
    if params.gamma <= 0.0:
        raise DegenerateParams("gamma > 0 is required for a unique steady state")
    g, d, w, nb = params.gamma, params.delta, params.omega, params.nbar
    k = 2.0 * nb + 1.0
    den = 4.0 * params.big_omega**2 + g * g * k * k
    inner = (k * abs(d) * np.sqrt(4.0 * w * w + g * g * k * k) - d * d) / (k * k * den)
    return 2.0 * max(0.0, float(inner - nb * (nb + 1.0) / (k * k)))


def steady_ccc_thermal(params: ModelParams) -> float:
    """Closed-form steady-state correlated coherence; the steady MIN equals it."""
    if params.gamma <= 0.0:
        raise DegenerateParams("gamma > 0 is required for a unique steady state")
    g, d, w = params.gamma, params.delta, params.omega
    k = 2.0 * params.nbar + 1.0
    den = 4.0 * params.big_omega**2 + g * g * k * k
    return float(2.0 * abs(d) * np.sqrt(4.0 * w * w + g * g * k * k) / (k * den))


def steady_w_entries_zero_temp(params: ModelParams) -> tuple[float, float]:
    """(W11, W33) of the zero-temperature steady state in closed form.

    The steady W matrix is diagonal with W11 = W22, so the LQU is
    1 - max{W11, W33}.
    """
    if params.gamma <= 0.0:
        raise DegenerateParams("gamma > 0 is required for a unique steady state")
    g, d, w = params.gamma, params.delta, params.omega
    om2 = params.big_omega**2
    den = g * g + 4.0 * om2
    radical = np.sqrt((g * g + 4.0 * w * w) * den)
    core = g * g + 2.0 * w * w + 2.0 * om2
    w11 = (np.sqrt(2.0) * abs(d) / den) * (
        np.sqrt(max(core - radical, 0.0)) + np.sqrt(core + radical)
    )
    w33 = (g**4 + 4.0 * g * g * (w * w + om2) + 16.0 * (d**4 + w * w * om2)) / den**2
    return float(w11), float(w33)


def steady_lqu_thermal(params: ModelParams) -> float:
    """Steady-state LQU: closed-form W entries at nbar = 0, W-matrix
    evaluation on the thermal steady state otherwise."""
    if params.nbar == 0.0:
        w11, w33 = steady_w_entries_zero_temp(params)
        return min(1.0, max(0.0, 1.0 - max(w11, w33)))
    return lqu_x(steady_state_thermal(params))


def steady_correlations_thermal(params: ModelParams) -> CorrelationSet:
    """All steady-state quantifiers; closed forms where available, W/partial
    transpose evaluation on the steady state for the rest."""
    mat = steady_state_thermal(params).to_matrix()
    cc = steady_ccc_thermal(params)
    neg = negativity(mat)
    return CorrelationSet(
        concurrence=steady_concurrence_thermal(params),
        negativity=neg,
        log_negativity=float(np.log2(2.0 * neg + 1.0)),
        lqu=steady_lqu_thermal(params),
        min_trace=cc,
        correlated_coherence=cc,
        l1_coherence=l1_coherence(mat),
    )


# ---------------------------------------------------------------------------
# entanglement sudden death


def esd_time_zero_temp(w: float, gamma: float) -> ESDResult:
    """Closed-form death time of the w-mixture for non-interacting qubits.

    gamma*tau = ln( (1 + sqrt(1 - 2 w (1 - w))) / (2 w) ); infinite at w = 0,
    zero at w = 1 (the initial state is already separable).
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {w}")
    if gamma <= 0.0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    if w == 0.0:
        return ESDResult(math.inf)
    gt = math.log((1.0 + math.sqrt(1.0 - 2.0 * w * (1.0 - w))) / (2.0 * w))
    return ESDResult(max(gt, 0.0))


def concurrence_thermal_independent(t: float, w: float, gamma: float, nbar: float) -> float:
    """Concurrence of the decaying w-mixture at bath excitation nbar (J = Delta = 0)."""
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {w}")
    if gamma < 0.0 or nbar < 0.0:
        raise DomainError("gamma and nbar must be non-negative")
    k = 2.0 * nbar + 1.0
    f = _thermal_root_poly(t, w, gamma, nbar)
    return max(0.0, (1.0 - w) * np.exp(-k * gamma * t) - np.sqrt(max(f, 0.0)) / (k * k))


def _thermal_root_poly(t: float, w: float, gamma: float, nbar: float) -> float:
    """f(t) = a0 + a1 w + a2 w^2 whose square root competes with the coherence."""
    k = 2.0 * nbar + 1.0
    half = 0.5 * k * gamma * t
    sh, ch = np.sinh(half), np.cosh(half)
    bracket = 1.0 + 4.0 * nbar * (nbar + 1.0) * np.exp(half) * ch
    a0 = 4.0 * np.exp(-6.0 * half) * sh * sh * bracket * bracket
    a1 = 4.0 * k * k * np.exp(-7.0 * half) * sh * bracket
    a2 = -2.0 * k**4 * np.exp(-6.0 * half) * np.sinh(2.0 * half)
    return float(a0 + a1 * w + a2 * w * w)


def esd_time_thermal(
    w: float,
    gamma: float,
    nbar: float,
    horizon: float | None = None,
) -> ESDResult:
    """Death time at finite temperature by bracketing and bisection.

    Solves exp(2 (2 nbar + 1) gamma t) f(t) = (2 nbar + 1)^4 (1 - w)^2 for its
    first root, refined to |dt| <= 1e-10/gamma. Raises NoDeath if the
    concurrence stays positive over the search horizon (default
    100 / (gamma (2 nbar + 1)), e.g. the maximally entangled state at nbar = 0).
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {w}")
    if gamma <= 0.0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    if nbar < 0.0:
        raise DomainError(f"nbar must be non-negative, got {nbar}")
    if w == 1.0:
        return ESDResult(0.0)

    k = 2.0 * nbar + 1.0
    if horizon is None:
        horizon = 100.0 / (gamma * k)
    target = k**4 * (1.0 - w) ** 2

    def gap(t: float) -> float:
        return np.exp(2.0 * k * gamma * t) * _thermal_root_poly(t, w, gamma, nbar) - target

    # the no-death asymptote rounds to zero within a few ulp, while a genuine
    # crossing rises by O(step * target) in one step; use a scaled threshold
    crossing_tol = 1e-12 * max(1.0, target)
    step = min(0.01 / (gamma * k), horizon / 100.0)
    lo, hi = 0.0, step
    while gap(hi) <= crossing_tol:
        lo, hi = hi, hi + step
        if lo >= horizon:
            raise NoDeath(horizon)

    tol = 1e-10 / gamma
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return ESDResult(gamma * 0.5 * (lo + hi))


# ---------------------------------------------------------------------------
# dark periods and revivals


def dark_intervals_of_series(
    times,
    values,
    threshold: float = DARK_THRESHOLD,
    revival_threshold: float = REVIVAL_THRESHOLD,
) -> list[tuple[int, int]]:
    """Index pairs (first dark sample, first revived sample) of dark runs.

    A run starts when the series drops to <= threshold and ends at the first
    sample above revival_threshold (values in between count as round-off
    flicker and extend the run). An unfinished run ends at index len(times).
    """
    spans = []
    start = None
    for i, v in enumerate(values):
        if start is None:
            if v <= threshold:
                start = i
        elif v > revival_threshold:
            spans.append((start, i))
            start = None
    if start is not None:
        spans.append((start, len(list(times))))
    return spans


def find_dark_intervals(
    traj: Trajectory,
    state_at=None,
    threshold: float = DARK_THRESHOLD,
    revival_threshold: float = REVIVAL_THRESHOLD,
    refine_tol: float = 1e-6,
) -> list[tuple[float, float]]:
    """Maximal (death, rebirth) intervals of zero concurrence along a trajectory.

    Endpoints are refined by bisection on the signed concurrence, using
    ``state_at(t)`` when given (e.g. one of the closed-form trajectories) and
    re-integration from the nearest stored sample otherwise. A dark interval
    still open at the end of the horizon gets rebirth = math.inf.
    """
    conc = [c.concurrence for c in traj.correlations]
    spans = dark_intervals_of_series(traj.times, conc, threshold, revival_threshold)
    if not spans:
        return []

    signed = _signed_concurrence_fn(traj, state_at)
    intervals = []
    n = len(traj.times)
    for first_dark, revived in spans:
        if first_dark == 0:
            death = float(traj.times[0])
        else:
            death = _bisect_sign_change(
                signed, traj.times[first_dark - 1], traj.times[first_dark], refine_tol
            )
        if revived >= n:
            rebirth = math.inf
        else:
            rebirth = _bisect_sign_change(
                signed, traj.times[revived], traj.times[revived - 1], refine_tol
            )
        intervals.append((death, rebirth))
    return intervals


def _signed_concurrence_fn(traj: Trajectory, state_at):
    if state_at is None:
        state_at = _state_interpolator(traj)

    def signed(t: float) -> float:
        state = state_at(t)
        if isinstance(state, XState):
            return max(concurrence_branches(state))
        return concurrence_signed(state)

    return signed


def _state_interpolator(traj: Trajectory):
    lv = _liouvillian(traj.params)

    def at(t: float) -> np.ndarray:
        i = int(np.searchsorted(traj.times, t, side="right") - 1)
        i = max(0, min(i, len(traj.times) - 1))
        y = traj.states[i].ravel().astype(complex)
        remaining = t - traj.times[i]
        whole, frac = divmod(remaining, traj.dt)
        for _ in range(int(whole)):
            y = _rk4_step(lv, y, traj.dt)
        if frac > 1e-15:
            y = _rk4_step(lv, y, frac)
        return y.reshape(4, 4)

    return at


def _bisect_sign_change(f, t_pos: float, t_neg: float, tol: float) -> float:
    """Locate the sign change of f between f(t_pos) > 0 and f(t_neg) <= 0."""
    for _ in range(200):
        if abs(t_pos - t_neg) <= tol:
            break
        mid = 0.5 * (t_pos + t_neg)
        if f(mid) > 0.0:
            t_pos = mid
        else:
            t_neg = mid
    return 0.5 * (t_pos + t_neg)
