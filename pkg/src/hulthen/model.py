"""The screened-Coulomb (Hulthen) potential in D spatial dimensions.

The potential -Z*alpha*exp(-alpha*r)/(1 - exp(-alpha*r)) behaves like
-Z/r near the origin and decays exponentially.  After separating the
hyperangular part, the reduced radial function U(r) = r^((D-1)/2) R(r)
obeys a one-dimensional equation with the centrifugal coefficient
gamma = (2l+D-1)(2l+D-3)/4.  Replacing 1/r^2 by its exponential
counterpart alpha^2 e^{-ar}/(1-e^{-ar})^2 (accurate for small alpha)
makes the equation hypergeometric-type in s = exp(-alpha*r), which
yields a closed-form spectrum and Jacobi-polynomial eigenfunctions.

Dimensionless quantities used throughout:

    epsilon = sqrt(-2 mu E) / (alpha hbar)      scaled decay momentum
    delta   = 2 Z mu / (alpha hbar^2)           screening-scaled strength
    gamma   = (2l+D-1)(2l+D-3)/4                centrifugal coefficient
    v       = 2l+D-1
    Lambda  = 2n+2l+D-1

A bound state with radial index n exists iff delta > m^2 with
m = n + l + (D-1)/2 = Lambda/2 (and m > 0), in which case

    epsilon = (delta - m^2) / (2 m),   E = -(alpha hbar epsilon)^2 / (2 mu).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .nu import NUProblem, QuadPoly

__all__ = [
    "PotentialParams",
    "QuantumNumbers",
    "DimensionlessParams",
    "BoundState",
    "RadialGrid",
    "RadialSamples",
    "dimensionless",
    "potential",
    "centrifugal_approx",
    "energy",
    "spectrum",
    "bound_state_count",
    "coulomb_limit_energy",
    "normalization_constant",
    "wavefunction_u",
    "wavefunction_samples",
    "default_grid",
    "count_nodes",
    "nu_problem",
]


@dataclass(frozen=True)
class PotentialParams:
    """Physical inputs: strength Z, screening alpha, mass mu, hbar, dimension D."""

    Z: float
    alpha: float
    mu: float = 1.0
    hbar: float = 1.0
    D: int = 3

    def __post_init__(self):
        for name in ("Z", "alpha", "mu", "hbar"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be a finite positive real, got {val!r}")
        if self.D != int(self.D) or self.D < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {self.D!r}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial index n >= 0 (ground state n = 0) and angular momentum l >= 0."""

    n: int
    l: int = 0

    def __post_init__(self):
        if self.n != int(self.n) or self.n < 0:
            raise ValueError(f"n must be an integer >= 0, got {self.n!r}")
        if self.l != int(self.l) or self.l < 0:
            raise ValueError(f"l must be an integer >= 0, got {self.l!r}")


@dataclass(frozen=True)
class DimensionlessParams:
    epsilon: float
    delta: float
    gamma: float
    v: float
    Lambda: float


@dataclass(frozen=True)
class BoundState:
    """One (n, l) level.  energy/epsilon are None when no bound state exists.

    norm_const is filled lazily by normalization_constant(); the spectrum
    path leaves it None because the normalization double sum is only
    well-conditioned for moderate n.
    """

    qn: QuantumNumbers
    energy: float | None
    epsilon: float | None
    norm_const: float | None
    exists: bool


@dataclass(frozen=True)
class RadialGrid:
    """Sampling grid specification on (0, inf)."""

    r_min: float
    r_max: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if not (0.0 < self.r_min < self.r_max):
            raise ValueError("grid requires 0 < r_min < r_max")
        if self.points < 2:
            raise ValueError("grid requires at least 2 points")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"unknown grid spacing {self.spacing!r}")

    def radii(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.r_min, self.r_max, self.points)
        return np.linspace(self.r_min, self.r_max, self.points)


@dataclass(frozen=True)
class RadialSamples:
    """Sampled reduced wavefunction U(r) and hyperradial R(r) = r^-(D-1)/2 U."""

    r_values: np.ndarray
    U_values: np.ndarray
    R_values: np.ndarray
    meta: dict = field(default_factory=dict)


def _gamma_coeff(l: int, dim: int) -> float:
    return (2 * l + dim - 1) * (2 * l + dim - 3) / 4.0


def _angular_v(l: int, dim: int) -> int:
    return 2 * l + dim - 1


def _m_index(n: int, l: int, dim: int) -> float:
    return n + l + (dim - 1) / 2.0


def _delta(params: PotentialParams) -> float:
    return 2.0 * params.Z * params.mu / (params.alpha * params.hbar**2)


def dimensionless(params: PotentialParams, qn: QuantumNumbers, E: float) -> DimensionlessParams:
    """Dimensionless parameter set for a given (non-positive) energy."""
    if not math.isfinite(E) or E > 0.0:
        raise ValueError(f"scattering states (E > 0) are out of scope, got E = {E!r}")
    eps = math.sqrt(-2.0 * params.mu * E) / (params.alpha * params.hbar)
    return DimensionlessParams(
        epsilon=eps,
        delta=_delta(params),
        gamma=_gamma_coeff(qn.l, params.D),
        v=float(_angular_v(qn.l, params.D)),
        Lambda=float(2 * qn.n + 2 * qn.l + params.D - 1),
    )


def potential(r: float, params: PotentialParams) -> float:
    """The screened potential -Z alpha e^{-ar}/(1 - e^{-ar}) at radius r > 0.

    Uses expm1, so the Coulomb-like small-r regime -Z/r + Z alpha/2 + ...
    is reproduced without cancellation.
    """
    if not (r > 0.0) or math.isinf(r):
        raise ValueError(f"radius must be a finite positive real, got {r!r}")
    u = params.alpha * r
    if u < 1.0:
        return -params.Z * params.alpha / math.expm1(u)
    t = math.exp(-u)
    return -params.Z * params.alpha * t / (1.0 - t)


def centrifugal_approx(r: float, alpha: float) -> float:
    """Exponential stand-in for 1/r^2: alpha^2 e^{-ar}/(1 - e^{-ar})^2.

    Equals 1/r^2 - alpha^2/12 + O(alpha^4 r^2) for small alpha*r.
    """
    if not (r > 0.0) or math.isinf(r):
        raise ValueError(f"radius must be a finite positive real, got {r!r}")
    u = alpha * r
    if u < 1.0:
        em = math.expm1(u)
        return alpha * alpha * math.exp(u) / (em * em)
    t = math.exp(-u)
    return alpha * alpha * t / ((1.0 - t) * (1.0 - t))


def energy(params: PotentialParams, qn: QuantumNumbers) -> BoundState:
    """Closed-form bound-state energy for (n, l), or a no-state marker.

    Uses the compact form epsilon = (delta - m^2)/(2m), m = n+l+(D-1)/2,
    which is algebraically identical to the full bracket expression (see
    the test suite for the verified equivalence).  Existence additionally
    requires m > 0, which only fails for n = l = 0 in D = 1 where the
    level formula is singular and the would-be state is spurious.
    """
    m = _m_index(qn.n, qn.l, params.D)
    delta = _delta(params)
    if m <= 0.0 or delta <= m * m:
        return BoundState(qn=qn, energy=None, epsilon=None, norm_const=None, exists=False)
    eps = (delta - m * m) / (2.0 * m)
    e_val = -((params.alpha * params.hbar * eps) ** 2) / (2.0 * params.mu)
    return BoundState(qn=qn, energy=e_val, epsilon=eps, norm_const=None, exists=True)


def spectrum(params: PotentialParams, l: int = 0, n_max: int = 64) -> list[BoundState]:
    """All levels n = 0 .. last existing (capped at n_max), in order.

    Empty when no bound state exists.  The returned list can contain a
    leading non-existing entry (n = 0 in D = 1, l = 0) so that row
    indices always equal n.
    """
    states = [energy(params, QuantumNumbers(n=n, l=l)) for n in range(n_max + 1)]
    last = -1
    for st in states:
        if st.exists:
            last = st.qn.n
    return states[: last + 1]


def bound_state_count(params: PotentialParams, l: int = 0, n_max: int = 64) -> int:
    """Number of radial indices n <= n_max supporting a bound state."""
    return sum(
        1 for n in range(n_max + 1) if energy(params, QuantumNumbers(n=n, l=l)).exists
    )


def coulomb_limit_energy(params: PotentialParams, qn: QuantumNumbers) -> float:
    """alpha -> 0 limit of the level: -(mu/2 hbar^2) (2Z/Lambda)^2."""
    lam = 2 * qn.n + 2 * qn.l + params.D - 1
    if lam <= 0:
        raise ValueError("level is singular: 2n+2l+D-1 must be positive")
    return -(params.mu / (2.0 * params.hbar**2)) * (2.0 * params.Z / lam) ** 2


def _norm_double_sum(alpha: float, eps: float, v: int, n: int) -> float:
    """Core of the normalization: C with C^2 K^2 B(2e, v+1) S = alpha.

    S is the finite double sum over the squared series coefficients of
    the degree-n polynomial factor, with every Beta expressed as
    B(2e, v+1) times exact Pochhammer-ratio products:

        S = sum_k (-n)_k (2e)_k (n+2e+v)_k / ((1+2e+v)_k (1+2e)_k k!)
          * sum_j (-n)_j (2e+k)_j (n+2e+v)_j / ((1+2e+v+k)_j (1+2e)_j j!)

    and K = (2e+1)_n/n!.  That expansion is around s = 0; when the
    weight mass sits near s = 1 (2e > v) its cancellation grows without
    bound in eps, so the sum is then evaluated in the algebraically
    identical form expanded around the other endpoint (the polynomial
    identity P_n^(a,b)(-x) = (-1)^n P_n^(b,a)(x)), which swaps the roles
    of the bases:

        K = (v)_n/n!,  denominators (v)_k, ratio numerators (v+1)_k.

    Either way the alternating sum is accumulated in extended precision;
    its residual condition number near the crossover is mild.
    """
    if 2.0 * eps <= v:
        denom_base = 1.0 + 2.0 * eps
        ratio_base = 2.0 * eps
        k_factor = specfun.pochhammer(2.0 * eps + 1.0, n) / math.factorial(n)
    else:
        denom_base = float(v)
        ratio_base = v + 1.0
        k_factor = specfun.pochhammer(float(v), n) / math.factorial(n)

    num_base = np.longdouble(n + 2.0 * eps + v)  # (n+2e+v)_k in both forms
    d0 = np.longdouble(denom_base)
    r0 = np.longdouble(ratio_base)
    w0 = np.longdouble(1.0 + 2.0 * eps + v)  # shared ratio denominator
    one = np.longdouble(1.0)

    total = np.longdouble(0.0)
    outer = one
    for k in range(n + 1):
        inner = one
        inner_sum = one
        for j in range(n):
            inner = (
                inner
                * (j - n)
                * (num_base + j)
                * (r0 + k + j)
                / ((d0 + j) * (w0 + k + j) * (j + 1))
            )
            inner_sum += inner
        total += outer * inner_sum
        outer = (
            outer
            * (k - n)
            * (num_base + k)
            * (r0 + k)
            / ((d0 + k) * (w0 + k) * (k + 1))
        )
    if not (total > 0.0):
        raise ArithmeticError(
            f"normalization sum is not positive (n={n}): cancellation exceeded "
            "extended precision"
        )
    beta_front = specfun.beta(2.0 * eps, v + 1.0)
    return math.sqrt(alpha / (beta_front * float(total))) / k_factor


def normalization_constant(params: PotentialParams, qn: QuantumNumbers) -> float:
    """Positive constant C_n making the reduced wavefunction unit-normed.

    Computed from the finite double sum over the squared polynomial
    series (see _norm_double_sum); the Beta prefactor is evaluated in
    log space and the alternating sum in extended precision.  For
    2l+D-1 = 0 the polynomial has a root on the s = 1 boundary; the sum
    runs over the reduced degree n-1 representation there.
    """
    st = energy(params, qn)
    if not st.exists:
        raise ValueError(f"no bound state for n={qn.n}, l={qn.l}, D={params.D}")
    eps = st.epsilon
    v = _angular_v(qn.l, params.D)
    n = qn.n
    if v == 0:
        # P_n^(a,-1)(1-2s) = ((n+a)/n) (1-s) P_{n-1}^(a,1)(1-2s): route
        # through the (v=2, degree n-1) representation
        core = _norm_double_sum(params.alpha, eps, 2, n - 1)
        return core * n / (n + 2.0 * eps)
    return _norm_double_sum(params.alpha, eps, v, n)


def wavefunction_u(s, params: PotentialParams, qn: QuantumNumbers, norm_const: float | None = None):
    """Reduced wavefunction C_n s^eps (1-s)^(v/2) P_n^(2eps, v-1)(1-2s).

    s = exp(-alpha r) must lie in (0, 1); scalar or array input.  The
    endpoint factors are evaluated through exp/log so the function
    underflows to an exact 0 instead of raising.
    """
    st = energy(params, qn)
    if not st.exists:
        raise ValueError(f"no bound state for n={qn.n}, l={qn.l}, D={params.D}")
    s_arr = np.asarray(s, dtype=float)
    if not np.all((s_arr > 0.0) & (s_arr < 1.0)):
        raise ValueError("s must lie strictly inside (0, 1)")
    if norm_const is None:
        norm_const = normalization_constant(params, qn)
    eps = st.epsilon
    v = _angular_v(qn.l, params.D)
    log_amp = eps * np.log(s_arr)
    if v > 0:
        log_amp = log_amp + (0.5 * v) * np.log1p(-s_arr)
    poly = specfun.jacobi_p(qn.n, 2.0 * eps, v - 1.0, 1.0 - 2.0 * s_arr)
    out = norm_const * np.exp(log_amp) * poly
    if s_arr.ndim == 0:
        return float(out)
    return out


def default_grid(params: PotentialParams, qn: QuantumNumbers, points: int = 4000) -> RadialGrid:
    """Linear grid covering the state: r up to 40/kappa with kappa = alpha*eps."""
    st = energy(params, qn)
    if not st.exists:
        raise ValueError(f"no bound state for n={qn.n}, l={qn.l}, D={params.D}")
    kappa = params.alpha * st.epsilon
    r_max = 40.0 / kappa
    return RadialGrid(r_min=r_max / (4.0 * points), r_max=r_max, points=points)


def wavefunction_samples(
    params: PotentialParams,
    qn: QuantumNumbers,
    grid: RadialGrid | np.ndarray | None = None,
    norm_const: float | None = None,
) -> RadialSamples:
    """Sample U and R = r^-(D-1)/2 U on a radial grid.

    U has exactly n interior sign changes (n - 1 when 2l+D-1 = 0, where
    one polynomial root sits on the r = 0 boundary itself).
    """
    if grid is None:
        grid = default_grid(params, qn)
    if isinstance(grid, RadialGrid):
        r = grid.radii()
        meta = {
            "r_min": grid.r_min,
            "r_max": grid.r_max,
            "points": grid.points,
            "spacing": grid.spacing,
        }
    else:
        r = np.asarray(grid, dtype=float)
        meta = {"points": int(r.size), "spacing": "explicit"}
    if r.ndim != 1 or r.size < 1:
        raise ValueError("radial grid must be a 1-D array")
    if not np.all(r > 0.0):
        raise ValueError("all radii must be positive")
    if not np.all(np.diff(r) > 0.0):
        raise ValueError("radii must be strictly increasing")

    st = energy(params, qn)
    if not st.exists:
        raise ValueError(f"no bound state for n={qn.n}, l={qn.l}, D={params.D}")
    if norm_const is None:
        norm_const = normalization_constant(params, qn)

    s = np.exp(-params.alpha * r)
    u = np.zeros_like(r)
    interior = (s > 0.0) & (s < 1.0)
    if np.any(interior):
        u[interior] = wavefunction_u(s[interior], params, qn, norm_const=norm_const)
    rr = u * r ** (-(params.D - 1) / 2.0)
    meta.update({"epsilon": st.epsilon, "norm_const": norm_const, "units": "hbar,mu as given"})
    return RadialSamples(r_values=r, U_values=u, R_values=rr, meta=meta)


def count_nodes(values: np.ndarray, rel_floor: float = 1e-9) -> int:
    """Sign changes of a sampled function, ignoring near-zero samples."""
    v = np.asarray(values, dtype=float)
    peak = np.max(np.abs(v)) if v.size else 0.0
    if peak == 0.0:
        return 0
    signs = np.sign(v[np.abs(v) > rel_floor * peak])
    return int(np.sum(signs[1:] != signs[:-1]))


def nu_problem(dp: DimensionlessParams) -> NUProblem:
    """Hypergeometric-type coefficients of the s = exp(-alpha r) equation.

    sigma = s(1-s), tau_t = 1-s, and sigma_t collects the energy,
    strength and centrifugal terms of the transformed radial equation.
    """
    e2 = dp.epsilon * dp.epsilon
    return NUProblem(
        sigma=QuadPoly(0.0, 1.0, -1.0),
        sigma_tilde=QuadPoly(-e2, 2.0 * e2 + dp.delta - dp.gamma, -(e2 + dp.delta)),
        tau_tilde=QuadPoly(1.0, -1.0, 0.0),
    )
