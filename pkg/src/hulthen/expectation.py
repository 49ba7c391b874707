"""Expectation values from parameter derivatives of the level formula.

For a Hamiltonian depending on a parameter q, dE/dq equals the
expectation of dH/dq in the corresponding eigenstate.  Differentiating
the closed-form level in the angular momentum gives <1/r^2> (more
precisely, the expectation of the exponential centrifugal stand-in the
eigenfunctions actually solve), and differentiating in the strength Z
gives <V>.  <T> follows from E = <T> + <V>.

With Lambda = 2n+2l+D-1 and delta = 2 Z mu/(alpha hbar^2):

    dE/dl    = alpha^2 hbar^2 (16 delta^2 - Lambda^4) / (8 mu Lambda^3)
    <r^-2>   = (alpha^2/4) (16 delta^2 - Lambda^4) / ((2l+D-2) Lambda^3)
    <V>      = (2 alpha Z / Lambda) [1/2 + (n(n+2l+D-2) + gamma - delta)/Lambda]

The identities are exact for the model the eigenfunctions solve, so the
quadrature cross-checks in this module agree to quadrature accuracy; the
quadrature of the true 1/r^2 is reported separately as a diagnostic of
the exponential approximation.
"""

import math
from dataclasses import dataclass

from . import model, specfun
from .model import PotentialParams, QuantumNumbers
from .oracle import adaptive_quad

__all__ = [
    "ExpectationReport",
    "dE_dl",
    "inv_r2_expect",
    "potential_expect",
    "kinetic_expect",
    "quadrature_expect",
    "expectation_report",
]


@dataclass(frozen=True)
class ExpectationReport:
    """Closed-form values plus quadrature cross-checks for one level.

    The three inv_r2 fields are None for l = 0 in D = 2: the derivative
    prefactor 2l+D-2 vanishes there, and consistently the |U|^2-weighted
    integrals of both 1/r^2 and its exponential stand-in diverge
    logarithmically at the origin (U^2 ~ r near r = 0 in that case).
    """

    inv_r2_hft: float | None
    v_hft: float
    t_value: float
    inv_r2_quad_approx: float | None
    inv_r2_quad_exact: float | None
    v_quad: float


def _existing(params: PotentialParams, qn: QuantumNumbers) -> model.BoundState:
    st = model.energy(params, qn)
    if not st.exists:
        raise ValueError(f"no bound state for n={qn.n}, l={qn.l}, D={params.D}")
    return st


def dE_dl(params: PotentialParams, qn: QuantumNumbers) -> float:
    """Derivative of the closed-form level in the (continuous) angular
    momentum; always matches a central difference of that expression.

    (For l = 0 in D = 1 the expression's continuation is not the
    physical branch, so this is the formula derivative, not dE/dl of the
    true level curve.)
    """
    _existing(params, qn)
    delta = 2.0 * params.Z * params.mu / (params.alpha * params.hbar**2)
    lam = 2.0 * qn.n + 2.0 * qn.l + params.D - 1.0
    return (
        params.alpha**2
        * params.hbar**2
        * (16.0 * delta**2 - lam**4)
        / (8.0 * params.mu * lam**3)
    )


def inv_r2_expect(params: PotentialParams, qn: QuantumNumbers) -> float:
    """<r^-2> of the level (expectation of the exponential centrifugal
    operator, which the eigenfunctions solve exactly).

    Undefined for l = 0 in D = 2 where 2l+D-2 = 0.  The divisor enters
    as |2l+D-2|: for l = 0 in D = 1 both dgamma/dl and the physical
    branch of the continued level flip sign together, so the expectation
    stays positive (confirmed by the quadrature cross-check).
    """
    _existing(params, qn)
    w = 2 * qn.l + params.D - 2
    if w == 0:
        raise ValueError("<r^-2> degenerates for l = 0 in D = 2 (2l+D-2 = 0)")
    delta = 2.0 * params.Z * params.mu / (params.alpha * params.hbar**2)
    lam = 2.0 * qn.n + 2.0 * qn.l + params.D - 1.0
    return (params.alpha**2 / 4.0) * (16.0 * delta**2 - lam**4) / (abs(w) * lam**3)


def potential_expect(params: PotentialParams, qn: QuantumNumbers) -> float:
    """<V> from the strength derivative; negative for every bound state."""
    _existing(params, qn)
    delta = 2.0 * params.Z * params.mu / (params.alpha * params.hbar**2)
    gamma = (2 * qn.l + params.D - 1) * (2 * qn.l + params.D - 3) / 4.0
    lam = 2.0 * qn.n + 2.0 * qn.l + params.D - 1.0
    bracket = 0.5 + (qn.n * (qn.n + 2 * qn.l + params.D - 2) + gamma - delta) / lam
    return (2.0 * params.alpha * params.Z / lam) * bracket


def kinetic_expect(params: PotentialParams, qn: QuantumNumbers) -> float:
    """<T> = E - <V>."""
    st = _existing(params, qn)
    return st.energy - potential_expect(params, qn)


def quadrature_expect(f, params: PotentialParams, qn: QuantumNumbers, abs_tol: float = 1e-10) -> float:
    """integral of f(r) |U(r)|^2 dr over (0, inf) by adaptive quadrature.

    The upper limit is cut where the |U|^2 tail (including the polynomial
    envelope) is below ~1e-14 of the total.
    """
    st = _existing(params, qn)
    eps = st.epsilon
    v = 2 * qn.l + params.D - 1
    n = qn.n
    alpha = params.alpha
    c_n = model.normalization_constant(params, qn)
    kappa = alpha * eps
    # |P_n| on the interval is bounded by its s -> 0 endpoint value here
    poly_peak = specfun.pochhammer(2.0 * eps + 1.0, n) / math.factorial(n)
    r_max = (50.0 + max(0.0, 2.0 * math.log(c_n * poly_peak))) / (2.0 * kappa)

    two_eps = 2.0 * eps
    half_v = 0.5 * v

    def u_squared(r):
        s = math.exp(-alpha * r)
        if s <= 0.0 or s >= 1.0:
            return 0.0
        log_amp = eps * math.log(s)
        if v > 0:
            log_amp += half_v * math.log1p(-s)
        amp = math.exp(log_amp)
        poly = specfun.jacobi_p(n, two_eps, v - 1.0, 1.0 - 2.0 * s)
        val = c_n * amp * poly
        return val * val

    return adaptive_quad(lambda r: f(r) * u_squared(r), 0.0, r_max, abs_tol=abs_tol)


def expectation_report(params: PotentialParams, qn: QuantumNumbers) -> ExpectationReport:
    """All closed-form values and quadrature cross-checks for one level."""
    st = _existing(params, qn)
    w = 2 * qn.l + params.D - 2
    degenerate = w == 0
    v_hft = potential_expect(params, qn)
    return ExpectationReport(
        inv_r2_hft=None if degenerate else inv_r2_expect(params, qn),
        v_hft=v_hft,
        t_value=st.energy - v_hft,
        inv_r2_quad_approx=None if degenerate else quadrature_expect(
            lambda r: model.centrifugal_approx(r, params.alpha), params, qn
        ),
        inv_r2_quad_exact=None if degenerate else quadrature_expect(
            lambda r: 1.0 / (r * r), params, qn
        ),
        v_quad=quadrature_expect(lambda r: model.potential(r, params), params, qn),
    )
