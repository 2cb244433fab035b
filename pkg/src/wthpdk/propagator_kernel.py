"""Momentum-space propagator numerator and the identities that certify it.

Position-space objects (singular functions, time ordering) are represented
only through their momentum-space content: d_mu -> i s p_mu and the
Green-function relation becomes division by the scalar denominator
p^2 + lambda(p^2) m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dkp_matrices import representation
from .errors import PreconditionError
from .exact import ONE, I, Mat10, to_exact
from .momentum_kernel import FourMomentum, ModelParams, equation_matrix, mass_spectrum, p_hat


@dataclass(frozen=True)
class PropagatorKernel:
    numerator: Mat10
    denominator: object
    contact: Mat10


def _lam_checked(p: FourMomentum, params: ModelParams):
    if not isinstance(params, ModelParams):
        raise PreconditionError("propagator kernels need massive ModelParams")
    lam = params.lam(p.p_squared)
    if lam == 0:
        raise PreconditionError("kernel is singular at lambda = 0")
    return lam


def _unit(exact: bool):
    return I if exact else 1j


def _recip(x, exact: bool):
    return ONE / to_exact(x) if exact else 1.0 / x


def propagator_numerator(p: FourMomentum, params: ModelParams, freq_sign: int = 1) -> Mat10:
    """[s i p_hat (s i m p_hat P + s i lambda p_hat P_bar - lambda m)] / (lambda m)."""
    lam = _lam_checked(p, params)
    m = params.m
    rep = representation()
    exact = p.exact and params.exact
    ph = p_hat(p)
    si = _unit(exact) * freq_sign
    inner = (ph @ rep.p * (si * m) + ph @ rep.p_bar * (si * lam)
             - Mat10.identity(ph.exact) * (lam * m))
    return ph @ inner * (si * _recip(lam * m, exact))


def _source_factor(p: FourMomentum, params: ModelParams, freq_sign: int) -> Mat10:
    """(m P_bar + lambda P)(s i p_hat)/(lambda m)."""
    lam = _lam_checked(p, params)
    rep = representation()
    exact = p.exact and params.exact
    si = _unit(exact) * freq_sign
    return (rep.p_bar * params.m + rep.p * lam) @ p_hat(p) * (si * _recip(lam * params.m, exact))


def equation_residual(p: FourMomentum, params: ModelParams, freq_sign: int = 1) -> Mat10:
    """Lambda(p) numerator - source_factor * (-p^2 - lambda m); zero off-shell and on."""
    lam = _lam_checked(p, params)
    L = equation_matrix(p, params, freq_sign)
    lhs = L @ propagator_numerator(p, params, freq_sign)
    return lhs - _source_factor(p, params, freq_sign) * (-p.p_squared - lam * params.m)


def propagator_denominator(p_squared, params: ModelParams):
    return p_squared + params.lam(p_squared) * params.m


def contact_term(p: FourMomentum, params: ModelParams) -> Mat10:
    """i (m P_bar + lambda P)(i p_hat)/(lambda m): the delta-function source."""
    exact = p.exact and params.exact
    return _source_factor(p, params, 1) * _unit(exact)


def propagator(p: FourMomentum, params: ModelParams) -> Mat10:
    """numerator * (-i) / (p^2 + lambda m): Fourier image of the time-ordered pairing."""
    den = propagator_denominator(p.p_squared, params)
    if den == 0:
        raise PreconditionError("propagator has a pole here: p^2 + lambda m = 0")
    exact = p.exact and params.exact
    return propagator_numerator(p, params, 1) * (-_unit(exact) * _recip(den, exact))


def contact_residual(p: FourMomentum, params: ModelParams) -> Mat10:
    """Lambda_+(p) propagator(p) - contact_term(p); zero off-shell."""
    return equation_matrix(p, params, 1) @ propagator(p, params) - contact_term(p, params)


def denominator_factors(params: ModelParams) -> tuple:
    """(prefactor, M^2) with p^2 + lambda m = prefactor (p^2 + M^2) identically."""
    if params.A == -1:
        raise PreconditionError("A = -1: the p^2 coefficient of the denominator vanishes")
    pref = (params.A + 1) / 2
    return pref, params.B * params.m ** 2 / (params.A + 1)


def commutator_kernel(p: FourMomentum, params: ModelParams) -> Mat10:
    """Matrix coefficient of the Pauli-Jordan function: -i * numerator(+)."""
    exact = p.exact and params.exact
    return propagator_numerator(p, params, 1) * (-_unit(exact))


def propagator_kernel(p: FourMomentum, params: ModelParams) -> PropagatorKernel:
    return PropagatorKernel(
        numerator=propagator_numerator(p, params, 1),
        denominator=propagator_denominator(p.p_squared, params),
        contact=contact_term(p, params),
    )


def polynomial_degree_along_ray(fn, direction: FourMomentum, max_degree: int = 8,
                                start: int = 1) -> int | None:
    """Smallest d such that t -> fn(t * direction) is a degree-d matrix polynomial.

    Uses exact finite differences at integer t = start, start+1, ...; needs
    max_degree + 2 samples.  Returns None if no degree <= max_degree fits.
    Sample points where fn raises PreconditionError are not allowed.
    """
    n = max_degree + 3
    values = [fn(direction.scaled(Fraction(start + k))) for k in range(n)]
    diffs = values
    for d in range(n - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        # d+1-th differences all zero => degree <= d
        if all(x.is_zero() for x in diffs):
            return d
    return None


def locality_report(params: ModelParams, direction: FourMomentum) -> dict:
    """Degree of the numerator and of lambda*m*numerator along a momentum ray.

    A finite numerator degree means only local (polynomial) dependence on p;
    clearing lambda always leaves a polynomial.
    """
    num_deg = polynomial_degree_along_ray(
        lambda q: propagator_numerator(q, params, 1), direction)
    cleared_deg = polynomial_degree_along_ray(
        lambda q: propagator_numerator(q, params, 1) * params.lam(q.p_squared) * params.m, direction)
    return {"numerator_degree": num_deg, "cleared_degree": cleared_deg,
            "local": num_deg is not None}


def spectrum_pole(params: ModelParams):
    """M^2 from the mass spectrum, for cross-checking denominator_factors."""
    return mass_spectrum(params).M_squared
