"""Seeded generators of small rational fixtures.

Numerators and denominators are bounded (default 50) so exact arithmetic
stays fast.  Every generator takes a ``random.Random`` so runs are
reproducible from a single seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .exact import CRational, I
from .field_observables import FieldTensor
from .momentum_kernel import FourMomentum, MasslessParams, ModelParams, mass_spectrum

BOUND = 50


def rational(rng: random.Random, bound: int = BOUND, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def positive_rational(rng: random.Random, bound: int = BOUND) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def complex_rational(rng: random.Random, bound: int = BOUND) -> CRational:
    return CRational(rational(rng, bound), rational(rng, bound))


def offshell_momentum(rng: random.Random, bound: int = BOUND) -> FourMomentum:
    return FourMomentum(*(rational(rng, bound) for _ in range(4)))


def massive_params(rng: random.Random, bound: int = BOUND) -> ModelParams:
    return ModelParams(rational(rng, bound), rational(rng, bound), positive_rational(rng, bound))


def generic_sample(rng: random.Random, bound: int = BOUND) -> tuple[FourMomentum, ModelParams]:
    """(p, params) with lambda m (lambda + m) != 0 and p^2 + lambda m != 0."""
    while True:
        p, params = offshell_momentum(rng, bound), massive_params(rng, bound)
        lam, m = params.lam(p.p_squared), params.m
        if lam and lam + m and p.p_squared + lam * m:
            return p, params


def onshell_from_mass_squared(rng: random.Random, M2, bound: int = BOUND) -> FourMomentum:
    """Rational momentum with p0^2 - |p|^2 = M2 and p0 > 0.

    p1, p2 are drawn freely; then p0 - p3 = t and p0 + p3 = K/t with
    K = M2 + p1^2 + p2^2, so p0 and p3 stay rational.
    """
    M2 = Fraction(M2)
    while True:
        p1, p2 = rational(rng, bound), rational(rng, bound)
        K = M2 + p1 * p1 + p2 * p2
        t = positive_rational(rng, bound)
        if K > 0:
            p0 = (t + K / t) / 2
            p3 = (K / t - t) / 2
        elif K == 0:
            p0, p3 = t / 2, -t / 2
        else:
            continue
        return FourMomentum(p1, p2, p3, p0)


def onshell_sample(rng: random.Random, params: ModelParams, branch: str = "primary",
                   bound: int = BOUND) -> FourMomentum:
    spec = mass_spectrum(params)
    M2 = spec.M_squared if branch == "primary" else spec.M_prime_squared
    if M2 is None:
        raise ValueError(f"{branch} branch not realized for {params}")
    return onshell_from_mass_squared(rng, M2, bound)


def lightlike_sample(rng: random.Random, bound: int = BOUND) -> FourMomentum:
    while True:
        p = onshell_from_mass_squared(rng, 0, bound)
        if not p.is_zero():
            return p


def massless_params(rng: random.Random, bound: int = BOUND) -> MasslessParams:
    return MasslessParams.from_A(rational(rng, bound), positive_rational(rng, bound))


def random_field(rng: random.Random, bound: int = BOUND) -> FieldTensor:
    return FieldTensor.from_canonical([complex_rational(rng, bound) for _ in range(6)])


def _levi_civita4(idx) -> int:
    perm = list(idx)
    if len(set(perm)) < 4:
        return 0
    sign = 1
    for a, b in itertools.combinations(range(4), 2):
        if perm[a] > perm[b]:
            sign = -sign
    return sign


def _random_polarization(rng, bound):
    return [complex_rational(rng, bound) for _ in range(3)] + [I * complex_rational(rng, bound)]


def proca_field(rng: random.Random, p: FourMomentum, bound: int = BOUND) -> FieldTensor:
    """f = i (p_mu e_nu - p_nu e_mu) with p.e = 0 (p.e = 0 not needed if p^2 = 0)."""
    comps = p.components
    e = _random_polarization(rng, bound)
    p2 = p.p_squared
    if p2:
        pe = sum((a * b for a, b in zip(comps, e)), CRational(0))
        e = [x - pe / CRational(p2) * c for x, c in zip(e, comps)]
    f = [[I * (comps[a] * e[b] - comps[b] * e[a]) for b in range(4)] for a in range(4)]
    return FieldTensor(f)


def dual_field(rng: random.Random, p: FourMomentum, bound: int = BOUND) -> FieldTensor:
    """f_{mu nu} = eps_{mu nu rho sigma} p_rho e_sigma, so p_mu f_{mu nu} = 0."""
    comps = p.components
    e = _random_polarization(rng, bound)
    f = [[CRational(0)] * 4 for _ in range(4)]
    for a, b, c, d in itertools.permutations(range(4)):
        s = _levi_civita4((a, b, c, d))
        f[a][b] = f[a][b] + comps[c] * e[d] * s
    return FieldTensor(f)
