"""Representation matrices of the 10-dimensional vector PDK algebra.

All matrices are built by summing signed matrix units, never typed in by
hand, so every sign follows from the single antisymmetry convention in
:mod:`wthpdk.index_algebra`.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Mat10
from .index_algebra import SPACETIME, biv, epsilon_term, vec
from .report import VerificationReport

RELATIONS = (
    "dkp-algebra",
    "projectors",
    "lorentz-commutators",
    "beta-lorentz",
    "projector-lorentz",
    "eta-relations",
    "hermiticity",
    "lorentz-epsilon-form",
)


def _msum(terms) -> Mat10:
    out = Mat10.zeros()
    for t in terms:
        out = out + t
    return out


def build_beta(mu: int) -> Mat10:
    """beta_mu = sum_nu (eps^{nu,[nu mu]} + eps^{[nu mu],nu})."""
    if mu not in SPACETIME:
        raise ValueError(f"mu must be in 1..4, got {mu}")
    return _msum(epsilon_term(vec(nu), biv(nu, mu)) + epsilon_term(biv(nu, mu), vec(nu))
                 for nu in SPACETIME)


def build_projector_pair() -> tuple[Mat10, Mat10]:
    """(P_bar, P): projectors on the vector and on the bivector block."""
    p_bar = _msum(epsilon_term(vec(mu), vec(mu)) for mu in SPACETIME)
    p = _msum(epsilon_term(biv(nu, mu), biv(nu, mu))
              for nu in SPACETIME for mu in SPACETIME) * Fraction(1, 2)
    return p_bar, p


def build_eta() -> Mat10:
    spatial = (1, 2, 3)
    return (_msum(epsilon_term(vec(m), vec(m)) for m in spatial)
            - epsilon_term(vec(4), vec(4))
            + _msum(epsilon_term(biv(m, 4), biv(m, 4)) for m in spatial)
            - _msum(epsilon_term(biv(m, n), biv(m, n))
                    for m in spatial for n in spatial) * Fraction(1, 2))


def build_lorentz_generator(mu: int, nu: int) -> Mat10:
    """J_{mu nu} = beta_mu beta_nu - beta_nu beta_mu (no factor 1/2)."""
    b = representation().beta
    return b[mu - 1] @ b[nu - 1] - b[nu - 1] @ b[mu - 1]


def lorentz_generator_epsilon_form(mu: int, nu: int) -> Mat10:
    """J_{mu nu} summed directly from matrix units, independent of beta."""
    return (_msum(epsilon_term(biv(lam, mu), biv(lam, nu)) - epsilon_term(biv(lam, nu), biv(lam, mu))
                  for lam in SPACETIME)
            + epsilon_term(vec(mu), vec(nu)) - epsilon_term(vec(nu), vec(mu)))


@dataclass(frozen=True)
class RepresentationSet:
    beta: tuple[Mat10, Mat10, Mat10, Mat10]
    p_bar: Mat10
    p: Mat10
    eta: Mat10
    lorentz: tuple[tuple[Mat10, ...], ...]

    @classmethod
    def from_betas(cls, beta) -> "RepresentationSet":
        beta = tuple(beta)
        p_bar, p = build_projector_pair()
        lorentz = tuple(tuple(beta[m] @ beta[n] - beta[n] @ beta[m] for n in range(4))
                        for m in range(4))
        return cls(beta=beta, p_bar=p_bar, p=p, eta=build_eta(), lorentz=lorentz)

    def J(self, mu: int, nu: int) -> Mat10:
        return self.lorentz[mu - 1][nu - 1]

    def b(self, mu: int) -> Mat10:
        return self.beta[mu - 1]

    def with_fault(self, mu: int, row: int, col: int) -> "RepresentationSet":
        """Copy with entry (row, col) of beta_mu negated (1-based); for fault injection."""
        bad = Mat10(self.beta[mu - 1].a.copy())
        entry = bad.a[row - 1, col - 1]
        bad.a[row - 1, col - 1] = -entry if entry else entry + 1
        beta = list(self.beta)
        beta[mu - 1] = bad
        return RepresentationSet.from_betas(beta)


@lru_cache(maxsize=None)
def representation() -> RepresentationSet:
    return RepresentationSet.from_betas(build_beta(mu) for mu in SPACETIME)


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def _relation_instances(rel: str, rep: RepresentationSet):
    """Yield (witness, residual matrix) for every index instance of a family."""
    b, J = rep.b, rep.J
    one = Mat10.identity()
    if rel == "dkp-algebra":
        for mu, nu, al in itertools.product(SPACETIME, repeat=3):
            lhs = b(mu) @ b(nu) @ b(al) + b(al) @ b(nu) @ b(mu)
            rhs = b(al) * _delta(mu, nu) + b(mu) * _delta(al, nu)
            yield (mu, nu, al), lhs - rhs
    elif rel == "projectors":
        pb, p = rep.p_bar, rep.p
        yield ("pbar^2",), pb @ pb - pb
        yield ("p^2",), p @ p - p
        yield ("pbar+p",), pb + p - one
        yield ("pbar*p",), pb @ p
        yield ("p*pbar",), p @ pb
        for mu in SPACETIME:
            yield ("beta-pbar", mu), b(mu) @ pb + pb @ b(mu) - b(mu)
            yield ("beta-p", mu), b(mu) @ p + p @ b(mu) - b(mu)
    elif rel == "lorentz-commutators":
        for rho, sig, mu, nu in itertools.product(SPACETIME, repeat=4):
            lhs = J(rho, sig).commutator(J(mu, nu))
            rhs = (J(rho, nu) * _delta(sig, mu) + J(sig, mu) * _delta(rho, nu)
                   - J(sig, nu) * _delta(rho, mu) - J(rho, mu) * _delta(sig, nu))
            yield (rho, sig, mu, nu), lhs - rhs
    elif rel == "beta-lorentz":
        for lam, mu, nu in itertools.product(SPACETIME, repeat=3):
            lhs = b(lam).commutator(J(mu, nu))
            rhs = b(nu) * _delta(lam, mu) - b(mu) * _delta(lam, nu)
            yield (lam, mu, nu), lhs - rhs
    elif rel == "projector-lorentz":
        for mu, nu in itertools.product(SPACETIME, repeat=2):
            yield ("pbar", mu, nu), rep.p_bar.commutator(J(mu, nu))
            yield ("p", mu, nu), rep.p.commutator(J(mu, nu))
    elif rel == "eta-relations":
        eta = rep.eta
        for m in (1, 2, 3):
            yield ("anticommute", m), eta @ b(m) + b(m) @ eta
        yield ("commute", 4), eta @ b(4) - b(4) @ eta
        yield ("hermitian",), eta - eta.H
        yield ("involution",), eta @ eta - one
    elif rel == "hermiticity":
        for mu in SPACETIME:
            yield ("beta", mu), b(mu) - b(mu).H
        yield ("pbar",), rep.p_bar - rep.p_bar.H
        yield ("p",), rep.p - rep.p.H
    elif rel == "lorentz-epsilon-form":
        for mu, nu in itertools.product(SPACETIME, repeat=2):
            yield (mu, nu), J(mu, nu) - lorentz_generator_epsilon_form(mu, nu)
    else:
        raise ValueError(f"unknown relation family {rel!r}; choose from {RELATIONS}")


def verify_structure(relation: str, rep: RepresentationSet | None = None) -> VerificationReport:
    """Check every index instance of one identity family exactly."""
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation family {relation!r}; choose from {RELATIONS}")
    rep = rep or representation()
    t0 = time.perf_counter()
    worst, witness, count, failed = 0.0, None, 0, 0
    for tag, resid in _relation_instances(relation, rep):
        count += 1
        if not resid.is_zero():
            failed += 1
            r = resid.max_abs()
            if witness is None or r > worst:
                worst, witness = r, tag
    return VerificationReport(
        check_name=relation,
        params={"instances": count, "failed": failed},
        status="pass" if failed == 0 else "fail",
        max_residual=worst,
        witness=witness,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )
