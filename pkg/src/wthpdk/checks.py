"""Verification suites run by the CLI.

Each check yields (witness, residual) pairs; a residual is a Mat10, a
vector, a scalar, or a bool (True meaning "holds").  Exact residuals pass
only when exactly zero; float residuals pass within the check's tolerance.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import field_observables as fo
from . import momentum_kernel as mk
from . import propagator_kernel as pk
from .dkp_matrices import RELATIONS, RepresentationSet, representation, verify_structure
from .exact import CRational, Mat10
from .index_algebra import CANONICAL_INDICES, epsilon_basis, index_label
from .report import VerificationReport
from .sampling import (
    dual_field,
    generic_sample,
    lightlike_sample,
    massive_params,
    massless_params,
    offshell_momentum,
    onshell_sample,
    proca_field,
    random_field,
)

SUITES = ("all", "algebra", "minimal", "projectors", "observables", "propagator")

# Reference fixtures (all exact).
TH_PARAMS = mk.ModelParams(1, 2, 5)
TH_MOMENTUM = mk.FourMomentum(0, 0, 12, 13)
NONDEG_PARAMS = mk.ModelParams(3, 16, Fraction(5, 2))  # M = 2m = 5, lambda = 10
NONDEG_MOMENTUM = mk.FourMomentum(0, 0, 12, 13)
LIGHTLIKE = (mk.FourMomentum(3, 4, 0, 5), 1)
LIGHTLIKE_2 = (mk.FourMomentum(0, 0, 1, 1), 2)
WEINBERG_PARAMS = mk.ModelParams(0, 1, 1)
# A=3, B=8: M = sqrt(2) m is irrational, yet p0^2 - |p|^2 = 2 has rational points.
FAMILY_PARAMS = mk.ModelParams(3, 8, 1)
FAMILY_MOMENTUM = mk.FourMomentum(0, 0, Fraction(1, 2), Fraction(3, 2))


def _residual_size(r) -> tuple[bool, float]:
    """(is exactly zero / holds, magnitude) for one residual object."""
    if isinstance(r, bool):
        return r, 0.0 if r else 1.0
    if isinstance(r, Mat10):
        if r.exact:
            return r.is_zero(), r.max_abs()
        return False, r.max_abs()
    if isinstance(r, np.ndarray):
        if r.dtype == object:
            return not any(r), max((abs(x) for x in r), default=0.0)
        return False, float(np.max(np.abs(r))) if r.size else 0.0
    if isinstance(r, CRational) or isinstance(r, (int, Fraction)):
        return not r, abs(r)
    return False, abs(r)


def run_check(name: str, instances: Iterable, params: dict | None = None,
              tol: float = 0.0) -> VerificationReport:
    t0 = time.perf_counter()
    worst, witness, count, failed = 0.0, None, 0, 0
    for tag, resid in instances:
        count += 1
        exact_zero, size = _residual_size(resid)
        ok = exact_zero or size <= tol
        if not ok:
            failed += 1
            if witness is None or size > worst:
                worst, witness = size, tag
        elif not exact_zero:
            worst = max(worst, size)
    p = dict(params or {})
    p["instances"] = count
    if tol:
        p["tolerance"] = tol
    return VerificationReport(
        check_name=name,
        params=p,
        status="pass" if failed == 0 and count > 0 else "fail",
        max_residual=worst,
        witness=witness,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


# --- algebra ---------------------------------------------------------------

def _epsilon_product_instances():
    basis = {(A, B): epsilon_basis(A, B) for A in CANONICAL_INDICES for B in CANONICAL_INDICES}
    zero = Mat10.zeros()
    for A, B, C, D in itertools.product(CANONICAL_INDICES, repeat=4):
        # every nonzero product plus the zero products sharing an outer index
        if B != C and A != D:
            continue
        expected = basis[(A, D)] if B == C else zero
        tag = tuple(index_label(x) for x in (A, B, C, D))
        yield tag, basis[(A, B)] @ basis[(C, D)] - expected


def _epsilon_adjoint_instances():
    for A, B in itertools.product(CANONICAL_INDICES, repeat=2):
        yield (index_label(A), index_label(B)), epsilon_basis(A, B).H - epsilon_basis(B, A)


def algebra_suite(rep: RepresentationSet | None = None) -> list[VerificationReport]:
    reports = [verify_structure(rel, rep) for rel in RELATIONS]
    reports.append(run_check("epsilon-product-rule", _epsilon_product_instances()))
    reports.append(run_check("epsilon-adjoint", _epsilon_adjoint_instances()))
    return reports


# --- minimal polynomials ---------------------------------------------------

def _minimal_random(rng, samples):
    for n in range(samples):
        p, params = generic_sample(rng)
        tag = {"sample": n, "p": (p.p1, p.p2, p.p3, p.p0), "A": params.A, "B": params.B, "m": params.m}
        for s in (1, -1):
            yield (tag, "quadratic", s), mk.quadratic_identity_residual(p, params, s)
            yield (tag, "cubic", s), mk.cubic_identity_residual(p, params, s)
        yield (tag, "minimal"), mk.minimal_residual(p, params, "offshell-massive")
        yield (tag, "phat3"), mk.phat_cube_residual(p)


def _phat_block_instances(rng, samples):
    for n in range(samples):
        p = offshell_momentum(rng)
        for k, r in enumerate(mk.phat_square_block_residuals(p)):
            yield (n, k), r


def _det_instances(rng, samples):
    for n in range(samples):
        p, params = generic_sample(rng)
        yield (n, "offshell"), mk.equation_matrix(p, params).det() != 0
    for label, (p, params) in {"th": (TH_MOMENTUM, TH_PARAMS),
                               "nondeg": (NONDEG_MOMENTUM, NONDEG_PARAMS)}.items():
        for s in (1, -1):
            yield (label, s), mk.equation_matrix(p, params, s).det()


def minimal_suite(seed: int, samples: int) -> list[VerificationReport]:
    rng = random.Random(seed)
    out = [run_check("offshell-identities", _minimal_random(rng, samples),
                     {"seed": seed, "samples": samples})]
    out.append(run_check("phat-square-blocks", _phat_block_instances(rng, min(samples, 25)),
                         {"seed": seed}))
    out.append(run_check("onshell-nondegenerate-minimal", (
        ((label, s), mk.minimal_residual(p, params, "onshell-nondegenerate", s))
        for label, p, params in (("B=8", FAMILY_MOMENTUM, FAMILY_PARAMS),
                                 ("B=16", NONDEG_MOMENTUM, NONDEG_PARAMS))
        for s in (1, -1)), {"A": 3, "fixtures": 2}))
    out.append(run_check("onshell-degenerate-minimal", (
        ((s,), mk.minimal_residual(TH_MOMENTUM, TH_PARAMS, "onshell-degenerate", s))
        for s in (1, -1)), {"A": 1, "B": 2, "m": 5, "p": [0, 0, 12, 13]}))
    out.append(run_check("massless-minimal", (
        ((str(p), kappa, s), mk.minimal_residual(p, mk.MasslessParams(kappa, 0), "massless", s))
        for p, kappa in (LIGHTLIKE, LIGHTLIKE_2) for s in (1, -1)), {"fixtures": 2}))
    out.append(run_check("determinant", _det_instances(rng, min(samples, 10)), {"seed": seed}))
    return out


# --- projectors --------------------------------------------------------------

def _projector_instances(p, params, label):
    for s in (1, -1):
        Pi = mk.mass_projector(p, params, s)
        L = mk.equation_matrix(p, params, s)
        yield (label, s, "idempotent"), Pi @ Pi - Pi
        yield (label, s, "annihilated"), L @ Pi
        yield (label, s, "trace"), Pi.trace() - 3
        yield (label, s, "explicit-form"), Pi - mk.mass_projector(p, params, s, "explicit")
        total = Mat10.zeros(Pi.exact)
        for spin in (1, 0, -1):
            S = mk.spin_projector(p.spatial, spin)
            D = Pi @ S
            yield (label, s, spin, "commute"), Pi @ S - S @ Pi
            yield (label, s, spin, "rank1"), D.rank() == 1
            col, row = mk.dyad_factor(p, params, s, spin)
            yield (label, s, spin, "factor"), Mat10.outer(col, row) - D
            yield (label, s, spin, "solution"), L @ col
            total = total + Mat10.outer(col, row)
            for other in (1, 0, -1):
                if other != spin:
                    yield (label, s, spin, other, "orthogonal"), D @ Pi @ mk.spin_projector(p.spatial, other)
        yield (label, s, "completeness"), total - Pi


def _spin_instances(p_spatial):
    S = {s: mk.spin_projector(p_spatial, s) for s in (1, 0, -1)}
    one = Mat10.identity()
    yield ("sum",), S[1] + S[0] + S[-1] - one
    for a in S:
        yield (a, "idempotent"), S[a] @ S[a] - S[a]
        for b in S:
            if a != b:
                yield (a, b, "orthogonal"), S[a] @ S[b]
    sig = mk.spin_operator(p_spatial)
    yield ("cube",), sig @ sig @ sig - sig


def projectors_suite(seed: int, samples: int) -> list[VerificationReport]:
    rng = random.Random(seed)
    out = [run_check("projectors-tucker-hammer", _projector_instances(TH_MOMENTUM, TH_PARAMS, "th"),
                     {"A": 1, "B": 2, "m": 5, "p": [0, 0, 12, 13]})]
    out.append(run_check("projectors-nondegenerate",
                         _projector_instances(NONDEG_MOMENTUM, NONDEG_PARAMS, "nondeg"),
                         {"A": 3, "B": 16, "m": "5/2", "p": [0, 0, 12, 13]}))
    out.append(run_check("projectors-family-b8",
                         _projector_instances(FAMILY_MOMENTUM, FAMILY_PARAMS, "b8"),
                         {"A": 3, "B": 8, "m": 1, "p": ["0", "0", "1/2", "3/2"]}))
    out.append(run_check("cubic-equals-pdk-form", (
        ((s,), mk.mass_projector(TH_MOMENTUM, TH_PARAMS, s, "cubic")
         - mk.mass_projector(TH_MOMENTUM, TH_PARAMS, s, "pdk")) for s in (1, -1)),
        {"A": 1, "B": 2, "m": 5}))
    out.append(run_check("spin-projectors", _spin_instances((0, 0, 12)), {"p": [0, 0, 12]}))

    def onshell_random():
        n = 0
        while n < min(samples, 5):
            params = massive_params(rng, 9)
            spec = mk.mass_spectrum(params)
            if not spec.primary_ok or not spec.M_squared:
                continue
            p = onshell_sample(rng, params, "primary", 9)
            lam = params.lam(p.p_squared)
            if lam == 0 or lam + params.m == 0:
                continue
            for s in (1, -1):
                Pi = mk.mass_projector(p, params, s)
                yield (n, s, "idempotent"), Pi @ Pi - Pi
                yield (n, s, "annihilated"), mk.equation_matrix(p, params, s) @ Pi
                yield (n, s, "trace"), Pi.trace() - 3
            n += 1

    out.append(run_check("projectors-random-onshell", onshell_random(), {"seed": seed}))

    def norm_instances():
        for s in (1, -1):
            for spin in (1, 0, -1):
                yield (s, spin), mk.normalization_trace(TH_MOMENTUM, TH_PARAMS, s, spin) - s
                yield ("nondeg", s, spin), mk.normalization_trace(NONDEG_MOMENTUM, NONDEG_PARAMS, s, spin) - s
                yield ("b8", s, spin), mk.normalization_trace(FAMILY_MOMENTUM, FAMILY_PARAMS, s, spin) - s
        yield ("cross",), mk.cross_charge_matrix(TH_MOMENTUM, TH_PARAMS)
        yield ("cross-nondeg",), mk.cross_charge_matrix(NONDEG_MOMENTUM, NONDEG_PARAMS)

    out.append(run_check("charge-normalization", norm_instances(), {"A": 1, "B": 2, "m": 5}))

    def degeneracy():
        for p, kappa in (LIGHTLIKE, LIGHTLIKE_2):
            k1, k2 = mk.massless_degeneracy_report(p, kappa)
            yield (str(p), kappa), k2 > k1

    out.append(run_check("massless-degeneracy", degeneracy(), {"fixtures": 2}))
    return out


# --- observables -----------------------------------------------------------

def _equivalence_instances(rng, samples, branch, stats):
    for n in range(samples):
        kind = n % 4
        if branch == "massive":
            params = massive_params(rng, 12)
            spec = mk.mass_spectrum(params)
            if kind == 2 and spec.primary_ok:
                p = onshell_sample(rng, params, "primary", 12)
                f = proca_field(rng, p, 12)
            elif kind == 3 and spec.secondary_ok and params.A != 1:
                p = onshell_sample(rng, params, "secondary", 12)
                f = dual_field(rng, p, 12)
            elif kind == 1 and spec.primary_ok:
                p = onshell_sample(rng, params, "primary", 12)
                f = random_field(rng, 12)
            else:
                p = offshell_momentum(rng, 12)
                f = random_field(rng, 12)
        else:
            params = massless_params(rng, 12)
            if kind in (1, 2):
                p = lightlike_sample(rng, 12)
                f = proca_field(rng, p, 12) if kind == 2 else dual_field(rng, p, 12)
            else:
                p = offshell_momentum(rng, 12)
                f = random_field(rng, 12)
        s = 1 if n % 2 == 0 else -1
        comp = fo.component_residual(f, p, s, params)
        psi = fo.pack_wavefunction(f, p, s, params.scale)
        mat = fo.matrix_residual(psi, p, s, params)
        stats["solutions"] = stats.get("solutions", 0) + comp.is_zero()
        same_zero = comp.is_zero() == mat.is_zero()
        mapped = np.all(mat.components == fo.residual_map(comp, params.scale).components)
        yield (branch, n), bool(same_zero and mapped)


def observables_suite(seed: int, samples: int) -> list[VerificationReport]:
    rng = random.Random(seed)
    n_eq = max(samples, 200)
    out = []
    for branch in ("massive", "massless"):
        stats: dict = {}
        rep = run_check(f"equivalence-{branch}", _equivalence_instances(rng, n_eq, branch, stats),
                        {"seed": seed, "samples": n_eq, "packing_sign": fo.PACKING_SIGN})
        rep.params["solutions"] = int(stats.get("solutions", 0))
        out.append(rep)

    th_modes = observable_fixture_modes(TH_PARAMS)
    wb_modes = observable_fixture_modes(WEINBERG_PARAMS)
    mixed_params, mixed_modes = mixed_shell_fixture()

    def conservation():
        for label, params, modes in (("th", TH_PARAMS, th_modes), ("weinberg", WEINBERG_PARAMS, wb_modes),
                                     ("mixed-shell", mixed_params, mixed_modes)):
            for which in ("current", "energy-momentum"):
                yield (label, which), fo.conservation_residual(modes, params, which)

    out.append(run_check("conservation", conservation(), {"fixtures": 3}))

    def float_conservation():
        params, modes = float_shell_fixture()
        for which in ("current", "energy-momentum"):
            yield ("float", which), fo.conservation_residual(modes, params, which)

    out.append(run_check("conservation-float", float_conservation(), {"A": 0, "B": 1, "m": 1}, tol=1e-10))

    def lagrangian():
        for label, params, modes in (("th", TH_PARAMS, th_modes), ("weinberg", WEINBERG_PARAMS, wb_modes)):
            yield (label, "forms-agree"), (fo.lagrangian_matrix_form(modes, params)
                                           - fo.lagrangian_component_form(modes, params))
        for m in th_modes:
            yield ("th", "single-mode-zero"), fo.lagrangian_matrix_form([m], TH_PARAMS)
        yield ("th", "superposition-zero"), fo.lagrangian_matrix_form(th_modes, TH_PARAMS)
        yield ("weinberg", "witness-nonzero"), fo.lagrangian_matrix_form(wb_modes, WEINBERG_PARAMS) != 0
        cur = fo.current_density(th_modes, TH_PARAMS)
        yield ("th", "current-reduction"), np.array(cur, dtype=object) - np.array(
            fo.current_density(th_modes, TH_PARAMS, form="literal"), dtype=object)

    out.append(run_check("lagrangian-and-current", lagrangian(), {"fixtures": 2}))
    return out


def observable_fixture_modes(params: mk.ModelParams) -> list[fo.PlaneWaveMode]:
    """Three on-shell modes of mass M on exact Pythagorean momenta (M = m here)."""
    M = mk.mass_spectrum(params).M
    k = Fraction(12, 5) * M
    e = Fraction(13, 5) * M
    return [
        fo.spin_mode(mk.FourMomentum(0, 0, k, e), params, 1, 1),
        fo.spin_mode(mk.FourMomentum(k, 0, 0, e), params, 1, 0),
        fo.spin_mode(mk.FourMomentum(0, k, 0, e), params, -1, -1),
    ]


def mixed_shell_fixture():
    """Modes on both the M and the M' shell for A=3, B=8, m=1 (M^2 = 2, M'^2 = 4)."""
    params = mk.ModelParams(3, 8, 1)
    rng = random.Random(7)
    pa = onshell_sample(rng, params, "primary", 9)
    pb = onshell_sample(rng, params, "secondary", 9)
    ka = fo.solution_basis(pa, params, 1)
    kb = fo.solution_basis(pb, params, -1)
    modes = [fo.PlaneWaveMode(ka[0], pa, 1), fo.PlaneWaveMode(kb[1], pb, -1),
             fo.PlaneWaveMode(ka[2] * 2 + ka[1], pa, 1)]
    return params, modes


def float_shell_fixture():
    """Weinberg modes with irrational energies p0 = sqrt(|p|^2 + 1)."""
    params = mk.ModelParams(0, 1, 1)
    momenta = [mk.onshell_momentum((1.0, 2.0, 0.0), params), mk.onshell_momentum((0.0, 1.0, 1.0), params)]
    modes = [fo.spin_mode(momenta[0], params, 1, 1), fo.spin_mode(momenta[1], params, 1, 0),
             fo.spin_mode(momenta[0], params, -1, -1)]
    return params, modes


# --- propagator ------------------------------------------------------------

def propagator_suite(seed: int, samples: int) -> list[VerificationReport]:
    rng = random.Random(seed)

    def offshell():
        for n in range(samples):
            p, params = generic_sample(rng)
            for s in (1, -1):
                yield (n, s, "eq-residual"), pk.equation_residual(p, params, s)
            yield (n, "contact"), pk.contact_residual(p, params)
            pref, M2 = pk.denominator_factors(params)
            yield (n, "denominator"), pk.propagator_denominator(p.p_squared, params) - pref * (p.p_squared + M2)
            spec = mk.mass_spectrum(params)
            if spec.M_squared is not None:
                yield (n, "pole"), M2 - spec.M_squared

    out = [run_check("propagator-offshell", offshell(), {"seed": seed, "samples": samples})]

    def onshell():
        for p, params in ((TH_MOMENTUM, TH_PARAMS), (NONDEG_MOMENTUM, NONDEG_PARAMS)):
            lam = params.lam(p.p_squared)
            for s in (1, -1):
                num = pk.propagator_numerator(p, params, s)
                yield (str(params), s, "annihilated"), mk.equation_matrix(p, params, s) @ num
                yield (str(params), s, "dyad-sum"), num - mk.mass_projector(p, params, s) * (params.m + lam)
            yield (str(params), "commutator"), mk.equation_matrix(p, params, 1) @ pk.commutator_kernel(p, params)

    out.append(run_check("propagator-onshell", onshell(), {"fixtures": 2}))

    def locality():
        d = mk.FourMomentum(Fraction(1, 2), Fraction(1, 3), Fraction(-1, 5), Fraction(2, 7))
        rep = pk.locality_report(TH_PARAMS, d)
        yield ("A=1", "local"), rep["local"]
        rep = pk.locality_report(mk.ModelParams(3, 1, 1), d)
        yield ("A=3", "nonlocal"), not rep["local"]
        yield ("A=3", "cleared-polynomial"), rep["cleared_degree"] is not None

    out.append(run_check("propagator-locality", locality()))
    return out


def run_suite(suite: str, seed: int = 0, samples: int = 100,
              rep: RepresentationSet | None = None) -> list[VerificationReport]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    runners: dict[str, Callable[[], list[VerificationReport]]] = {
        "algebra": lambda: algebra_suite(rep),
        "minimal": lambda: minimal_suite(seed, samples),
        "projectors": lambda: projectors_suite(seed, samples),
        "observables": lambda: observables_suite(seed, samples),
        "propagator": lambda: propagator_suite(seed, samples),
    }
    names = SUITES[1:] if suite == "all" else (suite,)
    out = []
    for name in names:
        out.extend(runners[name]())
    return out


def faulty_representation() -> RepresentationSet:
    """beta_1 with entry (2, 5) negated."""
    return representation().with_fault(1, 2, 5)
