"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import io
import json
import random
from fractions import Fraction as F

import pytest

from wthpdk import checks
from wthpdk import field_observables as fo
from wthpdk import momentum_kernel as mk
from wthpdk import propagator_kernel as pk
from wthpdk.cli import main as cli_main
from wthpdk.dkp_matrices import representation, verify_structure
from wthpdk.exact import Mat10
from wthpdk.sampling import generic_sample

TH, TH_P = mk.ModelParams(1, 2, 5), mk.FourMomentum(0, 0, 12, 13)
B8, B8_P = mk.ModelParams(3, 8, 1), mk.FourMomentum(0, 0, F(1, 2), F(3, 2))
LIGHTLIKE = [(mk.FourMomentum(3, 4, 0, 5), 1), (mk.FourMomentum(0, 0, 1, 1), 2)]


def _all_pass(reports):
    bad = [r.check_name for r in reports if not r.passed]
    return not bad, f"{len(reports)} reports" + (f", failing: {bad}" if bad else "")


def c1_structural_algebra():
    names = ("dkp-algebra", "projectors", "lorentz-commutators", "beta-lorentz",
             "projector-lorentz", "eta-relations")
    reports = [verify_structure(n) for n in names]
    ok, detail = _all_pass(reports)
    ok = ok and reports[0].params["instances"] == 64 and all(r.max_residual == 0 for r in reports)
    return ok, detail + ", 64 trilinear triples"


def c2_lorentz_cross_check():
    r = verify_structure("lorentz-epsilon-form")
    return r.passed and r.params["instances"] == 16, "16 (mu,nu) pairs"


def c3_minimal_polynomials():
    rng = random.Random(42)
    n = 0
    ok = True
    for _ in range(100):
        p, prm = generic_sample(rng)
        for s in (1, -1):
            ok &= mk.quadratic_identity_residual(p, prm, s).is_zero()
            ok &= mk.cubic_identity_residual(p, prm, s).is_zero()
        ok &= mk.minimal_residual(p, prm, "offshell-massive").is_zero()
        n += 1
    for s in (1, -1):
        ok &= mk.minimal_residual(B8_P, B8, "onshell-nondegenerate", s).is_zero()
        ok &= mk.minimal_residual(TH_P, TH, "onshell-degenerate", s).is_zero()
        ok &= mk.minimal_residual(LIGHTLIKE[0][0], mk.MasslessParams(1, 0), "massless", s).is_zero()
    return bool(ok), f"{n} random samples + 3 fixtures, all residuals exactly zero"


def c4_spectrum():
    ok = True
    for A, B in ((0, 1), (1, 2)):
        for m in (1, F(7, 3)):
            spec = mk.mass_spectrum(mk.ModelParams(A, B, m))
            ok &= spec.M == m and spec.M_prime is None and not spec.secondary_ok
    return bool(ok), "M = m exactly, M' excluded for Weinberg and Tucker-Hammer"


def c5_projectors_and_dyads():
    ok = True
    for p, prm in ((TH_P, TH), (B8_P, B8)):
        for s in (1, -1):
            Pi = mk.mass_projector(p, prm, s)
            ok &= Pi @ Pi == Pi and (mk.equation_matrix(p, prm, s) @ Pi).is_zero() and Pi.trace() == 3
            total = Mat10.zeros()
            for spin in (1, 0, -1):
                D = mk.dyad_matrix(p, prm, s, spin)
                ok &= D.rank() == 1 and D @ D == D
                total = total + D
            ok &= total == Pi
    for s in (1, -1):
        ok &= mk.mass_projector(TH_P, TH, s, "cubic") == mk.mass_projector(TH_P, TH, s, "pdk")
    return bool(ok), "idempotent, annihilated, trace 3, cubic == PDK form, dyads sum to Pi"


def c6_equivalence():
    reports = [r for r in checks.observables_suite(seed=6, samples=200)
               if r.check_name.startswith("equivalence")]
    ok, detail = _all_pass(reports)
    counts = [r.params["instances"] for r in reports]
    return ok and min(counts) >= 200, f"{counts} samples, packing sign {fo.PACKING_SIGN}"


def c7_observables():
    ok = True
    for prm in (checks.TH_PARAMS, checks.WEINBERG_PARAMS):
        modes = checks.observable_fixture_modes(prm)
        for which in ("current", "energy-momentum"):
            ok &= fo.conservation_residual(modes, prm, which) == 0.0
        ok &= fo.lagrangian_matrix_form(modes, prm) == fo.lagrangian_component_form(modes, prm)
    prm, modes = checks.mixed_shell_fixture()
    ok &= fo.conservation_residual(modes, prm, "energy-momentum") == 0.0
    prm, modes = checks.float_shell_fixture()
    worst = max(fo.conservation_residual(modes, prm, w) for w in ("current", "energy-momentum"))
    ok &= worst <= 1e-10
    th_modes = checks.observable_fixture_modes(TH)
    ok &= fo.current_density(th_modes, TH) == fo.current_density(th_modes, TH, form="literal")
    ok &= fo.lagrangian_matrix_form(th_modes, TH) == 0
    wb = checks.WEINBERG_PARAMS
    witness = fo.lagrangian_matrix_form(checks.observable_fixture_modes(wb), wb)
    ok &= witness != 0
    return bool(ok), f"exact conservation, float shell {worst:.1e}, A=0 witness L = {witness}"


def c8_propagator():
    rng = random.Random(8)
    ok = True
    for _ in range(100):
        p, prm = generic_sample(rng)
        ok &= pk.equation_residual(p, prm).is_zero() and pk.contact_residual(p, prm).is_zero()
        pref, M2 = pk.denominator_factors(prm)
        ok &= pk.propagator_denominator(p.p_squared, prm) == pref * (p.p_squared + M2)
        spec = mk.mass_spectrum(prm)
        if spec.primary_ok:
            ok &= M2 == spec.M_squared
    for s in (1, -1):
        ok &= (mk.equation_matrix(TH_P, TH, s) @ pk.propagator_numerator(TH_P, TH, s)).is_zero()
    return bool(ok), "100 off-shell samples exact, on-shell annihilation exact"


def c9_massless_degeneracy():
    dims = [mk.massless_degeneracy_report(p, k) for p, k in LIGHTLIKE]
    ok = all(d2 > d1 for d1, d2 in dims)
    ok &= all(mk.minimal_residual(p, mk.MasslessParams(k, 0), "massless").is_zero() for p, k in LIGHTLIKE)
    return bool(ok), f"(dim ker L, dim ker L^2) = {dims}"


def c10_normalization():
    vals = [mk.normalization_trace(TH_P, TH, s, spin) for s in (1, -1) for spin in (1, 0, -1)]
    ok = vals == [1, 1, 1, -1, -1, -1]
    return ok, f"values {[str(v) for v in vals]}"


def c11_cli():
    out = io.StringIO()
    code_all = cli_main(["verify", "--suite", "all", "--seed", "0", "--samples", "20"], out)
    out = io.StringIO()
    code_fault = cli_main(["verify", "--suite", "algebra", "--inject-fault"], out)
    dkp = json.loads(out.getvalue().splitlines()[0])
    bad = representation().with_fault(1, 2, 5)
    mu, nu, al = dkp["witness"]
    b = bad.b
    resid = b(mu) @ b(nu) @ b(al) + b(al) @ b(nu) @ b(mu) - b(al) * (mu == nu) - b(mu) * (al == nu)
    scans = []
    for _ in range(2):
        out = io.StringIO()
        cli_main(["scan", "--A-range=-1:3", "--B-range=-1:2", "--steps", "5"], out)
        scans.append(out.getvalue())
    ok = code_all == 0 and code_fault == 1 and dkp["status"] == "fail" and not resid.is_zero()
    ok &= scans[0] == scans[1]
    return bool(ok), f"verify all exit {code_all}, fault exit {code_fault} witness {tuple(dkp['witness'])}"


CRITERIA = [
    (1, "structural algebra", c1_structural_algebra),
    (2, "Lorentz generator cross-check", c2_lorentz_cross_check),
    (3, "minimal polynomials", c3_minimal_polynomials),
    (4, "mass spectrum", c4_spectrum),
    (5, "projectors and dyads", c5_projectors_and_dyads),
    (6, "equivalence of component and matrix forms", c6_equivalence),
    (7, "observables", c7_observables),
    (8, "propagator", c8_propagator),
    (9, "massless degeneracy", c9_massless_degeneracy),
    (10, "charge normalization", c10_normalization),
    (11, "CLI", c11_cli),
]


def _line(num, title, ok, detail):
    return f"CRITERION {num:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})"


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(num, title, ok, detail))
    raise SystemExit(0 if all(results) else 1)
