import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wthpdk import field_observables as fo
from wthpdk.checks import (
    TH_PARAMS,
    WEINBERG_PARAMS,
    float_shell_fixture,
    mixed_shell_fixture,
    observable_fixture_modes,
)
from wthpdk.errors import PreconditionError
from wthpdk.exact import I, CRational, make_vector
from wthpdk.momentum_kernel import FourMomentum, MasslessParams, ModelParams
from wthpdk.sampling import (
    dual_field,
    lightlike_sample,
    offshell_momentum,
    onshell_sample,
    proca_field,
    random_field,
)

WEINBERG_WITNESS_L = F(5680259, 125000)
POINT = (F(3, 10), F(1, 10), F(-1, 5), F(7, 10))


def _equivalent(f, p, s, prm, sign=fo.PACKING_SIGN):
    comp = fo.component_residual(f, p, s, prm)
    psi = fo.pack_wavefunction(f, p, s, prm.scale, sign)
    mat = fo.matrix_residual(psi, p, s, prm)
    return comp.is_zero() == mat.is_zero() and all(
        mat.components == fo.residual_map(comp, prm.scale).components)


def test_field_tensor_antisymmetry():
    f = fo.FieldTensor.from_canonical([1, 2, 3, 4, 5, 6])
    assert f[2, 1] == -1 and f[3, 4] == 6 and f[2, 2] == 0
    with pytest.raises(ValueError):
        fo.FieldTensor([[1, 0, 0, 0]] + [[0] * 4] * 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_equivalence_massive(seed):
    rng = random.Random(seed)
    prm = ModelParams(F(rng.randint(-2, 6), 3), F(rng.randint(1, 9), 2), F(rng.randint(1, 5), 2))
    p = onshell_sample(rng, prm, "primary", 9)
    for s in (1, -1):
        f = proca_field(rng, p, 9)
        assert fo.component_residual(f, p, s, prm).is_zero()
        assert _equivalent(f, p, s, prm)
        assert _equivalent(random_field(rng, 9), offshell_momentum(rng, 9), s, prm)


def test_secondary_shell_solutions():
    rng = random.Random(3)
    prm = ModelParams(3, 8, 1)
    p = onshell_sample(rng, prm, "secondary", 9)
    f = dual_field(rng, p, 9)
    assert fo.component_residual(f, p, 1, prm).is_zero()
    assert _equivalent(f, p, 1, prm)


def test_packing_sign_is_forced():
    rng = random.Random(11)
    p = onshell_sample(rng, TH_PARAMS, "primary", 9)
    f = proca_field(rng, p, 9)
    assert _equivalent(f, p, 1, TH_PARAMS, sign=-1)
    assert not _equivalent(f, p, 1, TH_PARAMS, sign=+1)


def test_massless_equivalence_and_coefficient_sign():
    rng = random.Random(5)
    A, kappa = F(1, 3), 2
    good = MasslessParams.from_A(A, kappa)
    flipped = MasslessParams(kappa, (A - 1) / 2)
    p = offshell_momentum(rng, 9)
    f = random_field(rng, 9)
    comp = fo.component_residual(f, p, 1, good)
    psi = fo.pack_wavefunction(f, p, 1, kappa)
    mapped = fo.residual_map(comp, kappa).components
    assert all(fo.matrix_residual(psi, p, 1, good).components == mapped)
    assert not all(fo.matrix_residual(psi, p, 1, flipped).components == mapped)
    q = lightlike_sample(rng, 9)
    assert _equivalent(proca_field(rng, q, 9), q, -1, good)


def test_bar_covector_examples():
    e4 = make_vector([0, 0, 0, 1, 0, 0, 0, 0, 0, 0])
    assert list(fo.bar_covector(e4)) == [0, 0, 0, -1, 0, 0, 0, 0, 0, 0]
    v = make_vector([0] * 6 + [I] + [0] * 3)  # slot [14]
    assert fo.bar_covector(v)[6] == -I
    assert fo.invariant(v) == 1


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=10, max_size=10))
def test_invariant_is_real(parts):
    v = make_vector([CRational(a, b) for a, b in parts])
    assert fo.invariant(v).is_real()


@pytest.mark.parametrize("prm", [TH_PARAMS, WEINBERG_PARAMS])
def test_current_reality_pattern(prm):
    j = fo.current_density(observable_fixture_modes(prm), prm)
    assert all(x.is_real() for x in j[:3])
    assert j[3].real == 0


def test_literal_current_breaks_reality_when_a_differs_from_one():
    j = fo.current_density(observable_fixture_modes(WEINBERG_PARAMS), WEINBERG_PARAMS, form="literal")
    assert not all(x.is_real() for x in j[:3])


def test_current_reduction_at_a_equal_one():
    modes = observable_fixture_modes(TH_PARAMS)
    assert fo.current_density(modes, TH_PARAMS) == fo.current_density(modes, TH_PARAMS, form="literal")


@pytest.mark.parametrize("prm", [TH_PARAMS, WEINBERG_PARAMS])
@pytest.mark.parametrize("which", ["current", "energy-momentum"])
def test_conservation_exact(prm, which):
    assert fo.conservation_residual(observable_fixture_modes(prm), prm, which) == 0.0


def test_conservation_mixed_shells():
    prm, modes = mixed_shell_fixture()
    for which in ("current", "energy-momentum"):
        assert fo.conservation_residual(modes, prm, which) == 0.0
        assert fo.conservation_residual(modes, prm, which, form="literal") > 1e-4


def test_literal_energy_momentum_same_shell():
    modes = observable_fixture_modes(WEINBERG_PARAMS)
    assert fo.conservation_residual(modes, WEINBERG_PARAMS, "energy-momentum", "literal") == 0.0


def test_conservation_float_shell():
    prm, modes = float_shell_fixture()
    for which in ("current", "energy-momentum"):
        assert fo.conservation_residual(modes, prm, which) <= 1e-10


def test_offshell_mode_rejected():
    mode = fo.PlaneWaveMode(make_vector([1] + [0] * 9), FourMomentum(1, 2, 3, 4))
    with pytest.raises(PreconditionError):
        fo.conservation_residual([mode], TH_PARAMS)


def test_lagrangian_forms_agree():
    for prm in (TH_PARAMS, WEINBERG_PARAMS):
        modes = observable_fixture_modes(prm)
        assert fo.lagrangian_matrix_form(modes, prm) == fo.lagrangian_component_form(modes, prm)
        x = tuple(float(c) for c in POINT)
        assert fo.lagrangian_matrix_form(modes, prm, x) == pytest.approx(
            fo.lagrangian_component_form(modes, prm, x), abs=1e-9)


def test_lagrangian_on_shell():
    for prm in (TH_PARAMS, WEINBERG_PARAMS):
        for mode in observable_fixture_modes(prm):
            assert fo.lagrangian_matrix_form([mode], prm) == 0
    assert fo.lagrangian_matrix_form(observable_fixture_modes(TH_PARAMS), TH_PARAMS) == 0
    L = fo.lagrangian_matrix_form(observable_fixture_modes(WEINBERG_PARAMS), WEINBERG_PARAMS)
    assert L == WEINBERG_WITNESS_L


def test_solution_basis_dimension():
    p = FourMomentum(0, 0, 12, 13)
    basis = fo.solution_basis(p, ModelParams(1, 2, 5))
    assert len(basis) == 3
    assert len(fo.solution_basis(FourMomentum(1, 2, 3, 1), TH_PARAMS)) == 0


def test_unknown_form():
    with pytest.raises(ValueError):
        fo.current_density(observable_fixture_modes(TH_PARAMS), TH_PARAMS, form="other")
