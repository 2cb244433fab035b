import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from wthpdk import propagator_kernel as pk
from wthpdk.errors import PreconditionError
from wthpdk.momentum_kernel import FourMomentum, ModelParams, equation_matrix, mass_projector, mass_spectrum
from wthpdk.sampling import generic_sample

DIRECTION = FourMomentum(F(1, 2), F(1, 3), F(-1, 5), F(2, 7))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_offshell_identities(seed):
    p, prm = generic_sample(random.Random(seed), 20)
    for s in (1, -1):
        assert pk.equation_residual(p, prm, s).is_zero()
    assert pk.contact_residual(p, prm).is_zero()


@settings(max_examples=40)
@given(st.fractions(-20, 20, max_denominator=20), st.fractions(-20, 20, max_denominator=20),
       st.fractions(F(1, 20), 20, max_denominator=20), st.fractions(-20, 20, max_denominator=20))
def test_denominator_factorization(A, B, m, p2):
    assume(A != -1)
    prm = ModelParams(A, B, m)
    pref, M2 = pk.denominator_factors(prm)
    assert pk.propagator_denominator(p2, prm) == pref * (p2 + M2)
    spec = mass_spectrum(prm)
    if spec.primary_ok:
        assert M2 == spec.M_squared


@pytest.mark.parametrize("A, B, pref, M2", [(0, 1, F(1, 2), 1), (3, 8, 2, 2)])
def test_denominator_values(A, B, pref, M2):
    assert pk.denominator_factors(ModelParams(A, B, 1)) == (pref, M2)


def test_denominator_guard():
    with pytest.raises(PreconditionError):
        pk.denominator_factors(ModelParams(-1, 1, 1))


@pytest.mark.parametrize("prm, p", [(ModelParams(1, 2, 5), FourMomentum(0, 0, 12, 13)),
                                    (ModelParams(3, 8, 1), FourMomentum(0, 0, F(1, 2), F(3, 2)))])
def test_onshell_numerator(prm, p):
    lam = prm.lam(p.p_squared)
    for s in (1, -1):
        num = pk.propagator_numerator(p, prm, s)
        assert (equation_matrix(p, prm, s) @ num).is_zero()
        assert num == mass_projector(p, prm, s) * (prm.m + lam)
    with pytest.raises(PreconditionError):
        pk.propagator(p, prm)


def test_kernel_bundle():
    p, prm = generic_sample(random.Random(1))
    k = pk.propagator_kernel(p, prm)
    assert k.denominator == p.p_squared + prm.lam(p.p_squared) * prm.m
    assert k.contact == pk.contact_term(p, prm)


def test_locality():
    rep = pk.locality_report(ModelParams(1, 2, 1), DIRECTION)
    assert rep["local"] and rep["numerator_degree"] == 2
    rep = pk.locality_report(ModelParams(3, 1, 1), DIRECTION)
    assert not rep["local"]
    assert rep["cleared_degree"] == 4


def test_lambda_zero_guard():
    prm = ModelParams(3, 0, 1)  # lambda = p^2
    with pytest.raises(PreconditionError):
        pk.propagator_numerator(FourMomentum(3, 4, 0, 5), prm)
