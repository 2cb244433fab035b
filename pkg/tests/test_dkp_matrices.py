import itertools

import pytest

from wthpdk.dkp_matrices import (
    RELATIONS,
    build_lorentz_generator,
    lorentz_generator_epsilon_form,
    representation,
    verify_structure,
)
from wthpdk.exact import Mat10

# Nonzero entries, 1-based (row, col); from an independent sympy construction.
BETA4 = {(1, 7): 1, (2, 9): 1, (3, 10): 1, (7, 1): 1, (9, 2): 1, (10, 3): 1}
BETA1 = {(2, 5): -1, (3, 6): -1, (4, 7): -1, (5, 2): -1, (6, 3): -1, (7, 4): -1}
ETA_DIAG = [1, 1, 1, -1, -1, -1, 1, -1, 1, 1]


def test_beta_entries_frozen():
    rep = representation()
    assert rep.b(4).nonzero_entries() == BETA4
    assert rep.b(1).nonzero_entries() == BETA1


def test_eta_and_projectors():
    rep = representation()
    assert [rep.eta.a[i, i] for i in range(10)] == ETA_DIAG
    assert len(rep.eta.nonzero_entries()) == 10
    assert rep.p_bar.trace() == 4 and rep.p.trace() == 6


@pytest.mark.parametrize("relation", RELATIONS)
def test_relation_family_holds(relation):
    report = verify_structure(relation)
    assert report.passed and report.max_residual == 0
    assert report.params["instances"] > 0


def test_instance_counts():
    counts = {rel: verify_structure(rel).params["instances"] for rel in RELATIONS}
    assert counts["dkp-algebra"] == 64
    assert counts["lorentz-commutators"] == 256
    assert counts["lorentz-epsilon-form"] == 16


def test_generators_antisymmetric_without_half():
    for mu, nu in itertools.product(range(1, 5), repeat=2):
        J = build_lorentz_generator(mu, nu)
        assert J == -build_lorentz_generator(nu, mu)
        assert J == lorentz_generator_epsilon_form(mu, nu)
    assert build_lorentz_generator(1, 2).nonzero_entries() == J12


J12 = {(1, 2): 1, (2, 1): -1, (6, 8): 1, (7, 9): 1, (8, 6): -1, (9, 7): -1}


def test_fault_is_detected_with_real_witness():
    good = representation()
    bad = good.with_fault(1, 2, 5)
    assert bad.b(1).a[1, 4] == 1 and good.b(1).a[1, 4] == -1
    report = verify_structure("dkp-algebra", bad)
    assert report.status == "fail"
    mu, nu, al = report.witness
    b = bad.b
    resid = b(mu) @ b(nu) @ b(al) + b(al) @ b(nu) @ b(mu) - b(al) * (mu == nu) - b(mu) * (al == nu)
    assert not resid.is_zero()
    assert verify_structure("dkp-algebra", good).passed


def test_unknown_relation():
    with pytest.raises(ValueError):
        verify_structure("nonsense")


def test_zero_entry_fault_sets_one():
    bad = representation().with_fault(1, 1, 1)
    assert bad.b(1).a[0, 0] == 1
    assert isinstance(bad.b(1), Mat10)
