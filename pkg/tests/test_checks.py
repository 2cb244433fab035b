import pytest

from wthpdk import checks


def test_unknown_suite_and_samples():
    with pytest.raises(ValueError):
        checks.run_suite("bogus")
    with pytest.raises(ValueError):
        checks.run_suite("algebra", samples=0)


def test_run_check_tolerance_and_witness():
    rep = checks.run_check("t", [(("a",), 1e-12), (("b",), 1e-3)], tol=1e-10)
    assert rep.status == "fail" and rep.witness == ("b",)
    rep = checks.run_check("t", [(("a",), 1e-12)], tol=1e-10)
    assert rep.passed and rep.max_residual == 1e-12


def test_empty_check_fails():
    assert checks.run_check("empty", []).status == "fail"


def test_faulty_representation_only_touches_beta1():
    from wthpdk.dkp_matrices import representation
    bad, good = checks.faulty_representation(), representation()
    assert bad.b(1) != good.b(1)
    assert all(bad.b(mu) == good.b(mu) for mu in (2, 3, 4))
