from hypothesis import given, settings

from bannai_ito import BIParams, full_certificate
from bannai_ito.certificate import check_cbi, check_constructions, check_eigen_equation, check_ladder
from conftest import REF, bi_params


def test_reference_certificate():
    rep = full_certificate(BIParams(*REF), 10)
    assert rep.ok, [c.relation for c in rep.failures()][:5]
    assert len(rep.families()) >= 12


def test_fault_names_orthogonality_and_degree():
    rep = full_certificate(BIParams(*REF), 6, fault="u3")
    fails = rep.failures()
    assert fails and all(c.family == "finite orthogonality" for c in fails)


@settings(max_examples=15)
@given(bi_params(horizon=9))
def test_random_parameter_sets(p):
    for rep in (check_eigen_equation(p, 7), check_constructions(p, 7), check_ladder(p, 7)):
        assert rep.ok, rep.failures()[:2]


def test_cbi_family_reference():
    rep = check_cbi(BIParams(*REF), 10)
    assert rep.ok and {"complementary polynomials", "Wilson forms"} <= set(rep.families())
