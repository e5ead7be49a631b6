from fractions import Fraction

import pytest

from confal.axioms import PreconditionError, Suite, check_suite
from confal.classify import (SearchConfig, SearchSpaceError, Solution,
                             ansatz_monomials, match_family, search_compatible,
                             solution_algebra, verify_sufficiency)
from confal.poly import Poly, parse_poly, poly_to_str

D, L = Poly.D, Poly.L
ZERO = Poly.zero()


def _solutions(result):
    return [(poly_to_str(s.f), poly_to_str(s.g), poly_to_str(s.h))
            for s in result.solutions]


def test_ansatz_monomials():
    assert ansatz_monomials(1) == [
        (0, 0, 0, 0, 0), (1, 0, 0, 0, 0), (0, 1, 0, 0, 0)]
    assert len(ansatz_monomials(2)) == 6


def test_search_r5_trivial_only():
    result = search_compatible(SearchConfig(rtype="r5",
                                            lie_params={"alpha": "1"}))
    assert result.nominal == 19683
    assert _solutions(result) == [("0", "0", "0")]
    assert all(s.family_match for s in result.solutions)
    assert not result.findings


def test_search_r3_constants():
    result = search_compatible(SearchConfig(rtype="r3"))
    assert _solutions(result) == [("-1", "0", "0"), ("0", "0", "0"),
                                  ("1", "0", "0")]
    assert all(s.family_match for s in result.solutions)


def test_search_r4_beta2():
    result = search_compatible(SearchConfig(
        rtype="r4", lie_params={"beta": "2", "gamma": "0"}))
    assert _solutions(result) == [("-1", "-1", "0"), ("0", "0", "0"),
                                  ("1", "1", "0")]
    assert all(s.family_match for s in result.solutions)


def test_search_r4_beta_not_2():
    result = search_compatible(SearchConfig(
        rtype="r4", lie_params={"beta": "0", "gamma": "0"}))
    assert _solutions(result) == [("0", "0", "0")]


def test_search_r2_nonconstant_q():
    result = search_compatible(SearchConfig(rtype="r2", lie_params={"q": "L"}))
    assert _solutions(result) == [("0", "0", "0")]


def test_search_r2_constant_q_finds_units():
    result = search_compatible(SearchConfig(rtype="r2", lie_params={"q": "1"}))
    assert _solutions(result) == [("-1", "-1", "0"), ("0", "0", "0"),
                                  ("1", "1", "0")]


def test_search_solutions_verify_full_suite():
    cfg = SearchConfig(rtype="r3")
    for sol in search_compatible(cfg).solutions:
        alg = solution_algebra(cfg, sol)
        assert check_suite(alg, Suite.TPCSA).passed


def test_search_r1_degree2_shape():
    cfg = SearchConfig(rtype="r1", lie_params={"p": "D"}, degree=2,
                       ceiling=10 ** 9)
    result = search_compatible(cfg)
    assert result.nominal == 3 ** 18
    flip = lambda p: p.subst(1, -D - L)
    for sol in result.solutions:
        assert not sol.f and not sol.g
        assert sol.h == -flip(sol.h)


def test_search_ceiling_refusal():
    cfg = SearchConfig(rtype="r1", lie_params={"p": "D"}, degree=2)
    with pytest.raises(SearchSpaceError) as err:
        search_compatible(cfg)
    assert err.value.nominal == 3 ** 18
    assert "387420489" in str(err.value)


def test_search_wider_grid_r3():
    grid = tuple(Fraction(v) for v in (-1, 0, Fraction(1, 2), 1))
    result = search_compatible(SearchConfig(rtype="r3", grid=grid))
    fs = sorted(poly_to_str(s.f) for s in result.solutions)
    assert fs == ["-1", "0", "1", "1/2"]


def test_search_prime_filter_agrees():
    plain = search_compatible(SearchConfig(rtype="r3"))
    filtered = search_compatible(SearchConfig(rtype="r3", modulus=5))
    assert _solutions(plain) == _solutions(filtered)


def test_search_prime_filter_rejects_bad_grid():
    with pytest.raises(ValueError, match="denominator"):
        search_compatible(SearchConfig(
            rtype="r3", grid=(Fraction(1, 5), Fraction(0)), modulus=5))


def test_search_jobs_deterministic():
    serial = search_compatible(SearchConfig(rtype="r3"))
    parallel = search_compatible(SearchConfig(rtype="r3", jobs=2))
    assert _solutions(serial) == _solutions(parallel)


def test_match_family_cases():
    one = Poly.const(1)
    assert match_family(ZERO, ZERO, ZERO, "r5", {"alpha": "1"})
    assert match_family(one, one, ZERO, "r4", {"beta": "2", "gamma": "0"})
    assert not match_family(one, ZERO, ZERO, "r4", {"beta": "2", "gamma": "0"})
    assert not match_family(one, one, ZERO, "r4", {"beta": "3", "gamma": "0"})
    assert match_family(one, ZERO, ZERO, "r3", {})
    assert not match_family(D, ZERO, ZERO, "r3", {})
    # nonabelian odd-square family membership is oddness of h in D+2L
    h = parse_poly("(D+2*L)*D")
    assert match_family(ZERO, ZERO, h, "r1", {"p": "D"})
    assert not match_family(ZERO, ZERO, D, "r1", {"p": "D"})
    assert not match_family(one, ZERO, h, "r1", {"p": "D"})
    # abelian degenerations accept any commutative associative instance
    assert match_family(one, one, ZERO, "r1", {"p": "0"})
    assert not match_family(D, ZERO, ZERO, "r2", {"q": "0"})


def test_verify_sufficiency_passes():
    assert verify_sufficiency("r3", {}, {"c": "1"}).passed
    assert verify_sufficiency("r4", {"beta": "2", "gamma": "1"},
                              {"c": "2"}).passed
    assert verify_sufficiency("r1", {"p": "D"}, {"phi": "s*t"}).passed
    assert verify_sufficiency("r2", {"q": "1"}, {"c": "3"}).passed
    assert verify_sufficiency("r5", {"alpha": "1"}, {}).passed


def test_verify_sufficiency_rejects_illegal_family():
    with pytest.raises(PreconditionError):
        verify_sufficiency("r5", {"alpha": "1"}, {"c": "1"})
    with pytest.raises(PreconditionError):
        verify_sufficiency("r4", {"beta": "3", "gamma": "0"}, {"c": "1"})
    with pytest.raises(PreconditionError):
        verify_sufficiency("r2", {"q": "L"}, {"c": "1"})


def test_solution_ordering_by_coefficients():
    result = search_compatible(SearchConfig(rtype="r3"))
    monos = ansatz_monomials(1)
    vectors = [s.coeff_vector(monos) for s in result.solutions]
    assert vectors == sorted(vectors)
