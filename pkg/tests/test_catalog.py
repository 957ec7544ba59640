from __future__ import annotations

from fractions import Fraction

import pytest

from duplicial import catalog
from duplicial.coeffs import W
from duplicial.series import (TreeSeries, project, series_compose, series_compose_inverse,
                              specialize_series, suspension, vertex)
from duplicial.tree import left_comb, right_comb, trees_up_to


def order_part(s, k):
    return dict(s.homogeneous(k))


def test_series_A_low_orders():
    a = catalog.series_A(3)
    assert order_part(a, 1) == {"(..)": 1}
    assert order_part(a, 2) == {"((..).)": W, "(.(..))": 1}
    assert order_part(a, 3) == {"(((..).).)": W**2, "((.(..)).)": W, "((..)(..))": W,
                                "(.((..).))": W, "(.(.(..)))": 1}


def test_series_B_low_orders():
    b = catalog.series_B(3)
    assert order_part(b, 2) == {"((..).)": -W, "(.(..))": -1}
    assert order_part(b, 3) == {"(((..).).)": W**2, "((..)(..))": W, "(.(.(..)))": 1}


def test_combs_and_shape_sums():
    assert order_part(catalog.series_C(3), 3) == {left_comb(3): 1}
    assert order_part(catalog.series_D(3), 3) == {right_comb(3): 1}
    assert order_part(catalog.series_R(4), 2) == {"(.(..))": 1}
    assert order_part(catalog.series_L(4), 2) == {"((..).)": 1}
    assert len(order_part(catalog.series_R(5), 5)) == 14


def test_series_E_low_orders():
    e = catalog.series_E(3)
    assert order_part(e, 2) == {"((..).)": 1, "(.(..))": -1}
    assert order_part(e, 3) == {"(((..).).)": 1, "((..)(..))": -1, "((.(..)).)": -1,
                                "(.(.(..)))": 1}


def test_A_and_B_are_inverse():
    assert series_compose(catalog.series_A(6), catalog.series_B(6)) == vertex(6)
    assert series_compose_inverse(catalog.series_B(6)) == catalog.series_A(6)


@pytest.mark.parametrize("w", [0, 1, -2, Fraction(3, 5)])
def test_A_and_B_inverse_after_specialization(w):
    a = specialize_series(catalog.series_A(6), w)
    b = specialize_series(catalog.series_B(6), w)
    assert series_compose(a, b) == vertex(6)


def test_comb_inverses_are_suspensions():
    assert series_compose_inverse(catalog.series_C(8)) == suspension(catalog.series_C(8))
    assert catalog.series_D_inverse(8) == suspension(catalog.series_D(8))


def test_R_over_L_inverse_is_suspended_E():
    r, linv = catalog.series_R(6), catalog.series_L_inverse(6)
    assert series_compose(r, linv) == suspension(catalog.series_E(6))


@pytest.mark.parametrize("name", sorted(catalog.IDENTITIES))
def test_identities_hold(name):
    rep = catalog.check_identity(name, 6)
    assert rep.passed, rep
    assert rep.status == "pass"


def test_order_sums_of_E_vanish():
    e = catalog.series_E(9)
    assert project(e).coeffs == (0, 1) + (0,) * 8


def test_coefficient_law_and_B_forms():
    assert catalog.a_coefficient_law(7).passed
    assert catalog.b_forms_agree(7).passed


def test_unknown_identity():
    with pytest.raises(ValueError):
        catalog.check_identity("nope", 3)
    with pytest.raises(ValueError):
        catalog.series_C(0)


def test_compare_reports_first_difference():
    exp = TreeSeries(3, {"(..)": 1, "(.(..))": 2, "((..).)": 5})
    act = TreeSeries(3, {"(..)": 1, "(.(..))": 3, "((..).)": 4})
    rep = catalog.compare("x", 3, exp, act)
    assert not rep.passed
    assert (rep.tree, rep.expected, rep.actual) == ("((..).)", "5", "4")


def test_fixed_point_defect_is_reported(monkeypatch):
    monkeypatch.setattr(catalog, "series_B_closed_form",
                        lambda n: TreeSeries(n, {"(..)": 1, "((..).)": 7}))
    catalog.series_B.cache_clear()
    try:
        with pytest.raises(catalog.CatalogDefect):
            catalog.series_B(3)
    finally:
        catalog.series_B.cache_clear()


def test_catalog_is_thread_safe():
    from concurrent.futures import ThreadPoolExecutor
    catalog.series_E.cache_clear()
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda _: catalog.series_E(7), range(8)))
    assert all(r == results[0] for r in results)
    assert all(t in trees_up_to(7) for t in results[0].terms)
