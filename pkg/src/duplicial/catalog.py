"""Named series A, B, C, D, E, R, L and checks of the identities relating them."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .coeffs import W
from .series import (DIFFEO, GENERAL, TreeSeries, series_add, series_compose,
                     series_compose_inverse, series_over, series_scale, series_under,
                     suspension, vertex)
from .tree import LEAF, VERTEX, left_comb, right_comb, trees_up_to


class CatalogDefect(AssertionError):
    """Two independent constructions of a catalog series disagree."""


_lock = threading.RLock()


def _memo(fn):
    cached = lru_cache(maxsize=64)(fn)

    def wrapper(n: int) -> TreeSeries:
        if n < 1:
            raise ValueError("truncation order must be at least 1")
        with _lock:
            return cached(n)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.cache_clear = cached.cache_clear
    return wrapper


def _fixed_point(n, step):
    s = vertex(n)
    for _ in range(n):
        s = step(s)
    if step(s) != s:
        raise CatalogDefect("fixed-point iteration did not stabilize")
    return s


@_memo
def series_A(n):
    """Fixed point of ``A = v + w A/v + v\\A + w A/v\\A`` (``/`` over, ``\\`` under)."""
    v = vertex(n)

    def step(a):
        a_over_v = series_over(a, v)
        return (v + W * a_over_v + series_under(v, a) + W * series_under(a_over_v, a))

    return TreeSeries(n, _fixed_point(n, step).terms, DIFFEO)


def series_B_fixed_point(n):
    v = vertex(n)

    def step(b):
        v_over_b = series_over(v, b)
        return (v - W * v_over_b - series_under(b, v) - W * series_under(v_over_b, v))

    return _fixed_point(n, step)


def series_B_closed_form(n):
    """``sum_{p,q} (-1)^(p+q) w^p c_p over v under d_q``."""
    terms = {}
    for p in range(n):
        for q in range(n - p):
            # c_p over (v under d_q) = c_p grafted at the leftmost leaf of d_{q+1}
            t = right_comb(q + 1).replace(".", left_comb(p), 1)
            terms[t] = (-1) ** (p + q) * W ** p
    return TreeSeries(n, terms, DIFFEO)


@_memo
def series_B(n):
    """B by fixed point, cross-checked against its closed comb form."""
    fixed = series_B_fixed_point(n)
    closed = series_B_closed_form(n)
    if fixed != closed:
        raise CatalogDefect("fixed-point and closed forms of B disagree")
    return closed


@_memo
def series_C(n):
    """Sum of all left combs."""
    return TreeSeries(n, {left_comb(k): 1 for k in range(1, n + 1)}, DIFFEO)


@_memo
def series_D(n):
    """Sum of all right combs."""
    return TreeSeries(n, {right_comb(k): 1 for k in range(1, n + 1)}, DIFFEO)


@_memo
def series_D_inverse(n):
    return series_compose_inverse(series_D(n))


@_memo
def series_E(n):
    """``C o D^-1``."""
    return series_compose(series_C(n), series_D_inverse(n))


@_memo
def series_R(n):
    """Vertex plus every tree of the shape ``v under t`` (unweighted)."""
    terms = {"(." + t + ")": 1 for t in trees_up_to(n - 1)}
    return TreeSeries(n, terms, DIFFEO)


@_memo
def series_L(n):
    """Vertex plus every tree of the shape ``t over v`` (unweighted)."""
    terms = {"(" + t + ".)": 1 for t in trees_up_to(n - 1)}
    return TreeSeries(n, terms, DIFFEO)


@_memo
def series_L_inverse(n):
    return series_compose_inverse(series_L(n))


CATALOG = {
    "A": series_A, "B": series_B, "C": series_C, "D": series_D,
    "E": series_E, "R": series_R, "L": series_L,
}


@dataclass(frozen=True)
class IdentityReport:
    name: str
    order: int
    passed: bool
    tree: str | None = None
    expected: str | None = None
    actual: str | None = None

    @property
    def status(self):
        return "pass" if self.passed else "fail"


def compare(name, n, expected: TreeSeries, actual: TreeSeries) -> IdentityReport:
    """Report the first tree (by order, then literal) where the coefficients differ."""
    diff = series_add(expected, series_scale(-1, actual))
    if not diff.terms:
        return IdentityReport(name, n, True)
    t = diff.items()[0][0]
    return IdentityReport(name, n, False, str(t), str(expected[t]), str(actual[t]))


def _mobius_series(n):
    from .tamari import mobius_from_min
    terms = {}
    for k in range(1, n + 1):
        terms.update(mobius_from_min(k))
    return TreeSeries(n, terms, GENERAL)


def _prop1(n):
    return compare("prop1", n, vertex(n), series_compose(series_A(n), series_B(n)))


def _prop2a(n):
    c, d = series_C(n), series_D(n)
    return compare("prop2a", n, c + series_under(c, d), d + series_over(c, d))


def _prop2b(n):
    e, v = series_E(n), vertex(n)
    return compare("prop2b", n, e, v + series_over(e, v) - series_under(e, v))


def _prop3a(n):
    return compare("prop3a", n, _mobius_series(n), series_E(n))


def _prop3b(n):
    # D^-1 = v + sum mu(c_n, v under t) v under t; needs the lattices up to n
    mob = _mobius_series(n)
    terms = {t: c for t, c in mob.terms.items() if t != VERTEX and t.left == LEAF}
    terms[VERTEX] = 1
    expected = TreeSeries(n, terms, GENERAL)
    return compare("prop3b", n, expected, series_D_inverse(n))


def _d_inverse(n):
    return compare("d_inverse", n, suspension(series_D(n)), series_D_inverse(n))


def _c_inverse(n):
    return compare("c_inverse", n, suspension(series_C(n)),
                   series_compose_inverse(series_C(n)))


def _prop4a(n):
    r, l = series_R(n), series_L(n)
    return compare("prop4a", n, r, vertex(n) + series_under(r, l))


def _prop4b(n):
    r, l = series_R(n), series_L(n)
    return compare("prop4b", n, l, vertex(n) + series_over(r, l))


def _prop4c(n):
    return compare("prop4c", n, suspension(series_E(n)),
                   series_compose(series_R(n), series_L_inverse(n)))


def _remark(n):
    from .series import project
    e = project(series_E(n))
    expected = TreeSeries(n, {VERTEX: 1})
    # lift the one-variable series back onto left combs to reuse compare()
    actual = TreeSeries(n, {left_comb(k): c for k, c in enumerate(e.coeffs) if k}, GENERAL)
    return compare("remark", n, expected, actual)


IDENTITIES = {
    "prop1": _prop1, "prop2a": _prop2a, "prop2b": _prop2b,
    "prop3a": _prop3a, "prop3b": _prop3b,
    "prop4a": _prop4a, "prop4b": _prop4b, "prop4c": _prop4c,
    "remark": _remark, "d_inverse": _d_inverse, "c_inverse": _c_inverse,
}


def check_identity(name: str, n: int) -> IdentityReport:
    """Check a named identity to truncation order ``n``."""
    try:
        fn = IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; choose from {sorted(IDENTITIES)}") from None
    return fn(n)


def a_coefficient_law(n: int) -> IdentityReport:
    """Coefficient of ``t`` in A is ``w^(right-oriented leaves - 1)``."""
    from .tree import right_oriented_leaves
    terms = {t: W ** (right_oriented_leaves(t) - 1) for t in trees_up_to(n) if t != LEAF}
    return compare("a_law", n, TreeSeries(n, terms, DIFFEO), series_A(n))


def b_forms_agree(n: int) -> IdentityReport:
    return compare("b_forms", n, series_B_closed_form(n), series_B_fixed_point(n))

