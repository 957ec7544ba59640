"""Truncated tree-expanded series and their group structures.

A :class:`TreeSeries` holds the coefficients of trees of order at most ``order``.
Three flavors tag the group an element belongs to:

* ``invertible`` -- leaf coefficient 1; a group under ``series_over`` and under
  ``series_under``, with the leaf series as unit.
* ``diffeo`` -- no leaf term, vertex coefficient 1; a group under composition,
  with the vertex series as unit.
* ``general`` -- no constraint.

Binary operations require equal truncation orders; use :func:`retruncate` to
change one explicitly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import jsonschema

from .coeffs import Poly, canonical, coeff_from_json, coeff_to_json, specialize
from .tree import LEAF, VERTEX, Tree, _split, parse_tree, trees_up_to

INVERTIBLE = "invertible"
DIFFEO = "diffeo"
GENERAL = "general"
FLAVORS = (INVERTIBLE, DIFFEO, GENERAL)


class TruncationMismatch(ValueError):
    pass


class FlavorError(ValueError):
    """A series does not satisfy the normalization its operation needs."""


class SeriesFormatError(ValueError):
    """A series JSON document violates the schema."""


def _order(t):
    return (len(t) - 1) // 3


def _satisfies(flavor, terms):
    if flavor == INVERTIBLE:
        return terms.get(LEAF, 0) == 1
    if flavor == DIFFEO:
        return LEAF not in terms and terms.get(VERTEX, 0) == 1
    return True


def _infer(terms):
    if terms.get(LEAF, 0) == 1:
        return INVERTIBLE
    if LEAF not in terms and terms.get(VERTEX, 0) == 1:
        return DIFFEO
    return GENERAL


class TreeSeries:
    """Immutable truncated series ``sum_t c_t t`` over trees of order <= ``order``.

    Equality compares truncation order and coefficients; the flavor is a tag.
    """

    __slots__ = ("order", "flavor", "_terms")

    def __init__(self, order: int, terms=(), flavor: str | None = None):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for t, c in items:
            t = parse_tree(t) if not isinstance(t, Tree) else t
            if t.order > order:
                raise TruncationMismatch(f"tree {t} exceeds truncation order {order}")
            clean[t] = clean.get(t, 0) + canonical(c)
        clean = {t: c for t, c in clean.items() if c != 0}
        if flavor is None:
            flavor = _infer(clean)
        elif flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        elif not _satisfies(flavor, clean):
            raise FlavorError(f"coefficients are not normalized for flavor {flavor!r}")
        self.order = order
        self.flavor = flavor
        self._terms = clean

    @classmethod
    def _make(cls, order, terms, flavor):
        s = object.__new__(cls)
        s.order = order
        s._terms = {Tree(t): c for t, c in terms.items() if c != 0}
        s.flavor = flavor if _satisfies(flavor, s._terms) else GENERAL
        return s

    @property
    def terms(self) -> Mapping[Tree, object]:
        return MappingProxyType(self._terms)

    def __getitem__(self, t):
        return self._terms.get(t, 0)

    def items(self):
        """Nonzero terms in canonical order (by tree order, then literal)."""
        return sorted(self._terms.items(), key=lambda kv: (_order(kv[0]), kv[0]))

    def homogeneous(self, n: int) -> dict:
        return {t: c for t, c in self._terms.items() if _order(t) == n}

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TreeSeries):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    __hash__ = None

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(-1, other))

    def __neg__(self):
        return series_scale(-1, self)

    def __mul__(self, c):
        return series_scale(c, self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TreeSeries({self.order}, {dict(self.items())!r}, flavor={self.flavor!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for t, c in self.items():
            if c == 1:
                parts.append(t)
            elif isinstance(c, Poly) and len([x for x in c.coeffs if x != 0]) > 1:
                parts.append(f"({c})*{t}")
            else:
                parts.append(f"{c}*{t}")
        return " + ".join(parts)


def random_series(rng, order: int, flavor: str = GENERAL, span: int = 3) -> TreeSeries:
    """Dense series with small random rational coefficients, normalized for ``flavor``.

    ``rng`` is a :class:`random.Random`; the coefficient of each tree is drawn
    in the canonical tree order, so a seed fixes the result.
    """
    from fractions import Fraction
    terms = {}
    for t in trees_up_to(order):
        if flavor == DIFFEO and t == LEAF:
            continue
        terms[t] = Fraction(rng.randint(-span, span), rng.randint(1, span))
    if flavor == INVERTIBLE:
        terms[LEAF] = 1
    elif flavor == DIFFEO:
        terms[VERTEX] = 1
    return TreeSeries(order, terms, flavor)


def unit(order: int) -> TreeSeries:
    """The leaf series, unit of the over and under groups."""
    return TreeSeries._make(order, {LEAF: 1}, INVERTIBLE)


def vertex(order: int) -> TreeSeries:
    """The vertex series, unit of composition."""
    return TreeSeries._make(order, {VERTEX: 1}, DIFFEO)


def zero(order: int) -> TreeSeries:
    return TreeSeries._make(order, {}, GENERAL)


def _check_orders(*series):
    n = series[0].order
    for s in series[1:]:
        if s.order != n:
            raise TruncationMismatch(f"truncation orders differ: {n} vs {s.order}")
    return n


def retruncate(a: TreeSeries, order: int) -> TreeSeries:
    """Drop terms above ``order`` (or just relabel when ``order`` is larger)."""
    terms = {t: c for t, c in a._terms.items() if _order(t) <= order}
    return TreeSeries._make(order, terms, a.flavor)


def map_coefficients(a: TreeSeries, f) -> TreeSeries:
    return TreeSeries._make(a.order, {t: canonical(f(c)) for t, c in a._terms.items()},
                            a.flavor)


def specialize_series(a: TreeSeries, w) -> TreeSeries:
    """Substitute a rational value for the marker ``w`` in every coefficient."""
    return map_coefficients(a, lambda c: specialize(c, w))


def series_add(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    n = _check_orders(a, b)
    out = dict(a._terms)
    for t, c in b._terms.items():
        out[t] = out.get(t, 0) + c
    flavor = a.flavor if a.flavor == b.flavor else GENERAL
    return TreeSeries._make(n, out, flavor)


def series_scale(c, a: TreeSeries) -> TreeSeries:
    c = canonical(c)
    return TreeSeries._make(a.order, {t: c * x for t, x in a._terms.items()}, a.flavor)


def _buckets(terms, n):
    out = [[] for _ in range(n + 1)]
    for t, c in terms.items():
        k = _order(t)
        if k <= n:
            out[k].append((t, c))
    return out


def _over_raw(u, v):
    return v.replace(".", u, 1)


def _under_raw(u, v):
    i = u.rfind(".")
    return u[:i] + v + u[i + 1:]


def _product(x, y, op, n):
    """``sum x_u y_v op(u, v)`` over pairs of total order <= n (dict -> dict)."""
    yb = _buckets(y, n)
    out = {}
    get = out.get
    for u, a in x.items():
        room = n - _order(u)
        if room < 0:
            continue
        for k in range(room + 1):
            for v, b in yb[k]:
                w = op(u, v)
                out[w] = get(w, 0) + a * b
    return {t: c for t, c in out.items() if c != 0}


def series_over(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    """``sum a_u b_v (u over v)``, truncated."""
    n = _check_orders(a, b)
    flavor = INVERTIBLE if a.flavor == b.flavor == INVERTIBLE else GENERAL
    return TreeSeries._make(n, _product(a._terms, b._terms, _over_raw, n), flavor)


def series_under(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    """``sum a_u b_v (u under v)``, truncated."""
    n = _check_orders(a, b)
    flavor = INVERTIBLE if a.flavor == b.flavor == INVERTIBLE else GENERAL
    return TreeSeries._make(n, _product(a._terms, b._terms, _under_raw, n), flavor)


def _require(a, flavor):
    if a.flavor != flavor and not _satisfies(flavor, a._terms):
        raise FlavorError(f"expected a {flavor} series, got {a.flavor}")


def _geometric_inverse(a, op):
    _require(a, INVERTIBLE)
    n = a.order
    x = {t: -c for t, c in a._terms.items() if t != LEAF}
    inv = {LEAF: 1}
    for _ in range(n):
        inv = _product(x, inv, op, n)
        inv[LEAF] = inv.get(LEAF, 0) + 1
    return TreeSeries._make(n, inv, INVERTIBLE)


def series_inverse_over(a: TreeSeries) -> TreeSeries:
    """Inverse for the over product, as the geometric series of ``unit - a``."""
    return _geometric_inverse(a, _over_raw)


def series_inverse_under(a: TreeSeries) -> TreeSeries:
    """Inverse for the under product, as the geometric series of ``unit - a``."""
    return _geometric_inverse(a, _under_raw)


def _powers(b, n):
    """Memoized ``P_t = mu_t(b, ..., b)`` truncated at ``n``.

    ``P_leaf`` is the leaf and ``P_(l r) = (P_l over b) under P_r``; this is the
    recursive form of inserting ``b`` at every vertex of ``t``.
    """
    memo = {".": {".": 1}}

    def power(t):
        got = memo.get(t)
        if got is not None:
            return got
        l, r = _split(t)
        pl, pr = power(l), power(r)
        mid = _product(pl, b, _over_raw, n - _order(r))
        res = _product(mid, pr, _under_raw, n)
        memo[t] = res
        return res

    return power


def _compose_terms(a, b, n):
    power = _powers(b, n)
    out = {}
    for t, c in a.items():
        if _order(t) > n:
            continue
        for u, x in power(t).items():
            out[u] = out.get(u, 0) + c * x
    return {t: c for t, c in out.items() if c != 0}


def series_compose(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    """Substitute ``b`` into ``a``: ``sum_t a_t mu_t(b, ..., b)``."""
    n = _check_orders(a, b)
    if LEAF in a._terms:
        raise FlavorError("the outer series of a composition must have no leaf term")
    _require(b, DIFFEO)
    flavor = DIFFEO if _satisfies(DIFFEO, a._terms) else GENERAL
    return TreeSeries._make(n, _compose_terms(a._terms, b._terms, n), flavor)


def series_compose_inverse(a: TreeSeries) -> TreeSeries:
    """The ``b`` with ``a o b = vertex``, solved one order at a time."""
    _require(a, DIFFEO)
    n = a.order
    rest = {t: c for t, c in a._terms.items() if t != VERTEX}
    b = {VERTEX: 1}
    for m in range(2, n + 1):
        # orders < m of b are final; the order-m part follows from them
        comp = _compose_terms(rest, b, m)
        b = {t: -c for t, c in comp.items()}
        b[VERTEX] = b.get(VERTEX, 0) + 1
    return TreeSeries._make(n, b, DIFFEO)


def suspension(a: TreeSeries) -> TreeSeries:
    """Multiply the order-k part by ``(-1)**(k-1)``."""
    terms = {t: (c if _order(t) % 2 == 1 else -c) for t, c in a._terms.items()}
    return TreeSeries._make(a.order, terms, a.flavor)


def rho_embed(a: TreeSeries) -> TreeSeries:
    """``sum a_t (t over vertex)``: invertible series into diffeomorphisms."""
    _require(a, INVERTIBLE)
    n = a.order
    terms = {"(" + t + ".)": c for t, c in a._terms.items() if _order(t) < n}
    return TreeSeries._make(n, terms, DIFFEO)


def lambda_embed(a: TreeSeries) -> TreeSeries:
    """``sum a_t (vertex under t)``: invertible series into diffeomorphisms."""
    _require(a, INVERTIBLE)
    n = a.order
    terms = {"(." + t + ")": c for t, c in a._terms.items() if _order(t) < n}
    return TreeSeries._make(n, terms, DIFFEO)


def rho_preimage(s: TreeSeries) -> TreeSeries | None:
    """The invertible ``a`` with ``rho_embed(a) == s``, or None if there is none."""
    terms = {}
    for t, c in s._terms.items():
        if t.is_leaf or t.right != LEAF:
            return None
        terms[t.left] = c
    if terms.get(LEAF, 0) != 1:
        return None
    return TreeSeries._make(s.order, terms, INVERTIBLE)


def lambda_preimage(s: TreeSeries) -> TreeSeries | None:
    """The invertible ``a`` with ``lambda_embed(a) == s``, or None if there is none."""
    terms = {}
    for t, c in s._terms.items():
        if t.is_leaf or t.left != LEAF:
            return None
        terms[t.right] = c
    if terms.get(LEAF, 0) != 1:
        return None
    return TreeSeries._make(s.order, terms, INVERTIBLE)


def alpha_build(a: TreeSeries) -> TreeSeries:
    """``(leaf - vertex under a)^(-1, over) over vertex``."""
    n = a.order
    g = series_add(unit(n), series_scale(-1, series_under(vertex(n), a)))
    return series_over(series_inverse_over(g), vertex(n))


@dataclass(frozen=True)
class AlphaMembership:
    """Outcome of :func:`alpha_solve`.

    ``series`` is the preimage when ``member`` is true; otherwise ``tree`` names
    the first offending coefficient, read in the series named by ``where``.
    """

    member: bool
    series: TreeSeries | None = None
    tree: Tree | None = None
    where: str = ""
    reason: str = ""


def _canonical_first(trees):
    return min(trees, key=lambda t: (_order(t), t))


def alpha_solve(s: TreeSeries) -> AlphaMembership:
    """Find ``a`` with ``alpha_build(a) == s``.

    A series truncated at order ``N`` only determines ``a`` up to order ``N - 2``,
    so the preimage is returned truncated there.
    """
    _require(s, DIFFEO)
    n = s.order
    if n < 2:
        raise ValueError("alpha_solve needs truncation order at least 2")
    bad = [t for t in s._terms if t.right != LEAF]
    if bad:
        return AlphaMembership(False, tree=_canonical_first(bad), where="input",
                               reason="tree is not of the form t over vertex")
    g = TreeSeries._make(n - 1, {t.left: c for t, c in s._terms.items()}, INVERTIBLE)
    h = series_inverse_over(g)
    terms = {}
    bad = []
    for t, c in h._terms.items():
        if t == LEAF:
            continue
        if t.left != LEAF:
            bad.append(t)
        else:
            terms[t.right] = -c
    if bad:
        return AlphaMembership(False, tree=_canonical_first(bad), where="over-inverse",
                               reason="over-inverse has a tree outside vertex under Y")
    return AlphaMembership(True, series=TreeSeries._make(n - 2, terms, GENERAL))


@dataclass(frozen=True)
class PowerSeries:
    """Truncated one-variable series ``sum_k coeffs[k] x^k``."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(canonical(c) for c in self.coeffs)
        if len(cs) != self.order + 1:
            raise ValueError("need exactly order + 1 coefficients")
        object.__setattr__(self, "coeffs", cs)

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        n = self.order
        if other.order != n:
            raise TruncationMismatch("truncation orders differ")
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return PowerSeries(n, tuple(out))

    def compose(self, inner: PowerSeries) -> PowerSeries:
        """``self(inner(x))``; ``inner`` must have zero constant term."""
        n = self.order
        if inner.order != n:
            raise TruncationMismatch("truncation orders differ")
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        out = [0] * (n + 1)
        power = PowerSeries(n, (1,) + (0,) * n)
        for k, a in enumerate(self.coeffs):
            if a != 0:
                for i, x in enumerate(power.coeffs):
                    out[i] += a * x
            power = power * inner
        return PowerSeries(n, tuple(out))

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "1" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c == 1:
                body, sign = mono, "+"
            elif c == -1:
                body, sign = mono, "-"
            elif isinstance(c, Poly) and not c.is_constant():
                body, sign = f"({c})*{mono}" if k else f"({c})", "+"
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c)) if k == 0 else f"{abs(c)}*{mono}"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def project(a: TreeSeries) -> PowerSeries:
    """Sum the coefficients of each order: the image in one-variable series."""
    out = [0] * (a.order + 1)
    for t, c in a._terms.items():
        out[_order(t)] += c
    return PowerSeries(a.order, tuple(out))


_INT_OR_DIGITS = {"type": ["integer", "string"], "pattern": "^-?[0-9]+$"}

SERIES_SCHEMA = {
    "type": "object",
    "required": ["order", "flavor", "terms"],
    "additionalProperties": False,
    "properties": {
        "order": {"type": "integer", "minimum": 0},
        "flavor": {"enum": list(FLAVORS)},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["tree", "coeff"],
                "additionalProperties": False,
                "properties": {
                    "tree": {"type": "string"},
                    "coeff": {
                        "type": "object",
                        "required": ["poly"],
                        "additionalProperties": False,
                        "properties": {
                            "poly": {
                                "type": "array",
                                "items": {"type": "array", "minItems": 2, "maxItems": 2,
                                          "items": _INT_OR_DIGITS},
                            },
                        },
                    },
                },
            },
        },
    },
}


def series_to_dict(a: TreeSeries) -> dict:
    return {
        "order": a.order,
        "flavor": a.flavor,
        "terms": [{"tree": str(t), "coeff": coeff_to_json(c)} for t, c in a.items()],
    }


def series_to_json(a: TreeSeries, indent=None) -> str:
    return json.dumps(series_to_dict(a), indent=indent)


def series_from_dict(doc) -> TreeSeries:
    try:
        jsonschema.validate(doc, SERIES_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SeriesFormatError(exc.message) from None
    terms = {}
    for item in doc["terms"]:
        t = parse_tree(item["tree"])
        if t in terms:
            raise SeriesFormatError(f"duplicate tree {t}")
        terms[t] = coeff_from_json(item["coeff"])
    try:
        return TreeSeries(doc["order"], terms, doc["flavor"])
    except ValueError as exc:
        raise SeriesFormatError(str(exc)) from None


def series_from_json(text: str) -> TreeSeries:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesFormatError(f"invalid JSON: {exc}") from None
    return series_from_dict(doc)
