"""Hopf-algebra combinatorics of the renormalization algebras on trees.

* pruning coproducts on trees, dual to the under product (``delta_e``) and the
  over product (``delta_p``), in recursive and in factorization form;
* the antipode of the abelianized under-coproduct algebra, with the leaf as unit;
* tree functionals and their convolutions;
* the charge algebra ``H^a = Q[V(t)]`` with its coproduct and right coaction.

Monomials of the commutative algebras are sorted tuples of trees; the empty
tuple is the unit.  In ``H^a`` the tuple ``(s1, ..., sk)`` stands for
``V(s1) ... V(sk)``, which is the image of the tree
``V(s1) over ... over V(sk)``.
"""
from __future__ import annotations

from functools import lru_cache

from .coeffs import canonical, coeff_to_json
from .series import INVERTIBLE, FlavorError, TreeSeries
from .tree import (LEAF, VERTEX, Tree, _split, left_spine_factors, over,
                   over_factorizations, trees_up_to, under_factorizations, v_wrap)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    return tuple(sorted(m1 + m2))


def _acc(d, key, c):
    v = d.get(key, 0) + c
    if v == 0:
        d.pop(key, None)
    else:
        d[key] = v


def _leg_str(x, generators):
    if isinstance(x, tuple):
        if not x:
            return "1"
        return "*".join(f"V({s})" if generators else str(s) for s in x)
    return str(x)


def _leg_json(x):
    return [str(s) for s in x] if isinstance(x, tuple) else str(x)


class TensorSum:
    """Formal sum of ``coeff * left ⊗ right`` with merged, nonzero terms.

    Legs are trees or monomials (sorted tuples of trees).
    """

    __slots__ = ("terms", "generators")

    def __init__(self, terms=(), generators=False):
        self.terms = {}
        self.generators = generators
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            _acc(self.terms, key, canonical(c))

    def __eq__(self, other):
        if not isinstance(other, TensorSum):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        out = TensorSum(self.terms, self.generators)
        for key, c in other.terms.items():
            _acc(out.terms, key, c)
        return out

    def items(self):
        def sort_key(kv):
            (a, b), _ = kv
            return (_leg_key(a), _leg_key(b))
        return sorted(self.terms.items(), key=sort_key)

    def lines(self):
        return [f"{c} * {_leg_str(a, self.generators)} ⊗ {_leg_str(b, self.generators)}"
                for (a, b), c in self.items()]

    def __str__(self):
        return "\n".join(self.lines())

    def to_json(self):
        return [{"coeff": coeff_to_json(c), "left": _leg_json(a), "right": _leg_json(b)}
                for (a, b), c in self.items()]


def _leg_key(x):
    if isinstance(x, tuple):
        return (sum(s.order + 1 for s in x), x)
    return (x.order, (x,))


# pruning coproducts

@lru_cache(maxsize=4096)
def _delta_e_rec(t):
    if t == LEAF:
        return ((LEAF, LEAF),)
    l, r = _split(t)
    return ((LEAF, t),) + tuple((Tree("(" + l + a + ")"), b) for a, b in _delta_e_rec(r))


@lru_cache(maxsize=4096)
def _delta_p_rec(t):
    if t == LEAF:
        return ((LEAF, LEAF),)
    l, r = _split(t)
    return ((t, LEAF),) + tuple((a, Tree("(" + b + r + ")")) for a, b in _delta_p_rec(l))


def delta_e_recursive(t) -> TensorSum:
    """``Δe(t) = leaf ⊗ t + sum (t_l ∨ (t_r)_(1)) ⊗ (t_r)_(2)``."""
    return TensorSum((pair, 1) for pair in _delta_e_rec(Tree(t)))


def delta_p_recursive(t) -> TensorSum:
    """Mirror image of :func:`delta_e_recursive` along the left spine."""
    return TensorSum((pair, 1) for pair in _delta_p_rec(Tree(t)))


def delta_e(t) -> TensorSum:
    """Sum of ``u ⊗ v`` over all ``t = u under v``."""
    return TensorSum((pair, 1) for pair in under_factorizations(t))


def delta_p(t) -> TensorSum:
    """Sum of ``u ⊗ v`` over all ``t = u over v``."""
    return TensorSum((pair, 1) for pair in over_factorizations(t))


def counit(x) -> int:
    """``ε(t) = 1`` on the leaf (or the empty monomial), else 0."""
    if isinstance(x, tuple):
        return 1 if not x else 0
    return 1 if x == LEAF else 0


def apply_left(delta, ts: TensorSum) -> dict:
    """``(Δ ⊗ id)`` on a tensor of trees, as ``{(a, b, c): coeff}``."""
    out = {}
    for (u, v), c in ts.terms.items():
        for (a, b), d in delta(u).terms.items():
            _acc(out, (a, b, v), c * d)
    return out


def apply_right(delta, ts: TensorSum) -> dict:
    """``(id ⊗ Δ)`` on a tensor of trees, as ``{(a, b, c): coeff}``."""
    out = {}
    for (u, v), c in ts.terms.items():
        for (a, b), d in delta(v).terms.items():
            _acc(out, (u, a, b), c * d)
    return out


# abelianized algebra and antipode

class TreePolynomial:
    """Commutative polynomial in tree-labelled variables; the leaf is the unit."""

    __slots__ = ("terms",)
    _var = staticmethod(str)

    def __init__(self, terms=()):
        self.terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            m = tuple(sorted(s for s in m if s != LEAF))
            _acc(self.terms, m, canonical(c))

    @classmethod
    def monomial(cls, *trees, coeff=1):
        return cls([(trees, coeff)])

    @classmethod
    def one(cls):
        return cls([((), 1)])

    def __eq__(self, other):
        if isinstance(other, TreePolynomial):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        out = type(self)(self.terms)
        for m, c in other.terms.items():
            _acc(out.terms, m, c)
        return out

    def __neg__(self):
        return type(self)({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TreePolynomial):
            return type(self)({m: c * other for m, c in self.terms.items()})
        out = type(self)()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _acc(out.terms, _mono_mul(m1, m2), c1 * c2)
        return out

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "*".join(self._var(s) for s in m) or "1"
            parts.append(mono if c == 1 and m else f"{c}*{mono}" if m else str(c))
        return " + ".join(parts)

    __repr__ = __str__


class HaElement(TreePolynomial):
    """Element of ``Q[V(t)]``; a monomial ``(s1, ..., sk)`` is ``V(s1)...V(sk)``."""

    __slots__ = ()
    _var = staticmethod(lambda s: f"V({s})")

    def __init__(self, terms=()):
        self.terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            _acc(self.terms, tuple(sorted(m)), canonical(c))


@lru_cache(maxsize=4096)
def _antipode(t):
    if t == LEAF:
        return TreePolynomial.one()
    out = TreePolynomial.monomial(t, coeff=-1)
    for u, v in under_factorizations(t):
        if u != LEAF and v != LEAF:
            out = out - _antipode(u) * TreePolynomial.monomial(v)
    return out


def antipode_e(t) -> TreePolynomial:
    """Antipode of the abelianized under-coproduct Hopf algebra."""
    return _antipode(Tree(t))


class TreeFunctional:
    """Coefficient-valued map on trees of order <= ``order``.

    Extended multiplicatively to monomials of :class:`TreePolynomial`.
    """

    def __init__(self, fn, order: int):
        self._fn = fn
        self.order = order
        self._cache = {}

    @classmethod
    def from_mapping(cls, values, order: int, leaf=1):
        values = dict(values)
        values.setdefault(LEAF, leaf)
        return cls(lambda t: values.get(t, 0), order)

    @classmethod
    def from_series(cls, s: TreeSeries):
        return cls(lambda t: s[t], s.order)

    def __call__(self, t):
        t = Tree(t)
        if t.order > self.order:
            raise ValueError(f"functional defined up to order {self.order}, got {t}")
        try:
            return self._cache[t]
        except KeyError:
            v = self._cache[t] = canonical(self._fn(t))
            return v

    def on_monomial(self, m):
        out = 1
        for s in m:
            out = out * self(s)
        return out

    def on_polynomial(self, p: TreePolynomial):
        total = 0
        for m, c in p.terms.items():
            total = total + c * self.on_monomial(m)
        return total


def epsilon(order: int) -> TreeFunctional:
    """The counit as a functional: the unit for both convolutions."""
    return TreeFunctional(lambda t: 1 if t == LEAF else 0, order)


def _convolve(f, g, factorizations):
    order = min(f.order, g.order)
    return TreeFunctional(lambda t: sum(f(u) * g(v) for u, v in factorizations(t)), order)


def convolve_under(f: TreeFunctional, g: TreeFunctional) -> TreeFunctional:
    """``(f * g)(t) = sum f(u) g(v)`` over ``t = u under v``."""
    return _convolve(f, g, under_factorizations)


def convolve_over(f: TreeFunctional, g: TreeFunctional) -> TreeFunctional:
    """``(f * g)(t) = sum f(u) g(v)`` over ``t = u over v``."""
    return _convolve(f, g, over_factorizations)


def inverse_via_antipode(s: TreeSeries) -> TreeSeries:
    """Under-inverse of an invertible series: its character composed with the antipode."""
    if s[LEAF] != 1:
        raise FlavorError("expected an invertible series (leaf coefficient 1)")
    phi = TreeFunctional.from_series(s)
    terms = {t: phi.on_polynomial(antipode_e(t)) for t in trees_up_to(s.order)}
    return TreeSeries(s.order, terms, INVERTIBLE)


# the charge algebra H^a

def ha_monomial(t) -> tuple:
    """Monomial of ``H^a`` represented by the tree ``t`` (its left-spine factors)."""
    return tuple(sorted(left_spine_factors(t)))


def _lifted_product(x, y):
    """Componentwise over on first legs (trees), product on second legs."""
    out = {}
    for (a, m1), c1 in x.items():
        for (b, m2), c2 in y.items():
            _acc(out, (over(a, b), _mono_mul(m1, m2)), c1 * c2)
    return out


@lru_cache(maxsize=4096)
def _lifted_coaction(t):
    """``δ(V(t))`` with first legs kept as trees: ``{(tree, monomial): coeff}``."""
    if t == LEAF:
        return {(VERTEX, ()): 1}
    l, r = _split(t)
    inner = _lifted_product(_lifted_coproduct(l), _lifted_coaction(r))
    out = {}
    for (a, m), c in inner.items():
        _acc(out, (v_wrap(a), m), c)
    return out


@lru_cache(maxsize=4096)
def _lifted_coproduct(x):
    """``Δ`` of the tree ``x = V(s1) over ... over V(sk)``, first legs as trees."""
    acc = {(LEAF, ()): 1}
    for s in left_spine_factors(x):
        gen = dict(_lifted_coaction(s))
        _acc(gen, (LEAF, (s,)), 1)
        acc = _lifted_product(acc, gen)
    return acc


def coaction_a(t) -> TensorSum:
    """Right coaction on the generator ``V(t)``."""
    out = TensorSum(generators=True)
    for (a, m), c in _lifted_coaction(Tree(t)).items():
        _acc(out.terms, (ha_monomial(a), m), c)
    return out


def delta_a(t) -> TensorSum:
    """Coproduct on the generator ``V(t)``: ``1 ⊗ V(t) + δ(V(t))``."""
    out = coaction_a(t)
    _acc(out.terms, ((), (Tree(t),)), 1)
    return out


def _extend(gen_map, m):
    out = {((), ()): 1}
    for s in m:
        nxt = {}
        for (a, b), c in out.items():
            for (x, y), d in gen_map(s).terms.items():
                _acc(nxt, (_mono_mul(a, x), _mono_mul(b, y)), c * d)
        out = nxt
    return TensorSum(out, generators=True)


def delta_a_monomial(m) -> TensorSum:
    """``Δ`` extended multiplicatively to a monomial of ``H^a``."""
    return _extend(delta_a, m)


def coaction_a_monomial(m) -> TensorSum:
    """``δ`` extended multiplicatively to a monomial of ``H^a``."""
    return _extend(coaction_a, m)


def _triples_left(op, ts):
    out = {}
    for (m1, m2), c in ts.terms.items():
        for (a, b), d in op(m1).terms.items():
            _acc(out, (a, b, m2), c * d)
    return out


def _triples_right(op, ts):
    out = {}
    for (m1, m2), c in ts.terms.items():
        for (a, b), d in op(m2).terms.items():
            _acc(out, (m1, a, b), c * d)
    return out


def ha_coassociativity_holds(t) -> bool:
    """``(Δ ⊗ id) Δ(V(t)) == (id ⊗ Δ) Δ(V(t))``."""
    d = delta_a(t)
    return _triples_left(delta_a_monomial, d) == _triples_right(delta_a_monomial, d)


def ha_counit_holds(t) -> bool:
    d = delta_a(t)
    gen = {(Tree(t),): 1}
    left = {}
    right = {}
    for (a, b), c in d.terms.items():
        if not a:
            _acc(left, b, c)
        if not b:
            _acc(right, a, c)
    return left == gen and right == gen


def coaction_laws_hold(t) -> bool:
    """``(id ⊗ Δ) δ = (δ ⊗ id) δ`` and ``(id ⊗ ε) δ = id`` on ``V(t)``."""
    d = coaction_a(t)
    coassoc = (_triples_right(delta_a_monomial, d)
               == _triples_left(coaction_a_monomial, d))
    counit_part = {}
    for (a, b), c in d.terms.items():
        if not b:
            _acc(counit_part, a, c)
    return coassoc and counit_part == {(Tree(t),): 1}
