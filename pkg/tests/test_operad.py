from __future__ import annotations

import itertools

import pytest

from duplicial.operad import ArityError, mu
from duplicial.tree import VERTEX, enumerate_trees, over, trees_up_to, under

import oracles


def test_examples():
    assert mu("(..)", ["(.(..))"]) == "(.(..))"
    assert mu("((..).)", ["(..)", "(..)"]) == "((..).)"
    assert mu("((..).)", ["(.(..))", "(..)"]) == "((.(..)).)"


def test_errors():
    with pytest.raises(ArityError):
        mu("((..).)", ["(..)"])
    with pytest.raises(ValueError):
        mu(".", [])
    with pytest.raises(ValueError):
        mu("(..)", ["."])


def _args(total, k):
    for split in itertools.product(range(1, total + 1), repeat=k):
        if sum(split) == total:
            yield from itertools.product(*(enumerate_trees(s) for s in split))


def test_units_and_grading():
    for t in trees_up_to(7)[1:]:
        assert mu(VERTEX, [t]) == t
        assert mu(t, [VERTEX] * t.order) == t
    for total in range(1, 6):
        for k in range(1, total + 1):
            for t in enumerate_trees(k):
                for args in _args(total, k):
                    assert mu(t, args).order == total


def test_matches_nested_recursion():
    for total in range(1, 6):
        for k in range(1, total + 1):
            for t in enumerate_trees(k):
                for args in _args(total, k):
                    nested = oracles.n_mu(oracles.to_nested(t), [oracles.to_nested(a) for a in args])
                    assert mu(t, args) == oracles.from_nested(nested)


def test_compatibility_with_products():
    # mu(t over t', args) splits the arguments between the two factors
    for n1 in range(1, 4):
        for n2 in range(1, 4):
            for t1 in enumerate_trees(n1):
                for t2 in enumerate_trees(n2):
                    for args in _args(min(n1 + n2 + 1, 6), n1 + n2):
                        a1, a2 = args[:n1], args[n1:]
                        assert mu(over(t1, t2), args) == over(mu(t1, a1), mu(t2, a2))
                        assert mu(under(t1, t2), args) == under(mu(t1, a1), mu(t2, a2))


def test_operad_associativity_spot_check():
    small = enumerate_trees(1) + enumerate_trees(2)
    for t in enumerate_trees(2):
        for a in small:
            for b in small:
                k = a.order + b.order
                for args in itertools.product(small, repeat=k):
                    lhs = mu(mu(t, [a, b]), args)
                    rhs = mu(t, [mu(a, args[:a.order]), mu(b, args[a.order:])])
                    assert lhs == rhs
