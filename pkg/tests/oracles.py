"""Reference implementations that avoid the package's string surgery and caches."""
from __future__ import annotations

from fractions import Fraction
from math import comb

from duplicial.tree import Tree


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# trees as nested tuples: () is the leaf, (l, r) a node

def to_nested(t):
    t = str(t)
    pos = 0

    def rec():
        nonlocal pos
        if t[pos] == ".":
            pos += 1
            return ()
        pos += 1
        left = rec()
        right = rec()
        pos += 1
        return (left, right)
    return rec()


def from_nested(x):
    if x == ():
        return Tree(".")
    return Tree("(" + from_nested(x[0]) + from_nested(x[1]) + ")")


def n_over(u, v):
    # graft u onto the leftmost leaf of v
    if v == ():
        return u
    return (n_over(u, v[0]), v[1])


def n_under(u, v):
    # graft v onto the rightmost leaf of u
    if u == ():
        return v
    return (u[0], n_under(u[1], v))


def all_nested(n):
    if n == 0:
        return [()]
    return [(l, r) for k in range(n) for l in all_nested(k) for r in all_nested(n - 1 - k)]


def n_order(x):
    return 0 if x == () else 1 + n_order(x[0]) + n_order(x[1])


def n_mu(t, args):
    """In-order insertion via the product recursion on nested tuples."""
    if t == ():
        return ()
    p = n_order(t[0])
    inner = n_over(n_mu(t[0], args[:p]), args[p])
    return n_under(inner, n_mu(t[1], args[p + 1:]))


def brute_compose(a, b, n):
    """Coefficients of a o b by summing mu(t, args) over every argument tuple."""
    b_terms = [(to_nested(s), c) for s, c in b.terms.items()]
    out = {}

    def tuples(k, budget):
        if k == 0:
            yield (), 1
            return
        for s, c in b_terms:
            o = n_order(s)
            if o <= budget:
                for rest, d in tuples(k - 1, budget - o):
                    yield (s,) + rest, c * d
    for t, c in a.terms.items():
        x = to_nested(t)
        k = n_order(x)
        for args, d in tuples(k, n):
            key = from_nested(n_mu(x, args))
            out[key] = out.get(key, 0) + c * d
    return {t: c for t, c in out.items() if c != 0}


# Tamari order via right-subtree-size vectors, compared componentwise

def bracket_vector(t):
    out = []

    def rec(x):
        if x == ():
            return 0
        ls = rec(x[0])
        slot = len(out)
        out.append(None)
        rs = rec(x[1])
        out[slot] = rs
        return ls + rs + 1
    rec(to_nested(t))
    return tuple(out)


def mobius_from_bottom(n):
    """mu(c_n, t) by the defining recursion, with the order read off bracket vectors."""
    from duplicial.tree import enumerate_trees
    elems = enumerate_trees(n)
    vecs = {t: bracket_vector(t) for t in elems}
    rank = sorted(elems, key=lambda t: sum(vecs[t]))
    bottom = rank[0]
    leq = lambda s, t: all(a <= b for a, b in zip(vecs[s], vecs[t]))
    mu = {}
    for t in rank:
        if t == bottom:
            mu[t] = 1
        else:
            mu[t] = -sum(m for z, m in mu.items() if leq(z, t))
    return mu


def small_fraction(rng, span=3):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))

