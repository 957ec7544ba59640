"""Duplicial operad composition on planar binary trees."""
from __future__ import annotations

from .tree import LEAF, Tree, _split, over, under


class ArityError(ValueError):
    """Number of arguments differs from the number of vertices."""


def mu(t, args) -> Tree:
    """Insert ``args[i]`` at the ``i``-th vertex of ``t`` (vertices in in-order).

    For ``t = graft(l, r)`` with ``p`` vertices in ``l`` this is
    ``under(over(mu(l, args[:p]), args[p]), mu(r, args[p+1:]))``; an empty side
    contributes the leaf, which is the unit of both products.
    """
    t = Tree(t)
    if t.is_leaf:
        raise ValueError("cannot compose into the leaf tree")
    args = [Tree(s) for s in args]
    if len(args) != t.order:
        raise ArityError(f"tree of order {t.order} takes {t.order} arguments, got {len(args)}")
    for s in args:
        if s.is_leaf:
            raise ValueError("arguments must have at least one vertex")
    return _mu(t, args, 0)


def _mu(t, args, start):
    if len(t) == 1:
        return LEAF
    l, r = _split(t)
    p = (len(l) - 1) // 3
    inner = over(_mu(l, args, start), args[start + p])
    return under(inner, _mu(r, args, start + p + 1))
