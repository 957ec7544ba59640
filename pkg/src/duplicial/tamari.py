"""Tamari lattices on planar binary trees and their Möbius function.

The order is generated by right rotation ``((a b) c) -> (a (b c))``, so the left
comb is the minimum and the right comb the maximum.  Reachability is stored as
Python-int bitsets indexed by the canonical enumeration.
"""
from __future__ import annotations

import heapq
import json
import threading
from dataclasses import dataclass, field
from functools import lru_cache

from .tree import Tree, _split, enumerate_trees, left_comb, over, parse_tree

DEFAULT_LATTICE_CAP = 9


def covers(t) -> list[Tree]:
    """Trees obtained from ``t`` by a single right rotation, sorted."""
    return sorted(set(_rotations(Tree(t))))


def _rotations(t):
    if t.is_leaf:
        return []
    l, r = _split(t)
    out = []
    if not l.is_leaf:
        a, b = _split(l)
        out.append(Tree("(" + a + "(" + b + r + "))"))
    out.extend(Tree("(" + x + r + ")") for x in _rotations(l))
    out.extend(Tree("(" + l + x + ")") for x in _rotations(r))
    return out


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(eq=False)
class TamariLattice:
    n: int
    elements: list
    index: dict
    upper_covers: list          # i -> indices covering i
    lower_covers: list          # i -> indices covered by i
    up: list                    # i -> bitset of {j : i <= j}
    down: list                  # i -> bitset of {j : j <= i}
    linear: list                # a linear extension (indices)
    _mobius: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __len__(self):
        return len(self.elements)

    def idx(self, t) -> int:
        try:
            return self.index[t]
        except KeyError:
            raise ValueError(f"{t} is not an element of Y_{self.n}") from None

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self.elements)) for j in self.upper_covers[i]]

    @property
    def bottom(self) -> Tree:
        return self.elements[self.linear[0]]

    @property
    def top(self) -> Tree:
        return self.elements[self.linear[-1]]


def _assemble(n, elements, upper):
    m = len(elements)
    index = {t: i for i, t in enumerate(elements)}
    lower = [[] for _ in range(m)]
    for i, cs in enumerate(upper):
        for j in cs:
            lower[j].append(i)
    # Kahn's algorithm, ties broken by index, gives a deterministic linear extension
    indeg = [len(lower[i]) for i in range(m)]
    ready = sorted(i for i in range(m) if indeg[i] == 0)
    linear = []
    heapq.heapify(ready)
    while ready:
        i = heapq.heappop(ready)
        linear.append(i)
        for j in upper[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(linear) != m:
        raise ValueError("cover relation has a cycle")
    up = [0] * m
    for i in reversed(linear):
        mask = 1 << i
        for j in upper[i]:
            mask |= up[j]
        up[i] = mask
    down = [0] * m
    for i in linear:
        mask = 1 << i
        for j in lower[i]:
            mask |= down[j]
        down[i] = mask
    return TamariLattice(n, elements, index, upper, lower, up, down, linear)


@lru_cache(maxsize=16)
def _build(n):
    elements = enumerate_trees(n)
    index = {t: i for i, t in enumerate(elements)}
    upper = [sorted(index[c] for c in covers(t)) for t in elements]
    return _assemble(n, elements, upper)


def build_lattice(n: int, cap: int = DEFAULT_LATTICE_CAP) -> TamariLattice:
    """The Tamari lattice on trees of order ``n`` (cached per ``n``)."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > cap:
        from .tree import ResourceLimitError
        raise ResourceLimitError(f"lattice order {n} exceeds the cap {cap}")
    return _build(n)


def leq(lat: TamariLattice, s, t) -> bool:
    return bool(lat.up[lat.idx(s)] >> lat.idx(t) & 1)


def _mobius_row(lat, i):
    """``mu(s, z)`` for every ``z >= s``, where ``s`` is element ``i``."""
    with lat._lock:
        row = lat._mobius.get(i)
        if row is not None:
            return row
    above = lat.up[i]
    row = {}
    for z in lat.linear:
        if not above >> z & 1:
            continue
        if z == i:
            row[z] = 1
            continue
        total = 0
        for y in _bits(lat.down[z] & above):
            if y != z:
                total += row[y]
        row[z] = -total
    with lat._lock:
        lat._mobius[i] = row
    return row


def mobius(lat: TamariLattice, s, t) -> int:
    """Möbius function ``mu(s, t)``; ``s <= t`` is required."""
    i, j = lat.idx(s), lat.idx(t)
    if not lat.up[i] >> j & 1:
        raise ValueError(f"{s} and {t} are not comparable as s <= t")
    return _mobius_row(lat, i)[j]


def mobius_from_min(n: int, cap: int = DEFAULT_LATTICE_CAP) -> dict:
    """``{t: mu(c_n, t)}`` over all trees of order ``n``."""
    lat = build_lattice(n, cap)
    row = _mobius_row(lat, lat.idx(left_comb(n)))
    return {lat.elements[j]: row[j] for j in range(len(lat.elements))}


@dataclass(frozen=True)
class IntervalReport:
    p: int
    q: int
    passed: bool
    checked: int
    counterexample: tuple | None = None  # (t', t'', lhs, rhs)


def interval_product_check(p: int, q: int, cap: int = DEFAULT_LATTICE_CAP) -> IntervalReport:
    """Check ``mu(c_{p+q}, t' over t'') == mu(c_p, t') mu(c_q, t'')`` exhaustively."""
    big = mobius_from_min(p + q, cap)
    mp = mobius_from_min(p, cap)
    mq = mobius_from_min(q, cap)
    checked = 0
    for t1, m1 in mp.items():
        for t2, m2 in mq.items():
            lhs = big[over(t1, t2)]
            checked += 1
            if lhs != m1 * m2:
                return IntervalReport(p, q, False, checked, (t1, t2, lhs, m1 * m2))
    return IntervalReport(p, q, True, checked)


def meet_join_table(lat: TamariLattice):
    """Return ``(meet, join)`` index tables, or raise if some pair lacks one."""
    m = len(lat.elements)
    meet = [[0] * m for _ in range(m)]
    join = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            ub = lat.up[i] & lat.up[j]
            js = [z for z in _bits(ub) if lat.up[z] == ub]
            lb = lat.down[i] & lat.down[j]
            ms = [z for z in _bits(lb) if lat.down[z] == lb]
            if len(js) != 1 or len(ms) != 1:
                raise ValueError(f"no unique meet/join for {lat.elements[i]}, {lat.elements[j]}")
            join[i][j] = join[j][i] = js[0]
            meet[i][j] = meet[j][i] = ms[0]
    return meet, join


def export_dot(lat: TamariLattice) -> str:
    """Hasse diagram in DOT, drawn bottom to top."""
    lines = [f"digraph tamari_{lat.n} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, t in enumerate(lat.elements):
        lines.append(f'  n{i} [label="{t}"];')
    for i, j in lat.cover_pairs():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(lat: TamariLattice) -> str:
    doc = {
        "n": lat.n,
        "elements": [str(t) for t in lat.elements],
        "covers": [[i, j] for i, j in lat.cover_pairs()],
    }
    return json.dumps(doc)


def import_json(text: str) -> TamariLattice:
    """Rebuild a lattice from :func:`export_json` output (covers as given)."""
    doc = json.loads(text)
    elements = [parse_tree(t) for t in doc["elements"]]
    upper = [[] for _ in elements]
    for i, j in doc["covers"]:
        upper[i].append(j)
    return _assemble(doc["n"], elements, [sorted(u) for u in upper])
