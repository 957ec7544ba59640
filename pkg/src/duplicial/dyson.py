"""Tree expansion of a bilinear two-field fixed-point recursion.

Two families of coefficients are built from seeds ``s0``, ``d0`` and two maps
``phi_s(d, s)``, ``phi_d(s, d)``:

* indexed by trees: ``S_t = phi_s(D_l, S_r)``, ``D_t = phi_d(S_l, D_r)`` for ``t = (l r)``;
* indexed by integers: ``S_n = sum_{k+l=n-1} phi_s(D_k, S_l)`` and likewise ``D_n``.

When both maps are bilinear, summing the tree coefficients over all trees of
order ``n`` gives the integer coefficients.  :func:`aggregate_check` verifies this.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .tree import LEAF, ResourceLimitError, _split, trees_up_to

DEFAULT_CAP = 10


@dataclass(frozen=True)
class CoefficientAlgebra:
    add: Callable[[Any, Any], Any]
    scale: Callable[[Any, Any], Any]
    zero: Any
    phi_s: Callable[[Any, Any], Any]
    phi_d: Callable[[Any, Any], Any]
    s0: Any
    d0: Any
    name: str = "algebra"
    sample: Callable[[random.Random], Any] | None = None
    params: dict | None = None

    def total(self, xs):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out


# exact rational matrices as tuples of tuples

def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(r, a):
    return tuple(tuple(r * x for x in row) for row in a)


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols)
                 for row in a)


def mat_zero(dim):
    return tuple((Fraction(0),) * dim for _ in range(dim))


def _random_matrix(rng, dim):
    return tuple(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(dim))
                 for _ in range(dim))


def matrix_algebra_instance(dim: int, seed: int) -> CoefficientAlgebra:
    """Matrices with ``phi_s(d, s) = X d Y s`` and ``phi_d(s, d) = d Z s W``."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    rng = random.Random(seed)
    X, Y, Z, W, s0, d0 = (_random_matrix(rng, dim) for _ in range(6))
    return CoefficientAlgebra(
        add=mat_add,
        scale=mat_scale,
        zero=mat_zero(dim),
        phi_s=lambda d, s: mat_mul(mat_mul(mat_mul(X, d), Y), s),
        phi_d=lambda s, d: mat_mul(mat_mul(mat_mul(d, Z), s), W),
        s0=s0,
        d0=d0,
        name=f"matrix(dim={dim}, seed={seed})",
        sample=lambda r: _random_matrix(r, dim),
        params={"X": X, "Y": Y, "Z": Z, "W": W, "s0": s0, "d0": d0},
    )


def nonbilinear_instance(dim: int, seed: int) -> CoefficientAlgebra:
    """Matrix instance whose ``phi_s`` gains a term quadratic in ``d`` (negative control)."""
    base = matrix_algebra_instance(dim, seed)

    def phi_s(d, s):
        return mat_add(base.phi_s(d, s), mat_mul(d, d))

    return CoefficientAlgebra(base.add, base.scale, base.zero, phi_s, base.phi_d,
                              base.s0, base.d0, f"nonbilinear(dim={dim}, seed={seed})",
                              base.sample, base.params)


def instance_digest(alg: CoefficientAlgebra) -> str:
    """sha256 of the generated parameter matrices, for golden comparisons."""
    doc = {k: [[str(x) for x in row] for row in m] for k, m in sorted(alg.params.items())}
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def bilinearity_spot_check(alg: CoefficientAlgebra, seed: int = 0, trials: int = 5) -> bool:
    """Check additivity and homogeneity of both maps in each slot on random elements."""
    rng = random.Random(seed)
    for _ in range(trials):
        a, b, c = (alg.sample(rng) for _ in range(3))
        r = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        for phi in (alg.phi_s, alg.phi_d):
            if phi(alg.add(a, b), c) != alg.add(phi(a, c), phi(b, c)):
                return False
            if phi(c, alg.add(a, b)) != alg.add(phi(c, a), phi(c, b)):
                return False
            if phi(alg.scale(r, a), c) != alg.scale(r, phi(a, c)):
                return False
            if phi(c, alg.scale(r, a)) != alg.scale(r, phi(c, a)):
                return False
    return True


def _check_cap(n, cap):
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > cap:
        raise ResourceLimitError(f"order {n} exceeds the cap {cap}")


def tree_coefficients(alg: CoefficientAlgebra, n: int, cap: int = DEFAULT_CAP):
    """``({t: S_t}, {t: D_t})`` for every tree of order <= ``n``."""
    _check_cap(n, cap)
    S = {LEAF: alg.s0}
    D = {LEAF: alg.d0}
    for t in trees_up_to(n):  # ordered by order, so subtrees come first
        if t == LEAF:
            continue
        l, r = _split(t)
        S[t] = alg.phi_s(D[l], S[r])
        D[t] = alg.phi_d(S[l], D[r])
    return S, D


def order_coefficients(alg: CoefficientAlgebra, n: int, cap: int = DEFAULT_CAP):
    """``([S_0..S_n], [D_0..D_n])`` from the integer-order recursion."""
    _check_cap(n, cap)
    S, D = [alg.s0], [alg.d0]
    for m in range(1, n + 1):
        S.append(alg.total(alg.phi_s(D[k], S[m - 1 - k]) for k in range(m)))
        D.append(alg.total(alg.phi_d(S[k], D[m - 1 - k]) for k in range(m)))
    return S, D


@dataclass(frozen=True)
class AggregationReport:
    algebra: str
    max_order: int
    passed: bool
    first_failure: int | None = None
    field: str | None = None        # "S" or "D"

    def __str__(self):
        if self.passed:
            return f"{self.algebra}: aggregation holds for n <= {self.max_order}"
        return f"{self.algebra}: {self.field}_n differs from the tree sum at n = {self.first_failure}"


def aggregate_check(alg: CoefficientAlgebra, n: int, cap: int = DEFAULT_CAP) -> AggregationReport:
    """Compare tree sums against integer-order coefficients, reporting the first mismatch."""
    St, Dt = tree_coefficients(alg, n, cap)
    Sn, Dn = order_coefficients(alg, n, cap)
    by_order = {}
    for t in St:
        by_order.setdefault(t.order, []).append(t)
    for m in range(n + 1):
        if alg.total(St[t] for t in by_order[m]) != Sn[m]:
            return AggregationReport(alg.name, n, False, m, "S")
        if alg.total(Dt[t] for t in by_order[m]) != Dn[m]:
            return AggregationReport(alg.name, n, False, m, "D")
    return AggregationReport(alg.name, n, True)
