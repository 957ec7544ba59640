"""Planar binary trees.

A tree is stored as its canonical literal: ``"."`` for the leaf and ``"(LR)"``
for the node with left subtree ``L`` and right subtree ``R``.  :class:`Tree` is a
``str`` subclass, so equality, hashing and ordering are those of the literal and
the lexicographic order on literals is the canonical enumeration order.

The two associative products are string surgery on the literal: the leftmost
leaf of a tree is its first ``"."`` and the rightmost leaf its last ``"."``.
"""
from __future__ import annotations

from functools import lru_cache

DEFAULT_MAX_ORDER = 14


class TreeParseError(ValueError):
    """Malformed tree literal; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class ResourceLimitError(ValueError):
    """Requested size exceeds the configured cap."""


class Tree(str):
    """Immutable planar binary tree, identified with its literal."""

    __slots__ = ()

    @property
    def order(self) -> int:
        """Number of internal vertices."""
        return (len(self) - 1) // 3

    @property
    def is_leaf(self) -> bool:
        return len(self) == 1

    @property
    def left(self) -> Tree:
        if len(self) == 1:
            raise ValueError("the leaf has no subtrees")
        return _split(self)[0]

    @property
    def right(self) -> Tree:
        if len(self) == 1:
            raise ValueError("the leaf has no subtrees")
        return _split(self)[1]

    def __repr__(self):
        return f"Tree({str(self)!r})"


LEAF = Tree(".")
VERTEX = Tree("(..)")


@lru_cache(maxsize=1 << 18)
def _split(code):
    depth = 0
    for i in range(1, len(code) - 1):
        c = code[i]
        if c == "(":
            depth += 1
            continue
        if c == ")":
            depth -= 1
        if depth == 0:
            return Tree(code[1:i + 1]), Tree(code[i + 1:-1])
    raise ValueError(f"not a node literal: {code!r}")


def parse_tree(text) -> Tree:
    """Parse a literal ``tree := "." | "(" tree tree ")"``; whitespace is ignored.

    Raises :class:`TreeParseError` carrying the byte offset of the first problem.
    """
    data = text.encode("utf-8") if isinstance(text, str) else bytes(text)
    stack = []  # children read so far, per open node
    chars = []
    done = False
    for off, b in enumerate(data):
        if b in b" \t\r\n\f\v":
            continue
        if done:
            raise TreeParseError("trailing characters", off)
        if b == 0x28:  # "("
            if stack and stack[-1] >= 2:
                raise TreeParseError("node has more than two children", off)
            stack.append(0)
        elif b == 0x2E:  # "."
            if not stack:
                done = True
            elif stack[-1] >= 2:
                raise TreeParseError("node has more than two children", off)
            else:
                stack[-1] += 1
        elif b == 0x29:  # ")"
            if not stack:
                raise TreeParseError("unbalanced ')'", off)
            if stack.pop() != 2:
                raise TreeParseError("node needs exactly two children", off)
            if stack:
                stack[-1] += 1
            else:
                done = True
        else:
            raise TreeParseError(f"unexpected byte {b:#04x}", off)
        chars.append(chr(b))
    if not chars:
        raise TreeParseError("empty literal", len(data))
    if not done:
        raise TreeParseError("unexpected end of literal", len(data))
    return Tree("".join(chars))


def order(t) -> int:
    return (len(t) - 1) // 3


def graft(l, r) -> Tree:
    """The tree with left subtree ``l`` and right subtree ``r`` on a new root."""
    return Tree("(" + l + r + ")")


def over(u, v) -> Tree:
    """Graft the root of ``u`` onto the leftmost leaf of ``v``."""
    return Tree(v.replace(".", u, 1))


def under(u, v) -> Tree:
    """Graft the root of ``v`` onto the rightmost leaf of ``u``."""
    i = u.rfind(".")
    return Tree(u[:i] + v + u[i + 1:])


def left_comb(p: int) -> Tree:
    """c_p: all ``p`` vertices on the left spine."""
    if p < 0:
        raise ValueError("comb size must be nonnegative")
    return Tree("(" * p + "." + ".)" * p)


def right_comb(q: int) -> Tree:
    """d_q: all ``q`` vertices on the right spine."""
    if q < 0:
        raise ValueError("comb size must be nonnegative")
    return Tree("(." * q + "." + ")" * q)


def v_wrap(t) -> Tree:
    """V(t) = vertex under t, i.e. graft(leaf, t)."""
    return Tree("(." + t + ")")


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def enumerate_trees(n: int, max_order: int = DEFAULT_MAX_ORDER) -> list[Tree]:
    """All trees with ``n`` internal vertices, sorted by literal."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > max_order:
        raise ResourceLimitError(
            f"order {n} exceeds the enumeration cap {max_order} "
            f"({catalan(n)} trees)")
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def _enumerate(n):
    if n == 0:
        return (LEAF,)
    out = []
    for p in range(n):
        rights = _enumerate(n - 1 - p)
        for l in _enumerate(p):
            out.extend(Tree("(" + l + r + ")") for r in rights)
    out.sort()
    return tuple(out)


def trees_up_to(n: int, max_order: int = DEFAULT_MAX_ORDER) -> list[Tree]:
    out = []
    for k in range(n + 1):
        out.extend(enumerate_trees(k, max_order))
    return out


def over_factorizations(t) -> list[tuple[Tree, Tree]]:
    """Pairs ``(u, v)`` with ``over(u, v) == t``, smallest ``u`` first.

    ``u`` runs over the subtrees hanging from the left spine of ``t``.
    """
    t = Tree(t)
    rights = []
    node = t
    spine = [node]
    while not node.is_leaf:
        l, r = _split(node)
        rights.append(r)
        node = l
        spine.append(node)
    pairs = []
    for k in range(len(spine) - 1, -1, -1):
        v = "."
        for j in range(k - 1, -1, -1):
            v = "(" + v + rights[j] + ")"
        pairs.append((spine[k], Tree(v)))
    return pairs


def under_factorizations(t) -> list[tuple[Tree, Tree]]:
    """Pairs ``(u, v)`` with ``under(u, v) == t``, smallest ``u`` first."""
    t = Tree(t)
    lefts = []
    node = t
    spine = [node]
    while not node.is_leaf:
        l, r = _split(node)
        lefts.append(l)
        node = r
        spine.append(node)
    pairs = []
    for k in range(len(spine)):
        u = "".join("(" + lefts[j] for j in range(k)) + "." + ")" * k
        pairs.append((Tree(u), spine[k]))
    return pairs


def left_spine_factors(t) -> list[Tree]:
    """``[s1, ..., sk]`` with ``t = V(s1) over V(s2) over ... over V(sk)``.

    These are the right children met along the left spine, deepest first.
    """
    out = []
    node = Tree(t)
    while not node.is_leaf:
        l, r = _split(node)
        out.append(r)
        node = l
    out.reverse()
    return out


def from_left_spine_factors(factors) -> Tree:
    t = "."
    for s in factors:
        t = "(" + t + s + ")"
    return Tree(t)


def right_oriented_leaves(t) -> int:
    """Number of leaves that are right children of their parent."""
    if len(t) == 1:
        raise ValueError("the leaf tree has no oriented leaves")
    # a right child is followed by the ")" closing its parent
    return t.count(".)")
