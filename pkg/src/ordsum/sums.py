"""Infinite natural sums of omega-sequences.

``sum_s`` is the mixed sum: it lets the natural sum act on the finitely many
large terms while the infinitely many small ones are absorbed the classical
way.  ``sum_s1``/``sum_s2`` are the two clause formulas it chooses between,
``sum_h`` is the supremum of finite partial natural sums.
"""

from dataclasses import dataclass

from .errors import DomainError
from .ordinal import (
    ONE,
    OMEGA,
    Ordinal,
    compare,
    hat,
    last_exponent,
    left_subtract,
    natural_product,
    natural_sum,
    omega_power,
    successor,
)
from .sequence import Const, OmegaSequence


def invariants_of(s):
    """(zeta, epsilon): the least ordinal exceeded only finitely often, and
    the least ordinal reached only finitely often."""
    if isinstance(s.tail, Const):
        return s.tail.value, successor(s.tail.value)
    lam = s.tail.sup
    return lam, lam


@dataclass(frozen=True)
class SumDecomposition:
    """The data the mixed sum is computed from.

    ``z_special``/``e_special``/``hearts``/``diamonds`` are tuples of
    ``(index, ordinal)`` pairs; ``diamonds`` is None when zeta is 0.
    """

    zeta: Ordinal
    epsilon: Ordinal
    z_special: tuple
    e_special: tuple
    hearts: tuple
    diamonds: object
    clause: str


def decompose(s):
    zeta, eps = invariants_of(s)
    z_special = tuple((i, x) for i, x in enumerate(s.prefix) if compare(x, zeta) > 0)
    e_special = tuple((i, x) for i, x in enumerate(s.prefix) if compare(x, eps) >= 0)
    hearts = tuple((i, left_subtract(x, zeta)) for i, x in e_special)
    diamonds = None
    if zeta:
        zh = hat(zeta)
        diamonds = tuple((i, left_subtract(x, zh)) for i, x in e_special)
    s1 = bool(zeta) and zeta == eps and last_exponent(zeta).is_limit()
    return SumDecomposition(
        zeta, eps, z_special, e_special, hearts, diamonds, "S1" if s1 else "S2"
    )


def _clause_s1(d):
    if not d.zeta:
        raise DomainError("the first clause needs a nonzero zeta")
    return natural_sum(
        natural_product(hat(d.zeta), OMEGA),
        omega_power(last_exponent(d.zeta)),
        *(v for _, v in d.diamonds),
    )


def _clause_s2(d):
    return natural_sum(natural_product(d.zeta, OMEGA), *(v for _, v in d.hearts))


def sum_s(s):
    d = decompose(s)
    return _clause_s1(d) if d.clause == "S1" else _clause_s2(d)


def sum_s1(s):
    return _clause_s1(decompose(s))


def sum_s2(s):
    return _clause_s2(decompose(s))


def finite_natural_sum(xs):
    return natural_sum(*xs)


def _terms_above(x, gamma, inclusive=False):
    keep = []
    for e, c in x.terms:
        k = compare(e, gamma)
        if k > 0 or (inclusive and k == 0):
            keep.append((e, c))
    return Ordinal(keep)


def sum_h(s):
    """Supremum of the natural sums of the finite initial segments of s."""
    head = natural_sum(*s.prefix)
    tail = s.tail
    if isinstance(tail, Const):
        if not tail.value:
            return head
        gamma = tail.value.lead_exponent
        return natural_sum(_terms_above(head, gamma), omega_power(successor(gamma)))
    lam = tail.sup
    rho = lam.lead_exponent
    if lam == omega_power(rho):
        return natural_sum(_terms_above(head, rho, inclusive=True), lam)
    return natural_sum(_terms_above(head, rho), omega_power(successor(rho)))


def sum_s_explain(s):
    """Human readable derivation of sum_s(s) as a list of lines."""
    d = decompose(s)
    lines = [f"zeta = {d.zeta}", f"epsilon = {d.epsilon}"]
    lines.append("z-special: " + (", ".join(str(i) for i, _ in d.z_special) or "none"))
    lines.append("e-special: " + (", ".join(str(i) for i, _ in d.e_special) or "none"))
    for k, (i, x) in enumerate(d.e_special):
        line = f"  index {i}: term {x}, heart {d.hearts[k][1]}"
        if d.diamonds is not None:
            line += f", diamond {d.diamonds[k][1]}"
        lines.append(line)
    if d.clause == "S1":
        lines.append(
            f"clause S1: hat(zeta) (x) w (+) w^{last_exponent(d.zeta)} (+) diamonds"
        )
    else:
        lines.append("clause S2: zeta (x) w (+) hearts")
    lines.append(f"result = {sum_s(s)}")
    return lines


# Trees whose size is computed with a chosen infinite sum.


@dataclass(frozen=True)
class Leaf:
    pass


@dataclass(frozen=True)
class Node:
    children: tuple = ()
    repeated: object = None  # a tree repeated omega times after the children

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


LEAF = Leaf()


def _infinite_sum(op):
    try:
        return {"s": sum_s, "s1": sum_s1, "s2": sum_s2, "h": sum_h}[op]
    except KeyError:
        raise DomainError(f"unknown sum operator {op!r}") from None


def tree_size(tree, mode="tree", op="s"):
    """Size of a tree.

    In ``tree`` mode every node adds one for itself.  In ``formula-root`` mode
    nodes act as connectives and add nothing, so a node's size is just the
    sum of its children's sizes (leaves still count one).
    """
    if mode not in ("tree", "formula-root"):
        raise DomainError(f"unknown size mode {mode!r}")
    total = _infinite_sum(op)

    def size(t):
        if isinstance(t, Leaf):
            return ONE
        kids = [size(c) for c in t.children]
        if t.repeated is None:
            inner = natural_sum(*kids)
        else:
            inner = total(OmegaSequence(tuple(kids), Const(size(t.repeated))))
        return natural_sum(ONE, inner) if mode == "tree" else inner

    return size(tree)


def children_size_sum(sizes, op="s"):
    """Size of a connective whose children have the given size sequence."""
    return _infinite_sum(op)(sizes)

