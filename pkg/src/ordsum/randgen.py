"""Seeded random generators for ordinals, sequences and trees."""

from .ordinal import (
    ONE,
    ZERO,
    Ordinal,
    classical_add,
    compare,
    hat,
    last_monomial,
    natural_sum,
    omega_power,
    to_ordinal,
)
from .sequence import Approach, Const, OmegaSequence

# w^(w^w): default bound for random ordinals
BIG = omega_power(omega_power(omega_power(ONE)))


def random_below_power(e, rng, spread=3):
    """Random ordinal below w^e."""
    if not e:
        return ZERO
    parts = []
    for _ in range(rng.randint(0, spread)):
        parts.append(omega_power(random_below(e, rng, spread), rng.randint(1, spread)))
    return natural_sum(*parts)


def random_below(x, rng, spread=3):
    """Random ordinal strictly below x (x > 0)."""
    x = to_ordinal(x)
    if not x:
        raise ValueError("nothing lies below 0")
    if rng.random() < 0.15:
        return ZERO
    k = rng.randrange(len(x.terms))
    e, c = x.terms[k]
    c2 = rng.randrange(c)
    head = x.terms[:k] + (((e, c2),) if c2 else ())
    return classical_add(Ordinal(head), random_below_power(e, rng, spread))


def random_ordinal(rng, bound=BIG, spread=3):
    return random_below(bound, rng, spread)


def random_positive(rng, bound=BIG, spread=3):
    x = random_below(bound, rng, spread)
    return x if x else ONE


def random_limit(rng, bound=BIG, spread=3):
    """Random limit ordinal below bound (bound must exceed w)."""
    while True:
        x = random_below(bound, rng, spread)
        if x.is_limit():
            return x
        if x:
            y = classical_add(Ordinal(x.terms[:-1]), omega_power(ONE))
            if compare(y, bound) < 0:
                return y


def random_tail(rng, bound=BIG, spread=3, const_zero=0.1):
    if rng.random() < const_zero:
        return Const(ZERO)
    if rng.random() < 0.5:
        return Const(random_below(bound, rng, spread))
    base = random_below(bound, rng, spread) if rng.random() < 0.5 else ZERO
    return Approach(base, random_limit(rng, bound, spread))


def _near(tail, rng, bound, spread):
    """A value close to the tail's limit behaviour: equal to it, just below it,
    a tail term, or a little above it."""
    top = tail.sup if isinstance(tail, Approach) else tail.value
    r = rng.random()
    if not top or r < 0.25:
        return top
    if r < 0.5:
        return classical_add(hat(top), random_below(last_monomial(top), rng, spread))
    if r < 0.75 and isinstance(tail, Approach):
        return tail.term(rng.randrange(4))
    return classical_add(top, random_below(bound, rng, spread))


def random_sequence(rng, bound=BIG, max_prefix=4, spread=3, near=0.4):
    """Random descriptor; about a `near` fraction of the prefix entries sit
    close to the tail's supremum, where the interesting cases live."""
    tail = random_tail(rng, bound, spread)
    prefix = []
    for _ in range(rng.randint(0, max_prefix)):
        if rng.random() < near:
            prefix.append(_near(tail, rng, bound, spread))
        else:
            prefix.append(random_below(bound, rng, spread))
    return OmegaSequence(tuple(prefix), tail)


def random_pointwise_below(s, rng, spread=3):
    """Random sequence t with t_i <= s_i at every index."""
    def lower(x):
        if not x or rng.random() < 0.4:
            return x
        return random_below(x, rng, spread)

    tail = s.tail
    prefix = list(s.prefix)
    if isinstance(tail, Const):
        extra = rng.randint(0, 3)
        prefix += [tail.value] * extra
        r = rng.random()
        if r < 0.3 and tail.value:
            tail = Const(random_below(tail.value, rng, spread))
        elif r < 0.5 and tail.value.is_limit():
            # an approach tail whose supremum does not exceed the constant
            mu = random_limit(rng, classical_add(tail.value, ONE), spread)
            tail = Approach(ZERO, mu)
    else:
        r = rng.random()
        if r < 0.4:
            first = tail.term(0)
            tail = Const(random_below(first, rng, spread) if first else ZERO)
    prefix = [lower(x) for x in prefix]
    return OmegaSequence(tuple(prefix), tail)


def random_tree(rng, depth=3, width=3):
    from .sums import LEAF, Node

    if depth == 0 or rng.random() < 0.3:
        return LEAF
    kids = tuple(random_tree(rng, depth - 1, width) for _ in range(rng.randint(0, width)))
    rep = random_tree(rng, depth - 1, width) if rng.random() < 0.5 else None
    return Node(kids, rep)
