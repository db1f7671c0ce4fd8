"""Finitely described omega-sequences of ordinals and descent moves."""

import random
from dataclasses import dataclass, field

from .errors import DomainError
from .ordinal import (
    ZERO,
    Ordinal,
    classical_add,
    compare,
    first_index_above,
    first_index_at_least,
    fundamental_sequence,
    left_subtract,
    to_ordinal,
)

# Limit on how many tail terms a single operation may write out explicitly.
MAX_MATERIALIZE = 100_000


@dataclass(frozen=True)
class Const:
    """Every tail term equals ``value``."""

    value: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "value", to_ordinal(self.value))

    def term(self, t):
        return self.value


@dataclass(frozen=True)
class Approach:
    """Tail term ``t`` is ``base + mu[t + 1]``; strictly increasing to ``base + mu``."""

    base: Ordinal
    mu: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "base", to_ordinal(self.base))
        object.__setattr__(self, "mu", to_ordinal(self.mu))
        if not self.mu.is_limit():
            raise DomainError(f"approach target {self.mu} is not a limit ordinal")

    @property
    def sup(self):
        return classical_add(self.base, self.mu)

    def term(self, t):
        return classical_add(self.base, fundamental_sequence(self.mu, t + 1))

    def count_below(self, y):
        """Number of tail terms that are < y."""
        if compare(y, self.sup) > 0:
            raise DomainError("infinitely many tail terms lie below the bound")
        if compare(y, self.base) <= 0:
            return 0
        rest = left_subtract(y, self.base)
        if rest == self.mu:
            raise DomainError("infinitely many tail terms lie below the bound")
        return first_index_at_least(self.mu, rest) - 1

    def count_at_most(self, y):
        """Number of tail terms that are <= y (finite when y < sup)."""
        if compare(y, self.sup) >= 0:
            raise DomainError("infinitely many tail terms lie below the bound")
        if compare(y, self.base) < 0:
            return 0
        return first_index_above(self.mu, left_subtract(y, self.base)) - 1


@dataclass(frozen=True)
class OmegaSequence:
    prefix: tuple
    tail: object = field(default_factory=lambda: Const(ZERO))

    def __post_init__(self):
        object.__setattr__(
            self, "prefix", tuple(to_ordinal(x) for x in self.prefix)
        )
        if not isinstance(self.tail, (Const, Approach)):
            raise TypeError("tail must be Const or Approach")

    def __str__(self):
        from .notation import format_sequence

        return format_sequence(self)

    def term_at(self, i):
        if i < 0:
            raise IndexError(i)
        if i < len(self.prefix):
            return self.prefix[i]
        return self.tail.term(i - len(self.prefix))

    def terms(self, n):
        return [self.term_at(i) for i in range(n)]

    def with_term(self, i, value):
        """Copy with position i replaced; i must fall in the prefix or a Const tail."""
        s = self.materialize(i + 1)
        prefix = list(s.prefix)
        prefix[i] = to_ordinal(value)
        return OmegaSequence(tuple(prefix), s.tail)

    def materialize(self, n):
        """Equal sequence whose prefix has length at least n."""
        L = len(self.prefix)
        if n <= L:
            return self
        if isinstance(self.tail, Approach):
            raise DomainError("cannot shift an approach tail into the prefix")
        if n - L > MAX_MATERIALIZE:
            raise DomainError("too many tail terms to write out")
        return OmegaSequence(self.prefix + (self.tail.value,) * (n - L), self.tail)

    def tail_sup(self):
        return self.tail.sup if isinstance(self.tail, Approach) else self.tail.value

    def is_zero(self):
        return isinstance(self.tail, Const) and not self.tail.value and not any(
            self.prefix
        )


def sequence(prefix=(), tail=None):
    if tail is None:
        tail = Const(ZERO)
    elif not isinstance(tail, (Const, Approach)):
        tail = Const(tail)
    return OmegaSequence(tuple(prefix), tail)


def normalize(s):
    """Drop zeros, sort the prefix decreasingly, absorb copies of a Const tail value."""
    keep = [x for x in s.prefix if x]
    if isinstance(s.tail, Const):
        keep = [x for x in keep if x != s.tail.value]
    keep.sort(reverse=True)
    return OmegaSequence(tuple(keep), s.tail)


@dataclass(frozen=True)
class Move:
    """Lower the pivot to ``cap``; positions in ``keep`` stay, the rest are capped."""

    pivot: int
    keep: frozenset
    cap: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "keep", frozenset(self.keep))
        object.__setattr__(self, "cap", to_ordinal(self.cap))


def apply_move(s, move, max_materialize=MAX_MATERIALIZE):
    """The pointwise largest sequence reachable from s by the move."""
    beta = move.cap
    if move.pivot in move.keep:
        raise DomainError("the pivot cannot also be kept")
    if compare(beta, s.term_at(move.pivot)) >= 0:
        raise DomainError("the cap must lie below the pivot term")
    L = len(s.prefix)
    touched = max(move.keep | {move.pivot}) + 1
    tail = s.tail
    if isinstance(tail, Const):
        if compare(beta, tail.value) >= 0:
            n = L
        else:
            n = max(L, touched)
            tail = Const(beta)
    else:
        if compare(beta, tail.sup) >= 0:
            n = L
        else:
            n = max(L + tail.count_at_most(beta), touched)
            tail = Const(beta)
    if n - L > max_materialize:
        raise DomainError(f"move writes out {n - L} tail terms")
    prefix = []
    for i in range(n):
        v = s.term_at(i)
        if i == move.pivot:
            v = beta
        elif i not in move.keep and compare(v, beta) > 0:
            v = beta
        prefix.append(v)
    return OmegaSequence(tuple(prefix), tail)


def nonzero_positions(s, extra_tail=3):
    """Prefix positions holding nonzero terms, plus a few tail positions if nonzero."""
    out = [i for i, x in enumerate(s.prefix) if x]
    L = len(s.prefix)
    if isinstance(s.tail, Approach) or s.tail.value:
        out.extend(range(L, L + extra_tail))
    return out


def random_move(s, rng, keep_max=2):
    from .randgen import random_below

    positions = nonzero_positions(s)
    if not positions:
        return None
    pivot = rng.choice(positions)
    cap = random_below(s.term_at(pivot), rng)
    span = max(positions) + 3
    keep = set()
    for _ in range(rng.randint(0, keep_max)):
        j = rng.randrange(span)
        if j != pivot:
            keep.add(j)
    return Move(pivot, frozenset(keep), cap)


def random_descent(s, seed=0, max_steps=10_000):
    """Apply random moves until the sequence is identically zero.

    Returns the sequences visited after s; empty when s is already zero.
    """
    rng = random.Random(seed)
    chain = []
    while not s.is_zero():
        if len(chain) >= max_steps:
            raise DomainError(f"descent did not finish within {max_steps} steps")
        s = apply_move(s, random_move(s, rng))
        chain.append(s)
    return chain

