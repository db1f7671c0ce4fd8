"""Order-respecting-modulo-finite (ormf) mixed-sum realizations.

A realization of a sequence (alpha_i) lays copies of the alpha_i side by side
inside one ordinal so that each copy keeps its own order.  It is stored as a
``BlockPlan``: a finite list of segments in target order, each either a
single interval block or an omega-indexed family of blocks with a closed
form schedule.

``realize`` builds the plan by repeatedly peeling off the smallest additive
monomial of the mixed sum and placing its blocks on top of a realization of
what remains.
"""

import random
from dataclasses import dataclass

from .errors import DomainError
from .ordinal import (
    ZERO,
    Ordinal,
    classical_add,
    compare,
    hat,
    last_exponent,
    left_subtract,
    omega_power,
    predecessor,
    successor,
)
from .randgen import random_below
from .sequence import Approach, Const, OmegaSequence
from .sums import decompose

MAX_PEELS = 100_000


def times_nat(x, n):
    """Classical product x * n for a natural n."""
    if n == 0 or not x.terms:
        return ZERO
    (e, c), rest = x.terms[0], x.terms[1:]
    return Ordinal(((e, c * n),) + rest)


def _split(x, unit_exp):
    """Write x < w^(unit_exp+1) as w^unit_exp * k + r with r < w^unit_exp."""
    k = x.coefficient(unit_exp) if x and x.lead_exponent == unit_exp else 0
    return k, left_subtract(x, omega_power(unit_exp, k))


@dataclass(frozen=True)
class Block:
    source: int
    lo: Ordinal
    hi: Ordinal
    length: Ordinal

    @classmethod
    def make(cls, source, lo, hi):
        if compare(lo, hi) >= 0:
            raise DomainError(f"empty block [{lo}, {hi}) for source {source}")
        return cls(source, lo, hi, left_subtract(hi, lo))


@dataclass(frozen=True)
class Unbounded:
    """An infinite set of sources, described in words."""

    description: str


def _union(acc, more):
    if isinstance(acc, Unbounded):
        return acc
    if isinstance(more, Unbounded):
        return more
    return acc | more


class Single:
    kind = "single"
    threshold = None  # never infinitely many sources

    def __init__(self, block):
        self.block = block
        self.total_length = block.length
        self.min_lo = block.lo

    def blocks(self):
        yield ZERO, self.block

    def locate(self, delta):
        return self.block.source, classical_add(self.block.lo, delta)

    def source_blocks(self, source):
        return [(ZERO, self.block)] if source == self.block.source else []

    def position_of(self, source, rank):
        b = self.block
        if source == b.source and compare(b.lo, rank) <= 0 < compare(b.hi, rank):
            return left_subtract(rank, b.lo)
        return None

    def sources_reaching(self, rank):
        return {self.block.source} if compare(self.block.hi, rank) > 0 else set()

    def offenders_within(self, delta, rank):
        return set()

    def internal_witness(self):
        return None

    def tail_cut(self, delta):
        return None

    def describe(self):
        b = self.block
        return f"single source={b.source} interval=[{b.lo}, {b.hi})"


class _TailFamily:
    """Shared bookkeeping for families over prefix members plus a tail."""

    def __init__(self, members, tail_start, lo, tail):
        self.members = tuple(members)
        self.tail_start = tail_start
        self.lo = lo
        self.tail = tail
        self.threshold = tail.sup if isinstance(tail, Approach) else tail.value
        los = [b.lo for b in self.members] + [lo]
        self.min_lo = min(los)

    def tail_block(self, t):
        return Block.make(self.tail_start + t, self.lo, self.tail.term(t))

    def member_index(self, source):
        for k, b in enumerate(self.members):
            if b.source == source:
                return k
        return None

    def sources_reaching(self, rank):
        found = {b.source for b in self.members if compare(b.hi, rank) > 0}
        if compare(rank, self.threshold) < 0:
            return Unbounded(
                f"every tail source from index {self.tail_start} on whose "
                f"block reaches above rank {rank}"
            )
        return found

    def _tail_desc(self):
        if isinstance(self.tail, Const):
            return f"const {self.tail.value}"
        return f"approach {self.tail.base} ~ {self.tail.mu}"

    def _members_desc(self):
        return ", ".join(f"{b.source}:[{b.lo}, {b.hi})" for b in self.members)


class ConcatFamily(_TailFamily):
    """Blocks [lo_i, hi_i) of the members, then [lo, tail term t) for each tail slot t,
    one after the other."""

    kind = "concat"

    def __init__(self, members, tail_start, lo, tail):
        super().__init__(members, tail_start, lo, tail)
        head = ZERO
        for b in self.members:
            head = classical_add(head, b.length)
        self.head = head
        if isinstance(tail, Const):
            self.unit = left_subtract(tail.value, lo)
            if not self.unit:
                raise DomainError("tail blocks would be empty")
            total = omega_power(successor(self.unit.lead_exponent))
        else:
            span = left_subtract(tail.sup, lo)
            if span != omega_power(span.lead_exponent) or not span.lead_exponent.is_limit():
                raise DomainError("increasing concatenation needs a w^limit span")
            if compare(tail.term(0), lo) <= 0:
                raise DomainError("tail blocks would be empty")
            total = span
        self.total_length = classical_add(head, total)

    def _tail_start_pos(self, t):
        if isinstance(self.tail, Const):
            return classical_add(self.head, times_nat(self.unit, t))
        pos = self.head
        for u in range(t):
            pos = classical_add(pos, self.tail_block(u).length)
        return pos

    def blocks(self):
        pos = ZERO
        for b in self.members:
            yield pos, b
            pos = classical_add(pos, b.length)
        t = 0
        while True:
            b = self.tail_block(t)
            yield pos, b
            pos = classical_add(pos, b.length)
            t += 1

    def _find(self, delta):
        """(member index or None, tail slot or None, start of its block)."""
        pos = ZERO
        for k, b in enumerate(self.members):
            end = classical_add(pos, b.length)
            if compare(delta, end) < 0:
                return k, None, pos
            pos = end
        rest = left_subtract(delta, self.head)
        if isinstance(self.tail, Const):
            unit = self.unit
            e, c = unit.terms[0]
            k = rest.coefficient(e) if rest and rest.lead_exponent == e else 0
            t = k // c
            while t and compare(times_nat(unit, t), rest) > 0:
                t -= 1
            return None, t, classical_add(self.head, times_nat(unit, t))
        # lengths increase; stop at the first block long enough to pass delta
        limit = self.tail.count_at_most(classical_add(self.lo, rest)) + 1
        t = 0
        while True:
            end = classical_add(pos, self.tail_block(t).length)
            if compare(delta, end) < 0:
                return None, t, pos
            if t > limit:
                raise AssertionError("family walk overran its bound")
            pos = end
            t += 1

    def locate(self, delta):
        k, t, start = self._find(delta)
        b = self.members[k] if k is not None else self.tail_block(t)
        return b.source, classical_add(b.lo, left_subtract(delta, start))

    def _block_of(self, source):
        k = self.member_index(source)
        if k is not None:
            pos = ZERO
            for b in self.members[:k]:
                pos = classical_add(pos, b.length)
            return pos, self.members[k]
        t = source - self.tail_start
        if t < 0:
            return None
        return self._tail_start_pos(t), self.tail_block(t)

    def source_blocks(self, source):
        found = self._block_of(source)
        return [found] if found else []

    def position_of(self, source, rank):
        found = self._block_of(source)
        if not found:
            return None
        pos, b = found
        if compare(b.lo, rank) <= 0 < compare(b.hi, rank):
            return classical_add(pos, left_subtract(rank, b.lo))
        return None

    def offenders_within(self, delta, rank):
        k, t, _ = self._find(delta)
        before = list(self.members[:k] if k is not None else self.members)
        if t is not None:
            before += [self.tail_block(u) for u in range(t)]
        return {b.source for b in before if compare(b.hi, rank) > 0}

    def internal_witness(self):
        # each block is preceded by finitely many blocks of the family
        return None

    def tail_cut(self, delta):
        k, t, _ = self._find(delta)
        if t is None:
            return 0, None
        return t + 1, None

    def describe(self):
        return (
            f"concat members=[{self._members_desc()}] tail from source "
            f"{self.tail_start}: [{self.lo}, t-th term of {self._tail_desc()})"
        )


class ChainFamily(_TailFamily):
    """Omega many chains; chain m takes, from each source in order that is long
    enough, its m-th piece of length w^sigma.  Each chain has type w^(sigma+1)."""

    kind = "chains"

    def __init__(self, members, tail_start, lo, tail, sigma):
        super().__init__(members, tail_start, lo, tail)
        if not isinstance(tail, Approach):
            raise DomainError("chain families need an increasing tail")
        self.sigma = sigma
        self.unit = omega_power(sigma)
        self.chain_exp = successor(sigma)
        if left_subtract(tail.sup, lo) != omega_power(self.chain_exp):
            raise DomainError("chain family span must be w^(sigma+1)")
        for b in self.members:
            if b.lo != lo:
                raise DomainError("chain family members must start at the family floor")
        self.total_length = omega_power(successor(self.chain_exp))

    def _piece(self, block, m):
        """The m-th piece of a block as (lo, hi), or None if it is too short."""
        start = classical_add(self.lo, times_nat(self.unit, m))
        if compare(block.hi, start) <= 0:
            return None
        end = classical_add(start, self.unit)
        return start, end if compare(end, block.hi) < 0 else block.hi

    def _full_from(self, m):
        """First tail slot from which every tail block has a full m-th piece."""
        need = classical_add(self.lo, times_nat(self.unit, m + 1))
        return self.tail.count_below(need)

    def _chain_walk(self, m):
        """Yield (source, piece lo, piece hi, start within chain) for chain m,
        up to the first tail slot after which all pieces are full; returns
        that slot and the offset reached."""
        acc = ZERO
        out = []
        for b in self.members:
            p = self._piece(b, m)
            if p:
                out.append((b.source, p[0], p[1], acc))
                acc = classical_add(acc, left_subtract(p[1], p[0]))
        full = self._full_from(m)
        for t in range(full):
            p = self._piece(self.tail_block(t), m)
            if p:
                out.append((self.tail_start + t, p[0], p[1], acc))
                acc = classical_add(acc, left_subtract(p[1], p[0]))
        return out, full, acc

    def blocks(self):
        # chains are infinite: only the first 64 regular pieces of each are listed
        m = 0
        while True:
            base = omega_power(self.chain_exp, m)
            out, full, acc = self._chain_walk(m)
            for src, plo, phi, start in out:
                yield classical_add(base, start), Block.make(src, plo, phi)
            lo_m = classical_add(self.lo, times_nat(self.unit, m))
            hi_m = classical_add(lo_m, self.unit)
            k = 0
            while k < 64:
                pos = classical_add(base, classical_add(acc, times_nat(self.unit, k)))
                yield pos, Block.make(self.tail_start + full + k, lo_m, hi_m)
                k += 1
            m += 1

    def _chain_locate(self, m, r):
        out, full, acc = self._chain_walk(m)
        for src, plo, phi, start in out:
            end = classical_add(start, left_subtract(phi, plo))
            if compare(r, end) < 0:
                return src, classical_add(plo, left_subtract(r, start)), start
        rest = left_subtract(r, acc)
        k, x = _split(rest, self.sigma)
        lo_m = classical_add(self.lo, times_nat(self.unit, m))
        start = classical_add(acc, times_nat(self.unit, k))
        return self.tail_start + full + k, classical_add(lo_m, x), start

    def locate(self, delta):
        m, r = _split(delta, self.chain_exp)
        src, rank, _ = self._chain_locate(m, r)
        return src, rank

    def _length_of(self, source):
        k = self.member_index(source)
        if k is not None:
            return self.members[k]
        t = source - self.tail_start
        return self.tail_block(t) if t >= 0 else None

    def _piece_start(self, source, m):
        out, full, acc = self._chain_walk(m)
        for src, plo, phi, start in out:
            if src == source:
                return start
        t = source - self.tail_start - full
        if t < 0:
            return None
        return classical_add(acc, times_nat(self.unit, t))

    def source_blocks(self, source):
        b = self._length_of(source)
        if b is None:
            return []
        out = []
        m = 0
        while True:
            p = self._piece(b, m)
            if not p:
                return out
            start = self._piece_start(source, m)
            pos = classical_add(omega_power(self.chain_exp, m), start)
            out.append((pos, Block.make(source, p[0], p[1])))
            m += 1

    def position_of(self, source, rank):
        b = self._length_of(source)
        if b is None or not (compare(b.lo, rank) <= 0 < compare(b.hi, rank)):
            return None
        m, x = _split(left_subtract(rank, self.lo), self.sigma)
        start = self._piece_start(source, m)
        return classical_add(omega_power(self.chain_exp, m), classical_add(start, x))

    def offenders_within(self, delta, rank):
        # pieces of earlier chains end at or below the floor of chain m,
        # which is at most the rank of anything in chain m
        m, r = _split(delta, self.chain_exp)
        src, _, start = self._chain_locate(m, r)
        found = set()
        out, full, acc = self._chain_walk(m)
        for s, plo, phi, st in out:
            if compare(st, start) < 0 and compare(phi, rank) > 0:
                found.add(s)
        # regular pieces before src all end at the same rank
        hi_m = classical_add(self.lo, times_nat(self.unit, m + 1))
        first_regular = self.tail_start + full
        if src > first_regular and compare(hi_m, rank) > 0:
            found.update(range(first_regular, src))
        return found

    def internal_witness(self):
        return None

    def tail_cut(self, delta):
        m, r = _split(delta, self.chain_exp)
        src, _, _ = self._chain_locate(m, r)
        n = max(src - self.tail_start + 1, 0)
        if m == 0:
            return n, None
        level = classical_add(self.lo, times_nat(self.unit, m))
        return max(n, self.tail.count_below(level)), Const(level)

    def describe(self):
        return (
            f"chains piece=w^{self.sigma} members=[{self._members_desc()}] tail from "
            f"source {self.tail_start}: [{self.lo}, t-th term of {self._tail_desc()})"
        )


def _group_slot(k, n):
    # slots t with exactly k trailing one-bits... t + 1 = 2^k (2n + 1)
    return (1 << k) * (2 * n + 1) - 1


def _slot_group(t):
    v = t + 1
    k = 0
    while v % 2 == 0:
        v //= 2
        k += 1
    return k, (v - 1) // 2


class StackedFamily(_TailFamily):
    """Tail slots split into omega many infinite groups (by the 2-adic valuation
    of t + 1); each group is concatenated into one chain, and the chains are
    stacked.  This is a mixed sum but generally not an ormf one."""

    kind = "stacked"

    def __init__(self, tail_start, tail):
        super().__init__((), tail_start, ZERO, tail)
        if not isinstance(tail, Approach):
            raise DomainError("stacked families need an increasing tail")
        span = tail.sup
        if span != omega_power(span.lead_exponent) or not span.lead_exponent.is_limit():
            raise DomainError("stacked family needs a w^limit supremum")
        self.span = span
        self.total_length = omega_power(successor(span.lead_exponent))

    def _group_locate(self, k, r):
        pos = ZERO
        n = 0
        while True:
            b = self.tail_block(_group_slot(k, n))
            end = classical_add(pos, b.length)
            if compare(r, end) < 0:
                return b, pos
            pos = end
            n += 1
            if n > 10_000:
                raise DomainError("position too deep in a stacked group")

    def locate(self, delta):
        k, r = _split(delta, self.span.lead_exponent)
        b, pos = self._group_locate(k, r)
        return b.source, left_subtract(r, pos)

    def _start(self, t):
        k, n = _slot_group(t)
        pos = omega_power(self.span.lead_exponent, k)
        for j in range(n):
            pos = classical_add(pos, self.tail_block(_group_slot(k, j)).length)
        return pos

    def blocks(self):
        k = 0
        while True:
            for n in range(64):
                t = _group_slot(k, n)
                yield self._start(t), self.tail_block(t)
            k += 1

    def source_blocks(self, source):
        t = source - self.tail_start
        if t < 0:
            return []
        return [(self._start(t), self.tail_block(t))]

    def position_of(self, source, rank):
        t = source - self.tail_start
        if t < 0 or compare(rank, self.tail.term(t)) >= 0:
            return None
        return classical_add(self._start(t), rank)

    def offenders_within(self, delta, rank):
        k, r = _split(delta, self.span.lead_exponent)
        if k > 0 and compare(rank, self.threshold) < 0:
            return Unbounded(
                f"every tail slot of group 0 (even offsets from {self.tail_start}) "
                f"has a block below this position reaching above rank {rank}"
            )
        b, pos = self._group_locate(k, r)
        _, n = _slot_group(b.source - self.tail_start)
        return {
            self.tail_start + _group_slot(k, j)
            for j in range(n)
            if compare(self.tail.term(_group_slot(k, j)), rank) > 0
        }

    def internal_witness(self):
        delta = omega_power(self.span.lead_exponent)
        src, rank = self.locate(delta)
        return delta, src, rank, self.offenders_within(delta, rank)

    def tail_cut(self, delta):
        return None

    def describe(self):
        return (
            f"stacked groups of tail from source {self.tail_start}: "
            f"[0, t-th term of {self._tail_desc()})"
        )


@dataclass
class BlockPlan:
    seq: OmegaSequence
    segments: list
    claimed_total: Ordinal

    def starts(self):
        pos = ZERO
        out = []
        for seg in self.segments:
            out.append(pos)
            pos = classical_add(pos, seg.total_length)
        return out

    def segment_total(self):
        pos = ZERO
        for seg in self.segments:
            pos = classical_add(pos, seg.total_length)
        return pos

    def find_segment(self, eta):
        if compare(eta, self.claimed_total) >= 0:
            raise DomainError(f"position {eta} is not below the total {self.claimed_total}")
        pos = ZERO
        for k, seg in enumerate(self.segments):
            end = classical_add(pos, seg.total_length)
            if compare(eta, end) < 0:
                return k, pos, left_subtract(eta, pos)
            pos = end
        raise DomainError(f"position {eta} is past the last segment")

    def source_blocks(self, source):
        """All blocks of one source as (absolute start, block), in target order."""
        out = []
        for start, seg in zip(self.starts(), self.segments):
            for pos, b in seg.source_blocks(source):
                out.append((classical_add(start, pos), b))
        return out

    def position_of(self, source, rank):
        for start, seg in zip(self.starts(), self.segments):
            p = seg.position_of(source, rank)
            if p is not None:
                return classical_add(start, p)
        raise DomainError(f"rank {rank} of source {source} is not placed")


def plan_lines(plan):
    """Line-oriented dump of a plan."""
    lines = [f"total {plan.claimed_total}"]
    for k, (start, seg) in enumerate(zip(plan.starts(), plan.segments)):
        lines.append(
            f"segment {k} start={start} length={seg.total_length} {seg.describe()}"
        )
    return lines


# Construction


def _peel_special(base, value):
    """Split off the last Cantor term of value - base; returns (new top, block lo)."""
    x = left_subtract(value, base)
    lower = classical_add(base, Ordinal(x.terms[:-1]))
    return lower


def realize(s):
    """Build an ormf realization of s whose length is sum_s(s)."""
    L = len(s.prefix)
    vals = list(s.prefix)
    tail = s.tail
    top_down = []  # segments from the top of the plan downwards
    for _ in range(MAX_PEELS):
        cur = OmegaSequence(tuple(vals), tail)
        if cur.is_zero():
            break
        d = decompose(cur)
        zeta = d.zeta
        if d.clause == "S1":
            z_exp = last_exponent(zeta)
            base = hat(zeta)
            pieces = d.diamonds
        else:
            z_exp = successor(last_exponent(zeta)) if zeta else None
            base = zeta
            pieces = d.hearts
        best = None
        for i, x in pieces:
            if x:
                e = last_exponent(x)
                if best is None or compare(e, best[0]) < 0 or (
                    compare(e, best[0]) == 0 and i > best[1]
                ):
                    best = (e, i)
        if z_exp is not None and (best is None or compare(z_exp, best[0]) <= 0):
            tail = _peel_zeta(d, vals, tail, L, top_down)
            continue
        i = best[1]
        lower = _peel_special(base, vals[i])
        top_down.append(Single(Block.make(i, lower, vals[i])))
        vals[i] = lower
    else:
        raise DomainError("realization did not finish")
    segments = top_down[::-1]
    plan = BlockPlan(s, segments, ZERO)
    plan.claimed_total = plan.segment_total()
    return plan


def _peel_zeta(d, vals, tail, L, top_down):
    """Place the chain realizing the last monomial contributed by zeta."""
    zeta = d.zeta
    floor = hat(zeta)
    if d.clause == "S1":
        # increasing pieces below zeta: one concatenated chain of type w^xi0
        idx = [i for i, v in enumerate(vals) if compare(floor, v) < 0 < compare(zeta, v)]
        members = [Block.make(i, floor, vals[i]) for i in idx]
        top_down.append(ConcatFamily(members, L, floor, tail))
    elif isinstance(tail, Const):
        # infinitely many terms equal zeta: chain of copies of the top interval
        idx = [i for i, v in enumerate(vals) if compare(floor, v) < 0 <= compare(zeta, v)]
        members = [Block.make(i, floor, vals[i]) for i in idx]
        top_down.append(ConcatFamily(members, L, floor, tail))
    else:
        # increasing terms with successor last exponent: chains of chains,
        # terms equal to zeta go first as whole blocks
        idx = [i for i, v in enumerate(vals) if compare(floor, v) < 0 <= compare(zeta, v)]
        full = [i for i in idx if vals[i] == zeta]
        part = [i for i in idx if vals[i] != zeta]
        members = [Block.make(i, floor, vals[i]) for i in part]
        sigma = predecessor(last_exponent(zeta))
        top_down.append(ChainFamily(members, L, floor, tail, sigma))
        for i in reversed(full):
            top_down.append(Single(Block.make(i, floor, zeta)))
    for i in idx:
        vals[i] = floor
    return Const(floor)


def realize_finite(xs):
    return realize(OmegaSequence(tuple(xs), Const(ZERO)))


def stacked_plan(s):
    """A non-ormf mixed sum of an increasing tail approaching w^xi (xi limit):
    omega many interleaved chains of type w^xi stacked on top of each other.
    Only defined for an empty prefix."""
    if s.prefix or not isinstance(s.tail, Approach):
        raise DomainError("stacked plans take an empty prefix and an increasing tail")
    seg = StackedFamily(0, s.tail)
    return BlockPlan(s, [seg], seg.total_length)


# Queries


def locate(plan, eta):
    """(source, rank) of the element at position eta."""
    k, _, delta = plan.find_segment(eta)
    return plan.segments[k].locate(delta)


def offender_set(plan, eta):
    """Sources other than eta's owner with an earlier element of rank at least
    eta's rank; either a finite set or an Unbounded description."""
    k, _, delta = plan.find_segment(eta)
    seg = plan.segments[k]
    source, rank = seg.locate(delta)
    found = set()
    for j in range(k):
        found = _union(found, plan.segments[j].sources_reaching(rank))
    found = _union(found, seg.offenders_within(delta, rank))
    if not isinstance(found, Unbounded):
        found.discard(source)
    return found


def finite_set_F(plan, eta):
    found = offender_set(plan, eta)
    if isinstance(found, Unbounded):
        raise DomainError(f"offender set at {eta} is infinite: {found.description}")
    return frozenset(found)


@dataclass
class OrmfReport:
    verdict: str  # "pass", "fail" or "malformed"
    witness: object = None  # (eta, description) when not passing
    sampled: int = 0

    @property
    def ok(self):
        return self.verdict == "pass"


def _sample_tail_sources(plan, rng, count):
    L = len(plan.seq.prefix)
    picks = set(range(L, L + 4))
    for _ in range(count):
        picks.add(L + rng.randrange(48))
    return sorted(picks)


def partition_problem(plan, rng=None, tail_samples=4):
    """None if every checked source is cut into consecutive pieces covering
    [0, alpha_i) in target order, else a description of the defect."""
    rng = rng or random.Random(0)
    s = plan.seq
    sources = list(range(len(s.prefix))) + _sample_tail_sources(plan, rng, tail_samples)
    for i in sources:
        top = s.term_at(i)
        rank = ZERO
        prev_end = None
        for start, b in plan.source_blocks(i):
            if b.lo != rank:
                return f"source {i}: block starts at rank {b.lo}, expected {rank}"
            if prev_end is not None and compare(start, prev_end) < 0:
                return f"source {i}: blocks overlap or are out of order at {start}"
            prev_end = classical_add(start, b.length)
            rank = b.hi
        if rank != top:
            return f"source {i}: blocks cover [0, {rank}) instead of [0, {top})"
    return None


def check_ormf(plan, sample_budget=64, seed=0):
    rng = random.Random(seed)
    problem = partition_problem(plan, rng)
    if problem:
        return OrmfReport("malformed", (None, problem))
    if plan.segment_total() != plan.claimed_total:
        return OrmfReport("malformed", (None, "segment lengths do not add up to the total"))
    starts = plan.starts()
    # block level: an earlier family with unboundedly many sources above rank r
    # makes the first element of every later block of rank < threshold a witness
    for k, seg in enumerate(plan.segments):
        w = seg.internal_witness()
        if w is not None:
            delta, src, rank, found = w
            eta = classical_add(starts[k], delta)
            desc = found.description if isinstance(found, Unbounded) else str(found)
            return OrmfReport("fail", (eta, f"source {src} rank {rank}: {desc}"))
        for j in range(k):
            earlier = plan.segments[j]
            if earlier.threshold is None or compare(seg.min_lo, earlier.threshold) >= 0:
                continue
            delta, b = _first_block_below(seg, earlier.threshold)
            eta = classical_add(starts[k], delta)
            found = earlier.sources_reaching(b.lo)
            return OrmfReport(
                "fail", (eta, f"source {b.source} rank {b.lo}: {found.description}")
            )
    # pointwise samples
    total = plan.claimed_total
    for n in range(sample_budget if total else 0):
        eta = ZERO if n == 0 else random_below(total, rng)
        found = offender_set(plan, eta)
        if isinstance(found, Unbounded):
            return OrmfReport("fail", (eta, found.description), n + 1)
    return OrmfReport("pass", None, sample_budget if total else 0)


def _first_block_below(seg, threshold):
    for delta, b in seg.blocks():
        if compare(b.lo, threshold) < 0:
            return delta, b
    raise AssertionError("no block below the threshold")


def truncation(plan, eta, max_explicit=2_000):
    """The sequence of order types of the parts of each source below eta,
    or None when it has no finite description of the supported kind."""
    s = plan.seq
    L = len(s.prefix)
    k, _, delta = plan.find_segment(eta)

    def cut(i):
        got = ZERO
        for start, b in plan.source_blocks(i):
            if compare(start, eta) >= 0:
                break
            end = classical_add(start, b.length)
            if compare(eta, end) < 0:
                return classical_add(b.lo, left_subtract(eta, start))
            got = b.hi
        return got

    fallback = Const(ZERO)
    for seg in plan.segments[:k]:
        if isinstance(seg, _TailFamily):
            # every tail source's top block in this family ends at its tail term
            fallback = seg.tail
    seg = plan.segments[k]
    explicit, pattern = 0, None
    if isinstance(seg, _TailFamily):
        got = seg.tail_cut(delta)
        if got is None:
            return None
        explicit, pattern = got
    tail = pattern or fallback
    if explicit and isinstance(tail, Approach):
        return None
    if explicit > max_explicit:
        return None
    prefix = [cut(i) for i in range(L + explicit)]
    return OmegaSequence(tuple(prefix), tail)

