"""Property harness tying the mixed sum to its other characterisations.

Every suite takes a trial count and a seed; trial ``k`` uses the seed
``seed * 1_000_003 + k`` so a failure can be replayed on its own.
"""

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError
from .ordinal import (
    OMEGA,
    ZERO,
    classical_add,
    compare,
    fundamental_sequence,
    hat,
    hessenberg_oracle_nat,
    natural_product,
    natural_sum,
    nat,
    omega_power,
    sup_plus,
)
from .randgen import (
    BIG,
    random_below,
    random_ordinal,
    random_pointwise_below,
    random_sequence,
)
from .realize import check_ormf, finite_set_F, locate, realize, truncation
from .sequence import Approach, Const, Move, OmegaSequence, apply_move, normalize
from .sums import invariants_of, sum_h, sum_s, sum_s1, sum_s2


def trial_seed(seed, k):
    return seed * 1_000_003 + k


@dataclass
class Failure:
    seed: object
    input: str
    detail: str


@dataclass
class PropertyReport:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    skipped: int = 0
    samples: int = 0
    skip_ceiling: float = 0.05

    @property
    def skip_rate(self):
        return self.skipped / self.samples if self.samples else 0.0

    @property
    def ok(self):
        return not self.failures and self.skip_rate <= self.skip_ceiling

    def fail(self, seed, inp, detail):
        self.failures.append(Failure(seed, str(inp), str(detail)))

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.trials} trials, {len(self.failures)} failures"
        if self.samples:
            line += f", {self.skipped}/{self.samples} samples skipped"
        return line

    def as_dict(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "trials": self.trials,
            "failures": [vars(f) for f in self.failures],
            "skipped": self.skipped,
            "samples": self.samples,
        }


# Finite-support rank oracle


def _finite_key(s):
    if not isinstance(s.tail, Const) or s.tail.value:
        raise DomainError("rank oracle needs a tail of zeros")
    vals = []
    for x in s.prefix:
        if not x.is_finite():
            raise DomainError("rank oracle needs natural entries")
        vals.append(int(x))
    return tuple(sorted((v for v in vals if v), reverse=True))


@lru_cache(maxsize=None)
def _rank(key):
    s = OmegaSequence(tuple(nat(v) for v in key), Const(ZERO))
    values = set()
    n = len(key)
    for pivot in range(n):
        others = [j for j in range(n) if j != pivot]
        for r in range(len(others) + 1):
            for keep in itertools.combinations(others, r):
                for cap in range(key[pivot]):
                    t = apply_move(s, Move(pivot, frozenset(keep), nat(cap)))
                    values.add(_rank(_finite_key(normalize(t))))
    return sup_plus(values)


def rank_oracle_finite(s, bound=12):
    """Rank of s in the move order, by brute force over all moves.

    Only for sequences that are zero from some point on with natural entries
    of at most ``bound``.
    """
    key = _finite_key(s)
    if key and key[0] > bound:
        raise DomainError(f"entries above {bound} are outside the oracle's range")
    return _rank(key)


def rank_oracle_exhaustive(max_support=4, max_entry=6):
    """Compare the oracle with sum_s on every natural sequence with at most
    max_support nonzero entries, each at most max_entry."""
    rep = PropertyReport("rank-oracle-exhaustive")
    for vals in itertools.product(range(max_entry + 1), repeat=max_support):
        s = OmegaSequence(tuple(nat(v) for v in vals), Const(ZERO))
        rep.trials += 1
        v = rank_oracle_finite(s, max_entry)
        if v != sum_s(s) or v != natural_sum(*s.prefix):
            rep.fail(vals, s, f"oracle {v} vs sum {sum_s(s)}")
    return rep


def hessenberg_suite(limit=20):
    rep = PropertyReport("hessenberg-oracle")
    for a in range(limit + 1):
        for b in range(limit + 1):
            rep.trials += 1
            got = hessenberg_oracle_nat(a, b)
            if got != a + b or natural_sum(nat(a), nat(b)) != nat(got):
                rep.fail((a, b), (a, b), f"oracle gave {got}")
    return rep


# Moves


def sample_cap(s, pivot, rng):
    """A cap below the pivot term drawn from values that exercise every branch
    of the descent argument."""
    top = s.term_at(pivot)
    zeta, _ = invariants_of(s)
    options = [ZERO, nat(rng.randint(0, 5)), random_below(top, rng)]
    if zeta.is_limit():
        options.append(fundamental_sequence(zeta, rng.randint(1, 4)))
    if zeta:
        options += [zeta, hat(zeta)]
    if top:
        options.append(hat(top))
    options = [x for x in options if compare(x, top) < 0]
    return rng.choice(options)


def sample_move(s, rng, keep_max=3):
    L = len(s.prefix)
    positions = [i for i, x in enumerate(s.prefix) if x]
    if isinstance(s.tail, Approach) or s.tail.value:
        positions += [L + rng.randrange(6)]
    if not positions:
        return None
    pivot = rng.choice(positions)
    keep = set()
    for _ in range(rng.randint(0, keep_max)):
        j = rng.randrange(L + 6)
        if j != pivot:
            keep.add(j)
    return Move(pivot, frozenset(keep), sample_cap(s, pivot, rng))


def check_descent(s, m):
    """True when the move strictly lowers the mixed sum."""
    return compare(sum_s(apply_move(s, m)), sum_s(s)) < 0


def approach_move(s, eta, plan=None):
    """A move whose result still has mixed sum at least eta."""
    total = sum_s(s)
    if compare(eta, total) >= 0:
        raise DomainError(f"{eta} is not below the mixed sum {total}")
    plan = plan or realize(s)
    source, rank = locate(plan, eta)
    keep = finite_set_F(plan, eta)
    return Move(source, keep, rank)


# Suites


def constant_law(trials, seed=0):
    rep = PropertyReport("constant-law")
    for k in range(trials):
        rng = random.Random(trial_seed(seed, k))
        a = random_ordinal(rng, BIG)
        rep.trials += 1
        got = sum_s(OmegaSequence((), Const(a)))
        if got != natural_product(a, OMEGA):
            rep.fail(trial_seed(seed, k), a, f"got {got}")
    return rep


def product_bound(trials, seed=0):
    """(e (x) w) (+) (d (x) n) <= (e + d) (x) w, strictly when d > 0."""
    rep = PropertyReport("product-bound")
    for k in range(trials):
        rng = random.Random(trial_seed(seed, k))
        e, d = random_ordinal(rng), random_ordinal(rng)
        n = rng.randint(0, 20)
        rep.trials += 1
        left = natural_sum(natural_product(e, OMEGA), natural_product(d, nat(n)))
        right = natural_product(classical_add(e, d), OMEGA)
        c = compare(left, right)
        if c > 0 or (d and c == 0):
            rep.fail(trial_seed(seed, k), (e, d, n), f"{left} vs {right}")
    # the bound fails with the roles of the factors exchanged
    for n in range(1, 21 if trials else 1):
        rep.trials += 1
        left = natural_sum(natural_product(nat(1), nat(n)), natural_product(OMEGA, OMEGA))
        right = natural_product(classical_add(nat(1), OMEGA), OMEGA)
        if left != classical_add(omega_power(2), nat(n)) or compare(left, right) <= 0:
            rep.fail(n, (1, "w", n), f"{left} vs {right}")
    return rep


def _insert(s, value):
    return OmegaSequence(s.prefix + (value,), s.tail)


def monotonicity(trials, seed=0):
    rep = PropertyReport("monotonicity")
    ops = (("s", sum_s), ("s2", sum_s2), ("h", sum_h))
    for k in range(trials):
        ts = trial_seed(seed, k)
        rng = random.Random(ts)
        s = random_sequence(rng)
        low = random_pointwise_below(s, rng)
        rep.trials += 1
        for name, f in ops:
            if compare(f(low), f(s)) > 0:
                rep.fail(ts, f"{low} <= {s}", f"weak monotonicity of {name}")
        # strict monotonicity on values above zeta, at one position
        zeta, _ = invariants_of(s)
        if s.prefix and rng.random() < 0.5:
            i = rng.randrange(len(s.prefix))
            base_seq = s
        else:
            base_seq = _insert(s, ZERO)
            i = len(s.prefix)
        small = classical_add(zeta, random_ordinal(rng))
        big = classical_add(small, random_below(BIG, rng) or nat(1))
        if compare(big, small) <= 0:
            big = classical_add(small, nat(1))
        a = base_seq.with_term(i, small)
        b = base_seq.with_term(i, big)
        for name, f in ops[:2]:
            if compare(f(a), f(b)) >= 0:
                rep.fail(ts, f"{a} < {b}", f"strict monotonicity of {name}")
    return rep


def nonstrict_fixtures():
    """Equalities showing which monotonicity laws the mixed sum lacks."""
    rep = PropertyReport("non-strictness-fixtures")
    w2 = omega_power(2)
    seqs = [
        OmegaSequence((ZERO,), Approach(ZERO, OMEGA)),
        OmegaSequence((OMEGA,), Approach(ZERO, OMEGA)),
        OmegaSequence((), Const(OMEGA)),
    ]
    for s in seqs:
        rep.trials += 1
        if sum_s(s) != w2:
            rep.fail(None, s, f"expected w^2, got {sum_s(s)}")
    # the sum of termwise natural sums is not the natural sum of the sums
    rep.trials += 1
    a = OmegaSequence((omega_power(3),), Const(OMEGA))
    b = OmegaSequence((nat(1),), Const(OMEGA))
    both = OmegaSequence((natural_sum(omega_power(3), nat(1)),), Const(omega_power(1, 2)))
    split = natural_sum(sum_s(a), sum_s(b))
    joint = classical_add(classical_add(omega_power(3), omega_power(2, 2)), nat(1))
    if split != classical_add(omega_power(3), omega_power(2, 2)) or sum_s(both) != joint:
        rep.fail(None, f"{a} and {b}", f"{split} vs {sum_s(both)}")
    return rep


def minimality_suite(trials, seed=0):
    rep = PropertyReport("minimality")
    for k in range(trials):
        ts = trial_seed(seed, k)
        rng = random.Random(ts)
        s = random_sequence(rng)
        rep.trials += 1
        a, b = sum_s(s), sum_s2(s)
        if compare(a, b) > 0:
            rep.fail(ts, s, f"sum_s {a} exceeds sum_s2 {b}")
        zeta, _ = invariants_of(s)
        if zeta and compare(sum_s1(s), b) > 0:
            rep.fail(ts, s, "sum_s1 exceeds sum_s2")
        # a finite-support natural sequence against the rank oracle
        f = OmegaSequence(
            tuple(nat(rng.randint(0, 5)) for _ in range(rng.randint(0, 3))), Const(ZERO)
        )
        if rank_oracle_finite(f) != sum_s(f):
            rep.fail(ts, f, "rank oracle disagrees")
        # a short chain of moves keeps lowering the sum
        cur = s
        for _ in range(3):
            m = sample_move(cur, rng)
            if m is None:
                break
            nxt = apply_move(cur, m)
            if compare(sum_s(nxt), sum_s(cur)) >= 0:
                rep.fail(ts, f"{cur} by {m}", "move did not lower the sum")
            cur = nxt
    if trials:
        rep.trials += 1
        s = OmegaSequence((), Approach(ZERO, omega_power(OMEGA)))
        if sum_s(s) != omega_power(OMEGA) or sum_s2(s) != omega_power(classical_add(OMEGA, nat(1))):
            rep.fail(None, s, "powers of w fixture")
    return rep


def impossibility_fixtures():
    rep = PropertyReport("impossibility")
    two = omega_power(1, 2)
    for ones in range(8):
        s = OmegaSequence((nat(1),) * ones, Const(nat(2)))
        rep.trials += 1
        if sum_s(s) != two:
            rep.fail(ones, s, f"expected w*2, got {sum_s(s)}")
    cofinal = [
        (OmegaSequence((), Approach(ZERO, OMEGA)), OmegaSequence((), Approach(nat(5), OMEGA))),
        (
            OmegaSequence((), Approach(ZERO, OMEGA)),
            OmegaSequence((nat(1), nat(1), nat(2)), Approach(nat(2), OMEGA)),
        ),
        (
            OmegaSequence((), Approach(ZERO, omega_power(OMEGA))),
            OmegaSequence((), Approach(OMEGA, omega_power(OMEGA))),
        ),
        (
            OmegaSequence((OMEGA,), Approach(ZERO, omega_power(2))),
            OmegaSequence((), Approach(OMEGA, omega_power(2))),
        ),
    ]
    for a, b in cofinal:
        rep.trials += 1
        if sum_s(a) != sum_s(b):
            rep.fail(None, f"{a} vs {b}", f"{sum_s(a)} != {sum_s(b)}")
    return rep


def descent_suite(trials, seed=0):
    rep = PropertyReport("descent")
    for k in range(trials):
        ts = trial_seed(seed, k)
        rng = random.Random(ts)
        m = None
        while m is None:
            s = random_sequence(rng)
            m = sample_move(s, rng)
        rep.trials += 1
        if not check_descent(s, m):
            rep.fail(ts, f"{s} by {m}", "sum did not drop")
    return rep


def approach_suite(trials, seed=0):
    rep = PropertyReport("approach")
    for k in range(trials):
        ts = trial_seed(seed, k)
        rng = random.Random(ts)
        s = random_sequence(rng)
        total = sum_s(s)
        if not total:
            s = OmegaSequence(s.prefix, Const(nat(1)))
            total = sum_s(s)
        eta = random_below(total, rng)
        rep.trials += 1
        try:
            m = approach_move(s, eta)
            got = sum_s(apply_move(s, m))
        except DomainError as e:
            rep.fail(ts, f"{s} at {eta}", e)
            continue
        if compare(eta, got) > 0 or compare(got, total) >= 0:
            rep.fail(ts, f"{s} at {eta}", f"successor sum {got}")
    return rep


def realization_suite(trials, seed=0, positions=100, ormf_samples=16):
    rep = PropertyReport("realization", skip_ceiling=0.05)
    for k in range(trials):
        ts = trial_seed(seed, k)
        rng = random.Random(ts)
        s = random_sequence(rng)
        rep.trials += 1
        plan = realize(s)
        total = sum_s(s)
        if plan.claimed_total != total:
            rep.fail(ts, s, f"plan total {plan.claimed_total} vs {total}")
            continue
        report = check_ormf(plan, ormf_samples, ts)
        if not report.ok:
            rep.fail(ts, s, f"ormf check: {report.verdict} {report.witness}")
            continue
        if not total:
            continue
        etas = {random_below(total, rng) for _ in range(positions)}
        seen = {}
        for eta in sorted(etas):
            src, rank = locate(plan, eta)
            if compare(rank, s.term_at(src)) >= 0:
                rep.fail(ts, s, f"rank {rank} too large at {eta}")
            if (src, rank) in seen:
                rep.fail(ts, s, f"{eta} and {seen[(src, rank)]} share a place")
            seen[(src, rank)] = eta
            if plan.position_of(src, rank) != eta:
                rep.fail(ts, s, f"position of {src}:{rank} is not {eta}")
        by_source = {}
        for (src, rank), eta in sorted(seen.items(), key=lambda kv: kv[1]):
            prev = by_source.get(src)
            if prev is not None and compare(prev, rank) >= 0:
                rep.fail(ts, s, f"source {src} ranks not increasing")
            by_source[src] = rank
        for eta in sorted(etas)[:: max(1, len(etas) // 10)]:
            rep.samples += 1
            d = truncation(plan, eta)
            if d is None:
                rep.skipped += 1
                continue
            got = sum_s(d)
            if compare(eta, got) > 0 or compare(got, total) >= 0:
                rep.fail(ts, f"{s} at {eta}", f"truncation {d} has sum {got}")
    return rep


def sum_h_suite(trials, seed=0, search=2_000):
    rep = PropertyReport("sum-h-bounds")
    for k in range(trials):
        ts = trial_seed(seed, k)
        rng = random.Random(ts)
        s = random_sequence(rng)
        h = sum_h(s)
        rep.trials += 1
        if compare(h, sum_s(s)) > 0:
            rep.fail(ts, s, f"sum_h {h} above sum_s {sum_s(s)}")
        partial = ZERO
        targets = sorted({random_below(h, rng) for _ in range(4)} if h else set())
        n = 0
        while targets and n < search:
            partial = natural_sum(partial, s.term_at(n))
            n += 1
            if compare(partial, h) > 0:
                rep.fail(ts, s, f"partial sum {partial} of {n} terms exceeds {h}")
                break
            targets = [m for m in targets if compare(partial, m) <= 0]
        if targets:
            rep.fail(ts, s, f"no partial sum within {search} terms exceeds {targets[0]}")
        for n in (0, 1, len(s.prefix) + 3, len(s.prefix) + 25):
            p = natural_sum(*s.terms(n))
            if compare(p, h) > 0:
                rep.fail(ts, s, f"partial sum of {n} terms exceeds {h}")
    return rep


SUITES = {
    "constant": constant_law,
    "product-bound": product_bound,
    "monotonicity": monotonicity,
    "minimality": minimality_suite,
    "descent": descent_suite,
    "approach": approach_suite,
    "realization": realization_suite,
    "sum-h": sum_h_suite,
}

FIXED_SUITES = {
    "impossibility": impossibility_fixtures,
    "non-strictness": nonstrict_fixtures,
    "rank-oracle": rank_oracle_exhaustive,
    "hessenberg": hessenberg_suite,
}


def run_suite(name, trials, seed=0):
    if name in SUITES:
        return [SUITES[name](trials, seed)]
    if name in FIXED_SUITES:
        return [FIXED_SUITES[name]()] if trials else [PropertyReport(name)]
    if name == "all":
        out = []
        for n in list(SUITES) + list(FIXED_SUITES):
            out += run_suite(n, trials, seed)
        return out
    raise DomainError(f"unknown suite {name!r}")
