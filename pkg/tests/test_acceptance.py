"""One test per acceptance criterion, each recording a PASS/FAIL line."""

import random
import time
from contextlib import contextmanager
from itertools import islice

from conftest import ACCEPTANCE_LINES
from test_cli import CASES, GOLDEN, notation_sample, render

from ordsum.notation import (
    format_ordinal,
    format_sequence,
    format_tree,
    parse_ordinal,
    parse_sequence,
    parse_tree,
)
from ordsum.ordinal import (
    OMEGA,
    Ordinal,
    classical_add,
    compare,
    hessenberg_oracle_nat,
    nat,
    natural_product,
    natural_sum,
    omega_power,
)
from ordsum.randgen import random_ordinal, random_sequence, random_tree
from ordsum.realize import Unbounded, check_ormf, offender_set, realize, stacked_plan
from ordsum.sequence import Const, OmegaSequence
from ordsum.sums import children_size_sum, sum_h, sum_s, sum_s2, tree_size
from ordsum.verify import (
    approach_suite,
    descent_suite,
    monotonicity,
    rank_oracle_exhaustive,
    realization_suite,
    nonstrict_fixtures,
    sum_h_suite,
)

P, S, T = parse_ordinal, parse_sequence, parse_tree


@contextmanager
def criterion(n, title):
    start = time.perf_counter()
    notes = []
    try:
        yield notes
    except BaseException:
        ACCEPTANCE_LINES.append(f"criterion {n} FAIL: {title}")
        print(ACCEPTANCE_LINES[-1])
        raise
    took = time.perf_counter() - start
    extra = "; ".join(notes + [f"{took:.2f}s"])
    ACCEPTANCE_LINES.append(f"criterion {n} PASS: {title} ({extra})")
    print(ACCEPTANCE_LINES[-1])


def assert_report(rep, notes):
    assert rep.ok, rep.failures[:5]
    notes.append(rep.summary().split(": ", 1)[1])


def test_criterion_1_worked_values():
    fixtures = [
        ("[1, w, w^w ; const 2]", "w^w + w*3"),
        ("[w, w*5, w^w ; const w*2]", "w^w + w^2*2 + w*3"),
        ("[w, w*5, w^w ; approach 0 ~ w]", "w^w + w^2 + w*4"),
        ("[w^w, w^(w^w) ; approach 0 ~ w^w]", "w^(w^w) + w^w*2"),
        (
            "[w^w + w, w^w*2, w^w*2 + w, w^(w^w) + 2 ; approach w^w ~ w^w]",
            "w^(w^w) + w^(w + 1) + w^w*3 + w + 2",
        ),
    ]
    with criterion(1, "mixed sum of the five worked fixtures") as notes:
        for seq, value in fixtures:
            assert sum_s(S(seq)) == P(value), seq
        notes.append("5/5 exact")


def test_criterion_2_powers_of_omega():
    with criterion(2, "powers of w: mixed sum w^w, second clause w^(w+1), stacked plan rejected") as notes:
        s = S("[ ; approach 0 ~ w^w]")
        assert sum_s(s) == P("w^w")
        assert sum_s2(s) == P("w^(w + 1)")
        good = realize(s)
        assert good.claimed_total == P("w^w") and check_ormf(good).ok
        bad = stacked_plan(s)
        assert bad.claimed_total == P("w^(w + 1)")
        report = check_ormf(bad)
        assert report.verdict == "fail"
        eta, detail = report.witness
        assert isinstance(offender_set(bad, eta), Unbounded)
        notes.append(f"witness at {format_ordinal(eta)}")


def _times_omega(a):
    # independent closed form: w^e * c  (x)  w  =  w^(e (+) 1) * c
    return Ordinal(tuple((natural_sum(e, nat(1)), c) for e, c in a.terms))


def test_criterion_3_constant_law():
    with criterion(3, "constant law on 200 random ordinals") as notes:
        for k in range(200):
            a = random_ordinal(random.Random(k))
            got = sum_s(OmegaSequence((), Const(a)))
            assert got == natural_product(a, OMEGA) == _times_omega(a), a
        notes.append("200/200")


def test_criterion_4_product_bound():
    with criterion(4, "(e (x) w) (+) (d (x) n) <= (e + d) (x) w on 10^4 triples") as notes:
        for k in range(10_000):
            rng = random.Random(k)
            e, d = random_ordinal(rng), random_ordinal(rng)
            n = rng.randint(0, 20)
            left = natural_sum(natural_product(e, OMEGA), natural_product(d, nat(n)))
            right = natural_product(classical_add(e, d), OMEGA)
            c = compare(left, right)
            assert c <= 0 and (c < 0 or not d), (e, d, n)
        for n in range(1, 21):
            left = natural_sum(natural_product(nat(1), nat(n)), natural_product(OMEGA, OMEGA))
            right = natural_product(classical_add(nat(1), OMEGA), OMEGA)
            assert left == classical_add(omega_power(2), nat(n))
            assert right == omega_power(2) and compare(left, right) > 0
        notes.append("10000/10000; counterexample w^2 + n > w^2 for n = 1..20")


def test_criterion_5_monotonicity():
    with criterion(5, "weak and strict monotonicity on 10^4 pairs, non-strict fixtures") as notes:
        assert_report(monotonicity(10_000, 5), notes)
        w2 = P("w^2")
        assert sum_s(S("[0 ; approach 0 ~ w]")) == w2
        assert sum_s(S("[w ; approach 0 ~ w]")) == w2
        assert sum_s(S("[ ; const w]")) == w2
        assert nonstrict_fixtures().ok


def test_criterion_6_minimality():
    with criterion(6, "mixed sum <= second clause, rank oracle, finite natural sum") as notes:
        for k in range(10_000):
            s = random_sequence(random.Random(k))
            assert compare(sum_s(s), sum_s2(s)) <= 0, s
        notes.append("10000 sequences")
        assert_report(rank_oracle_exhaustive(4, 6), notes)
        for a in range(21):
            for b in range(21):
                assert hessenberg_oracle_nat(a, b) == a + b
        notes.append("oracle a (+) b = a + b for a, b <= 20")


def test_criterion_7_rank_and_game():
    with criterion(7, "moves descend and predecessors reach every smaller value") as notes:
        assert_report(descent_suite(1_000, 7), notes)
        assert_report(approach_suite(1_000, 7), notes)


def test_criterion_8_realization():
    with criterion(8, "realizations of 500 sequences, 100 located positions each") as notes:
        assert_report(realization_suite(500, 8, positions=100), notes)
        plan = realize(S("[w^7 + 1, w^4 + w, w^3 + w^2 ; approach w^3 ~ w]"))
        assert plan.claimed_total == P("w^7 + w^4*2 + w^2*2 + w + 1")
        layout = [
            (seg.kind, format_ordinal(start), format_ordinal(seg.total_length))
            for start, seg in zip(plan.starts(), plan.segments)
        ]
        assert layout == [
            ("single", "0", "w^7"),
            ("single", "w^7", "w^4"),
            ("concat", "w^7 + w^4", "w^4"),
            ("single", "w^7 + w^4*2", "w^2"),
            ("chains", "w^7 + w^4*2 + w^2", "w^2"),
            ("single", "w^7 + w^4*2 + w^2*2", "w"),
            ("single", "w^7 + w^4*2 + w^2*2 + w", "1"),
        ]
        sources = [[b.source for _, b in islice(seg.blocks(), 3)] for seg in plan.segments]
        assert sources[:2] == [[0], [1]] and sources[3] == [2] and sources[5:] == [[1], [0]]
        assert sources[2][:2] == [2, 3]
        notes.append("worked layout reproduced")


def test_criterion_9_supremum_sum():
    with criterion(9, "supremum of partial sums and formula sizes") as notes:
        assert sum_h(S("[ ; const 1]")) == OMEGA == sum_h(S("[ ; const 2]"))
        assert_report(sum_h_suite(1_000, 9), notes)
        for k in range(1_000):
            s = random_sequence(random.Random(90_000 + k))
            assert compare(sum_h(s), sum_s(s)) <= 0
        atoms, pairs = T("node(rep(leaf))"), T("node(rep(node(leaf, leaf)))")
        growing = S("[ ; approach 0 ~ w]")  # child i is a conjunction of i + 1 atoms
        assert tree_size(atoms, "formula-root") == OMEGA
        assert tree_size(pairs, "formula-root") == P("w*2")
        assert children_size_sum(growing) == P("w^2")
        assert tree_size(atoms, "formula-root", "h") == OMEGA
        assert tree_size(pairs, "formula-root", "h") == OMEGA
        assert children_size_sum(growing, "h") == OMEGA
        notes.append("sizes w, w*2, w^2 against w, w, w")


def test_criterion_10_notation():
    with criterion(10, "round trips on 10^4 values per type, golden files byte-stable") as notes:
        for k in range(10_000):
            rng = random.Random(k)
            a, s, t = random_ordinal(rng), random_sequence(rng), random_tree(rng)
            assert parse_ordinal(format_ordinal(a)) == a
            assert parse_sequence(format_sequence(s)) == s
            assert parse_tree(format_tree(t)) == t
        notes.append("30000 round trips")
        assert (GOLDEN / "notation.txt").read_bytes() == notation_sample().encode()
        for name, argv in CASES.items():
            assert (GOLDEN / "cli" / f"{name}.txt").read_bytes() == render(argv).encode(), name
        notes.append(f"{len(CASES) + 1} golden files")
