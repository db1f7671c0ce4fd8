import random

import pytest
from hypothesis import given

from conftest import ordinals, seeds, sequences
from ordsum.errors import DomainError
from ordsum.notation import parse_ordinal as P
from ordsum.notation import parse_sequence as S
from ordsum.notation import parse_tree as T
from ordsum.ordinal import OMEGA, ZERO, classical_add, compare, nat, natural_product, natural_sum
from ordsum.randgen import random_pointwise_below
from ordsum.sequence import Const, OmegaSequence
from ordsum.sums import (
    children_size_sum,
    decompose,
    finite_natural_sum,
    invariants_of,
    sum_h,
    sum_s,
    sum_s1,
    sum_s2,
    sum_s_explain,
    tree_size,
)

FIXTURES = [
    ("[1, w, w^w ; const 2]", "w^w + w*3"),
    ("[w, w*5, w^w ; const w*2]", "w^w + w^2*2 + w*3"),
    ("[w, w*5, w^w ; approach 0 ~ w]", "w^w + w^2 + w*4"),
    ("[w^w, w^(w^w) ; approach 0 ~ w^w]", "w^(w^w) + w^w*2"),
    (
        "[w^w + w, w^w*2, w^w*2 + w, w^(w^w) + 2 ; approach w^w ~ w^w]",
        "w^(w^w) + w^(w + 1) + w^w*3 + w + 2",
    ),
]


@pytest.mark.parametrize("seq,value", FIXTURES)
def test_worked_values(seq, value):
    assert sum_s(S(seq)) == P(value)


def test_decompose_examples():
    d = decompose(S("[1, w, w^w ; const 2]"))
    assert [x for _, x in d.e_special] == [OMEGA, P("w^w")]
    assert [x for _, x in d.hearts] == [OMEGA, P("w^w")]
    assert d.clause == "S2"
    d = decompose(S(FIXTURES[4][0]))
    assert d.zeta == P("w^w*2")
    assert 0 not in [i for i, _ in d.e_special]
    assert [x for _, x in d.diamonds] == [P("w^w"), P("w^w + w"), P("w^(w^w) + 2")]
    assert d.clause == "S1"
    d = decompose(S("[ ; const 0]"))
    assert d.e_special == () and d.diamonds is None and d.clause == "S2"


def test_clause_formulas():
    s = S("[ ; approach 0 ~ w^w]")
    assert sum_s(s) == P("w^w") == sum_s1(s)
    assert sum_s2(s) == P("w^(w + 1)")
    assert sum_s2(S(FIXTURES[0][0])) == P("w^w + w*3")
    assert sum_s1(S("[ ; const w]")) == OMEGA
    assert sum_s2(S("[ ; const 0]")) == ZERO
    with pytest.raises(DomainError):
        sum_s1(S("[ ; const 0]"))


def test_sum_h_examples():
    assert sum_h(S("[ ; const 1]")) == OMEGA == sum_h(S("[ ; const 2]"))
    assert sum_h(S("[ ; approach 0 ~ w]")) == OMEGA
    assert sum_h(S("[ ; approach w^w ~ w^w]")) == P("w^(w + 1)")
    assert sum_h(S("[ ; const 0]")) == ZERO
    assert sum_h(S("[w^2, 3 ; const w]")) == P("w^2*2")
    assert sum_h(S("[w^3, w ; approach 0 ~ w^2]")) == P("w^3 + w^2")


def test_finite_natural_sum():
    assert finite_natural_sum([]) == ZERO
    assert finite_natural_sum([P("w + 1"), OMEGA, nat(1)]) == P("w*2 + 2")
    assert finite_natural_sum([nat(2), nat(3)]) == nat(5)


def test_tree_sizes():
    assert tree_size(T("leaf")) == nat(1)
    assert tree_size(T("node(rep(leaf))"), "formula-root") == OMEGA
    assert tree_size(T("node(rep(node(leaf, leaf)))"), "formula-root") == P("w*2")
    assert children_size_sum(S("[ ; approach 0 ~ w]")) == P("w^2")
    assert tree_size(T("node(leaf, leaf)")) == nat(3)
    assert tree_size(T("node(rep(leaf))")) == P("w + 1")
    for t in ("node(rep(leaf))", "node(rep(node(leaf, leaf)))"):
        assert tree_size(T(t), "formula-root", "h") == OMEGA
    assert children_size_sum(S("[ ; approach 0 ~ w]"), "h") == OMEGA
    with pytest.raises(DomainError):
        tree_size(T("leaf"), "bogus")


def test_explain_mentions_clause():
    lines = sum_s_explain(S(FIXTURES[0][0]))
    assert lines[-1] == "result = w^w + w*3"
    assert any("clause S2" in x for x in lines)


@given(ordinals)
def test_constant_law(a):
    assert sum_s(OmegaSequence((), Const(a))) == natural_product(a, OMEGA)


@given(sequences)
def test_sum_s_at_most_sum_s2_and_h_at_most_s(s):
    assert compare(sum_s(s), sum_s2(s)) <= 0
    assert compare(sum_h(s), sum_s(s)) <= 0


@given(sequences, seeds)
def test_weak_monotonicity(s, k):
    t = random_pointwise_below(s, random.Random(k))
    for f in (sum_s, sum_s2, sum_h):
        assert compare(f(t), f(s)) <= 0


@given(sequences, ordinals)
def test_strict_on_values_above_zeta(s, d):
    zeta, _ = invariants_of(s)
    base = OmegaSequence(s.prefix + (zeta,), s.tail)
    i = len(s.prefix)
    lo = base.with_term(i, classical_add(zeta, d))
    hi = base.with_term(i, classical_add(classical_add(zeta, d), nat(1)))
    assert compare(sum_s(lo), sum_s(hi)) < 0
    assert compare(sum_s2(lo), sum_s2(hi)) < 0


@given(sequences)
def test_decomposition_invariants(s):
    d = decompose(s)
    assert compare(d.zeta, d.epsilon) <= 0
    e_idx = {i for i, _ in d.e_special}
    z_idx = {i for i, _ in d.z_special}
    if d.zeta == d.epsilon:
        assert z_idx <= e_idx
    else:
        assert z_idx == e_idx
    for (_, x), (_, h) in zip(d.e_special, d.hearts):
        assert classical_add(d.zeta, h) == x


@given(sequences, ordinals)
def test_finite_prefix_adds_naturally(s, a):
    # a term below epsilon never changes the sum; the natural sum of a finite
    # sequence is its sum
    _, eps = invariants_of(s)
    if compare(a, eps) < 0:
        assert sum_s(OmegaSequence(s.prefix + (a,), s.tail)) == sum_s(s)
    xs = list(s.prefix)
    assert sum_s(OmegaSequence(tuple(xs), Const(ZERO))) == natural_sum(*xs)
