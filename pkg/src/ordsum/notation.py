"""ASCII notation for ordinals, sequence descriptors and trees.

Grammar (whitespace between tokens is ignored)::

    ordinal  := term ("+" term)*
    term     := "w" ["^" factor] ["*" nat] | nat
    factor   := nat | "w" | "(" ordinal ")"
    sequence := "[" [ordinal ("," ordinal)*] ";" tail "]"
    tail     := "const" ordinal | "approach" ordinal "~" ordinal
    tree     := "leaf" | "node(" [tree ("," tree)*] ["," "rep(" tree ")"] ")"
    expr     := product (("+" | "(+)") product)*
    product  := atom ("(x)" atom)*
    atom     := term | "(" expr ")"

``+`` is the classical sum, ``(+)`` the natural sum, ``(x)`` the natural
product.  In ``expr``, ``(x)`` binds tighter than the two sums, which share
one level and associate to the left.
"""

import re

from .errors import DomainError, ParseError
from .ordinal import (
    ONE,
    ZERO,
    classical_add,
    natural_product,
    natural_sum,
    nat,
    omega_power,
)
from .sequence import Approach, Const, OmegaSequence
from .sums import LEAF, Leaf, Node

_TOKEN = re.compile(
    r"\s*(?:(?P<nsum>\(\s*\+\s*\))|(?P<nprod>\(\s*x\s*\))|(?P<num>\d+)"
    r"|(?P<word>[A-Za-z_]+)|(?P<sym>[\^*+(),;\[\]~]))"
)


def tokenize(text):
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "nsum":
            value = "(+)"
        elif kind == "nprod":
            value = "(x)"
        out.append((kind, value, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        got = tok[1] or "end of input"
        raise ParseError(f"{message}, found {got!r}", self.text, tok[2])

    def accept(self, value):
        tok = self.peek()
        if tok[0] != "num" and tok[1] == value:
            self.i += 1
            return tok
        return None

    def expect(self, value):
        tok = self.accept(value)
        if tok is None:
            self.fail(f"expected {value!r}")
        return tok

    def nat(self):
        tok = self.peek()
        if tok[0] != "num":
            self.fail("expected a natural number")
        self.i += 1
        return int(tok[1])

    def finish(self):
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")

    # ordinals

    def term(self):
        tok = self.peek()
        if tok[0] == "num":
            return nat(self.nat())
        if tok[1] != "w":
            self.fail("expected 'w' or a natural number")
        self.i += 1
        exponent = ONE
        if self.accept("^"):
            exponent = self.factor()
        coefficient = 1
        if self.accept("*"):
            coefficient = self.nat()
        return omega_power(exponent, coefficient)

    def factor(self):
        tok = self.peek()
        if tok[0] == "num":
            return nat(self.nat())
        if tok[1] == "w":
            self.i += 1
            if self.peek()[1] == "^":
                self.fail("nested exponents need parentheses")
            return omega_power(ONE)
        if self.accept("("):
            x = self.ordinal()
            self.expect(")")
            return x
        self.fail("expected an exponent")

    def ordinal(self):
        x = self.term()
        while self.accept("+"):
            x = classical_add(x, self.term())
        return x

    # sequences

    def sequence(self):
        self.expect("[")
        prefix = []
        if self.peek()[1] != ";":
            prefix.append(self.ordinal())
            while self.accept(","):
                prefix.append(self.ordinal())
        self.expect(";")
        tok = self.peek()
        if self.accept("const"):
            tail = Const(self.ordinal())
        elif self.accept("approach"):
            base = self.ordinal()
            self.expect("~")
            mu_tok = self.peek()
            mu = self.ordinal()
            if not mu.is_limit():
                raise DomainError(
                    f"mu must be limit (got {format_ordinal(mu)} at position {mu_tok[2]})"
                )
            tail = Approach(base, mu)
        else:
            self.fail("expected 'const' or 'approach'", tok)
        self.expect("]")
        return OmegaSequence(tuple(prefix), tail)

    # trees

    def tree(self):
        if self.accept("leaf"):
            return LEAF
        self.expect("node")
        self.expect("(")
        children = []
        repeated = None
        if self.peek()[1] != ")":
            while True:
                if self.accept("rep"):
                    self.expect("(")
                    repeated = self.tree()
                    self.expect(")")
                    break
                children.append(self.tree())
                if not self.accept(","):
                    break
        self.expect(")")
        return Node(tuple(children), repeated)

    # expressions

    def expr(self):
        x = self.product()
        while True:
            if self.accept("+"):
                x = classical_add(x, self.product())
            elif self.accept("(+)"):
                x = natural_sum(x, self.product())
            else:
                return x

    def product(self):
        x = self.atom()
        while self.accept("(x)"):
            x = natural_product(x, self.atom())
        return x

    def atom(self):
        if self.accept("("):
            x = self.expr()
            self.expect(")")
            return x
        return self.term()


def _parse(text, rule):
    p = _Parser(text)
    value = getattr(p, rule)()
    p.finish()
    return value


def parse_ordinal(text):
    return _parse(text, "ordinal")


def parse_sequence(text):
    return _parse(text, "sequence")


def parse_tree(text):
    return _parse(text, "tree")


def parse_expression(text):
    return _parse(text, "expr")


def _format_exponent(e):
    if e.is_finite():
        return str(int(e))
    if e == omega_power(ONE):
        return "w"
    return "(" + format_ordinal(e) + ")"


def format_ordinal(a):
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == ZERO:
            parts.append(str(c))
            continue
        s = "w" if e == ONE else "w^" + _format_exponent(e)
        if c > 1:
            s += f"*{c}"
        parts.append(s)
    return " + ".join(parts)


print_ordinal = format_ordinal


def format_tail(tail):
    if isinstance(tail, Const):
        return f"const {format_ordinal(tail.value)}"
    return f"approach {format_ordinal(tail.base)} ~ {format_ordinal(tail.mu)}"


def format_sequence(s):
    items = ", ".join(format_ordinal(x) for x in s.prefix)
    return f"[{items} ; {format_tail(s.tail)}]"


def format_tree(t):
    if isinstance(t, Leaf):
        return "leaf"
    items = [format_tree(c) for c in t.children]
    if t.repeated is not None:
        items.append(f"rep({format_tree(t.repeated)})")
    return f"node({', '.join(items)})"
