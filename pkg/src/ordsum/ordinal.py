"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents (themselves ordinals) and positive integer
coefficients.  The empty tuple is zero.  Instances are immutable and the
representation is canonical, so structural equality is ordinal equality.
"""

from functools import lru_cache, total_ordering

from .errors import DomainError


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        # trusted constructor; use from_terms for validation
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def from_terms(cls, pairs):
        pairs = [(to_ordinal(e), int(c)) for e, c in pairs]
        for i, (e, c) in enumerate(pairs):
            if c < 1:
                raise DomainError(f"coefficient must be positive, got {c}")
            if i and not e < pairs[i - 1][0]:
                raise DomainError("exponents must be strictly decreasing")
        return cls(pairs)

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.terms))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, int):
            other = nat(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self is other or self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int):
            other = nat(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __add__(self, other):
        return classical_add(self, to_ordinal(other))

    def __radd__(self, other):
        return classical_add(to_ordinal(other), self)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Ordinal({self})"

    def __str__(self):
        from .notation import format_ordinal

        return format_ordinal(self)

    def __int__(self):
        if not self.is_finite():
            raise DomainError("ordinal is infinite")
        return self.terms[0][1] if self.terms else 0

    def __reduce__(self):
        return (Ordinal, (self.terms,))

    def is_zero(self):
        return not self.terms

    def is_finite(self):
        return not self.terms or not self.terms[0][0].terms

    def is_successor(self):
        return bool(self.terms) and not self.terms[-1][0].terms

    def is_limit(self):
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    @property
    def lead_exponent(self):
        if not self.terms:
            raise DomainError("zero has no leading exponent")
        return self.terms[0][0]

    @property
    def lead_coefficient(self):
        return self.terms[0][1] if self.terms else 0

    def coefficient(self, exponent):
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0


def compare(a, b):
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


_SMALL = {}


def nat(n):
    n = int(n)
    if n < 0:
        raise DomainError(f"negative integer {n} is not an ordinal")
    o = _SMALL.get(n)
    if o is None:
        o = Ordinal(((ZERO, n),)) if n else Ordinal()
        if n < 1024:
            _SMALL[n] = o
    return o


def to_ordinal(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return nat(x)
    raise TypeError(f"cannot convert {x!r} to an ordinal")


ZERO = Ordinal()
_SMALL[0] = ZERO
ONE = nat(1)


def omega_power(exponent, coefficient=1):
    """The ordinal w^exponent * coefficient."""
    if coefficient == 0:
        return ZERO
    if coefficient < 0:
        raise DomainError("negative coefficient")
    return Ordinal(((to_ordinal(exponent), int(coefficient)),))


OMEGA = omega_power(ONE)


def classical_add(a, b):
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead, lc = b.terms[0]
    out = []
    for e, c in a.terms:
        k = compare(e, lead)
        if k > 0:
            out.append((e, c))
        else:
            if k == 0:
                lc += c
            break
    out.append((lead, lc))
    out.extend(b.terms[1:])
    return Ordinal(out)


def left_subtract(a, c):
    """The unique x with c + x == a; requires c <= a."""
    if compare(c, a) > 0:
        raise DomainError(f"cannot subtract {c} from the smaller ordinal {a}")
    at, ct = a.terms, c.terms
    for k, (ca_term, cc_term) in enumerate(zip(at, ct)):
        if ca_term == cc_term:
            continue
        e, coef = ca_term
        if e == cc_term[0]:
            return Ordinal(((e, coef - cc_term[1]),) + at[k + 1:])
        return Ordinal(at[k:])
    return Ordinal(at[len(ct):])


def _sorted_terms(coeffs):
    return Ordinal(sorted(coeffs.items(), key=lambda t: t[0], reverse=True))


def natural_sum(*xs):
    """Hessenberg natural sum of any number of ordinals."""
    xs = [to_ordinal(x) for x in xs]
    nonzero = [x for x in xs if x.terms]
    if len(nonzero) <= 1:
        return nonzero[0] if nonzero else ZERO
    coeffs = {}
    for x in nonzero:
        for e, c in x.terms:
            coeffs[e] = coeffs.get(e, 0) + c
    return _sorted_terms(coeffs)


def natural_product(a, b):
    a, b = to_ordinal(a), to_ordinal(b)
    if not a.terms or not b.terms:
        return ZERO
    coeffs = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = natural_sum(ea, eb)
            coeffs[e] = coeffs.get(e, 0) + ca * cb
    return _sorted_terms(coeffs)


def natural_scale(a, n):
    """a natural-summed with itself n times."""
    if n == 0 or not a.terms:
        return ZERO
    return Ordinal((e, c * n) for e, c in a.terms)


def additive_terms(a):
    """Monomials w^e of a, with coefficients unfolded, in decreasing order."""
    out = []
    for e, c in a.terms:
        m = omega_power(e)
        out.extend([m] * c)
    return out


def additive_exponents(a):
    out = []
    for e, c in a.terms:
        out.extend([e] * c)
    return out


def hat(a):
    """a with its last additive monomial removed."""
    if not a.terms:
        raise DomainError("hat is undefined on 0")
    e, c = a.terms[-1]
    if c > 1:
        return Ordinal(a.terms[:-1] + ((e, c - 1),))
    return Ordinal(a.terms[:-1])


def last_exponent(a):
    if not a.terms:
        raise DomainError("0 has no last exponent")
    return a.terms[-1][0]


def last_monomial(a):
    return omega_power(last_exponent(a))


def classify(a):
    if not a.terms:
        return "zero"
    return "limit" if a.terms[-1][0].terms else "successor"


def successor(a):
    return classical_add(a, ONE)


def predecessor(a):
    if not a.is_successor():
        raise DomainError(f"{a} is not a successor")
    return hat(a)


def sup_plus(xs):
    """Least ordinal strictly above every element of xs (0 if empty)."""
    best = None
    for x in xs:
        if best is None or compare(x, best) > 0:
            best = x
    return ZERO if best is None else successor(best)


def fundamental_sequence(lam, n):
    """The n-th term (n >= 1) of the canonical sequence converging to lam."""
    if not lam.is_limit():
        raise DomainError(f"{lam} is not a limit ordinal")
    if n < 1:
        raise DomainError("fundamental sequence index starts at 1")
    head = hat(lam)
    gamma = last_exponent(lam)
    if gamma.is_successor():
        piece = omega_power(predecessor(gamma), n)
    else:
        piece = omega_power(fundamental_sequence(gamma, n))
    return classical_add(head, piece)


def first_index_at_least(lam, y):
    """Least n >= 1 with lam[n] >= y, for a limit lam and y < lam."""
    if compare(y, lam) >= 0:
        raise DomainError(f"{y} is not below {lam}")
    head = hat(lam)
    if compare(y, head) <= 0:
        return 1
    rest = left_subtract(y, head)
    gamma = last_exponent(lam)
    if gamma.is_successor():
        sigma = predecessor(gamma)
        k = rest.coefficient(sigma) if rest.lead_exponent == sigma else 0
        if rest != omega_power(sigma, k):
            k += 1
        return max(k, 1)
    lead = rest.lead_exponent
    if rest == omega_power(lead):
        return first_index_at_least(gamma, lead)
    return first_index_at_least(gamma, successor(lead))


def first_index_above(lam, y):
    """Least n >= 1 with lam[n] > y."""
    return first_index_at_least(lam, successor(y))


def hessenberg_oracle_nat(a, b):
    """Natural sum of two naturals via the recursive sup+ characterisation."""
    a, b = int(a), int(b)
    if a < 0 or b < 0:
        raise DomainError("negative argument")
    return _hess(a, b)


@lru_cache(maxsize=None)
def _hess(a, b):
    vals = [_hess(x, b) for x in range(a)] + [_hess(a, y) for y in range(b)]
    return max(vals) + 1 if vals else 0
