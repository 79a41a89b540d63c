"""Exact base arithmetic: GF(p), graded polynomials, degrevlex, text format.

Monomials are plain exponent tuples; the comparison order is degree
reverse-lexicographic throughout the package.  Every scalar is an int
reduced to [0, p).
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import (
    AlgebraError,
    NonHomogeneousError,
    PolynomialSyntaxError,
    UnknownVariableError,
)

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.2e9 with these bases."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldContext:
    """The prime field GF(p) used for all coefficients."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not (2 < p < 2**31) or not is_prime(p):
            raise AlgebraError(f"modulus must be an odd prime < 2^31, got {p}")
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def neg(self, a: int) -> int:
        return -a % self.p

    def __eq__(self, other):
        return isinstance(other, FieldContext) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


# ---------------------------------------------------------------------------
# monomials: exponent tuples


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, or None when b does not divide a."""
    q = []
    for x, y in zip(a, b):
        if x < y:
            return None
        q.append(x - y)
    return tuple(q)


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def mono_key(m):
    """Sort key for degrevlex; larger key means larger monomial."""
    return (sum(m), tuple(-e for e in reversed(m)))


def monomial_compare(a, b) -> int:
    """-1, 0, 1 as a <, =, > b in degrevlex."""
    ka, kb = mono_key(a), mono_key(b)
    return (ka > kb) - (ka < kb)


@lru_cache(maxsize=None)
def monomials_of_degree(num_vars: int, degree: int):
    """All exponent tuples of the given total degree, degrevlex-descending."""
    if degree < 0:
        return ()
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, num_vars)
    return tuple(sorted(out, key=mono_key, reverse=True))


def dim_poly_slice(num_vars: int, degree: int) -> int:
    """dim of the degree-d piece of the free polynomial ring."""
    if degree < 0:
        return 0
    return math.comb(degree + num_vars - 1, num_vars - 1)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Homogeneous-or-not polynomial over GF(p) as {exponent tuple: coeff}."""

    __slots__ = ("ring", "terms", "_lt")

    def __init__(self, ring: "RingContext", terms: dict):
        self.ring = ring
        self.terms = terms
        self._lt = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(ring):
        return Polynomial(ring, {})

    @staticmethod
    def constant(ring, c):
        c %= ring.field.p
        if c == 0:
            return Polynomial(ring, {})
        return Polynomial(ring, {(0,) * ring.num_vars: c})

    @staticmethod
    def variable(ring, i):
        e = [0] * ring.num_vars
        e[i] = 1
        return Polynomial(ring, {tuple(e): 1})

    @staticmethod
    def monomial(ring, mono, c=1):
        c %= ring.field.p
        if c == 0:
            return Polynomial(ring, {})
        return Polynomial(ring, {tuple(mono): c})

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(m) for m in self.terms}
        return len(degs) == 1

    def homogeneous_degree(self):
        if not self.terms:
            return None
        degs = {sum(m) for m in self.terms}
        if len(degs) != 1:
            raise NonHomogeneousError(f"not homogeneous: {self}")
        return degs.pop()

    def lead(self):
        """(monomial, coefficient) of the degrevlex-leading term."""
        if not self.terms:
            return None
        if self._lt is None:
            m = max(self.terms, key=mono_key)
            self._lt = (m, self.terms[m])
        return self._lt

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def is_scalar(self):
        return len(self.terms) == 1 and sum(next(iter(self.terms))) == 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __sub__(self, other):
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) - c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def scale(self, c):
        p = self.ring.field.p
        c %= p
        if c == 0:
            return Polynomial(self.ring, {})
        return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms.items()})

    def term_mul(self, mono, c=1):
        p = self.ring.field.p
        c %= p
        if c == 0:
            return Polynomial(self.ring, {})
        out = {}
        for m, v in self.terms.items():
            out[mono_mul(m, mono)] = (v * c) % p
        return Polynomial(self.ring, out)

    def __mul__(self, other):
        p = self.ring.field.p
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        out = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = mono_mul(m1, m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    def pow(self, e):
        out = Polynomial.constant(self.ring, 1)
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, point):
        """Value at a tuple of field elements."""
        p = self.ring.field.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * pow(x, e, p) % p
            total = (total + v) % p
        return total

    def derivative(self, i):
        p = self.ring.field.p
        out = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            v = c * m[i] % p
            if v == 0:
                continue
            e = list(m)
            e[i] -= 1
            out[tuple(e)] = v
        return Polynomial(self.ring, out)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring.same_ring(other.ring)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return print_polynomial(self)


class RingContext:
    """Graded coordinate ring: polynomial ring or hypersurface quotient.

    num_vars = 4 models the ring of projective 3-space; num_vars = 5 with a
    homogeneous relation q models the cone over a hypersurface in P^4.
    relation is None for the plain polynomial ring.
    """

    def __init__(self, field: FieldContext, num_vars: int, relation_text: str | None = None,
                 check_relation: bool = True):
        self.field = field
        self.num_vars = num_vars
        self.relation = None
        if relation_text is None:
            self.canonical_twist = -num_vars
            self.dim = num_vars
        else:
            rel = parse_polynomial(relation_text, self) if isinstance(relation_text, str) else relation_text
            if rel.is_zero() or not rel.is_homogeneous():
                raise NonHomogeneousError("hypersurface relation must be nonzero homogeneous")
            self.relation = rel
            d = rel.homogeneous_degree()
            self.canonical_twist = d - num_vars
            self.dim = num_vars - 1
            if check_relation and not self._relation_irreducible():
                raise AlgebraError("hypersurface relation failed the irreducibility check")

    def _relation_irreducible(self):
        """Exact sufficient criteria: Gram rank >= 3 for quadrics, else a
        smooth-hypersurface Jacobian check (smooth implies irreducible)."""
        q = self.relation
        p = self.field.p
        n = self.num_vars
        if q.homogeneous_degree() == 2:
            gram = [[0] * n for _ in range(n)]
            for m, c in q.terms.items():
                idx = [i for i, e in enumerate(m) for _ in range(e)]
                i, j = idx[0], idx[1]
                if i == j:
                    gram[i][i] = (gram[i][i] + 2 * c) % p
                else:
                    gram[i][j] = (gram[i][j] + c) % p
                    gram[j][i] = (gram[j][i] + c) % p
            return _int_matrix_rank(gram, p) >= 3
        # defer to the Groebner layer for deg > 2 (import cycle avoided there)
        from . import modgb

        jac = [q.derivative(i) for i in range(n)]
        ideal = modgb.Ideal(self, jac + [q])
        return modgb.height(ideal) >= n

    def is_quotient(self):
        return self.relation is not None

    def ambient_ring(self):
        """The underlying polynomial ring (self when already free)."""
        if self.relation is None:
            return self
        return RingContext(self.field, self.num_vars)

    def same_ring(self, other):
        if self is other:
            return True
        return (
            self.field == other.field
            and self.num_vars == other.num_vars
            and ((self.relation is None) == (other.relation is None))
            and (self.relation is None or self.relation.terms == other.relation.terms)
        )

    def variables(self):
        return [Polynomial.variable(self, i) for i in range(self.num_vars)]

    def var_names(self):
        return [f"x{i}" for i in range(self.num_vars)]

    def slice_dim(self, degree):
        """dim of the degree-d piece of this graded ring."""
        d = dim_poly_slice(self.num_vars, degree)
        if self.relation is not None:
            d -= dim_poly_slice(self.num_vars, degree - self.relation.homogeneous_degree())
        return d

    def random_homogeneous(self, degree, rng, nonzero=True):
        monos = monomials_of_degree(self.num_vars, degree)
        p = self.field.p
        for _ in range(64):
            terms = {}
            for m in monos:
                c = rng.randrange(p)
                if c:
                    terms[m] = c
            if terms or not nonzero:
                return Polynomial(self, terms)
        raise AlgebraError("could not draw a nonzero random form")

    def __repr__(self):
        base = f"GF({self.field.p})[x0..x{self.num_vars - 1}]"
        if self.relation is not None:
            return base + f"/({print_polynomial(self.relation)})"
        return base


def _int_matrix_rank(rows, p):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] % p:
                c = m[r][col] % p
                m[r] = [(a - c * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# text format


def parse_polynomial(text: str, ring: RingContext, require_homogeneous: bool = False) -> Polynomial:
    """Parse the package's polynomial grammar.

    term := coeff | coeff '*' monos | monos
    monos := var ('^' exp)? ('*' var ('^' exp)?)*
    var := 'x' digit+, variables x0..x{n-1}; terms joined by '+' / '-'.
    """
    p = ring.field.p
    n = ring.num_vars
    i = 0
    length = len(text)
    terms: dict = {}

    def skip_ws():
        nonlocal i
        while i < length and text[i].isspace():
            i += 1

    def read_int():
        nonlocal i
        start = i
        while i < length and text[i].isdigit():
            i += 1
        if start == i:
            raise PolynomialSyntaxError("expected an integer", start)
        return int(text[start:i])

    skip_ws()
    if i == length:
        raise PolynomialSyntaxError("empty polynomial", 0)
    sign = 1
    if text[i] in "+-":
        sign = -1 if text[i] == "-" else 1
        i += 1
    while True:
        skip_ws()
        if i == length:
            raise PolynomialSyntaxError("expected a term", i)
        coeff = 1
        exps = [0] * n
        saw_factor = False
        if text[i].isdigit():
            coeff = read_int() % p
            saw_factor = True
            skip_ws()
            if i < length and text[i] == "*":
                i += 1
                skip_ws()
                if i == length or text[i] != "x":
                    raise PolynomialSyntaxError("expected a variable after '*'", i)
        while i < length and text[i] == "x":
            pos = i
            i += 1
            idx = read_int()
            if idx >= n:
                raise UnknownVariableError(
                    f"variable x{idx} out of range (ring has x0..x{n - 1}) at position {pos}"
                )
            exp = 1
            skip_ws()
            if i < length and text[i] == "^":
                i += 1
                skip_ws()
                exp = read_int()
            exps[idx] += exp
            saw_factor = True
            skip_ws()
            if i < length and text[i] == "*":
                i += 1
                skip_ws()
                if i == length or not (text[i] == "x" or text[i].isdigit()):
                    raise PolynomialSyntaxError("dangling '*'", i)
                if text[i].isdigit():
                    coeff = coeff * (read_int() % p) % p
                    skip_ws()
                    if i < length and text[i] == "*":
                        i += 1
                        skip_ws()
        if not saw_factor:
            raise PolynomialSyntaxError(f"unexpected character {text[i]!r}", i)
        c = coeff * sign % p
        m = tuple(exps)
        v = (terms.get(m, 0) + c) % p
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)
        skip_ws()
        if i == length:
            break
        if text[i] == "+":
            sign = 1
        elif text[i] == "-":
            sign = -1
        else:
            raise PolynomialSyntaxError(f"expected '+' or '-', got {text[i]!r}", i)
        i += 1
    poly = Polynomial(ring, terms)
    if require_homogeneous and not poly.is_homogeneous():
        raise NonHomogeneousError(f"polynomial is not homogeneous: {text!r}")
    return poly


def print_polynomial(poly: Polynomial) -> str:
    """Canonical text: degrevlex-descending terms, coefficients in [1, p)."""
    if poly.is_zero():
        return "0"
    parts = []
    for m, c in poly.sorted_terms():
        factors = []
        if c != 1 or sum(m) == 0:
            factors.append(str(c))
        for idx, e in enumerate(m):
            if e == 1:
                factors.append(f"x{idx}")
            elif e > 1:
                factors.append(f"x{idx}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)
