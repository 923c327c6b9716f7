"""Exact scalar arithmetic: rationals, real quadratic fields, sparse polynomials.

Three nested coefficient domains, all immutable, hashable and exact:

    Fraction  <  QuadElement (a + b*sqrt(m), m square-free)  <  Poly

Mixed-mode arithmetic promotes automatically through the usual operators,
so callers can write ``Fraction(1, 2) * Poly.var("hI")`` and get a Poly.
Floating point never enters any computation path.

The canonical text grammar (``render_scalar`` / ``parse_scalar``) round-trips
every value: rationals as ``p/q``, quadratic elements as ``a+b√m`` (``sqrt(m)``
accepted on input), polynomials as ``+``/``-`` separated terms in graded
lexicographic order, e.g. ``4*hI^2 - 1/3*c1*hI + 2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cmp_to_key
from math import isqrt
from typing import Iterable, Mapping, Optional, Union

Rational = Fraction  # arbitrary precision, auto-reduced, denominator > 0
Scalar = Union[Fraction, "QuadElement", "Poly"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _is_squarefree(m: int) -> bool:
    if m < 2:
        return False
    n, d = m, 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def _frac_sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class QuadElement:
    """An element a + b*sqrt(m) of the real quadratic field Q(sqrt(m)).

    m is a square-free integer >= 2 acting as the field tag; elements with
    different tags cannot be combined (ValueError), though equality across
    tags is defined for rational-valued elements.  Signs and comparisons are
    exact, by case analysis on a, b and comparison of a^2 with m*b^2.
    """

    __slots__ = ("a", "b", "m", "_hash")

    def __init__(self, a, b, m: int):
        if not _is_squarefree(m):
            raise ValueError(f"field tag must be square-free and >= 2, got {m}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.m = m
        if self.b == 0:
            self._hash = hash(self.a)
        else:
            self._hash = hash((self.a, self.b, self.m))

    @classmethod
    def sqrt(cls, m: int) -> "QuadElement":
        return cls(0, 1, m)

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> Optional["QuadElement"]:
        if isinstance(other, QuadElement):
            if other.m != self.m:
                raise ValueError(
                    f"mismatched quadratic field tags: sqrt({self.m}) vs sqrt({other.m})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(other, 0, self.m)
        return None

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.m)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b, self.m)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(
            self.a * o.a + self.m * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.m,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero quadratic element")
        return QuadElement(self.a / n, -self.b / n, self.m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElement(other, 0, self.m) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadElement(1, 0, self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        return self.a * self.a - self.m * self.b * self.b

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(m) in {-1, 0, +1}."""
        a, b = self.a, self.b
        if b == 0:
            return _frac_sign(a)
        if a == 0:
            return _frac_sign(b)
        sa, sb = _frac_sign(a), _frac_sign(b)
        if sa == sb:
            return sa
        # mixed signs: |a| vs |b|*sqrt(m) decided by squares
        lhs, rhs = a * a, self.m * b * b
        if lhs == rhs:  # would force sqrt(m) rational
            raise ArithmeticError(f"sqrt({self.m}) behaves rationally; invalid tag")
        return sa if lhs > rhs else sb

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not (self.a == 0 and self.b == 0)

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            if self.m == other.m:
                return self.a == other.a and self.b == other.b
            return self.b == 0 and other.b == 0 and self.a == other.a
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot order QuadElement against {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"QuadElement({self.a!s}, {self.b!s}, {self.m})"


# Monomials are tuples of (symbol, exponent) pairs, sorted by symbol,
# exponents strictly positive.  The empty tuple is the constant monomial.
Mono = tuple


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for s, e in m2:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items()))


def _mono_div(m1: Mono, m2: Mono) -> Optional[Mono]:
    """m1 / m2 as a monomial, or None if not divisible."""
    exps = dict(m1)
    for s, e in m2:
        r = exps.get(s, 0) - e
        if r < 0:
            return None
        if r == 0:
            exps.pop(s, None)
        else:
            exps[s] = r
    return tuple(sorted(exps.items()))


def _mono_deg(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_cmp(m1: Mono, m2: Mono) -> int:
    """Graded-lex order: total degree first, then lex on alphabetical symbols."""
    d1, d2 = _mono_deg(m1), _mono_deg(m2)
    if d1 != d2:
        return 1 if d1 > d2 else -1
    e1, e2 = dict(m1), dict(m2)
    for s in sorted(set(e1) | set(e2)):
        a, b = e1.get(s, 0), e2.get(s, 0)
        if a != b:
            return 1 if a > b else -1
    return 0


_MONO_KEY = cmp_to_key(_mono_cmp)


class Poly:
    """Sparse multivariate polynomial over Fraction or QuadElement coefficients.

    Stored as a map from monomials to nonzero coefficients; all arithmetic is
    exact and returns canonical (zero-pruned) results.  Printing and leading
    terms use graded-lexicographic order with symbols compared alphabetically.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Mono, Scalar]):
        pruned = {}
        for mono, c in terms.items():
            if isinstance(c, int):
                c = Fraction(c)
            if c == 0:
                continue
            pruned[mono] = c
        self.terms = pruned
        self._hash = None

    @classmethod
    def const(cls, c) -> "Poly":
        if isinstance(c, int):
            c = Fraction(c)
        return cls({(): c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Poly":
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): _ONE})

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, QuadElement)):
            return Poly.const(other)
        return None

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in o.terms.items():
            cur = out.get(mono)
            s = c if cur is None else cur + c
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = _mono_mul(m1, m2)
                c = c1 * c2
                cur = out.get(mono)
                s = c if cur is None else cur + c
                if s == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def constant_value(self) -> Scalar:
        if not self.terms:
            return _ZERO
        if set(self.terms) != {()}:
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms[()]

    def symbols(self) -> tuple:
        out = set()
        for mono in self.terms:
            out.update(s for s, _ in mono)
        return tuple(sorted(out))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(_mono_deg(m) for m in self.terms)

    def lead(self) -> tuple:
        """Leading (monomial, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=_MONO_KEY)
        return mono, self.terms[mono]

    # -- evaluation and division -------------------------------------------

    def eval(self, assignment: Mapping[str, Scalar]) -> Scalar:
        """Exact full evaluation; every symbol must be assigned."""
        total: Scalar = _ZERO
        for mono, c in self.terms.items():
            term: Scalar = c
            for s, e in mono:
                if s not in assignment:
                    raise KeyError(f"no value assigned to symbol '{s}'")
                term = term * (as_scalar(assignment[s]) ** e)
            total = total + term
        return total

    def exact_div(self, d: "Poly") -> "Poly":
        """Exact quotient self / d; raises ValueError if d does not divide."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q: dict = {}
        r = self
        dm, dc = d.lead()
        while not r.is_zero():
            rm, rc = r.lead()
            mono = _mono_div(rm, dm)
            if mono is None:
                raise ValueError(f"({d}) does not divide ({self})")
            c = rc / dc
            q[mono] = q.get(mono, _ZERO) + c
            r = r - Poly({mono: c}) * d
        return Poly(q)

    def reduce_by(self, d: "Poly") -> tuple:
        """Division with remainder by a single divisor: self = q*d + r.

        No monomial of r is divisible by the leading monomial of d, so for a
        nonzero divisor d, r == 0 exactly when d divides self.
        """
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = Poly({})
        r = self
        dm, dc = d.lead()
        rem_terms: dict = {}
        while not r.is_zero():
            rm, rc = r.lead()
            mono = _mono_div(rm, dm)
            if mono is None:
                # move leading term to the remainder and keep going
                rem_terms[rm] = rc
                r = r - Poly({rm: rc})
                continue
            t = Poly({mono: rc / dc})
            q = q + t
            r = r - t * d
        return q, Poly(rem_terms)

    # -- equality ------------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"Poly({render_scalar(self)!r})"


# ---------------------------------------------------------------------------
# scalar helpers


def as_scalar(x) -> Scalar:
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, QuadElement, Poly)):
        return x
    raise TypeError(f"not a scalar: {x!r}")


def is_zero(x) -> bool:
    if isinstance(x, Poly):
        return x.is_zero()
    return x == 0


def exact_sign(x) -> int:
    """Sign in {-1, 0, +1} for rationals and quadratic elements."""
    if isinstance(x, int):
        return (x > 0) - (x < 0)
    if isinstance(x, Fraction):
        return _frac_sign(x)
    if isinstance(x, QuadElement):
        return x.sign()
    raise TypeError(f"no exact sign for {type(x).__name__}")


def exact_div(x, y) -> Scalar:
    """Exact division of scalars; raises if the quotient is not exact."""
    x, y = as_scalar(x), as_scalar(y)
    if is_zero(y):
        raise ZeroDivisionError("exact division by zero")
    if isinstance(x, Poly) or isinstance(y, Poly):
        px = x if isinstance(x, Poly) else Poly.const(x)
        py = y if isinstance(y, Poly) else Poly.const(y)
        return px.exact_div(py)
    return x / y


def divide_linear(p: Poly, ell: Poly) -> tuple:
    """Divide p by a total-degree-1 polynomial: p = q*ell + r, exactly.

    The remainder has no monomial divisible by ell's leading monomial, so
    r == 0 if and only if ell divides p.
    """
    if not isinstance(ell, Poly) or ell.is_zero():
        raise ZeroDivisionError("divisor must be a nonzero polynomial")
    if ell.total_degree() != 1:
        raise ValueError(f"divisor must have total degree 1, got {ell}")
    return p.reduce_by(ell)


def perfect_square_root(x) -> Optional[int]:
    """The positive integer k with k*k == x, if one exists."""
    if isinstance(x, QuadElement):
        if not x.is_rational():
            return None
        x = x.a
    if isinstance(x, Poly):
        if not x.is_constant():
            return None
        return perfect_square_root(x.constant_value())
    if isinstance(x, int):
        x = Fraction(x)
    if not isinstance(x, Fraction):
        return None
    if x <= 0 or x.denominator != 1:
        return None
    k = isqrt(x.numerator)
    return k if k * k == x.numerator else None


# ---------------------------------------------------------------------------
# canonical text rendering


def _render_fraction(x: Fraction) -> str:
    return str(x)


def _render_quad(x: QuadElement) -> str:
    if x.b == 0:
        return _render_fraction(x.a)
    root = f"√{x.m}"
    if x.b == 1:
        bpart = root
    elif x.b == -1:
        bpart = f"-{root}"
    else:
        bpart = f"{x.b}{root}"
    if x.a == 0:
        return bpart
    if x.b > 0:
        return f"{x.a}+{bpart}"
    return f"{x.a}{bpart}"


def _render_coeff_mono(c: Scalar, mono_str: str, leading: bool) -> str:
    """One polynomial term with sign folded into the separator when possible."""
    if isinstance(c, QuadElement) and c.is_rational():
        c = c.a
    if isinstance(c, Fraction):
        neg = c < 0
        mag = -c if neg else c
        if mono_str:
            body = mono_str if mag == 1 else f"{mag}*{mono_str}"
        else:
            body = str(mag)
        if leading:
            return f"-{body}" if neg else body
        return (" - " if neg else " + ") + body
    # quadratic coefficient with an irrational part
    if c.a == 0 and c.b > 0:
        body = _render_quad(c)
    else:
        body = f"({_render_quad(c)})"
    body = f"{body}*{mono_str}" if mono_str else body
    return body if leading else f" + {body}"


def _render_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    monos = sorted(p.terms, key=_MONO_KEY, reverse=True)
    parts = []
    for i, mono in enumerate(monos):
        mono_str = "*".join(s if e == 1 else f"{s}^{e}" for s, e in mono)
        parts.append(_render_coeff_mono(p.terms[mono], mono_str, leading=(i == 0)))
    return "".join(parts)


def render_scalar(x) -> str:
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return _render_fraction(x)
    if isinstance(x, QuadElement):
        return _render_quad(x)
    return _render_poly(x)


# ---------------------------------------------------------------------------
# canonical text parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()√]))"
)


def _tokenize(text: str):
    pos, out = 0, []
    text = text.replace("−", "-")
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize scalar text at: {text[pos:]!r}")
            break
        if m.group("num") is not None:
            out.append(("num", int(m.group("num"))))
        elif m.group("name") is not None:
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _ScalarParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ValueError(f"expected '{op}' in scalar text")

    def parse(self) -> Scalar:
        value = self.parse_expr()
        if self.pos != len(self.tokens):
            raise ValueError("trailing input in scalar text")
        return value

    def parse_expr(self) -> Scalar:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        total = self.parse_term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                term = self.parse_term()
                total = total + (term if val == "+" else -term)
            else:
                return total

    def parse_term(self) -> Scalar:
        value = self.parse_factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                value = value * self.parse_factor()
            else:
                return value

    def parse_factor(self) -> Scalar:
        value = self.parse_primary()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            ekind, exp = self.next()
            if ekind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            return value**exp
        return value

    def _parse_root(self) -> QuadElement:
        kind, val = self.next()
        if kind != "num":
            raise ValueError("√ must be followed by an integer")
        return QuadElement.sqrt(val)

    def parse_primary(self) -> Scalar:
        kind, val = self.next()
        if kind == "num":
            number = Fraction(val)
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "/":
                save = self.pos
                self.next()
                k3, v3 = self.next()
                if k3 == "num":
                    number = Fraction(val, v3)
                else:
                    self.pos = save
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "√":
                self.next()
                return number * self._parse_root()
            if k2 == "name" and v2 == "sqrt":
                self.next()
                self.expect_op("(")
                k3, m = self.next()
                if k3 != "num":
                    raise ValueError("sqrt() takes an integer")
                self.expect_op(")")
                return number * QuadElement.sqrt(m)
            return number
        if kind == "op" and val == "√":
            return self._parse_root()
        if kind == "name":
            if val == "sqrt":
                self.expect_op("(")
                k3, m = self.next()
                if k3 != "num":
                    raise ValueError("sqrt() takes an integer")
                self.expect_op(")")
                return QuadElement.sqrt(m)
            return Poly.var(val)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.parse_primary()
        raise ValueError(f"unexpected token {val!r} in scalar text")


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical scalar grammar back into an exact value."""
    value = _ScalarParser(_tokenize(text)).parse()
    if isinstance(value, Poly) and value.is_constant():
        return value.constant_value()
    return as_scalar(value)
