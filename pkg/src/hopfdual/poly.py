"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a map from exponent tuples to nonzero ``Fraction``
coefficients over a fixed ordered tuple of variable names.  Zero
coefficients are never stored, so equality of term maps is equality of
polynomials.

    >>> p = parse_poly("(x+y)*(x-y)", ["x", "y"])
    >>> str(p)
    'x^2 - y^2'
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class VariableMismatch(ValueError):
    pass


class Poly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] = ()):
        self.variables = tuple(variables)
        m = len(self.variables)
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in dict(terms).items():
            if len(exp) != m:
                raise ValueError(f"exponent {exp} does not match {m} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(c)
            if c:
                clean[tuple(exp)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "Poly":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Poly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c: Scalar) -> "Poly":
        variables = tuple(variables)
        c = Fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Exponent, c: Scalar = 1) -> "Poly":
        return cls(variables, {tuple(exp): c})

    @classmethod
    def var(cls, variables: Sequence[str], i: int) -> "Poly":
        exp = [0] * len(variables)
        exp[i] = 1
        return cls._raw(tuple(variables), {tuple(exp): Fraction(1)})

    # -- inspection ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.constant(self.variables, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(f"variables {self.variables} != {other.variables}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.variables, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.variables)
        return Poly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, i: int) -> "Poly":
        """Formal partial derivative with respect to the i-th variable."""
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Poly._raw(self.variables, out)

    def mul_monomial(self, exp: Exponent, c: Scalar = 1) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.variables)
        return Poly._raw(
            self.variables,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        vals = [Fraction(point[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def content_denominator(self) -> int:
        from math import lcm

        d = 1
        for c in self.terms.values():
            d = lcm(d, c.denominator)
        return d

    # -- printing --------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, {list(self.variables)!r})"


def _monomial_str(exp: Exponent, variables: Sequence[str]) -> str:
    parts = []
    for name, k in zip(variables, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: terms by descending degree, then descending exponent."""
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out = []
    for idx, (exp, c) in enumerate(items):
        mono = _monomial_str(exp, p.variables)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op_tok = self.take()
            q = self.unary()
            if op_tok[1] == "*":
                p = p * q
            else:
                if q.is_zero() or q.degrees() != {0}:
                    raise PolySyntaxError("division only by a nonzero constant", op_tok[2], self.text)
                p = p.scale(1 / q.constant_term())
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[:2] == ("op", "-"):
                self.error("negative exponent")
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer")
            self.take()
            return base ** tok[1]
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return Poly.constant(self.variables, val)
        if kind == "name":
            if val not in self.index:
                raise PolySyntaxError(f"unknown variable {val!r}", pos, self.text)
            return Poly.var(self.variables, self.index[val])
        if tok[:2] == ("op", "("):
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return p
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos, self.text)
        raise PolySyntaxError(f"unexpected token {val!r}", pos, self.text)


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse ``text`` over the named variables.

    Accepts integer literals, ``+ - * / ^``, parentheses and the declared
    variable names; ``/`` divides by a nonzero constant, which is how rational
    literals such as ``3/4`` are written.
    """
    return _Parser(str(text), variables).parse()


def poly_arith(op: str, *args, variables: Sequence[str] | None = None) -> Poly:
    """Dispatch ``add``, ``mul``, ``scale`` or ``partial_derivative``."""
    if op == "add":
        a, b = args
        return a + b
    if op == "mul":
        a, b = args
        return a * b
    if op == "scale":
        a, c = args
        return a.scale(c)
    if op == "partial_derivative":
        a, i = args
        if isinstance(i, str):
            i = a.variables.index(i)
        return a.derivative(i)
    raise ValueError(f"unknown operation {op!r}")


def total(polys: Iterable[Poly], variables: Sequence[str]) -> Poly:
    acc: Dict[Exponent, Fraction] = {}
    for p in polys:
        for e, c in p.terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
    return Poly._raw(tuple(variables), acc)
