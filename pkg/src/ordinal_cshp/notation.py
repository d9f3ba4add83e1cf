"""Ordinal terms in extended Cantor normal form.

A term is either zero, a finite sequence of ``(exponent, coefficient)``
summands with strictly decreasing exponents, or one of the atoms
``Omega_k`` (k >= 1).  Atoms stand for the successor alephs; they are
epsilon numbers, so ``w^(w_k)`` collapses to ``w_k``.  Inside a larger
term an atom shows up as the exponent of a summand, e.g. ``w_2 + w`` is
``((w_2, 1), (1, 1))``.

Grammar (whitespace-insensitive)::

    expr  := sum
    sum   := prod ("+" prod)*
    prod  := pow ("*" pow)*
    pow   := atom ("^" pow)?
    atom  := natural | "w" | "w_" natural | name | "(" expr ")"

``name`` is only meaningful when the caller passes a binding table.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass
from typing import Iterator, Mapping

MAX_ATOM_INDEX = 64
DEFAULT_MAX_DEPTH = 32


def max_depth() -> int:
    """Term depth bound, overridable through ``ORDINAL_CSHP_MAX_DEPTH``."""
    raw = os.environ.get("ORDINAL_CSHP_MAX_DEPTH")
    if not raw:
        return DEFAULT_MAX_DEPTH
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_DEPTH
    return value if value > 0 else DEFAULT_MAX_DEPTH


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Kind(enum.Enum):
    ZERO = "Zero"
    SUCCESSOR = "Successor"
    LIMIT = "Limit"


@dataclass(frozen=True, slots=True)
class Ordinal:
    """Immutable canonical ordinal term.

    Build values through :func:`natural`, :func:`atom`, :func:`parse` or the
    arithmetic functions; the raw constructor does not normalize.
    """

    terms: tuple[tuple["Ordinal", int], ...] = ()
    atom: int = 0

    @property
    def cnf(self) -> tuple[tuple["Ordinal", int], ...]:
        if self.atom:
            return ((self, 1),)
        return self.terms

    @property
    def is_zero(self) -> bool:
        return not self.atom and not self.terms

    @property
    def is_atom(self) -> bool:
        return self.atom != 0

    @property
    def is_finite(self) -> bool:
        if self.atom:
            return False
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{render(self)} is not finite")
        return self.terms[0][1] if self.terms else 0

    # comparisons
    def __lt__(self, other: object) -> bool:
        other = _coerce(other)
        return other is not NotImplemented and compare(self, other) is Order.LT

    def __le__(self, other: object) -> bool:
        other = _coerce(other)
        return other is not NotImplemented and compare(self, other) is not Order.GT

    def __gt__(self, other: object) -> bool:
        other = _coerce(other)
        return other is not NotImplemented and compare(self, other) is Order.GT

    def __ge__(self, other: object) -> bool:
        other = _coerce(other)
        return other is not NotImplemented and compare(self, other) is not Order.LT

    # arithmetic delegates to the arithmetic module (imported lazily: it imports us)
    def __add__(self, other: object) -> "Ordinal":
        from .arithmetic import add

        return add(self, _coerce_strict(other))

    def __radd__(self, other: object) -> "Ordinal":
        from .arithmetic import add

        return add(_coerce_strict(other), self)

    def __mul__(self, other: object) -> "Ordinal":
        from .arithmetic import mul

        return mul(self, _coerce_strict(other))

    def __rmul__(self, other: object) -> "Ordinal":
        from .arithmetic import mul

        return mul(_coerce_strict(other), self)

    def __pow__(self, other: object) -> "Ordinal":
        from .arithmetic import pow

        return pow(self, _coerce_strict(other))

    def __rpow__(self, other: object) -> "Ordinal":
        from .arithmetic import pow

        return pow(_coerce_strict(other), self)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Ordinal({render(self)!r})"


def _coerce(value: object):
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return natural(value)
    return NotImplemented


def _coerce_strict(value: object) -> Ordinal:
    result = _coerce(value)
    if result is NotImplemented:
        raise TypeError(f"cannot use {type(value).__name__} as an ordinal")
    return result


ZERO = Ordinal()


def natural(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


ONE = natural(1)
OMEGA = Ordinal(((ONE, 1),))


def atom(k: int) -> Ordinal:
    """The regular cardinal ``Omega_k`` (the k-th successor aleph)."""
    if not 1 <= k <= MAX_ATOM_INDEX:
        raise ValueError(f"atom index must be in 1..{MAX_ATOM_INDEX}, got {k}")
    return Ordinal((), k)


def from_cnf(pairs) -> Ordinal:
    """Assemble a term from ``(exponent, coefficient)`` pairs.

    The pairs must already be in normal form order; a lone ``(w_k, 1)``
    summand collapses to the atom itself.
    """
    pairs = tuple((e, int(c)) for e, c in pairs)
    for i, (e, c) in enumerate(pairs):
        if c < 1:
            raise ValueError("coefficients must be positive")
        if i and compare(pairs[i - 1][0], e) is not Order.GT:
            raise ValueError("exponents must be strictly decreasing")
    if len(pairs) == 1 and pairs[0][1] == 1 and pairs[0][0].is_atom:
        return pairs[0][0]
    return Ordinal(pairs)


def compare(a: Ordinal, b: Ordinal) -> Order:
    """Lexicographic comparison of normal forms."""
    if a is b:
        return Order.EQ
    if a.atom and b.atom:
        return Order((a.atom > b.atom) - (a.atom < b.atom))
    ta, tb = a.cnf, b.cnf
    for (ea, ca), (eb, cb) in zip(ta, tb):
        r = compare(ea, eb)
        if r is not Order.EQ:
            return r
        if ca != cb:
            return Order.LT if ca < cb else Order.GT
    return Order((len(ta) > len(tb)) - (len(ta) < len(tb)))


def classify(a: Ordinal) -> Kind:
    if a.is_zero:
        return Kind.ZERO
    if a.atom:
        return Kind.LIMIT
    return Kind.SUCCESSOR if a.terms[-1][0].is_zero else Kind.LIMIT


def depth(a: Ordinal) -> int:
    """Exponent nesting depth; naturals have depth 1, zero depth 0."""
    if a.is_zero:
        return 0
    if a.atom:
        return 1
    return 1 + max(depth(e) for e, _ in a.terms)


# -- rendering ---------------------------------------------------------------


def _render_summand(e: Ordinal, c: int) -> str:
    if e.is_zero:
        return str(c)
    if e.atom:
        base = f"w_{e.atom}"
    elif e == ONE:
        base = "w"
    else:
        inner = render(e)
        simple = e.is_finite or (len(e.terms) == 1 and e.terms[0][1] == 1)
        base = f"w^{inner}" if simple else f"w^({inner})"
    return base if c == 1 else f"{base}*{c}"


def render(t: Ordinal) -> str:
    if t.is_zero:
        return "0"
    return " + ".join(_render_summand(e, c) for e, c in t.cnf)


# -- parsing -----------------------------------------------------------------


class ParseError(ValueError):
    """Malformed ordinal expression; ``position`` is a character offset."""

    def __init__(self, position: int, message: str, text: str = ""):
        self.position = position
        self.message = message
        self.text = text
        super().__init__(f"at offset {position}: {message}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


_TOKEN = re.compile(
    r"\s*(?:(?P<atom>w\s*_\s*(?P<idx>\d+))|(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[+*^()]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> Iterator[_Tok]:
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(start, f"unexpected character {text[start]!r}", text)
        if m.group("atom"):
            yield _Tok("atom", m.group("idx"), m.start("atom"))
        elif m.group("num"):
            yield _Tok("num", m.group("num"), m.start("num"))
        elif m.group("name"):
            yield _Tok("name", m.group("name"), m.start("name"))
        else:
            yield _Tok("op", m.group("op"), m.start("op"))
        pos = m.end()
    yield _Tok("end", "", n)


class _Parser:
    def __init__(self, text: str, env: Mapping[str, Ordinal] | None, limit: int):
        self.text = text
        self.env = env or {}
        self.limit = limit
        self.toks = list(_tokenize(text))
        self.i = 0
        self.nesting = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(tok.pos, message, self.text)

    def eat(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Ordinal:
        if self.tok.kind == "end":
            raise self.fail("empty expression")
        value = self.sum()
        if self.tok.kind != "end":
            raise self.fail(f"unexpected {self.tok.value!r}")
        return value

    def sum(self) -> Ordinal:
        from .arithmetic import add

        value = self.prod()
        while self.eat("+"):
            value = add(value, self.prod())
        return value

    def prod(self) -> Ordinal:
        from .arithmetic import mul

        value = self.power()
        while self.eat("*"):
            value = mul(value, self.power())
        return value

    def power(self) -> Ordinal:
        from .arithmetic import pow

        self.nesting += 1
        if self.nesting > self.limit:
            raise self.fail(f"expression nested deeper than {self.limit}")
        base = self.primary()
        if self.eat("^"):
            base = pow(base, self.power())
        self.nesting -= 1
        return base

    def primary(self) -> Ordinal:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return natural(int(tok.value))
        if tok.kind == "atom":
            self.i += 1
            k = int(tok.value)
            if k == 0:
                raise self.fail("w_0 is not an atom; write w", tok)
            if k > MAX_ATOM_INDEX:
                raise self.fail(f"atom index exceeds {MAX_ATOM_INDEX}", tok)
            return atom(k)
        if tok.kind == "name":
            self.i += 1
            if tok.value == "w":
                return OMEGA
            if tok.value in self.env:
                return self.env[tok.value]
            raise self.fail(f"unknown name {tok.value!r}", tok)
        if self.eat("("):
            self.nesting += 1
            if self.nesting > self.limit:
                raise self.fail(f"expression nested deeper than {self.limit}", tok)
            value = self.sum()
            if not self.eat(")"):
                raise self.fail("expected ')'")
            self.nesting -= 1
            return value
        if tok.kind == "end":
            raise self.fail("unexpected end of input")
        raise self.fail(f"unexpected {tok.value!r}")


def parse(text: str, env: Mapping[str, Ordinal] | None = None) -> Ordinal:
    """Parse an ordinal expression and return its canonical normal form.

    >>> render(parse("1 + w"))
    'w'
    """
    value = _Parser(text, env, max_depth()).parse()
    if depth(value) > max_depth():
        raise ParseError(0, f"term depth exceeds {max_depth()}", text)
    return value
