"""Exact ordinal algebra on canonical terms.

Everything here is a pure function of immutable :class:`Ordinal` values.
Atoms are treated as additively indecomposable epsilon numbers, so the
usual Cantor-normal-form algorithms apply unchanged once ``w^(w_k) = w_k``
is respected (see :func:`omega_pow`).
"""

from __future__ import annotations

from typing import NamedTuple

from .notation import (
    OMEGA,
    ONE,
    ZERO,
    Kind,
    Order,
    Ordinal,
    classify,
    compare,
    natural,
    render,
)


class CNFView(NamedTuple):
    """Cantor normal form as a plain sequence of (exponent, coefficient)."""

    summands: tuple[tuple[Ordinal, int], ...]

    def reassemble(self) -> Ordinal:
        total = ZERO
        for e, c in self.summands:
            total = add(total, mul(omega_pow(e), natural(c)))
        return total


def cnf(a: Ordinal) -> CNFView:
    return CNFView(a.cnf)


def _make(pairs) -> Ordinal:
    pairs = tuple(pairs)
    if len(pairs) == 1 and pairs[0][1] == 1 and pairs[0][0].is_atom:
        return pairs[0][0]
    return Ordinal(pairs)


def omega_pow(x: Ordinal) -> Ordinal:
    """``w^x``; atoms are fixed points."""
    return _make(((x, 1),))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    lead, c = b.cnf[0]
    out = []
    for ea, ca in a.cnf:
        r = compare(ea, lead)
        if r is Order.GT:
            out.append((ea, ca))
        elif r is Order.EQ:
            out.append((ea, ca + c))
            out.extend(b.cnf[1:])
            return _make(out)
        else:
            break
    out.extend(b.cnf)
    return _make(out)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if a.is_zero or b.is_zero:
        return ZERO
    e1, c1 = a.cnf[0]
    out = []
    for f, d in b.cnf:
        if f.is_zero:
            out.append((e1, c1 * d))
            out.extend(a.cnf[1:])
        else:
            out.append((add(e1, f), d))
    return _make(out)


def _split_finite(b: Ordinal) -> tuple[Ordinal, int]:
    """Split ``b`` into its limit part and trailing natural."""
    if b.atom or not b.terms or not b.terms[-1][0].is_zero:
        return b, 0
    return _make(b.terms[:-1]), b.terms[-1][1]


def _pow_nat(a: Ordinal, n: int) -> Ordinal:
    result, base = ONE, a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def pow(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal exponentiation ``a^b``; ``0^0`` is 1 by convention."""
    if b.is_zero:
        return ONE
    if a.is_zero:
        return ZERO
    if a == ONE:
        return ONE
    if a == OMEGA:
        return omega_pow(b)
    limit, m = _split_finite(b)
    if a.is_finite:
        n = a.to_int()
        if limit.is_zero:
            return natural(n**m)
        # limit = w * gamma, and n^(w * gamma) = w^gamma
        gamma = _make((left_subtract(ONE, f), d) for f, d in limit.cnf)
        return mul(omega_pow(gamma), natural(n**m))
    head = ONE if limit.is_zero else omega_pow(mul(a.cnf[0][0], limit))
    return mul(head, _pow_nat(a, m))


def left_subtract(a: Ordinal, x: Ordinal) -> Ordinal:
    """The unique ``y`` with ``a + y == x``; requires ``a <= x``."""
    ta, tx = a.cnf, x.cnf
    for i, (ex, cx) in enumerate(tx):
        if i >= len(ta):
            return _make(tx[i:])
        ea, ca = ta[i]
        r = compare(ex, ea)
        if r is Order.GT:
            return _make(tx[i:])
        if r is Order.LT:
            break
        if cx > ca:
            return _make(((ex, cx - ca),) + tx[i + 1 :])
        if cx < ca:
            break
    else:
        if len(ta) == len(tx):
            return ZERO
    raise ValueError(f"cannot subtract {render(a)} from the smaller {render(x)}")


def predecessor(a: Ordinal) -> Ordinal:
    if classify(a) is not Kind.SUCCESSOR:
        raise ValueError(f"{render(a)} is not a successor")
    *head, (e, c) = a.terms
    return _make(head + ([(e, c - 1)] if c > 1 else []))


def cofinality(a: Ordinal) -> Ordinal:
    """Cofinality; always 0, 1, ``w`` or an atom."""
    kind = classify(a)
    if kind is Kind.ZERO:
        return ZERO
    if kind is Kind.SUCCESSOR:
        return ONE
    if a.atom:
        return a
    e = a.terms[-1][0]
    if e.atom:
        return e
    if classify(e) is Kind.SUCCESSOR:
        return OMEGA
    return cofinality(e)


def is_regular_uncountable(a: Ordinal) -> bool:
    return a.is_atom


class BaseDecomposition(NamedTuple):
    """``x = w^(b+1)*eps + w^b*m + eta`` with ``eta < w^b``."""

    eps: Ordinal
    m: int
    eta: Ordinal


def decompose_base(x: Ordinal, base: Ordinal) -> BaseDecomposition:
    """Split ``x`` around the exponent ``base``.

    Summands above ``base`` have exponents ``base + 1 + mu`` and are folded
    into ``eps``; the coefficient sitting exactly at ``base`` becomes ``m``;
    the rest is ``eta``.
    """
    succ = add(base, ONE)
    high, low, m = [], [], 0
    for e, c in x.cnf:
        r = compare(e, base)
        if r is Order.GT:
            high.append((left_subtract(succ, e), c))
        elif r is Order.EQ:
            m = c
        else:
            low.append((e, c))
    return BaseDecomposition(_make(high), m, _make(low))


def recompose_base(eps: Ordinal, m: int, eta: Ordinal, base: Ordinal) -> Ordinal:
    head = mul(omega_pow(add(base, ONE)), eps)
    return add(add(head, mul(omega_pow(base), natural(m))), eta)


def canonical_cofinal(beta: Ordinal, delta: Ordinal) -> Ordinal:
    """Element ``beta[delta]`` of the canonical fundamental sequence.

    ``(lam + w^(g+1))[n] = lam + w^g*(n+1)``, ``(lam + w^g)[d] = lam + w^(g[d])``
    for limit ``g``, and ``w_k[d] = d + 1``.
    """
    if classify(beta) is not Kind.LIMIT:
        raise ValueError(f"{render(beta)} is not a limit ordinal")
    cf = cofinality(beta)
    if cf == OMEGA:
        if not delta.is_finite:
            raise ValueError(f"index {render(delta)} must be finite for cofinality w")
    elif compare(delta, cf) is not Order.LT:
        raise ValueError(f"index {render(delta)} is not below cf = {render(cf)}")
    if beta.atom:
        return add(delta, ONE)
    *head, (e, c) = beta.terms
    lam = _make(head + ([(e, c - 1)] if c > 1 else []))
    if e.atom:
        return add(lam, add(delta, ONE))
    if classify(e) is Kind.SUCCESSOR:
        step = mul(omega_pow(predecessor(e)), natural(delta.to_int() + 1))
        return add(lam, step)
    return add(lam, omega_pow(canonical_cofinal(e, delta)))


def exceeding_index(beta: Ordinal, gamma: Ordinal) -> Ordinal:
    """Some ``delta`` with ``canonical_cofinal(beta, delta) > gamma``, for ``gamma < beta``."""
    if compare(gamma, beta) is not Order.LT:
        raise ValueError(f"{render(gamma)} is not below {render(beta)}")
    if beta.atom:
        return gamma
    *head, (e, c) = beta.terms
    lam = _make(head + ([(e, c - 1)] if c > 1 else []))
    if compare(gamma, lam) is Order.LT:
        return ZERO
    rest = left_subtract(lam, gamma)
    if e.atom:
        return rest
    if classify(e) is Kind.SUCCESSOR:
        g = predecessor(e)
        k = next((cc for ee, cc in rest.cnf if ee == g), 0)
        return natural(k)
    if rest.is_zero:
        return ZERO
    return exceeding_index(e, rest.cnf[0][0])


__all__ = [
    "CNFView",
    "BaseDecomposition",
    "add",
    "mul",
    "pow",
    "omega_pow",
    "left_subtract",
    "predecessor",
    "cofinality",
    "is_regular_uncountable",
    "decompose_base",
    "recompose_base",
    "canonical_cofinal",
    "exceeding_index",
    "cnf",
]
