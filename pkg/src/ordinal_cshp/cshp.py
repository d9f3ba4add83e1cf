"""Decision procedures for CSHP on ordinals, finite products and binary coproducts.

A space built from ordinals with the order topology is decided by the
following rules:

* a successor ordinal (and any product or coproduct of them) is compact;
* a limit ordinal has CSHP exactly when it is an uncountable regular
  cardinal, which in this notation means an atom ``w_k``;
* a product with limit factors has CSHP exactly when all limit factors equal
  one atom ``kappa`` and every successor factor is at most ``kappa``;
* ``a + b`` disjoint, ``a <= b``: CSHP iff both are successors, or ``b`` is an
  atom and ``a`` is ``b`` or a successor.

Negative verdicts carry witnesses that can be re-checked with the
arithmetic module.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .arithmetic import (
    add,
    canonical_cofinal,
    cofinality,
    is_regular_uncountable,
    mul,
    omega_pow,
)
from .notation import (
    OMEGA,
    ONE,
    Kind,
    Ordinal,
    classify,
    from_cnf,
    natural,
    parse,
    render,
)


class Rule(str, enum.Enum):
    COMPACT = "Compact"
    PRODUCT_POSITIVE = "TheoremA-positive"
    PRODUCT_NEGATIVE = "TheoremA-negative"
    SINGLE_POWER = "Theorem5.1"
    SPLIT_SUM = "Corollary4.5"
    COPRODUCT_COMPACT = "Corollary5.2(a)"
    COPRODUCT_ATOM_CLAUSE = "Corollary5.2(b)"
    DISCRETE_CLOPEN = "Lemma2.4(b)"


POSITIVE_ONLY = {Rule.COMPACT, Rule.PRODUCT_POSITIVE}
NEGATIVE_ONLY = {Rule.PRODUCT_NEGATIVE, Rule.SINGLE_POWER, Rule.SPLIT_SUM, Rule.DISCRETE_CLOPEN}


class DecisionError(ValueError):
    """Input outside the decidable fragment (e.g. a zero factor)."""


@dataclass(frozen=True)
class Witnesses:
    """Parameters naming why a verdict holds.

    ``alpha``/``xi``/``tau`` describe a splitting ``lambda = alpha + xi`` with
    ``alpha >= tau = cf(xi)``; ``discrete_points`` lists the start of an
    infinite discrete clopen set; ``factor_index``/``other_index`` point into
    the input list.
    """

    kappa: Ordinal | None = None
    tau: Ordinal | None = None
    alpha: Ordinal | None = None
    xi: Ordinal | None = None
    factor_index: int | None = None
    other_index: int | None = None
    decomposition: tuple[tuple[Ordinal, int], ...] | None = None
    discrete_points: tuple[Ordinal, ...] | None = None
    compact_part: Ordinal | None = None
    violation: str | None = None


@dataclass(frozen=True)
class CSHPVerdict:
    has_cshp: bool
    rule: Rule
    witnesses: Witnesses | None = None
    narrative: str = ""
    inputs: tuple[Ordinal, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.has_cshp and self.rule in NEGATIVE_ONLY:
            raise ValueError(f"rule {self.rule.value} cannot support a positive verdict")
        if not self.has_cshp and self.rule in POSITIVE_ONLY:
            raise ValueError(f"rule {self.rule.value} cannot support a negative verdict")
        if not self.has_cshp and self.witnesses is None:
            raise ValueError("negative verdicts need witnesses")


_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _sub(i: int) -> str:
    return str(i).translate(_SUB)


def _split_off_last(lam: Ordinal) -> tuple[Ordinal, Ordinal]:
    """``lam = alpha + xi`` with ``xi = w^(last exponent)``."""
    *head, (e, c) = lam.cnf
    alpha = from_cnf(head + ([(e, c - 1)] if c > 1 else []))
    return alpha, omega_pow(e)


def _limit_negative(lam: Ordinal) -> CSHPVerdict:
    """Negative verdict for a limit ordinal that is not an atom."""
    cf = cofinality(lam)
    alpha, xi = _split_off_last(lam)
    if cf == OMEGA:
        points = tuple(add(add(alpha, canonical_cofinal(xi, natural(n))), ONE) for n in range(4))
        shown = ", ".join(render(p) for p in points)
        prefix = "" if alpha.is_zero else f"{render(alpha)} + "
        return CSHPVerdict(
            False,
            Rule.DISCRETE_CLOPEN,
            Witnesses(
                tau=OMEGA,
                alpha=alpha,
                xi=xi,
                decomposition=lam.cnf,
                discrete_points=points,
                violation="countable cofinality",
            ),
            f"cf({render(lam)}) = w, so {render(lam)} contains the infinite discrete clopen subset "
            f"{{{prefix}{render(xi)}[n] + 1 : n < w}} "
            f"= {{{shown}, ...}}; a space with an infinite discrete clopen subset lacks CSHP.",
        )
    if not alpha.is_zero:
        return CSHPVerdict(
            False,
            Rule.SPLIT_SUM,
            Witnesses(
                tau=cf,
                alpha=alpha,
                xi=xi,
                decomposition=lam.cnf,
                violation="not additively indecomposable",
            ),
            f"{render(lam)} splits as alpha + xi with alpha = {render(alpha)} and xi = {render(xi)} a limit; "
            f"cf(xi) = {render(cf)} <= alpha, and such a sum lacks CSHP "
            f"(it contains (tau+1) ⨿ xi as a clopen piece).",
        )
    # lam = w^beta with uncountable cofinality tau < lam, hence tau + lam = lam
    return CSHPVerdict(
        False,
        Rule.SINGLE_POWER,
        Witnesses(
            tau=cf,
            alpha=cf,
            xi=lam,
            decomposition=lam.cnf,
            violation="not a regular cardinal",
        ),
        f"{render(lam)} is a single power of w with cofinality tau = {render(cf)} below it, "
        f"so tau + {render(lam)} = {render(lam)} is a sum alpha + xi with alpha = tau >= cf(xi); "
        f"such a sum lacks CSHP.",
    )


def decide_ordinal(lam: Ordinal) -> CSHPVerdict:
    kind = classify(lam)
    if kind is Kind.ZERO:
        raise DecisionError("the empty space 0 is not decided")
    if kind is Kind.SUCCESSOR:
        return CSHPVerdict(
            True,
            Rule.COMPACT,
            None,
            f"{render(lam)} is a successor ordinal, so [0, {render(lam)}) is compact.",
            (lam,),
        )
    if is_regular_uncountable(lam):
        return CSHPVerdict(
            True,
            Rule.PRODUCT_POSITIVE,
            Witnesses(kappa=lam),
            f"{render(lam)} is an uncountable regular cardinal (single factor, kappa = {render(lam)}).",
            (lam,),
        )
    v = _limit_negative(lam)
    return CSHPVerdict(v.has_cshp, v.rule, v.witnesses, v.narrative, (lam,))


def decide_product(factors: Sequence[Ordinal]) -> CSHPVerdict:
    factors = tuple(factors)
    if not factors:
        raise DecisionError("product needs at least one factor")
    for i, f in enumerate(factors):
        if f.is_zero:
            raise DecisionError(f"factor {i + 1} is 0 (empty space)")
    if len(factors) == 1:
        # a one-factor product is the ordinal itself
        return decide_ordinal(factors[0])
    limits = [i for i, f in enumerate(factors) if classify(f) is Kind.LIMIT]
    succs = [i for i, f in enumerate(factors) if classify(f) is Kind.SUCCESSOR and f != ONE]
    if not limits:
        return CSHPVerdict(
            True,
            Rule.COMPACT,
            None,
            "every factor is a successor ordinal, so the product is compact.",
            factors,
        )
    # the least limit factor plays kappa
    k_index = min(limits, key=lambda i: (factors[i], i))
    kappa = factors[k_index]
    name = f"λ{_sub(limits.index(k_index) + 1)}"
    if not is_regular_uncountable(kappa):
        inner = decide_ordinal(kappa)
        w = inner.witnesses
        return CSHPVerdict(
            False,
            Rule.PRODUCT_NEGATIVE,
            Witnesses(
                kappa=kappa,
                tau=w.tau,
                alpha=w.alpha,
                xi=w.xi,
                factor_index=k_index,
                decomposition=w.decomposition,
                discrete_points=w.discrete_points,
                violation=f"{name} = {render(kappa)} is not an uncountable regular cardinal",
            ),
            f"the least limit factor {name} = {render(kappa)} is a clopen piece of the product "
            f"and lacks CSHP on its own [{inner.rule.value}]: {inner.narrative}",
            factors,
        )
    for j in limits:
        if factors[j] != kappa:
            other = f"λ{_sub(limits.index(j) + 1)}"
            lo_pos, hi_pos = sorted((limits.index(j) + 1, limits.index(k_index) + 1))
            first, second = f"λ{_sub(lo_pos)}", f"λ{_sub(hi_pos)}"
            return CSHPVerdict(
                False,
                Rule.PRODUCT_NEGATIVE,
                Witnesses(
                    kappa=kappa,
                    tau=kappa,
                    factor_index=j,
                    other_index=k_index,
                    compact_part=add(kappa, ONE),
                    violation=f"{first} ≠ {second}",
                ),
                f"limit factors differ: {other} = {render(factors[j])} ≠ {name} = {render(kappa)}; "
                f"then ({render(kappa)}+1) × {render(kappa)} is a clopen piece, and it lacks CSHP "
                f"because Homeo({render(kappa)}+1) has a {render(kappa)}-discrete non-closed subset "
                f"of size {render(kappa)}.",
                factors,
            )
    for j in succs:
        if factors[j] > kappa:
            return CSHPVerdict(
                False,
                Rule.PRODUCT_NEGATIVE,
                Witnesses(
                    kappa=kappa,
                    tau=kappa,
                    factor_index=j,
                    other_index=k_index,
                    compact_part=add(kappa, ONE),
                    violation=f"μ = {render(factors[j])} > κ = {render(kappa)}",
                ),
                f"successor factor {render(factors[j])} exceeds κ = {render(kappa)}; then "
                f"({render(kappa)}+1) × {render(kappa)} is a clopen piece, and it lacks CSHP.",
                factors,
            )
    return CSHPVerdict(
        True,
        Rule.PRODUCT_POSITIVE,
        Witnesses(kappa=kappa),
        f"all limit factors equal κ = {render(kappa)}, an uncountable regular cardinal, "
        f"and every successor factor is at most κ.",
        factors,
    )


def decide_coproduct(a: Ordinal, b: Ordinal) -> CSHPVerdict:
    if a.is_zero or b.is_zero:
        raise DecisionError("a coproduct summand is 0 (empty space)")
    inputs = (a, b)
    swapped = a > b
    lo, hi = (b, a) if swapped else (a, b)
    lo_i, hi_i = (1, 0) if swapped else (0, 1)
    lo_succ = classify(lo) is Kind.SUCCESSOR
    hi_succ = classify(hi) is Kind.SUCCESSOR
    if lo_succ and hi_succ:
        return CSHPVerdict(
            True,
            Rule.COPRODUCT_COMPACT,
            None,
            f"clause (a): {render(lo)} and {render(hi)} are successor ordinals, so the coproduct is compact.",
            inputs,
        )
    if is_regular_uncountable(hi) and (lo == hi or lo_succ):
        if lo == hi:
            text = (
                f"clause (b): {render(hi)} is an uncountable regular cardinal and both summands are equal; "
                f"{render(hi)} ⨿ {render(hi)} ≅ {render(hi)} × 2, which has CSHP."
            )
        else:
            text = (
                f"clause (b): {render(hi)} is an uncountable regular cardinal and {render(lo)} is a "
                f"successor; {render(lo)} ⨿ {render(hi)} ≅ {render(lo)} + {render(hi)} = {render(hi)}."
            )
        return CSHPVerdict(True, Rule.COPRODUCT_ATOM_CLAUSE, Witnesses(kappa=hi), text, inputs)
    # a summand failing on its own is a clopen piece without CSHP
    for idx, s in ((lo_i, lo), (hi_i, hi)):
        if classify(s) is Kind.LIMIT and not is_regular_uncountable(s):
            inner = decide_ordinal(s)
            w = inner.witnesses
            return CSHPVerdict(
                False,
                inner.rule,
                Witnesses(
                    tau=w.tau,
                    alpha=w.alpha,
                    xi=w.xi,
                    factor_index=idx,
                    decomposition=w.decomposition,
                    discrete_points=w.discrete_points,
                    violation=f"summand {render(s)} lacks CSHP",
                ),
                f"summand {render(s)} is a clopen piece of the coproduct and lacks CSHP: {inner.narrative}",
                inputs,
            )
    # lo < hi, lo an atom, hi an atom or successor: lo ⨿ (lo+1) ≅ lo + lo sits inside as a clopen piece
    tau = lo
    return CSHPVerdict(
        False,
        Rule.COPRODUCT_ATOM_CLAUSE,
        Witnesses(
            kappa=hi if is_regular_uncountable(hi) else None,
            tau=tau,
            alpha=tau,
            xi=lo,
            factor_index=lo_i,
            other_index=hi_i,
            compact_part=add(tau, ONE),
            violation=f"{render(lo)} < {render(hi)} with {render(lo)} a limit",
        ),
        f"neither clause holds: {render(lo)} < {render(hi)} and {render(lo)} is a limit. "
        f"{render(lo)} ⨿ ({render(lo)}+1) ≅ {render(mul(lo, natural(2)))} is a clopen piece; with "
        f"Y = {render(lo)}+1 (compact) and Z = {render(lo)} of cofinality tau = {render(tau)}, "
        f"the disjoint union Y ⨿ Z lacks CSHP.",
        inputs,
    )


# -- rendering and serialization -------------------------------------------------


_SHORT = {
    Rule.COMPACT: "compact",
    Rule.PRODUCT_POSITIVE: "Theorem A",
    Rule.PRODUCT_NEGATIVE: "Theorem A",
    Rule.SINGLE_POWER: "Theorem 5.1",
    Rule.SPLIT_SUM: "Corollary 4.5",
    Rule.COPRODUCT_COMPACT: "clause a",
    Rule.COPRODUCT_ATOM_CLAUSE: "clause b",
    Rule.DISCRETE_CLOPEN: "Lemma 2.4(b)",
}


def headline(v: CSHPVerdict) -> str:
    return f"{'YES' if v.has_cshp else 'NO'} ({_SHORT[v.rule]})"


def _witness_items(w: Witnesses) -> list[tuple[str, str]]:
    items = []
    for key in ("kappa", "tau", "alpha", "xi", "compact_part"):
        value = getattr(w, key)
        if value is not None:
            items.append((key, render(value)))
    for key in ("factor_index", "other_index"):
        value = getattr(w, key)
        if value is not None:
            items.append((key, str(value)))
    if w.decomposition is not None:
        items.append(("decomposition", " + ".join(render(from_cnf([(e, c)])) for e, c in w.decomposition)))
    if w.discrete_points is not None:
        items.append(("discrete_points", ", ".join(render(p) for p in w.discrete_points) + ", ..."))
    if w.violation is not None:
        items.append(("violation", w.violation))
    return items


def explain(v: CSHPVerdict) -> str:
    lines = [f"{headline(v)} [{v.rule.value}]", v.narrative]
    if v.witnesses is not None:
        lines.append("witnesses:")
        lines.extend(f"  {k} = {val}" for k, val in _witness_items(v.witnesses))
    return "\n".join(lines)


WITNESS_FIELDS = tuple(Witnesses.__dataclass_fields__)


def verdict_to_json(v: CSHPVerdict) -> dict:
    """Stable JSON record; ordinals are rendered expression strings."""
    witnesses = None
    if v.witnesses is not None:
        witnesses = {}
        for key, value in asdict(v.witnesses).items():
            raw = getattr(v.witnesses, key)
            if raw is None:
                witnesses[key] = None
            elif isinstance(raw, Ordinal):
                witnesses[key] = render(raw)
            elif key == "decomposition":
                witnesses[key] = [[render(e), c] for e, c in raw]
            elif key == "discrete_points":
                witnesses[key] = [render(p) for p in raw]
            else:
                witnesses[key] = value
    return {
        "has_cshp": v.has_cshp,
        "verdict": "YES" if v.has_cshp else "NO",
        "rule": v.rule.value,
        "inputs": [render(x) for x in v.inputs],
        "witnesses": witnesses,
        "narrative": v.narrative,
    }


def verdict_from_json(data: dict) -> CSHPVerdict:
    witnesses = None
    if data.get("witnesses") is not None:
        raw = data["witnesses"]
        kwargs = {}
        for key in WITNESS_FIELDS:
            value = raw.get(key)
            if value is None:
                kwargs[key] = None
            elif key in ("kappa", "tau", "alpha", "xi", "compact_part"):
                kwargs[key] = parse(value)
            elif key == "decomposition":
                kwargs[key] = tuple((parse(e), int(c)) for e, c in value)
            elif key == "discrete_points":
                kwargs[key] = tuple(parse(p) for p in value)
            else:
                kwargs[key] = value
        witnesses = Witnesses(**kwargs)
    return CSHPVerdict(
        bool(data["has_cshp"]),
        Rule(data["rule"]),
        witnesses,
        data.get("narrative", ""),
        tuple(parse(x) for x in data.get("inputs", [])),
    )


def _split_ok(alpha, xi, tau, whole, countable_ok: bool) -> bool:
    if alpha is None or xi is None or tau is None:
        return False
    if classify(xi) is not Kind.LIMIT or cofinality(xi) != tau:
        return False
    if add(alpha, xi) != whole:
        return False
    return countable_ok and tau == OMEGA or not alpha < tau


def revalidate(v: CSHPVerdict) -> bool:
    """Re-check the arithmetic facts a negative verdict's witnesses assert."""
    if v.has_cshp:
        return True
    w = v.witnesses
    if w is None:
        return False
    if v.rule in (Rule.SPLIT_SUM, Rule.SINGLE_POWER, Rule.DISCRETE_CLOPEN):
        whole = from_cnf(w.decomposition) if w.decomposition is not None else add(w.alpha, w.xi)
        if w.factor_index is not None and v.inputs and v.inputs[w.factor_index] != whole:
            return False
        if not _split_ok(w.alpha, w.xi, w.tau, whole, v.rule is Rule.DISCRETE_CLOPEN):
            return False
        if w.discrete_points is not None:
            pts = w.discrete_points
            if any(classify(p) is not Kind.SUCCESSOR or not p < whole for p in pts):
                return False
            if any(not pts[i] < pts[i + 1] for i in range(len(pts) - 1)):
                return False
        return True
    if v.rule is Rule.PRODUCT_NEGATIVE:
        if w.kappa is None or classify(w.kappa) is not Kind.LIMIT:
            return False
        if w.xi is not None:
            return not is_regular_uncountable(w.kappa) and _split_ok(
                w.alpha, w.xi, w.tau, w.kappa, True
            )
        if not is_regular_uncountable(w.kappa) or not v.inputs:
            return False
        return v.inputs[w.factor_index] > w.kappa
    if v.rule is Rule.COPRODUCT_ATOM_CLAUSE:
        lo = w.xi
        if lo is None or not is_regular_uncountable(lo) or w.tau != lo:
            return False
        if v.inputs and not v.inputs[w.factor_index] < v.inputs[w.other_index]:
            return False
        # lo ⨿ (lo + 1) ≅ lo + lo, which is not a cardinal
        return mul(lo, natural(2)) != lo
    return False


__all__ = [
    "Rule",
    "Witnesses",
    "CSHPVerdict",
    "DecisionError",
    "decide_ordinal",
    "decide_product",
    "decide_coproduct",
    "explain",
    "headline",
    "verdict_to_json",
    "verdict_from_json",
    "revalidate",
]
