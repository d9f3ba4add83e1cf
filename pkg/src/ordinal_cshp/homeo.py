"""Evaluators for explicit homeomorphisms of ordinal intervals ``[0, alpha]``.

Three families are implemented:

* transpositions swapping the isolated points ``a+1`` and ``a+2``;
* the maps ``f_delta`` on ``[0, w^beta]`` that permute the ``w^b``-blocks of
  each ``w^(b+1)``-block (``b = beta_delta``) by a bijection ``phi`` of the
  naturals with ``phi(0) != 0``;
* the conjugates ``Psi_delta(f)``, which are the identity on ``[0, w^b]`` and
  transport ``f`` onto ``[w^b + 1, alpha]`` through ``x -> w^b + 1 + x``.

Continuity is not checked here; everything is exact pointwise evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arithmetic import (
    add,
    canonical_cofinal,
    decompose_base,
    left_subtract,
    omega_pow,
    recompose_base,
)
from .notation import ONE, ZERO, Kind, Ordinal, classify, natural, render


class DomainError(ValueError):
    """Point or parameter outside the domain of a map."""


@dataclass(frozen=True)
class FiniteSupportPermutation:
    """A bijection of the naturals moving finitely many points.

    Given as disjoint cycles; unmentioned naturals are fixed.  The maps built
    from it need ``phi(0) != 0``, so 0 must lie on a non-trivial cycle.
    """

    cycles: tuple[tuple[int, ...], ...]
    _forward: dict = field(init=False, repr=False, compare=False)
    _backward: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cycles = tuple(tuple(int(p) for p in c) for c in self.cycles if len(c) > 1)
        seen: set[int] = set()
        forward: dict[int, int] = {}
        for cyc in cycles:
            for p in cyc:
                if p < 0:
                    raise ValueError("cycle entries must be naturals")
                if p in seen:
                    raise ValueError(f"cycles are not disjoint (repeated {p})")
                seen.add(p)
            for i, p in enumerate(cyc):
                forward[p] = cyc[(i + 1) % len(cyc)]
        if forward.get(0, 0) == 0:
            raise ValueError("phi(0) must differ from 0")
        object.__setattr__(self, "cycles", cycles)
        object.__setattr__(self, "_forward", forward)
        object.__setattr__(self, "_backward", {v: k for k, v in forward.items()})

    @classmethod
    def swap(cls, a: int = 0, b: int = 1) -> "FiniteSupportPermutation":
        return cls(((a, b),))

    @classmethod
    def parse(cls, text: str) -> "FiniteSupportPermutation":
        """Read cycle notation such as ``"(0 1)(2 5 3)"`` or ``"0 1"``."""
        text = text.strip()
        if "(" not in text:
            return cls((tuple(int(t) for t in text.replace(",", " ").split()),))
        cycles = []
        for chunk in text.split(")"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if not chunk.startswith("("):
                raise ValueError(f"bad cycle notation: {text!r}")
            cycles.append(tuple(int(t) for t in chunk[1:].replace(",", " ").split()))
        return cls(tuple(cycles))

    def __call__(self, n: int) -> int:
        return self._forward.get(n, n)

    def inverse(self) -> "FiniteSupportPermutation":
        return FiniteSupportPermutation(tuple(tuple(reversed(c)) for c in self.cycles))

    def apply_inverse(self, n: int) -> int:
        return self._backward.get(n, n)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._forward)

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles)


@dataclass(frozen=True)
class FDeltaSpec:
    """Parameters of one ``f_delta``: ``beta`` limit, ``beta_delta < beta``.

    When ``beta_delta`` is omitted it is taken from the canonical fundamental
    sequence of ``beta`` at ``delta``.
    """

    beta: Ordinal
    delta: Ordinal
    phi: FiniteSupportPermutation
    beta_delta: Ordinal | None = None
    alpha: Ordinal = field(init=False, compare=False)

    def __post_init__(self):
        if classify(self.beta) is not Kind.LIMIT:
            raise DomainError(f"beta = {render(self.beta)} must be a limit ordinal")
        if self.beta_delta is None:
            object.__setattr__(self, "beta_delta", canonical_cofinal(self.beta, self.delta))
        if not self.beta_delta < self.beta:
            raise DomainError(
                f"beta_delta = {render(self.beta_delta)} must lie below beta = {render(self.beta)}"
            )
        object.__setattr__(self, "alpha", omega_pow(self.beta))

    @property
    def rho(self) -> Ordinal:
        """The ``rho`` with ``beta = beta_delta + 1 + rho``."""
        return left_subtract(add(self.beta_delta, ONE), self.beta)


def transposition_eval(alpha_n: Ordinal, x: Ordinal) -> Ordinal:
    """Swap ``alpha_n + 1`` and ``alpha_n + 2``; fix everything else."""
    first = add(alpha_n, ONE)
    second = add(alpha_n, natural(2))
    if x == first:
        return second
    if x == second:
        return first
    return x


def f_delta_eval(spec: FDeltaSpec, x: Ordinal, direction: str = "forward") -> Ordinal:
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")
    if x > spec.alpha:
        raise DomainError(f"{render(x)} lies beyond alpha = {render(spec.alpha)}")
    if x == spec.alpha:
        return x
    perm = spec.phi if direction == "forward" else spec.phi.apply_inverse
    b = spec.beta_delta
    eps, m, eta = decompose_base(x, b)
    if not eta.is_zero:
        return recompose_base(eps, perm(m), eta, b)
    if m > 0:
        return recompose_base(eps, perm(m - 1) + 1, ZERO, b)
    return x


def probe_point(beta_gamma: Ordinal) -> Ordinal:
    """The isolated point ``w^(beta_gamma + 1) + 1``."""
    return add(omega_pow(add(beta_gamma, ONE)), ONE)


def probe_image(spec: FDeltaSpec, beta_gamma: Ordinal) -> Ordinal:
    if not (spec.beta_delta <= beta_gamma < spec.beta):
        raise DomainError(
            f"need beta_delta <= beta_gamma < beta, got beta_gamma = {render(beta_gamma)}"
        )
    return f_delta_eval(spec, probe_point(beta_gamma))


# -- homeomorphism values ------------------------------------------------------


class Homeo:
    """A homeomorphism of ``[0, alpha]`` given by parameters, evaluable pointwise."""

    alpha: Ordinal

    def __call__(self, x: Ordinal) -> Ordinal:
        raise NotImplementedError

    def inverse(self) -> "Homeo":
        raise NotImplementedError

    def _check(self, x: Ordinal) -> None:
        if x > self.alpha:
            raise DomainError(f"{render(x)} lies beyond alpha = {render(self.alpha)}")


@dataclass(frozen=True)
class Identity(Homeo):
    alpha: Ordinal

    def __call__(self, x):
        self._check(x)
        return x

    def inverse(self):
        return self


@dataclass(frozen=True)
class Transposition(Homeo):
    point: Ordinal
    alpha: Ordinal

    def __post_init__(self):
        if not add(self.point, natural(2)) < self.alpha:
            raise DomainError("transposed points must lie below alpha")

    def __call__(self, x):
        self._check(x)
        return transposition_eval(self.point, x)

    def inverse(self):
        return self


@dataclass(frozen=True)
class FDelta(Homeo):
    spec: FDeltaSpec
    inverted: bool = False

    @property
    def alpha(self) -> Ordinal:  # type: ignore[override]
        return self.spec.alpha

    def __call__(self, x):
        return f_delta_eval(self.spec, x, "inverse" if self.inverted else "forward")

    def inverse(self):
        return FDelta(self.spec, not self.inverted)


@dataclass(frozen=True)
class PsiConjugate(Homeo):
    """``Psi_b(inner)``: identity up to ``w^b``, conjugated copy of ``inner`` above."""

    beta_delta: Ordinal
    inner: Homeo

    def __post_init__(self):
        shift = add(omega_pow(self.beta_delta), ONE)
        if add(shift, self.inner.alpha) != self.inner.alpha:
            raise DomainError(
                f"shift by w^{render(self.beta_delta)} + 1 does not preserve [0, {render(self.inner.alpha)}]"
            )

    @property
    def alpha(self) -> Ordinal:  # type: ignore[override]
        return self.inner.alpha

    def __call__(self, x):
        return psi_conjugate_eval(self.beta_delta, self.inner, x)

    def inverse(self):
        return PsiConjugate(self.beta_delta, self.inner.inverse())


def psi_conjugate_eval(beta_delta: Ordinal, inner: Homeo, x: Ordinal) -> Ordinal:
    if x > inner.alpha:
        raise DomainError(f"{render(x)} lies beyond alpha = {render(inner.alpha)}")
    corner = omega_pow(beta_delta)
    if x <= corner:
        return x
    shift = add(corner, ONE)
    return add(shift, inner(left_subtract(shift, x)))


@dataclass(frozen=True)
class HypothesisCheck:
    """Outcome of :func:`prop41_hypothesis_check`; truthy when it holds."""

    holds: bool
    j0: int | None
    label: object = None

    def __bool__(self) -> bool:
        return self.holds


def prop41_hypothesis_check(
    family: Sequence[tuple[object, Homeo]],
    xi: Ordinal,
    samples: Iterable[Ordinal],
) -> HypothesisCheck:
    """Find the first position ``j0`` after which every member fixes the samples.

    ``family`` is ordered; the first entry of each pair is a label reported
    back for ``j0``.  The check holds when such a ``j0`` exists inside the
    family (so at least the last member fixes all samples).  An empty family
    holds vacuously with ``j0 = 0``.
    """
    samples = list(samples)
    for s in samples:
        if s > xi:
            raise DomainError(f"sample {render(s)} exceeds xi = {render(xi)}")
    if not family:
        return HypothesisCheck(True, 0)
    j0 = len(family)
    for j in range(len(family) - 1, -1, -1):
        h = family[j][1]
        if any(h(s) != s for s in samples):
            break
        j0 = j
    if j0 == len(family):
        return HypothesisCheck(False, None)
    return HypothesisCheck(True, j0, family[j0][0])


# -- families used for tau-discrete sets ----------------------------------------


def transposition_family(alpha: Ordinal, count: int) -> list[tuple[Ordinal, Transposition]]:
    """Transpositions along the canonical sequence of a limit of cofinality ``w``."""
    out = []
    for n in range(count):
        point = canonical_cofinal(alpha, natural(n))
        out.append((point, Transposition(point, alpha)))
    return out


def discrete_family(
    beta: Ordinal,
    deltas: Sequence[Ordinal],
    phis: Sequence[FiniteSupportPermutation] | FiniteSupportPermutation | None = None,
) -> list[tuple[Ordinal, PsiConjugate]]:
    """``h_delta = Psi_delta(f_delta)`` for each index in ``deltas``."""
    if phis is None:
        phis = FiniteSupportPermutation.swap()
    if isinstance(phis, FiniteSupportPermutation):
        phis = [phis] * len(deltas)
    out = []
    for delta, phi in zip(deltas, phis):
        spec = FDeltaSpec(beta, delta, phi)
        out.append((delta, PsiConjugate(spec.beta_delta, FDelta(spec))))
    return out


__all__ = [
    "DomainError",
    "FiniteSupportPermutation",
    "FDeltaSpec",
    "Homeo",
    "Identity",
    "Transposition",
    "FDelta",
    "PsiConjugate",
    "HypothesisCheck",
    "transposition_eval",
    "f_delta_eval",
    "probe_point",
    "probe_image",
    "psi_conjugate_eval",
    "prop41_hypothesis_check",
    "transposition_family",
    "discrete_family",
]
