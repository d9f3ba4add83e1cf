"""Finite models for tau-discreteness, final topologies and cofinal thinning.

Points of a :class:`FiniteSpace` are ``0 .. n-1``.  Internally subsets are
bitmasks; the public API takes any iterable of ints and returns frozensets.
``tau`` is a positive natural throughout.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence


def _mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def _members(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _close(n: int, family: Iterable[int]) -> frozenset[int]:
    """Smallest topology (as masks) containing ``family``."""
    full = (1 << n) - 1
    opens = {0, full}
    opens.update(family)
    changed = True
    while changed:
        changed = False
        current = list(opens)
        for a, b in itertools.combinations(current, 2):
            for c in (a | b, a & b):
                if c not in opens:
                    opens.add(c)
                    changed = True
    return frozenset(opens)


@dataclass(frozen=True)
class FiniteSpace:
    """A finite topological space; ``opens`` must already form a topology."""

    n: int
    opens: frozenset[frozenset[int]]

    def __post_init__(self):
        opens = frozenset(frozenset(int(p) for p in o) for o in self.opens)
        object.__setattr__(self, "opens", opens)
        masks = {_mask(o) for o in opens}
        full = (1 << self.n) - 1
        if any(m & ~full for m in masks):
            raise ValueError("open set mentions a point outside the space")
        if 0 not in masks or full not in masks:
            raise ValueError("topology must contain the empty set and the whole space")
        for a, b in itertools.combinations(masks, 2):
            if (a | b) not in masks or (a & b) not in masks:
                raise ValueError("open sets are not closed under union and intersection")

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "FiniteSpace":
        return cls(n, frozenset(_members(m) for m in masks))

    @classmethod
    def generated(cls, n: int, subbase: Iterable[Iterable[int]]) -> "FiniteSpace":
        return cls.from_masks(n, _close(n, (_mask(s) for s in subbase)))

    @classmethod
    def discrete(cls, n: int) -> "FiniteSpace":
        return cls.from_masks(n, range(1 << n))

    @classmethod
    def indiscrete(cls, n: int) -> "FiniteSpace":
        return cls.from_masks(n, {0, (1 << n) - 1})

    @classmethod
    def sierpinski(cls) -> "FiniteSpace":
        """Two points ``a = 0``, ``b = 1`` with opens ``{}, {a}, {a, b}``."""
        return cls(2, frozenset({frozenset(), frozenset({0}), frozenset({0, 1})}))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def open_masks(self) -> frozenset[int]:
        return frozenset(_mask(o) for o in self.opens)

    @cached_property
    def closed_masks(self) -> frozenset[int]:
        return frozenset(self.full & ~m for m in self.open_masks)

    def is_open(self, subset: Iterable[int]) -> bool:
        return _mask(subset) in self.open_masks

    def is_closed(self, subset: Iterable[int]) -> bool:
        return _mask(subset) in self.closed_masks

    def closure(self, subset: Iterable[int]) -> frozenset[int]:
        m = _mask(subset)
        best = self.full
        for c in self.closed_masks:
            if c & m == m:
                best &= c
        return _members(best)

    def trace(self, piece: int) -> frozenset[int]:
        """Open sets of the subspace ``piece`` (a mask)."""
        return frozenset(o & piece for o in self.open_masks)

    def __str__(self) -> str:
        opens = sorted((sorted(o) for o in self.opens), key=lambda s: (len(s), s))
        return f"points: {self.n}; opens: " + " ".join("{" + ",".join(map(str, o)) + "}" for o in opens)


def _check_subset(X: FiniteSpace, subset: Iterable[int]) -> int:
    m = _mask(subset)
    if m & ~X.full:
        raise ValueError("subset mentions a point outside the space")
    return m


def is_tau_discrete(X: FiniteSpace, S: Iterable[int], tau: int) -> bool:
    """Every subset of ``S`` with fewer than ``tau`` points is closed in ``X``."""
    s = _check_subset(X, S)
    return all(
        a in X.closed_masks for a in _submasks(s) if _popcount(a) < tau
    )


def _final_masks(X: FiniteSpace, pieces: Iterable[int]) -> frozenset[int]:
    traces = [(p, X.trace(p)) for p in pieces]
    return frozenset(
        u for u in range(X.full + 1) if all((u & p) in tr for p, tr in traces)
    )


def final_topology(X: FiniteSpace, pieces: Iterable[Iterable[int]]) -> FiniteSpace:
    """Finest topology making every subspace inclusion continuous (no validation)."""
    return FiniteSpace.from_masks(X.n, _final_masks(X, [_mask(p) for p in pieces]))


def subtau_topology(X: FiniteSpace, tau: int) -> FiniteSpace:
    """Final topology for the subspaces of fewer than ``tau`` points.

    With ``tau = 1`` only the empty subspace takes part and every set is open.
    """
    if tau < 1:
        raise ValueError("tau must be positive")
    small = [m for m in range(X.full + 1) if _popcount(m) < tau]
    return FiniteSpace.from_masks(X.n, _final_masks(X, small))


def _validate_cover(X: FiniteSpace, cover, directed: bool) -> list[int]:
    pieces = [_check_subset(X, p) for p in cover]
    if not pieces:
        raise ValueError("cover is empty")
    union = 0
    for p in pieces:
        union |= p
    if union != X.full:
        raise ValueError("pieces do not cover the space")
    if directed:
        for a, b in itertools.combinations(pieces, 2):
            if not any((a | b) & ~c == 0 for c in pieces):
                raise ValueError(
                    f"cover is not directed: no piece contains {sorted(_members(a))} and {sorted(_members(b))}"
                )
    return pieces


def colimit_topology(X: FiniteSpace, cover, directed: bool = True) -> FiniteSpace:
    """Final topology for a covering family of subspaces.

    Directedness is checked unless ``directed=False``.  A finite directed
    cover always contains the whole space, so only undirected covers can
    produce a strictly finer topology.
    """
    pieces = _validate_cover(X, cover, directed)
    return FiniteSpace.from_masks(X.n, _final_masks(X, pieces))


@dataclass(frozen=True)
class ColimitCertificate:
    """A set closed in every piece but not in the base space."""

    witness: frozenset[int]
    pieces: tuple[frozenset[int], ...]
    closed_in_piece: tuple[bool, ...]
    closure: frozenset[int]

    def validate(self, X: FiniteSpace) -> bool:
        s = _mask(self.witness)
        for piece, flag in zip(self.pieces, self.closed_in_piece):
            p = _mask(piece)
            closed_traces = {p & ~o for o in X.trace(p)}
            if flag != ((s & p) in closed_traces):
                return False
        return (
            all(self.closed_in_piece)
            and not X.is_closed(self.witness)
            and X.closure(self.witness) == self.closure
            and self.closure != self.witness
        )


def notcolim_witness(X: FiniteSpace, cover, directed: bool = True) -> ColimitCertificate | None:
    pieces = _validate_cover(X, cover, directed)
    colim = _final_masks(X, pieces)
    if colim == X.open_masks:
        return None
    s = X.full & ~min(colim - X.open_masks)
    return ColimitCertificate(
        witness=_members(s),
        pieces=tuple(_members(p) for p in pieces),
        closed_in_piece=tuple((s & p) in {p & ~o for o in X.trace(p)} for p in pieces),
        closure=X.closure(_members(s)),
    )


def finer_colimit_hypotheses(X: FiniteSpace, cover, S: Iterable[int], tau: int) -> bool:
    """``S`` tau-discrete, meets every piece in fewer than ``tau`` points, not closed."""
    pieces = [_check_subset(X, p) for p in cover]
    s = _check_subset(X, S)
    return (
        is_tau_discrete(X, S, tau)
        and all(_popcount(s & p) < tau for p in pieces)
        and s not in X.closed_masks
    )


def _closed_and_discrete(T: FiniteSpace, s: int) -> bool:
    if s not in T.closed_masks:
        return False
    traces = T.trace(s)
    return all((1 << i) in traces for i in range(T.n) if s >> i & 1)


def tau_discrete_sides(X: FiniteSpace, S: Iterable[int], tau: int) -> tuple[bool, bool]:
    """(tau-discrete in X, closed and discrete in the <tau topology)."""
    s = _check_subset(X, S)
    return is_tau_discrete(X, S, tau), _closed_and_discrete(subtau_topology(X, tau), s)


def check_prop21(X: FiniteSpace, S: Iterable[int], tau: int) -> bool:
    lhs, rhs = tau_discrete_sides(X, S, tau)
    return lhs == rhs


def is_continuous(X: FiniteSpace, Y: FiniteSpace, f: Sequence[int]) -> bool:
    if len(f) != X.n or any(not 0 <= v < Y.n for v in f):
        raise ValueError("map must send every point of X into Y")
    for o in Y.open_masks:
        pre = _mask(i for i in range(X.n) if o >> f[i] & 1)
        if pre not in X.open_masks:
            return False
    return True


def check_prop22(
    X: FiniteSpace, Y: FiniteSpace, f: Sequence[int], S: Iterable[int], tau: int
) -> bool:
    """If ``f(S)`` is tau-discrete in ``Y`` then ``S`` is tau-discrete in ``X``."""
    S = sorted(set(S))
    if not is_continuous(X, Y, f):
        raise ValueError("f is not continuous")
    image = [f[s] for s in S]
    if len(set(image)) != len(image):
        raise ValueError("f is not injective on S")
    if not is_tau_discrete(Y, image, tau):
        return True
    return is_tau_discrete(X, S, tau)


# -- enumeration ---------------------------------------------------------------


def enumerate_topologies(n: int) -> Iterator[FiniteSpace]:
    """Every topology on ``n`` labeled points, by brute force over families.

    Feasible for ``n <= 4`` (2^14 candidate families).
    """
    if n > 4:
        raise ValueError("brute-force enumeration is limited to 4 points")
    full = (1 << n) - 1
    middle = [m for m in range(1, full)]
    seen = set()
    for bits in range(1 << len(middle)):
        fam = {0, full} | {m for i, m in enumerate(middle) if bits >> i & 1}
        if all((a | b) in fam and (a & b) in fam for a, b in itertools.combinations(fam, 2)):
            key = frozenset(fam)
            if key not in seen:
                seen.add(key)
                yield FiniteSpace.from_masks(n, key)


def random_topology(n: int, rng: random.Random, generators: int | None = None) -> FiniteSpace:
    full = (1 << n) - 1
    k = rng.randint(0, 2 * n) if generators is None else generators
    return FiniteSpace.from_masks(n, _close(n, (rng.randint(0, full) for _ in range(k))))


# -- posets --------------------------------------------------------------------


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class EnumeratedPoset:
    """Finite poset with an enumeration of a designated subset ``C``.

    ``le`` holds the pairs ``(a, b)`` with ``a <= b`` and must be a partial
    order.  The enumeration order matters: thinning picks by first index.
    """

    elements: tuple[Hashable, ...]
    le: frozenset[tuple[Hashable, Hashable]]
    enumeration: tuple[Hashable, ...]

    def __post_init__(self):
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise PosetError("duplicate elements")
        for a, b in self.le:
            if a not in elems or b not in elems:
                raise PosetError(f"relation mentions unknown element in ({a!r}, {b!r})")
        for a in self.elements:
            if (a, a) not in self.le:
                raise PosetError(f"relation is not reflexive at {a!r}")
        for a, b in self.le:
            if a != b and (b, a) in self.le:
                raise PosetError(f"relation is not antisymmetric: {a!r}, {b!r}")
        for a, b in self.le:
            for c in self.elements:
                if (b, c) in self.le and (a, c) not in self.le:
                    raise PosetError(f"relation is not transitive: {a!r} <= {b!r} <= {c!r}")
        if len(set(self.enumeration)) != len(self.enumeration):
            raise PosetError("enumeration is not injective")
        for c in self.enumeration:
            if c not in elems:
                raise PosetError(f"enumeration lists unknown element {c!r}")

    @classmethod
    def from_relation(
        cls,
        elements: Sequence[Hashable],
        pairs: Iterable[tuple[Hashable, Hashable]],
        enumeration: Sequence[Hashable] | None = None,
    ) -> "EnumeratedPoset":
        """Reflexive-transitive closure of ``pairs``; enumeration defaults to all elements."""
        elements = tuple(elements)
        le = {(a, a) for a in elements} | set(pairs)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(le), repeat=2):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
        return cls(elements, frozenset(le), tuple(elements if enumeration is None else enumeration))

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return (a, b) in self.le

    def with_enumeration(self, enumeration: Sequence[Hashable]) -> "EnumeratedPoset":
        return EnumeratedPoset(self.elements, self.le, tuple(enumeration))

    def is_cofinal(self, subset: Iterable[Hashable]) -> bool:
        subset = list(subset)
        return all(any(self.leq(x, c) for c in subset) for x in self.elements)


def cofinal_thin(P: EnumeratedPoset) -> list[Hashable]:
    """Thin the enumerated cofinal set to one whose members have few predecessors.

    Picks ``alpha_0 = 0`` and then, repeatedly, the least index whose element
    lies below none of the elements picked so far, stopping when no index
    qualifies.  The result is cofinal and no later pick lies below an earlier
    one.
    """
    C = P.enumeration
    if not C or not P.is_cofinal(C):
        raise PosetError("enumerated set is not cofinal")
    picked = [0]
    while True:
        candidates = (
            a for a in range(len(C)) if all(not P.leq(C[a], C[b]) for b in picked)
        )
        nxt = next(candidates, None)
        if nxt is None:
            break
        picked.append(nxt)
    return [C[a] for a in picked]


def index_monotone(P: EnumeratedPoset, J: Sequence[Hashable]) -> bool:
    """``J[g] <= J[b]`` implies ``g <= b``."""
    return all(
        not P.leq(J[g], J[b]) for b in range(len(J)) for g in range(b + 1, len(J))
    )


def enumerate_posets(n: int) -> Iterator[EnumeratedPoset]:
    """All naturally labeled posets on ``0 .. n-1`` (``i <= j`` only if ``i < j`` as ints).

    Every finite poset has a linear extension, so each isomorphism class
    occurs at least once.
    """
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    for bits in range(1 << len(pairs)):
        rel = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        closure = _transitive_closure(n, rel)
        if closure in seen:
            continue
        seen.add(closure)
        le = frozenset(closure | {(i, i) for i in range(n)})
        yield EnumeratedPoset(tuple(range(n)), le, tuple(range(n)))


def _transitive_closure(n: int, rel) -> frozenset[tuple[int, int]]:
    reach = [0] * n
    for a, b in rel:
        reach[a] |= 1 << b
    # pairs only go upward, so process from the top down
    for a in range(n - 1, -1, -1):
        r = reach[a]
        acc = r
        for b in range(a + 1, n):
            if r >> b & 1:
                acc |= reach[b]
        reach[a] = acc
    return frozenset((a, b) for a in range(n) for b in range(n) if reach[a] >> b & 1)


# -- text / JSON input -----------------------------------------------------------


def _split_ints(text: str) -> list[int]:
    text = text.replace(",", " ").strip()
    return [int(t) for t in text.split()] if text else []


def _load_json_or_lines(text: str) -> tuple[Mapping | None, list[tuple[str, str]]]:
    stripped = text.strip()
    if stripped.startswith("{"):
        return json.loads(stripped), []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key, value = line.split(":", 1)
        lines.append((key.strip().lower(), value.strip()))
    return None, lines


def load_space(text: str) -> tuple[FiniteSpace, list[frozenset[int]]]:
    """Read a space and an optional cover.

    Line format: ``points: n``, any number of ``open: i,j,k`` lines (a
    subbase; the generated topology is used) and ``piece: i,j`` lines for the
    cover.  JSON: ``{"points": n, "opens": [[...]], "cover": [[...]]}``
    (``open`` and ``pieces`` are accepted as key aliases).
    """
    data, lines = _load_json_or_lines(text)
    if data is not None:
        n = int(data["points"])
        subbase = [list(o) for o in data.get("opens", data.get("open", []))]
        cover = [frozenset(p) for p in data.get("cover", data.get("pieces", []))]
    else:
        n, subbase, cover = None, [], []
        for key, value in lines:
            if key == "points":
                n = int(value)
            elif key == "open":
                subbase.append(_split_ints(value))
            elif key == "piece":
                cover.append(frozenset(_split_ints(value)))
            else:
                raise ValueError(f"unknown key {key!r}")
        if n is None:
            raise ValueError("missing 'points:' line")
    return FiniteSpace.generated(n, subbase), cover


def load_poset(text: str) -> EnumeratedPoset:
    """Read a poset.

    Line format: optional ``elements: a b c`` (or ``points: n`` for
    ``0 .. n-1``), ``le: a b`` lines, and an optional ``enum: c0 c1 ...``
    giving the enumeration of the cofinal set (default: all elements in
    order).  The relation is closed reflexively and transitively.  JSON:
    ``{"elements": [...], "le": [[a, b], ...], "enumeration": [...]}``
    (``enum`` is accepted as an alias).
    """
    data, lines = _load_json_or_lines(text)
    if data is not None:
        if "elements" in data:
            elements = list(data["elements"])
        else:
            elements = list(range(int(data["points"])))
        pairs = [tuple(p) for p in data.get("le", [])]
        enumeration = data.get("enumeration", data.get("enum"))
    else:
        elements, pairs, enumeration = [], [], None
        for key, value in lines:
            if key == "points":
                elements = [str(i) for i in range(int(value))]
            elif key == "elements":
                elements = value.replace(",", " ").split()
            elif key == "le":
                parts = value.replace(",", " ").split()
                if len(parts) != 2:
                    raise ValueError(f"'le:' needs two elements, got {value!r}")
                pairs.append((parts[0], parts[1]))
            elif key in ("enum", "enumeration"):
                enumeration = value.replace(",", " ").split()
            else:
                raise ValueError(f"unknown key {key!r}")
        for a, b in pairs:
            for x in (a, b):
                if x not in elements:
                    elements.append(x)
    return EnumeratedPoset.from_relation(elements, pairs, enumeration)
