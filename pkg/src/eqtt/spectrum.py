"""Primes ``P(H, p, n)`` of compact G-spectra as index triples, and their inclusions.

A point is a :class:`TTPrime` ``(cls, char, level)``: a subgroup class id, a
prime (or 0) and a chromatic level ``1 <= level <= INF``.  Level 1 is
characteristic-free and is always stored with ``char = 0``.

:func:`inclusion` decides ``Q ⊆ P``.  Inside the band where the shift along a
p-subnormal tower of length ``s >= 2`` is not pinned down, unconditional mode
answers ``unknown`` and conjectural mode (shift exactly ``s``) answers ``no``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from eqtt.burnside import BurnsidePrime, p_point, zero_point
from eqtt.groups import (EqttError, PermGroup, Subgroup, SubgroupClass,
                         is_subconjugate, resolve_class)
from eqtt.pstructure import (_require_prime, o_p_core, p_adic_log,
                             prime_divisors)

INF = math.inf


class SpectrumError(EqttError):
    pass


class TopologyUndetermined(SpectrumError):
    """The query depends on an inclusion the unconditional oracle leaves open."""


class Mode(str, enum.Enum):
    CONJECTURAL = "conjectural"
    UNCONDITIONAL = "unconditional"


def _level_str(n) -> str:
    return "inf" if n == INF else str(int(n))


def parse_level(text) -> int | float:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        if text == INF:
            return INF
        if int(text) == text and text >= 1:
            return int(text)
        raise SpectrumError(f"invalid chromatic level {text!r}")
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "oo", "∞"):
        return INF
    try:
        n = int(t)
    except ValueError:
        raise SpectrumError(f"invalid chromatic level {text!r}") from None
    if n < 1:
        raise SpectrumError(f"chromatic level must be >= 1, got {n}")
    return n


@dataclass(frozen=True, order=True)
class TTPrime:
    cls: int
    char: int
    level: int | float

    def __post_init__(self):
        if (self.level == 1) != (self.char == 0):
            raise SpectrumError(f"non-canonical prime {self}: level 1 iff char 0")
        if self.level != INF and (int(self.level) != self.level or self.level < 1):
            raise SpectrumError(f"invalid chromatic level {self.level}")

    def label(self, G: PermGroup | None = None) -> str:
        c = G.classes[self.cls].name if G is not None else str(self.cls)
        return f"P({c},{self.char},{_level_str(self.level)})"


@dataclass(frozen=True)
class ThreeValued:
    verdict: str
    band: tuple[int, int] | None = None

    def __str__(self) -> str:
        if self.verdict == "unknown":
            return f"unknown [{self.band[0]},{self.band[1]}]"
        return self.verdict

    @property
    def yes(self) -> bool:
        return self.verdict == "yes"

    @property
    def no(self) -> bool:
        return self.verdict == "no"

    @property
    def unknown(self) -> bool:
        return self.verdict == "unknown"


YES = ThreeValued("yes")
NO = ThreeValued("no")


def _class_id(G: PermGroup, H) -> int:
    if isinstance(H, Subgroup):
        return G.class_of(H)
    if isinstance(H, SubgroupClass):
        return H.id
    if isinstance(H, str):
        return resolve_class(G, H).id
    k = int(H)
    if not 0 <= k < len(G.classes):
        raise SpectrumError(f"class id {k} out of range")
    return k


def make_prime(G: PermGroup, H, p: int, n) -> TTPrime:
    """Canonical ``P(H, p, n)``; ``H`` may be a Subgroup, class, class id or name."""
    n = parse_level(n)
    k = _class_id(G, H)
    if n == 1:
        if p != 0:
            _require_prime(p)
        return TTPrime(k, 0, 1)
    if p == 0:
        raise SpectrumError("characteristic 0 only occurs at level 1")
    _require_prime(p)
    return TTPrime(k, p, n)


def subnormal_shift(G: PermGroup, k: int, h: int, p: int) -> int | None:
    """``log_p(|H|/|K|)`` if class ``k`` is G-conjugate to a p-subnormal subgroup
    of the representative ``H`` of class ``h``; otherwise None."""
    cache = G.__dict__.setdefault("_subnormal_shift", {})
    key = (k, h, p)
    if key in cache:
        return cache[key]
    K, H = G.classes[k], G.classes[h]
    out = None
    if H.order % K.order == 0 and p_adic_log(H.order // K.order, p) is not None:
        core = o_p_core(H.representative, p)
        Hrep = H.representative
        for Kc in K.conjugates:
            if Kc.issubset(Hrep) and core.issubset(Kc):
                out = p_adic_log(H.order // K.order, p)
                break
    cache[key] = out
    return out


def _check_point(G: PermGroup, P: TTPrime) -> None:
    if not 0 <= P.cls < len(G.classes):
        raise SpectrumError(f"{P} does not belong to {G!r}")


def inclusion(G: PermGroup, Q: TTPrime, P: TTPrime, mode=Mode.CONJECTURAL) -> ThreeValued:
    """Decide ``Q ⊆ P`` for ``Q = P(K,q,n)`` and ``P = P(H,p,m)``."""
    mode = Mode(mode)
    _check_point(G, Q)
    _check_point(G, P)
    if Q == P:
        return YES
    k, q, n = Q.cls, Q.char, Q.level
    h, p, m = P.cls, P.char, P.level
    if k == h:
        return YES if n >= m and (m == 1 or q == p) else NO
    if n == 1 and m == 1:
        return NO
    if m >= 2 and n >= 2 and q != p:
        return NO
    r = p if m >= 2 else q
    s = subnormal_shift(G, k, h, r)
    if s is None:
        return NO
    if n == INF:
        return YES
    if m == INF:
        return NO
    if n >= m + s:
        return YES
    if n <= m:
        return NO
    if mode is Mode.CONJECTURAL:
        return NO
    return ThreeValued("unknown", (int(m) + 1, int(m) + s - 1))


def n_min_bounds(G: PermGroup, K, H, p: int, m) -> tuple:
    """Bounds ``[lo, hi]`` on the least level ``n`` with ``P(K,p,n) ⊆ P(H,p,m)``."""
    k, h = _class_id(G, K), _class_id(G, H)
    m = parse_level(m)
    s = subnormal_shift(G, k, h, p)
    if s is None:
        raise SpectrumError("K is not conjugate to a p-subnormal subgroup of H")
    if m == INF:
        return (INF, INF)
    return (m if k == h else m + 1, m + s)


def is_square_free(n: int) -> bool:
    return all(n % (d * d) for d in prime_divisors(n))


class SpectrumPoset:
    """The finite truncation of the spectrum with its inclusion relation.

    ``edges`` holds the Hasse diagram: covering yes-inclusions plus unknown
    pairs that are covers of the yes-or-unknown relation.  ``relation`` holds
    every non-``no`` verdict for ordered pairs of distinct points.
    """

    def __init__(self, group: PermGroup, primes, height: int, infinity: bool,
                 mode, points: list[TTPrime], relation: dict[tuple[int, int], ThreeValued]):
        self.group = group
        self.primes = tuple(primes)
        self.height = height
        self.infinity = infinity
        self.mode = Mode(mode)
        self.points = tuple(points)
        self.index = {pt: i for i, pt in enumerate(self.points)}
        self.relation = relation
        n = len(self.points)
        below = [0] * n  # bit i of below[j]: points[i] ⊊ points[j] (yes)
        above = [0] * n
        maybe_below = [0] * n
        maybe_above = [0] * n
        for (i, j), v in relation.items():
            maybe_below[j] |= 1 << i
            maybe_above[i] |= 1 << j
            if v.yes:
                below[j] |= 1 << i
                above[i] |= 1 << j
        self.below_mask, self.above_mask = below, above
        self.maybe_below_mask, self.maybe_above_mask = maybe_below, maybe_above

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt) -> bool:
        return pt in self.index

    def __eq__(self, other) -> bool:
        return (isinstance(other, SpectrumPoset) and self.group.name == other.group.name
                and self.group.order == other.group.order and self.primes == other.primes
                and self.height == other.height and self.infinity == other.infinity
                and self.mode == other.mode and self.points == other.points
                and self.edges == other.edges)

    def id_of(self, pt: TTPrime) -> int:
        try:
            return self.index[pt]
        except KeyError:
            raise SpectrumError(f"{pt.label(self.group)} is not a point of this poset") from None

    def le(self, Q: TTPrime, P: TTPrime) -> ThreeValued:
        i, j = self.id_of(Q), self.id_of(P)
        if i == j:
            return YES
        return self.relation.get((i, j), NO)

    @cached_property
    def edges(self) -> tuple[tuple[int, int, str], ...]:
        out = []
        for (i, j), v in self.relation.items():
            if v.yes:
                if not (self.above_mask[i] & self.below_mask[j]):
                    out.append((i, j, "yes"))
            elif not (self.maybe_above_mask[i] & self.maybe_below_mask[j]):
                out.append((i, j, "unknown"))
        return tuple(sorted(out))

    @property
    def unknown_pairs(self) -> list[tuple[int, int]]:
        return sorted(ij for ij, v in self.relation.items() if v.unknown)

    def below_ids(self, j: int) -> list[int]:
        return _bits(self.below_mask[j])

    def above_ids(self, i: int) -> list[int]:
        return _bits(self.above_mask[i])

    def is_down_closed(self, S: Iterable[TTPrime]) -> bool:
        ids = {self.id_of(pt) for pt in S}
        mask = sum(1 << i for i in ids)
        return all(self.below_mask[j] & ~mask == 0 for j in ids)

    def down_closure(self, S: Iterable[TTPrime]) -> frozenset[TTPrime]:
        mask = 0
        for pt in S:
            j = self.id_of(pt)
            mask |= (1 << j) | self.below_mask[j]
        return frozenset(self.points[i] for i in _bits(mask))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def default_primes(G: PermGroup) -> tuple[int, ...]:
    return tuple(prime_divisors(G.order))


def build_spectrum(G: PermGroup, primes: Iterable[int] | None = None, height: int = 3,
                   include_infinity: bool = False, mode=Mode.CONJECTURAL) -> SpectrumPoset:
    """Points ``P(H,0,1)``, ``P(H,p,n)`` for ``2 <= n <= height`` (and optionally
    ``n = INF``) for every class ``H`` and every ``p`` in ``primes``."""
    mode = Mode(mode)
    if height == INF or not isinstance(height, int) or height < 1:
        raise SpectrumError("height must be a finite integer >= 1 (use include_infinity for the top layer)")
    primes = tuple(sorted(set(default_primes(G) if primes is None else primes)))
    if not primes:
        raise SpectrumError("the prime set must be non-empty")
    for p in primes:
        _require_prime(p)
    points = []
    for k in range(len(G.classes)):
        points.append(TTPrime(k, 0, 1))
        for p in primes:
            points.extend(TTPrime(k, p, n) for n in range(2, height + 1))
            if include_infinity:
                points.append(TTPrime(k, p, INF))
    relation = {}
    for i, Q in enumerate(points):
        for j, P in enumerate(points):
            if i != j:
                v = inclusion(G, Q, P, mode)
                if not v.no:
                    relation[(i, j)] = v
    return SpectrumPoset(G, primes, height, include_infinity, mode, points, relation)


# ---------------------------------------------------------------------------
# topology


def closure(P: TTPrime, poset: SpectrumPoset) -> frozenset[TTPrime]:
    """``{Q : Q ⊆ P}`` inside the truncation."""
    j = poset.id_of(P)
    if poset.maybe_below_mask[j] != poset.below_mask[j]:
        raise TopologyUndetermined(
            f"closure of {P.label(poset.group)} depends on undecided inclusions")
    return frozenset(poset.points[i] for i in _bits(poset.below_mask[j] | (1 << j)))


def irreducible_components(S: Iterable[TTPrime], poset: SpectrumPoset) -> list[TTPrime]:
    """Generic points of the irreducible components of a closed set ``S``."""
    S = frozenset(S)
    ids = {poset.id_of(pt) for pt in S}
    for (i, j) in poset.unknown_pairs:
        if i in ids or j in ids:
            raise TopologyUndetermined("undecided inclusions meet the given set")
    if not poset.is_down_closed(S):
        raise SpectrumError("the given set is not closed")
    mask = sum(1 << i for i in ids)
    return sorted(poset.points[i] for i in ids if not poset.above_mask[i] & mask)


def comparison_map(G: PermGroup, P: TTPrime) -> BurnsidePrime:
    _check_point(G, P)
    if P.level == 1:
        return zero_point(G, P.cls)
    return p_point(G, P.cls, P.char)


def support_of_basis(K, poset: SpectrumPoset) -> frozenset[TTPrime]:
    """Support of ``G/K_+``: the points whose subgroup is subconjugate to ``K``."""
    G = poset.group
    k = _class_id(G, K)
    Krep = G.classes[k].representative
    ok = {c.id for c in G.classes if is_subconjugate(G, c.representative, Krep)}
    return frozenset(pt for pt in poset.points if pt.cls in ok)


# ---------------------------------------------------------------------------
# Z-sets for p-groups


def _p_group_rank(G: PermGroup, p: int) -> int:
    _require_prime(p)
    r = p_adic_log(G.order, p)
    if r is None:
        raise SpectrumError(f"{G!r} is not a {p}-group")
    return r


def z_set(poset: SpectrumPoset, p: int, N: int) -> frozenset[TTPrime]:
    """``{P(H,p,l) : l + log_p|H| >= N}`` restricted to the poset."""
    G = poset.group
    r = _p_group_rank(G, p)
    if N <= r:
        raise SpectrumError(f"need N > log_p|G| = {r}, got N = {N}")
    out = set()
    for pt in poset.points:
        if pt.char not in (0, p):
            continue
        if pt.level + p_adic_log(G.classes[pt.cls].order, p) >= N:
            out.add(pt)
    return frozenset(out)


@dataclass(frozen=True)
class ZSetReport:
    closed: bool
    irreducible: bool
    generic: TTPrime | None
    expected_generic: TTPrime
    equals_closure: bool

    @property
    def ok(self) -> bool:
        return self.closed and self.irreducible and self.equals_closure and self.generic == self.expected_generic


def z_set_check(poset: SpectrumPoset, p: int, N: int) -> ZSetReport:
    G = poset.group
    if poset.mode is not Mode.CONJECTURAL or poset.primes != (p,) or not poset.infinity:
        raise SpectrumError("z_set_check needs a p-local conjectural poset with the infinity layer")
    r = _p_group_rank(G, p)
    Z = z_set(poset, p, N)
    expected = make_prime(G, len(G.classes) - 1, p, N - r)
    if expected not in poset:
        raise SpectrumError(f"height {poset.height} is below the generic level {N - r}")
    closed = poset.is_down_closed(Z)
    comps = irreducible_components(Z, poset) if closed else []
    generic = comps[0] if len(comps) == 1 else None
    return ZSetReport(closed, len(comps) == 1, generic, expected, Z == closure(expected, poset))
