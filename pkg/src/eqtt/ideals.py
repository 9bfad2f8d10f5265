"""Thomason subsets of a truncated spectrum and the admissible functions classifying them.

An admissible function assigns to each (class, prime) slot an extended
natural ``f(H,p)``; its Thomason set is ``Y_f = {P(H,p,m) : m > f(H,p)}``,
with the level-1 point of ``H`` present as soon as one ``f(H,q)`` is 0.

Inside a truncation of height ``N`` values are read modulo what the
truncation can see: without the infinity layer every value ``>= N``
(including ``INF``) means "nothing at this slot"; with it, a finite value
``>= N`` means "only the infinity point", canonically written ``N``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from eqtt.burnside import BurnsideElement
from eqtt.groups import EqttError, PermGroup, resolve_class
from eqtt.spectrum import (INF, NO, YES, Mode, SpectrumPoset, TTPrime, ThreeValued,
                           build_spectrum, default_primes, is_square_free,
                           subnormal_shift, support_of_basis, _bits)


class IdealError(EqttError):
    pass


@dataclass(frozen=True, eq=False)
class AdmissibleFunction:
    """Values ``f[(class_id, p)]``; ``height``/``infinity`` name the truncation, if any."""

    group: PermGroup = field(repr=False)
    primes: tuple[int, ...]
    values: Mapping[tuple[int, int], int | float]
    height: int | None = None
    infinity: bool = False

    def __getitem__(self, slot: tuple[int, int]):
        return self.values[slot]

    def __eq__(self, other) -> bool:
        return (isinstance(other, AdmissibleFunction) and other.group is self.group
                and other.primes == self.primes and dict(other.values) == dict(self.values))

    def __hash__(self):
        return hash((self.primes, self.key()))

    def slots(self) -> list[tuple[int, int]]:
        return [(k, p) for k in range(len(self.group.classes)) for p in self.primes]

    def key(self) -> tuple:
        return tuple(self.values.get(s, INF) for s in self.slots())

    def is_total(self) -> bool:
        return all(s in self.values for s in self.slots())

    def effective(self, slot: tuple[int, int]):
        """The value the arithmetic condition sees inside the truncation."""
        v = self.values[slot]
        if self.height is None:
            return v
        if v == INF:
            return INF if self.infinity else self.height
        return min(v, self.height)

    def to_dict(self) -> dict[str, int | str]:
        names = [c.name for c in self.group.classes]
        return {f"{names[k]}:{p}": ("inf" if v == INF else int(v))
                for (k, p), v in sorted(self.values.items())}


def constant_function(G: PermGroup, primes, value, height=None, infinity=False) -> AdmissibleFunction:
    primes = tuple(sorted(primes))
    vals = {(k, p): value for k in range(len(G.classes)) for p in primes}
    return AdmissibleFunction(G, primes, vals, height, infinity)


def function_from_dict(G: PermGroup, data: Mapping[str, object], primes=None,
                       height=None, infinity=False) -> AdmissibleFunction:
    vals = {}
    for key, v in data.items():
        name, _, p = str(key).rpartition(":")
        if not name:
            raise IdealError(f"bad slot {key!r}; expected 'class-name:prime'")
        vals[(resolve_class(G, name).id, int(p))] = INF if v in ("inf", INF) else int(v)
    if primes is None:
        primes = sorted({p for _, p in vals})
    return AdmissibleFunction(G, tuple(sorted(primes)), vals, height, infinity)


def function_to_json(f: AdmissibleFunction) -> str:
    return json.dumps(f.to_dict(), indent=2)


def function_from_json(G: PermGroup, text: str, **kw) -> AdmissibleFunction:
    return function_from_dict(G, json.loads(text), **kw)


@dataclass(frozen=True)
class ThomasonSubset:
    poset: SpectrumPoset = field(repr=False)
    points: frozenset[TTPrime]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, pt) -> bool:
        return pt in self.points


# ---------------------------------------------------------------------------
# admissibility


def _require_total(f: AdmissibleFunction) -> None:
    if not f.is_total():
        missing = [s for s in f.slots() if s not in f.values]
        raise IdealError(f"function is not defined on slots {missing[:5]}")


def check_shift_condition(f: AdmissibleFunction) -> bool:
    """The arithmetic form: ``f(K,p) <= f(H,p) + log_p[H:K]`` along p-subnormal
    pairs, and ``f(H,p) = 0`` for one prime forces it for all."""
    _require_total(f)
    G = f.group
    n = len(G.classes)
    for k in range(n):
        zeros = [f[(k, p)] == 0 for p in f.primes]
        if any(zeros) and not all(zeros):
            return False
    for p in f.primes:
        for k in range(n):
            fk = f.effective((k, p))
            for h in range(n):
                if h == k:
                    continue
                s = subnormal_shift(G, k, h, p)
                if s is not None and fk > f.effective((h, p)) + s:
                    return False
    return True


def _memberships(f: AdmissibleFunction, poset: SpectrumPoset) -> tuple[int, int]:
    """Bitmasks of points with some / every representation above ``f``."""
    some = every = 0
    for i, pt in enumerate(poset.points):
        if pt.level == 1:
            vals = [f[(pt.cls, p)] for p in f.primes]
            hit_some, hit_all = min(vals) < 1, max(vals) < 1
        else:
            hit_some = hit_all = pt.level > f[(pt.cls, pt.char)]
        if hit_some:
            some |= 1 << i
        if hit_all:
            every |= 1 << i
    return some, every


def check_inclusion_condition(f: AdmissibleFunction, poset: SpectrumPoset) -> ThreeValued:
    """The oracle form: if ``Q ⊆ P`` and ``m > f(H,p)`` then ``n > f(K,q)``,
    quantified over the poset's inclusion relation (three-valued)."""
    _require_total(f)
    if tuple(sorted(f.primes)) != poset.primes:
        raise IdealError("function and poset have different prime sets")
    some, every = _memberships(f, poset)
    if some & ~every:
        return NO
    verdict = YES
    for j in _bits(some):
        bad = poset.maybe_below_mask[j] & ~every
        if not bad:
            continue
        if poset.below_mask[j] & bad:
            return NO
        verdict = ThreeValued("unknown")
    return verdict


def _poset_for(f: AdmissibleFunction, mode) -> SpectrumPoset:
    if f.height is not None:
        return build_spectrum(f.group, f.primes, f.height, f.infinity, mode)
    finite = [v for v in f.values.values() if v != INF]
    # a violation, if any, shows up between the lowest present level and the infinity layer
    return build_spectrum(f.group, f.primes, max([2] + [int(v) + 1 for v in finite]), True, mode)


def is_admissible(f: AdmissibleFunction, mode=Mode.CONJECTURAL,
                  poset: SpectrumPoset | None = None) -> ThreeValued:
    mode = Mode(mode)
    _require_total(f)
    if mode is Mode.CONJECTURAL:
        return YES if check_shift_condition(f) else NO
    return check_inclusion_condition(f, poset if poset is not None else _poset_for(f, mode))


def _in_truncation(f: AdmissibleFunction, poset: SpectrumPoset) -> AdmissibleFunction:
    return AdmissibleFunction(f.group, f.primes, f.values, poset.height, poset.infinity)


def _require_determined(poset: SpectrumPoset) -> None:
    if poset.mode is Mode.UNCONDITIONAL and not is_square_free(poset.group.order):
        raise IdealError("the unconditional topology is not determined for groups of non-square-free order")


def thomason_of(f: AdmissibleFunction, poset: SpectrumPoset) -> ThomasonSubset:
    _require_determined(poset)
    f = _in_truncation(f, poset)
    if not is_admissible(f, poset.mode, poset).yes:
        raise IdealError("function is not admissible")
    some, _ = _memberships(f, poset)
    pts = frozenset(poset.points[i] for i in _bits(some))
    assert poset.is_down_closed(pts)
    return ThomasonSubset(poset, pts)


def function_of(Y: ThomasonSubset) -> AdmissibleFunction:
    poset = Y.poset
    G = poset.group
    if not poset.is_down_closed(Y.points):
        raise IdealError("subset is not down-closed")
    finite_mask = sum(1 << poset.id_of(pt) for pt in Y.points if pt.level != INF)
    for pt in Y.points:
        if pt.level == INF and not (poset.above_mask[poset.id_of(pt)] & finite_mask):
            raise IdealError(f"{pt.label(G)} is not below any finite-level member")
    vals = {}
    for k in range(len(G.classes)):
        if TTPrime(k, 0, 1) in Y.points:
            for p in poset.primes:
                vals[(k, p)] = 0
            continue
        for p in poset.primes:
            levels = [pt.level for pt in Y.points if pt.cls == k and pt.char == p]
            if not levels:
                vals[(k, p)] = INF
            elif min(levels) == INF:
                vals[(k, p)] = poset.height
            else:
                vals[(k, p)] = int(min(levels)) - 1
    return AdmissibleFunction(G, poset.primes, vals, poset.height, poset.infinity)


# ---------------------------------------------------------------------------
# enumeration


def _finite_universe(poset: SpectrumPoset) -> int:
    return sum(1 << i for i, pt in enumerate(poset.points) if pt.level != INF)


def count_down_sets(below: list[int], above: list[int], universe: int) -> int:
    """Number of down-closed subsets of the points in ``universe``."""
    memo: dict[int, int] = {}

    def rec(S: int) -> int:
        if not S:
            return 1
        got = memo.get(S)
        if got is None:
            low = S & -S
            x = low.bit_length() - 1
            got = rec(S & ~(above[x] | low)) + rec(S & ~(below[x] | low))
            memo[S] = got
        return got

    return rec(universe)


def iter_down_sets(below: list[int], above: list[int], universe: int) -> Iterator[int]:
    stack = [(universe, 0)]
    while stack:
        S, inc = stack.pop()
        if not S:
            yield inc
            continue
        low = S & -S
        x = low.bit_length() - 1
        stack.append((S & ~(below[x] | low), inc | low | (below[x] & universe)))
        stack.append((S & ~(above[x] | low), inc))


@dataclass
class AdmissibleEnumeration:
    poset: SpectrumPoset
    count: int

    def thomason_sets(self) -> Iterator[ThomasonSubset]:
        p = self.poset
        uni = _finite_universe(p)
        for inc in iter_down_sets(p.below_mask, p.above_mask, uni):
            yield ThomasonSubset(p, p.down_closure(p.points[i] for i in _bits(inc)))

    def __iter__(self) -> Iterator[AdmissibleFunction]:
        """Functions in lexicographic order of their values (``INF`` last)."""
        return iter(sorted((function_of(Y) for Y in self.thomason_sets()), key=AdmissibleFunction.key))

    def __len__(self) -> int:
        return self.count


def enumerate_admissible(G: PermGroup, primes=None, height: int = 3,
                         mode=Mode.CONJECTURAL, infinity: bool = False) -> AdmissibleEnumeration:
    poset = build_spectrum(G, default_primes(G) if primes is None else primes, height, infinity, mode)
    _require_determined(poset)
    uni = _finite_universe(poset)
    return AdmissibleEnumeration(poset, count_down_sets(poset.below_mask, poset.above_mask, uni))


def random_function(G: PermGroup, primes, height: int, infinity: bool = False,
                    rng: random.Random | None = None) -> AdmissibleFunction:
    """A uniformly random (not necessarily admissible) truncated function."""
    rng = rng or random.Random()
    choices = list(range(height)) + ([height] if infinity else []) + [INF]
    primes = tuple(sorted(primes))
    vals = {(k, p): rng.choice(choices) for k in range(len(G.classes)) for p in primes}
    return AdmissibleFunction(G, primes, vals, height, infinity)


# ---------------------------------------------------------------------------
# formal objects


def support(x: BurnsideElement, poset: SpectrumPoset) -> frozenset[TTPrime]:
    """Support of ``sum c_K G/K_+`` (non-negative ``c_K``): union of the basis supports."""
    if any(c < 0 for c in x.coeffs):
        raise IdealError("formal objects have non-negative coefficients")
    out: set[TTPrime] = set()
    for k in x.support_classes():
        out |= support_of_basis(k, poset)
    return frozenset(out)


def ideal_membership(f: AdmissibleFunction, x: BurnsideElement, poset: SpectrumPoset) -> bool:
    Y = thomason_of(f, poset)
    return support(x, poset) <= Y.points
