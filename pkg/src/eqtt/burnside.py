"""Table of marks, Burnside ring arithmetic via marks, and Dress's prime spectrum."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from eqtt.groups import EqttError, PermGroup, SubgroupClass, n_transporter_size
from eqtt.pstructure import o_p_core, prime_divisors, _require_prime


class BurnsideError(EqttError):
    pass


class MarksTable:
    """``entries[H, K] = |(G/K)^H|`` over subgroup classes in class-id order.

    Classes are sorted by order, so the matrix is upper triangular with
    diagonal ``[N_G(K):K]``.
    """

    def __init__(self, G: PermGroup):
        self.group = G
        self.classes: tuple[SubgroupClass, ...] = G.classes
        n = len(self.classes)
        entries = np.zeros((n, n), dtype=np.int64)
        for i, H in enumerate(self.classes):
            for j, K in enumerate(self.classes):
                if j < i or K.order % H.order:
                    continue
                t = n_transporter_size(G, H.representative, K.representative)
                assert t % K.order == 0
                entries[i, j] = t // K.order
        self.entries = entries

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, ij) -> int:
        return int(self.entries[ij])

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [c.name for c in self.classes])
        for c, row in zip(self.classes, self.rows()):
            w.writerow([c.name] + row)
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "group": self.group.name,
            "classes": [c.name for c in self.classes],
            "orders": [c.order for c in self.classes],
            "marks": self.rows(),
        }, indent=2)


def table_of_marks(G: PermGroup) -> MarksTable:
    return _marks_cache(G)


def _marks_cache(G: PermGroup) -> MarksTable:
    tab = G.__dict__.get("_marks_table")
    if tab is None:
        tab = MarksTable(G)
        G.__dict__["_marks_table"] = tab
    return tab


@dataclass(frozen=True)
class BurnsideElement:
    """``sum_K coeffs[K] * [G/K]`` in A(G), indexed by class id."""

    group: PermGroup = field(compare=False, repr=False)
    coeffs: tuple[int, ...]

    @classmethod
    def basis(cls, G: PermGroup, k: int) -> "BurnsideElement":
        c = [0] * len(G.classes)
        c[k] = 1
        return cls(G, tuple(c))

    @classmethod
    def zero(cls, G: PermGroup) -> "BurnsideElement":
        return cls(G, (0,) * len(G.classes))

    @classmethod
    def one(cls, G: PermGroup) -> "BurnsideElement":
        return cls.basis(G, len(G.classes) - 1)

    def _same(self, other: "BurnsideElement") -> None:
        if other.group is not self.group:
            raise BurnsideError("Burnside elements over different groups")

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._same(other)
        return BurnsideElement(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._same(other)
        return BurnsideElement(self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int) -> "BurnsideElement":
        return BurnsideElement(self.group, tuple(k * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return multiply(self, other)

    def marks(self) -> list[int]:
        M = table_of_marks(self.group).rows()
        return [sum(m * c for m, c in zip(row, self.coeffs)) for row in M]

    def support_classes(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c]


def mark_hom(x: BurnsideElement, H: int) -> int:
    """The ring map ``[X] -> |X^H|`` evaluated on ``x``."""
    n = len(x.coeffs)
    if not 0 <= H < n:
        raise BurnsideError(f"class id {H} out of range 0..{n - 1}")
    row = table_of_marks(x.group).rows()[H]
    return sum(m * c for m, c in zip(row, x.coeffs))


def from_marks(G: PermGroup, marks: Sequence[int]) -> BurnsideElement:
    """Solve the triangular marks system for integer coefficients."""
    M = table_of_marks(G).rows()
    n = len(M)
    c = [0] * n
    for k in range(n - 1, -1, -1):
        rest = marks[k] - sum(M[k][j] * c[j] for j in range(k + 1, n))
        q, r = divmod(rest, M[k][k])
        if r:
            raise BurnsideError("non-integral back-substitution; the marks table is inconsistent")
        c[k] = q
    return BurnsideElement(G, tuple(c))


def multiply(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    x._same(y)
    return from_marks(x.group, [a * b for a, b in zip(x.marks(), y.marks())])


# ---------------------------------------------------------------------------
# Dress's spectrum


@dataclass(frozen=True)
class BurnsidePrime:
    """``p(H, 0)`` (prime is None) or ``p(H, p)``.

    Characteristic-p points compare by ``(prime, canonical_class)`` where the
    canonical class is that of ``O^p(H)``; ``class_id`` is informational.
    """

    kind: str
    prime: int | None
    key: int
    class_id: int = field(compare=False)

    @property
    def canonical_class(self) -> int | None:
        return self.key if self.kind == "p" else None


def core_class(G: PermGroup, k: int, p: int) -> int:
    """Class id of ``O^p`` of the representative of class ``k``."""
    cache = G.__dict__.setdefault("_core_classes", {})
    key = (k, p)
    if key not in cache:
        cache[key] = G.class_of(o_p_core(G.classes[k].representative, p))
    return cache[key]


def zero_point(G: PermGroup, k: int) -> BurnsidePrime:
    return BurnsidePrime("0", None, k, k)


def p_point(G: PermGroup, k: int, p: int) -> BurnsidePrime:
    _require_prime(p)
    return BurnsidePrime("p", p, core_class(G, k, p), k)


def prime_included(G: PermGroup, a: BurnsidePrime, b: BurnsidePrime) -> bool:
    """``a ⊆ b`` as prime ideals of A(G)."""
    if a == b:
        return True
    return a.kind == "0" and b.kind == "p" and core_class(G, a.key, b.prime) == b.key


@dataclass
class BurnsideSpectrum:
    group: PermGroup
    primes: tuple[int, ...]
    points: list[BurnsidePrime]
    members: dict[BurnsidePrime, tuple[int, ...]]
    inclusions: list[tuple[int, int]]

    def index(self, pt: BurnsidePrime) -> int:
        return self.points.index(pt)

    def le(self, a: BurnsidePrime, b: BurnsidePrime) -> bool:
        return prime_included(self.group, a, b)

    def collisions(self, p: int) -> list[tuple[int, ...]]:
        return [self.members[pt] for pt in self.points if pt.kind == "p" and pt.prime == p]

    def to_dict(self) -> dict:
        names = [c.name for c in self.group.classes]
        pts = []
        for i, pt in enumerate(self.points):
            pts.append({
                "id": i,
                "class": names[pt.key],
                "char": 0 if pt.prime is None else pt.prime,
                "members": [names[k] for k in self.members[pt]],
            })
        return {
            "group": self.group.name,
            "primes": list(self.primes),
            "points": pts,
            "edges": [{"from": a, "to": b, "status": "yes"} for a, b in self.inclusions],
        }


def burnside_spectrum(G: PermGroup, primes: Iterable[int] | None = None) -> BurnsideSpectrum:
    """Points ``p(H,0)`` per class and ``p(H,p)`` deduplicated by ``O^p``-class.

    Defaults to the primes dividing ``|G|`` (for the trivial group, which has
    none, the caller must pass primes explicitly).
    """
    primes = tuple(sorted(set(prime_divisors(G.order) if primes is None else primes)))
    if not primes:
        raise BurnsideError("the prime set must be non-empty")
    for p in primes:
        _require_prime(p)
    n = len(G.classes)
    points: list[BurnsidePrime] = [zero_point(G, k) for k in range(n)]
    members: dict[BurnsidePrime, tuple[int, ...]] = {pt: (pt.key,) for pt in points}
    for p in primes:
        groups: dict[int, list[int]] = {}
        for k in range(n):
            groups.setdefault(core_class(G, k, p), []).append(k)
        for ks in sorted(groups.values()):
            pt = p_point(G, ks[0], p)
            points.append(pt)
            members[pt] = tuple(ks)
    inclusions = []
    for i, a in enumerate(points):
        for j, b in enumerate(points):
            if i != j and prime_included(G, a, b):
                inclusions.append((i, j))
    return BurnsideSpectrum(G, primes, points, members, inclusions)
