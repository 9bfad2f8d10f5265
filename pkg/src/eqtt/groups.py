"""Finite permutation groups with dense tables, subgroup lattices and classes.

Elements are stored as indices into an enumerated element list (index 0 is
the identity).  Products are tabulated in ``mul[i, j]`` meaning "apply
``elements[i]`` then ``elements[j]``", and conjugation ``h^g = g^-1 h g``
is tabulated in ``conj[g, h]``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from eqtt import kernels

DEFAULT_ORDER_CAP = 384

Perm = tuple[int, ...]


class EqttError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class GroupError(EqttError):
    pass


class OrderCapExceeded(GroupError):
    pass


class NotASubgroupError(GroupError):
    pass


class UnknownClassError(EqttError):
    pass


def order_cap() -> int:
    return int(os.environ.get("EQTT_ORDER_CAP", DEFAULT_ORDER_CAP))


# ---------------------------------------------------------------------------
# permutations


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(a: Perm, b: Perm) -> Perm:
    """Apply ``a`` then ``b``."""
    return tuple(b[i] for i in a)


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for pt in cyc:
            if not 0 <= pt < degree:
                raise GroupError(f"point {pt} out of range for degree {degree}")
            if pt in seen:
                raise GroupError(f"point {pt} repeated in cycle notation")
            seen.add(pt)
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return tuple(img)


def perm_to_cycles(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise GroupError(f"not a bijection of {{0..{degree - 1}}}: {p}")
    return p


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A finite group of permutations of ``{0..degree-1}`` with its element table.

    Elements are enumerated breadth-first from the identity, right-multiplying
    by the generators in the given order.  Construction fails with
    :class:`OrderCapExceeded` once more than ``cap`` elements are found.
    """

    def __init__(self, degree: int, generators: Sequence[Sequence[int]] = (),
                 cap: int | None = None, name: str | None = None):
        if degree < 1:
            raise GroupError("degree must be at least 1")
        cap = order_cap() if cap is None else cap
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(_check_perm(g, degree) for g in generators)
        self.name = name
        self.cap = cap

        ident = identity_perm(degree)
        elements = [ident]
        index = {ident: 0}
        ngens = len(self.generators)
        right: list[list[int]] = []
        parent = [-1]
        via = [-1]
        head = 0
        while head < len(elements):
            x = elements[head]
            row = []
            for k, g in enumerate(self.generators):
                y = compose(x, g)
                j = index.get(y)
                if j is None:
                    j = len(elements)
                    if j >= cap:
                        raise OrderCapExceeded(f"group order exceeds the cap of {cap}")
                    index[y] = j
                    elements.append(y)
                    parent.append(head)
                    via.append(k)
                row.append(j)
            right.append(row)
            head += 1

        n = len(elements)
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.order = n
        self._index = index
        self.generator_indices = tuple(index[g] for g in self.generators)

        # column j of the table from column parent[j]: x*e_j = (x*e_parent)*gen
        right_arr = np.array(right, dtype=np.int32).reshape(n, ngens)
        mul = np.empty((n, n), dtype=np.int32)
        mul[:, 0] = np.arange(n)
        for j in range(1, n):
            mul[:, j] = right_arr[mul[:, parent[j]], via[j]]
        self.mul = mul
        self.inv = np.argmin(mul, axis=1).astype(np.intp)
        left = mul[self.inv]  # left[g, h] = g^-1 h
        self.conj = np.ascontiguousarray(mul[left, np.arange(n)[:, None]])

    def __repr__(self) -> str:
        return f"PermGroup({self.name or 'degree ' + str(self.degree)}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def index_of(self, perm: Sequence[int]) -> int:
        try:
            return self._index[tuple(perm)]
        except KeyError:
            raise GroupError(f"{tuple(perm)} is not an element of {self!r}") from None

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        step = np.arange(n)
        k = 1
        while not orders.all():
            orders[(cur == 0) & (orders == 0)] = k
            cur = self.mul[cur, step]
            k += 1
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    # subgroup construction -------------------------------------------------

    def subgroup_from_mask(self, mask: np.ndarray, gens: Sequence[int] = ()) -> "Subgroup":
        return Subgroup(self, mask, tuple(gens))

    def generate(self, element_indices: Iterable[int], seed: "Subgroup | None" = None) -> "Subgroup":
        """Subgroup generated by the given elements (together with ``seed``)."""
        gens = tuple(dict.fromkeys(int(i) for i in element_indices))
        if seed is not None:
            start = seed.mask
            all_gens = seed.gens + tuple(g for g in gens if g not in seed.gens)
        else:
            start = np.zeros(self.order, dtype=np.uint8)
            all_gens = gens
        mask = kernels.close_subgroup(self.mul, start, np.asarray(all_gens, dtype=np.intp))
        return Subgroup(self, mask, all_gens)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        """Validate an explicit member set and wrap it as a :class:`Subgroup`."""
        idx = sorted(set(int(i) for i in members))
        if not idx or idx[0] != 0:
            raise NotASubgroupError("a subgroup must contain the identity")
        if idx[-1] >= self.order:
            raise NotASubgroupError("element index out of range")
        mask = np.zeros(self.order, dtype=np.uint8)
        mask[idx] = 1
        arr = np.asarray(idx, dtype=np.intp)
        if not mask[self.mul[np.ix_(arr, arr)]].all():
            raise NotASubgroupError("member set is not closed under multiplication")
        return Subgroup(self, mask, tuple(idx))

    @cached_property
    def trivial(self) -> "Subgroup":
        return self.subgroup([0])

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, dtype=np.uint8), self.generator_indices)

    # lattice ---------------------------------------------------------------

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        return tuple(all_subgroups(self))

    @cached_property
    def classes(self) -> tuple["SubgroupClass", ...]:
        return tuple(conjugacy_classes(self))

    @cached_property
    def _class_by_key(self) -> dict[tuple[int, ...], int]:
        return {s.members: c.id for c in self.classes for s in c.conjugates}

    def class_of(self, H: "Subgroup") -> int:
        _check_parent(self, H)
        return self._class_by_key[H.members]

    def class_named(self, name: str) -> "SubgroupClass":
        return resolve_class(self, name)


class Subgroup:
    """A subgroup of a :class:`PermGroup`, stored as a membership mask."""

    __slots__ = ("parent", "mask", "members", "gens", "_arr")

    def __init__(self, parent: PermGroup, mask: np.ndarray, gens: tuple[int, ...] = ()):
        self.parent = parent
        self.mask = np.ascontiguousarray(mask, dtype=np.uint8)
        self._arr = np.flatnonzero(self.mask).astype(np.intp)
        self.members: tuple[int, ...] = tuple(self._arr.tolist())
        # generators are only needed when this subgroup seeds a join
        self.gens = gens or self.members[1:]

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def members_array(self) -> np.ndarray:
        return self._arr

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.issubset(other)

    def issubset(self, other: "Subgroup") -> bool:
        return bool(other.mask[self._arr].all())

    def is_cyclic(self) -> bool:
        return int(self.parent.element_orders[self._arr].max()) == self.order

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={self.members})"


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups with its canonical (smallest-key) representative."""

    id: int
    representative: Subgroup
    class_size: int
    order: int
    name: str
    label: str
    conjugates: tuple[Subgroup, ...] = field(repr=False)
    normalizer_order: int = 0


def _check_parent(G: PermGroup, *subs: Subgroup) -> None:
    for H in subs:
        if not isinstance(H, Subgroup) or H.parent is not G:
            raise NotASubgroupError(f"{H!r} is not a subgroup of {G!r}")


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int, cap: int | None = None) -> PermGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    gens = [tuple(list(range(1, n)) + [0])] if n > 1 else []
    return PermGroup(n, gens, cap=cap, name=f"cyclic:{n}")


def symmetric(n: int, cap: int | None = None) -> PermGroup:
    if n < 1:
        raise GroupError("symmetric group degree must be positive")
    gens = []
    if n >= 2:
        gens.append(perm_from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(perm_from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens, cap=cap, name=f"sym:{n}")


def alternating(n: int, cap: int | None = None) -> PermGroup:
    if n < 1:
        raise GroupError("alternating group degree must be positive")
    gens = []
    if n >= 3:
        gens.append(perm_from_cycles(n, [(0, 1, 2)]))
    if n >= 4:
        cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(perm_from_cycles(n, [cyc]))
    return PermGroup(n, gens, cap=cap, name=f"alt:{n}")


def dihedral(order: int, cap: int | None = None) -> PermGroup:
    """Dihedral group of the given (even) order."""
    if order < 2 or order % 2:
        raise GroupError(f"dihedral order must be even and positive, got {order}")
    m = order // 2
    name = f"dihedral:{order}"
    if m == 1:
        return PermGroup(2, [(1, 0)], cap=cap, name=name)
    if m == 2:
        return PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)], cap=cap, name=name)
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return PermGroup(m, [rot, ref], cap=cap, name=name)


def direct_product(*groups: PermGroup, cap: int | None = None) -> PermGroup:
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for p in g.generators:
            img = list(range(degree))
            for i, j in enumerate(p):
                img[offset + i] = offset + j
            gens.append(tuple(img))
        offset += g.degree
    name = " x ".join(g.name or "?" for g in groups)
    return PermGroup(degree, gens, cap=cap, name=name)


# ---------------------------------------------------------------------------
# lattice and classes


def all_subgroups(G: PermGroup) -> list[Subgroup]:
    """Every subgroup of ``G`` once, sorted by (order, member list).

    Seeds with the cyclic subgroups and closes under joins with cyclic
    subgroups until no new subgroup appears.
    """
    seen: dict[bytes, Subgroup] = {}
    cyclics: list[tuple[int, Subgroup]] = []
    for x in range(G.order):
        C = G.generate([x] if x else [])
        key = C.mask.tobytes()
        if key not in seen:
            seen[key] = C
            cyclics.append((x, C))
    frontier = [C for _, C in cyclics]
    while frontier:
        fresh = []
        for S in frontier:
            for x, C in cyclics:
                if S.mask[x] or C.order == 1:
                    continue
                J = G.generate([x], seed=S)
                key = J.mask.tobytes()
                if key not in seen:
                    seen[key] = J
                    fresh.append(J)
        frontier = fresh
    return sorted(seen.values(), key=lambda s: s.sort_key)


def _conjugate_keys(G: PermGroup, H: Subgroup) -> np.ndarray:
    """Row g holds the sorted members of H^g."""
    return np.sort(G.conj[:, H.members_array], axis=1)


def conjugacy_classes(G: PermGroup) -> list[SubgroupClass]:
    subs = G.subgroups
    placed: set[tuple[int, ...]] = set()
    raw = []
    for H in subs:  # sorted, so the first member met is the class minimum
        if H.members in placed:
            continue
        rows = np.unique(_conjugate_keys(G, H), axis=0)
        keys = [tuple(r) for r in rows.tolist()]
        placed.update(keys)
        by_key = {s.members: s for s in subs if s.order == H.order}
        conjugates = tuple(sorted((by_key[k] for k in keys), key=lambda s: s.members))
        raw.append((H, conjugates))
    out = []
    per_order: dict[int, int] = {}
    for cid, (H, conjugates) in enumerate(raw):
        k = per_order.get(H.order, 0)
        per_order[H.order] = k + 1
        label = f"C_{H.order}" if H.is_cyclic() else f"O{H.order}"
        out.append(SubgroupClass(
            id=cid, representative=H, class_size=len(conjugates), order=H.order,
            name=f"{label}#{k}", label=label, conjugates=conjugates,
            normalizer_order=G.order // len(conjugates),
        ))
    return out


def resolve_class(G: PermGroup, name: str) -> SubgroupClass:
    """Look up a class by canonical name, by unambiguous label, or the aliases ``1``/``G``."""
    name = name.strip()
    classes = G.classes
    if name == "1":
        return classes[0]
    if name == "G":
        return classes[-1]
    for c in classes:
        if c.name == name:
            return c
    hits = [c for c in classes if c.label == name]
    if len(hits) == 1:
        return hits[0]
    known = ", ".join(c.name for c in classes)
    if hits:
        raise UnknownClassError(f"class label {name!r} is ambiguous; use one of: "
                                + ", ".join(c.name for c in hits))
    raise UnknownClassError(f"unknown subgroup class {name!r}; known classes: {known}")


def n_transporter_size(G: PermGroup, H: Subgroup, K: Subgroup) -> int:
    """``#{g in G : H^g <= K}`` by scanning all of ``G``."""
    _check_parent(G, H, K)
    return int(kernels.transporter_count(G.conj, H.members_array, K.mask))


def is_subconjugate(G: PermGroup, H: Subgroup, K: Subgroup) -> bool:
    _check_parent(G, H, K)
    if K.order % H.order:
        return False
    cls = G.classes[G.class_of(H)]
    return any(c.issubset(K) for c in cls.conjugates)


def is_normal(G: PermGroup, H: Subgroup) -> bool:
    _check_parent(G, H)
    by = np.asarray(G.generator_indices, dtype=np.intp)
    return bool(kernels.is_normalized_by(G.conj, H.members_array, H.mask, by))


def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    _check_parent(G, H)
    rows = _conjugate_keys(G, H)
    mask = (rows == H.members_array).all(axis=1).astype(np.uint8)
    return Subgroup(G, mask)


def index(G: PermGroup, H: Subgroup) -> int:
    _check_parent(G, H)
    return G.order // H.order
