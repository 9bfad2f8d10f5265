"""p-perfect cores ``O^p(H)``, p-subnormality and p-subnormal towers."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from eqtt import kernels
from eqtt.groups import EqttError, NotASubgroupError, Subgroup


class PrimeError(EqttError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_adic_log(n: int, p: int) -> int | None:
    """``k`` with ``p**k == n``, or None if ``n`` is not a power of ``p``."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise PrimeError(f"{p} is not a prime")


def _require_sub(K: Subgroup, H: Subgroup) -> None:
    if K.parent is not H.parent or not K.issubset(H):
        raise NotASubgroupError("K must be a subgroup of H")


@dataclass(frozen=True)
class PSubnormalTower:
    """``steps[0] = K`` up to ``steps[-1] = H``, each normal of index p in the next."""

    prime: int
    steps: tuple[Subgroup, ...]

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @property
    def bottom(self) -> Subgroup:
        return self.steps[0]

    @property
    def top(self) -> Subgroup:
        return self.steps[-1]


def _normal_in(N: Subgroup, H: Subgroup) -> bool:
    G = H.parent
    return bool(kernels.is_normalized_by(G.conj, N.members_array, N.mask, H.members_array))


def o_p_core(H: Subgroup, p: int) -> Subgroup:
    """The subgroup of ``H`` generated by its elements of order prime to ``p``."""
    _require_prime(p)
    G = H.parent
    orders = G.element_orders[H.members_array]
    coprime = [int(h) for h, o in zip(H.members, orders) if gcd(int(o), p) == 1]
    core = G.generate(coprime)
    assert core.issubset(H) and _normal_in(core, H)
    assert p_adic_log(H.order // core.order, p) is not None
    return core


def is_p_perfect(H: Subgroup, p: int) -> bool:
    return o_p_core(H, p) == H


def is_p_subnormal(K: Subgroup, H: Subgroup, p: int) -> bool:
    _require_sub(K, H)
    return o_p_core(H, p).issubset(K)


def p_subnormal_tower(K: Subgroup, H: Subgroup, p: int) -> PSubnormalTower | None:
    """A p-subnormal tower from ``K`` up to ``H``, or None if there is none.

    Each step passes from ``L`` to the smallest-key subgroup ``<L, x>`` with
    ``x`` normalizing ``L`` and ``x**p`` in ``L`` (an index-p overgroup in
    which ``L`` is normal); inside the p-group ``H/O^p(H)`` such a step always
    exists until ``L = H``.
    """
    if not is_p_subnormal(K, H, p):
        return None
    G = H.parent
    steps = [K]
    L = K
    while L.order < H.order:
        best = None
        for x in H.members:
            if L.mask[x]:
                continue
            xp = _power(G, x, p)
            if not L.mask[xp]:
                continue
            if not kernels.is_normalized_by(G.conj, L.members_array, L.mask,
                                            np.asarray([x], dtype=np.intp)):
                continue
            cand = G.generate([x], seed=L)
            if best is None or cand.members < best.members:
                best = cand
        assert best is not None and best.order == p * L.order
        steps.append(best)
        L = best
    return PSubnormalTower(p, tuple(steps))


def _power(G, x: int, k: int) -> int:
    y = 0
    for _ in range(k):
        y = int(G.mul[y, x])
    return y
