"""Slow, independent reference computations used by the tests.

Nothing here touches the multiplication tables or kernels: permutations are
plain tuples composed by hand.
"""

from __future__ import annotations

from itertools import combinations


def pmul(a, b):
    """Apply ``a`` then ``b`` (same convention as the library's tables)."""
    return tuple(b[a[i]] for i in range(len(a)))


def pinv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens, degree):
    e = tuple(range(degree))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def is_closed(S):
    return all(pmul(a, b) in S for a in S for b in S)


def brute_subgroups(elements):
    """All subgroups as frozensets of permutation tuples.

    Small groups: filter the whole power set through the identity.  Larger
    groups: close every set of at most four elements (a group of order n
    needs at most log2(n) generators, so four suffices up to order 31).
    """
    elements = list(elements)
    n = len(elements)
    degree = len(elements[0])
    e = tuple(range(degree))
    others = [x for x in elements if x != e]
    found = set()
    if n <= 16:
        for r in range(len(others) + 1):
            for combo in combinations(others, r):
                S = frozenset(combo) | {e}
                if is_closed(S):
                    found.add(S)
        return found
    assert n < 32
    for r in range(0, 5):
        for combo in combinations(others, r):
            found.add(closure(combo, degree))
    return found


def conjugate(S, g):
    gi = pinv(g)
    return frozenset(pmul(pmul(gi, h), g) for h in S)


def left_cosets(elements, K):
    seen = set()
    out = []
    for g in elements:
        c = frozenset(pmul(k, g) for k in K)  # a "coset" under the apply-then convention
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def fixed_cosets(elements, H, K):
    """|(G/K)^H| by listing cosets and testing each for H-invariance."""
    count = 0
    for c in left_cosets(elements, K):
        if all(frozenset(pmul(x, h) for x in c) == c for h in H):
            count += 1
    return count


def class_lookup(elements, reps):
    """Map every subgroup (as frozenset) conjugate to ``reps[i]`` to ``i``."""
    table = {}
    for i, R in enumerate(reps):
        for g in elements:
            table[conjugate(R, g)] = i
    return table


def double_coset_product(elements, H, K, lookup, nclasses):
    """Coefficients of [G/H]·[G/K] via the double-coset formula."""
    coeffs = [0] * nclasses
    seen = set()
    for g in elements:
        if g in seen:
            continue
        dc = {pmul(pmul(h, g), k) for h in H for k in K}
        seen |= dc
        # stabilizer of the pair (H, gK) is H ∩ g K g^-1 under the apply-then convention
        inter = frozenset(H) & conjugate(K, pinv(g))
        coeffs[lookup[inter]] += 1
    return coeffs


def count_down_sets(n, below_pairs):
    """Power-set filter: subsets S with j in S and (i, j) a pair implying i in S."""
    total = 0
    for mask in range(1 << n):
        if all(not (mask >> j & 1) or (mask >> i & 1) for i, j in below_pairs):
            total += 1
    return total


def normal_subgroups(subgroups, elements):
    return [S for S in subgroups if all(conjugate(S, g) == S for g in elements)]
