"""Acceptance criteria 1-11, each with its exactness requirement and time budget.

Every test records a single PASS/FAIL line (printed in the pytest terminal
summary, and directly when run with ``-s`` or as a script).
"""

import itertools
import json
import random
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from eqtt.burnside import BurnsideElement, burnside_spectrum, multiply, prime_included, table_of_marks
from eqtt.export import poset_to_dict
from eqtt.groups import n_transporter_size
from eqtt.ideals import (check_inclusion_condition, check_shift_condition, enumerate_admissible,
                         random_function)
from eqtt.specparse import construct
from eqtt.spectrum import (build_spectrum, closure, comparison_map, inclusion,
                           irreducible_components, make_prime, support_of_basis, z_set, z_set_check)

from conftest import elements_of
import oracles

GOLDEN = Path(__file__).parent / "golden"
RESULTS: list[str] = []


@contextmanager
def criterion(num, title, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        line = f"{'PASS' if ok else 'FAIL'}  criterion {num:>2}: {title} ({elapsed:.2f}s / {budget}s)"
        RESULTS.append(line)
        print(line)


def labels(P):
    G = P.group
    return {(P.points[i].label(G), P.points[j].label(G)) for i, j, _ in P.edges}


def towers(names, primes, N, inf):
    out = set()
    for c, p in itertools.product(names, primes):
        out.add((f"P({c},{p},2)", f"P({c},0,1)"))
        out |= {(f"P({c},{p},{n + 1})", f"P({c},{p},{n})") for n in range(2, N)}
        if inf:
            out.add((f"P({c},{p},inf)", f"P({c},{p},{N})"))
    return out


def shifted(lo, hi, p, N):
    return {(f"P({lo},{p},{n})", f"P({hi},0,1)" if n == 2 else f"P({hi},{p},{n - 1})")
            for n in range(2, N + 1)}


def test_c01_marks_s3():
    with criterion(1, "table of marks of S_3 equals coset fixed-point count", 1.0):
        G = construct("sym:3")
        els = elements_of(G)
        reps = [elements_of(G, c.representative.members) for c in G.classes]
        direct = [[oracles.fixed_cosets(els, H, K) for K in reps] for H in reps]
        rows = table_of_marks(G).rows()
        assert rows == direct == [[6, 3, 2, 1], [0, 1, 0, 1], [0, 0, 2, 1], [0, 0, 0, 1]]


def test_c02_ghost_homomorphism():
    with criterion(2, "ghost map multiplicative on 1000 pairs; basis products match double cosets", 5.0):
        rng = np.random.default_rng(2024)
        groups = [construct(s) for s in ("sym:3", "cyclic:4", "dihedral:8")]
        for t in range(1000):
            G = groups[t % 3]
            n = len(G.classes)
            x = BurnsideElement(G, tuple(int(v) for v in rng.integers(-6, 7, n)))
            y = BurnsideElement(G, tuple(int(v) for v in rng.integers(-6, 7, n)))
            assert multiply(x, y).marks() == [a * b for a, b in zip(x.marks(), y.marks())]
        for G in groups:
            els = elements_of(G)
            reps = [frozenset(elements_of(G, c.representative.members)) for c in G.classes]
            lookup = oracles.class_lookup(els, reps)
            n = len(reps)
            for i, j in itertools.product(range(n), repeat=2):
                prod = multiply(BurnsideElement.basis(G, i), BurnsideElement.basis(G, j))
                assert min(prod.coeffs) >= 0
                assert list(prod.coeffs) == oracles.double_coset_product(els, reps[i], reps[j], lookup, n)


def test_c03_dress_spectrum():
    with criterion(3, "Dress spectrum collisions for C_2, C_3, C_5 and S_3", 1.0):
        for p in (2, 3, 5):
            S = burnside_spectrum(construct(f"cyclic:{p}"))
            assert len(S.points) == 3
            assert S.collisions(p) == [(0, 1)]
        S = burnside_spectrum(construct("sym:3"))
        names = [c.name for c in S.group.classes]
        got = {p: {frozenset(names[k] for k in m) for m in S.collisions(p)} for p in (2, 3)}
        assert got[2] == {frozenset({"C_1#0", "C_2#0"}), frozenset({"C_3#0", "O6#0"})}
        assert got[3] == {frozenset({"C_1#0", "C_3#0"}), frozenset({"C_2#0"}), frozenset({"O6#0"})}


def test_c04_cp_spectrum():
    with criterion(4, "C_p spectrum (p=2,3; N=6, with infinity) edge set and golden file", 1.0):
        for p in (2, 3):
            G = construct(f"cyclic:{p}")
            P = build_spectrum(G, [p], 6, True, "conjectural")
            names = ["C_1#0", f"C_{p}#0"]
            want = towers(names, [p], 6, True) | shifted("C_1#0", f"C_{p}#0", p, 6)
            want.add((f"P(C_1#0,{p},inf)", f"P(C_{p}#0,{p},inf)"))
            assert labels(P) == want
            for n in range(2, 7):
                assert inclusion(G, make_prime(G, "1", p, n), make_prime(G, "G", p, n)).no
            assert poset_to_dict(P) == json.loads((GOLDEN / f"cyclic{p}_n6_inf.json").read_text())


def test_c05_s3_spectrum():
    with criterion(5, "S_3 spectrum (primes 2,3; N=5) cross-class edges and golden file", 1.0):
        G = construct("sym:3")
        P = build_spectrum(G, [2, 3], 5)
        names = [c.name for c in G.classes]
        cross = {e for e in labels(P) if e[0].split(",")[0] != e[1].split(",")[0]}
        assert cross == (shifted("C_1#0", "C_2#0", 2, 5) | shifted("C_3#0", "O6#0", 2, 5)
                         | shifted("C_1#0", "C_3#0", 3, 5))
        assert labels(P) == towers(names, [2, 3], 5, False) | cross
        for a, b in itertools.permutations(["C_2#0", "O6#0"]):
            for n, m in itertools.product(range(1, 6), repeat=2):
                if n > 1 or m > 1:
                    assert inclusion(G, make_prime(G, a, 3, n), make_prime(G, b, 3, m)).no
        assert poset_to_dict(P) == json.loads((GOLDEN / "sym3_n5.json").read_text())


def test_c06_square_free():
    with criterion(6, "no unknown verdicts for S_3, C_6, C_30 (heights <= 5)", 10.0):
        for spec in ("sym:3", "cyclic:6", "cyclic:30"):
            G = construct(spec)
            P = build_spectrum(G, None, 5, True, "unconditional")
            for Q, R in itertools.product(P.points, repeat=2):
                assert not inclusion(G, Q, R, "unconditional").unknown


def test_c07_unknown_band():
    with criterion(7, "unknown band for C_4 and C_8 (m <= 4, n <= 7)", 1.0):
        for spec, log in (("cyclic:4", 2), ("cyclic:8", 3)):
            G = construct(spec)
            for m, n in itertools.product(range(1, 5), range(1, 8)):
                v = inclusion(G, make_prime(G, "1", 2, n), make_prime(G, "G", 2, m), "unconditional")
                want = "yes" if n >= m + log else "no" if n <= m else "unknown"
                assert v.verdict == want, (spec, m, n, v)
                if v.unknown:
                    assert v.band == (m + 1, m + log - 1)


def test_c08_comparison_map():
    with criterion(8, "comparison map reverses every yes-inclusion", 5.0):
        for spec in ("sym:3", "cyclic:4", "dihedral:8", "cyclic:6"):
            G = construct(spec)
            S = burnside_spectrum(G)
            P = build_spectrum(G, None, 5, True)
            for i, j in P.relation:
                if P.relation[(i, j)].yes:
                    a, b = comparison_map(G, P.points[j]), comparison_map(G, P.points[i])
                    assert a in S.members and b in S.members
                    assert prime_included(G, a, b)


def test_c09_z_sets():
    with criterion(9, "Z-sets equal closures of P(G,p,N-r), closed and irreducible", 2.0):
        for spec in ("cyclic:2", "cyclic:4", "cyclic:8", "cyclic:2 x cyclic:2"):
            G = construct(spec)
            r = G.order.bit_length() - 1
            for N in range(r + 1, r + 4):
                P = build_spectrum(G, [2], N, True)
                gen = make_prime(G, "G", 2, N - r)
                Z = z_set(P, 2, N)
                assert Z == closure(gen, P)
                assert irreducible_components(Z, P) == [gen]
                rep = z_set_check(P, 2, N)
                assert rep.closed and rep.irreducible and rep.ok


def test_c10_ideal_classification():
    with criterion(10, "admissible-function counts match power-set filter; (A) and (A') agree", 30.0):
        cases = [("cyclic:1", [2])] + [(s, None) for s in ("cyclic:2", "cyclic:3", "sym:3")]
        checked = 0
        for spec, primes in cases:
            G = construct(spec)
            for N in (1, 2, 3):
                en = enumerate_admissible(G, primes, N)
                P = en.poset
                if len(P) > 16:
                    continue
                pairs = [(i, j) for (i, j), v in P.relation.items() if v.yes]
                assert en.count == oracles.count_down_sets(len(P), pairs)
                checked += 1
        assert checked == 11
        rng = random.Random(84)
        posets = [build_spectrum(construct(s), p, N) for (s, p) in cases for N in (1, 2, 3)]
        for t in range(1000):
            P = posets[t % len(posets)]
            f = random_function(P.group, P.primes, P.height, False, rng)
            assert check_shift_condition(f) == check_inclusion_condition(f, P).yes


CORPUS = ["sym:3", "cyclic:4", "dihedral:8", "cyclic:6", "cyclic:30", "cyclic:8",
          "cyclic:2 x cyclic:2", "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:5"]


def test_c11_support_formula():
    with criterion(11, "support of G/K_+ via subconjugacy equals transporter route", 2.0):
        for spec in CORPUS:
            G = construct(spec)
            P = build_spectrum(G, None if G.order > 1 else [2], 3)
            for c in G.classes:
                K = c.representative
                other = {x for x in P.points
                         if n_transporter_size(G, G.classes[x.cls].representative, K) != 0}
                assert support_of_basis(c.id, P) == other


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
