"""Group description strings.

Grammar::

    spec   := factor ( 'x' factor )*
    factor := 'cyclic:' N | 'sym:' N | 'alt:' N | 'dihedral:' N
            | 'perm:' D ':' gen ( ',' gen )*
    gen    := '()' | ( '(' point+ ')' )+

``dihedral:N`` takes the group order (even).  Points are zero-based and
separated by whitespace inside a cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from eqtt import groups
from eqtt.groups import EqttError, PermGroup


class GroupSpecError(EqttError, ValueError):
    def __init__(self, msg: str, text: str = "", pos: int | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = f"{msg} at position {pos}"
            if text:
                msg += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(msg)


ATOMS = ("cyclic", "sym", "alt", "dihedral", "perm")


@dataclass(frozen=True)
class Atom:
    kind: str
    n: int
    gens: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def __str__(self) -> str:
        if self.kind != "perm":
            return f"{self.kind}:{self.n}"
        parts = ["".join("(" + " ".join(map(str, c)) + ")" for c in g) or "()" for g in self.gens]
        return f"perm:{self.n}:" + ",".join(parts)


@dataclass(frozen=True)
class GroupSpec:
    source: str
    factors: tuple[Atom, ...]

    def canonical(self) -> str:
        return " x ".join(map(str, self.factors))

    def __str__(self) -> str:
        return self.canonical()


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise GroupSpecError(msg, self.text, self.pos if pos is None else pos)

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        start = self.pos
        while self.peek().isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def number(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a number")
        return int(self.text[start:self.pos])


def parse_group_spec(text: str) -> GroupSpec:
    if not text or not text.strip():
        raise GroupSpecError("empty group description")
    sc = _Scanner(text)
    factors = []
    while True:
        sc.ws()
        factors.append(_factor(sc))
        sc.ws()
        if sc.pos == len(text):
            break
        if sc.peek() == "x":
            sc.pos += 1
            continue
        sc.error("expected 'x' or end of input")
    return GroupSpec(text, tuple(factors))


def _factor(sc: _Scanner) -> Atom:
    start = sc.pos
    kind = sc.word()
    if kind not in ATOMS:
        sc.error(f"unknown group kind {kind!r} (expected one of {', '.join(ATOMS)})", start)
    sc.expect(":")
    num_pos = sc.pos
    n = sc.number()
    if n < 1:
        sc.error("size must be positive", num_pos)
    if kind == "dihedral" and n % 2:
        sc.error(f"dihedral order must be even, got {n}", num_pos)
    if kind != "perm":
        return Atom(kind, n)
    sc.expect(":")
    gens = [_generator(sc, n)]
    while sc.peek() == ",":
        sc.pos += 1
        sc.ws()
        gens.append(_generator(sc, n))
    return Atom(kind, n, tuple(gens))


def _generator(sc: _Scanner, degree: int) -> tuple[tuple[int, ...], ...]:
    cycles = []
    seen: set[int] = set()
    if sc.peek() != "(":
        sc.error("expected '(' to start a cycle")
    while sc.peek() == "(":
        sc.pos += 1
        sc.ws()
        pts = []
        while sc.peek() != ")":
            p_pos = sc.pos
            p = sc.number()
            if p >= degree:
                sc.error(f"point {p} is not below the degree {degree}", p_pos)
            if p in seen:
                sc.error(f"point {p} repeated", p_pos)
            seen.add(p)
            pts.append(p)
            sc.ws()
        sc.pos += 1
        if len(pts) > 1:
            cycles.append(tuple(pts))
    return tuple(cycles)


def construct(spec: GroupSpec | str, cap: int | None = None) -> PermGroup:
    """Build the permutation group for a description (string or parsed)."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    built = []
    for a in spec.factors:
        if a.kind == "cyclic":
            built.append(groups.cyclic(a.n, cap))
        elif a.kind == "sym":
            built.append(groups.symmetric(a.n, cap))
        elif a.kind == "alt":
            built.append(groups.alternating(a.n, cap))
        elif a.kind == "dihedral":
            built.append(groups.dihedral(a.n, cap))
        else:
            gens = [groups.perm_from_cycles(a.n, g) for g in a.gens]
            built.append(groups.PermGroup(a.n, gens, cap=cap, name=str(a)))
    G = built[0] if len(built) == 1 else groups.direct_product(*built, cap=cap)
    G.name = spec.canonical()
    return G
