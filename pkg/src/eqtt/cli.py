"""``eqtt`` command line.

Exit status: 0 on success, 1 on a domain error (bad class name, undecided
topology, ...), 2 on a usage error (bad flags, malformed group description).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from eqtt.burnside import burnside_spectrum, table_of_marks
from eqtt.groups import EqttError, perm_to_cycles
from eqtt.ideals import enumerate_admissible, function_from_dict, is_admissible
from eqtt.specparse import GroupSpecError, construct
from eqtt.spectrum import Mode, build_spectrum, inclusion, make_prime
from eqtt.export import poset_to_dot, poset_to_json


class UsageError(Exception):
    pass


def _primes(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {text!r}; expected e.g. 2,3") from None


def _point(G, text: str):
    parts = text.rsplit(",", 2)
    if len(parts) != 3:
        raise UsageError(f"bad point {text!r}; expected 'CLASS,CHAR,LEVEL'")
    name, char, level = (s.strip() for s in parts)
    try:
        char = int(char)
    except ValueError:
        raise UsageError(f"bad characteristic {char!r}") from None
    return make_prime(G, name, char, level)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text)


def cmd_subgroups(G, args) -> None:
    rows = []
    for c in G.classes:
        gens = [perm_to_cycles(G.elements[g]) for g in c.representative.gens]
        rows.append({"name": c.name, "order": c.order, "class_size": c.class_size,
                     "normalizer_order": c.normalizer_order, "generators": gens})
    if args.json:
        _emit(json.dumps({"group": G.name, "order": G.order, "classes": rows}, indent=2), None)
        return
    print(f"# {G.name}  order {G.order}  {len(rows)} classes of subgroups")
    print(f"{'name':<10} {'order':>6} {'conj':>5} {'|N|':>6}  generators")
    for r in rows:
        print(f"{r['name']:<10} {r['order']:>6} {r['class_size']:>5} {r['normalizer_order']:>6}  "
              + (", ".join(r["generators"]) or "()"))


def cmd_marks(G, args) -> None:
    tab = table_of_marks(G)
    _emit(tab.to_json() if args.format == "json" else tab.to_csv(), args.output)


def cmd_burnside(G, args) -> None:
    spec = burnside_spectrum(G, _primes(args.primes))
    _emit(json.dumps(spec.to_dict(), indent=2), args.output)


def cmd_tt_spec(G, args) -> None:
    poset = build_spectrum(G, _primes(args.primes), args.height, args.infinity, args.mode)
    if args.dot:
        _emit(poset_to_dot(poset), args.dot)
    if args.json or not args.dot:
        _emit(poset_to_json(poset), args.json)


def cmd_include(G, args) -> None:
    print(inclusion(G, _point(G, args.smaller), _point(G, args.larger), args.mode))


def cmd_ideals(G, args) -> None:
    primes = _primes(args.primes)
    if args.action == "check":
        if not args.function:
            raise UsageError("ideals check needs --function (JSON text or a path)")
        src = args.function
        text = Path(src).read_text() if Path(src).is_file() else src
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--function is not valid JSON: {exc}") from None
        f = function_from_dict(G, data, primes)
        print(is_admissible(f, args.mode))
        return
    en = enumerate_admissible(G, primes, args.height, args.mode, args.infinity)
    if args.action == "count" or args.count_only:
        print(en.count)
        return
    for f in en:
        print(json.dumps(f.to_dict()))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eqtt", description="Burnside rings and equivariant tt-spectra of finite groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", "-g", required=True,
                        help="group description, e.g. sym:3, dihedral:8, 'cyclic:2 x cyclic:2', perm:3:(0 1),(0 1 2)")
    common.add_argument("--order-cap", type=int, default=None, help="refuse groups larger than this")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subgroups", parents=[common], help="list conjugacy classes of subgroups")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_subgroups)

    p = sub.add_parser("marks", parents=[common], help="table of marks")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_marks)

    p = sub.add_parser("burnside-spec", parents=[common], help="Dress's prime spectrum of A(G)")
    p.add_argument("--primes")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_burnside)

    modes = [m.value for m in Mode]
    p = sub.add_parser("tt-spec", parents=[common], help="truncated tt-spectrum as JSON and/or DOT")
    p.add_argument("--primes")
    p.add_argument("--height", type=int, default=3)
    p.add_argument("--mode", choices=modes, default="conjectural")
    p.add_argument("--infinity", action="store_true", help="include the level-infinity layer")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_tt_spec)

    p = sub.add_parser("include", parents=[common], help="decide P(K,q,n) ⊆ P(H,p,m)")
    p.add_argument("smaller", help="K,q,n")
    p.add_argument("larger", help="H,p,m")
    p.add_argument("--mode", choices=modes, default="conjectural")
    p.set_defaults(func=cmd_include)

    p = sub.add_parser("ideals", parents=[common], help="tt-ideals via admissible functions")
    p.add_argument("action", choices=["count", "list", "check"])
    p.add_argument("--primes", "--prime", dest="primes")
    p.add_argument("--height", type=int, default=3)
    p.add_argument("--mode", choices=modes, default="conjectural")
    p.add_argument("--infinity", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--function", help="admissible function as JSON text or a file path (for check)")
    p.set_defaults(func=cmd_ideals)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        G = construct(args.group, args.order_cap)
        args.func(G, args)
    except (GroupSpecError, UsageError) as exc:
        print(f"eqtt: usage error: {exc}", file=sys.stderr)
        return 2
    except EqttError as exc:
        print(f"eqtt: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
