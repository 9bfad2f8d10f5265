"""JSON and DOT serialization of spectra, plus loaders that re-verify."""

from __future__ import annotations

import json
from collections import defaultdict

from eqtt.groups import EqttError
from eqtt.specparse import construct
from eqtt.spectrum import INF, SpectrumPoset, _level_str, build_spectrum, parse_level


class FormatError(EqttError):
    pass


def poset_to_dict(poset: SpectrumPoset) -> dict:
    names = [c.name for c in poset.group.classes]
    points = [{
        "id": i,
        "class": names[pt.cls],
        "char": pt.char,
        "level": "inf" if pt.level == INF else int(pt.level),
    } for i, pt in enumerate(poset.points)]
    edges = []
    for i, j, status in poset.edges:
        e = {"from": i, "to": j, "status": status}
        if status == "unknown":
            e["band"] = list(poset.relation[(i, j)].band)
        edges.append(e)
    return {
        "group": poset.group.name,
        "mode": poset.mode.value,
        "height": poset.height,
        "infinity": poset.infinity,
        "primes": list(poset.primes),
        "points": points,
        "edges": edges,
    }


def poset_to_json(poset: SpectrumPoset) -> str:
    return json.dumps(poset_to_dict(poset), indent=2)


def poset_from_dict(data: dict, cap: int | None = None) -> SpectrumPoset:
    """Rebuild the poset named by ``data`` and check it matches the stored points and edges."""
    try:
        G = construct(data["group"], cap)
        primes = data.get("primes")
        poset = build_spectrum(G, primes, int(data["height"]), bool(data["infinity"]), data["mode"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed spectrum document: {exc}") from exc
    stored = data.get("points", [])
    names = [c.name for c in G.classes]
    got = [(names.index(p["class"]) if p["class"] in names else -1, int(p["char"]),
            parse_level(p["level"])) for p in stored]
    want = [(pt.cls, pt.char, pt.level) for pt in poset.points]
    if got != want:
        raise FormatError("stored points do not match the recomputed spectrum")
    edges = sorted((e["from"], e["to"], e["status"]) for e in data.get("edges", []))
    if tuple(edges) != poset.edges:
        raise FormatError("stored edges do not match the recomputed spectrum")
    return poset


def poset_from_json(text: str, cap: int | None = None) -> SpectrumPoset:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return poset_from_dict(data, cap)


def _q(s: str) -> str:
    return '"' + s.replace('"', r'\"') + '"'


def poset_to_dot(poset: SpectrumPoset) -> str:
    """Hasse diagram, one column (cluster) per class, levels rising upward.

    An inclusion ``Q ⊊ P`` has ``level(Q) >= level(P)`` (equality only inside
    the infinity layer), so it is written ``P -> Q``; under ``rankdir=BT``
    the tail is drawn lower.  Unknown covers are dashed.
    """
    G = poset.group
    lines = ["digraph spectrum {", "  rankdir=BT;", "  node [shape=plaintext, fontsize=10];",
             "  edge [dir=none];"]
    by_class = defaultdict(list)
    by_level = defaultdict(list)
    for i, pt in enumerate(poset.points):
        by_class[pt.cls].append(i)
        by_level[pt.level].append(i)
    for k, ids in sorted(by_class.items()):
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_q(G.classes[k].name)};")
        for i in ids:
            lines.append(f"    p{i} [label={_q(poset.points[i].label(G))}];")
        lines.append("  }")
    for lvl, ids in sorted(by_level.items()):
        lines.append(f"  {{ rank=same; {' '.join(f'p{i};' for i in ids)} }}  // level {_level_str(lvl)}")
    for i, j, status in poset.edges:
        # i ⊆ j, so j is drawn below i
        style = " [style=dashed]" if status == "unknown" else ""
        lines.append(f"  p{j} -> p{i}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
