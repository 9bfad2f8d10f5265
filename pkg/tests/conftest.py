import functools
import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from eqtt.specparse import construct  # noqa: E402

settings.register_profile("eqtt", max_examples=60, deadline=None)
settings.load_profile("eqtt")

CORPUS = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "cyclic:8",
          "sym:3", "dihedral:8", "cyclic:2 x cyclic:2", "cyclic:30"]
SMALL = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "sym:3", "dihedral:8",
         "cyclic:2 x cyclic:2", "cyclic:6"]


@functools.lru_cache(maxsize=None)
def group(spec: str):
    return construct(spec)


@pytest.fixture(params=SMALL)
def small_group(request):
    return group(request.param)


def elements_of(G, members=None):
    idx = range(G.order) if members is None else members
    return [tuple(int(x) for x in G.elements[i]) for i in idx]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
