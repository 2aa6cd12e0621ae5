import json

import pytest

from infcones.cli import FIXTURE_NAMES, fixture_path, load_fixture, load_splitting, load_subspace
from infcones.ideals import Ideal, Variety
from infcones.poly import VariableContext, parse_polynomial


def variety(vars, *gens):
    ctx = VariableContext(vars.split(","))
    return Variety(Ideal([parse_polynomial(g, ctx) for g in gens], ctx))


def golden(name):
    return json.loads(fixture_path(name, "golden.json").read_text())


def subspace(name, file):
    return load_subspace(fixture_path(name, file))


def splitting(name):
    return load_splitting(fixture_path(name, "split.json"))


_CACHE = {}


def fixture_variety(name):
    if name not in _CACHE:
        _CACHE[name] = load_fixture(name)
    return _CACHE[name]


_CONES = {}


def fixture_cone(name, which):
    from infcones.cones import cone
    key = (name, which)
    if key not in _CONES:
        _CONES[key] = cone(fixture_variety(name), which)
    return _CONES[key]


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_name(request):
    return request.param


def witness_runs(name):
    """All (label, cone kind, DirectionSample) triples declared in a fixture's witness manifest."""
    from infcones.cli import load_arc
    from infcones.witness import SampleSchedule, sample_directions, sample_secants

    X = fixture_variety(name)
    manifest = json.loads(fixture_path(name, "witness.json").read_text())
    runs = []
    for kind, cone_kind in (("c3", "C3"), ("c4", "C4")):
        for path in manifest[kind]:
            arc = load_arc(fixture_path(name, path), X)
            runs.append((f"{kind}:{path}", cone_kind, sample_directions(kind, arc, SampleSchedule())))
    for pair in manifest["secants"]:
        a, b = (load_arc(fixture_path(name, p), X) for p in pair["arcs"])
        sched = SampleSchedule(pairing=pair["pairing"])
        runs.append((f"c5:{'|'.join(pair['arcs'])}@{pair['pairing']}", "C5", sample_secants(a, b, sched)))
    return runs


CHAIN = {"C3": ("C3", "C4", "C5"), "C4": ("C4", "C5"), "C5": ("C5",)}


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
