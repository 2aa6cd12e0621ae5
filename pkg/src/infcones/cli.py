"""Command-line front end: JSON in, JSON reports out.

Exit codes: 0 computed or verified, 1 input error, 2 hypothesis not satisfied
(or not certified), 3 budget exceeded, 4 a checked conclusion failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import projections as proj
from . import witness as wit
from .cones import CONE_KINDS, cone, verify_inclusions
from .errors import InputError, ResourceExceeded
from .ideals import (
    Budget,
    Ideal,
    Variety,
    degree,
    dimension,
    distinct_point_count,
    singular_locus,
    use_budget,
)
from .poly import GREVLEX, LEX, VariableContext, parse_polynomial, parse_scalar

log = logging.getLogger("infcones")

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = ("line", "plane2", "parabola", "hyperbola", "cusp", "twisted")

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_RESOURCE, EXIT_FAILED = 0, 1, 2, 3, 4

_VERDICT_EXIT = {
    proj.VERIFIED: EXIT_OK,
    proj.HYPOTHESIS_NOT_SATISFIED: EXIT_HYPOTHESIS,
    proj.HYPOTHESIS_NOT_CERTIFIED: EXIT_HYPOTHESIS,
    proj.RESOURCE_EXCEEDED: EXIT_RESOURCE,
    proj.FAILED: EXIT_FAILED,
}


# ---------------------------------------------------------------------------
# loaders


def _read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _as_dict(data_or_path) -> dict:
    return data_or_path if isinstance(data_or_path, dict) else _read_json(data_or_path)


def variety_from_json(data: dict) -> Variety:
    if not isinstance(data.get("vars"), list) or not isinstance(data.get("generators"), list):
        raise InputError("variety file needs 'vars' and 'generators' lists")
    ctx = VariableContext(data["vars"])
    gens = [parse_polynomial(g, ctx) for g in data["generators"]] or [parse_polynomial("0", ctx)]
    X = Variety(Ideal(gens, ctx))
    claimed = data.get("claimed_dim")
    if claimed is not None and claimed != X.dim:
        raise InputError(f"claimed_dim {claimed} but the computed dimension is {X.dim}")
    return X


def load_variety(path) -> Variety:
    """Variety file ``{"vars": [...], "generators": [...], "claimed_dim": k?}``; k is computed eagerly."""
    return variety_from_json(_as_dict(path))


def subspace_from_json(data: dict) -> proj.LinearSubspace:
    try:
        m, basis = int(data["ambient"]), data["basis"]
    except (KeyError, TypeError, ValueError):
        raise InputError("subspace file needs 'ambient' and 'basis'") from None
    cols = [[parse_scalar(str(x)) for x in col] for col in basis]
    return proj.LinearSubspace(m, tuple(tuple(c) for c in cols))


def load_subspace(path) -> proj.LinearSubspace:
    return subspace_from_json(_as_dict(path))


def load_splitting(path) -> proj.Splitting:
    data = _as_dict(path)
    if "V" not in data or "W" not in data:
        raise InputError("splitting file needs 'V' and 'W'")
    return proj.Splitting(subspace_from_json(data["V"]), subspace_from_json(data["W"]))


def load_arc(path, X: Variety | None = None) -> wit.WitnessArc:
    """Arc file; validated against X when given."""
    arc = wit.WitnessArc.from_json(_as_dict(path))
    if X is not None:
        arc.validate(X)
    return arc


def fixture_path(name: str, *parts: str) -> Path:
    name = name.lower()
    if name not in FIXTURE_NAMES:
        raise InputError(f"unknown fixture {name!r}")
    return FIXTURES.joinpath(name, *parts)


def load_fixture(name: str) -> Variety:
    return load_variety(fixture_path(name, "variety.json"))


# ---------------------------------------------------------------------------
# jobs


@dataclass
class JobConfig:
    command: str
    input: str | None = None
    order: str = "grevlex"
    seed: int = 0
    budget: int = 500_000
    output: str | None = None
    verbosity: int = 0
    timings: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.budget <= 0:
            raise InputError("step budget must be positive")
        if self.order not in ("grevlex", "lex"):
            raise InputError(f"unknown order {self.order!r}")


class _Timer:
    def __init__(self):
        self.t = {}

    def __call__(self, name, fn, *a, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*a, **kw)
        finally:
            self.t[name] = round(time.perf_counter() - t0, 4)


def _order(cfg):
    return LEX if cfg.order == "lex" else GREVLEX


def _basis_strings(I: Ideal, order) -> list[str]:
    if I.is_zero_ideal():
        return []
    return [str(g) for g in I.groebner(order)]


def _membership_block(label, report) -> dict:
    out = report.to_json()
    out["sample_set"] = label
    return out


def _job_cone(cfg, X, timer):
    which = cfg.extra["which"].upper()
    res = timer(which, cone, X, which)
    out = res.to_json()
    if cfg.order != "grevlex":
        out["generators"] = _basis_strings(res.ideal, _order(cfg))
    out["stages"] = res.build.summary() if res.build else {}
    out["warnings"] = list(res.warnings)
    return EXIT_OK, out


def _job_inclusions(cfg, X, timer):
    cones = {w: timer(w, cone, X, w) for w in CONE_KINDS}
    rep = timer("inclusions", verify_inclusions, X, cones)
    out = rep.to_json()
    out["cones"] = {w: c.to_json() for w, c in cones.items()}
    return (EXIT_OK if rep.passed else EXIT_FAILED), out


def _job_dim(cfg, X, timer):
    return EXIT_OK, {"m": X.ambient_dim, "k": X.dim}


def _job_degree(cfg, X, timer):
    return EXIT_OK, {"m": X.ambient_dim, "k": X.dim, "degree": timer("degree", degree, X)}


def _job_singular(cfg, X, timer):
    S = timer("singular", singular_locus, X)
    d = dimension(S)
    out = {"generators": _basis_strings(S, _order(cfg)), "dim": d, "empty": d < 0}
    if d == 0:
        out["points"] = distinct_point_count(S)
    return EXIT_OK, out


def _subspace_or_transverse(cfg, X, cone_kind="C3"):
    if cfg.extra.get("subspace"):
        return load_subspace(cfg.extra["subspace"]), False
    c = cone(X, cone_kind)
    return proj.find_transverse_subspace(X, cfg.seed, cone=c), True


def _job_transverse(cfg, X, timer):
    W = timer("transverse", proj.find_transverse_subspace, X, cfg.seed)
    return EXIT_OK, {"subspace": W.to_json(), "seed": cfg.seed}


def _job_sheets(cfg, X, timer):
    W, drawn = _subspace_or_transverse(cfg, X)
    if not proj.check_proper(X, W):
        return EXIT_HYPOTHESIS, {"subspace": W.to_json(), "proper": False}
    n = timer("sheets", proj.sheet_count, X, W, cfg.seed)
    d = timer("degree", degree, X)
    return EXIT_OK, {"subspace": W.to_json(), "drawn": drawn, "proper": True, "sheets": n,
                     "degree": d, "sheets_equal_degree": n == d}


def _job_singular_vs_critical(cfg, X, timer):
    W, drawn = _subspace_or_transverse(cfg, X, "C4")
    rep = timer("check", proj.verify_theorem_1_2, X, W)
    out = rep.to_json()
    out["drawn_subspace"] = drawn
    return _VERDICT_EXIT[rep.verdict], out


def _job_hypersurface(cfg, X, timer):
    if not cfg.extra.get("splitting"):
        raise InputError("check-thm13 needs --splitting")
    split = load_splitting(cfg.extra["splitting"])
    rep = timer("check", proj.verify_theorem_1_3, X, split, cfg.extra["index"])
    return _VERDICT_EXIT[rep.verdict], rep.to_json()


def _job_linear(cfg, X, timer):
    split = load_splitting(cfg.extra["splitting"]) if cfg.extra.get("splitting") else None
    rep = timer("check", proj.check_affine_linearity, X, split=split, seed=cfg.seed)
    return _VERDICT_EXIT[rep.verdict], rep.to_json()


def _schedule(cfg) -> wit.SampleSchedule:
    data = _read_json(cfg.extra["schedule"]) if cfg.extra.get("schedule") else {}
    data.setdefault("seed", cfg.seed)
    if cfg.extra.get("pairing"):
        data["pairing"] = cfg.extra["pairing"]
    return wit.SampleSchedule.from_json(data)


def _job_witness(cfg, X, timer):
    kind = cfg.extra["kind"].lower()
    arcs = [load_arc(p, X) for p in cfg.extra.get("arc") or []]
    if not arcs:
        raise InputError("witness needs at least one --arc")
    sched = _schedule(cfg)
    chain = {"c3": CONE_KINDS, "c4": CONE_KINDS[1:], "c5": CONE_KINDS[2:]}[kind]
    cones = {w: timer(w, cone, X, w) for w in chain}
    if kind == "c5":
        if len(arcs) == 1:
            arcs = arcs * 2
        if len(arcs) != 2:
            raise InputError("c5 witnesses take one or two arcs")
        samples = [("secants", wit.sample_secants(arcs[0], arcs[1], sched))]
    else:
        samples = [(f"arc{j + 1}", wit.sample_directions(kind, a, sched)) for j, a in enumerate(arcs)]
    reports = [_membership_block(label, wit.check_cone_membership(cones[w], d)) | {"against": w}
               for label, d in samples for w in chain]
    ok = all(r["status"] == "PASS" for r in reports)
    return (EXIT_OK if ok else EXIT_FAILED), {"kind": kind, "checks": reports, "passed": ok}


def _job_region(cfg, X, timer):
    arcs = [load_arc(p, X) for p in cfg.extra.get("arc") or []]
    if not arcs:
        raise InputError("region-check needs at least one --arc")
    if not (cfg.extra.get("v1") and cfg.extra.get("v2")):
        raise InputError("region-check needs --v1 and --v2")
    V1, V2 = load_subspace(cfg.extra["v1"]), load_subspace(cfg.extra["v2"])
    if V1.dim != X.dim:
        raise InputError(f"V1 must have dimension k = {X.dim}")
    rep = wit.algebraic_region_check(arcs, V1, V2, cfg.extra["A"], cfg.extra["B"], _schedule(cfg))
    return (EXIT_OK if rep.passed else EXIT_FAILED), rep.to_json()


JOBS = {
    "cone": _job_cone,
    "inclusions": _job_inclusions,
    "dim": _job_dim,
    "degree": _job_degree,
    "singular": _job_singular,
    "transverse": _job_transverse,
    "sheets": _job_sheets,
    "check-thm12": _job_singular_vs_critical,
    "check-thm13": _job_hypersurface,
    "check-linear": _job_linear,
    "witness": _job_witness,
    "region-check": _job_region,
}


def run(cfg: JobConfig) -> tuple[int, dict]:
    """Execute one job; returns the exit code and the report dict."""
    timer = _Timer()
    budget = Budget(max_steps=cfg.budget)
    inputs = {"input": cfg.input, "order": cfg.order, "seed": cfg.seed, "budget": cfg.budget}
    inputs.update({k: v for k, v in sorted(cfg.extra.items()) if v is not None})
    report = {"command": cfg.command, "inputs": inputs, "results": None, "timings": None,
              "budget_used": 0}
    try:
        with use_budget(budget):
            if cfg.input is None:
                raise InputError("--input is required")
            X = timer("load", load_variety, cfg.input)
            code, results = JOBS[cfg.command](cfg, X, timer)
    except ResourceExceeded as exc:
        code, results = EXIT_RESOURCE, {"error": str(exc), "stage": exc.stage}
    except InputError as exc:
        code, results = EXIT_INPUT, {"error": str(exc)}
    report["results"] = results
    report["budget_used"] = budget.used
    if cfg.timings:
        report["timings"] = timer.t
    return code, report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="infcones", description="Tangent cones at infinity, computed exactly.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="variety JSON file")
    common.add_argument("--order", choices=["grevlex", "lex"], default="grevlex",
                        help="order for printed Groebner bases")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=500_000, help="S-pair step budget")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (non-deterministic)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("cone", parents=[common], help="compute one cone at infinity")
    sp.add_argument("--which", required=True, type=str.lower, choices=["c3", "c4", "c5"])
    for name, text in [("inclusions", "check C3 ⊆ C4 ⊆ C5 and the dimension window"),
                       ("dim", "dimension of X"), ("degree", "degree of X"),
                       ("singular", "singular locus of X"),
                       ("transverse", "draw a subspace transverse to C3")]:
        sub.add_parser(name, parents=[common], help=text)
    for name, text in [("sheets", "sheet count of a proper projection"),
                       ("check-thm12", "critical locus vs singular locus near infinity")]:
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("--subspace", help="kernel W; drawn at random when omitted")
    sp = sub.add_parser("check-thm13", parents=[common], help="hypersurface projection check")
    sp.add_argument("--splitting", required=True)
    sp.add_argument("--index", type=int, required=True, help="1-based W coordinate kept by the projection")
    sp = sub.add_parser("check-linear", parents=[common], help="pure C5 of dimension k forces linearity")
    sp.add_argument("--splitting")
    sp = sub.add_parser("witness", parents=[common], help="numeric sampling check of a cone")
    sp.add_argument("--kind", required=True, type=str.lower, choices=["c3", "c4", "c5"])
    sp.add_argument("--arc", action="append", help="arc JSON (repeatable)")
    sp.add_argument("--schedule", help="schedule JSON")
    sp.add_argument("--pairing", help="partner parameter as a polynomial in s (c5)")
    sp = sub.add_parser("region-check", parents=[common], help="algebraic region inequality on arc samples")
    sp.add_argument("--arc", action="append")
    sp.add_argument("--v1", required=True)
    sp.add_argument("--v2", required=True)
    sp.add_argument("-A", type=float, required=True)
    sp.add_argument("-B", type=float, required=True)
    sp.add_argument("--schedule")
    return p


_COMMON = {"command", "input", "order", "seed", "budget", "output", "verbose", "timings"}


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    extra = {k: v for k, v in vars(ns).items() if k not in _COMMON}
    return JobConfig(command=ns.command, input=ns.input, order=ns.order, seed=ns.seed,
                     budget=ns.budget, output=ns.output, verbosity=ns.verbose,
                     timings=ns.timings, extra=extra)


def render(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(ns.verbose, 2), format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(ns)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code, report = run(cfg)
    text = render(report)
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if code in (EXIT_INPUT, EXIT_RESOURCE):
        print(f"error: {report['results']['error']}", file=sys.stderr)
    log.info("exit code %d", code)
    return code


if __name__ == "__main__":
    sys.exit(main())
