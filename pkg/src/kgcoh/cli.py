"""Command-line front end.

Every command prints one report.  ``--format structured`` gives canonical
JSON (sorted keys) that is byte-stable for a fixed input and seed;
``--format text`` is a readable summary that also shows the wall time.
Exit status: 0 when every check passes, 1 when a check fails, 2 on errors.
Circle values are entered and printed as fractions p/q in Q/Z.
"""

from __future__ import annotations

import argparse
import random
import os
import sys
import time
from typing import Sequence

from . import __version__, catalog
from .bridge import (
    Cat2Cocycle,
    ZeroCocycle,
    c_phi,
    cat2_eval_and_check,
    cub_class_equal,
    restrict_to_squares,
)
from .coeffs import parse_coeff
from .cubical import CubicalCochain, cohomology, cub_coboundary, cubes, homology, is_cub_2cocycle
from .diagnostics import periodicity_diagnostics
from .documents import emit, parse_cochain, parse_graph
from .errors import KGCohError, UnknownCommand, ValidationError
from .extensions import ext_law_suite
from .groupoid import (
    PartitionP,
    TupleSampler,
    choice_independence,
    refine_compare,
    sigma_eval,
    sigma_identity_suite,
)
from .kgraph import Morphism
from .snf import FinAbGroup
from .verdict import Verdict

COMMANDS = (
    "validate", "homology", "cohomology", "cocycle-check", "bridge-roundtrip",
    "class-equal", "ext-laws", "sigma-check", "diagnostics",
)


class UsageError(KGCohError):
    pass


def _jsonable(obj):
    if isinstance(obj, Verdict):
        out = {"ok": obj.ok, "checked": obj.checked}
        if obj.detail:
            out["detail"] = obj.detail
        if obj.witness is not None:
            out["witness"] = _jsonable(obj.witness)
        return out
    if isinstance(obj, Morphism):
        return str(obj)
    if isinstance(obj, FinAbGroup):
        return {"group": obj.describe(), "free_rank": obj.free_rank, "torsion": list(obj.torsion)}
    if isinstance(obj, CubicalCochain):
        return obj.as_dict()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def _load_graph(arg: str | None):
    if not arg:
        raise UsageError("--graph is required")
    if not os.path.exists(arg) and arg in catalog.BUILDERS:
        return catalog.get(arg)
    return parse_graph(arg, name=os.path.basename(arg))


def _load_phis(args, g, need: int = 1):
    paths = args.phi or []
    if len(paths) < need:
        raise UsageError(f"expected at least {need} --phi document(s)")
    return [parse_cochain(p) for p in paths]


def _cocycle_of(doc, g) -> Cat2Cocycle:
    c = doc.cocycle(g)
    if c is None:
        raise UsageError("this command needs a cubical2 or cat-coboundary document")
    return c


def _all_ok(results) -> bool:
    if isinstance(results, Verdict):
        return results.ok
    if isinstance(results, dict):
        return all(_all_ok(v) for v in results.values())
    if isinstance(results, (list, tuple)):
        return all(_all_ok(v) for v in results)
    return True


# -- commands ---------------------------------------------------------------


def cmd_validate(args):
    try:
        g = _load_graph(args.graph)
    except ValidationError as exc:
        witness = list(getattr(exc, "word", ()))
        res = {"valid": Verdict(False, witness or None, f"{type(exc).__name__}: {exc}")}
        return res
    return {
        "valid": Verdict(True),
        "k": g.k,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "squares": len(g.squares),
        "cubes": [len(cubes(g, r)) for r in range(g.k + 1)],
    }


def _upto(args, g) -> int:
    return g.k if args.upto is None else args.upto


def cmd_homology(args):
    g = _load_graph(args.graph)
    return {f"H_{r}": homology(g, r) for r in range(_upto(args, g) + 1)}


def cmd_cohomology(args):
    g = _load_graph(args.graph)
    grp = parse_coeff(args.coeff or "Z")
    return {"coeff": grp.name, **{f"H^{r}": cohomology(g, r, grp) for r in range(_upto(args, g) + 1)}}


def cmd_cocycle_check(args):
    g = _load_graph(args.graph)
    doc = _load_phis(args, g)[0]
    obj = doc.cochain(g)
    res = {"kind": doc.kind, "coeff": doc.coeff.name}
    if doc.kind == "cubical2":
        res["cubical_identity"] = is_cub_2cocycle(obj)
    if doc.kind == "functor1":
        f = obj.restrict()
        res["cubical_identity"] = Verdict(cub_coboundary(f).is_zero(), None, "")
        return res
    res["categorical_identity"] = cat2_eval_and_check(
        doc.cocycle(g), n_random=args.triples, seed=args.seed)
    return res


def cmd_bridge_roundtrip(args):
    g = _load_graph(args.graph)
    doc = _load_phis(args, g)[0]
    if doc.kind != "cubical2":
        raise UsageError("bridge-roundtrip needs a cubical2 document")
    phi = doc.cochain(g)
    res = {"coeff": doc.coeff.name, "phi": phi, "phi_is_cocycle": is_cub_2cocycle(phi)}
    back = restrict_to_squares(c_phi(phi))
    diff = [str(lam) for (lam, a), (_, b) in zip(phi.items(), back.items()) if a != b]
    res["roundtrip"] = Verdict(not diff, diff or None, "")
    res["phi_c"] = back
    res["phi_c_is_cocycle"] = is_cub_2cocycle(back)
    return res


def cmd_class_equal(args):
    g = _load_graph(args.graph)
    docs = _load_phis(args, g, need=2)
    a, b = (d.cochain(g) for d in docs[:2])
    if docs[0].kind != "cubical2" or docs[1].kind != "cubical2":
        raise UsageError("class-equal compares two cubical2 documents")
    v = cub_class_equal(a, b)
    out = {"coeff": docs[0].coeff.name, "class_equal": Verdict(v.ok, None, v.detail)}
    if v.ok:
        out["certificate"] = v.witness
    return out


def cmd_ext_laws(args):
    g = _load_graph(args.graph)
    docs = _load_phis(args, g)
    cs = [_cocycle_of(d, g) for d in docs]
    grp = cs[0].group
    cs.append(ZeroCocycle(g, grp))
    report = ext_law_suite(g, grp, cs, n_pairs=args.triples, seed=args.seed)
    return {"coeff": grp.name, "laws": report}


def cmd_sigma_check(args):
    g = _load_graph(args.graph)
    doc = _load_phis(args, g)[0]
    c = _cocycle_of(doc, g)
    P = PartitionP(g)
    n = args.triples
    res = {"coeff": doc.coeff.name}
    b = doc.cochain(g) if doc.kind == "cat-coboundary" else None
    res.update(sigma_identity_suite(c, P, n_triples=n, seed=args.seed, coboundary_of=b))
    res["choice_independence"] = choice_independence(c, P, n_pairs=min(n, 200), seed=args.seed)
    res["refine_compare"] = refine_compare(c, P, n_pairs=min(n, 200), seed=args.seed)
    rng = random.Random(args.seed)
    sampler = TupleSampler(g)
    samples = []
    for _ in range(12):
        t = sampler.sample(rng, 2)
        samples.append({
            "paths": [str(p) for p in t.paths],
            "tail": str(t.tail.prefix),
            "sigma": doc.coeff.fmt(sigma_eval(c, P, t)),
        })
    res["samples"] = samples
    return res


def _parse_bound(text: str, k: int) -> tuple:
    parts = [int(x) for x in text.split(",")]
    if len(parts) == 1 and k > 1:
        parts = parts * k
    if len(parts) != k:
        raise UsageError(f"--bound needs {k} entries")
    return tuple(parts)


def cmd_diagnostics(args):
    g = _load_graph(args.graph)
    bound = _parse_bound(args.bound, g.k) if args.bound else (2,) * g.k
    rep = periodicity_diagnostics(g, bound)
    return {
        "bound": list(bound),
        "aperiodicity": rep.aperiodicity,
        "aperiodicity_witness": rep.witness,
        "pairs_checked": rep.pairs_checked,
        "cofinal_up_to_bound": rep.cofinal,
        "cofinality_witness": rep.cofinality_witness,
        "paths_checked": rep.paths_checked,
        "note": "bounded semi-decision; not a proof beyond the bound",
    }


HANDLERS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "cohomology": cmd_cohomology,
    "cocycle-check": cmd_cocycle_check,
    "bridge-roundtrip": cmd_bridge_roundtrip,
    "class-equal": cmd_class_equal,
    "ext-laws": cmd_ext_laws,
    "sigma-check": cmd_sigma_check,
    "diagnostics": cmd_diagnostics,
}

RANDOMISED = {"cocycle-check", "ext-laws", "sigma-check"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgcoh", description="Cohomology toolkit for finite k-graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", help=", ".join(COMMANDS))
    parser.add_argument("--graph", help="graph document path or catalog name")
    parser.add_argument("--phi", action="append", help="cochain document (repeatable)")
    parser.add_argument("--coeff", help="coefficient group: Z, Z/n")
    parser.add_argument("--upto", type=int, help="highest degree for homology/cohomology")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--triples", type=int, default=None, help="sample size for randomised checks")
    parser.add_argument("--bound", help="degree bound for diagnostics, e.g. 2,2")
    parser.add_argument("--format", choices=("text", "structured", "json"), default="text")
    return parser


def run(command: str, args) -> tuple:
    """Execute one command; returns (report dict, exit status)."""
    if command not in HANDLERS:
        raise UnknownCommand(command)
    if args.triples is None:
        args.triples = 100 if command == "ext-laws" else 500
    results = HANDLERS[command](args)
    status = "pass" if _all_ok(results) else "fail"
    report = {
        "tool": "kgcoh",
        "command": command,
        "inputs": {
            "graph": os.path.basename(args.graph) if args.graph else None,
            "phi": [os.path.basename(p) for p in (args.phi or [])],
        },
        "seed": args.seed if command in RANDOMISED else None,
        "status": status,
        "results": _jsonable(results),
    }
    return report, 0 if status == "pass" else 1


def render_text(report: dict, elapsed: float | None = None) -> str:
    lines = [f"kgcoh report: {report['command']}", f"seed: {report['seed']}", f"status: {report['status']}"]

    def walk(prefix, obj):
        if isinstance(obj, dict) and "ok" in obj and "checked" in obj:
            mark = "PASS" if obj["ok"] else "FAIL"
            extra = f" ({obj['detail']})" if obj.get("detail") else ""
            wit = f" witness={obj['witness']}" if "witness" in obj else ""
            lines.append(f"{prefix}: {mark} [{obj['checked']} checked]{extra}{wit}")
        elif isinstance(obj, dict) and "group" in obj:
            lines.append(f"{prefix}: {obj['group']}")
        elif isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        else:
            lines.append(f"{prefix}: {obj}")

    walk("", report.get("results", {}))
    if elapsed is not None:
        lines.append(f"time: {elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = "structured" if args.format == "json" else args.format
    start = time.perf_counter()
    try:
        report, code = run(args.command, args)
    except (KGCohError, OSError, KeyError, ValueError) as exc:
        report = {
            "tool": "kgcoh",
            "command": args.command,
            "status": "error",
            "error": f"{type(exc).__name__}: {exc}",
        }
        code = 2
        print(report["error"], file=sys.stderr)
    if fmt == "structured":
        sys.stdout.write(emit(report))
    elif report["status"] == "error":
        sys.stdout.write(f"kgcoh report: {args.command}\nstatus: error\n{report['error']}\n")
    else:
        sys.stdout.write(render_text(report, time.perf_counter() - start))
    return code


if __name__ == "__main__":
    sys.exit(main())
