"""Command-line front end.  One operation per invocation.

Exit status: 0 success, 1 validation failure or negative verdict (the report
is still printed), 2 usage or schema error, 3 size cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import _util
from ._util import canonical_sorted, label
from .approximation import ApproximationState, closed_framework, ultra_closed_filters, wallman_space
from .causal_site import (
    CausalSite,
    check_axioms,
    cutting,
    from_poset,
    maximal_centered,
    n_set,
    weakest_causal,
    weakly_causal_topology,
)
from .errors import CapExceeded, CausalTopoError, SchemaError
from .fintop import (
    degroot_dual,
    discrete,
    dual_sequence,
    indiscrete,
    is_compact,
    is_homeomorphic,
    is_T1,
    random_space,
    sierpinski,
)
from .framework import dual, is_topological_model, t0_quotient
from .minkowski import build_causal_site, point_correspondence
from .reference_suite import khalimsky_segment, run_all
from .serialize import (
    dumps,
    events_from_obj,
    framework_from_obj,
    framework_to_obj,
    poset_from_obj,
    read_json,
    site_from_obj,
    site_to_obj,
    space_from_obj,
    space_to_obj,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class Outcome:
    def __init__(self, report: dict, ok: bool = True):
        self.report = report
        self.ok = ok


def _load_site(path) -> CausalSite:
    inc, prec = site_from_obj(read_json(path))
    return CausalSite(inc, prec)


def _region(site: CausalSite, name: str):
    for r in site.regions:
        if label(r) == name:
            return r
    raise SchemaError("region", f"unknown region {name!r}")


def _families(fams) -> list:
    return sorted(sorted(label(x) for x in F) for F in fams)


def cmd_check_axioms(args) -> Outcome:
    inc, prec = site_from_obj(read_json(args.file))
    rep = check_axioms(inc, prec)
    return Outcome(rep.to_dict(), rep.passed)


def cmd_weakest_causal(args) -> Outcome:
    return Outcome(site_to_obj(weakest_causal(poset_from_obj(read_json(args.file)))))


def cmd_from_poset(args) -> Outcome:
    return Outcome(site_to_obj(from_poset(poset_from_obj(read_json(args.file)), cap=args.cap)))


def cmd_cutting(args) -> Outcome:
    site = _load_site(args.file)
    a, b = _region(site, args.a), _region(site, args.b)
    return Outcome({"a": label(a), "b": label(b), "cutting": label(cutting(site, b, a))})


def cmd_n_set(args) -> Outcome:
    site = _load_site(args.file)
    x = _region(site, args.x)
    return Outcome({"x": label(x), "n_set": sorted(label(y) for y in n_set(site, x))})


def cmd_centered(args) -> Outcome:
    site = _load_site(args.file)
    fams = maximal_centered(site)
    return Outcome({"count": len(fams), "maximal_centered": _families(fams)})


def cmd_weakly_causal(args) -> Outcome:
    site = _load_site(args.file)
    space = weakly_causal_topology(site)
    pts = {F: "M" + str(i) for i, F in enumerate(sorted(space.points, key=lambda F: sorted(label(x) for x in F)))}
    named = space.relabel(pts)
    return Outcome({
        "topology": space_to_obj(named),
        "points": {pts[F]: sorted(label(x) for x in F) for F in space.points},
        "T1": is_T1(space),
        "compact": is_compact(space),
    })


def cmd_framework_dual(args) -> Outcome:
    return Outcome(framework_to_obj(dual(framework_from_obj(read_json(args.file)))))


def cmd_framework_quotient(args) -> Outcome:
    q, to_class = t0_quotient(framework_from_obj(read_json(args.file)))
    return Outcome({
        "framework": framework_to_obj(q),
        "classes": {label(p): label(c) for p, c in to_class.items()},
    })


def cmd_is_model(args) -> Outcome:
    f = framework_from_obj(read_json(args.framework))
    space = space_from_obj(read_json(args.topology))
    ok, witness = is_topological_model(f, space, args.mode)
    if witness is not None:
        witness = {
            "points": [label(x) for x in witness["points"]],
            "sets": {label(p): [label(x) for x in s] for p, s in witness["sets"].items()},
        }
    return Outcome({"mode": args.mode, "model": ok, "witness": witness}, ok)


def cmd_topo_gen(args) -> Outcome:
    pts = [str(i) for i in range(args.n)]
    if args.kind == "discrete":
        space = discrete(pts)
    elif args.kind == "indiscrete":
        space = indiscrete(pts)
    elif args.kind == "sierpinski":
        space = sierpinski()
    elif args.kind == "khalimsky":
        space = khalimsky_segment()
    else:
        space = random_space(args.n, random.Random(args.seed), labels=pts)
    return Outcome(space_to_obj(space))


def cmd_degroot(args) -> Outcome:
    return Outcome(space_to_obj(degroot_dual(space_from_obj(read_json(args.file)))))


def cmd_dual_seq(args) -> Outcome:
    seq = dual_sequence(space_from_obj(read_json(args.file)))
    return Outcome({
        "closed_set_counts": [len(t.closed) for t in seq.topologies],
        "distinct": seq.distinct,
        "cycle_start": seq.cycle_start,
        "period": seq.period,
    })


def cmd_homeo(args) -> Outcome:
    a = space_from_obj(read_json(args.first))
    b = space_from_obj(read_json(args.second))
    ok, witness = is_homeomorphic(a, b)
    if witness is not None:
        witness = {label(x): label(y) for x, y in witness.items()}
    return Outcome({"homeomorphic": ok, "witness": witness}, ok)


def cmd_minkowski_gen(args) -> Outcome:
    es = events_from_obj(read_json(args.file))
    return Outcome(site_to_obj(build_causal_site(es, args.maxF, args.maxG, args.maxUnion)))


def cmd_point_corr(args) -> Outcome:
    es = events_from_obj(read_json(args.file))
    site = build_causal_site(es, args.maxF, args.maxG, args.maxUnion)
    pc = point_correspondence(es, site)
    space = weakly_causal_topology(site)
    homeo, _ = is_homeomorphic(space, discrete(list(range(len(es)))), cap=max(len(es), 1))
    return Outcome({
        "events": len(es),
        "families": {label(p): len(F) for p, F in pc.f.items()},
        "inverse": all(pc.g[pc.f[p]] == p for p in pc.f) and all(pc.f[pc.g[Q]] == Q for Q in pc.g),
        "homeomorphic_to_discrete": homeo,
    }, homeo)


def _fmt_family(fam) -> list:
    return sorted(sorted(label(x) for x in U) for U in fam)


def cmd_approx(args) -> Outcome:
    obj = read_json(args.file)
    if isinstance(obj, dict) and "places" in obj:
        f = framework_from_obj(obj)
        st = ApproximationState.of(f)
        return Outcome({"kind": "framework", "sigma_size": len(st.sigma), "mu": _fmt_family(st.mu)})
    space = space_from_obj(obj)
    f = closed_framework(space)
    st = ApproximationState.of(f)
    eta = ultra_closed_filters(space)
    report = {
        "kind": "topology",
        "sigma_size": len(st.sigma),
        "mu": [_fmt_family(U) for U in canonical_sorted(st.mu)],
        "eta": [_fmt_family(U) for U in eta],
        "mu_equals_eta": set(st.mu) == set(eta),
        "T1": is_T1(space),
    }
    if report["T1"]:
        w = wallman_space(space)
        report["wallman_homeomorphic"] = is_homeomorphic(w.space, space, cap=max(space.n, 1))[0]
    return Outcome(report)


def cmd_wallman(args) -> Outcome:
    space = space_from_obj(read_json(args.file))
    w = wallman_space(space)
    homeo, _ = is_homeomorphic(w.space, space, cap=max(space.n, 1))
    return Outcome({
        "points": w.space.n,
        "homeomorphic": homeo,
        "embedding": {label(x): _fmt_family(C) for x, C in w.embedding.items()},
    }, homeo)


def cmd_reference_suite(args) -> Outcome:
    rows = run_all()
    return Outcome(
        {"examples": [{"name": n, "check": w, "passed": ok} for n, w, ok in rows],
         "passed": sum(ok for *_, ok in rows), "total": len(rows)},
        all(ok for *_, ok in rows),
    )


def _render_text(report: dict) -> str:
    if "examples" in report:
        width = max(len(e["name"]) for e in report["examples"])
        lines = [f"{'PASS' if e['passed'] else 'FAIL'}  {e['name']:<{width}}  {e['check']}" for e in report["examples"]]
        lines.append(f"passed={report['passed']}/{report['total']}")
        return "\n".join(lines) + "\n"
    lines = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, (dict, list)):
            lines.append(f"{k}={json.dumps(v, sort_keys=True, ensure_ascii=False, separators=(',', ':'))}")
        elif isinstance(v, bool):
            lines.append(f"{k}={str(v).lower()}")
        else:
            lines.append(f"{k}={v}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--cap", type=int, default=None, help="override every size cap for this run")
    common.add_argument("-o", "--output", default="-", help="output path (default: stdout)")

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--maxF", type=int, default=1)
    caps.add_argument("--maxG", type=int, default=1)
    caps.add_argument("--maxUnion", type=int, default=None, help="default: unbounded")

    ap = argparse.ArgumentParser(prog="causaltopo", description="Finite causal sites, frameworks and topologies.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, parents=(common,), aliases=()):
        p = sub.add_parser(name, help=help_, parents=list(parents), aliases=list(aliases))
        p.set_defaults(func=fn)
        return p

    add("check-axioms", cmd_check_axioms, "verify the causal-site axioms").add_argument("file")
    add("weakest-causal", cmd_weakest_causal, "weakest causal relation on a poset").add_argument("file")
    add("from-poset", cmd_from_poset, "causal site of subsets of a poset").add_argument("file")
    p = add("cutting", cmd_cutting, "cutting of region A by region B")
    p.add_argument("file")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = add("n-set", cmd_n_set, "regions causally unrelated to X")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    add("centered", cmd_centered, "maximal centered families").add_argument("file")
    add("weakly-causal", cmd_weakly_causal, "weakly causal topology of a site").add_argument("file")
    add("framework-dual", cmd_framework_dual, "dual framework").add_argument("file")
    add("framework-quotient", cmd_framework_quotient, "T0 quotient of a framework").add_argument("file")
    p = add("is-model", cmd_is_model, "topological-model search")
    p.add_argument("framework")
    p.add_argument("topology")
    p.add_argument("--mode", choices=["open", "closed"], default="open")
    p = add("topo-gen", cmd_topo_gen, "generate a topology file")
    p.add_argument("--kind", choices=["discrete", "indiscrete", "sierpinski", "khalimsky", "random"], default="random")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    add("degroot", cmd_degroot, "de Groot (co-compact) dual").add_argument("file")
    add("dual-seq", cmd_dual_seq, "iterated de Groot duals").add_argument("file")
    p = add("homeo", cmd_homeo, "homeomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    add("minkowski-gen", cmd_minkowski_gen, "causal site of multi-diamond unions",
        parents=(common, caps)).add_argument("file")
    add("point-corr", cmd_point_corr, "events versus maximal centered families",
        parents=(common, caps)).add_argument("file")
    add("approx", cmd_approx, "σ, μ, ultra-closed filters and the Wallman verdict").add_argument("file")
    add("wallman", cmd_wallman, "Wallman space of a finite T1 space").add_argument("file")
    p = add("reference-suite", cmd_reference_suite, "run the worked reference examples",
            aliases=("paper-suite",))
    p.add_argument("--seed", type=int, default=0, help="accepted for interface symmetry; examples are seeded")
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _util.session_cap = args.cap
    try:
        out = args.func(args)
    except SchemaError as exc:
        print(f"error: schema: {exc}", file=stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"error: cap exceeded: {exc}", file=stderr)
        return EXIT_CAP
    except CausalTopoError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_FAIL
    finally:
        _util.session_cap = None
    text = _render_text(out.report) if args.format == "text" else dumps(out.report)
    if args.output == "-":
        stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK if out.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
