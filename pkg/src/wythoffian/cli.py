"""Command-line front end: build skeletons, decide embeddings, regenerate the tables."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .complexes import FaceComplex, StructuralError, wythoff
from .coxeter import ResourceError, UnsupportedGroupError, build_group, cayley_graph, inversion_embedding
from .coxeter import reflection_count_formula
from .embed import EmbeddingCertificate, Limits, check_certificate, l1_verdict
from .graphs import MetricGraph, dual_skeleton, skeleton
from .tables import DEFAULT_SEED, SAMPLED_PAIRS, classify, coxeter_report, coxeter_table, table_report
from .zoo import regular

BALANCE_WORDS = {"yes": "equicut", "no": "neither"}
FAMILY_WORDS = {"H": "H", "halfH": "halfcube", "J": "johnson"}


def parse_v(text: str) -> tuple:
    try:
        V = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--v expects comma separated integers, got {text!r}")
    if not V:
        raise argparse.ArgumentTypeError("--v must name at least one dimension")
    return V


def _complex_for(spec: str, V: tuple) -> FaceComplex:
    K = regular(spec)
    bad = [v for v in V if not 0 <= v <= K.d]
    if bad:
        raise StructuralError(f"V={set(V)} is not a subset of {{0..{K.d}}} for {spec}")
    return wythoff(K, V, check=False)


def load_graph(target: str, V: tuple = (0,), dual: bool = False) -> MetricGraph:
    """A graph JSON file, a complex JSON file (its skeleton) or a polytope name with ``--v``."""
    p = Path(target)
    if p.is_file():
        data = json.loads(p.read_text())
        if "faces" in data:
            K = FaceComplex.from_json(data)
            return dual_skeleton(K) if dual else skeleton(K)
        return MetricGraph.from_json(data)
    W = _complex_for(target, V)
    return dual_skeleton(W) if dual else skeleton(W)


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# --- subcommands ---------------------------------------------------------------

def cmd_build(args) -> int:
    W = _complex_for(args.spec, args.v)
    if args.complex:
        _write(W.dumps(), args.out)
        return 0
    G = dual_skeleton(W) if args.dual else skeleton(W)
    _write(G.dumps(), args.out)
    if args.out:
        print(f"n={G.n} m={G.m}", file=sys.stderr)
    return 0


def embedding_line(e) -> str:
    fam = FAMILY_WORDS[e.family]
    dims = f"{e.m} {e.weight}" if e.family == "J" else f"{e.m}"
    bal = BALANCE_WORDS.get(e.balance, f"q-balanced {e.balance}")
    return f"{fam} {dims}, {bal}"


def cmd_embed(args) -> int:
    G = load_graph(args.graph, args.v, args.dual)
    limits = Limits.parse(args.limits) if args.limits else None
    v = classify(G, limits, enumerate_all=args.all)
    out = {"n": G.n, "edges": G.m, "verdict": v.kind}
    lines = []
    if v.embeddable:
        out["embeddings"] = [{"family": e.family, "m": e.m, "weight": e.weight, "balance": e.balance,
                              "text": embedding_line(e)} for e in v.embeddings]
        lines = [embedding_line(e) for e in v.embeddings]
        if args.cert_out:
            v.embeddings[0].certificate.save(args.cert_out)
            out["certificate"] = str(args.cert_out)
    elif v.kind == "non-5-gonal":
        out["witness"] = v.witness.to_json()
        lines = [f"non-5-gonal witness support={v.witness.support} b={v.witness.b} value={v.witness.value}"]
    else:
        what = "none: no scale 1 or 2 embedding" if v.kind == "none" else "undecided: search limits reached"
        lines = [what + (f" ({v.note})" if v.note else "")]
    if args.l1:
        lv = l1_verdict(G, limits=limits)
        out["l1"] = {"status": lv.status, "min_scale": lv.min_scale, "factor_sizes": [F.n for F in lv.factors],
                     "factor_scales": lv.factor_scales}
        lines.append(f"{lv} factors={[F.n for F in lv.factors]}")
    print(json.dumps(out) if args.json else "\n".join(lines))
    return 2 if v.kind == "undecided" or (args.l1 and out["l1"]["status"] == "undecided") else 0


def cmd_coxeter(args) -> int:
    W = build_group(args.type)
    t = len(W.reflections())
    expected = reflection_count_formula(args.type)
    G = cayley_graph(W)
    cert = inversion_embedding(W)
    mode = "exhaustive" if W.order <= args.exhaustive_cap else "sampled"
    chk = check_certificate(G, cert, mode=mode, pairs=args.pairs, seed=args.seed)
    if args.emit:
        Path(args.emit).write_text(G.dumps() + "\n")
    if args.emit_embedding:
        cert.save(args.emit_embedding)
    ok = t == expected and chk.ok
    out = {"type": args.type, "order": W.order, "reflections": t, "closed_form": expected,
           "check": {"ok": chk.ok, "mode": chk.mode, "pairs": chk.pairs, "seed": args.seed}}
    if args.json:
        print(json.dumps(out))
    else:
        print(f"{args.type}: |W|={W.order} |T|={t} (closed form {expected}); "
              f"inversion labels into H{cert.m}: {'OK' if chk.ok else 'FAIL'} ({chk.mode}, {chk.pairs} pairs)")
    return 0 if ok else 1


def cmd_table(args) -> int:
    t0 = time.time()
    limits = Limits.parse(args.limits) if args.limits else None
    cert_dir = Path(args.cert_dir) / args.which
    cert_dir.mkdir(parents=True, exist_ok=True)
    if args.which == "coxeter":
        rows = coxeter_table(args.max_rank, seed=args.seed, pairs=args.pairs, cert_dir=cert_dir)
        ok = all(r.ok for r in rows) and bool(rows)
        if args.json:
            print(json.dumps({"ok": ok, "rows": [vars(r) for r in rows]}))
        else:
            print(coxeter_report(rows))
    else:
        dim = int(args.which[1])
        log = (lambda s: print(s, file=sys.stderr)) if args.verbose else None
        rep = table_report(dim, cert_dir, limits, args.seed, args.pairs, do_sweep=not args.no_sweep, log=log)
        ok = rep.ok
        if args.json:
            print(json.dumps({"ok": ok, "rows": [
                {"name": r.row.name, "construction": r.row.construction(), "n": r.n, "verdict": str(r.verdict),
                 "ok": r.ok, "source": r.source, "certificates": r.cert_files, "problems": r.problems,
                 "extra": r.extra} for r in rep.rows],
                "checks": [{"check": c, "ok": o, "detail": d} for c, o, d in rep.checks]}))
        else:
            print(rep.text())
    print(f"certificates in {cert_dir}; {time.time() - t0:.1f}s", file=sys.stderr)
    return 0 if ok else 1


def cmd_check_cert(args) -> int:
    G = load_graph(args.graph, args.v, args.dual)
    cert = EmbeddingCertificate.load(args.cert)
    chk = check_certificate(G, cert, mode=args.mode, pairs=args.pairs, seed=args.seed)
    if args.json:
        print(json.dumps({"ok": chk.ok, "mode": chk.mode, "pairs": chk.pairs, "scale": cert.scale, "m": cert.m,
                          "failure": list(chk.failure) if chk.failure else None}))
    else:
        status = "OK" if chk.ok else f"FAIL {chk.failure}"
        print(f"{status}: scale {cert.scale} into H{cert.m}, {chk.mode} check over {chk.pairs} pairs")
    return 0 if chk.ok else 1


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wythoffian", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp):
        sp.add_argument("--v", type=parse_v, default=(0,), help="Wythoff type, e.g. 0,2 (default 0)")
        sp.add_argument("--dual", action="store_true", help="use the dual skeleton")

    b = sub.add_parser("build", help="emit the skeleton (or dual skeleton) of a Wythoffian as graph JSON")
    b.add_argument("spec", help="a3, b4, c4, ico, dodeca, 24cell, 600cell, 120cell, p5 ...")
    graph_args(b)
    b.add_argument("--complex", action="store_true", help="emit the face complex instead of a graph")
    b.add_argument("--out", help="write to this file instead of stdout")
    b.set_defaults(func=cmd_build)

    e = sub.add_parser("embed", help="decide hypercube / half-cube / Johnson embeddability")
    e.add_argument("graph", help="graph or complex JSON file, or a polytope name")
    graph_args(e)
    e.add_argument("--limits", help="search caps, e.g. nodes=2000000,halfspaces=200000")
    e.add_argument("--all", action="store_true", help="list every scale-2 embedding (small graphs)")
    e.add_argument("--l1", action="store_true", help="also factorize and report the least l1 scale")
    e.add_argument("--cert-out", help="save the first certificate here")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_embed)

    c = sub.add_parser("coxeter", help="build a finite Coxeter group and its Cayley graph")
    c.add_argument("--type", required=True, help="A5, B4, D5, E6, F4, H3, H4, I2(7) ...")
    c.add_argument("--emit", help="write the Cayley graph JSON here")
    c.add_argument("--emit-embedding", help="write the inversion-set certificate here")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--pairs", type=int, default=SAMPLED_PAIRS)
    c.add_argument("--exhaustive-cap", type=int, default=1152)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_coxeter)

    t = sub.add_parser("table", help="regenerate a table and diff it against the expected rows")
    t.add_argument("which", choices=["d3", "d4", "coxeter"])
    t.add_argument("--max-rank", type=int, default=5)
    t.add_argument("--cert-dir", default="certificates", help="certificate files go to <dir>/<which>")
    t.add_argument("--limits")
    t.add_argument("--seed", type=int, default=DEFAULT_SEED)
    t.add_argument("--pairs", type=int, default=SAMPLED_PAIRS)
    t.add_argument("--no-sweep", action="store_true", help="skip the sweep over all Wythoff types")
    t.add_argument("--verbose", action="store_true", help="progress on stderr")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)

    k = sub.add_parser("check-cert", help="verify an embedding certificate against a graph")
    k.add_argument("graph", help="graph or complex JSON file, or a polytope name")
    k.add_argument("cert")
    graph_args(k)
    k.add_argument("--mode", default="auto", choices=["auto", "exhaustive", "descent", "sampled"])
    k.add_argument("--pairs", type=int, default=SAMPLED_PAIRS)
    k.add_argument("--seed", type=int, default=DEFAULT_SEED)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_check_cert)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StructuralError, ValueError, UnsupportedGroupError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
