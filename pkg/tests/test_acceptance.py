"""Acceptance suite: each test prints one PASS/FAIL line, collected again at the end of the run."""
from __future__ import annotations

import itertools
import time
from functools import lru_cache

import pytest

from wythoffian.complexes import wythoff, wythoffian_problems
from wythoffian.coxeter import build_group, cayley_graph
from wythoffian.embed import (check_certificate, check_violation, five_gonal_violation, gw_factorize,
                              hypermetric_check, l1_verdict, lp_l1, partial_cube, scale2_search, scale_search)
from wythoffian.graphs import (cocktail_party, complete_minus_cycle, dual_skeleton, hypercube_minus_antipodes,
                               is_isomorphic, johnson, skeleton)
from wythoffian.tables import (COXETER_TYPES, DEFAULT_SEED, GOLDEN_DIR, SAMPLED_PAIRS, coxeter_table, graph_of,
                               table_report)
from wythoffian.zoo import cross_polytope, polygon, regular, simplex


@lru_cache(maxsize=None)
def timed_table(dim: int, cert_dir: str):
    from pathlib import Path
    t0 = time.time()
    rep = table_report(dim, Path(cert_dir), seed=DEFAULT_SEED, pairs=SAMPLED_PAIRS)
    return rep, time.time() - t0


@pytest.fixture(scope="module")
def cert_root(tmp_path_factory):
    return tmp_path_factory.mktemp("acceptance-certs")


def _files_accepted(rep) -> bool:
    from wythoffian.embed import EmbeddingCertificate
    for r in rep.rows:
        if not r.cert_files:
            return False
        G = graph_of(*r.row.key)
        for p in r.cert_files:
            if not check_certificate(G, EmbeddingCertificate.load(p)).ok:
                return False
    return True


def test_criterion_1_table_d3(criterion, cert_root):
    rep, secs = timed_table(3, str(cert_root / "d3"))
    matched = sum(r.ok for r in rep.rows)
    half26 = next(r for r in rep.rows if r.row.slug == "ico_12_dual")
    golden = (GOLDEN_DIR / "ico_12_dual.json").exists() and half26.extra.get("golden", False)
    files = _files_accepted(rep)
    ok = rep.ok and matched == 16 == len(rep.rows) and secs < 300 and golden and files
    detail = (f"{matched}/16 rows, ½H26 row {half26.source} (golden certificate accepted: {golden}), "
              f"certificate files accepted: {files}, {len(rep.checks)} sweep checks ok={all(c[1] for c in rep.checks)}, "
              f"{secs:.0f}s")
    assert criterion(1, "embeddable Wythoffians, d=3", ok, detail), rep.text()


def test_criterion_2_table_d4(criterion, cert_root):
    rep, secs = timed_table(4, str(cert_root / "d4"))
    matched = sum(r.ok for r in rep.rows)
    row600 = next(r for r in rep.rows if r.row.key == ("600cell", (0, 1, 2, 3), False))
    emb = row600.verdict.embeddings[0] if row600.verdict.embeddings else None
    classes = emb.m if emb is not None else None
    ex = row600.extra
    ok = (rep.ok and matched == 11 == len(rep.rows) and row600.n == 14400 and classes == 60
          and ex.get("cayley_identity") and ex.get("inversion_ok") and ex.get("sampled_pairs", 0) >= 10 ** 6
          and _files_accepted(rep) and secs < 900)
    detail = (f"{matched}/11 rows, 600-cell n={row600.n} Θ-classes={classes}, inversion certificate "
              f"{'ok' if ex.get('inversion_ok') else 'FAILED'} on {ex.get('sampled_pairs')} pairs "
              f"(seed {ex.get('seed')}), Cayley identity {ex.get('cayley_identity')}, {secs:.0f}s")
    assert criterion(2, "embeddable Wythoffians, d=4", ok, detail), rep.text()


def test_criterion_3_coxeter_table(criterion):
    rows = coxeter_table(max_rank=5)
    names = {r.name for r in rows}
    required = ({f"A{d}" for d in range(1, 6)} | {f"B{d}" for d in range(2, 6)} | {f"D{d}" for d in range(3, 6)}
                | {"F4", "H3", "H4"} | {f"I2({p})" for p in range(3, 13)})
    ok = required <= names and all(r.ok for r in rows) and set(COXETER_TYPES) >= required
    bad = [r.name for r in rows if not r.ok]
    detail = f"{sum(r.ok for r in rows)}/{len(rows)} groups: |T| by conjugacy closure equals the closed form" + (
        f"; failing {bad}" if bad else "")
    assert criterion(3, "reflection counts |T|", ok, detail)


def test_criterion_4_simplex_johnson(criterion):
    checked, bad = 0, []
    for d in range(3, 7):
        for k in range(d):
            G = skeleton(wythoff(simplex(d), {k}))
            checked += 1
            if not is_isomorphic(G, johnson(d + 1, k + 1)):
                bad.append((d, k))
    ok = not bad and checked == sum(range(3, 7))
    assert criterion(4, "skeleton(α_d({k})) ≅ J(d+1,k+1)", ok,
                     f"{checked} cases d=3..6, all k" + (f"; failing {bad}" if bad else ""))


def test_criterion_5_simplex_dual_hypercube(criterion):
    bad = []
    for d in range(3, 7):
        G = dual_skeleton(wythoff(simplex(d), {0, d - 1}))
        cert = partial_cube(G)
        if not is_isomorphic(G, hypercube_minus_antipodes(d + 1)):
            bad.append((d, "iso"))
        if cert is None or cert.m != d + 1 or not check_certificate(G, cert, mode="exhaustive").ok:
            bad.append((d, "embedding"))
    ok = not bad
    assert criterion(5, "α_d({0,d-1})* ≅ H_{d+1} minus antipodal pair, isometric", ok,
                     "d=3..6" + (f"; failing {bad}" if bad else ""))


def test_criterion_6_cross_cayley_dd(criterion):
    bad, info = [], []
    for d in range(3, 6):
        G = skeleton(wythoff(cross_polytope(d), range(d - 1)))
        C = cayley_graph(build_group(f"D{d}"))
        cert = partial_cube(G)
        n_ok = G.n == 2 ** (d - 1) * _fact(d)
        if not (n_ok and is_isomorphic(G, C)):
            bad.append((d, "cayley"))
        if cert is None or cert.m != d * (d - 1) or not check_certificate(G, cert).ok:
            bad.append((d, "partial cube"))
        info.append(f"d={d}: n={G.n}, m={cert.m if cert else None}")
    ok = not bad
    assert criterion(6, "skeleton(β_d({0..d-2})) ≅ Cay(D_d), partial cube m=d(d-1)", ok,
                     "; ".join(info) + (f"; failing {bad}" if bad else ""))


def _fact(d):
    out = 1
    for i in range(2, d + 1):
        out *= i
    return out


def test_criterion_7_cross_scale_two(criterion):
    bad, info = [], []
    for d in (3, 4, 5):
        G = skeleton(wythoff(cross_polytope(d), {0, d - 1}))
        if G.n != d * 2 ** d:
            bad.append((d, "n"))
        fac = gw_factorize(G)
        sizes = sorted(F.n for F in fac.factors)
        big = [F for F in fac.factors if F.n > 2]
        if not (fac.recombines(G) and sizes == [2] * d + [2 * d] and len(big) == 1
                and is_isomorphic(big[0], cocktail_party(d))):
            bad.append((d, "factors"))
        r = scale2_search(G)
        if d <= 4:
            if not (r.found and check_certificate(G, r.certificate).ok):
                bad.append((d, "scale 2"))
            info.append(f"d={d}: scale 2 into H{r.certificate.m if r.found else '?'}")
        else:
            k5 = scale_search(cocktail_party(5), 2)
            lv = l1_verdict(G)
            if k5.status != "none" or r.status != "none" or not (lv.status == "l1" and lv.min_scale > 2):
                bad.append((d, "lambda > 2"))
            info.append(f"d=5: K_5x2 at scale 2 {k5.status} (exhaustive), graph {r.status}, {lv}")
    ok = not bad
    assert criterion(7, "β_d({0,d-1}) scale 2 for d=3,4; K_5x2 forces λ>2; factors d·K2 + K_dx2", ok,
                     "; ".join(info) + (f"; failing {bad}" if bad else ""))


def test_criterion_8_negative_results(criterion, cert_root):
    rep, _ = timed_table(3, str(cert_root / "d3"))
    total = witnessed = 0
    for e in rep.sweep:
        for dual, v in ((False, e.skeleton), (True, e.dual)):
            if v.embeddable:
                continue
            total += 1
            if v.kind == "non-5-gonal" and check_violation(graph_of(e.gen, e.V, dual), v.witness):
                witnessed += 1
    g = complete_minus_cycle(7, 5)
    hyper = hypermetric_check(g, max_norm=7) is None and five_gonal_violation(g) is None
    pc = partial_cube(g) is None
    s2 = scale_search(g, 2).status == "none"
    lp, _ = lp_l1(g)
    lv = l1_verdict(g)
    ok = total > 0 and witnessed == total and hyper and pc and s2 and lp == "not_l1" and lv.status == "not_l1"
    detail = (f"{witnessed}/{total} non-embeddable d=3 graphs with a checked 5-gonal witness; K7-C5 hypermetric "
              f"(norm<=7) {hyper}, partial cube none {pc}, scale 2 none {s2}, l1 LP {lp}")
    assert criterion(8, "negative results", ok, detail)


GENERATORS = ([f"p{p}" for p in range(3, 13)] + ["a3", "b3", "c3", "ico", "dodeca"]
              + ["a4", "b4", "c4", "24cell", "600cell", "120cell"] + ["a5", "b5", "c5"])


def test_criterion_9_structural_suite(criterion):
    instances, failures = 0, []
    for name in GENERATORS:
        K = regular(name) if not name.startswith("p") else polygon(int(name[1:]))
        K.check_complex()
        K.check_polytope()
        for r in range(1, K.d + 2):
            for V in itertools.combinations(range(K.d + 1), r):
                instances += 1
                probs = wythoffian_problems(K, V)
                if probs:
                    failures.append((name, V, probs))
    ok = instances >= 200 and not failures
    detail = f"{instances} instances over {len(GENERATORS)} generators (complex dimension <= 4), {len(failures)} failures"
    assert criterion(9, "structural property suite", ok, detail), failures[:5]
