#!/usr/bin/env python3
"""Regenerate the bundled triangulation data.

Exhaustively generates every closed orientable triangulation on at most
--max-vertices vertices, up to isomorphism, by dart-consistent face assembly:
the first face is pinned to (0,1,2) and new vertices are introduced in
first-use order, which bounds the number of duplicate completions per
isomorphism class by 6*F; duplicates are removed with the canonical form
from trising.complex.

Write-out (under tools/out/):
  torus_all_<V>.json    every genus-1 triangulation with V vertices
  sphere_all_<V>.json   every genus-0 triangulation with V vertices
  irreducible.json      the genus-1 triangulations in which every edge has
                        at least three common-neighbour 3-cycles (i.e. no
                        contractible edge)

Known class counts used as cross-checks are printed at the end.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from trising.complex import build_complex, canonical_code, canonical_form  # noqa: E402

# independently published counts of triangulation classes, used to verify
# that the search is exhaustive
EXPECTED_TORUS = {7: 1, 8: 7, 9: 112, 10: 2109}
EXPECTED_SPHERE = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14, 9: 50, 10: 233}


def generate(max_v: int):
    """Yield (vertex_count, faces) for every closed orientable triangulation
    with at most max_v vertices and genus 0 or 1 (labelled; duplicates per
    class)."""
    max_e = 3 * max_v
    max_f = 2 * max_v

    darts = set()
    edge_cnt = {}
    open_edges = set()
    open_deg = [0] * max_v
    link = [[] for _ in range(max_v)]
    faces = []
    triples = set()
    results = []

    def link_single_cycle(v):
        adj = {}
        for a, b in link[v]:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        if any(len(x) != 2 for x in adj.values()):
            return False
        start = next(iter(adj))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(adj) == len(link[v])

    def apply_face(p, q, w, used):
        """Add oriented face (p,q,w); return (ok, new_used) and mutate state."""
        darts.add((p, q))
        darts.add((q, w))
        darts.add((w, p))
        new_used = used + 1 if w == used else used
        ok = True
        for x, y in ((p, q), (q, w), (w, p)):
            e = (x, y) if x < y else (y, x)
            n = edge_cnt.get(e, 0) + 1
            edge_cnt[e] = n
            if n == 1:
                open_edges.add(e)
                open_deg[x] += 1
                open_deg[y] += 1
            else:
                open_edges.discard(e)
                open_deg[x] -= 1
                open_deg[y] -= 1
        link[p].append((q, w))
        link[q].append((w, p))
        link[w].append((p, q))
        t = (p, q, w) if p < q < w else tuple(sorted((p, q, w)))
        triples.add(t)
        faces.append((p, q, w))
        for x in (p, q, w):
            if open_deg[x] == 0 and not link_single_cycle(x):
                ok = False
                break
        if len(edge_cnt) > max_e or len(faces) > max_f:
            ok = False
        return ok, new_used, t

    def undo_face(p, q, w, used, new_used, t):
        faces.pop()
        triples.discard(t)
        link[p].pop()
        link[q].pop()
        link[w].pop()
        for x, y in ((p, q), (q, w), (w, p)):
            e = (x, y) if x < y else (y, x)
            n = edge_cnt[e] - 1
            if n == 0:
                del edge_cnt[e]
                open_edges.discard(e)
                open_deg[x] -= 1
                open_deg[y] -= 1
            else:
                edge_cnt[e] = n
                open_edges.add(e)
                open_deg[x] += 1
                open_deg[y] += 1
        darts.discard((p, q))
        darts.discard((q, w))
        darts.discard((w, p))

    def candidates(e, used):
        u, v = e
        p, q = (v, u) if (u, v) in darts else (u, v)
        out = []
        for w in range(used):
            if w == p or w == q:
                continue
            if open_deg[w] == 0 and link[w]:
                continue
            if (q, w) in darts or (w, p) in darts:
                continue
            if tuple(sorted((p, q, w))) in triples:
                continue
            out.append((p, q, w))
        if used < max_v:
            out.append((p, q, used))
        return out

    def dfs(used):
        if not open_edges:
            e_total = len(edge_cnt)
            chi = used - e_total + len(faces)
            if chi in (0, 2):
                results.append((used, chi, [tuple(sorted(f)) for f in faces]))
            return
        best = None
        best_e = None
        for e in sorted(open_edges):
            cand = candidates(e, used)
            if best is None or len(cand) < len(best):
                best = cand
                best_e = e
                if not cand:
                    break
        for p, q, w in best:
            ok, new_used, t = apply_face(p, q, w, used)
            if ok:
                dfs(new_used)
            undo_face(p, q, w, used, new_used, t)

    # seed face (0,1,2), oriented
    ok, used, t = apply_face(0, 1, 2, 2)
    assert ok and used == 3
    dfs(3)
    undo_face(0, 1, 2, 2, 3, t)
    return results


def dedupe(results):
    by_code = {}
    for used, chi, fs in results:
        c = build_complex(used, fs)
        code = canonical_code(c)[0]
        key = (used, chi, code)
        if key not in by_code:
            by_code[key] = canonical_form(c)
    return by_code


def is_irreducible(c):
    adj = [set(nb) for nb in c.adjacency]
    return all(len(adj[u] & adj[v]) >= 3 for u, v in c.edges)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=10)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent / "out")
    args = ap.parse_args()

    t0 = time.time()
    raw = generate(args.max_vertices)
    t1 = time.time()
    print(f"search: {len(raw)} labelled completions in {t1 - t0:.1f}s", flush=True)

    classes = dedupe(raw)
    t2 = time.time()
    print(f"dedupe: {len(classes)} classes in {t2 - t1:.1f}s", flush=True)

    args.out.mkdir(parents=True, exist_ok=True)
    torus = {}
    sphere = {}
    for (used, chi, _), c in sorted(classes.items()):
        (torus if chi == 0 else sphere).setdefault(used, []).append(c)

    ok = True
    for v in sorted(torus):
        n = len(torus[v])
        exp = EXPECTED_TORUS.get(v)
        flag = "OK" if exp == n else f"MISMATCH (expected {exp})"
        if exp != n:
            ok = False
        print(f"torus  V={v}: {n} classes {flag}")
        path = args.out / f"torus_all_{v}.json"
        path.write_text(json.dumps([c.faces for c in torus[v]]) + "\n")
    for v in sorted(sphere):
        n = len(sphere[v])
        exp = EXPECTED_SPHERE.get(v)
        flag = "OK" if exp == n else f"MISMATCH (expected {exp})"
        if exp != n:
            ok = False
        print(f"sphere V={v}: {n} classes {flag}")
        path = args.out / f"sphere_all_{v}.json"
        path.write_text(json.dumps([c.faces for c in sphere[v]]) + "\n")

    irr = []
    for v in sorted(torus):
        for c in torus[v]:
            if is_irreducible(c):
                irr.append((v, c.faces))
    print(f"irreducible genus-1: {len(irr)} classes "
          f"({'OK' if len(irr) == 21 else 'UNEXPECTED'}; classification says 21)")
    (args.out / "irreducible.json").write_text(json.dumps(irr) + "\n")
    print(f"total {time.time() - t0:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
