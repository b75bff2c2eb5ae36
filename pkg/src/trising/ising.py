"""Antiferromagnetic Ising states on a SurfaceComplex.

Energy counts +1 per monochromatic (frustrated) edge and -1 per
non-monochromatic edge.  A state is *satisfying* when no kept face is
monochromatic; on a closed complex this is the same as frustrating exactly
one edge of every face.  Exact enumeration is done two ways: a backtracking
solver with face propagation (this module) and the brute-force oracle
(trising.oracle), which tests keep in agreement.
"""

from __future__ import annotations

import os
from bisect import insort
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .complex import Edge, SurfaceComplex, dual_graph, norm_edge
from .errors import (
    IndexOutOfRange,
    LengthMismatch,
    NoSatisfyingState,
    NotAPerfectMatching,
    NotClosed,
    NotSatisfying,
    ResourceLimit,
)
from .kernels import scan_block
from .spins import State, int_to_state, lex_key, negate, state_to_int

DEFAULT_VERTEX_CEILING = 26
DEFAULT_REPRESENTATIVE_CAP = 64


def vertex_ceiling() -> int:
    return int(os.environ.get("TRI_VERTEX_CEILING", DEFAULT_VERTEX_CEILING))


def _check_state(c: SurfaceComplex, s: Sequence[int]) -> Tuple[int, ...]:
    t = tuple(s)
    if len(t) != c.vertex_count:
        raise LengthMismatch(f"state has {len(t)} spins for {c.vertex_count} vertices")
    if any(x not in (1, -1) for x in t):
        raise LengthMismatch("spins must be +1 or -1")
    return t


def energy(c: SurfaceComplex, s: Sequence[int]) -> int:
    """Sum over edges of the spin product (Hamiltonian in units of 1)."""
    t = _check_state(c, s)
    return sum(t[u] * t[v] for u, v in c.edges)


def frustrated_edges(c: SurfaceComplex, s: Sequence[int]) -> Tuple[Edge, ...]:
    """Edges whose endpoints carry equal spins."""
    t = _check_state(c, s)
    return tuple(e for e in c.edges if t[e[0]] == t[e[1]])


def is_satisfying(c: SurfaceComplex, s: Sequence[int]) -> bool:
    """True iff no kept face is monochromatic (holes carry no constraint)."""
    t = _check_state(c, s)
    return all(not (t[a] == t[b] == t[cc]) for a, b, cc in c.faces)


@dataclass(frozen=True)
class Constraint:
    """Partial conditions a satisfying state must additionally meet."""

    pinned: Tuple[Tuple[int, int], ...] = ()
    required_monochromatic: Tuple[Edge, ...] = ()
    required_non_monochromatic: Tuple[Edge, ...] = ()

    @classmethod
    def make(
        cls,
        pinned: Optional[Mapping[int, int]] = None,
        required_monochromatic: Iterable = (),
        required_non_monochromatic: Iterable = (),
    ) -> "Constraint":
        return cls(
            pinned=tuple(sorted((pinned or {}).items())),
            required_monochromatic=tuple(sorted(norm_edge(*e) for e in required_monochromatic)),
            required_non_monochromatic=tuple(sorted(norm_edge(*e) for e in required_non_monochromatic)),
        )

    @property
    def sign_symmetric(self) -> bool:
        return not self.pinned

    def validate(self, c: SurfaceComplex):
        for v, spin in self.pinned:
            if not 0 <= v < c.vertex_count:
                raise IndexOutOfRange(f"pinned vertex {v} out of range")
            if spin not in (1, -1):
                raise IndexOutOfRange(f"pinned spin for vertex {v} must be +1 or -1")
        for e in self.required_monochromatic + self.required_non_monochromatic:
            if e not in c.edge_set:
                raise IndexOutOfRange(f"constraint references missing edge {e}")
        both = set(self.required_monochromatic) & set(self.required_non_monochromatic)
        if both:
            raise IndexOutOfRange(f"edge {sorted(both)[0]} required both monochromatic and not")


EMPTY_CONSTRAINT = Constraint()


@dataclass(frozen=True)
class SolveReport:
    satisfying_count: int
    pair_count: Optional[int]
    representatives: Tuple[State, ...]
    serious_edges: Optional[Tuple[Edge, ...]]
    truncated: bool


@dataclass(frozen=True)
class GroundstateReport:
    min_energy: int
    degeneracy: int
    representatives: Tuple[State, ...]
    truncated: bool
    method: str


def _bfs_order(c: SurfaceComplex, constraint: Constraint) -> List[int]:
    """Vertices in breadth-first order from the most-constrained seed."""
    n = c.vertex_count
    score = [0] * n
    for v, _ in constraint.pinned:
        score[v] += 2
    for u, v in constraint.required_monochromatic + constraint.required_non_monochromatic:
        score[u] += 1
        score[v] += 1
    seed = max(range(n), key=lambda v: (score[v], -v))
    order = [seed]
    seen = [False] * n
    seen[seed] = True
    qi = 0
    adj = c.adjacency
    while qi < len(order):
        x = order[qi]
        qi += 1
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                order.append(y)
    return order


def enumerate_satisfying(
    c: SurfaceComplex,
    constraint: Optional[Constraint] = None,
    representative_cap: int = DEFAULT_REPRESENTATIVE_CAP,
) -> SolveReport:
    """Exact count of satisfying states meeting `constraint`.

    Backtracks over vertices in breadth-first order with face propagation (a
    face with two equal assigned spins forces the third spin opposite).  When
    the constraint is sign-symmetric the lowest-id vertex is pinned to +1 and
    counts are doubled; representatives are then one state per +- pair.  The
    count is exact even when the representative list is truncated (the stored
    prefix follows search order; the returned list is sorted).
    """
    constraint = constraint or EMPTY_CONSTRAINT
    constraint.validate(c)
    n = c.vertex_count
    if n == 0:
        return SolveReport(1, None, ((),), None, False)

    faces_at: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, cc in c.faces:
        faces_at[a].append((b, cc))
        faces_at[b].append((a, cc))
        faces_at[cc].append((a, b))
    mono_at: List[List[int]] = [[] for _ in range(n)]
    anti_at: List[List[int]] = [[] for _ in range(n)]
    for u, v in constraint.required_monochromatic:
        mono_at[u].append(v)
        mono_at[v].append(u)
    for u, v in constraint.required_non_monochromatic:
        anti_at[u].append(v)
        anti_at[v].append(u)

    spins = [0] * n
    trail: List[int] = []

    def propagate(v0: int, val0: int) -> bool:
        stack = [(v0, val0)]
        while stack:
            v, val = stack.pop()
            cur = spins[v]
            if cur:
                if cur != val:
                    return False
                continue
            spins[v] = val
            trail.append(v)
            for a, b in faces_at[v]:
                sa, sb = spins[a], spins[b]
                if sa and sb:
                    if sa == sb == val:
                        return False
                elif sa == val:
                    stack.append((b, -val))
                elif sb == val:
                    stack.append((a, -val))
            for y in mono_at[v]:
                stack.append((y, val))
            for y in anti_at[v]:
                stack.append((y, -val))
        return True

    def undo(mark: int):
        while len(trail) > mark:
            spins[trail.pop()] = 0

    sign_symmetric = constraint.sign_symmetric
    count = 0
    reps: List[State] = []
    edges = c.edges
    serious_mask = (1 << len(edges)) - 1
    weight = 2 if sign_symmetric else 1

    def record_leaf():
        nonlocal count, serious_mask
        count += weight
        if serious_mask:
            m = 0
            for i, (u, v) in enumerate(edges):
                if spins[u] == spins[v]:
                    m |= 1 << i
            serious_mask &= m
        if len(reps) < representative_cap:
            reps.append(tuple(spins))

    order = _bfs_order(c, constraint)

    ok = True
    for v, spin in constraint.pinned:
        if not propagate(v, spin):
            ok = False
            break
    if ok and sign_symmetric:
        ok = propagate(0, 1)

    if ok:

        def dfs(idx: int):
            while idx < n and spins[order[idx]]:
                idx += 1
            if idx == n:
                record_leaf()
                return
            v = order[idx]
            for val in (1, -1):
                mark = len(trail)
                if propagate(v, val):
                    dfs(idx + 1)
                undo(mark)

        dfs(0)

    reps.sort(key=lex_key)
    pair_count = count // 2 if sign_symmetric else None
    n_listable = pair_count if sign_symmetric else count
    serious: Optional[Tuple[Edge, ...]]
    if count == 0:
        serious = None
    else:
        serious = tuple(edges[i] for i in range(len(edges)) if (serious_mask >> i) & 1)
    return SolveReport(
        satisfying_count=count,
        pair_count=pair_count,
        representatives=tuple(reps),
        serious_edges=serious,
        truncated=bool(n_listable is not None and n_listable > len(reps)),
    )


def serious_edges(c: SurfaceComplex) -> Tuple[Edge, ...]:
    """Edges monochromatic under every satisfying state."""
    report = enumerate_satisfying(c, representative_cap=1)
    if report.satisfying_count == 0:
        raise NoSatisfyingState("the complex has no satisfying state")
    assert report.serious_edges is not None
    return report.serious_edges


# -- groundstates ------------------------------------------------------

def _neighbour_masks(c: SurfaceComplex) -> Tuple[List[int], List[int]]:
    masks = [0] * c.vertex_count
    for u, v in c.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks, [m.bit_count() for m in masks]


def _merge_reps(parts: List[List[int]], cap: int) -> List[int]:
    merged: List[int] = []
    for part in parts:
        for x in part:
            if len(merged) < cap:
                insort(merged, x)
            elif x < merged[-1]:
                insort(merged, x)
                merged.pop()
    return merged


def _exhaustive(c: SurfaceComplex, rep_cap: int, jobs: int) -> Tuple[int, int, List[int]]:
    """Gray-code scan of the half-space with vertex 0 pinned to +1."""
    n = c.vertex_count
    masks, degrees = _neighbour_masks(c)
    nbits = n - 1
    total = 1 << nbits
    kernel_cap = min(rep_cap, 64)
    jobs = max(1, min(jobs, total))
    bounds = [total * j // jobs for j in range(jobs + 1)]
    blocks = [(bounds[j], bounds[j + 1]) for j in range(jobs) if bounds[j] < bounds[j + 1]]

    def run(block):
        start, stop = block
        return scan_block(nbits, masks, degrees, start, stop, 1, kernel_cap)

    if len(blocks) == 1:
        results = [run(blocks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            results = list(pool.map(run, blocks))

    best = min(r[0] for r in results)
    half_count = sum(r[1] for r in results if r[0] == best)
    half_reps = _merge_reps([r[2] for r in results if r[0] == best], kernel_cap)
    return best, 2 * half_count, half_reps


def _bnb(c: SurfaceComplex, rep_cap: int) -> Tuple[int, int, List[int]]:
    """Branch-and-bound over vertices in BFS order, vertex 0 pinned to +1.

    Lower bound: every face with no monochromatic edge among the decided
    edges still needs one, and an edge serves at most two faces.
    """
    n = c.vertex_count
    edges = c.edges
    order = _bfs_order(c, EMPTY_CONSTRAINT)
    # an edge becomes decided when both ends are assigned; a face is resolved
    # once one of its decided edges is monochromatic
    spins = [0] * n
    best: Optional[int] = None
    count = 0
    reps: List[int] = []

    faces = [tuple(f) for f in c.faces]
    faces_of_edge = {e: c.faces_of_edge(e) for e in edges}

    def rec(idx: int, cur_energy: int, undecided_edges: int, unresolved: set, mono_hits: Dict[int, int]):
        nonlocal best, count, reps
        need = (len(unresolved) + 1) // 2
        bound = cur_energy - undecided_edges + 2 * need
        if best is not None and bound > best:
            return
        if idx == n:
            e = cur_energy
            if best is None or e < best:
                best = e
                count = 1
                reps = [state_to_int(spins)]
            elif e == best:
                count += 1
                x = state_to_int(spins)
                if len(reps) < rep_cap:
                    insort(reps, x)
                elif x < reps[-1]:
                    insort(reps, x)
                    reps.pop()
            return
        v = order[idx]
        for val in ((1,) if idx == 0 else (1, -1)):
            spins[v] = val
            d_energy = 0
            d_undecided = 0
            newly_resolved = []
            hit_changes = []
            for u in c.adjacency[v]:
                if spins[u]:
                    e = norm_edge(u, v)
                    d_undecided += 1
                    mono = spins[u] == val
                    d_energy += 1 if mono else -1
                    for fi in faces_of_edge.get(e, ()):
                        if fi in unresolved:
                            if mono:
                                newly_resolved.append(fi)
                            else:
                                hits = mono_hits.get(fi, 0) + 1
                                hit_changes.append((fi, hits))
                                mono_hits[fi] = hits
            for fi in set(newly_resolved):
                unresolved.discard(fi)
            rec(idx + 1, cur_energy + d_energy, undecided_edges - d_undecided, unresolved, mono_hits)
            for fi in set(newly_resolved):
                unresolved.add(fi)
            for fi, hits in reversed(hit_changes):
                if hits == 1:
                    del mono_hits[fi]
                else:
                    mono_hits[fi] = hits - 1
            spins[v] = 0

    rec(0, 0, len(edges), set(range(len(faces))), {})
    assert best is not None
    return best, 2 * count, reps


def groundstates(
    c: SurfaceComplex,
    method: str = "auto",
    representative_cap: int = DEFAULT_REPRESENTATIVE_CAP,
    jobs: int = 1,
) -> GroundstateReport:
    """Exact minimum energy and degeneracy over all 2^V states.

    `exhaustive` scans every state with Gray-code incremental updates and is
    limited to the vertex ceiling (TRI_VERTEX_CEILING, default 26);
    `branch_and_bound` has no ceiling; `auto` picks between them.
    """
    if method not in ("auto", "exhaustive", "branch_and_bound", "bnb"):
        raise ValueError(f"unknown method {method!r}")
    n = c.vertex_count
    if n == 0:
        return GroundstateReport(0, 1, ((),), False, "exhaustive")
    ceiling = vertex_ceiling()
    if method == "auto":
        method = "exhaustive" if n <= ceiling else "branch_and_bound"
    if method == "exhaustive" and n > ceiling:
        raise ResourceLimit(
            f"{n} vertices exceeds the exhaustive-search ceiling {ceiling} "
            "(set TRI_VERTEX_CEILING to raise it)"
        )
    if method == "exhaustive":
        best, degeneracy, half_reps = _exhaustive(c, representative_cap, jobs)
    else:
        method = "branch_and_bound"
        best, degeneracy, half_reps = _bnb(c, min(representative_cap, 64))

    full_mask = (1 << n) - 1
    rep_ints = sorted(set(half_reps) | {full_mask ^ r for r in half_reps})
    states = [int_to_state(x, n) for x in rep_ints]
    states.sort(key=lex_key)
    states = states[:representative_cap]
    return GroundstateReport(
        min_energy=best,
        degeneracy=degeneracy,
        representatives=tuple(states),
        truncated=degeneracy > len(states),
        method=method,
    )


# -- matchings ---------------------------------------------------------

def matching_from_state(c: SurfaceComplex, s: Sequence[int]) -> Tuple[Edge, ...]:
    """The monochromatic edges of a satisfying state, as dual edges."""
    t = _check_state(c, s)
    if not c.is_closed:
        raise NotClosed("matchings are defined on closed complexes")
    if not is_satisfying(c, t):
        raise NotSatisfying("the state monochromatizes a face")
    d = dual_graph(c)
    out = []
    for e in frustrated_edges(c, t):
        out.append(d.dual_edge_of(e))
    return tuple(sorted(out))


def state_from_matching(
    c: SurfaceComplex, matching: Iterable[Edge]
) -> Optional[Tuple[State, State]]:
    """Reconstruct the +- pair of satisfying states from a perfect matching
    of the dual, or None when spin propagation conflicts (possible on
    positive-genus complexes)."""
    if not c.is_closed:
        raise NotClosed("matchings are defined on closed complexes")
    d = dual_graph(c)
    m = {norm_edge(*e) for e in matching}
    if not m <= set(d.edges):
        bad = sorted(m - set(d.edges))[0]
        raise NotAPerfectMatching(f"{bad} is not a dual edge")
    touched: Dict[int, int] = {}
    for i, j in m:
        touched[i] = touched.get(i, 0) + 1
        touched[j] = touched.get(j, 0) + 1
    if len(touched) != d.vertex_count or any(x != 1 for x in touched.values()):
        raise NotAPerfectMatching("the edge set does not cover every dual vertex exactly once")

    # primal monochromatic edge of each face
    mono_edge: List[Edge] = [None] * len(c.faces)  # type: ignore[list-item]
    for de in m:
        pe = d.primal_edges[d.edges.index(de)]
        for fi in de:
            mono_edge[fi] = pe

    spins = [0] * c.vertex_count

    def fill_face(fi: int) -> bool:
        """Complete face fi from its >=2 assigned vertices; check pattern."""
        a, b, cc = c.faces[fi]
        u, v = mono_edge[fi]
        w = next(x for x in (a, b, cc) if x not in (u, v))
        su, sv, sw = spins[u], spins[v], spins[w]
        if su and sv and su != sv:
            return False
        val = su or sv
        if val:
            for x, want in ((u, val), (v, val), (w, -val)):
                if spins[x] == 0:
                    spins[x] = want
                elif spins[x] != want:
                    return False
            return True
        # only w assigned
        for x in (u, v):
            if spins[x] == 0:
                spins[x] = -sw
            elif spins[x] != -sw:
                return False
        return True

    # seed face 0: monochromatic edge +, third vertex -
    u0, v0 = mono_edge[0]
    a, b, cc = c.faces[0]
    w0 = next(x for x in (a, b, cc) if x not in (u0, v0))
    spins[u0] = spins[v0] = 1
    spins[w0] = -1

    # BFS across face adjacencies
    adj_faces: List[List[int]] = [[] for _ in range(len(c.faces))]
    for de in d.edges:
        i, j = de
        adj_faces[i].append(j)
        adj_faces[j].append(i)
    seen = [False] * len(c.faces)
    seen[0] = True
    queue = [0]
    qi = 0
    while qi < len(queue):
        fi = queue[qi]
        qi += 1
        for fj in adj_faces[fi]:
            if not seen[fj]:
                seen[fj] = True
                if not fill_face(fj):
                    return None
                queue.append(fj)
    # consistency over every face (BFS tree alone is not enough on tori)
    for fi in range(len(c.faces)):
        if not fill_face(fi):
            return None
    state = tuple(spins)
    if not is_satisfying(c, state):
        return None
    return state, negate(state)
