"""Combinatorial model of (punctured) triangulations of closed orientable
surfaces.

A complex is a set of unordered vertex triples, split into kept *faces* and
*holes* (boundaries of removed faces).  Every edge must lie in exactly two
triples, at least one of which is a face; every vertex link must be a single
cycle; a consistent orientation of all triples must exist.  Faces are stored
sorted, so equal complexes compare equal and all outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DegenerateTriple,
    DisconnectedComplex,
    DuplicateTriple,
    EdgeInWrongNumberOfTriples,
    EdgeLeftWithoutFace,
    IndexOutOfRange,
    InvalidEulerCharacteristic,
    InvalidGluingSpec,
    InvalidMark,
    NonOrientable,
    NotClosed,
    NoValidOrientation,
    PinchedVertex,
    ResultInvalid,
)

Vertex = int
Edge = Tuple[int, int]          # sorted pair
Triple = Tuple[int, int, int]   # sorted triple
Marks = Mapping[str, Sequence[Tuple[int, ...]]]

# mark names with fixed meaning in the file format
MARK_FUNDAMENTAL_EDGES = "fundamental_edges"
MARK_EXPANDABLE_CYCLES = "expandable_cycles"
MARK_CONNECTION_CYCLES = "connection_cycles"


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def norm_triple(t: Iterable[int]) -> Triple:
    a, b, c = sorted(t)
    return (a, b, c)


def triple_edges(t: Triple) -> Tuple[Edge, Edge, Edge]:
    a, b, c = t
    return ((a, b), (a, c), (b, c))


@dataclass(frozen=True)
class SurfaceComplex:
    """A validated (punctured) triangulation.  Construct via build_complex."""

    vertex_count: int
    faces: Tuple[Triple, ...]
    holes: Tuple[Triple, ...] = ()
    marks: Tuple[Tuple[str, Tuple[Tuple[int, ...], ...]], ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    # -- derived views -------------------------------------------------

    @property
    def triples(self) -> Tuple[Triple, ...]:
        return self.faces + self.holes

    @property
    def is_closed(self) -> bool:
        return not self.holes

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """All edges, sorted."""
        if "edges" not in self._cache:
            es = set()
            for t in self.triples:
                es.update(triple_edges(t))
            self._cache["edges"] = tuple(sorted(es))
        return self._cache["edges"]

    @property
    def edge_set(self) -> frozenset:
        if "edge_set" not in self._cache:
            self._cache["edge_set"] = frozenset(self.edges)
        return self._cache["edge_set"]

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Sorted neighbour lists indexed by vertex."""
        if "adjacency" not in self._cache:
            nbrs: List[set] = [set() for _ in range(self.vertex_count)]
            for u, v in self.edges:
                nbrs[u].add(v)
                nbrs[v].add(u)
            self._cache["adjacency"] = tuple(tuple(sorted(s)) for s in nbrs)
        return self._cache["adjacency"]

    def faces_of_edge(self, e: Edge) -> Tuple[int, ...]:
        """Indices into `faces` of the kept faces containing edge e."""
        return self._edge_faces().get(e, ())

    def _edge_faces(self) -> Dict[Edge, Tuple[int, ...]]:
        if "edge_faces" not in self._cache:
            d: Dict[Edge, tuple] = {}
            for i, t in enumerate(self.faces):
                for e in triple_edges(t):
                    d[e] = d.get(e, ()) + (i,)
            self._cache["edge_faces"] = d
        return self._cache["edge_faces"]

    def marks_dict(self) -> Dict[str, List[Tuple[int, ...]]]:
        return {k: list(v) for k, v in self.marks}

    def mark(self, name: str) -> Tuple[Tuple[int, ...], ...]:
        for k, v in self.marks:
            if k == name:
                return v
        return ()

    def with_marks(self, marks: Marks) -> "SurfaceComplex":
        """Return a copy carrying `marks` (validated against this complex)."""
        return build_complex(self.vertex_count, self.faces, self.holes, marks)

    def oriented_triples(self) -> Tuple[Tuple[Triple, ...], Tuple[Triple, ...]]:
        """Faces and holes as consistently oriented triples.

        The orientation is deterministic: the lexicographically smallest
        triple of each complex is oriented ascending.
        """
        if "oriented" not in self._cache:
            self._cache["oriented"] = _orient(self)
        return self._cache["oriented"]


def _check_triples(vertex_count: int, triples: Sequence, what: str) -> List[Triple]:
    out = []
    for t in triples:
        tt = tuple(t)
        if len(tt) != 3:
            raise DegenerateTriple(f"{what} {tt!r} does not have three vertices")
        for x in tt:
            if not isinstance(x, int) or isinstance(x, bool):
                raise DegenerateTriple(f"{what} {tt!r} has a non-integer vertex")
            if not 0 <= x < vertex_count:
                raise DegenerateTriple(f"{what} {tt!r} has vertex {x} out of range 0..{vertex_count - 1}")
        if len(set(tt)) != 3:
            raise DegenerateTriple(f"{what} {tt!r} repeats a vertex")
        out.append(norm_triple(tt))
    return out


def _single_cycle_link(v: int, link_edges: List[Edge]) -> bool:
    """True iff the 2-regular multigraph on v's neighbours is one cycle."""
    deg: Dict[int, int] = {}
    adj: Dict[int, List[int]] = {}
    for a, b in link_edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(d != 2 for d in deg.values()):
        return False
    # connected 2-regular graph = single cycle
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj) and len(link_edges) == len(adj)


def _orient(c: "SurfaceComplex") -> Tuple[Tuple[Triple, ...], Tuple[Triple, ...]]:
    """Propagate a consistent orientation over faces+holes or raise."""
    triples = list(c.faces) + list(c.holes)
    by_edge: Dict[Edge, List[int]] = {}
    for i, t in enumerate(triples):
        for e in triple_edges(t):
            by_edge.setdefault(e, []).append(i)
    orient: List[Optional[Tuple[int, int, int]]] = [None] * len(triples)
    seed = min(range(len(triples)), key=lambda i: triples[i])
    orient[seed] = triples[seed]
    stack = [seed]
    while stack:
        i = stack.pop()
        oi = orient[i]
        darts = {(oi[0], oi[1]), (oi[1], oi[2]), (oi[2], oi[0])}
        for e in triple_edges(triples[i]):
            for j in by_edge[e]:
                if j == i:
                    continue
                t = triples[j]
                w = next(x for x in t if x not in e)
                # the neighbour must traverse e in the opposite direction
                if (e[0], e[1]) in darts:
                    oj = (e[1], e[0], w)
                else:
                    oj = (e[0], e[1], w)
                if orient[j] is None:
                    orient[j] = oj
                    stack.append(j)
                elif orient[j] not in ((oj[0], oj[1], oj[2]), (oj[1], oj[2], oj[0]), (oj[2], oj[0], oj[1])):
                    raise NonOrientable(f"orientation conflict across edge {e} between triples {triples[i]} and {t}")
    nf = len(c.faces)
    return tuple(orient[:nf]), tuple(orient[nf:])


def _normalize_marks(marks: Optional[Marks], edge_set: frozenset) -> Tuple[Tuple[str, Tuple[Tuple[int, ...], ...]], ...]:
    if not marks:
        return ()
    out = []
    for name in sorted(marks):
        items = []
        for item in marks[name]:
            tt = tuple(item)
            if len(tt) == 2:
                e = norm_edge(*tt)
                if e not in edge_set:
                    raise InvalidMark(f"mark {name!r} references missing edge {e}")
                items.append(e)
            elif len(tt) == 3:
                t = norm_triple(tt)
                for e in triple_edges(t):
                    if e not in edge_set:
                        raise InvalidMark(f"mark {name!r} cycle {t} uses missing edge {e}")
                items.append(t)
            else:
                raise InvalidMark(f"mark {name!r} item {tt!r} is neither an edge nor a 3-cycle")
        out.append((name, tuple(items)))
    return tuple(out)


def build_complex(
    vertex_count: int,
    faces: Sequence,
    holes: Sequence = (),
    marks: Optional[Marks] = None,
) -> SurfaceComplex:
    """Validate raw triples and return a canonical SurfaceComplex.

    Raises a ValidationError subclass naming the offending element when any
    invariant fails.
    """
    if vertex_count < 0:
        raise DegenerateTriple("vertex_count must be non-negative")
    fs = _check_triples(vertex_count, faces, "face")
    hs = _check_triples(vertex_count, holes, "hole")
    if len(set(fs)) != len(fs):
        dup = next(t for t in fs if fs.count(t) > 1)
        raise DuplicateTriple(f"face {dup} listed more than once")
    if len(set(hs)) != len(hs):
        dup = next(t for t in hs if hs.count(t) > 1)
        raise DuplicateTriple(f"hole {dup} listed more than once")
    # the same triple may appear once as a face and once as a hole
    # (a one-face disk); two faces or two holes may not coincide.

    face_count: Dict[Edge, int] = {}
    hole_count: Dict[Edge, int] = {}
    for t in fs:
        for e in triple_edges(t):
            face_count[e] = face_count.get(e, 0) + 1
    for t in hs:
        for e in triple_edges(t):
            hole_count[e] = hole_count.get(e, 0) + 1
    edge_set = frozenset(set(face_count) | set(hole_count))
    for e in sorted(edge_set):
        total = face_count.get(e, 0) + hole_count.get(e, 0)
        if total != 2:
            raise EdgeInWrongNumberOfTriples(f"edge {e} lies in {total} triples, expected 2")
        if face_count.get(e, 0) == 0:
            raise EdgeInWrongNumberOfTriples(f"edge {e} lies in no kept face (two holes)")

    incident: Dict[int, List[Edge]] = {v: [] for v in range(vertex_count)}
    for t in fs + hs:
        a, b, c = t
        incident[a].append((b, c))
        incident[b].append((a, c))
        incident[c].append((a, b))
    for v in range(vertex_count):
        if not incident[v]:
            raise PinchedVertex(f"vertex {v} has no incident triples")
        if not _single_cycle_link(v, incident[v]):
            raise PinchedVertex(f"the rotation around vertex {v} is not a single cycle")

    if vertex_count:
        # connectivity over vertices (pinch-free, so vertex connectivity suffices)
        seen = {0}
        stack = [0]
        adj: Dict[int, set] = {v: set() for v in range(vertex_count)}
        for u, v in edge_set:
            adj[u].add(v)
            adj[v].add(u)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != vertex_count:
            missing = min(set(range(vertex_count)) - seen)
            raise DisconnectedComplex(f"vertex {missing} is not connected to vertex 0")

    c = SurfaceComplex(
        vertex_count=vertex_count,
        faces=tuple(sorted(fs)),
        holes=tuple(sorted(hs)),
        marks=_normalize_marks(marks, edge_set),
    )
    if c.faces or c.holes:
        c.oriented_triples()  # raises NonOrientable on failure
    return c


def euler_genus(c: SurfaceComplex) -> int:
    """Genus of the underlying closed surface (holes counted as filled)."""
    chi = c.vertex_count - len(c.edges) + len(c.faces) + len(c.holes)
    g2 = 2 - chi
    if g2 < 0 or g2 % 2:
        raise InvalidEulerCharacteristic(f"Euler characteristic {chi} is not of the form 2-2g")
    return g2 // 2


def remove_faces(c: SurfaceComplex, face_indices: Sequence[int]) -> SurfaceComplex:
    """Move the faces at `face_indices` to the hole list and re-validate."""
    idx = sorted(set(face_indices))
    for i in idx:
        if not 0 <= i < len(c.faces):
            raise IndexOutOfRange(f"face index {i} out of range 0..{len(c.faces) - 1}")
    removed = [c.faces[i] for i in idx]
    kept = [t for i, t in enumerate(c.faces) if i not in set(idx)]
    kept_count: Dict[Edge, int] = {}
    for t in kept:
        for e in triple_edges(t):
            kept_count[e] = kept_count.get(e, 0) + 1
    for t in removed:
        for e in triple_edges(t):
            if kept_count.get(e, 0) == 0:
                raise EdgeLeftWithoutFace(f"removing faces leaves edge {e} in no kept face")
    return build_complex(c.vertex_count, kept, list(c.holes) + removed, dict(c.marks))


@dataclass(frozen=True)
class GluingSpec:
    """How to identify a hole of complex A with a hole of complex B.

    The implied vertex bijection maps edge_a onto edge_b and the remaining
    vertex of cycle_a to the remaining vertex of cycle_b.  Both
    orientation-compatible bijections respecting that constraint are tried in
    a fixed order.
    """

    cycle_a: Triple
    cycle_b: Triple
    edge_a: Edge
    edge_b: Edge

    def __post_init__(self):
        object.__setattr__(self, "cycle_a", norm_triple(self.cycle_a))
        object.__setattr__(self, "cycle_b", norm_triple(self.cycle_b))
        object.__setattr__(self, "edge_a", norm_edge(*self.edge_a))
        object.__setattr__(self, "edge_b", norm_edge(*self.edge_b))


def glue(a: SurfaceComplex, b: SurfaceComplex, spec: GluingSpec) -> SurfaceComplex:
    """Identify a hole of `a` with a hole of `b` and return the merged complex.

    Vertices of `a` keep their ids; the surviving vertices of `b` are appended
    in ascending original order, so the result is reproducible.
    """
    if spec.cycle_a not in a.holes:
        raise InvalidGluingSpec(f"cycle_a {spec.cycle_a} is not a hole boundary of the first complex")
    if spec.cycle_b not in b.holes:
        raise InvalidGluingSpec(f"cycle_b {spec.cycle_b} is not a hole boundary of the second complex")
    if not set(spec.edge_a) <= set(spec.cycle_a):
        raise InvalidGluingSpec(f"edge_a {spec.edge_a} is not contained in cycle_a {spec.cycle_a}")
    if not set(spec.edge_b) <= set(spec.cycle_b):
        raise InvalidGluingSpec(f"edge_b {spec.edge_b} is not contained in cycle_b {spec.cycle_b}")

    rest_a = next(x for x in spec.cycle_a if x not in spec.edge_a)
    rest_b = next(x for x in spec.cycle_b if x not in spec.edge_b)
    u1, u2 = spec.edge_a
    v1, v2 = spec.edge_b

    attempts = []
    errors = []
    for mapping_edge in (((u1, v1), (u2, v2)), ((u1, v2), (u2, v1))):
        vmap = {rest_b: rest_a}
        for ua, vb in mapping_edge:
            vmap[vb] = ua
        # volatile: vmap maps b-vertex -> merged id; extend to the rest of b
        nxt = a.vertex_count
        for w in range(b.vertex_count):
            if w not in vmap:
                vmap[w] = nxt
                nxt += 1
        faces = list(a.faces) + [norm_triple(vmap[x] for x in t) for t in b.faces]
        holes = [t for t in a.holes if t != spec.cycle_a]
        holes += [
            norm_triple(vmap[x] for x in t) for t in b.holes if t != spec.cycle_b
        ]
        marks: Dict[str, list] = {}
        for k, items in a.marks:
            marks.setdefault(k, []).extend(items)
        for k, items in b.marks:
            mapped = [tuple(sorted(vmap[x] for x in item)) for item in items]
            marks.setdefault(k, []).extend(mapped)
        marks = {k: sorted(set(v)) for k, v in marks.items()}
        try:
            merged = build_complex(nxt, faces, holes, marks)
        except Exception as exc:  # noqa: BLE001 - collect and report per attempt
            errors.append(f"edge map {mapping_edge}: {exc}")
            continue
        assert merged.vertex_count == a.vertex_count + b.vertex_count - 3
        attempts.append(merged)
    if not attempts:
        raise NoValidOrientation(
            "no orientation-compatible identification yields a valid complex: " + "; ".join(errors)
        )
    if len(attempts) == 2 and attempts[0] != attempts[1]:
        import logging

        logging.getLogger(__name__).info(
            "both identifications of %s with %s validate; keeping the first", spec.cycle_a, spec.cycle_b
        )
    return attempts[0]


@dataclass(frozen=True)
class DualGraph:
    """Cubic dual of a closed complex: one vertex per face, one edge per
    primal edge."""

    vertex_count: int
    edges: Tuple[Edge, ...]                 # dual edges, sorted pairs of face indices
    primal_edges: Tuple[Edge, ...]          # primal edge of each dual edge, parallel list

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        nbrs: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def dual_edge_of(self, primal: Edge) -> Edge:
        try:
            return self.edges[self.primal_edges.index(norm_edge(*primal))]
        except ValueError:
            raise IndexOutOfRange(f"{primal} is not an edge of the complex") from None


def dual_graph(c: SurfaceComplex) -> DualGraph:
    """Dual of a closed complex; every dual vertex has degree 3."""
    if not c.is_closed:
        raise NotClosed(f"complex has {len(c.holes)} holes; the dual is defined for closed complexes")
    pairs = []
    for e in c.edges:
        i, j = c.faces_of_edge(e)
        pairs.append((norm_edge(i, j), e))
    pairs.sort()
    d = DualGraph(
        vertex_count=len(c.faces),
        edges=tuple(p[0] for p in pairs),
        primal_edges=tuple(p[1] for p in pairs),
    )
    assert all(len(nb) == 3 for nb in d.adjacency)
    return d


# -- isomorphism -------------------------------------------------------

def _rotation_system(c: SurfaceComplex) -> List[Dict[int, int]]:
    """next_at[v][a] = b when some oriented triple is (v, a, b) cyclically."""
    of, oh = c.oriented_triples()
    nxt: List[Dict[int, int]] = [{} for _ in range(c.vertex_count)]
    for t in of + oh:
        x, y, z = t
        nxt[x][y] = z
        nxt[y][z] = x
        nxt[z][x] = y
    return nxt


def canonical_code(c: SurfaceComplex):
    """A total invariant of the complex up to isomorphism (including
    reflections).  Two complexes are isomorphic iff their codes are equal.
    Marks are ignored."""
    if "canonical" in c._cache:
        return c._cache["canonical"]
    nxt = _rotation_system(c)
    prv = [{b: a for a, b in d.items()} for d in nxt]
    hole_set = set(c.holes)
    best = None
    for u in range(c.vertex_count):
        for v in nxt[u]:
            for rot in (nxt, prv):
                label = {u: 0, v: 1}
                order = [u, v]
                code: List[int] = []
                qi = 0
                # BFS over vertices in label order; at each vertex walk its
                # rotation starting from the entry neighbour.
                entry = {u: v, v: u}
                while qi < len(order):
                    x = order[qi]
                    qi += 1
                    start = entry[x]
                    ring = [start]
                    w = rot[x][start]
                    while w != start:
                        ring.append(w)
                        w = rot[x][w]
                    for w in ring:
                        if w not in label:
                            label[w] = len(order)
                            order.append(w)
                            entry[w] = x
                    code.extend(label[w] for w in ring)
                    code.append(-1)
                hcode = sorted(tuple(sorted(label[x] for x in h)) for h in hole_set)
                full = (tuple(code), tuple(hcode))
                if best is None or full < best[0]:
                    best = (full, dict(label))
    assert best is not None
    c._cache["canonical"] = best
    return best


def canonical_form(c: SurfaceComplex) -> SurfaceComplex:
    """Relabel vertices into the canonical labelling (marks preserved)."""
    _, label = canonical_code(c)
    faces = [norm_triple(label[x] for x in t) for t in c.faces]
    holes = [norm_triple(label[x] for x in t) for t in c.holes]
    marks = {
        k: [tuple(sorted(label[x] for x in item)) for item in items]
        for k, items in c.marks
    }
    return build_complex(c.vertex_count, faces, holes, marks)


def is_isomorphic(a: SurfaceComplex, b: SurfaceComplex) -> bool:
    return canonical_code(a)[0] == canonical_code(b)[0]
