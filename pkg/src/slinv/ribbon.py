"""Combinatorial maps (ribbon graphs) on closed orientable surfaces.

A map is a rotation system: half-edges 0..2m-1, a permutation sigma whose
cycles are the counterclockwise half-edge orders at the vertices, and a
fixed-point-free involution alpha pairing half-edges into edges.  The
embedding surface is defined by the data; faces are the orbits of the face
permutation with the convention

    phi(h) = sigma(alpha(h))

(used everywhere, including duals), and the genus comes from Euler's
formula V - E + F = 2 - 2g.

Each edge carries a designated tail half-edge, giving it a direction used
for 1-chains; all homology computations are covariant under re-choosing
these directions.  Homology of the surface is realized over the rationals
as Z1(G)/B where B is the span of the face-boundary chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._linalg import Echelon, Vec
from .errors import (
    ContextMismatch,
    DanglingHalfEdge,
    Disconnected,
    EndpointsDiffer,
    InputError,
    NonIntegerGenus,
    NotALoop,
    NotInvolution,
)


class CombinatorialMap:
    """Validated, immutable rotation system with cached faces and genus."""

    __slots__ = (
        "vertices",
        "alpha",
        "sigma",
        "edge_tails",
        "n_half",
        "vertex_of",
        "edge_of",
        "faces",
        "genus",
    )

    def __init__(
        self,
        rotations: Iterable[Iterable[int]],
        pairing: Iterable[tuple[int, int]],
        orientations: Sequence[int] | None = None,
    ) -> None:
        rotations = [tuple(r) for r in rotations]
        pairing = [tuple(p) for p in pairing]

        seen: set[int] = set()
        for rot in rotations:
            for h in rot:
                if h in seen:
                    raise DanglingHalfEdge(f"half-edge {h} listed twice in rotations")
                seen.add(h)
        n_half = len(seen)
        if seen != set(range(n_half)):
            raise DanglingHalfEdge("half-edges must be dense integers 0..2m-1")
        if n_half % 2:
            raise NotInvolution("odd number of half-edges cannot be paired")

        alpha = [-1] * n_half
        for pair in pairing:
            if len(pair) != 2:
                raise NotInvolution(f"pairing entry {pair} is not a pair")
            a, b = pair
            if a == b:
                raise NotInvolution(f"half-edge {a} paired with itself")
            for h in (a, b):
                if not (0 <= h < n_half):
                    raise DanglingHalfEdge(f"half-edge {h} paired but not in any rotation")
                if alpha[h] != -1:
                    raise NotInvolution(f"half-edge {h} appears in two pairs")
            alpha[a], alpha[b] = b, a
        if -1 in alpha:
            raise DanglingHalfEdge(f"half-edge {alpha.index(-1)} has no pairing")

        if not rotations:
            raise Disconnected("a map needs at least one vertex")
        if n_half == 0 and len(rotations) > 1:
            raise Disconnected("multiple vertices with no edges")

        tails: list[int] = []
        if orientations is None:
            tails = [pair[0] for pair in pairing]
        else:
            tails = list(orientations)
            if len(tails) != len(pairing):
                raise InputError("one orientation entry per edge required")
            for e, t in enumerate(tails):
                if t not in pairing[e]:
                    raise InputError(f"tail {t} is not a half-edge of edge {e}")

        sigma = [-1] * n_half
        for rot in rotations:
            for i, h in enumerate(rot):
                sigma[h] = rot[(i + 1) % len(rot)]

        # connectivity over the group generated by sigma and alpha
        if n_half:
            if any(not rot for rot in rotations):
                raise Disconnected("isolated vertex in a map with edges")
            stack, reached = [0], {0}
            while stack:
                h = stack.pop()
                for nxt in (sigma[h], alpha[h]):
                    if nxt not in reached:
                        reached.add(nxt)
                        stack.append(nxt)
            if len(reached) != n_half:
                raise Disconnected("rotation system is not connected")

        # canonical vertex listing: orbits sorted by their least half-edge,
        # each cycle rotated to start at its least half-edge
        canon = []
        for rot in rotations:
            if rot:
                i = rot.index(min(rot))
                canon.append(rot[i:] + rot[:i])
            else:
                canon.append(rot)
        canon.sort(key=lambda r: r[0] if r else -1)

        vertex_of = [-1] * n_half
        for v, rot in enumerate(canon):
            for h in rot:
                vertex_of[h] = v
        edge_of = [-1] * n_half
        for e, pair in enumerate(pairing):
            edge_of[pair[0]] = e
            edge_of[pair[1]] = e

        object.__setattr__(self, "vertices", tuple(canon))
        object.__setattr__(self, "alpha", tuple(alpha))
        object.__setattr__(self, "sigma", tuple(sigma))
        object.__setattr__(self, "edge_tails", tuple(tails))
        object.__setattr__(self, "n_half", n_half)
        object.__setattr__(self, "vertex_of", tuple(vertex_of))
        object.__setattr__(self, "edge_of", tuple(edge_of))

        # faces: orbits of phi(h) = sigma(alpha(h))
        if n_half == 0:
            orbit_list = [()]
        else:
            seen_f = [False] * n_half
            orbit_list = []
            for start in range(n_half):
                if seen_f[start]:
                    continue
                walk = []
                h = start
                while not seen_f[h]:
                    seen_f[h] = True
                    walk.append(h)
                    h = sigma[alpha[h]]
                orbit_list.append(tuple(walk))
        orbit_list.sort(key=lambda w: w[0] if w else -1)
        object.__setattr__(self, "faces", tuple(orbit_list))

        V, E, F = len(canon), n_half // 2, len(orbit_list)
        euler_defect = 2 - (V - E + F)
        if euler_defect % 2:
            raise NonIntegerGenus(f"V-E+F = {V - E + F} is odd")
        g = euler_defect // 2
        assert g >= 0, "negative genus from a rotation system"
        object.__setattr__(self, "genus", g)

    def __setattr__(self, name: str, value) -> None:  # pragma: no cover
        raise AttributeError("CombinatorialMap is immutable")

    # -- basic counts ------------------------------------------------------

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return self.n_half // 2

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def edge_ids(self) -> range:
        return range(self.E)

    # -- edge helpers -------------------------------------------------------

    def tail_half(self, e: int) -> int:
        return self.edge_tails[e]

    def head_half(self, e: int) -> int:
        return self.alpha[self.edge_tails[e]]

    def endpoints(self, e: int) -> tuple[int, int]:
        """(tail vertex, head vertex) of edge e."""
        t = self.edge_tails[e]
        return self.vertex_of[t], self.vertex_of[self.alpha[t]]

    def is_loop(self, e: int) -> bool:
        t, h = self.endpoints(e)
        return t == h

    def half_edges_of_vertex(self, v: int) -> tuple[int, ...]:
        return self.vertices[v]

    # -- structure ------------------------------------------------------------

    def dual(self) -> "CombinatorialMap":
        """Dual map on the same surface: sigma* = phi, alpha* = alpha.

        Faces of the dual are the vertex orbits of the original, edge ids
        and tail half-edges carry over unchanged.
        """
        pairing = [(self.edge_tails[e], self.alpha[self.edge_tails[e]]) for e in self.edge_ids]
        return CombinatorialMap(self.faces, pairing, self.edge_tails)

    def reoriented(self, orientations: Sequence[int]) -> "CombinatorialMap":
        pairing = [(self.edge_tails[e], self.alpha[self.edge_tails[e]]) for e in self.edge_ids]
        return CombinatorialMap(self.vertices, pairing, orientations)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CombinatorialMap)
            and self.vertices == other.vertices
            and self.alpha == other.alpha
            and self.edge_tails == other.edge_tails
            and self.edge_of == other.edge_of
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.alpha, self.edge_tails, self.edge_of))

    def __repr__(self) -> str:
        return f"CombinatorialMap(V={self.V}, E={self.E}, F={self.F}, g={self.genus})"

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        lines = ["format rg 1"]
        for v, rot in enumerate(self.vertices):
            lines.append(" ".join(["vertex", str(v), *map(str, rot)]))
        for e in self.edge_ids:
            lines.append(f"edge {e} {self.tail_half(e)} {self.head_half(e)}")
        return "\n".join(lines) + "\n"


def build_map(
    rotations: Iterable[Iterable[int]],
    pairing: Iterable[tuple[int, int]],
    orientations: Sequence[int] | None = None,
) -> CombinatorialMap:
    """Validate and build a combinatorial map; faces and genus are cached."""
    return CombinatorialMap(rotations, pairing, orientations)


def faces(m: CombinatorialMap) -> tuple[tuple[int, ...], ...]:
    return m.faces


def genus(m: CombinatorialMap) -> int:
    return m.genus


def dual(m: CombinatorialMap) -> CombinatorialMap:
    return m.dual()


def parse_map(text: str) -> CombinatorialMap:
    """Parse the "rg v1" line format (see module External Interfaces)."""
    vert_rows: dict[int, tuple[int, ...]] = {}
    edge_rows: dict[int, tuple[int, int]] = {}
    saw_format = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not saw_format:
            if parts != ["format", "rg", "1"]:
                raise InputError(f"expected 'format rg 1' header, got {line!r}")
            saw_format = True
            continue
        if parts[0] == "vertex":
            try:
                vid = int(parts[1])
                rot = tuple(int(p) for p in parts[2:])
            except (ValueError, IndexError) as exc:
                raise InputError(f"bad vertex line {line!r}") from exc
            if vid in vert_rows:
                raise InputError(f"duplicate vertex id {vid}")
            vert_rows[vid] = rot
        elif parts[0] == "edge":
            try:
                eid, tail, head = (int(p) for p in parts[1:4])
            except (ValueError, IndexError) as exc:
                raise InputError(f"bad edge line {line!r}") from exc
            if len(parts) != 4:
                raise InputError(f"bad edge line {line!r}")
            if eid in edge_rows:
                raise InputError(f"duplicate edge id {eid}")
            edge_rows[eid] = (tail, head)
        else:
            raise InputError(f"unknown directive {parts[0]!r}")
    if not saw_format:
        raise InputError("missing 'format rg 1' header")
    if sorted(vert_rows) != list(range(len(vert_rows))):
        raise InputError("vertex ids must be dense 0..V-1")
    if sorted(edge_rows) != list(range(len(edge_rows))):
        raise InputError("edge ids must be dense 0..E-1")
    rotations = [vert_rows[v] for v in range(len(vert_rows))]
    pairing = [edge_rows[e] for e in range(len(edge_rows))]
    orientations = [edge_rows[e][0] for e in range(len(edge_rows))]
    return CombinatorialMap(rotations, pairing, orientations)


def delete_edge(m: CombinatorialMap, e: int) -> CombinatorialMap:
    """Map with edge e removed (half-edges relabeled densely, edge ids shifted)."""
    gone = {m.tail_half(e), m.head_half(e)}
    keep = [h for h in range(m.n_half) if h not in gone]
    relabel = {h: i for i, h in enumerate(keep)}
    rotations = [tuple(relabel[h] for h in rot if h not in gone) for rot in m.vertices]
    pairing = []
    orientations = []
    for f in m.edge_ids:
        if f == e:
            continue
        pairing.append((relabel[m.tail_half(f)], relabel[m.head_half(f)]))
        orientations.append(relabel[m.tail_half(f)])
    return CombinatorialMap(rotations, pairing, orientations)


def is_isomorphic(m1: CombinatorialMap, m2: CombinatorialMap) -> bool:
    """Orientation-preserving isomorphism of connected labeled maps.

    An isomorphism is a half-edge bijection commuting with both sigma and
    alpha; by connectivity it is determined by the image of one half-edge.
    """
    if (m1.n_half, m1.V, m1.F) != (m2.n_half, m2.V, m2.F):
        return False
    if m1.n_half == 0:
        return True
    for target in range(m2.n_half):
        image = {0: target}
        stack = [0]
        ok = True
        while stack and ok:
            h = stack.pop()
            for nxt, nxt_img in (
                (m1.sigma[h], m2.sigma[image[h]]),
                (m1.alpha[h], m2.alpha[image[h]]),
            ):
                if nxt in image:
                    if image[nxt] != nxt_img:
                        ok = False
                        break
                else:
                    image[nxt] = nxt_img
                    stack.append(nxt)
        if ok and len(set(image.values())) == m1.n_half:
            return True
    return False


# -- spanning subgraphs -----------------------------------------------------


@dataclass(frozen=True)
class SpanningSubgraph:
    """Edge subset of a parent map, on the full vertex set."""

    parent: CombinatorialMap
    edges: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(self.edges))
        for e in self.edges:
            if not (0 <= e < self.parent.E):
                raise InputError(f"edge id {e} outside parent range")

    @property
    def half_edges(self) -> set[int]:
        out = set()
        for e in self.edges:
            out.add(self.parent.tail_half(e))
            out.add(self.parent.head_half(e))
        return out


@dataclass(frozen=True)
class SubgraphProfile:
    """Topological profile of a spanning subgraph H inside its surface.

    s is twice the genus of the regular neighborhood of H, s_perp twice the
    genus of the complementary subsurface, k the dimension of the kernel of
    H1(H) -> H1(F), lam the rank of the boundary-circle classes in H1(F).
    """

    components: int
    s: int
    s_perp: int
    k: int
    b1: int
    boundary_count: int
    lam: int


def _restricted_next(m: CombinatorialMap, half_set: set[int], h: int) -> int:
    """sigma restricted to half_set: walk the vertex rotation past absentees."""
    nxt = m.sigma[h]
    while nxt not in half_set:
        nxt = m.sigma[nxt]
    return nxt


def boundary_walks(m: CombinatorialMap, edges: Iterable[int]) -> list[tuple[int, ...]]:
    """Boundary circles of the ribbon subgraph on the given edges.

    Walks use next = restricted-sigma after alpha, i.e. the face permutation
    of the sub-map; isolated vertices are not represented here (they each
    bound one extra circle, accounted for by callers).
    """
    half_set = set()
    for e in edges:
        half_set.add(m.tail_half(e))
        half_set.add(m.head_half(e))
    walks = []
    seen: set[int] = set()
    for start in sorted(half_set):
        if start in seen:
            continue
        walk = []
        h = start
        while h not in seen:
            seen.add(h)
            walk.append(h)
            h = _restricted_next(m, half_set, m.alpha[h])
        walks.append(tuple(walk))
    return walks


def chain_of_walk(m: CombinatorialMap, walk: Iterable[int]) -> Vec:
    """1-chain of a half-edge walk: +e when the edge is traversed tail-first."""
    out: Vec = {}
    for h in walk:
        e = m.edge_of[h]
        sign = Fraction(1) if h == m.edge_tails[e] else Fraction(-1)
        new = out.get(e, Fraction(0)) + sign
        if new:
            out[e] = new
        else:
            out.pop(e, None)
    return out


def _component_count(m: CombinatorialMap, edges: Iterable[int]) -> int:
    parent = list(range(m.V))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = m.V
    for e in edges:
        a, b = (find(v) for v in m.endpoints(e))
        if a != b:
            parent[a] = b
            count -= 1
    return count


def _neighborhood_stats(m: CombinatorialMap, edges: Iterable[int]) -> tuple[int, int, int, list[tuple[int, ...]]]:
    """(components, boundary circles, s = 2*genus of the neighborhood, walks)."""
    edges = list(edges)
    walks = boundary_walks(m, edges)
    touched = {m.vertex_of[h] for w in walks for h in w}
    isolated = m.V - len(touched)
    bc = len(walks) + isolated
    c = _component_count(m, edges)
    # per-component 2g sums to 2c - (V - E + bc)
    s = 2 * c - (m.V - len(edges) + bc)
    return c, bc, s, walks


# -- homology ----------------------------------------------------------------


class HomologyContext:
    """Rational homology data of a map's surface.

    cycle_basis: fundamental cycles of a spanning tree (a basis of Z1(G)).
    face_space: reduced echelon of the face-boundary chains B.
    Classes in H1(F) = Z1/B are represented by the canonical reduced
    representative of a chain modulo B (unique for a reduced echelon).
    """

    def __init__(self, m: CombinatorialMap) -> None:
        self.map = m
        self.h1_dim = 2 * m.genus

        # spanning tree by BFS; path_to_root[v] = 1-chain of a tree path v -> root
        path_to_root: list[Vec | None] = [None] * m.V
        path_to_root[0] = {}
        tree_edges: set[int] = set()
        frontier = [0]
        adj: list[list[int]] = [[] for _ in range(m.V)]
        for e in m.edge_ids:
            t, h = m.endpoints(e)
            adj[t].append(e)
            if h != t:
                adj[h].append(e)
        while frontier:
            u = frontier.pop()
            for e in adj[u]:
                t, h = m.endpoints(e)
                v = h if t == u else t
                if path_to_root[v] is None:
                    chain = dict(path_to_root[u])
                    sign = Fraction(1) if t == v else Fraction(-1)
                    new = chain.get(e, Fraction(0)) + sign
                    if new:
                        chain[e] = new
                    else:
                        chain.pop(e, None)
                    path_to_root[v] = chain
                    tree_edges.add(e)
                    frontier.append(v)
        self.tree_edges = frozenset(tree_edges)

        self.cycle_basis: list[Vec] = []
        self._fundamental: dict[int, Vec] = {}
        for e in m.edge_ids:
            if e in tree_edges:
                continue
            cyc = self._close_edge(e, path_to_root)
            self._fundamental[e] = cyc
            self.cycle_basis.append(cyc)
        self._path_to_root = path_to_root

        self.face_space = Echelon()
        for walk in m.faces:
            self.face_space.insert(chain_of_walk(m, walk))

        assert len(self.cycle_basis) == m.E - m.V + 1
        assert self.face_space.rank == m.F - 1 or m.E == 0
        assert len(self.cycle_basis) - self.face_space.rank == self.h1_dim or m.E == 0

        self._dual: CombinatorialMap | None = None

    def _close_edge(self, e: int, path_to_root: list[Vec | None]) -> Vec:
        m = self.map
        t, h = m.endpoints(e)
        chain: Vec = {e: Fraction(1)}
        for v, sign in ((h, Fraction(1)), (t, Fraction(-1))):
            for edge, val in path_to_root[v].items():
                new = chain.get(edge, Fraction(0)) + sign * val
                if new:
                    chain[edge] = new
                else:
                    chain.pop(edge, None)
        return chain

    @property
    def dual_map(self) -> CombinatorialMap:
        if self._dual is None:
            self._dual = self.map.dual()
        return self._dual

    # -- class arithmetic --------------------------------------------------

    def class_of(self, chain: Vec) -> Vec:
        """Canonical representative of [chain] in H1(F) = Z1/B."""
        return self.face_space._reduce(chain)

    def in_B(self, chain: Vec) -> bool:
        return self.face_space.contains(chain)

    def rank_mod_B(self, chains: Iterable[Vec]) -> int:
        ech = self.face_space.copy()
        return sum(1 for c in chains if ech.insert(c))

    def fundamental_cycles_of(self, edges: Iterable[int]) -> list[Vec]:
        """Fundamental cycles of the subgraph on `edges` (a basis of Z1(H))."""
        m = self.map
        edges = set(edges)
        parent = list(range(m.V))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        path: dict[int, Vec] = {}
        cycles: list[Vec] = []
        # grow a forest inside H; each rejected edge closes one cycle
        forest_adj: dict[int, list[tuple[int, int]]] = {}
        for e in sorted(edges):
            t, h = m.endpoints(e)
            a, b = find(t), find(h)
            if a != b:
                parent[a] = b
                forest_adj.setdefault(t, []).append((e, h))
                forest_adj.setdefault(h, []).append((e, t))
        # chains from every vertex to its forest root
        seen: set[int] = set()
        for root in range(m.V):
            if root in seen:
                continue
            path[root] = {}
            seen.add(root)
            frontier = [root]
            while frontier:
                u = frontier.pop()
                for e, v in forest_adj.get(u, []):
                    if v in seen:
                        continue
                    t, _ = m.endpoints(e)
                    chain = dict(path[u])
                    sign = Fraction(1) if t == v else Fraction(-1)
                    new = chain.get(e, Fraction(0)) + sign
                    if new:
                        chain[e] = new
                    else:
                        chain.pop(e, None)
                    path[v] = chain
                    seen.add(v)
                    frontier.append(v)
        forest = {e for adjs in forest_adj.values() for e, _ in adjs}
        for e in sorted(edges - forest):
            t, h = m.endpoints(e)
            chain: Vec = {e: Fraction(1)}
            for v, sign in ((h, Fraction(1)), (t, Fraction(-1))):
                for edge, val in path[v].items():
                    new = chain.get(edge, Fraction(0)) + sign * val
                    if new:
                        chain[edge] = new
                    else:
                        chain.pop(edge, None)
            cycles.append(chain)
        return cycles


def subgraph_profile(H: SpanningSubgraph, ctx: HomologyContext) -> SubgraphProfile:
    """Topological profile (c, s, s_perp, k, b1, boundary circles, lam) of H."""
    m = H.parent
    if ctx.map is not m and ctx.map != m:
        raise ContextMismatch("homology context was built for a different map")
    edges = sorted(H.edges)
    c, bc, s, walks = _neighborhood_stats(m, edges)
    b1 = len(edges) - m.V + c

    cycles = ctx.fundamental_cycles_of(edges)
    k = b1 - ctx.rank_mod_B(cycles)

    complement = [e for e in m.edge_ids if e not in H.edges]
    _, _, s_perp, _ = _neighborhood_stats(ctx.dual_map, complement)

    lam = ctx.rank_mod_B(chain_of_walk(m, w) for w in walks)
    return SubgraphProfile(
        components=c, s=s, s_perp=s_perp, k=k, b1=b1, boundary_count=bc, lam=lam
    )


# -- edge homology and parallelism -------------------------------------------


def _edge_chain(e: int) -> Vec:
    return {e: Fraction(1)}


def edge_class(e: int, ctx: HomologyContext) -> Vec:
    """Class of a loop edge in H1(F), as the canonical representative mod B."""
    if not ctx.map.is_loop(e):
        raise NotALoop(f"edge {e} has distinct endpoints")
    return ctx.class_of(_edge_chain(e))


def cycle_of_pair(e: int, f: int, m: CombinatorialMap) -> Vec:
    """Closed 1-chain formed by two non-loop edges sharing both endpoints."""
    if m.is_loop(e) or m.is_loop(f):
        raise EndpointsDiffer("cycle_of_pair expects non-loop edges")
    if e == f or set(m.endpoints(e)) != set(m.endpoints(f)):
        raise EndpointsDiffer(f"edges {e} and {f} do not share both endpoints")
    te, _ = m.endpoints(e)
    tf, _ = m.endpoints(f)
    sign = Fraction(-1) if te == tf else Fraction(1)
    return {e: Fraction(1), f: sign}


def parallel(e: int, f: int, ctx: HomologyContext) -> bool:
    """Whether two edges are homologous on the surface (Tait-graph sense).

    Loops are parallel when their classes agree up to sign; non-loops when
    they share endpoints and their union is null-homologous.  A loop is
    never parallel to a non-loop.
    """
    m = ctx.map
    if e == f:
        return True
    le, lf = m.is_loop(e), m.is_loop(f)
    if le != lf:
        return False
    if le:
        one = Fraction(1)
        return ctx.in_B({e: one, f: -one}) or ctx.in_B({e: one, f: one})
    if set(m.endpoints(e)) != set(m.endpoints(f)):
        return False
    return ctx.in_B(cycle_of_pair(e, f, m))
