"""Matroid oracles and matroid union by augmenting paths.

Four kinds of matroid live on the edge set of a quotient graph:

* graphic: forests;
* in-degree constrained: edge sets admitting an orientation with in-degree
  at most ``limit[v]`` at each vertex (limit 1 everywhere gives the bicycle
  matroid whose bases are spanning pseudo-forests);
* linear: gain vectors independent over the rationals;
* uniform: any set of at most r elements.

Each oracle has a pure ``independent`` predicate and a ``state`` factory.
A state is a mutable independent set supporting ``probe`` (None when an
element can be added, else its fundamental circuit), ``add`` and
``remove``.  :func:`partition` runs Edmonds' matroid partition on states.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

from .gain_graph import QuotientGraph, component_count, counting_target, incident_vertices, plate_rotations
from .linalg import express, rank


class _ForestState:
    """Rooted forest stored as parent pointers; relinking re-roots one path."""

    def __init__(self, ends):
        self.ends = ends
        self.parent: dict[int, tuple[int, int]] = {}
        self.child: dict[int, int] = {}
        self.members: set[int] = set()

    def _root(self, v):
        parent = self.parent
        while v in parent:
            v = parent[v][0]
        return v

    def probe(self, x):
        u, v = self.ends[x]
        if u == v:
            return [x]
        parent = self.parent
        depth = {u: 0}
        up = []
        w = u
        while w in parent:
            w, e = parent[w]
            up.append(e)
            depth[w] = len(up)
        side = []
        w = v
        while w not in depth:
            if w not in parent:
                return None  # different trees
            w, e = parent[w]
            side.append(e)
        return [x] + up[:depth[w]] + side

    def _reroot(self, u):
        parent, child = self.parent, self.child
        prev = prev_e = None
        w = u
        while True:
            nxt = parent.get(w)
            if prev is None:
                parent.pop(w, None)
            else:
                parent[w] = (prev, prev_e)
                child[prev_e] = w
            if nxt is None:
                return
            prev, prev_e = w, nxt[1]
            w = nxt[0]

    def add(self, x):
        u, v = self.ends[x]
        self._reroot(u)
        self.parent[u] = (v, x)
        self.child[x] = u
        self.members.add(x)

    def remove(self, x):
        c = self.child.pop(x)
        del self.parent[c]
        self.members.discard(x)


class _IndegreeState:
    """Orientation with bounded in-degree, repaired along reversed paths."""

    def __init__(self, ends, limits):
        self.ends = ends
        self.limits = limits
        self.head: dict[int, int] = {}
        self.into: dict[int, set[int]] = {}
        self.members: set[int] = set()

    def _tail(self, e):
        a, b = self.ends[e]
        return b if a == self.head[e] else a

    def _search(self, starts, seen=None):
        """BFS backwards along in-edges for a vertex with spare in-degree.

        Returns ``(found, pred)``; ``found`` is None when every reachable
        vertex is saturated, and then ``pred`` holds the reached vertices.
        Vertices in ``seen`` are known saturated with saturated ancestry
        and are not entered again.
        """
        into, limits = self.into, self.limits
        pred: dict[int, Optional[tuple[int, int]]] = {}
        skip = seen if seen is not None else pred
        queue = deque()
        for s in starts:
            if s in pred or s in skip:
                continue
            pred[s] = None
            if len(into.get(s, ())) < limits[s]:
                return s, pred
            queue.append(s)
        while queue:
            w = queue.popleft()
            for e in into.get(w, ()):
                t = self._tail(e)
                if t in pred or t in skip:
                    continue
                pred[t] = (w, e)
                if len(into.get(t, ())) < limits[t]:
                    return t, pred
                queue.append(t)
        return None, pred

    def probe(self, x):
        found, reached = self._search(self.ends[x])
        if found is not None:
            return None
        into = self.into
        return [x] + [e for w in reached for e in into.get(w, ())]

    def begin(self):
        """Start a batch of probes against an unchanging state."""
        self._seen: set[int] = set()

    def probe_new(self, x):
        """Like probe, but omit circuit elements already returned since begin()."""
        found, reached = self._search(self.ends[x], self._seen)
        if found is not None:
            return None
        self._seen.update(reached)
        into = self.into
        return [x] + [e for w in reached for e in into.get(w, ())]

    def add(self, x):
        found, pred = self._search(self.ends[x])
        if found is None:
            raise ValueError(f"element {x} is dependent")
        into, head = self.into, self.head
        z = found
        while pred[z] is not None:
            w, e = pred[z]
            into[w].discard(e)
            into.setdefault(z, set()).add(e)
            head[e] = z
            z = w
        head[x] = z
        into.setdefault(z, set()).add(x)
        self.members.add(x)

    def remove(self, x):
        h = self.head.pop(x)
        self.into[h].discard(x)
        self.members.discard(x)

    def saturated_closure(self, xs):
        """In-edges of everything reachable backwards from the endpoints of ``xs``."""
        starts = [v for x in xs for v in self.ends[x]]
        found, reached = self._search(starts) if starts else (None, {})
        if found is not None:
            raise ValueError("closure requested for an independent element")
        return {e for w in reached for e in self.into.get(w, ())}


class _LinearState:
    def __init__(self, vectors):
        self.vectors = vectors
        self.members: set[int] = set()
        self._order: list[int] = []

    def probe(self, x):
        basis = self._order
        coeffs = express([self.vectors[k] for k in basis], self.vectors[x])
        if coeffs is None:
            return None
        return [x] + [k for k, c in zip(basis, coeffs) if c != 0]

    def add(self, x):
        self._order.append(x)
        self.members.add(x)

    def remove(self, x):
        self._order.remove(x)
        self.members.discard(x)


class _UniformState:
    def __init__(self, r):
        self.r = r
        self.members: set[int] = set()

    def probe(self, x):
        if len(self.members) < self.r:
            return None
        return [x] + sorted(self.members)

    def add(self, x):
        self.members.add(x)

    def remove(self, x):
        self.members.discard(x)


@dataclass(frozen=True)
class GraphicMatroid:
    ends: tuple[tuple[int, int], ...]
    kind: str = field(default="graphic", init=False)

    @property
    def ground(self):
        return range(len(self.ends))

    def independent(self, F: Iterable[int]) -> bool:
        parent: dict[int, int] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in F:
            a, b = (find(v) for v in self.ends[k])
            if a == b:
                return False
            parent[a] = b
        return True

    def state(self):
        return _ForestState(self.ends)


@dataclass(frozen=True)
class IndegreeMatroid:
    """Edge sets orientable with in-degree at most ``limits[v]`` (Hakimi)."""

    ends: tuple[tuple[int, int], ...]
    limits: tuple[int, ...]  # indexed by vertex; entry 0 unused
    kind: str = field(default="indeg_constrained", init=False)

    @property
    def ground(self):
        return range(len(self.ends))

    def independent(self, F: Iterable[int]) -> bool:
        st = self.state()
        for k in F:
            if st.probe(k) is not None:
                return False
            st.add(k)
        return True

    def state(self):
        return _IndegreeState(self.ends, self.limits)


@dataclass(frozen=True)
class LinearMatroid:
    vectors: tuple[tuple[int, ...], ...]
    kind: str = field(default="linear", init=False)

    @property
    def ground(self):
        return range(len(self.vectors))

    def independent(self, F: Iterable[int]) -> bool:
        F = list(F)
        return rank([self.vectors[k] for k in F]) == len(F)

    def state(self):
        return _LinearState(self.vectors)


@dataclass(frozen=True)
class UniformMatroid:
    size: int
    r: int
    kind: str = field(default="uniform", init=False)

    @property
    def ground(self):
        return range(self.size)

    def independent(self, F: Iterable[int]) -> bool:
        return len(set(F)) <= self.r

    def state(self):
        return _UniformState(self.r)


def bicycle_matroid(n: int, ends) -> IndegreeMatroid:
    return IndegreeMatroid(tuple(ends), (0,) + (1,) * n)


@dataclass
class PartitionResult:
    parts: list[list[int]]
    rejected: list[int]
    # labelled set of the first failed augmentation; spans a union-rank deficit
    deficient: Optional[set[int]] = None
    states: list = field(default_factory=list, repr=False)

    @property
    def rank(self) -> int:
        return sum(len(p) for p in self.parts)


def _augment(states, owner, y_end, k_end, label):
    moves = []
    elem, to = y_end, k_end
    while True:
        moves.append((elem, owner.get(elem), to))
        if label[elem] is None:
            break
        elem, to = label[elem]
    for elem, frm, _ in moves:
        if frm is not None:
            states[frm].remove(elem)
    for elem, _, to in moves:
        states[to].add(elem)
        owner[elem] = to


def _insert(states, owner, s):
    label: dict[int, Optional[tuple[int, int]]] = {s: None}
    queue = deque([s])
    probes = []
    for st in states:
        if hasattr(st, "begin"):
            st.begin()
            probes.append(st.probe_new)
        else:
            probes.append(st.probe)
    while queue:
        y = queue.popleft()
        cur = owner.get(y)
        circuits = []
        for k, probe in enumerate(probes):
            if k == cur:
                continue
            c = probe(y)
            if c is None:
                _augment(states, owner, y, k, label)
                return None
            circuits.append((k, c))
        for k, c in circuits:
            for z in c:
                if z not in label:
                    label[z] = (y, k)
                    queue.append(z)
    return set(label)


def partition(states, elements: Iterable[int], on_fail=None) -> PartitionResult:
    """Greedy matroid partition over ``elements`` in the given order.

    ``on_fail(labelled, states)`` runs once, at the first rejection, while the
    states still describe the independent sets that made it fail.
    """
    owner: dict[int, int] = {}
    rejected = []
    deficient = None
    for s in elements:
        lab = _insert(states, owner, s)
        if lab is not None:
            rejected.append(s)
            if deficient is None:
                deficient = lab
                if on_fail is not None:
                    on_fail(lab, states)
    parts = [sorted(st.members) for st in states]
    return PartitionResult(parts, rejected, deficient, list(states))


def union_rank(oracles: Sequence, E: Iterable[int]) -> tuple[int, list[list[int]]]:
    """Rank of the union matroid on E with a certifying partition."""
    grounds = {tuple(o.ground) for o in oracles}
    if len(grounds) > 1:
        raise ValueError("oracles do not share a ground set")
    E = list(E)
    ground = set(next(iter(grounds))) if grounds else set()
    if not set(E) <= ground:
        raise ValueError("edge subset outside the ground set")
    res = partition([o.state() for o in oracles], E)
    return res.rank, res.parts


def oracle_rank(oracle, F: Iterable[int]) -> int:
    """Rank of F in one matroid by greedy extension."""
    chosen: list[int] = []
    for k in F:
        if oracle.independent(chosen + [k]):
            chosen.append(k)
    return len(chosen)


# -- theorem-level decompositions ---------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """d spanning trees, C(d, 2) spanning pseudo-forests and C(d+1, 2) extra edges.

    ``heads`` orients every pseudo-forest edge so each vertex has in-degree
    exactly one inside each pseudo-forest.
    """

    trees: tuple[tuple[int, ...], ...]
    pseudoforests: tuple[tuple[int, ...], ...]
    residual: tuple[int, ...]
    heads: dict = field(default_factory=dict, compare=False)

    def to_json(self):
        return {"trees": [list(t) for t in self.trees],
                "pseudoforests": [list(f) for f in self.pseudoforests],
                "residual": list(self.residual),
                "heads": {str(k): v for k, v in sorted(self.heads.items())}}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(tuple(t) for t in obj["trees"]),
                   tuple(tuple(f) for f in obj["pseudoforests"]),
                   tuple(obj["residual"]),
                   {int(k): v for k, v in obj.get("heads", {}).items()})


class DecompositionError(ValueError):
    pass


def validate_decomposition(g: QuotientGraph, dec: Decomposition) -> None:
    """Raise DecompositionError unless ``dec`` is a valid certificate for g."""
    d, n = g.dimension, g.n_vertices
    if len(dec.trees) != d or len(dec.pseudoforests) != comb(d, 2):
        raise DecompositionError("wrong number of trees or pseudo-forests")
    if len(dec.residual) != comb(d + 1, 2):
        raise DecompositionError(f"residual has {len(dec.residual)} edges, need {comb(d + 1, 2)}")
    used = [k for part in (*dec.trees, *dec.pseudoforests, dec.residual) for k in part]
    if sorted(used) != list(range(g.m)):
        raise DecompositionError("parts do not partition the edge set")
    graphic = GraphicMatroid(tuple(g.ends()))
    for i, T in enumerate(dec.trees):
        if len(T) != n - 1 or not graphic.independent(T):
            raise DecompositionError(f"tree {i} is not a spanning tree")
    for i, P in enumerate(dec.pseudoforests):
        indeg = [0] * (n + 1)
        for k in P:
            h = dec.heads.get(k)
            if h is None or h not in g.ends()[k]:
                raise DecompositionError(f"pseudo-forest {i}: edge {k} has no valid head")
            indeg[h] += 1
        if len(P) != n or any(x != 1 for x in indeg[1:]):
            raise DecompositionError(f"pseudo-forest {i} is not spanning with in-degree one")


@dataclass(frozen=True)
class Violation:
    """Edge set F breaking a count bound: ``len(edges) > bound``."""

    edges: tuple[int, ...]
    bound: int

    def to_json(self):
        return {"edges": list(self.edges), "bound": self.bound}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["edges"]), obj["bound"])


def edge_sparsity_bound(g: QuotientGraph, F: Iterable[int]) -> int:
    """d(n_F - w_F) + C(d, 2) n_F + C(d+1, 2), the body-and-bar count of F."""
    F = list(F)
    d = g.dimension
    n_F = len(incident_vertices(g, F))
    return d * (n_F - component_count(g, F)) + comb(d, 2) * n_F + comb(d + 1, 2)


def mixed_bound(g: QuotientGraph, F: Iterable[int]) -> int:
    """The plate-and-bar count of F: d(n_F - w_F) + sum of k'_v over V_F + C(d+1, 2)."""
    F = list(F)
    d = g.dimension
    verts = incident_vertices(g, F)
    return (d * (len(verts) - component_count(g, F))
            + sum(plate_rotations(d, g.weight(v)) for v in verts) + comb(d + 1, 2))


def _drop_tree_components(g: QuotientGraph, S: Iterable[int]) -> list[int]:
    from .gain_graph import _components
    keep = []
    for comp in _components(g, sorted(S)):
        verts = incident_vertices(g, comp)
        if len(comp) >= len(verts):  # contains a cycle
            keep.extend(comp)
    return sorted(keep)


def _body_states(g: QuotientGraph, spares: bool = True):
    d, n = g.dimension, g.n_vertices
    ends = tuple(g.ends())
    states = [_ForestState(ends) for _ in range(d)]
    states += [_IndegreeState(ends, (0,) + (1,) * n) for _ in range(comb(d, 2))]
    if spares:
        states.append(_UniformState(comb(d + 1, 2)))
    return states


def body_union(g: QuotientGraph, E: Optional[Iterable[int]] = None) -> PartitionResult:
    """Partition edges into d forests, C(d, 2) pseudo-forests and C(d+1, 2) spares."""
    return partition(_body_states(g), range(g.m) if E is None else E)


def decompose_theorem2(g: QuotientGraph):
    """Decomposition certificate, or a Violation of the body-and-bar edge count."""
    if g.is_mixed:
        raise ValueError("decompose_theorem2 needs all bodies (k_v = d)")
    if g.m != counting_target(g):
        raise ValueError(f"need m = {counting_target(g)} edges, got {g.m}")
    d = g.dimension
    res = body_union(g)
    if res.rejected:
        F = _drop_tree_components(g, res.deficient)
        return Violation(tuple(F), edge_sparsity_bound(g, F))
    trees = tuple(tuple(p) for p in res.parts[:d])
    pf_states = res.states[d:d + comb(d, 2)]
    heads = {}
    for st in pf_states:
        heads.update(st.head)
    return Decomposition(trees, tuple(tuple(sorted(st.members)) for st in pf_states),
                         tuple(res.parts[-1]), heads)


def n1_union_check(g: QuotientGraph):
    """Is the loop set a base of the union of d copies of the gain-vector matroid?

    Returns ``(True, parts)`` with d linearly independent gain sets, or
    ``(False, Violation)`` where the violation has ``|F| > d * dim span C(F)``.
    """
    d = g.dimension
    if g.n_vertices != 1 or g.m != d * d:
        raise ValueError("n1_union_check needs n = 1 and m = d^2")
    vectors = tuple(e.gain for e in g.edges)
    res = partition([_LinearState(vectors) for _ in range(d)], range(g.m))
    if not res.rejected:
        return True, res.parts
    F = sorted(res.deficient)
    return False, Violation(tuple(F), d * rank([vectors[k] for k in F]))


def f4_limits(g: QuotientGraph) -> tuple[int, ...]:
    d = g.dimension
    return (0,) + tuple(plate_rotations(d, g.weight(v)) for v in range(1, g.n_vertices + 1))


def f4_independent(ends, F: Iterable[int], limits) -> bool:
    """Can F be oriented with in-degree at most ``limits[v]`` everywhere?"""
    return IndegreeMatroid(tuple(ends), tuple(limits)).independent(F)


def mixed_union(g: QuotientGraph, E: Optional[Iterable[int]] = None, on_fail=None) -> PartitionResult:
    if g.weights is None:
        raise ValueError("mixed_union_rank needs vertex weights")
    d = g.dimension
    ends = tuple(g.ends())
    states = [_ForestState(ends) for _ in range(d)]
    states.append(_UniformState(comb(d + 1, 2)))
    states.append(_IndegreeState(ends, f4_limits(g)))
    return partition(states, range(g.m) if E is None else E, on_fail)


def mixed_union_rank(g: QuotientGraph) -> tuple[int, list[list[int]]]:
    res = mixed_union(g)
    return res.rank, res.parts


def mixed_check(g: QuotientGraph) -> tuple[PartitionResult, Optional[Violation]]:
    """Mixed union partition plus, on deficiency, an edge set breaking the plate count."""
    found = []

    def extract(S, states):
        f4 = states[-1]
        outside = [x for x in S if x not in f4.members]
        found.append(sorted(set(outside) | f4.saturated_closure(outside)))

    res = mixed_union(g, on_fail=extract)
    if not found:
        return res, None
    A = found[0]
    return res, Violation(tuple(A), mixed_bound(g, A))
