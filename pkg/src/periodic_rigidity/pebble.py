"""(a, b)-sparsity of multigraphs with loops: pebble game and brute force.

A multigraph is (a, b)-sparse when every non-empty edge subset F satisfies
``|F| <= a * n_F - b`` with ``n_F`` the number of vertices touched by F.
For ``0 <= b < 2a`` these graphs are the independent sets of a matroid and
the pebble game below decides membership edge by edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Ends = Sequence[tuple[int, int]]


@dataclass(frozen=True)
class SparsityParams:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or not 0 <= self.b < 2 * self.a:
            raise ValueError(f"need a >= 1 and 0 <= b < 2a, got ({self.a}, {self.b})")

    @property
    def loops_allowed(self) -> bool:
        return self.b < self.a


@dataclass(frozen=True)
class SparseSubgraphResult:
    kept: tuple[int, ...]
    rejected: tuple[int, ...]
    is_tight: bool
    # vertex set spanning a tight block that blocked the first rejected edge
    violating_set: Optional[frozenset] = None


def _ends_of(g) -> tuple[int, list[tuple[int, int]]]:
    """Accept a QuotientGraph or a (n_vertices, ends) pair."""
    if hasattr(g, "edges") and hasattr(g, "n_vertices"):
        return g.n_vertices, [(e.tail, e.head) for e in g.edges]
    n, ends = g
    return n, list(ends)


class PebbleGame:
    """Incremental (a, b) pebble game on vertices ``1..n``.

    Every vertex starts with ``a`` pebbles.  An accepted edge is covered by a
    pebble taken from its tail and is stored as an out-edge of that tail.
    """

    def __init__(self, n: int, params: SparsityParams):
        self.n = n
        self.a, self.b = params.a, params.b
        self.pebbles = [self.a] * (n + 1)
        self.pebbles[0] = 0
        self.out: list[dict[int, int]] = [dict() for _ in range(n + 1)]  # eid -> head
        self._mark = [0] * (n + 1)
        self._stamp = 0
        self.last_reach: set[int] = set()

    def _fetch(self, w: int, blocked: int) -> bool:
        """Move one free pebble to ``w`` along a directed path, if any exists."""
        self._stamp += 1
        stamp, mark, pebbles, out = self._stamp, self._mark, self.pebbles, self.out
        mark[w] = stamp
        if blocked:
            mark[blocked] = stamp
        pred: dict[int, tuple[int, int]] = {}
        stack = [w]
        found = 0
        while stack and not found:
            x = stack.pop()
            for eid, y in out[x].items():
                if mark[y] == stamp:
                    continue
                mark[y] = stamp
                pred[y] = (x, eid)
                if pebbles[y]:
                    found = y
                    break
                stack.append(y)
        if not found:
            self.last_reach.update(pred)
            self.last_reach.add(w)
            return False
        # reverse the path found -> ... -> w
        y = found
        while y != w:
            x, eid = pred[y]
            del out[x][eid]
            out[y][eid] = x
            y = x
        pebbles[found] -= 1
        pebbles[w] += 1
        return True

    def can_insert(self, u: int, v: int) -> bool:
        """Gather ``b + 1`` pebbles on the endpoints; True when that succeeds."""
        need = self.b + 1
        self.last_reach = set()
        if u == v:
            if need > self.a:
                self.last_reach = {u}
                return False
            while self.pebbles[u] < need:
                if not self._fetch(u, 0):
                    return False
            return True
        while self.pebbles[u] + self.pebbles[v] < need:
            if self.pebbles[u] < self.a and self._fetch(u, v):
                continue
            if self.pebbles[v] < self.a and self._fetch(v, u):
                continue
            self.last_reach |= {u, v}
            return False
        return True

    def insert(self, eid: int, u: int, v: int) -> bool:
        if not self.can_insert(u, v):
            return False
        if self.pebbles[u] == 0:
            u, v = v, u
        self.pebbles[u] -= 1
        self.out[u][eid] = v
        return True

    def block(self, u: int, v: int) -> Optional[frozenset]:
        """Vertex set of a tight block spanning ``u`` and ``v``, or None if independent.

        Leaves the pebbles gathered on ``u`` and ``v``; the game stays valid.
        """
        if self.can_insert(u, v):
            return None
        return frozenset(self.last_reach)

    @property
    def free(self) -> int:
        return sum(self.pebbles)


def max_sparse_subgraph(g, p: SparsityParams) -> SparseSubgraphResult:
    """Greedy maximum (a, b)-sparse edge subset, edges taken in list order."""
    n, ends = _ends_of(g)
    game = PebbleGame(n, p)
    kept, rejected = [], []
    witness = None
    for eid, (u, v) in enumerate(ends):
        if game.insert(eid, u, v):
            kept.append(eid)
        else:
            rejected.append(eid)
            if witness is None:
                witness = frozenset(game.last_reach)
    tight = len(kept) == p.a * n - p.b
    return SparseSubgraphResult(tuple(kept), tuple(rejected), tight, witness)


def is_sparse(g, p: SparsityParams) -> bool:
    n, ends = _ends_of(g)
    game = PebbleGame(n, p)
    return all(game.insert(eid, u, v) for eid, (u, v) in enumerate(ends))


def is_tight(g, p: SparsityParams) -> bool:
    n, ends = _ends_of(g)
    return len(ends) == p.a * n - p.b and is_sparse(g, p)


def final_blocks(g, p: SparsityParams, result: SparseSubgraphResult) -> list[frozenset]:
    """Vertex sets of the tight blocks containing each rejected edge, merged when they meet."""
    n, ends = _ends_of(g)
    game = PebbleGame(n, p)
    for eid in result.kept:
        game.insert(eid, *ends[eid])
    blocks: list[set] = []
    for eid in result.rejected:
        u, v = ends[eid]
        if any(u in B and v in B for B in blocks):
            continue
        B = set(game.block(u, v) or ())
        merged = [C for C in blocks if C & B]
        for C in merged:
            blocks.remove(C)
            B |= C
        blocks.append(B)
    return [frozenset(B) for B in blocks]


class InstanceTooLarge(ValueError):
    pass


def brute_force_sparse(g, p: SparsityParams, max_edges: int = 20) -> tuple[bool, int]:
    """Sparsity and maximum sparse subset size by exhaustive enumeration.

    A subset is dependent when it, or some subset of it, breaks the count.
    Subsets are walked in bitmask order so every proper subset is settled
    first.
    """
    n, ends = _ends_of(g)
    m = len(ends)
    if m > max_edges:
        raise InstanceTooLarge(f"brute force limited to {max_edges} edges, got {m}")
    vmask = [(1 << u) | (1 << v) for u, v in ends]
    size = 1 << m
    dep = bytearray(size)
    best = 0
    for F in range(1, size):
        bits = F
        touched = 0
        cnt = 0
        dependent = False
        while bits:
            low = bits & -bits
            k = low.bit_length() - 1
            touched |= vmask[k]
            cnt += 1
            if dep[F ^ low]:
                dependent = True
            bits ^= low
        if not dependent and cnt > p.a * bin(touched).count("1") - p.b:
            dependent = True
        dep[F] = dependent
        if not dependent and cnt > best:
            best = cnt
    return (not dep[size - 1]) if m else True, best
