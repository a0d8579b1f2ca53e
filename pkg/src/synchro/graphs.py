"""Simple undirected graphs and the constructions the artifact computes with.

Adjacency is stored as packed uint64 bitset rows, giving O(1) adjacency
tests and fast neighbourhood intersections. Graphs of at most 63 vertices
expose their rows directly to the search kernels.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import BadParameter, EmptyGraph, TooLarge, ZeroInConnectionSet

_WORD = 64


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    n = dense.shape[0]
    words = max(1, (n + _WORD - 1) // _WORD)
    rows = np.zeros((n, words), dtype=np.uint64)
    shifts = (np.uint64(1) << np.arange(_WORD, dtype=np.uint64))
    for w in range(words):
        chunk = dense[:, w * _WORD : (w + 1) * _WORD]
        if chunk.shape[1] < _WORD:
            pad = np.zeros((n, _WORD - chunk.shape[1]), dtype=bool)
            chunk = np.concatenate([chunk, pad], axis=1)
        rows[:, w] = (chunk.astype(np.uint64) * shifts).sum(axis=1, dtype=np.uint64)
    return rows


class Graph:
    """Immutable simple undirected graph on {0..n-1}."""

    __slots__ = ("n", "rows", "_dense", "_degrees")

    def __init__(self, n: int, rows: np.ndarray):
        self.n = int(n)
        rows.setflags(write=False)
        self.rows = rows
        self._dense = None
        self._degrees = None

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_dense(dense) -> "Graph":
        d = np.asarray(dense, dtype=bool)
        n = d.shape[0]
        if d.shape != (n, n):
            raise BadParameter("adjacency matrix must be square")
        if d.diagonal().any():
            raise BadParameter("loops are not allowed")
        if not np.array_equal(d, d.T):
            raise BadParameter("adjacency must be symmetric")
        return Graph(n, _pack_rows(d))

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        d = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise BadParameter("loops are not allowed")
            d[u, v] = d[v, u] = True
        return Graph.from_dense(d)

    @staticmethod
    def null(n: int) -> "Graph":
        return Graph.from_dense(np.zeros((n, n), dtype=bool))

    @staticmethod
    def complete(n: int) -> "Graph":
        d = np.ones((n, n), dtype=bool)
        np.fill_diagonal(d, False)
        return Graph.from_dense(d)

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise BadParameter("cycles need at least 3 vertices")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    # -- basic queries ------------------------------------------------------

    @property
    def dense(self) -> np.ndarray:
        if self._dense is None:
            n = self.n
            words = self.rows.shape[1]
            d = np.zeros((n, n), dtype=bool)
            for w in range(words):
                col0 = w * _WORD
                width = min(_WORD, n - col0)
                if width <= 0:
                    break
                block = self.rows[:, w : w + 1] >> np.arange(width, dtype=np.uint64)
                d[:, col0 : col0 + width] = (block & np.uint64(1)).astype(bool)
            d.setflags(write=False)
            self._dense = d
        return self._dense

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u, v // _WORD] >> np.uint64(v % _WORD)) & np.uint64(1))

    def neighbourhood(self, v: int) -> set[int]:
        if not 0 <= v < self.n:
            raise BadParameter(f"vertex {v} out of range")
        return set(np.flatnonzero(self.dense[v]).tolist())

    def closed_neighbourhood(self, v: int) -> set[int]:
        out = self.neighbourhood(v)
        out.add(v)
        return out

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            self._degrees = np.bitwise_count(self.rows).sum(axis=1).astype(np.int64)
            self._degrees.setflags(write=False)
        return self._degrees

    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        iu, iv = np.nonzero(np.triu(self.dense, 1))
        return list(zip(iu.tolist(), iv.tolist()))

    def is_regular(self) -> bool:
        deg = self.degrees
        return bool(self.n == 0 or (deg == deg[0]).all())

    def valency(self) -> int:
        if not self.is_regular():
            raise BadParameter("graph is not regular")
        return int(self.degrees[0]) if self.n else 0

    def is_null(self) -> bool:
        return self.edge_count() == 0

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices) for the search kernels."""
        deg = self.degrees
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        np.cumsum(deg, out=indptr[1:])
        indices = np.nonzero(self.dense)[1].astype(np.int32)
        return indptr, indices

    def mask_rows(self) -> np.ndarray:
        """Single-word neighbourhood masks; only valid for n <= 63."""
        if self.n > 63:
            raise TooLarge("bitset kernels support at most 63 vertices")
        return self.rows[:, 0].copy()

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self):
        return hash((self.n, self.rows.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"

    def relabel(self, perm) -> "Graph":
        """Relabelled copy: perm maps old labels to new, so
        new_adj[perm[u], perm[v]] = adj[u, v]."""
        p = np.asarray(perm, dtype=np.int64)
        d = self.dense
        out = np.zeros_like(d)
        out[np.ix_(p, p)] = d
        return Graph.from_dense(out)

    def girth(self) -> int:
        """Length of a shortest cycle, or 0 if the graph is a forest."""
        best = 0
        d = self.dense
        for s in range(self.n):
            dist = np.full(self.n, -1, dtype=np.int64)
            parent = np.full(self.n, -1, dtype=np.int64)
            dist[s] = 0
            queue = [s]
            while queue:
                nxt = []
                for u in queue:
                    for v in np.flatnonzero(d[u]):
                        v = int(v)
                        if dist[v] < 0:
                            dist[v] = dist[u] + 1
                            parent[v] = u
                            nxt.append(v)
                        elif v != parent[u] and dist[v] >= dist[u]:
                            cyc = dist[u] + dist[v] + 1
                            if best == 0 or cyc < best:
                                best = cyc
                queue = nxt
        return best

    def connected_components(self) -> list[list[int]]:
        seen = np.zeros(self.n, dtype=bool)
        comps = []
        d = self.dense
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            queue = [s]
            while queue:
                u = queue.pop()
                for v in np.flatnonzero(d[u]):
                    v = int(v)
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(sorted(comp))
        return comps


# -- constructions ---------------------------------------------------------


def complement(g: Graph) -> Graph:
    d = ~g.dense
    np.fill_diagonal(d, False)
    return Graph.from_dense(d)


def box_product(x: Graph, y: Graph) -> Graph:
    """Cartesian product; vertex (v, w) gets index v * y.n + w."""
    ax, ay = x.dense, y.dense
    ix, iy = np.eye(x.n, dtype=bool), np.eye(y.n, dtype=bool)
    d = np.kron(ax, iy) | np.kron(ix, ay)
    return Graph.from_dense(d)


def tensor_product(x: Graph, y: Graph) -> Graph:
    """Direct (categorical) product: adjacent iff adjacent in both factors."""
    d = np.kron(x.dense, y.dense)
    return Graph.from_dense(d)


def line_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph plus the vertex -> edge labelling (edges in lex order)."""
    edges = g.edges()
    if not edges:
        raise EmptyGraph("line graph needs at least one edge")
    m = len(edges)
    d = np.zeros((m, m), dtype=bool)
    for i in range(m):
        u1, v1 = edges[i]
        for j in range(i + 1, m):
            u2, v2 = edges[j]
            if u1 == u2 or u1 == v2 or v1 == u2 or v1 == v2:
                d[i, j] = d[j, i] = True
    return Graph.from_dense(d), edges


def triangular_graph(m: int) -> Graph:
    """Line graph of K_m, vertices = 2-subsets in lexicographic order."""
    if m < 3:
        raise BadParameter("triangular graphs need m >= 3")
    lg, labels = line_graph(Graph.complete(m))
    assert labels == duads(m)
    return lg


def duads(m: int) -> list[tuple[int, int]]:
    return list(combinations(range(m), 2))


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, list[int]]:
    """Subgraph induced on the given vertex set, plus new -> old index map."""
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise BadParameter(f"vertex {v} out of range")
    idx = np.array(vs, dtype=np.int64)
    d = g.dense[np.ix_(idx, idx)]
    return Graph.from_dense(d), vs


def butterfly() -> Graph:
    """Two triangles sharing one vertex; labelled (A, B, C, D, E) = (0..4)."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)])


def cayley_gf2(dim: int, connection_set) -> Graph:
    """Cayley graph of GF(2)^dim: u ~ v iff u xor v is in the connection set.

    Connection vectors may be ints (bitmask) or 0/1 sequences of length dim.
    """
    if dim < 1:
        raise BadParameter("dimension must be positive")
    if dim > 14:
        raise TooLarge("cayley_gf2 capped at dimension 14 (16384 vertices)")
    conn = []
    for s in connection_set:
        if isinstance(s, (int, np.integer)):
            v = int(s)
        else:
            bits = list(s)
            if len(bits) != dim:
                raise BadParameter("connection vector of wrong length")
            v = sum((1 << i) for i, b in enumerate(bits) if b)
        if v == 0:
            raise ZeroInConnectionSet("connection set contains the zero vector")
        if v >= (1 << dim):
            raise BadParameter("connection vector outside the space")
        conn.append(v)
    conn = sorted(set(conn))
    n = 1 << dim
    u = np.arange(n, dtype=np.int64)
    d = np.zeros((n, n), dtype=bool)
    for s in conn:
        d[u, u ^ s] = True
    return Graph.from_dense(d)


def common_neighbour_matrix(g: Graph) -> np.ndarray:
    a = g.dense.astype(np.int64)
    return a @ a


def distinct_neighbourhoods(g: Graph) -> bool:
    """True iff no two vertices share exactly the same open neighbourhood."""
    rows = {g.rows[v].tobytes() for v in range(g.n)}
    return len(rows) == g.n


# -- text formats -----------------------------------------------------------


def to_adjacency_text(g: Graph) -> str:
    """1-based adjacency list, one vertex per line: ``v: n1 n2 ...``."""
    lines = [f"# vertices {g.n}"]
    d = g.dense
    for v in range(g.n):
        nbrs = " ".join(str(w + 1) for w in np.flatnonzero(d[v]))
        lines.append(f"{v + 1}: {nbrs}".rstrip())
    return "\n".join(lines) + "\n"


def from_adjacency_text(text: str) -> Graph:
    n = 0
    rows = {}
    for raw in text.splitlines():
        head, _, comment = raw.partition("#")
        if "vertices" in comment:
            n = max(n, int(comment.split("vertices", 1)[1].split()[0]))
        line = head.strip()
        if not line:
            continue
        if ":" in line:
            vtxt, _, rest = line.partition(":")
            v = int(vtxt) - 1
            nbrs = [int(tok) - 1 for tok in rest.split()]
        else:
            raise BadParameter("adjacency lines must look like 'v: n1 n2 ...'")
        rows[v] = nbrs
        n = max(n, v + 1, max(nbrs, default=-1) + 1)
    d = np.zeros((n, n), dtype=bool)
    for v, nbrs in rows.items():
        for w in nbrs:
            if v == w:
                raise BadParameter("loops are not allowed")
            d[v, w] = d[w, v] = True
    return Graph.from_dense(d)


def to_graph6(g: Graph) -> str:
    """graph6 string, bit-exact per the published format."""
    n = g.n
    if n > 258047:
        raise TooLarge("graph6 writer supports n <= 258047")
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    bits = []
    d = g.dense
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if d[i, j] else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(val + 63)
    return bytes(head + body).decode("ascii")


def from_graph6(s: str) -> Graph:
    data = [c - 63 for c in s.strip().encode("ascii")]
    if not data:
        raise BadParameter("empty graph6 string")
    if data[0] == 63:  # '~'
        if len(data) < 4:
            raise BadParameter("truncated graph6 header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise BadParameter("graph6 body of wrong length")
    bits = []
    for val in body:
        if not 0 <= val < 64:
            raise BadParameter("invalid graph6 character")
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    d = np.zeros((n, n), dtype=bool)
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                d[i, j] = d[j, i] = True
            t += 1
    return Graph.from_dense(d)
