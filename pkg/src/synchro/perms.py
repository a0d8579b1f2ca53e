"""Permutations and permutation groups given by generating sets.

Group-level predicates (transitivity, blocks, primitivity, suborbits) are
all computed from orbit closures of points and pairs under the generators;
no Schreier-Sims machinery and no element enumeration anywhere.
"""

from __future__ import annotations

import re
from collections import deque

import numpy as np

from ._kernels import backend
from .errors import BadParameter, NotTransitive


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int32)
        if arr.ndim != 1 or arr.size == 0:
            raise BadParameter("image list must be a non-empty 1-d sequence")
        if not np.array_equal(np.sort(arr), np.arange(arr.size, dtype=np.int32)):
            raise BadParameter("not a bijection on 0..n-1")
        arr.setflags(write=False)
        self.images = arr

    @property
    def degree(self) -> int:
        return int(self.images.size)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """Left action: x -> (x self) other."""
        if self.degree != other.degree:
            raise BadParameter("degree mismatch")
        return Permutation(other.images[self.images])

    def __mul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"Permutation({self.images.tolist()})"

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(self.images[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(self.images[x])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def to_cycle_text(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(n))

    @staticmethod
    def from_cycles(cycles, degree: int) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            if len(set(cyc)) != len(cyc):
                raise BadParameter(f"repeated point in cycle {cyc}")
            for i, x in enumerate(cyc):
                if not 0 <= x < degree:
                    raise BadParameter(f"point {x} out of range for degree {degree}")
                images[x] = cyc[(i + 1) % len(cyc)]
        return Permutation(images)


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation ``(1 2 3)(4 5)`` or an image list ``[2,3,1]``.

    Both formats are 1-based. For cycle notation the degree defaults to the
    largest point mentioned; pass ``degree`` to keep trailing fixed points.
    """
    body = text.strip()
    if body.startswith("["):
        vals = [int(tok) for tok in re.findall(r"\d+", body)]
        if degree is not None and len(vals) != degree:
            raise BadParameter("image list length does not match degree")
        return Permutation([v - 1 for v in vals])
    if body == "()" or body == "":
        if degree is None:
            raise BadParameter("identity needs an explicit degree")
        return Permutation.identity(degree)
    cycles = []
    for grp in re.findall(r"\(([^()]*)\)", body):
        pts = [int(tok) - 1 for tok in re.findall(r"\d+", grp)]
        if pts:
            cycles.append(tuple(pts))
    if not cycles:
        raise BadParameter(f"cannot parse permutation from {text!r}")
    maxpt = max(max(c) for c in cycles)
    n = degree if degree is not None else maxpt + 1
    if maxpt >= n:
        raise BadParameter("cycle mentions a point beyond the degree")
    return Permutation.from_cycles(cycles, n)


class PermGroup:
    """A permutation group, known only through its generators."""

    def __init__(self, generators):
        gens = list(generators)
        if not gens:
            raise BadParameter("need at least one generator")
        n = gens[0].degree
        for g in gens:
            if g.degree != n:
                raise BadParameter("generators of unequal degree")
        self.degree = n
        self.generators = tuple(gens)
        self._gen_matrix = np.stack([g.images for g in gens]).astype(np.int32)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- orbits ---------------------------------------------------------

    def orbit(self, x: int) -> set[int]:
        if not 0 <= x < self.degree:
            raise BadParameter(f"point {x} out of range")
        seen = np.zeros(self.degree, dtype=bool)
        seen[x] = True
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for row in self._gen_matrix:
                z = int(row[y])
                if not seen[z]:
                    seen[z] = True
                    queue.append(z)
        return set(np.flatnonzero(seen).tolist())

    def orbits(self) -> list[set[int]]:
        left = set(range(self.degree))
        out = []
        while left:
            o = self.orbit(min(left))
            out.append(o)
            left -= o
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    # -- blocks and primitivity -----------------------------------------

    def block_system(self, seed_pair: tuple[int, int]) -> list[tuple[int, ...]]:
        """Finest G-invariant partition putting the two seed points together."""
        a, b = seed_pair
        if a == b:
            raise BadParameter("seed points must be distinct")
        if not self.is_transitive():
            raise NotTransitive("block systems require a transitive group")
        parent = backend().block_parent(
            self.degree,
            self._gen_matrix.ravel(),
            len(self.generators),
            int(a),
            int(b),
        )
        parts = {}
        for x in range(self.degree):
            parts.setdefault(int(parent[x]), []).append(x)
        out = [tuple(p) for p in parts.values()]
        out.sort(key=lambda p: p[0])
        sizes = {len(p) for p in out}
        assert len(sizes) == 1 and self.degree % sizes.pop() == 0
        return out

    def is_primitive(self) -> bool:
        """Transitive with no nontrivial block system.

        Degree 1 and transitive degree 2 are reported primitive: no
        nontrivial proper blocks can exist there.
        """
        if self.degree == 1:
            return True
        if not self.is_transitive():
            return False
        if self.degree == 2:
            return True
        for x in range(1, self.degree):
            if len(self.block_system((0, x))) != 1:
                return False
        return True

    # -- pair orbits ------------------------------------------------------

    def _pair_orbit(self, pair: tuple[int, int]) -> set[tuple[int, int]]:
        """Orbit of an ordered pair under the generators."""
        n = self.degree
        start = pair[0] * n + pair[1]
        seen = np.zeros(n * n, dtype=bool)
        seen[start] = True
        queue = deque([start])
        while queue:
            p = queue.popleft()
            pa, pb = divmod(p, n)
            for row in self._gen_matrix:
                q = int(row[pa]) * n + int(row[pb])
                if not seen[q]:
                    seen[q] = True
                    queue.append(q)
        return {divmod(int(p), n) for p in np.flatnonzero(seen)}

    def suborbit_lengths(self) -> tuple[int, ...]:
        """Orbit sizes of the point-0 stabiliser, via orbitals.

        Computed as orbits of G on ordered pairs restricted to first
        coordinate 0. Sorted ascending; the sum is the degree and the count
        is the permutation rank.
        """
        if not self.is_transitive():
            raise NotTransitive("suborbits require a transitive group")
        n = self.degree
        remaining = set(range(n))
        lengths = []
        while remaining:
            x = min(remaining)
            orbital = self._pair_orbit((0, x))
            row = {b for (a, b) in orbital if a == 0}
            assert x in row and row <= remaining
            remaining -= row
            lengths.append(len(row))
        assert sum(lengths) == n
        return tuple(sorted(lengths))

    def orbital_graph(self, pair: tuple[int, int]):
        """Undirected graph whose edges are the G-orbit of the unordered pair."""
        from .graphs import Graph

        a, b = pair
        if a == b:
            raise BadParameter("orbital seed points must be distinct")
        if not self.is_transitive():
            raise NotTransitive("orbital graphs require a transitive group")
        orbital = self._pair_orbit((a, b))
        edges = {(min(p), max(p)) for p in orbital}
        return Graph.from_edges(self.degree, sorted(edges))


def parse_group_file(text: str) -> PermGroup:
    """One generator per line; '#' starts a comment; blank lines ignored.

    A ``# degree N`` comment pins the degree; otherwise it is the largest
    point mentioned on any line.
    """
    lines = []
    degree = None
    for raw in text.splitlines():
        head, _, comment = raw.partition("#")
        m = re.search(r"degree\s+(\d+)", comment)
        if m:
            degree = int(m.group(1))
        line = head.strip()
        if line:
            lines.append(line)
    if not lines:
        raise BadParameter("no generators in file")
    if degree is None:
        degree = 0
        for line in lines:
            pts = [int(tok) for tok in re.findall(r"\d+", line)]
            if pts:
                degree = max(degree, max(pts))
    gens = [parse_permutation(line, degree=degree) for line in lines]
    return PermGroup(gens)


def group_to_text(group: PermGroup) -> str:
    lines = [f"# degree {group.degree}"]
    lines += [g.to_cycle_text() for g in group.generators]
    return "\n".join(lines) + "\n"
