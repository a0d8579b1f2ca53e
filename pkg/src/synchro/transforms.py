"""Transformations of a finite set: rank, kernel, kernel type, composition.

Points are 0-based everywhere inside the library; the bracketed text format
is 1-based, matching the way transformations are printed in the literature.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import BadParameter, DegreeMismatch


class Transformation:
    """A self-map of {0..n-1}, stored as its image array."""

    __slots__ = ("images",)

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int32)
        if arr.ndim != 1 or arr.size == 0:
            raise BadParameter("image list must be a non-empty 1-d sequence")
        n = arr.size
        if arr.min() < 0 or arr.max() >= n:
            raise BadParameter("image values must lie in 0..n-1")
        arr.setflags(write=False)
        self.images = arr

    @property
    def degree(self) -> int:
        return int(self.images.size)

    @property
    def rank(self) -> int:
        return int(np.unique(self.images).size)

    def is_permutation(self) -> bool:
        return self.rank == self.degree

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def __eq__(self, other):
        return isinstance(other, Transformation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"Transformation({self.images.tolist()})"

    def to_text(self) -> str:
        """1-based bracketed image list."""
        return "[" + ", ".join(str(x + 1) for x in self.images) + "]"


def kernel(f: Transformation) -> list[tuple[int, ...]]:
    """Fibers of f, each sorted, ordered by their smallest element."""
    parts = {}
    for x, y in enumerate(f.images):
        parts.setdefault(int(y), []).append(x)
    out = [tuple(p) for p in parts.values()]
    out.sort(key=lambda p: p[0])
    return out


def kernel_type(f: Transformation) -> tuple[int, ...]:
    """Multiset of fiber sizes, sorted descending."""
    _, counts = np.unique(f.images, return_counts=True)
    return tuple(sorted((int(c) for c in counts), reverse=True))


def is_uniform(f: Transformation) -> bool:
    kt = kernel_type(f)
    return kt[0] == kt[-1]


def compose(f: Transformation, g: Transformation) -> Transformation:
    """Left action: x -> (x f) g, matching word-reading order."""
    if f.degree != g.degree:
        raise DegreeMismatch(f"degrees {f.degree} and {g.degree}")
    return Transformation(g.images[f.images])


def parse_transformation(text: str) -> Transformation:
    """Parse a 1-based bracketed image list, whitespace-insensitive."""
    body = text.strip()
    m = re.fullmatch(r"\[(.*)\]", body, re.DOTALL)
    if not m:
        raise BadParameter("expected a bracketed image list")
    vals = [int(tok) for tok in re.findall(r"-?\d+", m.group(1))]
    if not vals:
        raise BadParameter("empty image list")
    if min(vals) < 1:
        raise BadParameter("image lists are 1-based")
    return Transformation([v - 1 for v in vals])


def constant_map(n: int, target: int) -> Transformation:
    return Transformation([target] * n)


def identity_map(n: int) -> Transformation:
    return Transformation(range(n))
