"""Strongly regular graph parameters and the endomorphism-defect bounds.

Bound formulas are kept in exact rational arithmetic where possible; the
one genuine square root (the degree-n defect bound) is evaluated in double
precision and all comparisons against it carry an explicit 1e-9 tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadParameter, TrivialSrg
from .graphs import Graph, common_neighbour_matrix

TOL = 1e-9


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lmbda: int
    mu: int

    def __post_init__(self):
        lhs = self.k * (self.k - self.lmbda - 1)
        rhs = (self.n - self.k - 1) * self.mu
        if lhs != rhs:
            raise BadParameter(
                f"infeasible parameters ({self.n},{self.k},{self.lmbda},{self.mu}): "
                f"k(k-l-1)={lhs} != (n-k-1)mu={rhs}"
            )

    @property
    def k_prime(self) -> int:
        return self.n - self.k - 1

    def is_nontrivial(self) -> bool:
        return self.mu > 0 and self.k > self.mu

    def eigenvalues(self) -> tuple[float, float]:
        """The two restricted eigenvalues r > 0 > s."""
        d = self.lmbda - self.mu
        disc = math.sqrt(d * d + 4 * (self.k - self.mu))
        return (d + disc) / 2, (d - disc) / 2

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lmbda, self.mu)


def srg_params(g: Graph) -> SrgParams | None:
    """Parameters of g if strongly regular (with both lambda and mu defined)."""
    n = g.n
    if n < 4 or not g.is_regular():
        return None
    k = g.valency()
    common = common_neighbour_matrix(g)
    d = g.dense
    off = ~np.eye(n, dtype=bool)
    lams = common[d]
    mus = common[off & ~d]
    if lams.size == 0 or mus.size == 0:
        return None
    if lams.min() != lams.max() or mus.min() != mus.max():
        return None
    return SrgParams(n, k, int(lams[0]), int(mus[0]))


def _require_nontrivial(p: SrgParams):
    if not p.is_nontrivial():
        raise TrivialSrg(f"parameters {p.as_tuple()} are trivial (mu=0 or k=mu)")


def is_conference(p: SrgParams) -> bool:
    return p.n == 4 * p.mu + 1 and p.k == 2 * p.mu


def defect_lower_bound(p: SrgParams) -> Fraction:
    """Every proper endomorphism loses at least (k - mu + 4)/4 vertices."""
    _require_nontrivial(p)
    return Fraction(p.k - p.mu + 4, 4)


def kmu_bound_check(p: SrgParams) -> bool:
    """k - mu >= min(k, k')/3; False flags infeasible parameters."""
    _require_nontrivial(p)
    return Fraction(p.k - p.mu, 1) >= Fraction(min(p.k, p.k_prime), 3)


def moore_min_valency_check(p: SrgParams) -> bool:
    """min(k, k') >= sqrt(n-1), the diameter-2 Moore bound; compared exactly."""
    _require_nontrivial(p)
    m = min(p.k, p.k_prime)
    return m * m >= p.n - 1


def srg_defect_theorem_bound(n: int) -> float:
    """1 + sqrt(n-1)/12: the defect bound independent of the parameters."""
    if n < 2:
        raise BadParameter("bound defined for n >= 2")
    return 1.0 + math.sqrt(n - 1) / 12.0


def rank3_sync_threshold(n: int) -> float:
    """Rank above which a permutation-rank-3 primitive group must synchronize."""
    return n - srg_defect_theorem_bound(n)


def analyze(g: Graph) -> dict:
    """JSON-facing report: parameters, conference flag, and the bounds."""
    p = srg_params(g)
    if p is None:
        return {"strongly_regular": False}
    out = {
        "strongly_regular": True,
        "params": list(p.as_tuple()),
        "nontrivial": p.is_nontrivial(),
        "conference": is_conference(p),
        "eigenvalues": list(p.eigenvalues()),
    }
    if p.is_nontrivial():
        out["bounds"] = {
            "defect_lb": float(defect_lower_bound(p)),
            "theorem_lb": srg_defect_theorem_bound(p.n),
            "threshold": rank3_sync_threshold(p.n),
            "kmu_ok": kmu_bound_check(p),
            "moore_ok": moore_min_valency_check(p),
        }
    return out
